from fractions import Fraction

import pytest

from moyalbkp import (ONE, BadLaxShape, EliminationStuck, InconsistentReduction, InsufficientDepth,
                      MoyalError, NotSolvable, PSymbol, conservation_check,
                      derive_scalar_equation, eps, flow_commutator, flow_equations, gen,
                      impose_bkp, lax_operator, lax_rhs, parse_poly, scalar_pipeline, solve_for)
from moyalbkp.diffpoly import Gen, ZERO, deriv, substitute_all
from moyalbkp.hierarchy import FlowEquation, evolve


def test_quadratic_flow_example():
    assert lax_rhs(lax_operator(5), 2, 0, -4).coeff(-1) == parse_poly("4*e*a2^(1)")


def test_cubic_flow_example():
    want = parse_poly("e*(6*a4^(1)+12*a1^(1)*a2+12*a1*a2^(1))+2*e^3*a2^(3)")
    assert lax_rhs(lax_operator(6), 3, 0, -4).coeff(-2) == want


def test_free_symbol_is_stationary():
    assert not lax_rhs(PSymbol.p(1), 3, 0, -1).coeffs


def test_bad_shape():
    with pytest.raises(BadLaxShape):
        lax_rhs(PSymbol({2: gen("a1")}), 2)
    with pytest.raises(BadLaxShape):
        lax_rhs(PSymbol({1: gen("a1")}), 2)


def test_shallow_lax_symbol():
    with pytest.raises(InsufficientDepth):
        lax_rhs(lax_operator(2), 3, 0, -2)


def _atoms_x_order(atoms):
    total = 0
    for a in atoms:
        total += a.x if type(a) is Gen else _atoms_x_order(a.body) - a.depth
    return total


@pytest.mark.parametrize("m,threshold", [(2, 0), (3, 0), (4, 0), (5, 0), (3, 1), (5, 1)])
def test_eps_grading(m, threshold):
    # every monomial of a flow carries e to the power of its total x-order
    rhs = lax_rhs(lax_operator(m + 3), m, threshold, -4)
    for c in rhs.coeffs.values():
        for (k, atoms), _ in c.items():
            assert k == _atoms_x_order(atoms)


def test_flow_result_shape():
    res = flow_equations(None, 3, 0, 3)
    assert [e.target for e in res.equations] == ["a1", "a2", "a3"]
    assert res.constraints == []
    assert str(res).splitlines()[0].startswith("a1_y = ")
    mod = flow_equations(None, 3, 1, 2)
    assert mod.constraints == [parse_poly("6*e*a2^(1)")]
    assert str(mod).splitlines()[0] == "0 = 6*e*a2^(1)"


def test_bkp_reduction():
    res = impose_bkp(flow_equations(None, 3, 0, 4))
    assert [e.target for e in res.equations] == ["a1", "a3"]
    for eq in res.equations:
        assert not any(g[1] % 2 == 0 for g in eq.rhs.generators())
    with pytest.raises(ValueError):
        impose_bkp(flow_equations(None, 2, 0, 2))


def test_solve_for():
    eq = flow_equations(None, 2, 0, 1).equation("a1")
    assert solve_for(eq, "a2") == parse_poly("1/4*e^-1*Dxi(a1^(0;1))")
    with pytest.raises(NotSolvable):
        solve_for(eq, "a3")
    bad = FlowEquation("a1", "y", gen("a2") * gen("a2"))
    with pytest.raises(NotSolvable):
        solve_for(bad, "a2")
    with pytest.raises(NotSolvable):
        _ = FlowEquation("a1", "t", ZERO).lhs


@pytest.mark.parametrize("m_y,m_t,threshold", [(3, 5, 0), (2, 5, 0), (3, 5, 1), (2, 3, 0),
                                               (2, 4, 0)])
def test_pipelines_back_substitute(m_y, m_t, threshold):
    res = scalar_pipeline(m_y, m_t, threshold)
    assert res.consistent
    assert res.equation.rhs.generators() == {("a", 1)}
    # every y-equation becomes an identity once the solutions are substituted
    for eq in res.y_flow.equations:
        rel = substitute_all(eq.lhs - eq.rhs, res.solutions)
        assert rel == ZERO


def test_bkp_scalar_leading_term():
    (k, atoms), c = next(iter(derive_scalar_equation(3, 5).rhs.items()))
    assert (k, atoms, c) == (5, (Gen("a", 1, 5, 0),), Fraction(-32, 9))


def test_modified_pipeline_reproduces_bkp_equation():
    assert derive_scalar_equation(3, 5, 1) == derive_scalar_equation(3, 5)


def test_elimination_stuck():
    with pytest.raises(EliminationStuck):
        scalar_pipeline(1, 3)
    with pytest.raises(EliminationStuck):
        scalar_pipeline(3, 4, bkp=False)


def test_inconsistent_reduction():
    assert not scalar_pipeline(2, 4, 1).consistent
    with pytest.raises(InconsistentReduction) as info:
        derive_scalar_equation(2, 4, 1)
    assert info.value.residual


def test_nonzero_constraint_with_plus_projection_is_an_error():
    L = PSymbol({1: ONE, 0: gen("a2"), -1: gen("a1")}, -1)
    with pytest.raises(MoyalError):
        flow_equations(L, 2, 0, 1)


@pytest.mark.parametrize("n", [1, 3, 5])
@pytest.mark.parametrize("m", [3, 5])
def test_conservation(n, m):
    rep = conservation_check(None, n, m)
    assert rep.conserved
    assert rep.euler


def test_even_density_is_not_conserved_trivially():
    # Res L^2 = 2 a2; its rate is still a total derivative
    assert conservation_check(None, 2, 3).conserved


@pytest.mark.parametrize("m_y,m_t", [(2, 3), (2, 5), (3, 5), (3, 4)])
def test_flows_commute(m_y, m_t):
    assert flow_commutator(m_y, m_t) == ZERO
    assert flow_commutator(m_y, m_t, target=2) == ZERO


def test_evolve():
    flows = {"a1": gen("a2"), "a2": eps(1)}
    assert evolve(gen("a1", 2) * gen("a1"), flows) == \
        deriv(gen("a2"), "x", 2) * gen("a1") + gen("a1", 2) * gen("a2")
    with pytest.raises(KeyError):
        evolve(gen("a3"), flows)
