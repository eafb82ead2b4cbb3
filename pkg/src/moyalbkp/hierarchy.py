"""Lax flows of BKP type and their reduction to scalar equations."""

from dataclasses import dataclass, field
from fractions import Fraction

from .diffpoly import (ONE, ZERO, DiffPoly, Gen, Integral, _field, _runs, deriv, euler_op,
                       gen, integral, render, substitute)
from .errors import (BadLaxShape, EliminationStuck, InconsistentReduction, InsufficientDepth,
                     MoyalError, NotSolvable)
from .psymbol import PSymbol, commutator, project, residue, star_pow


@dataclass(frozen=True)
class FlowEquation:
    """``target_time = rhs``, e.g. ``a1_y = 4*e*a2^(1)``."""

    target: str
    time: str
    rhs: DiffPoly

    @property
    def lhs(self):
        """The time derivative as a ring element; only y-derivatives live in the ring."""
        if self.time != "y":
            raise NotSolvable(f"{self.time}-derivatives are not ring elements")
        return gen(self.target, 0, 1)

    def __str__(self):
        return f"{self.target}_{self.time} = {render(self.rhs)}"


@dataclass
class FlowResult:
    equations: list
    constraints: list = field(default_factory=list)
    m: int = 0
    threshold: int = 0

    def equation(self, target):
        for eq in self.equations:
            if eq.target == target:
                return eq
        raise KeyError(target)

    def __str__(self):
        lines = [f"0 = {render(c)}" for c in self.constraints]
        lines += [str(eq) for eq in self.equations]
        return "\n".join(lines)


def lax_operator(depth):
    """``L = p + a1 p^-1 + ... + a_depth p^-depth``, exact down to ``p^-depth``."""
    coeffs = {1: ONE}
    for m in range(1, depth + 1):
        coeffs[-m] = gen(f"a{m}")
    return PSymbol(coeffs, -depth)


def _check_lax(L):
    if L.degree != 1 or L.coeffs[1] != ONE:
        raise BadLaxShape("Lax symbol must have the form p + (lower order terms)")


def lax_rhs(L, m, threshold=0, floor=-1):
    """``[(L^m)_{>=threshold}, L]`` exact down to ``p^floor``."""
    _check_lax(L)
    P = project(star_pow(L, m, threshold), threshold)
    out = commutator(P, L, floor)
    if out.floor is not None and out.floor > floor:
        raise InsufficientDepth(f"Lax symbol too shallow for p^{floor}; exact only to p^{out.floor}")
    return out


def flow_equations(L, m, threshold=0, depth=1, time="y"):
    """Evolution equations of ``a_1 .. a_depth`` under the ``m``-th flow.

    With ``L=None`` a generic Lax symbol of just sufficient depth is used.
    Coefficients of ``p^k``, ``k >= 0``, of the flow are constraints.
    """
    if L is None:
        L = lax_operator(m + depth - 1)
    rhs = lax_rhs(L, m, threshold, -depth)
    equations = [FlowEquation(f"a{j}", time, rhs.coeff(-j)) for j in range(1, depth + 1)]
    constraints = [rhs.coeffs[k] for k in sorted(rhs.coeffs, reverse=True) if k >= 0]
    if threshold == 0 and constraints:
        # [L^m_+, L] = -[L^m_-, L] has no non-negative powers
        raise MoyalError(f"nonzero p^0 coefficient in a >=0 flow: {render(constraints[-1])}")
    return FlowResult(equations, constraints, m, threshold)


def impose_bkp(flows):
    """Set every even-indexed ``a`` to zero and drop the even equations.

    The dropped equations must reduce to ``0 = 0``; otherwise the reduction is
    inconsistent and an error carrying the residual is raised.
    """
    if flows.m % 2 == 0:
        raise ValueError("the BKP reduction applies to odd flows only")
    even = set()
    for poly in [eq.rhs for eq in flows.equations] + list(flows.constraints):
        even |= {g for g in poly.generators() if g[0] == "a" and g[1] % 2 == 0}

    def kill(poly):
        for g in sorted(even):
            poly = substitute(poly, g, ZERO)
        return poly

    kept = []
    for eq in flows.equations:
        rhs = kill(eq.rhs)
        if _field(eq.target)[1] % 2 == 0:
            if rhs:
                raise InconsistentReduction(
                    f"{eq.target}_{eq.time} does not vanish under the BKP constraint", rhs)
            continue
        kept.append(FlowEquation(eq.target, eq.time, rhs))
    constraints = [c for c in map(kill, flows.constraints) if c]
    return FlowResult(kept, constraints, flows.m, flows.threshold)


def _solve_relation(relation, generator):
    """Solve ``relation == 0`` for a generator occurring once, linearly, with constant coefficient."""
    fam, idx = _field(generator)
    hit = None
    rest = {}
    for (k, atoms), c in relation.items():
        if _mentions(atoms, (fam, idx)):
            if hit is not None:
                raise NotSolvable(f"{fam}{idx} occurs in more than one term")
            hit = (k, atoms, c)
        else:
            rest[(k, atoms)] = c
    if hit is None:
        raise NotSolvable(f"{fam}{idx} does not occur")
    k, atoms, c = hit
    if len(atoms) != 1 or type(atoms[0]) is not Gen or atoms[0].y:
        raise NotSolvable(f"{fam}{idx} does not enter linearly with a constant coefficient")
    d = atoms[0].x
    # c e^k g^(d) + rest = 0
    return integral(DiffPoly(rest), d).shift_eps(-k) * (-1 / Fraction(c))


def _mentions(atoms, fld):
    for a in atoms:
        if type(a) is Gen:
            if (a.family, a.index) == fld:
                return True
        elif _mentions(a.body, fld):
            return True
    return False


def solve_for(eq, generator):
    """Invert ``eq`` for a generator: ``rhs = c e^k g^(d) + rest`` gives
    ``g = (1/c) e^-k Dxi^d(lhs - rest)``."""
    return _solve_relation(eq.lhs - eq.rhs, generator)


@dataclass
class ScalarDerivation:
    equation: FlowEquation
    solutions: list  # [(generator name, value)] in elimination order
    residuals: list  # back-substituted relations; all zero for a sound elimination
    y_flow: FlowResult
    t_flow: FlowResult
    bkp: bool

    @property
    def consistent(self):
        return not any(self.residuals)


def _name(g):
    return f"{g[0]}{g[1]}"


def scalar_pipeline(m_y, m_t, threshold=0, bkp=None):
    """Eliminate every ``a_k`` (k > 1) between a y-flow and a t-flow.

    Generators are solved for in increasing index order, each from the first
    relation (constraint or y-equation) in which it is the only unknown.
    """
    if m_t <= m_y:
        raise ValueError("the t-flow must be of higher order than the y-flow")
    if bkp is None:
        bkp = threshold == 0 and m_y % 2 == 1 and m_t % 2 == 1
    y_flow = flow_equations(None, m_y, threshold, m_t - m_y + 1, "y")
    t_flow = flow_equations(None, m_t, threshold, 1, "t")
    if bkp:
        y_flow, t_flow = impose_bkp(y_flow), impose_bkp(t_flow)

    relations = list(y_flow.constraints) + list(t_flow.constraints)
    relations += [eq.lhs - eq.rhs for eq in y_flow.equations]
    target = t_flow.equation("a1").rhs
    base = ("a", 1)
    solutions = []
    while True:
        pending = target.generators() - {base}
        if not pending:
            break
        unknown = set(pending)
        for r in relations:
            unknown |= r.generators() - {base}
        found = None
        for g in sorted(unknown, key=lambda f: (f[0], f[1])):
            for r in relations:
                if r and r.generators() - {base} == {g}:
                    try:
                        found = (g, _solve_relation(r, g))
                        break
                    except NotSolvable:
                        continue
            if found:
                break
        if found is None:
            raise EliminationStuck(
                "no relation solves for any of " + ", ".join(sorted(map(_name, pending))))
        g, value = found
        solutions.append((_name(g), value))
        target = substitute(target, g, value)
        relations = [substitute(r, g, value) for r in relations]

    residuals = [r for r in relations if r.generators() <= {base}]
    return ScalarDerivation(FlowEquation("a1", "t", target), solutions, residuals,
                            y_flow, t_flow, bkp)


def derive_scalar_equation(m_y, m_t, threshold=0, bkp=None):
    """The scalar (2+1)-dimensional equation for ``a1``; see :func:`scalar_pipeline`."""
    result = scalar_pipeline(m_y, m_t, threshold, bkp)
    if not result.consistent:
        bad = next(r for r in result.residuals if r)
        raise InconsistentReduction("back-substitution left a nonzero residual", bad)
    return result.equation


@dataclass
class ConservationReport:
    n: int
    m: int
    threshold: int
    density: DiffPoly
    rate: DiffPoly  # time derivative of the density along the m-flow
    euler: dict  # generator name -> Euler image

    @property
    def conserved(self):
        return not any(self.euler.values())


def conservation_check(L=None, n=1, m=3, threshold=0):
    """Check that ``Res L^n`` evolves by a total x-derivative under the ``m``-flow."""
    if L is None:
        L = lax_operator(n + m - 1)
    _check_lax(L)
    P = project(star_pow(L, m, threshold), threshold)
    Ln = star_pow(L, n, -m)
    rate = residue(commutator(P, Ln, -1))
    density = residue(star_pow(L, n, -1))
    names = sorted(rate.generators() | density.generators())
    euler = {_name(g): euler_op(rate, g) for g in names}
    return ConservationReport(n, m, threshold, density, rate, euler)


def evolve(poly, flows):
    """Apply the derivation ``d/dt`` defined by ``flows`` (generator name -> rhs).

    ``poly`` must be local and x-only; every generator it contains needs a flow.
    """
    acc = ZERO
    cache = {}
    for (k, atoms), c in poly.items():
        for atom, mult, i in _runs(atoms):
            if type(atom) is Integral or atom.y:
                raise ValueError("evolve works on local x-polynomials")
            name = f"{atom.family}{atom.index}"
            if name not in flows:
                raise KeyError(f"no flow given for {name}")
            key = (name, atom.x)
            if key not in cache:
                cache[key] = deriv(flows[name], "x", atom.x)
            rest = DiffPoly.from_atoms(atoms[:i] + atoms[i + 1:], c * mult, k)
            acc = acc + rest * cache[key]
    return acc


def flow_commutator(m_y, m_t, target=1, threshold=0):
    """``d_t(a_y) - d_y(a_t)`` for one generator, computed on local flows."""
    # the j-th equation of the m-flow reaches a_(j+m-1)
    y_flows = flow_equations(None, m_y, threshold, target + m_t - 1, "y")
    t_flows = flow_equations(None, m_t, threshold, target + m_y - 1, "t")
    ys = {eq.target: eq.rhs for eq in y_flows.equations}
    ts = {eq.target: eq.rhs for eq in t_flows.equations}
    name = f"a{target}"
    return evolve(ys[name], ts) - evolve(ts[name], ys)
