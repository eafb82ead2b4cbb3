"""Dressing operator ``s = 1 + sum w_m p^-m`` and its conjugation action."""

from dataclasses import dataclass

from .diffpoly import ONE, ZERO, gen
from .errors import InsufficientDepth
from .psymbol import PSymbol, project, star_mul, star_pow


@dataclass(frozen=True)
class DressingOperator:
    depth: int

    def __post_init__(self):
        if self.depth < 1:
            raise ValueError("dressing depth must be positive")

    @property
    def body(self):
        coeffs = {0: ONE}
        for m in range(1, self.depth + 1):
            coeffs[-m] = gen(f"w{m}")
        return PSymbol(coeffs, -self.depth)

    def generic_inverse(self):
        """``1 + sum u_m p^-m`` with the ``u_m`` left as free generators."""
        coeffs = {0: ONE}
        for m in range(1, self.depth + 1):
            coeffs[-m] = gen(f"u{m}")
        return PSymbol(coeffs, -self.depth)


def inverse_coefficients(s):
    """``[u_1, ..., u_depth]`` in terms of the ``w``'s, from ``s * s^-1 = 1``.

    The ``p^-m`` coefficient of ``s * (1 + sum_{j<=m} u_j p^-j)`` is ``u_m``
    plus terms in ``u_1 .. u_{m-1}`` only, so the system is triangular.
    """
    body = s.body
    us = []
    for m in range(1, s.depth + 1):
        partial = PSymbol({0: ONE, **{-j: u for j, u in enumerate(us, 1)}}, None)
        us.append(-star_mul(body, partial, -m).coeff(-m))
    return us


def invert(s):
    """Right star inverse of the dressing operator, exact to ``p^-depth``."""
    us = inverse_coefficients(s)
    inv = PSymbol({0: ONE, **{-m: u for m, u in enumerate(us, 1)}}, -s.depth)
    check = star_mul(s.body, inv)
    if not check.agrees_with(PSymbol({0: ONE}), -s.depth):
        raise AssertionError("inverse recursion failed")  # unreachable for a triangular system
    return inv


def conjugate(s, k, floor, symbolic_inverse=False):
    """``s * p^k * s^-1`` exact down to ``p^floor``.

    With ``symbolic_inverse`` the inverse keeps free generators ``u_m``.
    """
    if s.depth < k - floor:
        raise InsufficientDepth(f"depth {s.depth} < {k - floor} needed for p^{floor} of s*p^{k}*s^-1")
    inv = s.generic_inverse() if symbolic_inverse else invert(s)
    left = star_mul(s.body, PSymbol.p(k), floor)
    return star_mul(left, inv, floor)


def lax_coefficients(s, count):
    """``a_1 .. a_count`` read off ``s * p * s^-1``."""
    L = conjugate(s, 1, -count)
    return [L.coeff(-m) for m in range(1, count + 1)]


@dataclass
class ConsistencyRow:
    exponent: int
    lhs: object
    rhs: object

    @property
    def residual(self):
        return self.lhs - self.rhs


@dataclass
class ConsistencyReport:
    k: int
    depth: int
    rows: list
    p0_coefficient: object  # coefficient of p^0 in s*p*s^-1, must vanish

    @property
    def ok(self):
        return not self.p0_coefficient and not any(r.residual for r in self.rows)

    def first_mismatch(self):
        for r in self.rows:
            if r.residual:
                return r
        return None


def dressing_consistency(s, k):
    """Compare ``(s p^k s^-1)_+`` with ``(L^k)_+`` for ``L = s p s^-1``.

    Both sides are differential polynomials in the ``w``'s; the report lists
    every exponent from ``k`` down to ``0``.
    """
    if s.depth < k:
        raise InsufficientDepth(f"consistency for k={k} needs depth >= {k}")
    conj1 = conjugate(s, 1, 1 - k)
    a = [conj1.coeff(-m) for m in range(1, k)]
    L = PSymbol({1: ONE, **{-m: c for m, c in enumerate(a, 1)}}, 1 - k)
    lhs = project(conjugate(s, k, 0), 0)
    rhs = project(star_pow(L, k, 0), 0)
    rows = [ConsistencyRow(e, lhs.coeffs.get(e, ZERO), rhs.coeffs.get(e, ZERO))
            for e in range(k, -1, -1)]
    return ConsistencyReport(k, s.depth, rows, conj1.coeff(0))
