"""Laurent symbols in ``p`` with differential-polynomial coefficients.

A :class:`PSymbol` stores finitely many coefficients together with an
exactness floor: every coefficient at an exponent ``>= floor`` is known
exactly, everything below it is unknown.  ``floor=None`` marks a symbol that
is known completely (a finite Laurent polynomial, e.g. ``p^3 + 3*a1*p``).

Products propagate floors by the support argument: the unknown tail of ``f``
lies strictly below ``floor_f``, and every term of the star sum can only lower
the p-exponent, so ``f * g`` is exact at exponents
``>= max(floor_f + deg g, floor_g + deg f)``.
"""

import math
from fractions import Fraction

from .diffpoly import ONE, ZERO, DiffPoly, deriv, falling, render
from .errors import FloorTooHigh, InsufficientDepth, UnboundedExpansion

NEG_INF = -math.inf


def _max_floor(*floors):
    vals = [f for f in floors if f is not None and f != NEG_INF]
    return max(vals) if vals else None


class PSymbol:
    """Immutable symbol ``sum_i coeffs[i] * p^i`` exact down to ``floor``."""

    __slots__ = ("coeffs", "floor")

    def __init__(self, coeffs=None, floor=None):
        coeffs = {int(i): c for i, c in (coeffs or {}).items() if c}
        if floor is not None:
            coeffs = {i: c for i, c in coeffs.items() if i >= floor}
        self.coeffs = coeffs
        self.floor = floor

    @classmethod
    def monomial(cls, coeff, exponent=0, floor=None):
        if not isinstance(coeff, DiffPoly):
            coeff = DiffPoly.constant(coeff)
        return cls({exponent: coeff}, floor)

    @classmethod
    def p(cls, exponent=1):
        return cls({exponent: ONE})

    @property
    def degree(self):
        """Largest stored exponent, or None for the zero symbol."""
        return max(self.coeffs) if self.coeffs else None

    def _eff_degree(self):
        if self.coeffs:
            return max(self.coeffs)
        return NEG_INF if self.floor is None else self.floor - 1

    def coeff(self, i):
        if self.floor is not None and i < self.floor:
            raise FloorTooHigh(f"coefficient of p^{i} is below the exactness floor {self.floor}")
        return self.coeffs.get(i, ZERO)

    def exponents(self):
        return sorted(self.coeffs, reverse=True)

    def truncate(self, floor):
        """Forget everything below ``floor`` (raising the floor)."""
        return PSymbol(self.coeffs, _max_floor(self.floor, floor))

    def with_floor(self, floor):
        """Declare the floor explicitly; only valid when it lowers nothing known."""
        if self.floor is not None and floor is not None and floor < self.floor:
            raise InsufficientDepth(f"cannot lower floor {self.floor} to {floor}")
        return PSymbol(self.coeffs, floor)

    def __add__(self, other):
        other = _coerce(other)
        floor = _max_floor(self.floor, other.floor)
        out = dict(self.coeffs)
        for i, c in other.coeffs.items():
            out[i] = out.get(i, ZERO) + c
        return PSymbol(out, floor)

    __radd__ = __add__

    def __neg__(self):
        return PSymbol({i: -c for i, c in self.coeffs.items()}, self.floor)

    def __sub__(self, other):
        return self + (-_coerce(other))

    def __rsub__(self, other):
        return _coerce(other) - self

    def scale(self, c):
        """Multiply every coefficient by a scalar or DiffPoly (commutatively)."""
        return PSymbol({i: v * c for i, v in self.coeffs.items()}, self.floor)

    def map(self, fn):
        return PSymbol({i: fn(v) for i, v in self.coeffs.items()}, self.floor)

    def __eq__(self, other):
        if not isinstance(other, PSymbol):
            return NotImplemented
        return self.floor == other.floor and self.coeffs == other.coeffs

    def agrees_with(self, other, floor=None):
        """Coefficient-wise equality at every exponent exact in both (and ``>= floor``)."""
        lo = _max_floor(self.floor, other.floor, floor)
        keys = set(self.coeffs) | set(other.coeffs)
        return all(self.coeffs.get(i, ZERO) == other.coeffs.get(i, ZERO)
                   for i in keys if lo is None or i >= lo)

    def __hash__(self):
        return hash((self.floor, frozenset(self.coeffs.items())))

    def __str__(self):
        return render_symbol(self)

    def __repr__(self):
        return f"PSymbol({render_symbol(self)!r}, floor={self.floor})"


def _coerce(x):
    if isinstance(x, PSymbol):
        return x
    if isinstance(x, DiffPoly):
        return PSymbol({0: x})
    return PSymbol({0: DiffPoly.constant(x)})


ONE_SYMBOL = PSymbol({0: ONE})


def render_symbol(f):
    if not f.coeffs:
        return "0"
    parts = []
    for i in f.exponents():
        c = f.coeffs[i]
        if i == 0:
            parts.append(render(c))
            continue
        pw = "p" if i == 1 else f"p^{i}"
        parts.append(pw if c == ONE else f"({render(c)})*{pw}")
    out = parts[0]
    for s in parts[1:]:
        out += " - " + s[1:] if s.startswith("-") else " + " + s
    return out


def _product_floor(f, g, shift=0):
    df, dg = f._eff_degree(), g._eff_degree()
    if df == NEG_INF or dg == NEG_INF:
        return None, True  # one side is exactly zero
    cands = []
    if f.floor is not None:
        cands.append(f.floor + dg + shift)
    if g.floor is not None:
        cands.append(g.floor + df + shift)
    return (max(cands) if cands else None), False


def _derivs(poly, cache, n):
    lst = cache.get(id(poly))
    if lst is None:
        lst = cache[id(poly)] = [poly]
    while len(lst) <= n:
        prev = lst[-1]
        lst.append(deriv(prev) if prev else prev)
    return lst[n]


def _star_sum(f, g, floor, odd_only=False):
    """Raw star sum kept at exponents ``>= floor`` (``None``: no truncation)."""
    out = {}
    cache = {}
    for i, fc in f.coeffs.items():
        f_const = fc.is_constant()
        for j, gc in g.coeffs.items():
            g_const = gc.is_constant()
            # s-k falls on p^i and hits gc with d_q; k falls on p^j and hits fc
            max_a = 0 if g_const else (i if i >= 0 else math.inf)
            max_b = 0 if f_const else (j if j >= 0 else math.inf)
            s_max = max_a + max_b
            if floor is not None:
                s_max = min(s_max, i + j - floor)
            if s_max == math.inf:
                raise UnboundedExpansion(
                    f"p^{i} * p^{j} star product does not terminate; give a floor")
            s_max = int(s_max)
            fact = 1
            for s in range(0, s_max + 1):
                if s:
                    fact *= s
                if odd_only and s % 2 == 0:
                    continue
                acc = None
                for k in range(max(0, s - max_a), min(s, max_b) + 1):
                    w = falling(i, s - k) * falling(j, k)
                    if not w:
                        continue
                    w = Fraction(math.comb(s, k) * w * (-1) ** k, fact)
                    df = _derivs(fc, cache, k)
                    dg = _derivs(gc, cache, s - k)
                    if not df or not dg:
                        continue
                    term = (df * dg) * w
                    acc = term if acc is None else acc + term
                if acc:
                    e = i + j - s
                    acc = acc.shift_eps(s)
                    out[e] = out[e] + acc if e in out else acc
    return out


def star_mul(f, g, floor=None):
    """Moyal star product ``f * g``.

    ``f*g = sum_s e^s/s! sum_k C(s,k) (-1)^k (dp^(s-k) dq^k f)(dq^(s-k) dp^k g)``.
    An optional ``floor`` truncates the result further.
    """
    f, g = _coerce(f), _coerce(g)
    prop, zero = _product_floor(f, g)
    if zero:
        return PSymbol({}, _max_floor(prop, floor))
    res_floor = _max_floor(prop, floor)
    return PSymbol(_star_sum(f, g, res_floor), res_floor)


def commutator(f, g, floor=None):
    """Moyal commutator ``f*g - g*f``.

    Only the odd orders of the star sum survive the difference, so the unknown
    tails contribute one exponent lower than in a plain product.
    """
    f, g = _coerce(f), _coerce(g)
    prop, zero = _product_floor(f, g, shift=-1)
    if zero:
        return PSymbol({}, _max_floor(prop, floor))
    res_floor = _max_floor(prop, floor)
    raw = _star_sum(f, g, res_floor, odd_only=True)
    return PSymbol({e: c * 2 for e, c in raw.items()}, res_floor)


def star_pow(f, m, floor=None):
    """``f * f * ... * f`` (``m`` factors) exact at every exponent ``>= floor``.

    Intermediate products are truncated as aggressively as the floor rule allows.
    """
    if m < 1:
        raise ValueError("power must be positive")
    f = _coerce(f)
    d = f._eff_degree()
    if d == NEG_INF:
        return PSymbol({}, floor)
    if floor is not None:
        if f.floor is not None and d != NEG_INF and f.floor + (m - 1) * d > floor:
            raise InsufficientDepth(
                f"symbol exact to p^{f.floor} cannot give its {m}-th power down to p^{floor}")
    result = f if floor is None else f.truncate(floor - (m - 1) * d)
    for k in range(2, m + 1):
        target = None if floor is None else floor - (m - k) * d
        result = star_mul(result, f, target)
    if floor is not None and result.floor is not None and result.floor < floor:
        result = result.truncate(floor)
    return result


def project(f, threshold):
    """Keep the exponents ``>= threshold``; the result is an exact symbol."""
    if f.floor is not None and f.floor > threshold:
        raise FloorTooHigh(f"projection at {threshold} needs a symbol exact to that level")
    return PSymbol({i: c for i, c in f.coeffs.items() if i >= threshold}, None)


def residue(f):
    """Coefficient of ``p^-1``."""
    if f.floor is not None and f.floor > -1:
        raise FloorTooHigh("residue needs a symbol exact down to p^-1")
    return f.coeffs.get(-1, ZERO)


def p_derivative(f):
    """``d/dp`` acting on exponents: ``p^i -> i p^(i-1)``."""
    floor = None if f.floor is None else f.floor - 1
    return PSymbol({i - 1: c * i for i, c in f.coeffs.items() if i}, floor)


def q_derivative(f):
    return PSymbol({i: deriv(c) for i, c in f.coeffs.items()}, f.floor)


def dot(f, g):
    """Ordinary commutative product of two symbols."""
    f, g = _coerce(f), _coerce(g)
    prop, zero = _product_floor(f, g)
    if zero:
        return PSymbol({}, prop)
    out = {}
    for i, fc in f.coeffs.items():
        for j, gc in g.coeffs.items():
            if prop is not None and i + j < prop:
                continue
            t = fc * gc
            out[i + j] = out[i + j] + t if i + j in out else t
    return PSymbol(out, prop)


def poisson_bracket(f, g):
    """Classical bracket ``df/dp dg/dq - df/dq dg/dp`` (no deformation)."""
    f, g = _coerce(f), _coerce(g)
    return dot(p_derivative(f), q_derivative(g)) - dot(q_derivative(f), p_derivative(g))


def classical_part(f):
    """Drop every monomial carrying a positive power of ``e``."""
    def keep(c):
        return DiffPoly({key: v for key, v in c.items() if key[0] <= 0})
    return f.map(keep)
