"""Exact differential polynomials over the generators ``a_m``, ``w_m``, ``u_m``.

A :class:`DiffPoly` is a finite sum of monomials ``c * e^k * A_1 * ... * A_r``
with ``c`` a :class:`fractions.Fraction`, ``k`` any integer (the deformation
parameter is a formal graded symbol, never a number) and each ``A_i`` an atom:

* :class:`Gen` -- a generator with an x-derivative order and a y-derivative
  order, e.g. ``a3^(2;1)`` for d_x^2 d_y a_3;
* :class:`Integral` -- the formal antiderivative ``Dxi^d(B)`` of a unit
  monomial ``B``; integration constants are always zero.

Canonical ordering
------------------
Atoms sort by ``(kind, family, index, xOrder, yOrder)`` for generators, with
families in alphabetical order ``a < u < w``; integrals sort after all
generators, by depth and then by the keys of their body atoms.  Monomials
render in order of descending ``e`` power, then by the lexicographic order of
their atom-key tuples.  Everything that prints depends only on these keys, so
output is byte-stable.
"""

from collections import defaultdict
from fractions import Fraction
from functools import lru_cache
from heapq import merge
from typing import NamedTuple

from .errors import NonLocalInput, SelfReference

FAMILIES = ("a", "u", "w")


class Gen(NamedTuple):
    family: str
    index: int
    x: int = 0
    y: int = 0


class Integral(NamedTuple):
    body: tuple  # atoms of a unit monomial
    depth: int = 1


class Monomial(NamedTuple):
    coeff: Fraction
    eps: int
    atoms: tuple


@lru_cache(maxsize=None)
def atom_key(atom):
    if type(atom) is Gen:
        return (0, atom.family, atom.index, atom.x, atom.y)
    return (1, atom.depth, tuple(atom_key(a) for a in atom.body))


def _merge(a, b):
    if not a:
        return b
    if not b:
        return a
    return tuple(merge(a, b, key=atom_key))


def _runs(atoms):
    """Yield ``(atom, multiplicity, index_of_first)`` for a sorted atom tuple."""
    i, n = 0, len(atoms)
    while i < n:
        j = i + 1
        while j < n and atoms[j] == atoms[i]:
            j += 1
        yield atoms[i], j - i, i
        i = j


def _acc_add(acc, key, c):
    v = acc.get(key)
    if v is None:
        acc[key] = c
    else:
        v += c
        if v:
            acc[key] = v
        else:
            del acc[key]


def _field(gen):
    """Normalize a generator designation to ``(family, index)``."""
    if isinstance(gen, str):
        family, index = gen[0], int(gen[1:])
    elif isinstance(gen, Gen):
        family, index = gen.family, gen.index
    else:
        family, index = gen
    if family not in FAMILIES or index < 1:
        raise ValueError(f"not a generator: {gen!r}")
    return family, index


class DiffPoly:
    """Immutable canonical differential polynomial."""

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms=None):
        # ``terms`` maps (eps, atoms) -> nonzero Fraction; callers own canonicity
        self._terms = terms if terms is not None else {}
        self._hash = None

    # -- construction ------------------------------------------------------
    @classmethod
    def constant(cls, c, eps=0):
        c = Fraction(c)
        return cls({(eps, ()): c}) if c else cls()

    @classmethod
    def generator(cls, family, index, x=0, y=0):
        if family not in FAMILIES:
            raise ValueError(f"unknown generator family {family!r}")
        if index < 1 or x < 0 or y < 0:
            raise ValueError("generator index must be positive, orders non-negative")
        if y and family != "a":
            raise ValueError(f"{family}-generators depend on x only")
        return cls({(0, (Gen(family, index, x, y),)): Fraction(1)})

    @classmethod
    def from_atoms(cls, atoms, coeff=1, eps=0):
        coeff = Fraction(coeff)
        if not coeff:
            return cls()
        return cls({(eps, tuple(sorted(atoms, key=atom_key))): coeff})

    @classmethod
    def _from_acc(cls, acc):
        return cls({k: v for k, v in acc.items() if v})

    # -- inspection --------------------------------------------------------
    def terms(self):
        """Monomials in canonical (rendering) order."""
        keys = sorted(self._terms, key=_term_sort_key)
        return [Monomial(self._terms[k], k[0], k[1]) for k in keys]

    def items(self):
        return self._terms.items()

    def __len__(self):
        return len(self._terms)

    def __bool__(self):
        return bool(self._terms)

    def is_constant(self):
        return all(not atoms for _, atoms in self._terms)

    def is_local(self):
        return not any(type(a) is Integral for _, atoms in self._terms for a in atoms)

    def generators(self):
        """Set of ``(family, index)`` pairs occurring anywhere, integrals included."""
        out = set()
        for _, atoms in self._terms:
            _collect_fields(atoms, out)
        return out

    def contains(self, gen):
        return _field(gen) in self.generators()

    def eps_part(self, k):
        return DiffPoly({key: c for key, c in self._terms.items() if key[0] == k})

    def max_eps(self):
        return max((k for k, _ in self._terms), default=None)

    # -- arithmetic --------------------------------------------------------
    def __add__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        if not other._terms:
            return self
        if not self._terms:
            return other
        acc = dict(self._terms)
        for k, c in other._terms.items():
            _acc_add(acc, k, c)
        return DiffPoly(acc)

    __radd__ = __add__

    def __neg__(self):
        return DiffPoly({k: -c for k, c in self._terms.items()})

    def __sub__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            other = Fraction(other)
            if not other:
                return DiffPoly()
            return DiffPoly({k: c * other for k, c in self._terms.items()})
        if not isinstance(other, DiffPoly):
            return NotImplemented
        acc = {}
        for (k1, a1), c1 in self._terms.items():
            for (k2, a2), c2 in other._terms.items():
                _acc_add(acc, (k1 + k2, _merge(a1, a2)), c1 * c2)
        return DiffPoly(acc)

    __rmul__ = __mul__

    def __truediv__(self, other):
        return self * (1 / Fraction(other))

    def __pow__(self, n):
        out = ONE
        for _ in range(n):
            out = out * self
        return out

    def shift_eps(self, k):
        """Multiply by ``e^k``."""
        if not k:
            return self
        return DiffPoly({(e + k, a): c for (e, a), c in self._terms.items()})

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = DiffPoly.constant(other)
        if not isinstance(other, DiffPoly):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    def __str__(self):
        return render(self)

    def __repr__(self):
        return f"DiffPoly({render(self)!r})"


def _coerce(x):
    if isinstance(x, DiffPoly):
        return x
    if isinstance(x, (int, Fraction)):
        return DiffPoly.constant(x)
    return NotImplemented


def _term_sort_key(key):
    eps, atoms = key
    return (-eps, tuple(atom_key(a) for a in atoms))


def _collect_fields(atoms, out):
    for a in atoms:
        if type(a) is Gen:
            out.add((a.family, a.index))
        else:
            _collect_fields(a.body, out)


ZERO = DiffPoly()
ONE = DiffPoly.constant(1)


def eps(k=1):
    """The monomial ``e^k``."""
    return DiffPoly.constant(1, k)


def gen(name, x=0, y=0):
    """Shorthand: ``gen("a3", 2)`` is d_x^2 a_3."""
    family, index = _field(name)
    return DiffPoly.generator(family, index, x, y)


def add(p, q):
    return p + q


def mul(p, q):
    return p * q


# -- derivatives ----------------------------------------------------------

@lru_cache(maxsize=65536)
def _atom_deriv(atom, var):
    """Derivative of a single atom, as a DiffPoly."""
    if type(atom) is Gen:
        if var == "x":
            return DiffPoly({(0, (atom._replace(x=atom.x + 1),)): Fraction(1)})
        if atom.family != "a":
            raise ValueError(f"{atom.family}-generators depend on x only")
        return DiffPoly({(0, (atom._replace(y=atom.y + 1),)): Fraction(1)})
    if var == "x":
        if atom.depth == 1:
            return DiffPoly({(0, atom.body): Fraction(1)})
        return DiffPoly({(0, (Integral(atom.body, atom.depth - 1),)): Fraction(1)})
    inner = _deriv1(DiffPoly({(0, atom.body): Fraction(1)}), "y")
    for _ in range(atom.depth):
        inner = integrate_x(inner)
    return inner


def _mono_deriv_into(acc, eps_pow, atoms, coeff, var):
    for atom, mult, i in _runs(atoms):
        rest = atoms[:i] + atoms[i + 1:]
        for (k2, a2), c2 in _atom_deriv(atom, var)._terms.items():
            _acc_add(acc, (eps_pow + k2, _merge(rest, a2)), coeff * mult * c2)


def _deriv1(p, var):
    acc = {}
    for (k, atoms), c in p._terms.items():
        _mono_deriv_into(acc, k, atoms, c, var)
    return DiffPoly(acc)


def deriv(p, var="x", n=1):
    """``n``-th total derivative in ``x`` or ``y`` (Leibniz rule over atoms)."""
    if var not in ("x", "y"):
        raise ValueError(f"unknown variable {var!r}")
    if n < 0:
        raise ValueError("derivative order must be non-negative")
    for _ in range(n):
        if not p:
            break
        p = _deriv1(p, var)
    return p


# -- partial derivatives, Euler operator, homotopy ------------------------

def _partial(p, atom):
    """d p / d atom, treating every atom as an independent variable."""
    acc = {}
    for (k, atoms), c in p._terms.items():
        for a, mult, i in _runs(atoms):
            if a == atom:
                _acc_add(acc, (k, atoms[:i] + atoms[i + 1:]), c * mult)
                break
    return DiffPoly(acc)


def _local_fields(p):
    """``(family, index, y)`` triples and their maximal x-order in a local poly."""
    top = {}
    for _, atoms in p._terms:
        for a in atoms:
            f = (a.family, a.index, a.y)
            top[f] = max(top.get(f, 0), a.x)
    return top


def _variational(p, field, max_order):
    family, index, y = field
    out = ZERO
    for k in range(max_order, -1, -1):
        # Horner form: sum_k (-D)^k P_k
        out = -deriv(out) + _partial(p, Gen(family, index, k, y))
    return out


def euler_op(p, generator):
    """Variational derivative of ``p`` with respect to a generator.

    Returns ``sum_k (-D_x)^k dp/d(gen^(k))``.  ``p`` must be a local
    x-polynomial (no antiderivatives, no y-derivatives).
    """
    family, index = _field(generator)
    for _, atoms in p._terms:
        for a in atoms:
            if type(a) is Integral:
                raise NonLocalInput("euler_op needs a local polynomial; found an antiderivative")
            if a.y:
                raise NonLocalInput("euler_op needs an x-only polynomial; found a y-derivative")
    order = _local_fields(p).get((family, index, 0))
    if order is None:
        return ZERO
    return _variational(p, (family, index, 0), order)


def is_total_derivative(p):
    """True iff the local polynomial ``p`` is ``D_x`` of a local polynomial."""
    if any(not atoms for _, atoms in p._terms):
        return False
    return all(not _variational(p, f, n) for f, n in _local_fields(p).items())


def _homotopy(p, degree):
    """Antiderivative of an exact local polynomial homogeneous of ``degree``."""
    out = ZERO
    for (family, index, y), top in sorted(_local_fields(p).items()):
        for k in range(1, top + 1):
            dp = _partial(p, Gen(family, index, k, y))
            if not dp:
                continue
            for j in range(k):
                term = dp
                for _ in range(k - 1 - j):
                    term = -deriv(term)
                out = out + DiffPoly.generator(family, index, j, y) * term
    return out / degree


# -- formal integration ---------------------------------------------------

def _top_order(atoms):
    return max((a.x for a in atoms), default=0)


def _ibp_split(atoms, top):
    """Match ``M * V^k * T`` with ``T = g^(N)`` linear, ``V = g^(N-1)``, M below N-1."""
    if top == 0:
        return None
    tops = [a for a in atoms if a.x == top]
    if len(tops) != 1:
        return None
    t = tops[0]
    v = t._replace(x=top - 1)
    i = atoms.index(t)
    rest = atoms[:i] + atoms[i + 1:]
    kpow = rest.count(v)
    m = tuple(a for a in rest if a != v)
    if any(a.x > top - 2 for a in m):
        return None
    return v, kpow, m


def _integrate_local(terms):
    """Split a local sum into an explicit antiderivative and a leftover to wrap."""
    levels = {}
    for key, c in terms.items():
        _acc_add(levels.setdefault(_top_order(key[1]), {}), key, c)
    prim, left = {}, {}
    while levels:
        n = max(levels)
        bucket = levels.pop(n)
        for key in sorted(bucket, key=_term_sort_key):
            c = bucket[key]
            k, atoms = key
            split = _ibp_split(atoms, n) if atoms else None
            if split is None:
                _acc_add(left, key, c)
                continue
            v, kpow, m = split
            c = c / (kpow + 1)
            vs = (v,) * (kpow + 1)
            _acc_add(prim, (k, _merge(m, vs)), c)
            dm = {}
            _mono_deriv_into(dm, k, m, -c, "x")
            for (k2, a2), c2 in dm.items():
                atoms2 = _merge(a2, vs)
                _acc_add(levels.setdefault(_top_order(atoms2), {}), (k2, atoms2), c2)
        levels = {lvl: b for lvl, b in levels.items() if b}

    # leftover: homogeneous classes that happen to be exact get a closed form
    classes = defaultdict(dict)
    for (k, atoms), c in left.items():
        sig = (k, tuple(sorted((a.family, a.index, a.y) for a in atoms)), sum(a.x for a in atoms))
        classes[sig][(k, atoms)] = c
    wrap = {}
    extra = ZERO
    for sig in sorted(classes):
        cls_terms = classes[sig]
        if sig[1]:
            cls_poly = DiffPoly(cls_terms)
            if is_total_derivative(cls_poly):
                extra = extra + _homotopy(cls_poly, len(sig[1]))
                continue
        wrap.update(cls_terms)
    return DiffPoly(prim) + extra, wrap


def integrate_x(p):
    """Formal antiderivative in ``x`` with zero integration constant.

    Exact local parts are integrated in closed form (integration by parts on a
    linear top-order atom, then a homotopy formula for any exact remainder);
    every other monomial is wrapped in an opaque ``Dxi``.  Always satisfies
    ``deriv(integrate_x(p)) == p``.
    """
    acc = {}
    local = {}
    extra = ZERO
    for (k, atoms), c in p._terms.items():
        if any(type(a) is Integral for a in atoms):
            extra = extra + _integrate_nonlocal(k, atoms, c, acc)
        else:
            local[(k, atoms)] = c
    prim, wrap = _integrate_local(local)
    for (k, atoms), c in wrap.items():
        _acc_add(acc, (k, (Integral(atoms, 1),)), c)
    return DiffPoly(acc) + prim + extra


def _integrate_nonlocal(k, atoms, c, acc):
    """Integrate ``c e^k N J`` with ``J`` an antiderivative atom.

    A lone ``J`` gains one level of depth.  When ``J`` occurs once and the
    local factor ``N`` has a partial antiderivative ``N0``, integrate by parts:
    ``Dxi(N J) = N0 J - Dxi(N0 D(J)) + Dxi(R J)`` with ``R = N - D(N0)``.
    Anything else is wrapped whole into ``acc``.
    """
    ints = [a for a in atoms if type(a) is Integral]
    if len(atoms) == 1:
        body, depth = atoms[0]
        _acc_add(acc, (k, (Integral(body, depth + 1),)), c)
        return ZERO
    if len(ints) == 1:
        j = ints[0]
        local = tuple(a for a in atoms if type(a) is Gen)
        prim, wrap = _integrate_local({(0, local): Fraction(1)})
        if prim:
            jpoly = DiffPoly({(0, (j,)): Fraction(1)})
            out = prim * jpoly - integrate_x(prim * _atom_deriv(j, "x"))
            for (k2, a2), c2 in wrap.items():
                _acc_add(acc, (k + k2, (Integral(_merge(a2, (j,)), 1),)), c * c2)
            return out.shift_eps(k) * c
    _acc_add(acc, (k, (Integral(atoms, 1),)), c)
    return ZERO


def integral(p, depth=1):
    """``Dxi^depth(p)``, normalized."""
    for _ in range(depth):
        p = integrate_x(p)
    return p


# -- substitution ---------------------------------------------------------

def substitute(p, generator, value):
    """Replace every derivative ``g^(i;j)`` of a generator by ``d_x^i d_y^j value``."""
    field = _field(generator)
    if field in value.generators():
        raise SelfReference(f"value for {field[0]}{field[1]} refers to itself")
    images = {}

    def image(atom):
        if type(atom) is Gen:
            if (atom.family, atom.index) != field:
                return None
            key = (atom.x, atom.y)
            if key not in images:
                images[key] = deriv(deriv(value, "x", atom.x), "y", atom.y)
            return images[key]
        inner = set()
        _collect_fields(atom.body, inner)
        if field not in inner:
            return None
        body = substitute(DiffPoly({(0, atom.body): Fraction(1)}), field, value)
        return integral(body, atom.depth)

    out = {}
    for (k, atoms), c in p._terms.items():
        kept = []
        factor = None
        for a in atoms:
            img = image(a)
            if img is None:
                kept.append(a)
            else:
                factor = img if factor is None else factor * img
        if factor is None:
            _acc_add(out, (k, atoms), c)
            continue
        base = DiffPoly({(k, tuple(kept)): c})
        for key, c2 in (base * factor)._terms.items():
            _acc_add(out, key, c2)
    return DiffPoly(out)


def substitute_all(p, solutions):
    """Apply ``substitute`` for each ``(generator, value)`` pair in order."""
    for g, v in solutions:
        p = substitute(p, g, v)
    return p


# -- binomial -------------------------------------------------------------

def binomial(n, k):
    """Generalized binomial ``n(n-1)...(n-k+1)/k!`` for any integer ``n``."""
    if k < 0:
        raise ValueError("k must be non-negative")
    num, den = 1, 1
    for i in range(k):
        num *= n - i
        den *= i + 1
    return Fraction(num, den)


def falling(n, k):
    """Falling factorial ``n(n-1)...(n-k+1)``."""
    out = 1
    for i in range(k):
        out *= n - i
    return out


# -- rendering ------------------------------------------------------------

def render_atom(atom):
    if type(atom) is Gen:
        name = f"{atom.family}{atom.index}"
        if atom.y:
            return f"{name}^({atom.x};{atom.y})"
        if atom.x:
            return f"{name}^({atom.x})"
        return name
    body = _render_factors(atom.body) or "1"
    head = "Dxi" if atom.depth == 1 else f"Dxi^{atom.depth}"
    return f"{head}({body})"


def _render_factors(atoms):
    parts = []
    for atom, mult, _ in _runs(atoms):
        s = render_atom(atom)
        parts.append(f"{s}^{mult}" if mult > 1 else s)
    return "*".join(parts)


def render_fraction(c):
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def render_monomial(coeff, eps_pow, atoms):
    factors = []
    if eps_pow == 1:
        factors.append("e")
    elif eps_pow:
        factors.append(f"e^{eps_pow}")
    body = _render_factors(atoms)
    if body:
        factors.append(body)
    tail = "*".join(factors)
    if not tail:
        return render_fraction(coeff)
    if coeff == 1:
        return tail
    if coeff == -1:
        return "-" + tail
    return f"{render_fraction(coeff)}*{tail}"


def render(p):
    """Canonical text form, e.g. ``2*e^3*a1^(3) + 12*e*a1*a1^(1)``."""
    if not p:
        return "0"
    out = ""
    for m in p.terms():
        s = render_monomial(m.coeff, m.eps, m.atoms)
        if not out:
            out = s
        elif s.startswith("-"):
            out += " - " + s[1:]
        else:
            out += " + " + s
    return out
