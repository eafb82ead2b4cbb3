"""Random inputs shared by the property tests and the acceptance suite."""

import random

from hypothesis import strategies as st

from moyalbkp import DiffPoly, PSymbol
from moyalbkp.diffpoly import ZERO, integral

NAMES = ("a1", "a2", "a3")


@st.composite
def monomials(draw, families=NAMES, max_atoms=3, max_x=3, with_y=False, eps=(0, 2)):
    c = draw(st.integers(-5, 5).filter(bool))
    k = draw(st.integers(*eps))
    out = DiffPoly.constant(c, k)
    for _ in range(draw(st.integers(0, max_atoms))):
        name = draw(st.sampled_from(families))
        y = draw(st.integers(0, 1)) if with_y and name[0] == "a" else 0
        out = out * DiffPoly.generator(name[0], int(name[1:]), draw(st.integers(0, max_x)), y)
    return out


@st.composite
def polys(draw, max_terms=4, **kw):
    out = ZERO
    for m in draw(st.lists(monomials(**kw), max_size=max_terms)):
        out = out + m
    return out


@st.composite
def nonlocal_polys(draw):
    base = draw(polys(max_terms=3, with_y=True))
    body = draw(polys(max_terms=2, with_y=True))
    depth = draw(st.integers(1, 2))
    return base + draw(polys(max_terms=2)) * integral(body, depth)


@st.composite
def symbols(draw, lo=-2, hi=3, floor=None, eps=(0, 2)):
    coeffs = {}
    for i in draw(st.lists(st.integers(lo, hi), max_size=3, unique=True)):
        coeffs[i] = draw(polys(max_terms=2, max_atoms=2, max_x=2, eps=eps))
    return PSymbol(coeffs, floor)


def random_poly(rng, gens, terms=2, max_atoms=2):
    out = ZERO
    for _ in range(rng.randint(1, terms)):
        m = DiffPoly.constant(rng.choice([c for c in range(-5, 6) if c]))
        for _ in range(rng.randint(0, max_atoms)):
            name = rng.choice(gens)
            m = m * DiffPoly.generator(name[0], int(name[1:]), rng.randint(0, 2))
        out = out + m
    return out


def random_symbol(rng, lo=-2, hi=3, floor=-3):
    """Degree <= ``hi``, at most three generators, integer coefficients in [-5, 5]."""
    gens = rng.sample(NAMES, rng.randint(1, 3))
    exps = rng.sample(range(lo, hi + 1), rng.randint(1, 3))
    coeffs = {i: random_poly(rng, gens) for i in exps}
    return PSymbol(coeffs, floor if min(exps) < 0 else None)


def seeded(seed):
    return random.Random(seed)
