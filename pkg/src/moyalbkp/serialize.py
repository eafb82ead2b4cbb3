"""JSON forms of engine values.

A polynomial is a list of monomials::

    {"coeff": "-32/9", "eps": 5, "atoms": [{"gen": "a1", "x": 5, "y": 0}]}

with antiderivatives as ``{"int": {"depth": 1, "body": [<monomials>]}}``.
Repeated atoms are listed once per occurrence.  Decoding re-normalizes, so
``from_json(to_json(v)) == v``.
"""

from fractions import Fraction

from .diffpoly import ZERO, DiffPoly, Gen, integral, render_fraction
from .hierarchy import FlowEquation, FlowResult
from .psymbol import PSymbol


def atom_to_json(atom):
    if type(atom) is Gen:
        return {"gen": f"{atom.family}{atom.index}", "x": atom.x, "y": atom.y}
    body = [{"coeff": "1", "eps": 0, "atoms": [atom_to_json(a) for a in atom.body]}]
    return {"int": {"depth": atom.depth, "body": body}}


def poly_to_json(p):
    return [{"coeff": render_fraction(m.coeff), "eps": m.eps,
             "atoms": [atom_to_json(a) for a in m.atoms]} for m in p.terms()]


def _atom_from_json(obj):
    if "gen" in obj:
        name = obj["gen"]
        return DiffPoly.generator(name[0], int(name[1:]), int(obj.get("x", 0)), int(obj.get("y", 0)))
    inner = obj["int"]
    depth = int(inner["depth"])
    if depth < 1:
        raise ValueError("antiderivative depth must be positive")
    return integral(poly_from_json(inner["body"]), depth)


def poly_from_json(data):
    out = ZERO
    for mono in data:
        term = DiffPoly.constant(Fraction(mono["coeff"]), int(mono.get("eps", 0)))
        for atom in mono.get("atoms", []):
            term = term * _atom_from_json(atom)
        out = out + term
    return out


def symbol_to_json(f):
    return {"floor": f.floor,
            "coeffs": [{"p": i, "poly": poly_to_json(f.coeffs[i])} for i in f.exponents()]}


def symbol_from_json(data):
    coeffs = {int(t["p"]): poly_from_json(t["poly"]) for t in data["coeffs"]}
    return PSymbol(coeffs, data.get("floor"))


def flow_equation_to_json(eq):
    return {"target": eq.target, "time": eq.time, "rhs": poly_to_json(eq.rhs)}


def flow_equation_from_json(data):
    return FlowEquation(data["target"], data["time"], poly_from_json(data["rhs"]))


def flow_result_to_json(res):
    return {"m": res.m, "threshold": res.threshold,
            "constraints": [poly_to_json(c) for c in res.constraints],
            "equations": [flow_equation_to_json(e) for e in res.equations]}


def flow_result_from_json(data):
    return FlowResult([flow_equation_from_json(e) for e in data["equations"]],
                      [poly_from_json(c) for c in data["constraints"]],
                      data.get("m", 0), data.get("threshold", 0))
