"""JSON codecs for the exact types.

Rationals travel as strings ("3", "-1/2") so that exactness survives
serialization; exponent vectors are integer arrays; form component
indices are 1-based in files, matching the dx_1..dx_n naming, and
0-based in memory.  Emission orders every collection deterministically,
which is what makes byte-identical reports possible.
"""

from __future__ import annotations

from fractions import Fraction

from .chains import AffineSimplex, Chain
from .diffeo import PolyDiffeo
from .errors import ScenarioError
from .forms import PolyForm
from .polynomial import Polynomial


def fraction_to_str(value) -> str:
    return str(Fraction(value))


def parse_fraction(data) -> Fraction:
    """Accept "p/q" strings or plain integers; reject floats."""
    if isinstance(data, bool):
        raise ScenarioError(f"expected a rational, got {data!r}")
    if isinstance(data, int):
        return Fraction(data)
    if isinstance(data, str):
        try:
            return Fraction(data)
        except (ValueError, ZeroDivisionError) as exc:
            raise ScenarioError(f"bad rational literal {data!r}: {exc}") from None
    raise ScenarioError(
        f"expected a rational as string or integer, got {type(data).__name__}"
    )


# -- polynomials ------------------------------------------------------------


def polynomial_to_json(poly: Polynomial) -> list:
    return [
        {"exps": list(exp), "coeff": fraction_to_str(coeff)}
        for exp, coeff in poly.sorted_terms()
    ]


def polynomial_from_json(data, dim: int) -> Polynomial:
    if not isinstance(data, list):
        raise ScenarioError("polynomial must be a list of terms")
    terms: dict[tuple, Fraction] = {}
    for entry in data:
        if not isinstance(entry, dict) or set(entry) != {"exps", "coeff"}:
            raise ScenarioError(f"bad polynomial term {entry!r}")
        exps = entry["exps"]
        if (
            not isinstance(exps, list)
            or len(exps) != dim
            or any(not isinstance(e, int) or isinstance(e, bool) or e < 0 for e in exps)
        ):
            raise ScenarioError(
                f"exponent vector {exps!r} must be {dim} non-negative integers"
            )
        coeff = parse_fraction(entry["coeff"])
        key = tuple(exps)
        total = terms.get(key, Fraction(0)) + coeff
        if total:
            terms[key] = total
        else:
            terms.pop(key, None)
    return Polynomial(dim, terms)


# -- forms ------------------------------------------------------------------


def form_to_json(form: PolyForm) -> dict:
    return {
        "dim": form.dim,
        "degree": form.degree,
        "components": [
            {"idx": [a + 1 for a in idx], "poly": polynomial_to_json(form.components[idx])}
            for idx in sorted(form.components)
        ],
    }


def form_from_json(data) -> PolyForm:
    if not isinstance(data, dict):
        raise ScenarioError("form must be an object")
    try:
        dim = int(data["dim"])
        degree = int(data["degree"])
        raw = data["components"]
    except (KeyError, TypeError, ValueError) as exc:
        raise ScenarioError(f"form needs dim, degree, components: {exc}") from None
    if not isinstance(raw, list):
        raise ScenarioError("form components must be a list")
    comps = {}
    for entry in raw:
        if not isinstance(entry, dict) or set(entry) != {"idx", "poly"}:
            raise ScenarioError(f"bad form component {entry!r}")
        axes = entry["idx"]
        if not isinstance(axes, list) or any(
            not isinstance(a, int) or isinstance(a, bool) for a in axes
        ):
            raise ScenarioError(f"component index {axes!r} must be a list of integers")
        if any(not 1 <= a <= dim for a in axes):
            raise ScenarioError(f"component index {axes!r} out of range 1..{dim}")
        idx = tuple(a - 1 for a in axes)
        poly = polynomial_from_json(entry["poly"], dim)
        if idx in comps:
            comps[idx] = comps[idx] + poly
        else:
            comps[idx] = poly
    try:
        return PolyForm(dim, degree, comps)
    except ValueError as exc:
        raise ScenarioError(str(exc)) from None


# -- diffeomorphisms --------------------------------------------------------


def diffeo_to_json(g: PolyDiffeo) -> dict:
    return {
        "forward": [polynomial_to_json(c) for c in g.forward],
        "inverse": [polynomial_to_json(c) for c in g.inverse],
        "label": g.label,
    }


def diffeo_from_json(data) -> PolyDiffeo:
    if not isinstance(data, dict):
        raise ScenarioError("diffeomorphism must be an object")
    try:
        fwd_raw = data["forward"]
        inv_raw = data["inverse"]
    except (KeyError, TypeError) as exc:
        raise ScenarioError(f"diffeomorphism needs forward and inverse: {exc}") from None
    label = data.get("label", "")
    if not isinstance(fwd_raw, list) or not fwd_raw:
        raise ScenarioError("forward components must be a nonempty list")
    dim = len(fwd_raw)
    if not isinstance(inv_raw, list) or len(inv_raw) != dim:
        raise ScenarioError("inverse must have the same number of components")
    forward = [polynomial_from_json(c, dim) for c in fwd_raw]
    inverse = [polynomial_from_json(c, dim) for c in inv_raw]
    try:
        return PolyDiffeo(forward, inverse, str(label))
    except ValueError as exc:
        raise ScenarioError(str(exc)) from None


# -- chains -----------------------------------------------------------------


def chain_to_json(chain: Chain) -> dict:
    entries = sorted(chain.terms.items(), key=lambda kv: kv[0].vertices)
    return {
        "dim": chain.dim,
        "simplices": [
            {
                "coeff": fraction_to_str(coeff),
                "verts": [[fraction_to_str(x) for x in v] for v in simplex.vertices],
            }
            for simplex, coeff in entries
        ],
    }


def chain_from_json(data, ambient: int | None = None) -> Chain:
    if not isinstance(data, dict) or "dim" not in data or "simplices" not in data:
        raise ScenarioError("chain must be an object with dim and simplices")
    try:
        dim = int(data["dim"])
    except (TypeError, ValueError):
        raise ScenarioError(f"bad chain dimension {data.get('dim')!r}") from None
    raw = data["simplices"]
    if not isinstance(raw, list):
        raise ScenarioError("chain simplices must be a list")
    if ambient is None:
        if not raw:
            raise ScenarioError("cannot infer ambient dimension of an empty chain")
        first = raw[0].get("verts") if isinstance(raw[0], dict) else None
        if not first or not isinstance(first, list) or not first[0]:
            raise ScenarioError("bad simplex entry in chain")
        ambient = len(first[0])
    terms: dict[AffineSimplex, Fraction] = {}
    for entry in raw:
        if not isinstance(entry, dict) or set(entry) != {"coeff", "verts"}:
            raise ScenarioError(f"bad simplex entry {entry!r}")
        verts = entry["verts"]
        if (
            not isinstance(verts, list)
            or len(verts) != dim + 1
            or any(not isinstance(v, list) or len(v) != ambient for v in verts)
        ):
            raise ScenarioError(
                f"a {dim}-simplex in R^{ambient} needs {dim + 1} vertices "
                f"of {ambient} coordinates"
            )
        try:
            simplex = AffineSimplex(
                [[parse_fraction(x) for x in v] for v in verts]
            )
        except ValueError as exc:
            raise ScenarioError(str(exc)) from None
        coeff = parse_fraction(entry["coeff"])
        total = terms.get(simplex, Fraction(0)) + coeff
        if total:
            terms[simplex] = total
        else:
            terms.pop(simplex, None)
    return Chain(dim, ambient, terms)


# -- report plumbing --------------------------------------------------------


def json_ready(obj):
    """Recursively convert Fractions to exact strings for JSON emission."""
    if isinstance(obj, Fraction):
        return fraction_to_str(obj)
    if isinstance(obj, dict):
        return {k: json_ready(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [json_ready(v) for v in obj]
    if isinstance(obj, float):
        raise TypeError(f"floating-point value {obj!r} has no place in a report")
    return obj
