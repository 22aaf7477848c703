"""Scenario files: the user-facing description of (n, forms, group, cycle).

A scenario is a JSON object:

    {
      "name": "area",                     // optional
      "dimension": 2,
      "forms": [ {"name": "area", "form": {...}} ],   // first form drives the descent
      "group": { "generators": [ ... ] },
      "cycle": { "dim": 0, "simplices": [ ... ] },
      "descent": { "p": 1, "homotopy": "poincare-origin" },
      "verify": { "samples": 100, "max_word_length": 3, "seed": 7, "degree_cap": 64 }
    }

Generators come either from builtin constructors —

    {"type": "translation", "vector": ["1", "0"], "label": "T1"}
    {"type": "linear", "matrix": [["0","-1"],["1","0"]], "label": "rot90"}
    {"type": "shear", "axis": 1, "poly": [...], "label": "sigma"}

(1-based axis; the shear polynomial may not involve the sheared axis) —
or as explicit forward/inverse component pairs ({"type": "explicit"}).
Loading verifies symbolically that every generator preserves every
declared form and names the offending pair when one does not.

Group elements on the command line are written in a tiny expression
language over the generator labels: ``sigma``, ``T(1,0)``,
``rot90^-1``, ``T(1/2,0)*sigma^2``.
"""

from __future__ import annotations

import json
import re
from typing import Sequence

from .chains import Chain
from .diffeo import DEFAULT_DEGREE_CAP, GroupPresentation, PolyDiffeo
from .errors import InvarianceError, ScenarioError
from .forms import PolyForm
from .serialize import (
    chain_from_json,
    diffeo_from_json,
    form_from_json,
    parse_fraction,
    polynomial_from_json,
)
from .zigzag import ZigzagState, build_phi_sequence

_TOP_KEYS = {"name", "description", "dimension", "forms", "group", "cycle", "descent", "verify"}


class ScenarioConfig:
    """A loaded, validated scenario."""

    __slots__ = (
        "name",
        "dimension",
        "form_names",
        "forms",
        "group",
        "cycle",
        "descent_p",
        "homotopy",
        "samples",
        "max_word_length",
        "seed",
        "degree_cap",
    )

    def __init__(
        self,
        *,
        name: str,
        dimension: int,
        named_forms: Sequence[tuple[str, PolyForm]],
        group: GroupPresentation,
        cycle: Chain,
        descent_p: int,
        homotopy: str,
        samples: int,
        max_word_length: int,
        seed: int,
        degree_cap: int,
    ):
        self.name = name
        self.dimension = dimension
        self.form_names = tuple(n for n, _ in named_forms)
        self.forms = tuple(f for _, f in named_forms)
        self.group = group
        self.cycle = cycle
        self.descent_p = descent_p
        self.homotopy = homotopy
        self.samples = samples
        self.max_word_length = max_word_length
        self.seed = seed
        self.degree_cap = degree_cap

    def descent_form(self) -> PolyForm:
        return self.forms[0]

    def build_state(self) -> ZigzagState:
        return build_phi_sequence(self.descent_form(), self.descent_p, self.group)


def _require(condition: bool, message: str):
    if not condition:
        raise ScenarioError(message)


def parse_generator_spec(data, dim: int) -> PolyDiffeo:
    _require(isinstance(data, dict), f"generator spec must be an object, got {data!r}")
    kind = data.get("type")
    label = data.get("label", "")
    _require(isinstance(label, str), f"generator label must be a string, got {label!r}")
    if kind == "translation":
        vector = data.get("vector")
        _require(
            isinstance(vector, list) and len(vector) == dim,
            f"translation needs a vector of {dim} rationals",
        )
        return PolyDiffeo.translation([parse_fraction(v) for v in vector], label)
    if kind == "linear":
        matrix = data.get("matrix")
        _require(
            isinstance(matrix, list)
            and len(matrix) == dim
            and all(isinstance(row, list) and len(row) == dim for row in matrix),
            f"linear map needs a {dim}x{dim} matrix",
        )
        try:
            return PolyDiffeo.linear(
                [[parse_fraction(v) for v in row] for row in matrix], label
            )
        except ValueError as exc:
            raise ScenarioError(str(exc)) from None
    if kind == "shear":
        axis = data.get("axis")
        _require(
            isinstance(axis, int) and not isinstance(axis, bool) and 1 <= axis <= dim,
            f"shear axis must be an integer in 1..{dim}",
        )
        poly = polynomial_from_json(data.get("poly"), dim)
        try:
            return PolyDiffeo.shear(dim, axis - 1, poly, label)
        except ValueError as exc:
            raise ScenarioError(str(exc)) from None
    if kind == "explicit":
        g = diffeo_from_json(data)
        _require(g.dim == dim, f"explicit generator has dimension {g.dim}, not {dim}")
        return g
    raise ScenarioError(
        f"unknown generator type {kind!r}; expected translation, linear, shear, explicit"
    )


def load_scenario(path: str) -> ScenarioConfig:
    """Read, parse, and validate a scenario file."""
    try:
        with open(path, "r", encoding="utf-8") as fh:
            data = json.load(fh)
    except OSError as exc:
        raise ScenarioError(f"cannot read scenario {path}: {exc}") from None
    except json.JSONDecodeError as exc:
        raise ScenarioError(f"scenario {path} is not valid JSON: {exc}") from None
    _require(isinstance(data, dict), "scenario must be a JSON object")
    unknown = set(data) - _TOP_KEYS
    _require(not unknown, f"unknown scenario keys: {sorted(unknown)}")

    dimension = data.get("dimension")
    _require(
        isinstance(dimension, int) and not isinstance(dimension, bool) and dimension >= 1,
        f"dimension must be a positive integer, got {dimension!r}",
    )

    raw_forms = data.get("forms")
    _require(
        isinstance(raw_forms, list) and raw_forms,
        "scenario needs a nonempty list of named forms",
    )
    named_forms: list[tuple[str, PolyForm]] = []
    for entry in raw_forms:
        _require(
            isinstance(entry, dict) and set(entry) == {"name", "form"},
            f"each form entry needs exactly name and form, got {entry!r}",
        )
        fname = entry["name"]
        _require(isinstance(fname, str) and fname, "form name must be a nonempty string")
        _require(
            fname not in (n for n, _ in named_forms),
            f"duplicate form name {fname!r}",
        )
        form = form_from_json(entry["form"])
        _require(
            form.dim == dimension,
            f"form {fname!r} lives on R^{form.dim}, scenario is on R^{dimension}",
        )
        named_forms.append((fname, form))

    group_data = data.get("group")
    _require(isinstance(group_data, dict), "scenario needs a group object")
    gen_specs = group_data.get("generators")
    _require(
        isinstance(gen_specs, list) and gen_specs,
        "group needs a nonempty generator list",
    )
    generators = [parse_generator_spec(spec, dimension) for spec in gen_specs]
    labels = [g.label for g in generators]
    _require(
        len(set(labels)) == len(labels),
        f"generator labels must be distinct, got {labels}",
    )
    for g in generators:
        for fname, form in named_forms:
            if not g.preserves(form):
                raise InvarianceError(
                    f"generator {g.label!r} does not preserve form {fname!r}"
                )

    verify = data.get("verify", {})
    _require(isinstance(verify, dict), "verify must be an object")
    _require(
        set(verify) <= {"samples", "max_word_length", "seed", "degree_cap"},
        f"unknown verify keys: {sorted(set(verify) - {'samples', 'max_word_length', 'seed', 'degree_cap'})}",
    )

    def _int_field(mapping, key, default, minimum):
        value = mapping.get(key, default)
        _require(
            isinstance(value, int) and not isinstance(value, bool) and value >= minimum,
            f"{key} must be an integer >= {minimum}, got {value!r}",
        )
        return value

    samples = _int_field(verify, "samples", 100, 0)
    max_word_length = _int_field(verify, "max_word_length", 3, 1)
    seed = verify.get("seed", 0)
    _require(
        isinstance(seed, int) and not isinstance(seed, bool),
        f"seed must be an integer, got {seed!r}",
    )
    degree_cap = _int_field(verify, "degree_cap", DEFAULT_DEGREE_CAP, 1)

    group = GroupPresentation(
        generators, [f for _, f in named_forms], degree_cap=degree_cap
    )

    cycle_data = data.get("cycle")
    _require(cycle_data is not None, "scenario needs a cycle")
    cycle = chain_from_json(cycle_data, ambient=dimension)

    descent = data.get("descent", {})
    _require(isinstance(descent, dict), "descent must be an object")
    _require(
        set(descent) <= {"p", "homotopy"},
        f"unknown descent keys: {sorted(set(descent) - {'p', 'homotopy'})}",
    )
    default_p = named_forms[0][1].degree - 1
    descent_p = _int_field(descent, "p", default_p, 0)
    homotopy = descent.get("homotopy", "poincare-origin")
    _require(
        homotopy == "poincare-origin",
        f"unsupported homotopy {homotopy!r}; only poincare-origin is implemented",
    )

    name = data.get("name", "")
    _require(isinstance(name, str), "scenario name must be a string")

    return ScenarioConfig(
        name=name,
        dimension=dimension,
        named_forms=named_forms,
        group=group,
        cycle=cycle,
        descent_p=descent_p,
        homotopy=homotopy,
        samples=samples,
        max_word_length=max_word_length,
        seed=seed,
        degree_cap=degree_cap,
    )


# -- tuple expressions ------------------------------------------------------

_ATOM = re.compile(r"^(T\(([^()]*)\)|[A-Za-z_][A-Za-z0-9_-]*)(\^(-?\d+))?$")


def _parse_factor(text: str, config: ScenarioConfig) -> PolyDiffeo:
    match = _ATOM.match(text)
    if not match:
        raise ScenarioError(
            f"bad group element {text!r}: expected LABEL, T(...), or either with ^k"
        )
    atom, translation_args, _, power = match.groups()
    if translation_args is not None:
        parts = [p.strip() for p in translation_args.split(",")] if translation_args.strip() else []
        if len(parts) != config.dimension:
            raise ScenarioError(
                f"T(...) needs {config.dimension} coordinates, got {len(parts)} in {text!r}"
            )
        base = PolyDiffeo.translation([parse_fraction(p) for p in parts])
    else:
        try:
            base = config.group.generator(atom)
        except KeyError:
            known = ", ".join(config.group.labels())
            raise ScenarioError(
                f"unknown generator {atom!r}; scenario defines: {known}"
            ) from None
    if power is None:
        return base
    k = int(power)
    if k == 0:
        return PolyDiffeo.identity(config.dimension)
    if k < 0:
        base = base.inverted()
        k = -k
    out = base
    for _ in range(k - 1):
        out = out.compose(base, degree_cap=config.degree_cap)
    return out


def parse_group_element(expr: str, config: ScenarioConfig) -> PolyDiffeo:
    """Evaluate one expression like ``sigma^2*T(1,0)`` to a group element."""
    text = expr.strip()
    if not text:
        raise ScenarioError("empty group-element expression")
    out = None
    for factor in text.split("*"):
        factor = factor.strip()
        if not factor:
            raise ScenarioError(f"empty factor in {expr!r}")
        g = _parse_factor(factor, config)
        out = g if out is None else out.compose(g, degree_cap=config.degree_cap)
    return out


def parse_tuple(exprs: Sequence[str], config: ScenarioConfig) -> tuple[PolyDiffeo, ...]:
    return tuple(parse_group_element(e, config) for e in exprs)
