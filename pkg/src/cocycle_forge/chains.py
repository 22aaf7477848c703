"""Affine singular chains in R^n with exact boundary and integration.

A q-simplex is an ordered list of q+1 rational vertices; a chain is a
formal rational combination of simplices of one dimension.  Integration
pulls a polynomial form back along the affine parametrization

    sigma(t) = v_0 + sum_j t_j (v_j - v_0),   t in the standard simplex,

and evaluates monomial integrals with the Dirichlet formula

    int_{Delta^q} t_1^{a_1} ... t_q^{a_q} dt = a_1! ... a_q! / (q + sum a_i)!

so every value is an exact ``Fraction``.  Stokes' theorem then holds on
the nose, which the test-suite exploits as a consistency oracle.

0-chains are signed combinations of points and integrate by signed
evaluation.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Callable, Mapping, Sequence

from .errors import DimensionMismatchError, NotACycleError
from .forms import PolyForm
from .polynomial import Polynomial, as_fraction, as_point, det


class AffineSimplex:
    """An ordered affine q-simplex (q+1 rational vertices in R^n), q <= n."""

    __slots__ = ("dim", "ambient", "vertices", "_hash")

    def __init__(self, vertices: Sequence[Sequence]):
        verts = [tuple(as_fraction(v) for v in vertex) for vertex in vertices]
        if not verts:
            raise ValueError("a simplex needs at least one vertex")
        ambient = len(verts[0])
        for v in verts:
            if len(v) != ambient:
                raise DimensionMismatchError("simplex vertices disagree on ambient dimension")
        q = len(verts) - 1
        if q > ambient:
            raise ValueError(
                f"a {q}-simplex does not fit in R^{ambient} (needs q <= n)"
            )
        object.__setattr__(self, "dim", q)
        object.__setattr__(self, "ambient", ambient)
        object.__setattr__(self, "vertices", tuple(verts))
        object.__setattr__(self, "_hash", None)

    def __setattr__(self, name, value):
        raise AttributeError("AffineSimplex is immutable")

    def face(self, i: int) -> AffineSimplex:
        """The i-th face, obtained by dropping vertex i."""
        if not 0 <= i <= self.dim:
            raise ValueError(f"face index {i} out of range")
        return AffineSimplex(self.vertices[:i] + self.vertices[i + 1 :])

    def translate(self, vector: Sequence) -> AffineSimplex:
        vec = as_point(vector, self.ambient)
        return AffineSimplex(
            tuple(tuple(x + d for x, d in zip(v, vec)) for v in self.vertices)
        )

    def map_vertices(self, fn: Callable[[tuple], Sequence]) -> AffineSimplex:
        return AffineSimplex(tuple(tuple(as_fraction(x) for x in fn(v)) for v in self.vertices))

    def __eq__(self, other):
        if not isinstance(other, AffineSimplex):
            return NotImplemented
        return self.vertices == other.vertices

    def __hash__(self):
        h = self._hash
        if h is None:
            h = hash(self.vertices)
            object.__setattr__(self, "_hash", h)
        return h

    def __repr__(self):
        pts = ", ".join("(" + ",".join(str(x) for x in v) + ")" for v in self.vertices)
        return f"AffineSimplex[{pts}]"


class Chain:
    """Formal rational combination of affine simplices of one dimension."""

    __slots__ = ("dim", "ambient", "terms")

    def __init__(self, dim: int, ambient: int, terms: Mapping[AffineSimplex, object] | None = None):
        clean: dict[AffineSimplex, Fraction] = {}
        if terms:
            for simplex, coeff in terms.items():
                if simplex.dim != dim:
                    raise DimensionMismatchError(
                        f"{simplex.dim}-simplex in a chain of dimension {dim}"
                    )
                if simplex.ambient != ambient:
                    raise DimensionMismatchError("mixed ambient dimensions in one chain")
                c = as_fraction(coeff)
                if c:
                    total = clean.get(simplex, Fraction(0)) + c
                    if total:
                        clean[simplex] = total
                    else:
                        clean.pop(simplex, None)
        object.__setattr__(self, "dim", dim)
        object.__setattr__(self, "ambient", ambient)
        object.__setattr__(self, "terms", clean)

    def __setattr__(self, name, value):
        raise AttributeError("Chain is immutable")

    # -- constructors ------------------------------------------------------

    @classmethod
    def point(cls, point: Sequence, coeff=1) -> Chain:
        simplex = AffineSimplex([point])
        return cls(0, simplex.ambient, {simplex: coeff})

    @classmethod
    def segment(cls, start: Sequence, end: Sequence, coeff=1) -> Chain:
        simplex = AffineSimplex([start, end])
        return cls(1, simplex.ambient, {simplex: coeff})

    @classmethod
    def simplex(cls, vertices: Sequence[Sequence], coeff=1) -> Chain:
        s = AffineSimplex(vertices)
        return cls(s.dim, s.ambient, {s: coeff})

    @classmethod
    def triangle_loop(cls, a: Sequence, b: Sequence, c: Sequence) -> Chain:
        """The 1-cycle [a,b] + [b,c] + [c,a]."""
        return cls.segment(a, b) + cls.segment(b, c) + cls.segment(c, a)

    # -- algebra -----------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def _require_compatible(self, other: Chain):
        if self.dim != other.dim or self.ambient != other.ambient:
            raise DimensionMismatchError("adding chains of different dimensions")

    def __add__(self, other: Chain) -> Chain:
        self._require_compatible(other)
        terms = dict(self.terms)
        for s, c in other.terms.items():
            total = terms.get(s, Fraction(0)) + c
            if total:
                terms[s] = total
            else:
                terms.pop(s, None)
        return Chain(self.dim, self.ambient, terms)

    def __neg__(self) -> Chain:
        return Chain(self.dim, self.ambient, {s: -c for s, c in self.terms.items()})

    def __sub__(self, other: Chain) -> Chain:
        return self + (-other)

    def __mul__(self, scalar) -> Chain:
        c = as_fraction(scalar)
        return Chain(self.dim, self.ambient, {s: c * v for s, v in self.terms.items()})

    __rmul__ = __mul__

    def translate(self, vector: Sequence) -> Chain:
        return Chain(
            self.dim,
            self.ambient,
            {s.translate(vector): c for s, c in self.terms.items()},
        )

    def __eq__(self, other):
        if not isinstance(other, Chain):
            return NotImplemented
        return (
            self.dim == other.dim
            and self.ambient == other.ambient
            and self.terms == other.terms
        )

    def __repr__(self):
        if not self.terms:
            return f"Chain({self.dim}, R^{self.ambient}, 0)"
        body = " + ".join(f"({c})*{s!r}" for s, c in sorted(
            self.terms.items(), key=lambda kv: kv[0].vertices
        ))
        return f"Chain({body})"


def boundary(chain: Chain) -> Chain:
    """Alternating-sign face sum; defined for chains of dimension >= 1."""
    if chain.dim < 1:
        raise ValueError("boundary needs a chain of dimension >= 1")
    terms: dict[AffineSimplex, Fraction] = {}
    for simplex, coeff in chain.terms.items():
        for i in range(simplex.dim + 1):
            face = simplex.face(i)
            add = coeff if i % 2 == 0 else -coeff
            total = terms.get(face, Fraction(0)) + add
            if total:
                terms[face] = total
            else:
                terms.pop(face, None)
    return Chain(chain.dim - 1, chain.ambient, terms)


def is_cycle(chain: Chain) -> bool:
    """True iff the boundary cancels to zero; every 0-chain is a cycle."""
    if chain.dim == 0:
        return True
    return boundary(chain).is_zero()


def require_cycle(chain: Chain, what: str = "chain"):
    if not is_cycle(chain):
        raise NotACycleError(f"{what} has nonzero boundary")


def _dirichlet(exponents: Sequence[int]) -> Fraction:
    """Exact integral of a monomial over the standard simplex."""
    q = len(exponents)
    num = 1
    for a in exponents:
        num *= math.factorial(a)
    return Fraction(num, math.factorial(q + sum(exponents)))


def _simplex_integral_symbolic(form: PolyForm, simplex: AffineSimplex) -> Polynomial:
    """Integral of ``form`` over the g-translate of ``simplex``.

    Returns a polynomial in the n translation coordinates g_1..g_n.
    Works uniformly for q = 0 (signed evaluation at g + vertex).
    """
    n = simplex.ambient
    q = simplex.dim
    big = n + q  # variables: g_1..g_n, then t_1..t_q
    v0 = simplex.vertices[0]
    edges = [
        tuple(v[i] - v0[i] for i in range(n)) for v in simplex.vertices[1:]
    ]
    substitution = []
    for i in range(n):
        coord = Polynomial.variable(big, i) + Polynomial.constant(big, v0[i])
        for j, edge in enumerate(edges):
            if edge[i]:
                coord = coord + Polynomial.variable(big, n + j) * edge[i]
        substitution.append(coord)
    total: dict[tuple, Fraction] = {}
    for idx, poly in form.components.items():
        if q:
            jac = det([[edge[a] for a in idx] for edge in edges])
            if not jac:
                continue
        else:
            jac = Fraction(1)
        pulled = poly.compose(substitution)
        for exp, coeff in pulled.terms.items():
            weight = coeff * jac * _dirichlet(exp[n:])
            if not weight:
                continue
            g_exp = exp[:n]
            acc = total.get(g_exp, Fraction(0)) + weight
            if acc:
                total[g_exp] = acc
            else:
                total.pop(g_exp, None)
    return Polynomial(n, total)


def _simplex_integral(form: PolyForm, simplex: AffineSimplex) -> Fraction:
    n = simplex.ambient
    q = simplex.dim
    v0 = simplex.vertices[0]
    if q == 0:
        return form.coefficient(()).evaluate(v0)
    edges = [tuple(v[i] - v0[i] for i in range(n)) for v in simplex.vertices[1:]]
    substitution = []
    for i in range(n):
        coord = Polynomial.constant(q, v0[i])
        for j, edge in enumerate(edges):
            if edge[i]:
                coord = coord + Polynomial.variable(q, j) * edge[i]
        substitution.append(coord)
    total = Fraction(0)
    for idx, poly in form.components.items():
        jac = det([[edge[a] for a in idx] for edge in edges])
        if not jac:
            continue
        pulled = poly.compose(substitution)
        for exp, coeff in pulled.terms.items():
            total += coeff * jac * _dirichlet(exp)
    return total


def _check_match(form: PolyForm, chain: Chain):
    if form.dim != chain.ambient:
        raise DimensionMismatchError(
            f"form on R^{form.dim} integrated over a chain in R^{chain.ambient}"
        )
    if form.degree != chain.dim:
        raise DimensionMismatchError(
            f"degree-{form.degree} form integrated over a {chain.dim}-chain"
        )


def integrate(form: PolyForm, chain: Chain) -> Fraction:
    """Exact integral of a degree-q form over a q-chain.

    Linear in both arguments; for q = 0 this is signed evaluation.
    """
    _check_match(form, chain)
    total = Fraction(0)
    for simplex, coeff in chain.terms.items():
        total += coeff * _simplex_integral(form, simplex)
    return total


def integrate_translated(form: PolyForm, chain: Chain) -> Polynomial:
    """The function g |-> integral of ``form`` over ``g + chain``.

    The result is an exact polynomial in the translation vector g,
    living in the n-variable ring; evaluating it at 0 recovers
    ``integrate(form, chain)``.
    """
    _check_match(form, chain)
    total = Polynomial.zero(chain.ambient)
    for simplex, coeff in chain.terms.items():
        total = total + _simplex_integral_symbolic(form, simplex) * coeff
    return total


def pushforward(diffeo, chain: Chain) -> Chain:
    """The image chain under a diffeomorphism.

    Exact for 0-chains under any polynomial map (points map to points)
    and for chains of any dimension under affine maps, which carry
    affine simplices to affine simplices.  Nonlinear images of positive-
    dimensional simplices are not affine, so that case is refused.
    """
    if diffeo.dim != chain.ambient:
        raise DimensionMismatchError("map and chain live in different spaces")
    if chain.dim > 0 and diffeo.degree() > 1:
        raise ValueError(
            "image of a positive-dimensional affine chain under a nonlinear map "
            "is not an affine chain"
        )
    return Chain(
        chain.dim,
        chain.ambient,
        {s.map_vertices(diffeo.apply): c for s, c in chain.terms.items()},
    )
