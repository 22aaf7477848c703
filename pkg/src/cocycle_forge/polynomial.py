"""Sparse multivariate polynomials over exact rationals.

A polynomial in n variables is stored as a map from exponent vectors
(length-n tuples of non-negative ints) to nonzero ``Fraction``
coefficients.  Everything downstream -- forms, pullbacks, integrals,
cocycle values -- reduces to arithmetic in this ring, so no floating
point ever enters the package.

Also hosts the little exact linear algebra the rest of the code needs
(determinants and matrix inverses over the rationals).
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from .errors import DimensionMismatchError


def as_fraction(value) -> Fraction:
    """Coerce ints, Fractions and 'p/q' strings to an exact Fraction."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, (int, str)):
        return Fraction(value)
    raise TypeError(f"not an exact rational: {value!r}")


class Polynomial:
    """Immutable sparse polynomial with Fraction coefficients.

    ``terms`` maps exponent tuples to nonzero coefficients; the zero
    polynomial has an empty map.  Instances hash on their term data, so
    they can key memo tables.
    """

    __slots__ = ("dim", "terms", "_hash")

    def __init__(self, dim: int, terms: Mapping[tuple, object] | None = None):
        if dim < 0:
            raise ValueError(f"dimension must be >= 0, got {dim}")
        clean = {}
        if terms:
            for exp, coeff in terms.items():
                exp = tuple(int(e) for e in exp)
                if len(exp) != dim:
                    raise ValueError(f"exponent {exp} has length != {dim}")
                if any(e < 0 for e in exp):
                    raise ValueError(f"negative exponent in {exp}")
                c = as_fraction(coeff)
                if c:
                    clean[exp] = c
        object.__setattr__(self, "dim", dim)
        object.__setattr__(self, "terms", clean)
        object.__setattr__(self, "_hash", None)

    def __setattr__(self, name, value):
        raise AttributeError("Polynomial is immutable")

    # -- constructors ------------------------------------------------------

    @classmethod
    def zero(cls, dim: int) -> Polynomial:
        return cls(dim)

    @classmethod
    def constant(cls, dim: int, value) -> Polynomial:
        return cls(dim, {(0,) * dim: as_fraction(value)})

    @classmethod
    def variable(cls, dim: int, axis: int) -> Polynomial:
        """The coordinate function x_axis (0-based axis)."""
        if not 0 <= axis < dim:
            raise ValueError(f"axis {axis} out of range for dimension {dim}")
        exp = [0] * dim
        exp[axis] = 1
        return cls(dim, {tuple(exp): Fraction(1)})

    # -- queries -----------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def degree(self) -> int:
        """Total degree; 0 for the zero polynomial."""
        return max((sum(e) for e in self.terms), default=0)

    def constant_term(self) -> Fraction:
        return self.terms.get((0,) * self.dim, Fraction(0))

    def sorted_terms(self):
        """Terms in a canonical order (ascending exponent tuples)."""
        return sorted(self.terms.items())

    # -- ring operations ---------------------------------------------------

    def _require_same_dim(self, other: Polynomial):
        if self.dim != other.dim:
            raise DimensionMismatchError(
                f"polynomial dimensions differ: {self.dim} vs {other.dim}"
            )

    def __add__(self, other):
        if not isinstance(other, Polynomial):
            return self + Polynomial.constant(self.dim, other)
        self._require_same_dim(other)
        terms = dict(self.terms)
        for exp, c in other.terms.items():
            s = terms.get(exp, Fraction(0)) + c
            if s:
                terms[exp] = s
            else:
                terms.pop(exp, None)
        return Polynomial(self.dim, terms)

    __radd__ = __add__

    def __neg__(self):
        return Polynomial(self.dim, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        if not isinstance(other, Polynomial):
            other = Polynomial.constant(self.dim, other)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, Polynomial):
            c = as_fraction(other)
            if not c:
                return Polynomial.zero(self.dim)
            return Polynomial(self.dim, {e: c * v for e, v in self.terms.items()})
        self._require_same_dim(other)
        acc: dict[tuple, Fraction] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                exp = tuple(a + b for a, b in zip(e1, e2))
                s = acc.get(exp, Fraction(0)) + c1 * c2
                if s:
                    acc[exp] = s
                else:
                    acc.pop(exp, None)
        return Polynomial(self.dim, acc)

    __rmul__ = __mul__

    def __pow__(self, exponent: int):
        if not isinstance(exponent, int) or exponent < 0:
            raise ValueError("exponent must be a non-negative int")
        result = Polynomial.constant(self.dim, 1)
        base = self
        e = exponent
        while e:
            if e & 1:
                result = result * base
            base = base * base if e > 1 else base
            e >>= 1
        return result

    # -- calculus / substitution ------------------------------------------

    def partial(self, axis: int) -> Polynomial:
        """Partial derivative with respect to x_axis."""
        acc: dict[tuple, Fraction] = {}
        for exp, c in self.terms.items():
            e = exp[axis]
            if e == 0:
                continue
            new = list(exp)
            new[axis] = e - 1
            acc[tuple(new)] = c * e
        return Polynomial(self.dim, acc)

    def evaluate(self, point: Sequence) -> Fraction:
        if len(point) != self.dim:
            raise DimensionMismatchError(
                f"point has length {len(point)}, expected {self.dim}"
            )
        pt = [as_fraction(v) for v in point]
        total = Fraction(0)
        for exp, c in self.terms.items():
            v = c
            for base, e in zip(pt, exp):
                if e:
                    v *= base**e
            total += v
        return total

    def compose(self, args: Sequence[Polynomial]) -> Polynomial:
        """Substitute args[i] for x_i; args live in a common target ring."""
        if len(args) != self.dim:
            raise DimensionMismatchError(
                f"need {self.dim} substitution polynomials, got {len(args)}"
            )
        if self.dim == 0:
            return Polynomial(0, dict(self.terms))
        target = args[0].dim
        for a in args:
            if a.dim != target:
                raise DimensionMismatchError("substitution polynomials disagree on dimension")
        # cache powers of each substituted polynomial
        powers: list[dict[int, Polynomial]] = [
            {0: Polynomial.constant(target, 1), 1: a} for a in args
        ]

        def power(i: int, e: int) -> Polynomial:
            cache = powers[i]
            if e not in cache:
                half = power(i, e // 2)
                sq = half * half
                cache[e] = sq if e % 2 == 0 else sq * cache[1]
            return cache[e]

        acc = Polynomial.zero(target)
        for exp, c in self.terms.items():
            term = Polynomial.constant(target, c)
            for i, e in enumerate(exp):
                if e:
                    term = term * power(i, e)
            acc = acc + term
        return acc

    def homogeneous_parts(self) -> dict[int, Polynomial]:
        """Split into homogeneous pieces, keyed by total degree."""
        buckets: dict[int, dict[tuple, Fraction]] = {}
        for exp, c in self.terms.items():
            buckets.setdefault(sum(exp), {})[exp] = c
        return {s: Polynomial(self.dim, t) for s, t in sorted(buckets.items())}

    # -- comparisons / display --------------------------------------------

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = Polynomial.constant(self.dim, other)
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self.dim == other.dim and self.terms == other.terms

    def __hash__(self):
        h = self._hash
        if h is None:
            h = hash((self.dim, frozenset(self.terms.items())))
            object.__setattr__(self, "_hash", h)
        return h

    def __repr__(self):
        return f"Polynomial({self.dim}, {self.to_str()!r})"

    def to_str(self, names: Sequence[str] | None = None) -> str:
        """Deterministic human-readable rendering, highest degree first."""
        if not self.terms:
            return "0"
        if names is None:
            names = [f"x{i + 1}" for i in range(self.dim)]
        pieces = []
        for exp, c in sorted(
            self.terms.items(), key=lambda t: (sum(t[0]), t[0]), reverse=True
        ):
            factors = [
                names[i] if e == 1 else f"{names[i]}^{e}"
                for i, e in enumerate(exp)
                if e
            ]
            if not factors:
                body = str(abs(c))
            elif abs(c) == 1:
                body = "*".join(factors)
            else:
                body = "*".join([str(abs(c))] + factors)
            pieces.append(("- " if c < 0 else "+ ") + body)
        text = " ".join(pieces)
        return text[2:] if text.startswith("+ ") else "-" + text[2:]


# -- exact linear algebra ---------------------------------------------------


def det(rows: Sequence[Sequence]) -> Fraction:
    """Determinant of a square rational matrix by fraction-exact elimination."""
    n = len(rows)
    mat = [[as_fraction(v) for v in row] for row in rows]
    for row in mat:
        if len(row) != n:
            raise ValueError("matrix is not square")
    sign = Fraction(1)
    for col in range(n):
        pivot = next((r for r in range(col, n) if mat[r][col]), None)
        if pivot is None:
            return Fraction(0)
        if pivot != col:
            mat[col], mat[pivot] = mat[pivot], mat[col]
            sign = -sign
        p = mat[col][col]
        for r in range(col + 1, n):
            if mat[r][col]:
                factor = mat[r][col] / p
                mat[r] = [a - factor * b for a, b in zip(mat[r], mat[col])]
    result = sign
    for i in range(n):
        result *= mat[i][i]
    return result


def invert_matrix(rows: Sequence[Sequence]) -> list[list[Fraction]]:
    """Exact inverse of a square rational matrix (Gauss-Jordan).

    Raises ValueError on a singular matrix.
    """
    n = len(rows)
    mat = [[as_fraction(v) for v in row] for row in rows]
    for row in mat:
        if len(row) != n:
            raise ValueError("matrix is not square")
    aug = [row + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(mat)]
    for col in range(n):
        pivot = next((r for r in range(col, n) if aug[r][col]), None)
        if pivot is None:
            raise ValueError("matrix is singular")
        aug[col], aug[pivot] = aug[pivot], aug[col]
        p = aug[col][col]
        aug[col] = [v / p for v in aug[col]]
        for r in range(n):
            if r != col and aug[r][col]:
                factor = aug[r][col]
                aug[r] = [a - factor * b for a, b in zip(aug[r], aug[col])]
    return [row[n:] for row in aug]


def as_point(values: Iterable, dim: int) -> tuple[Fraction, ...]:
    """Normalize a point/vector in Q^dim to a tuple of Fractions."""
    pt = tuple(as_fraction(v) for v in values)
    if len(pt) != dim:
        raise DimensionMismatchError(f"expected {dim} coordinates, got {len(pt)}")
    return pt
