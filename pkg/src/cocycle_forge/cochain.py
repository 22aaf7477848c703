"""Group cochains valued in forms or reals, and the cycle transgression.

``FormCochain`` models an element of C^p(G, Omega^q(R^n)): a function of
p-tuples of diffeomorphisms returning a polynomial form.  The group acts
on forms from the right by pullback, w . g = g^* w.  ``RealCochain`` is
the same with values in the reals as a trivial module.

Cochains are lazy evaluators with memo tables rather than tables of
values: the groups here are infinite, so identities are only ever
checked on sampled tuples.  Evaluators must be pure; the memo is then
just a cache, and concurrent evaluation is linearizable because cache
writes are idempotent (same key, same value).

The differentials use the nonhomogeneous-cochain convention

    (d'f)(g_1,...,g_{p+1}) = f(g_2,...,g_{p+1})
        + sum_{i=1}^{p} (-1)^i f(g_1,...,g_i g_{i+1},...,g_{p+1})
        + (-1)^{p+1} f(g_1,...,g_p) . g_{p+1}

with (d'f)(g) = f - g^* f in the bottom degree p = 0, and

    (d''c)(g_1,...,g_p) = (-1)^p d(c(g_1,...,g_p)).

These anticommute: d'd'' + d''d' = 0, and each squares to zero.

``f_gamma`` implements the transgression against a chain gamma in the
translation identification G = R^n only: fundamental fields of the
translation action are the constant fields, and the value of the
resulting form on G at g integrates the contracted form over g + gamma.
"""

from __future__ import annotations

import itertools
from fractions import Fraction
from typing import Callable

from .chains import Chain, integrate_translated, require_cycle
from .diffeo import DEFAULT_DEGREE_CAP, PolyDiffeo
from .errors import DimensionMismatchError
from .forms import PolyForm, PolyVectorField, ext_d, interior
from .polynomial import as_fraction


class FormCochain:
    """A p-cochain on the diffeomorphism group with values in q-forms."""

    __slots__ = ("p", "q", "dim", "degree_cap", "_evaluator", "_memo")

    def __init__(
        self,
        p: int,
        q: int,
        dim: int,
        evaluator: Callable[..., PolyForm],
        *,
        degree_cap: int = DEFAULT_DEGREE_CAP,
    ):
        if p < 0 or q < 0 or dim < 0:
            raise ValueError("degrees and dimension must be >= 0")
        self.p = p
        self.q = q
        self.dim = dim
        self.degree_cap = int(degree_cap)
        self._evaluator = evaluator
        self._memo: dict[tuple, PolyForm] = {}

    @classmethod
    def of_form(cls, form: PolyForm) -> FormCochain:
        """The 0-cochain whose single value is ``form``."""
        return cls(0, form.degree, form.dim, lambda: form)

    def _check_tuple(self, gs: tuple):
        if len(gs) != self.p:
            raise ValueError(f"{self.p}-cochain called on a {len(gs)}-tuple")
        for g in gs:
            if not isinstance(g, PolyDiffeo):
                raise TypeError(f"cochain argument {g!r} is not a PolyDiffeo")
            if g.dim != self.dim:
                raise DimensionMismatchError(
                    f"cochain on R^{self.dim} called with a map of R^{g.dim}"
                )

    def __call__(self, *gs: PolyDiffeo) -> PolyForm:
        self._check_tuple(gs)
        cached = self._memo.get(gs)
        if cached is None:
            cached = self._evaluator(*gs)
            if not isinstance(cached, PolyForm):
                raise TypeError("cochain evaluator must return a PolyForm")
            if cached.degree != self.q or cached.dim != self.dim:
                raise ValueError(
                    f"evaluator returned a degree-{cached.degree} form on "
                    f"R^{cached.dim}, expected degree {self.q} on R^{self.dim}"
                )
            self._memo[gs] = cached
        return cached

    def __repr__(self):
        return f"FormCochain(p={self.p}, q={self.q}, dim={self.dim})"


class RealCochain:
    """A p-cochain with values in the reals as a trivial module."""

    __slots__ = ("p", "dim", "degree_cap", "_evaluator", "_memo")

    def __init__(
        self,
        p: int,
        dim: int,
        evaluator: Callable[..., Fraction],
        *,
        degree_cap: int = DEFAULT_DEGREE_CAP,
    ):
        if p < 0 or dim < 0:
            raise ValueError("degree and dimension must be >= 0")
        self.p = p
        self.dim = dim
        self.degree_cap = int(degree_cap)
        self._evaluator = evaluator
        self._memo: dict[tuple, Fraction] = {}

    @classmethod
    def constant(cls, dim: int, value) -> RealCochain:
        v = as_fraction(value)
        return cls(0, dim, lambda: v)

    def __call__(self, *gs: PolyDiffeo) -> Fraction:
        if len(gs) != self.p:
            raise ValueError(f"{self.p}-cochain called on a {len(gs)}-tuple")
        for g in gs:
            if not isinstance(g, PolyDiffeo):
                raise TypeError(f"cochain argument {g!r} is not a PolyDiffeo")
            if g.dim != self.dim:
                raise DimensionMismatchError(
                    f"cochain on R^{self.dim} called with a map of R^{g.dim}"
                )
        cached = self._memo.get(gs)
        if cached is None:
            cached = as_fraction(self._evaluator(*gs))
            self._memo[gs] = cached
        return cached

    def __repr__(self):
        return f"RealCochain(p={self.p}, dim={self.dim})"


def delta_prime(c: FormCochain) -> FormCochain:
    """The group-direction differential on form-valued cochains.

    Raises the group degree by one.  The last term acts through the
    right module structure, i.e. by pullback along the final element.
    """
    p = c.p
    cap = c.degree_cap

    def evaluator(*gs: PolyDiffeo) -> PolyForm:
        total = c(*gs[1:])
        for i in range(1, p + 1):
            merged = gs[i - 1].compose(gs[i], degree_cap=cap)
            value = c(*gs[: i - 1], merged, *gs[i + 1 :])
            total = total - value if i % 2 else total + value
        last = gs[-1].pullback_form(c(*gs[:-1]))
        total = total + last if (p + 1) % 2 == 0 else total - last
        return total

    return FormCochain(p + 1, c.q, c.dim, evaluator, degree_cap=cap)


def delta_double_prime(c: FormCochain) -> FormCochain:
    """The form-direction differential: (-1)^p times exterior d."""
    sign = -1 if c.p % 2 else 1

    def evaluator(*gs: PolyDiffeo) -> PolyForm:
        d = ext_d(c(*gs))
        return d if sign > 0 else -d

    return FormCochain(c.p, c.q + 1, c.dim, evaluator, degree_cap=c.degree_cap)


def big_D(c: RealCochain) -> RealCochain:
    """The group differential on real-valued cochains (trivial action)."""
    p = c.p
    cap = c.degree_cap

    def evaluator(*gs: PolyDiffeo) -> Fraction:
        total = c(*gs[1:])
        for i in range(1, p + 1):
            merged = gs[i - 1].compose(gs[i], degree_cap=cap)
            value = c(*gs[: i - 1], merged, *gs[i + 1 :])
            total = total - value if i % 2 else total + value
        last = c(*gs[:-1])
        total = total + last if (p + 1) % 2 == 0 else total - last
        return total

    return RealCochain(p + 1, c.dim, evaluator, degree_cap=cap)


def f_gamma(gamma: Chain, omega: PolyForm, *, check_cycle: bool = True) -> PolyForm:
    """Transgress a form on R^n to a form on the translation group.

    The result has degree deg(omega) - dim(gamma); its value on constant
    vectors X_1..X_p at the translation g is the exact integral of
    i(X_p)...i(X_1) omega over g + gamma.  When deg(omega) < dim(gamma)
    the result is 0.

    ``check_cycle`` enforces that gamma has zero boundary, which the
    intertwining identity with the exterior derivative needs; pass
    False to transgress against an arbitrary chain.
    """
    if omega.dim != gamma.ambient:
        raise DimensionMismatchError(
            f"form on R^{omega.dim} against a chain in R^{gamma.ambient}"
        )
    if check_cycle:
        require_cycle(gamma, "transgression chain")
    n = omega.dim
    if omega.degree < gamma.dim:
        return PolyForm.zero(n, 0)
    p = omega.degree - gamma.dim
    comps = {}
    for idx in itertools.combinations(range(n), p):
        contracted = omega
        for axis in idx:
            field = PolyVectorField.constant(
                n, [1 if i == axis else 0 for i in range(n)]
            )
            contracted = interior(field, contracted)
        poly = integrate_translated(contracted, gamma)
        if not poly.is_zero():
            comps[idx] = poly
    return PolyForm(n, p, comps)


def F_gamma(c: FormCochain, gamma: Chain, *, check_cycle: bool = True) -> FormCochain:
    """Compose a form-valued cochain with the transgression.

    Values become forms on the translation group; the group degree is
    unchanged and the form degree drops by dim(gamma).  Intertwines the
    two differentials on translation tuples: d' on the group side and d
    under ``f_gamma`` (the latter exactly when gamma is a cycle).
    """
    if check_cycle:
        require_cycle(gamma, "transgression chain")
    if c.q < gamma.dim:
        q_out = 0
    else:
        q_out = c.q - gamma.dim

    def evaluator(*gs: PolyDiffeo) -> PolyForm:
        return f_gamma(gamma, c(*gs), check_cycle=False)

    return FormCochain(c.p, q_out, c.dim, evaluator, degree_cap=c.degree_cap)
