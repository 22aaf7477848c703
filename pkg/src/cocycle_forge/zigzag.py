"""Zig-zag descent from an invariant exact m-form to a group cocycle.

Starting from a closed m-form w preserved by every generator, the
descent builds cochains phi_i in C^i(G, Omega^{m-i-1}(R^n)):

    phi_0 = -h(w),     so that  w = -d(phi_0),
    phi_i(g_1,...,g_i) = h( (-1)^{i+1} (d'phi_{i-1})(g_1,...,g_i) ),

where h is the radial homotopy operator and d' the group differential.
The sign makes the staircase identity d'phi_{i-1} + d''phi_i = 0 hold
on every tuple, because d(h(eta)) = eta for closed eta of positive
degree and d'' carries the sign (-1)^i.  Each right-hand side is checked
closed before h is applied; a failure means the input was not invariant
or something upstream is broken, so it raises instead of continuing.

Integrating d'phi_p over a cycle of complementary dimension then gives
a real-valued cocycle: the p+1 cochain

    c(g_1,...,g_{p+1}) = int_alpha (d'phi_p)(g_1,...,g_{p+1}),

which satisfies Dc = 0 identically.  On the translation subgroup with a
point cycle, c collapses to the closed form (1/m!) w(a_1,...,a_m), and
this module reproduces that value exactly, not merely up to coboundary.

A companion cochain b(g_1,...,g_p) = int_alpha phi_p(g_1,...,g_p)
controls triviality: in general

    c(g_1,...,g_p,g) = (-1)^{p+1} ( int_{g(alpha)} phi_p(g_1,...,g_p)
                                    - b(g_1,...,g_p) )
                       + (Db)(g_1,...,g_p,g),

so whenever every element under test maps alpha to itself, c = Db on
those tuples.  ``coboundary_comparison_residual`` computes the difference of the two
sides of this identity directly; it must always vanish.
"""

from __future__ import annotations

import math
import time
import warnings
from fractions import Fraction
from typing import Sequence

from .chains import Chain, integrate, is_cycle, pushforward, require_cycle
from .cochain import FormCochain, RealCochain, big_D, delta_double_prime, delta_prime
from .diffeo import GroupPresentation, PolyDiffeo
from .errors import (
    DimensionMismatchError,
    InvarianceError,
    NotClosedError,
)
from .forms import PolyForm, evaluate, ext_d, poincare_h
from .polynomial import as_point


class ZigzagState:
    """The form, the group, and the descent cochains phi_0..phi_p.

    ``phis[i]`` is an i-cochain valued in forms of degree m-i-1; the
    cached ``delta_prime_phi(i)`` cochains share memo tables across all
    downstream evaluations.  Direct construction is allowed (the test
    suite uses it to corrupt a level on purpose); ``build_phi_sequence``
    is the checked factory.
    """

    __slots__ = ("omega", "p", "group", "phis", "_dprimes")

    def __init__(
        self,
        omega: PolyForm,
        p: int,
        group: GroupPresentation,
        phis: Sequence[FormCochain],
    ):
        self.omega = omega
        self.p = p
        self.group = group
        self.phis = tuple(phis)
        if len(self.phis) != p + 1:
            raise ValueError(f"descent to depth {p} needs {p + 1} cochains")
        self._dprimes: dict[int, FormCochain] = {}

    @property
    def m(self) -> int:
        return self.omega.degree

    def phi(self, i: int) -> FormCochain:
        return self.phis[i]

    def delta_prime_phi(self, i: int) -> FormCochain:
        """d'phi_i, built once and memoized."""
        cached = self._dprimes.get(i)
        if cached is None:
            cached = delta_prime(self.phis[i])
            self._dprimes[i] = cached
        return cached

    def descent_residual(self, i: int, gs: Sequence[PolyDiffeo]) -> PolyForm:
        """(d'phi_{i-1} + d''phi_i)(g_1..g_i); zero on a sound descent."""
        if not 1 <= i <= self.p:
            raise ValueError(f"descent level {i} out of range 1..{self.p}")
        lhs = self.delta_prime_phi(i - 1)(*gs)
        rhs = delta_double_prime(self.phis[i])(*gs)
        return lhs + rhs


def build_phi_sequence(omega: PolyForm, p: int, group: GroupPresentation) -> ZigzagState:
    """Run the descent to depth p and return the assembled state.

    Requires a nonzero closed form that every generator preserves.  On
    R^n only p = m-1 pairs with a cycle of dimension 0 and produces a
    nonvanishing real cocycle; other depths are allowed for
    experimentation but warn.
    """
    if omega.is_zero():
        raise ValueError("the descent needs a nonzero form")
    if omega.dim != group.dim:
        raise DimensionMismatchError("form and group live on different spaces")
    if not ext_d(omega).is_zero():
        raise NotClosedError("the input form is not closed")
    for g in group.generators:
        if not g.preserves(omega):
            raise InvarianceError(
                f"generator {g.label or repr(g)} does not preserve the input form"
            )
    m = omega.degree
    if p < 0 or p > m - 1:
        raise ValueError(
            f"descent depth {p} out of range: a degree-{m} form supports 0..{m - 1}"
        )
    if p != m - 1:
        warnings.warn(
            f"descent depth {p} != {m - 1}: the paired cycles have positive "
            "dimension and the resulting real cocycle vanishes identically on R^n",
            stacklevel=2,
        )
    cap = group.degree_cap
    phi0_value = -poincare_h(omega)
    phis = [FormCochain(0, m - 1, omega.dim, lambda: phi0_value, degree_cap=cap)]
    dprimes = []
    for i in range(1, p + 1):
        previous_dprime = delta_prime(phis[i - 1])
        dprimes.append(previous_dprime)
        sign = 1 if (i + 1) % 2 == 0 else -1

        def evaluator(*gs, _dp=previous_dprime, _sign=sign, _i=i):
            rhs = _dp(*gs)
            if _sign < 0:
                rhs = -rhs
            if not ext_d(rhs).is_zero():
                raise NotClosedError(
                    f"level-{_i} descent input is not closed on "
                    f"({', '.join(g.label or '?' for g in gs)})"
                )
            return poincare_h(rhs)

        phis.append(FormCochain(i, m - i - 1, omega.dim, evaluator, degree_cap=cap))
    state = ZigzagState(omega, p, group, phis)
    for i, dp in enumerate(dprimes):
        state._dprimes[i] = dp
    return state


def _check_alpha(state: ZigzagState, alpha: Chain):
    if alpha.ambient != state.omega.dim:
        raise DimensionMismatchError("cycle and form live in different spaces")
    expected = state.m - state.p - 1
    if alpha.dim != expected:
        raise DimensionMismatchError(
            f"cycle dimension {alpha.dim} does not match m-p-1 = {expected}"
        )
    require_cycle(alpha, "integration cycle")
    if alpha.dim > 0:
        warnings.warn(
            "positive-dimensional cycle on R^n: the coefficient module is "
            "trivial, so the cocycle vanishes identically",
            stacklevel=3,
        )


def cocycle_eval(
    state: ZigzagState, alpha: Chain, gs: Sequence[PolyDiffeo]
) -> Fraction:
    """The cocycle value int_alpha (d'phi_p)(g_1,...,g_{p+1})."""
    gs = tuple(gs)
    if len(gs) != state.p + 1:
        raise ValueError(f"cocycle takes {state.p + 1}-tuples, got {len(gs)}")
    _check_alpha(state, alpha)
    return integrate(state.delta_prime_phi(state.p)(*gs), alpha)


def cocycle(state: ZigzagState, alpha: Chain) -> RealCochain:
    """The cocycle as a reusable (p+1)-cochain."""
    _check_alpha(state, alpha)
    integrand = state.delta_prime_phi(state.p)

    def evaluator(*gs: PolyDiffeo) -> Fraction:
        return integrate(integrand(*gs), alpha)

    return RealCochain(
        state.p + 1, state.omega.dim, evaluator, degree_cap=state.group.degree_cap
    )


def closed_form_translation(omega: PolyForm, vectors: Sequence[Sequence]) -> Fraction:
    """(1/m!) w(a_1,...,a_m) for a constant-coefficient m-form w.

    This is the value the full descent produces on translation tuples
    with a point cycle; alternating and multilinear in the vectors.
    """
    if not omega.is_constant_coefficient():
        raise ValueError("closed form needs a constant-coefficient form")
    m = omega.degree
    vecs = [as_point(v, omega.dim) for v in vectors]
    if len(vecs) != m:
        raise ValueError(f"a degree-{m} form pairs with {m} vectors, got {len(vecs)}")
    origin = [0] * omega.dim
    return evaluate(omega, origin, vecs) / math.factorial(m)


def trivializing_cochain_b(
    state: ZigzagState, alpha: Chain, gs: Sequence[PolyDiffeo]
) -> Fraction:
    """b(g_1,...,g_p) = int_alpha phi_p(g_1,...,g_p)."""
    gs = tuple(gs)
    if len(gs) != state.p:
        raise ValueError(f"b takes {state.p}-tuples, got {len(gs)}")
    _check_alpha(state, alpha)
    return integrate(state.phi(state.p)(*gs), alpha)


def b_cochain(state: ZigzagState, alpha: Chain) -> RealCochain:
    """The trivializing cochain as a reusable p-cochain."""
    _check_alpha(state, alpha)
    phi_p = state.phi(state.p)

    def evaluator(*gs: PolyDiffeo) -> Fraction:
        return integrate(phi_p(*gs), alpha)

    return RealCochain(
        state.p, state.omega.dim, evaluator, degree_cap=state.group.degree_cap
    )


def coboundary_comparison_residual(
    state: ZigzagState, alpha: Chain, gs: Sequence[PolyDiffeo]
) -> Fraction:
    """Difference of the two sides of the coboundary-comparison identity.

    Computes c(g_1,...,g_p,g) minus

        (-1)^{p+1} ( int_{g(alpha)} phi_p(g_1,...,g_p) - b(g_1,...,g_p) )
        + (Db)(g_1,...,g_p,g)

    where both sides go through independent code paths; the result must
    be exactly zero.  When g(alpha) = alpha the middle term drops and
    the identity says c = Db on such tuples.
    """
    gs = tuple(gs)
    if len(gs) != state.p + 1:
        raise ValueError(f"the identity takes {state.p + 1}-tuples, got {len(gs)}")
    lead, g = gs[:-1], gs[-1]
    lhs = cocycle_eval(state, alpha, gs)
    phi_val = state.phi(state.p)(*lead)
    moved = integrate(phi_val, pushforward(g, alpha))
    b_val = integrate(phi_val, alpha)
    sign = 1 if (state.p + 1) % 2 == 0 else -1
    db = big_D(b_cochain(state, alpha))(*gs)
    rhs = sign * (moved - b_val) + db
    return lhs - rhs


def verify_cocycle_identity(
    state: ZigzagState,
    alpha: Chain,
    samples: int,
    seed: int,
    *,
    max_word_length: int = 3,
) -> dict:
    """Evaluate Dc on seeded (p+2)-tuples; report violations and timing.

    Every residual must be exactly zero; any other outcome is an
    implementation bug, and the report exists to catch exactly that.
    """
    start = time.perf_counter()
    dc = big_D(cocycle(state, alpha))
    width = state.p + 2
    words = state.group.sample_words(samples * width, max_word_length, seed)
    violations = 0
    max_abs = Fraction(0)
    for k in range(samples):
        residual = dc(*words[k * width : (k + 1) * width])
        if residual != 0:
            violations += 1
            if abs(residual) > max_abs:
                max_abs = abs(residual)
    return {
        "samples": samples,
        "violations": violations,
        "max_abs_residual": max_abs,
        "elapsed_seconds": time.perf_counter() - start,
    }
