"""Seeded verification sweeps.

Each suite runs a family of exact identity checks on deterministic
random samples and returns a list of plain dicts (one per check) that
the CLI serializes.  Every residual is an exact rational or an exact
polynomial form; a check passes only when every sampled residual is
identically zero.  There are no tolerances anywhere.

Seeding: each check derives its own ``random.Random`` from the suite
seed and the check name, so adding a check never perturbs the samples
of its neighbours, and identical inputs reproduce identical reports.
"""

from __future__ import annotations

import random
from fractions import Fraction
from typing import Sequence

from .chains import Chain, boundary, integrate, pushforward
from .cochain import F_gamma, FormCochain, big_D, delta_prime, f_gamma
from .diffeo import GroupPresentation, PolyDiffeo
from .errors import ScenarioError
from .forms import (
    PolyForm,
    PolyVectorField,
    evaluate,
    ext_d,
    interior,
    lie_derivative,
    poincare_h,
    pullback,
    wedge,
)
from .polynomial import Polynomial
from .sampling import (
    nonzero_constant_form,
    random_chain,
    random_constant_form,
    random_form,
    random_fraction,
    random_polynomial,
    random_polynomial_map,
    random_simplex,
    random_vector,
    random_vector_field,
)
from .zigzag import (
    ZigzagState,
    b_cochain,
    build_phi_sequence,
    closed_form_translation,
    cocycle,
    coboundary_comparison_residual,
    cocycle_eval,
    trivializing_cochain_b,
    verify_cocycle_identity,
)


def _rng(seed: int, name: str) -> random.Random:
    return random.Random(f"{seed}:{name}")


def _result(name: str, samples: int, failures: int, **extra) -> dict:
    out = {"name": name, "samples": samples, "failures": failures, "pass": failures == 0}
    out.update(extra)
    return out


def _sweep_forms(name, samples, rng_draw, residual) -> dict:
    """Run ``samples`` draws, counting nonzero form-valued residuals."""
    failures = 0
    for _ in range(samples):
        if not residual(*rng_draw()).is_zero():
            failures += 1
    return _result(name, samples, failures)


def _same_form(left, right) -> bool:
    """Form equality that identifies zero forms of different degrees.

    Contracting a form below the chain dimension yields the zero 0-form,
    while the matching side of an identity may carry the nominal degree;
    both represent the zero form, so compare values rather than degrees.
    """
    if left.degree == right.degree:
        return left == right
    return left.is_zero() and right.is_zero()


# -- calculus ----------------------------------------------------------------


def calculus_suite(group: GroupPresentation, samples: int, seed: int) -> list[dict]:
    """Exterior-calculus identities on random forms, fields, and words."""
    dim = group.dim
    checks = []

    rng = _rng(seed, "ext_d_squared")
    checks.append(
        _sweep_forms(
            "ext_d_squared_zero",
            samples,
            lambda: (random_form(rng, dim, rng.randint(0, dim), 4),),
            lambda a: ext_d(ext_d(a)),
        )
    )

    rng = _rng(seed, "homotopy")
    checks.append(
        _sweep_forms(
            "homotopy_identity_positive_degree",
            samples,
            lambda: (random_form(rng, dim, rng.randint(1, dim), 4),),
            lambda a: ext_d(poincare_h(a)) + poincare_h(ext_d(a)) - a,
        )
    )

    rng = _rng(seed, "homotopy0")
    failures = 0
    for _ in range(samples):
        f = random_polynomial(rng, dim, 4)
        recovered = poincare_h(ext_d(PolyForm.from_polynomial(f)))
        expected = PolyForm.from_polynomial(f - Polynomial.constant(dim, f.constant_term()))
        if recovered != expected:
            failures += 1
    checks.append(_result("homotopy_degree_zero", samples, failures))

    rng = _rng(seed, "cartan")
    failures = 0
    for _ in range(samples):
        x = random_vector_field(rng, dim, 2)
        y = random_vector_field(rng, dim, 2)
        a = random_form(rng, dim, rng.randint(1, dim), 2)
        lhs = lie_derivative(x, interior(y, a)) - interior(y, lie_derivative(x, a))
        rhs = interior(x.bracket(y), a)
        if lhs != rhs:
            failures += 1
    checks.append(_result("cartan_bracket_compatibility", samples, failures))

    rng = _rng(seed, "euler")
    euler = PolyVectorField.euler(dim)
    failures = 0
    for _ in range(samples):
        k = rng.randint(0, dim)
        a = random_form(rng, dim, k, 3)
        expected = PolyForm.zero(dim, k)
        for idx, poly in a.components.items():
            for s, piece in poly.homogeneous_parts().items():
                expected = expected + PolyForm(dim, k, {idx: piece}) * (k + s)
        if lie_derivative(euler, a) != expected:
            failures += 1
    checks.append(_result("euler_field_grading", samples, failures))

    rng = _rng(seed, "functorial")
    failures = 0
    for _ in range(samples):
        a = random_form(rng, dim, rng.randint(0, dim), 2)
        phi = random_polynomial_map(rng, dim, dim, 2)
        psi = random_polynomial_map(rng, dim, dim, 2)
        composite = [c.compose(psi) for c in phi]
        if pullback(composite, a) != pullback(psi, pullback(phi, a)):
            failures += 1
    checks.append(_result("pullback_functorial", samples, failures))

    rng = _rng(seed, "pullback_id")
    identity_map = [Polynomial.variable(dim, i) for i in range(dim)]
    checks.append(
        _sweep_forms(
            "pullback_identity",
            samples,
            lambda: (random_form(rng, dim, rng.randint(0, dim), 3),),
            lambda a: pullback(identity_map, a) - a,
        )
    )

    rng = _rng(seed, "action")
    words = group.sample_words(2 * samples, 3, rng.randint(0, 10**9))
    failures = 0
    for k in range(samples):
        g, h = words[2 * k], words[2 * k + 1]
        a = random_form(rng, dim, rng.randint(0, dim), 2)
        product = g.compose(h, degree_cap=group.degree_cap)
        if h.pullback_form(g.pullback_form(a)) != product.pullback_form(a):
            failures += 1
    checks.append(_result("right_action_law", samples, failures))

    rng = _rng(seed, "graded")
    failures = 0
    for _ in range(samples):
        k = rng.randint(0, dim)
        l = rng.randint(0, dim)
        a = random_form(rng, dim, k, 2)
        b = random_form(rng, dim, l, 2)
        sign = -1 if (k * l) % 2 else 1
        if wedge(a, b) != wedge(b, a) * sign:
            failures += 1
    checks.append(_result("wedge_graded_commutative", samples, failures))

    rng = _rng(seed, "antiderivation")
    failures = 0
    for _ in range(samples):
        k = rng.randint(1, dim)
        a = random_form(rng, dim, k, 2)
        b = random_form(rng, dim, rng.randint(0, dim - k), 2)
        x = random_vector_field(rng, dim, 2)
        sign = -1 if k % 2 else 1
        lhs = interior(x, wedge(a, b))
        rhs = wedge(interior(x, a), b)
        if b.degree >= 1:
            # i(X) annihilates functions, so the second Leibniz term only
            # contributes when b has positive degree.
            rhs = rhs + wedge(a, interior(x, b)) * sign
        if lhs != rhs:
            failures += 1
    checks.append(_result("interior_antiderivation", samples, failures))

    return checks


# -- chains and Stokes -------------------------------------------------------


def stokes_suite(dim: int, samples: int, seed: int) -> list[dict]:
    """Exact Stokes' theorem and boundary-of-boundary on random data."""
    checks = []

    rng = _rng(seed, "stokes")
    failures = 0
    worst = Fraction(0)
    for _ in range(samples):
        q = rng.randint(1, dim)
        sigma = random_simplex(rng, dim, q)
        alpha = random_form(rng, dim, q - 1, 4)
        chain = Chain(q, dim, {sigma: Fraction(1)})
        residual = integrate(ext_d(alpha), chain) - integrate(alpha, boundary(chain))
        if residual != 0:
            failures += 1
            worst = max(worst, abs(residual))
    checks.append(
        _result("stokes_exact", samples, failures, max_abs_residual=worst)
    )

    if dim >= 2:
        rng = _rng(seed, "ddzero")
        failures = 0
        for _ in range(samples):
            q = rng.randint(2, dim)
            chain = random_chain(rng, dim, q, 2)
            if not boundary(boundary(chain)).is_zero():
                failures += 1
        checks.append(_result("boundary_squared_zero", samples, failures))
    else:
        checks.append(_result("boundary_squared_zero", 0, 0))

    return checks


# -- transgression -----------------------------------------------------------


def _test_cycles(dim: int) -> list[tuple[str, Chain]]:
    cycles = [("point", Chain.point([0] * dim))]
    if dim >= 2:
        def lift(x, y):
            return [x, y] + [0] * (dim - 2)

        cycles.append(
            ("loop", Chain.triangle_loop(lift(0, 0), lift(1, 0), lift(0, 1)))
        )
    return cycles


def fgamma_suite(dim: int, samples: int, seed: int) -> list[dict]:
    """The transgression identities in the translation identification."""
    checks = []
    cycles = _test_cycles(dim)

    rng = _rng(seed, "point_id")
    failures = 0
    point = cycles[0][1]
    for _ in range(samples):
        omega = random_constant_form(rng, dim, rng.randint(0, dim))
        if f_gamma(point, omega) != omega:
            failures += 1
    checks.append(_result("point_cycle_identity_on_constants", samples, failures))

    for label, gamma in cycles:
        rng = _rng(seed, f"dG_{label}")
        failures = 0
        for _ in range(samples):
            omega = random_form(rng, dim, rng.randint(0, dim), 3)
            if not _same_form(ext_d(f_gamma(gamma, omega)), f_gamma(gamma, ext_d(omega))):
                failures += 1
        checks.append(_result(f"d_intertwines_fgamma_{label}", samples, failures))

    for label, gamma in cycles:
        rng = _rng(seed, f"dprime_{label}")
        failures = 0
        for _ in range(samples):
            theta = random_form(rng, dim, rng.randint(gamma.dim, dim), 2)

            def evaluator(g, _theta=theta):
                return g.pullback_form(_theta)

            c = FormCochain(1, theta.degree, dim, evaluator)
            lhs = delta_prime(F_gamma(c, gamma))
            rhs = F_gamma(delta_prime(c), gamma)
            a = PolyDiffeo.translation(random_vector(rng, dim))
            b = PolyDiffeo.translation(random_vector(rng, dim))
            if lhs(a, b) != rhs(a, b):
                failures += 1
        checks.append(
            _result(f"delta_prime_intertwines_Fgamma_{label}", samples, failures)
        )

    rng = _rng(seed, "equivariance")
    failures = 0
    for _ in range(samples):
        label, gamma = cycles[rng.randrange(len(cycles))]
        omega = random_form(rng, dim, rng.randint(0, dim), 3)
        mover = PolyDiffeo.translation(random_vector(rng, dim))
        if f_gamma(gamma, mover.pullback_form(omega)) != mover.pullback_form(
            f_gamma(gamma, omega)
        ):
            failures += 1
    checks.append(_result("translation_equivariance", samples, failures))

    rng = _rng(seed, "linearity")
    failures = 0
    for _ in range(samples):
        label, gamma = cycles[rng.randrange(len(cycles))]
        k = rng.randint(0, dim)
        w1 = random_form(rng, dim, k, 3)
        w2 = random_form(rng, dim, k, 3)
        scale = random_fraction(rng)
        if f_gamma(gamma, w1 + w2 * scale) != f_gamma(gamma, w1) + f_gamma(
            gamma, w2
        ) * scale:
            failures += 1
    checks.append(_result("linearity_in_the_form", samples, failures))

    return checks


# -- descent and cocycle -----------------------------------------------------


def cocycle_identity_suite(
    state: ZigzagState,
    alpha: Chain,
    samples: int,
    seed: int,
    max_word_length: int,
) -> list[dict]:
    """Base primitive, staircase consistency, and the cocycle condition."""
    checks = []

    base = state.omega + ext_d(state.phi(0)())
    checks.append(_result("base_primitive", 1, 0 if base.is_zero() else 1))

    level_samples = min(samples, 25)
    for i in range(1, state.p + 1):
        words = state.group.sample_words(
            level_samples * i, max_word_length, int(_rng(seed, f"desc{i}").random() * 10**9)
        )
        failures = 0
        for k in range(level_samples):
            gs = words[k * i : (k + 1) * i]
            if not state.descent_residual(i, gs).is_zero():
                failures += 1
        checks.append(
            _result(f"descent_consistency_level_{i}", level_samples, failures)
        )

    report = verify_cocycle_identity(
        state, alpha, samples, seed, max_word_length=max_word_length
    )
    checks.append(
        _result(
            "cocycle_condition",
            report["samples"],
            report["violations"],
            max_abs_residual=report["max_abs_residual"],
        )
    )
    return checks


# -- closed form -------------------------------------------------------------


def closed_form_scenario_check(
    state: ZigzagState, samples: int, seed: int
) -> list[dict]:
    """Descent vs the exact translation value for the scenario's form."""
    omega = state.omega
    if not omega.is_constant_coefficient():
        raise ScenarioError(
            "the closed-form comparison needs a constant-coefficient form"
        )
    dim = omega.dim
    m = omega.degree
    origin = Chain.point([0] * dim)
    rng = _rng(seed, "closed_scenario")
    failures = 0
    worst = Fraction(0)
    for _ in range(samples):
        vectors = [random_vector(rng, dim) for _ in range(m)]
        gs = [PolyDiffeo.translation(v) for v in vectors]
        residual = cocycle_eval(state, origin, gs) - closed_form_translation(
            omega, vectors
        )
        if residual != 0:
            failures += 1
            worst = max(worst, abs(residual))
    return [
        _result(
            "translation_closed_form", samples, failures, max_abs_residual=worst
        )
    ]


def closed_form_random_sweep(
    dim: int, degree: int, samples: int, seed: int
) -> dict:
    """Fresh random constant forms and translation tuples, end to end.

    Builds a new descent per sample over a translation generating set and
    compares against (1/m!) w(a_1,...,a_m).
    """
    rng = _rng(seed, f"closed_sweep_{degree}")
    basis = [
        PolyDiffeo.translation([1 if j == i else 0 for j in range(dim)])
        for i in range(dim)
    ]
    origin = Chain.point([0] * dim)
    failures = 0
    worst = Fraction(0)
    for _ in range(samples):
        omega = nonzero_constant_form(rng, dim, degree)
        group = GroupPresentation(basis, [omega])
        state = build_phi_sequence(omega, degree - 1, group)
        vectors = [random_vector(rng, dim) for _ in range(degree)]
        gs = [PolyDiffeo.translation(v) for v in vectors]
        residual = cocycle_eval(state, origin, gs) - closed_form_translation(
            omega, vectors
        )
        if residual != 0:
            failures += 1
            worst = max(worst, abs(residual))
    return _result(
        f"random_closed_form_degree_{degree}",
        samples,
        failures,
        max_abs_residual=worst,
    )


# -- triviality --------------------------------------------------------------


def _matrix_multiply(a, b):
    n = len(a)
    return [
        [sum(a[i][k] * b[k][j] for k in range(n)) for j in range(n)]
        for i in range(n)
    ]


def _random_unimodular(rng: random.Random, dim: int) -> list[list[Fraction]]:
    """A short product of elementary shear matrices; determinant one."""
    out = [[Fraction(1 if i == j else 0) for j in range(dim)] for i in range(dim)]
    for _ in range(rng.randint(1, 3)):
        i = rng.randrange(dim)
        j = rng.randrange(dim)
        if i == j:
            continue
        elem = [[Fraction(1 if r == c else 0) for c in range(dim)] for r in range(dim)]
        elem[i][j] = random_fraction(rng, 2, 2)
        out = _matrix_multiply(out, elem)
    return out


def _form_matrix(omega: PolyForm) -> list[list[Fraction]]:
    dim = omega.dim
    origin = [0] * dim
    basis = [[1 if j == i else 0 for j in range(dim)] for i in range(dim)]
    return [
        [evaluate(omega, origin, [basis[i], basis[j]]) for j in range(dim)]
        for i in range(dim)
    ]


def _random_transvection(rng: random.Random, j_matrix, dim: int) -> list[list[Fraction]]:
    """I + lambda v (Jv)^T: preserves any constant 2-form with matrix J."""
    v = [random_fraction(rng, 2, 2) for _ in range(dim)]
    lam = random_fraction(rng, 2, 2)
    jv = [sum(j_matrix[r][c] * v[c] for c in range(dim)) for r in range(dim)]
    return [
        [Fraction(1 if r == c else 0) + lam * v[r] * jv[c] for c in range(dim)]
        for r in range(dim)
    ]


def sample_stabilizer_linears(
    omega: PolyForm, count: int, rng: random.Random
) -> list[PolyDiffeo]:
    """Random origin-fixing linear maps preserving a constant form.

    Volume degree uses products of elementary shears (determinant one);
    degree two uses transvections x -> x + l w(x,v) v, which preserve
    every constant 2-form; degree one admits no nontrivial construction
    here, so the identity is returned.  Every output is re-verified
    against the form before use.
    """
    dim = omega.dim
    out = []
    if omega.degree == 2:
        j_matrix = _form_matrix(omega)
    for _ in range(count):
        if omega.degree == dim:
            matrix = _random_unimodular(rng, dim)
        elif omega.degree == 2:
            matrix = _matrix_multiply(
                _random_transvection(rng, j_matrix, dim),
                _random_transvection(rng, j_matrix, dim),
            )
        else:
            matrix = [[Fraction(1 if i == j else 0) for j in range(dim)] for i in range(dim)]
        g = PolyDiffeo.linear(matrix, "L")
        if not g.preserves(omega):
            raise ScenarioError(
                "internal sampling error: constructed linear map fails invariance"
            )
        out.append(g)
    return out


def _alpha_fixing_words(
    state: ZigzagState, alpha: Chain, count: int, seed: int, max_word_length: int
) -> list[PolyDiffeo]:
    keep = [
        g
        for g in state.group.generators
        if pushforward(g, alpha) == alpha
    ]
    if not keep:
        raise ScenarioError(
            "no generator fixes the cycle; cannot sample the stabilizer"
        )
    sub = GroupPresentation(keep, degree_cap=state.group.degree_cap)
    return sub.sample_words(count, max_word_length, seed)


def triviality_suite(
    state: ZigzagState,
    alpha: Chain,
    samples: int,
    seed: int,
    max_word_length: int,
    subgroup: str = "linear",
) -> list[dict]:
    """c = Db on cycle-fixing tuples, and the general comparison identity."""
    if subgroup not in ("linear", "stabilizer"):
        raise ScenarioError(f"unknown subgroup {subgroup!r}: use linear or stabilizer")
    checks = []
    p = state.p
    width = p + 1

    if subgroup == "linear":
        if not state.omega.is_constant_coefficient():
            raise ScenarioError(
                "linear-subgroup sampling needs a constant-coefficient form"
            )
        rng = _rng(seed, "linear_pool")
        pool = sample_stabilizer_linears(state.omega, samples * width, rng)
        for g in pool:
            if pushforward(g, alpha) != alpha:
                raise ScenarioError(
                    "the cycle is not fixed by origin-fixing linear maps; "
                    "use a point cycle at the origin or subgroup=stabilizer"
                )
    else:
        pool = _alpha_fixing_words(
            state, alpha, samples * width, int(_rng(seed, "stab").random() * 10**9), max_word_length
        )

    c = cocycle(state, alpha)
    b = b_cochain(state, alpha)
    db = big_D(b)
    failures = 0
    worst = Fraction(0)
    b_values = []
    for k in range(samples):
        gs = tuple(pool[k * width : (k + 1) * width])
        residual = c(*gs) - db(*gs)
        if residual != 0:
            failures += 1
            worst = max(worst, abs(residual))
        if len(b_values) < 5:
            b_values.append(
                {
                    "tuple": [g.label or "?" for g in gs[:p]],
                    "b": trivializing_cochain_b(state, alpha, gs[:p]),
                }
            )
    checks.append(
        _result(
            f"coboundary_on_{subgroup}_stabilizer",
            samples,
            failures,
            max_abs_residual=worst,
            b_values=b_values,
        )
    )

    mixed = state.group.sample_words(
        samples * width, max_word_length, int(_rng(seed, "mixed").random() * 10**9)
    )
    failures = 0
    worst = Fraction(0)
    for k in range(samples):
        gs = tuple(mixed[k * width : (k + 1) * width])
        residual = coboundary_comparison_residual(state, alpha, gs)
        if residual != 0:
            failures += 1
            worst = max(worst, abs(residual))
    checks.append(
        _result(
            "coboundary_comparison_identity",
            samples,
            failures,
            max_abs_residual=worst,
        )
    )
    return checks


# -- point independence ------------------------------------------------------


def point_independence_suite(
    state: ZigzagState, samples: int, seed: int, max_word_length: int
) -> list[dict]:
    """The cocycle does not depend on which point cycle it integrates over."""
    dim = state.omega.dim
    first = Chain.point([0] * dim)
    other_coords = ([3, -2] + [1] * dim)[:dim]
    second = Chain.point(other_coords)
    width = state.p + 1
    words = state.group.sample_words(
        samples * width, max_word_length, int(_rng(seed, "points").random() * 10**9)
    )
    failures = 0
    worst = Fraction(0)
    for k in range(samples):
        gs = words[k * width : (k + 1) * width]
        residual = cocycle_eval(state, first, gs) - cocycle_eval(state, second, gs)
        if residual != 0:
            failures += 1
            worst = max(worst, abs(residual))
    return [
        _result(
            "point_cycle_independence",
            samples,
            failures,
            max_abs_residual=worst,
            points=[[Fraction(0)] * dim, [Fraction(v) for v in other_coords]],
        )
    ]
