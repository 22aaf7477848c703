"""Polynomial diffeomorphisms, composition caps, and group presentations."""

import random
from fractions import Fraction

import pytest

from cocycle_forge.diffeo import DEFAULT_DEGREE_CAP, GroupPresentation, PolyDiffeo
from cocycle_forge.errors import (
    DegreeCapExceededError,
    DimensionMismatchError,
    InvarianceError,
)
from cocycle_forge.forms import PolyForm, ext_d, pullback
from cocycle_forge.polynomial import Polynomial
from cocycle_forge.sampling import random_form


def area_shear():
    y_sq = Polynomial(2, {(0, 2): Fraction(1)})
    return PolyDiffeo.shear(2, 0, y_sq, "sigma")


class TestConstructors:
    def test_identity(self):
        g = PolyDiffeo.identity(3)
        assert g.is_identity()
        assert g.apply((1, 2, 3)) == (1, 2, 3)
        assert g.degree() == 1

    def test_translation_roundtrip(self):
        g = PolyDiffeo.translation(["1/2", -1])
        assert g.apply((0, 0)) == (Fraction(1, 2), -1)
        assert g.apply_inverse(g.apply((3, 4))) == (3, 4)
        assert g.label == "T(1/2,-1)"

    def test_linear(self):
        rot = PolyDiffeo.linear([[0, -1], [1, 0]], "rot90")
        assert rot.apply((1, 0)) == (0, 1)
        assert rot.compose(rot).compose(rot).compose(rot).is_identity()

    def test_linear_rejects_singular(self):
        with pytest.raises(ValueError):
            PolyDiffeo.linear([[1, 2], [2, 4]])

    def test_linear_rejects_nonsquare(self):
        with pytest.raises(DimensionMismatchError):
            PolyDiffeo.linear([[1, 0, 0], [0, 1, 0]])

    def test_shear(self):
        sigma = area_shear()
        assert sigma.apply((0, 2)) == (4, 2)
        assert sigma.apply_inverse((4, 2)) == (0, 2)

    def test_shear_axis_restriction(self):
        # the shear polynomial may not involve the sheared coordinate
        x = Polynomial.variable(2, 0)
        with pytest.raises(ValueError):
            PolyDiffeo.shear(2, 0, x)

    def test_constructor_verifies_inverse(self):
        x = Polynomial.variable(1, 0)
        with pytest.raises(ValueError):
            PolyDiffeo([x + 1], [x + 1])  # not mutually inverse

    def test_equality_ignores_label(self):
        a = PolyDiffeo.translation([1, 0], "A")
        b = PolyDiffeo.translation([1, 0], "B")
        assert a == b
        assert hash(a) == hash(b)
        assert a != PolyDiffeo.translation([0, 1])


class TestComposition:
    def test_order_of_composition(self):
        # (g.compose(h))(x) = g(h(x))
        g = PolyDiffeo.linear([[2, 0], [0, "1/2"]])
        h = PolyDiffeo.translation([1, 1])
        assert g.compose(h).apply((0, 0)) == (2, Fraction(1, 2))
        assert h.compose(g).apply((0, 0)) == (1, 1)

    def test_compose_then_invert(self):
        sigma = area_shear()
        t = PolyDiffeo.translation([0, 1])
        word = sigma.compose(t)
        assert word.compose(word.inverted()).is_identity()

    def test_degree_cap_uses_a_priori_bound(self):
        # two quadratic shears: bound is 4, so cap 3 refuses even though
        # composing a shear with itself cannot cancel anyway
        sigma = area_shear()
        with pytest.raises(DegreeCapExceededError):
            sigma.compose(sigma, degree_cap=3)
        assert sigma.compose(sigma, degree_cap=4).apply((0, 1)) == (2, 1)

    def test_degree_cap_error_payload(self):
        sigma = area_shear()
        with pytest.raises(DegreeCapExceededError) as exc_info:
            sigma.compose(sigma, degree_cap=2)
        err = exc_info.value
        assert err.cap == 2
        assert err.degree == 4

    def test_default_cap_allows_moderate_words(self):
        sigma = area_shear()
        word = sigma
        for _ in range(4):
            word = word.compose(PolyDiffeo.translation([1, 1]))
        assert word.degree() == 2


class TestPullbackAction:
    def test_translation_preserves_area(self):
        area = PolyForm.volume(2)
        assert PolyDiffeo.translation([3, -7]).preserves(area)

    def test_right_action_law(self):
        # (omega . g) . h = omega . (g h): pullback reverses composition
        rng = random.Random("diffeo:action")
        for _ in range(10):
            w = random_form(rng, 2, rng.randint(0, 2), 2)
            g = area_shear()
            h = PolyDiffeo.translation([1, -1])
            assert h.pullback_form(g.pullback_form(w)) == g.compose(h).pullback_form(w)

    def test_pullback_matches_raw_pullback(self):
        sigma = area_shear()
        w = PolyForm.dx(2, 0) * Polynomial.variable(2, 1)
        assert sigma.pullback_form(w) == pullback(list(sigma.forward), w)

    def test_scaling_fails_invariance(self):
        double = PolyDiffeo.linear([[2, 0], [0, 1]])
        assert not double.preserves(PolyForm.volume(2))

    def test_shear_preserves_area(self):
        assert area_shear().preserves(PolyForm.volume(2))

    def test_pullback_commutes_with_d(self):
        sigma = area_shear()
        w = PolyForm.dx(2, 1) * Polynomial.variable(2, 0)
        assert sigma.pullback_form(ext_d(w)) == ext_d(sigma.pullback_form(w))


class TestGroupPresentation:
    def make_group(self):
        gens = [
            PolyDiffeo.translation([1, 0], "T1"),
            PolyDiffeo.translation([0, 1], "T2"),
            area_shear(),
        ]
        return GroupPresentation(gens, [PolyForm.volume(2)])

    def test_generator_lookup(self):
        group = self.make_group()
        assert group.generator("sigma").label == "sigma"
        assert group.labels() == ("T1", "T2", "sigma")
        with pytest.raises(KeyError):
            group.generator("nope")

    def test_invariance_enforced(self):
        double = PolyDiffeo.linear([[2, 0], [0, 1]], "double")
        with pytest.raises(InvarianceError):
            GroupPresentation([double], [PolyForm.volume(2)])

    def test_word_letters(self):
        group = self.make_group()
        # letters are signed 1-based generator indices
        w = group.word([1, 2])
        assert w.apply((0, 0)) == (1, 1)
        assert group.word([-1]).apply((0, 0)) == (-1, 0)
        assert group.word([]).is_identity()
        with pytest.raises(ValueError):
            group.word([0])
        with pytest.raises(ValueError):
            group.word([4])

    def test_sample_words_deterministic(self):
        group = self.make_group()
        a = group.sample_words(10, 3, 42)
        b = group.sample_words(10, 3, 42)
        assert [g.forward for g in a] == [g.forward for g in b]
        assert len(a) == 10

    def test_sample_words_respects_cap(self):
        group = GroupPresentation(
            [area_shear()], [PolyForm.volume(2)], degree_cap=DEFAULT_DEGREE_CAP
        )
        for g in group.sample_words(20, 3, 7):
            assert g.degree() <= DEFAULT_DEGREE_CAP

    def test_enumerate_words_counts(self):
        gens = [PolyDiffeo.translation([1], "T")]
        group = GroupPresentation(gens)
        words = group.enumerate_words(2)
        # all words, duplicates included: id; T, T^-1; the four length-2 words
        points = sorted(w.apply((0,))[0] for w in words)
        assert points == [-2, -1, 0, 0, 0, 1, 2]

    def test_degree_cap_field(self):
        group = GroupPresentation([area_shear()], degree_cap=16)
        assert group.degree_cap == 16
