import numpy as np
import pytest
from teichretract.charts import FNPoint, standard_chart
from teichretract.holonomy import (
    CurveClass, EnumerationConfig, build_holonomy, curve_length
)
from teichretract.systole import (
    BersBox, collar_floor, short_set, systole, in_truncated, in_bers_box,
    length_spectrum, systole_row, NON_SIMPLE_FLOOR
)
from teichretract.errors import ChartMismatchError

SHORT_WORDS = EnumerationConfig(max_word_length=6)


@pytest.fixture
def torus():
    return standard_chart(1, 1)


class TestSystole:

    @pytest.mark.parametrize('twist', [0.0, 0.7, -3.0, 12.5])
    def test_thin_torus(self, torus, twist):
        value, realizers = systole(FNPoint(torus, (0.03,), (twist,)))
        assert value == 0.03
        assert realizers == [CurveClass.pants(0)]

    def test_tie(self):
        x = FNPoint(standard_chart(1, 2), (0.04, 0.04), (0.1, -0.2))
        value, realizers = systole(x)
        assert value == 0.04
        assert set(realizers) == {CurveClass.pants(0), CurveClass.pants(1)}

    def test_square_torus(self, torus):
        x = FNPoint(torus, (2*np.arcsinh(1.0),), (0.0,))
        value, realizers = systole(x, SHORT_WORDS)
        assert value == pytest.approx(2*np.arcsinh(1.0))
        assert {curve.label for curve in realizers} == {'pants0', 'b'}

    def test_hexagonal_torus(self, torus):
        length = 2*np.arccosh(1.5)
        x = FNPoint(torus, (length,), (-length/2,))
        value, realizers = systole(x, SHORT_WORDS)
        assert value == pytest.approx(length)
        assert {curve.label for curve in realizers} == {'pants0', 'b', 'ab'}

    def test_transverse_curve_shorter(self, torus):
        x = FNPoint(torus, (4.0,), (0.0,))
        value, realizers = systole(x, SHORT_WORDS)
        assert value < 4.0
        assert realizers == [CurveClass(word=(1,), label='b')]

    @pytest.mark.parametrize('lengths, twists', [
        ((0.5,), (0.2,)),
        ((2.0,), (1.3,)),
        ((3.5,), (-0.4,)),
    ])
    def test_twist_invariance(self, torus, lengths, twists):
        x = FNPoint(torus, lengths, twists)
        shifted = x.replace(twists=(twists[0] + lengths[0],))
        assert systole(x, SHORT_WORDS)[0] == pytest.approx(
            systole(shifted, SHORT_WORDS)[0], abs=1e-12
        )

    def test_bounded_by_pants_lengths(self, rng):
        chart = standard_chart(1, 2)
        for _ in range(10):
            x = FNPoint(chart, tuple(rng.uniform(0.05, 3, 2)),
                        tuple(rng.uniform(-1, 1, 2)))
            value, _ = systole(x, SHORT_WORDS)
            assert value <= min(x.lengths)

    def test_deterministic(self, torus):
        x = FNPoint(torus, (1.3,), (0.2,))
        assert systole(x, SHORT_WORDS) == systole(x, SHORT_WORDS)

    def test_certificate_agrees_with_enumeration(self, torus):
        x = FNPoint(torus, (0.2,), (0.1,))
        assert systole(x) == systole(
            x, EnumerationConfig(max_word_length=6,
                                 use_collar_certificate=False)
        )

    def test_convergence_check_passes(self, torus):
        cfg = EnumerationConfig(max_word_length=6, convergence_check=True)
        value, _ = systole(FNPoint(torus, (3.0,), (0.0,)), cfg)
        assert value < 1.0


class TestLargeTwists:

    def test_whole_twists_leave_systole_unchanged(self, torus):
        far = systole(FNPoint(torus, (2.0,), (11.0,)), SHORT_WORDS)
        near = systole(FNPoint(torus, (2.0,), (-1.0,)), SHORT_WORDS)
        assert far[0] == near[0]

    def test_realizer_is_marked_at_the_original_point(self, torus):
        x = FNPoint(torus, (2.0,), (11.0,))
        value, realizers = systole(x, SHORT_WORDS)
        rep = build_holonomy(x)
        for curve in realizers:
            assert not curve.is_pants
            assert curve_length(rep, curve) == pytest.approx(value, abs=1e-9)

    def test_random_points_on_twice_punctured_torus(self, rng):
        chart = standard_chart(1, 2)
        for _ in range(40):
            x = FNPoint(chart, tuple(rng.uniform(1.0, 3.0, 2)),
                        tuple(rng.uniform(-1, 1, 2)))
            twists = (x.twists[0] + x.lengths[0], x.twists[1] - x.lengths[1])
            shifted = x.replace(twists=twists)
            assert systole(shifted, SHORT_WORDS)[0] == pytest.approx(
                systole(x, SHORT_WORDS)[0], abs=1e-13, rel=1e-13
            )

    def test_short_set_keeps_point(self, torus):
        x = FNPoint(torus, (3.0,), (7.0,))
        S = short_set(x, 2.0, SHORT_WORDS)
        assert S.point == x
        assert not S.is_empty
        rep = build_holonomy(x)
        for curve, length in S.entries:
            assert curve_length(rep, curve) == pytest.approx(
                length, rel=1e-8
            )


class TestShortSet:

    def test_mirrors_enumeration(self, torus):
        S = short_set(FNPoint(torus, (0.03,), (0.7,)), 0.05)
        assert S.curves == [CurveClass.pants(0)]

    def test_zero_threshold(self, torus):
        assert short_set(FNPoint(torus, (0.03,), (0.7,)), 0.0).is_empty

    def test_sorted_lengths(self):
        x = FNPoint(standard_chart(1, 2), (0.04, 0.06), (0.0, 0.0))
        S = short_set(x, 0.07)
        assert S.lengths.tolist() == [0.04, 0.06]
        assert S.all_pants
        assert S.min_length == 0.04

    def test_collar_floor(self, torus):
        assert collar_floor(FNPoint(torus, (0.03,), (0.0,))) == (
            NON_SIMPLE_FLOOR
        )
        assert collar_floor(FNPoint(torus, (3.0,), (0.0,))) < 1.0

    def test_spectrum_contains_pants_length(self, torus):
        spectrum = length_spectrum(FNPoint(torus, (1.0,), (0.0,)), 3.0,
                                   SHORT_WORDS)
        assert np.all(np.diff(spectrum) >= 0)
        assert np.any(np.isclose(spectrum, 1.0))


class TestTruncated:

    @pytest.mark.parametrize('length, expected', [
        (0.03, False), (0.05, True), (0.07, True),
    ])
    def test_membership(self, torus, length, expected):
        assert in_truncated(FNPoint(torus, (length,), (0.3,)), 0.05) == (
            expected
        )

    def test_needs_positive_epsilon(self, torus):
        with pytest.raises(ValueError):
            in_truncated(FNPoint(torus, (1.0,), (0.0,)), 0.0)

    def test_long_pants_curve_outside(self, torus):
        cfg = EnumerationConfig(max_word_length=6)
        assert not in_truncated(FNPoint(torus, (20.0,), (0.0,)), 0.05, cfg)


class TestBersBox:

    @pytest.mark.parametrize('lengths, twists, expected', [
        ((2.0,), (0.1,), True),
        ((2.0,), (5.0,), False),
        ((0.04,), (0.1,), False),
        ((22.0,), (0.1,), False),
    ])
    def test_membership(self, torus, lengths, twists, expected):
        box = BersBox(torus, C=21, theta0=2, epsilon=0.05)
        assert in_bers_box(FNPoint(torus, lengths, twists), box) == expected

    @pytest.mark.parametrize('C, theta0, epsilon', [
        (0.05, 2, 0.05), (1.0, 0.0, 0.05), (1.0, 2, -0.1),
    ])
    def test_invalid(self, torus, C, theta0, epsilon):
        with pytest.raises(ValueError):
            BersBox(torus, C=C, theta0=theta0, epsilon=epsilon)

    def test_chart_mismatch(self, torus):
        box = BersBox(standard_chart(0, 4), C=4, theta0=2)
        with pytest.raises(ChartMismatchError):
            in_bers_box(FNPoint(torus, (1.0,), (0.0,)), box)


def test_systole_row(torus):
    box = BersBox(torus, C=4, theta0=2, epsilon=0.05)
    row = systole_row(FNPoint(torus, (0.03,), (0.5,)), 0.05, box=box)
    assert row == {
        'l_1': 0.03,
        'theta_1': 0.5,
        'systole': 0.03,
        'realizers': 'pants0',
        'in_truncated': False,
        'in_bers_box': False,
    }
