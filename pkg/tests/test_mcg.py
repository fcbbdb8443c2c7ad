import numpy as np
import pytest
from teichretract.charts import FNPoint, standard_chart
from teichretract.holonomy import WordGroup, substitute, twist_substitution
from teichretract.flow import FlowConfig
from teichretract.systole import systole
from teichretract.mcg import (
    MappingClass, apply, twist_automorphism, reduce_twists, fn_distance,
    equivariance_check, symmetric_locus_check
)
from teichretract.experiments import locus_point, SYMMETRIC_LOCI
from teichretract.errors import ChartMismatchError

EPSILON = 0.05


@pytest.fixture
def torus():
    return standard_chart(1, 1)


class TestMappingClass:

    def test_twist(self, torus):
        x = FNPoint(torus, (2.0,), (0.0,))
        assert apply(MappingClass.twist(0), x).twists == (2.0,)

    def test_zero_count(self, torus):
        x = FNPoint(torus, (2.0,), (0.3,))
        assert apply(MappingClass.twist(0, 0), x) == x

    def test_inverse(self):
        chart = standard_chart(2, 0)
        x = FNPoint(chart, (0.5, 1.2, 3.0), (0.1, -0.4, 2.2))
        mc = MappingClass(((0, 2), (2, -1), (1, 3)), chart)
        assert fn_distance(apply(mc.inverse(), apply(mc, x)), x) < 1e-14
        assert apply(mc.compose(mc.inverse()), x) == x

    def test_compose(self, torus):
        first = MappingClass.twist(0, 2)
        second = MappingClass.twist(0, -1)
        assert second.compose(first).factors == ((0, 2), (0, -1))
        assert second.compose(first).net_counts(1).tolist() == [1]

    def test_lengths_fixed(self):
        chart = standard_chart(1, 2)
        x = FNPoint(chart, (0.5, 0.7), (0.0, 0.0))
        y = apply(MappingClass(((0, 1), (1, 1))), x)
        assert y.lengths == x.lengths
        assert y.twists == (0.5, 0.7)

    def test_bad_index(self, torus):
        with pytest.raises(ChartMismatchError):
            MappingClass.twist(1, chart=torus)
        with pytest.raises(ChartMismatchError):
            apply(MappingClass.twist(3), FNPoint(torus, (1.0,), (0.0,)))

    def test_chart_mismatch(self, torus):
        mc = MappingClass.identity(standard_chart(0, 4))
        with pytest.raises(ChartMismatchError):
            apply(mc, FNPoint(torus, (1.0,), (0.0,)))

    def test_json(self):
        assert MappingClass(((0, 1), (2, -3))).to_json() == [[0, 1], [2, -3]]


class TestSubstitution:

    def test_torus_twist(self, torus):
        group = WordGroup(2)
        image = substitute(group.parse('ab'), twist_automorphism(torus, 0),
                           group)
        assert group.format(image) == 'aba'

    def test_free_cancellation(self, torus):
        group = WordGroup(2)
        image = substitute(group.parse('aB'), twist_automorphism(torus, 0),
                           group)
        assert group.format(image) == 'B'

    @pytest.mark.parametrize('index', [0, 1])
    def test_inverse_twist_undoes_twist(self, index):
        chart = standard_chart(1, 2)
        group = WordGroup(3)
        forward = twist_automorphism(chart, index)
        backward = twist_substitution(chart, index, -1)
        for text in ['a', 'b', 'c', 'aBc', 'abABc']:
            word = group.parse(text)
            image = substitute(substitute(word, forward, group), backward,
                               group)
            assert image == word

    def test_unknown_curve(self, torus):
        with pytest.raises(ChartMismatchError):
            twist_automorphism(torus, 1)


class TestReduceTwists:

    @pytest.mark.parametrize('twist, count', [
        (0.3, 0), (2.6, -1), (-5.0, 2), (11.0, -6),
    ])
    def test_into_fundamental_domain(self, torus, twist, count):
        x = FNPoint(torus, (2.0,), (twist,))
        mc, y = reduce_twists(x)
        assert mc.net_counts(1).tolist() == [count]
        assert abs(y.twists[0]) <= 1.0
        assert systole(y)[0] == pytest.approx(systole(x)[0], abs=1e-12)


class TestEquivariance:

    def test_thick_point_exact(self, torus):
        x0 = FNPoint(torus, (0.3,), (0.2,))
        report = equivariance_check(MappingClass.twist(0, 1), x0,
                                    FlowConfig(epsilon=EPSILON))
        assert report.error == 0.0
        assert report.passed

    @pytest.mark.parametrize('count', [1, -1, 2])
    def test_full_twist_on_thin_torus(self, torus, count):
        x0 = FNPoint(torus, (0.02,), (0.3,))
        report = equivariance_check(
            MappingClass.twist(0, count), x0,
            FlowConfig(epsilon=EPSILON, n_samples=2)
        )
        assert report.error <= 1e-6
        assert report.systole_difference == 0.0
        assert report.to_json()['passed']

    def test_genus_two(self):
        chart = standard_chart(2, 0)
        x0 = FNPoint(chart, (0.02, 0.5, 0.04), (0.1, -0.3, 0.02))
        mc = MappingClass(((0, 1), (2, -1), (1, 1)), chart)
        report = equivariance_check(mc, x0, FlowConfig(epsilon=EPSILON))
        assert report.passed
        assert report.systole_difference == 0.0


class TestSymmetricLocus:

    def test_empty_relations(self, torus):
        report = symmetric_locus_check(FNPoint(torus, (0.02,), (0.0,)), [])
        assert report.passed
        assert report.max_deviation == 0.0

    @pytest.mark.parametrize('name', sorted(SYMMETRIC_LOCI))
    def test_presets(self, name):
        x0, relations = locus_point(name)
        report = symmetric_locus_check(
            x0, relations, FlowConfig(epsilon=EPSILON, n_samples=11)
        )
        assert report.passed
        assert len(report.deviations) == len(relations)

    def test_tie_preserved_while_moving(self):
        x0, relations = locus_point('tied_cusps')
        report = symmetric_locus_check(
            x0, relations, FlowConfig(epsilon=EPSILON, n_samples=11)
        )
        assert report.n_samples == 11
        assert report.max_deviation <= 1e-6

    def test_unequal_start(self, torus):
        x0 = FNPoint(torus, (1.0,), (0.0,))
        with pytest.raises(ValueError):
            symmetric_locus_check(x0, [('a', 'b')])

    def test_unknown_locus(self):
        with pytest.raises(KeyError):
            locus_point('octagonal')

    def test_square_locus_lengths(self):
        x0, _ = locus_point('square')
        assert x0.lengths[0] == pytest.approx(2*np.arcsinh(1.0))
