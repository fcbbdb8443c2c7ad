import numpy as np
import pytest
from teichretract.charts import FNPoint, standard_chart
from teichretract.holonomy import CurveClass, EnumerationConfig
from teichretract.systole import short_set
from teichretract.gradient import (
    Covector, TangentVector, pair, MetricModel, FieldMode,
    length_differential, gram_matrix, root_length_gram, solve_kappa,
    evaluate_field, vector_field_V, directional_derivative,
    field_diagnostics
)
from teichretract.mcg import MappingClass, apply
from teichretract.errors import (
    ChartViolationError, ConditioningError, StepSizeError
)

EPSILON = 0.05


def thin_point(chart, rng, upper=3*EPSILON):
    d = chart.n_curves
    lengths = rng.uniform(0.005, 1.0, size=d)
    lengths[rng.integers(d)] = rng.uniform(0.005, upper)
    return FNPoint(chart, tuple(lengths), tuple(rng.uniform(-2, 2, size=d)))


class TestVectors:

    def test_shape_mismatch(self):
        with pytest.raises(ValueError):
            TangentVector([1.0, 2.0], [0.0])

    def test_non_finite(self):
        with pytest.raises(ValueError):
            Covector([np.nan], [0.0])

    def test_arithmetic(self):
        v = TangentVector([1.0, 2.0], [3.0, 4.0])
        w = 2*v + v
        assert w.as_array().tolist() == [3.0, 6.0, 9.0, 12.0]
        assert TangentVector.zeros(2).norm() == 0.0

    def test_pair(self):
        alpha = Covector.unit_length(2, 1)
        v = TangentVector([1.0, 2.0], [3.0, 4.0])
        assert pair(alpha, v) == 2.0


class TestMetric:

    def test_raise_index_is_dual(self, rng):
        x = FNPoint(standard_chart(1, 2), (0.3, 1.1), (0.7, -2.0))
        for m in [MetricModel(), MetricModel(twist_frame='coordinate'),
                  MetricModel('EUCLID_FN'), MetricModel(twist_scale=3.0)]:
            alpha = Covector(rng.normal(size=2), rng.normal(size=2))
            beta = Covector(rng.normal(size=2), rng.normal(size=2))
            assert pair(alpha, m.raise_index(x, beta)) == pytest.approx(
                m.inner(x, alpha, beta), rel=1e-12
            )
            assert m.inner(x, alpha, beta) == pytest.approx(
                m.inner(x, beta, alpha), rel=1e-12
            )

    @pytest.mark.parametrize('kwargs', [
        {'kind': 'HYPERBOLIC'},
        {'twist_frame': 'polar'},
        {'twist_scale': 0.0},
    ])
    def test_invalid(self, kwargs):
        with pytest.raises(ValueError):
            MetricModel(**kwargs)

    def test_twist_invariance_flag(self):
        assert MetricModel().twist_invariant
        assert not MetricModel(twist_frame='coordinate').twist_invariant
        assert not MetricModel('EUCLID_FN').twist_invariant


class TestLengthDifferential:

    def test_pants_curve(self):
        x = FNPoint(standard_chart(1, 2), (0.5, 1.0), (0.2, 0.3))
        alpha = length_differential(x, CurveClass.pants(0))
        assert alpha.length.tolist() == [1.0, 0.0]
        assert alpha.twist.tolist() == [0.0, 0.0]

    def test_transverse_curve(self):
        x = FNPoint(standard_chart(1, 1), (1.0,), (0.0,))
        curve = CurveClass(word=(1,), label='b')
        alpha = length_differential(x, curve)
        half = length_differential(x, curve, h=5e-4)
        assert np.allclose(alpha.as_array(), half.as_array(), atol=1e-6)
        transverse = 2*np.arccosh(1/np.tanh(0.5))
        expected = -1/(np.sinh(0.5)**2*np.sinh(transverse/2))
        assert alpha.length[0] == pytest.approx(expected, abs=1e-6)
        assert alpha.twist[0] == pytest.approx(0.0, abs=1e-6)

    def test_step_too_large(self):
        x = FNPoint(standard_chart(1, 1), (0.001,), (0.0,))
        with pytest.raises(StepSizeError):
            length_differential(x, CurveClass(word=(1,), label='b'))


class TestGram:

    def test_model_wp_diagonal(self):
        x = FNPoint(standard_chart(1, 2), (0.04, 0.06), (0.3, -0.1))
        G = gram_matrix(x, short_set(x, 0.07), MetricModel())
        assert np.allclose(G, np.diag([0.025465, 0.038197]), atol=1e-6)
        assert np.allclose(G, np.diag([2*0.04/np.pi, 2*0.06/np.pi]),
                           atol=1e-15)

    def test_root_length_identity(self, rng):
        chart = standard_chart(1, 2)
        for _ in range(10):
            x = FNPoint(chart, tuple(rng.uniform(0.01, 0.1, 2)),
                        tuple(rng.uniform(-1, 1, 2)))
            G = root_length_gram(x, short_set(x, 0.15), MetricModel())
            assert np.allclose(G, np.eye(2), atol=1e-12, rtol=0)

    def test_euclidean(self):
        x = FNPoint(standard_chart(1, 1), (0.04,), (0.0,))
        G = gram_matrix(x, short_set(x, 0.1), MetricModel('EUCLID_FN'))
        assert G.tolist() == [[1.0]]

    def test_empty_short_set(self):
        x = FNPoint(standard_chart(1, 1), (1.0,), (0.0,))
        with pytest.raises(ValueError):
            gram_matrix(x, short_set(x, 0.1), MetricModel())


class TestSolveKappa:

    def test_single_curve(self):
        kappa = solve_kappa([[2*0.03/np.pi]], [1.0])
        assert kappa[0] == pytest.approx(52.3599, rel=1e-6)

    def test_identity(self):
        assert solve_kappa(np.eye(2), [1.0, 1.0]).tolist() == [1.0, 1.0]

    def test_zero_targets(self):
        assert solve_kappa(np.eye(3), np.zeros(3)).tolist() == [0.0]*3

    def test_ill_conditioned(self):
        with pytest.raises(ConditioningError):
            solve_kappa(np.diag([1.0, 1e-13]), [1.0, 1.0])

    def test_indefinite(self):
        with pytest.raises(ConditioningError):
            solve_kappa([[1.0, 2.0], [2.0, 1.0]], [1.0, 1.0])


class TestVectorField:

    @pytest.fixture
    def torus(self):
        return standard_chart(1, 1)

    def test_vanishes_on_thick_part(self, torus):
        v = vector_field_V(FNPoint(torus, (0.2,), (0.4,)), EPSILON)
        assert v.norm() == 0.0

    def test_unit_speed_deep_in_thin_part(self, torus):
        x = FNPoint(torus, (0.03,), (0.7,))
        v = vector_field_V(x, EPSILON)
        assert v.length[0] == pytest.approx(1.0, abs=1e-12)
        assert v.twist[0] == pytest.approx(0.7/0.03, rel=1e-12)
        rate = directional_derivative(x, CurveClass.pants(0), v)
        assert rate == pytest.approx(1.0, abs=1e-8)

    @pytest.mark.parametrize('mode, expected', [
        (FieldMode.BLENDED, 0.25),
        (FieldMode.NAIVE, 1.0),
    ])
    def test_modes_at_ramp_midpoint(self, torus, mode, expected):
        x = FNPoint(torus, (2.5*EPSILON,), (0.0,))
        v = vector_field_V(x, EPSILON, mode)
        assert v.length[0] == pytest.approx(expected, abs=1e-9)

    def test_tie_rates_agree(self):
        x = FNPoint(standard_chart(1, 2), (0.02, 0.02), (0.3, -0.5))
        v = vector_field_V(x, EPSILON)
        assert np.allclose(v.length, [1.0, 1.0], atol=1e-12)

    @pytest.mark.parametrize('surface', [(1, 1), (1, 2)])
    @pytest.mark.parametrize('mode', list(FieldMode))
    def test_defining_property(self, surface, mode, rng):
        chart = standard_chart(*surface)
        for _ in range(25):
            x = thin_point(chart, rng)
            report = field_diagnostics(x, EPSILON, mode)
            assert report['residual'] <= 1e-9
            assert report['derivative_error'] <= 1e-6

    def test_inward_pointing(self, rng):
        chart = standard_chart(1, 2)
        for _ in range(25):
            x = thin_point(chart, rng)
            evaluation = evaluate_field(x, EPSILON)
            assert np.all(evaluation.vector.length >= -1e-12)

    def test_twist_leaves_length_part_fixed(self, rng):
        chart = standard_chart(1, 2)
        mc = MappingClass(((0, 1), (1, -2)), chart)
        for _ in range(10):
            x = thin_point(chart, rng)
            before = vector_field_V(x, EPSILON)
            after = vector_field_V(apply(mc, x), EPSILON)
            assert np.array_equal(before.length, after.length)

    def test_curve_outside_chart(self, torus):
        x = FNPoint(torus, (8.0,), (0.0,))
        with pytest.raises(ChartViolationError):
            vector_field_V(x, EPSILON,
                           cfg=EnumerationConfig(max_word_length=6))

    def test_evaluation_json(self, torus):
        data = evaluate_field(FNPoint(torus, (0.03,), (0.0,)),
                              EPSILON).to_json()
        assert data['phi'] == 1.0
        assert data['expected_derivatives'] == [1.0]
        assert data['short_set']['entries'][0]['curve'] == {'pants_index': 0}
