import math
import random
from fractions import Fraction

import pytest

from morrey import (
    BothZero,
    ConstantReport,
    Continuous1DSpace,
    DiscreteSpace,
    EqualVectors,
    LocalRadialSpace,
    MorreyError,
    MorreyParams,
    SparseSequence,
    ZeroVector,
    assert_envelopes,
    continuous_witness_family,
    discrete_witness_pair,
    dw_couple_discrete,
    dw_functional,
    evaluate,
    james_functional,
    nj_functional,
    search_lower_bound,
)

P12 = MorreyParams(1, 2, 1)
D0 = SparseSequence({0: 1})
D1 = SparseSequence({1: 1})


def random_pair(rng, d=1, exact=False):
    def vec():
        ent = {}
        for _ in range(rng.randint(1, 5)):
            k = tuple(rng.randint(0, 5) for _ in range(d))
            ent[k] = Fraction(rng.randint(-8, 8), 2) if exact else rng.uniform(-3, 3)
        x = SparseSequence(ent, d=d)
        return x if not x.is_zero() else SparseSequence({(0,) * d: 1}, d=d)

    x, y = vec(), vec()
    return (x, y) if x != y else (x, y + SparseSequence({(6,) * d: 1}, d=d))


class TestExamples:
    def test_witness_nj_and_james(self):
        w = discrete_witness_pair(P12)
        space = DiscreteSpace(P12, exact=True)
        assert nj_functional(w.x, w.y, space) == 2
        assert james_functional(w.x, w.y, space) == 2

    def test_nj_of_equal_vectors(self):
        for space in (DiscreteSpace(P12), DiscreteSpace(MorreyParams(2, 5, 2))):
            x = SparseSequence({(0,) * space.params.d: 1.5, (2,) * space.params.d: -1}, d=space.params.d)
            assert nj_functional(x, x, space) == pytest.approx(1, rel=1e-15)

    def test_james_of_equal_vectors(self):
        assert james_functional(D0, D0, DiscreteSpace(P12)) == 0

    def test_james_l2(self):
        assert james_functional(D0, D1, DiscreteSpace(MorreyParams(2, 2, 1))) == pytest.approx(math.sqrt(2), rel=1e-15)

    def test_dw_corrected_couple(self):
        w = discrete_witness_pair(P12)
        u, v = dw_couple_discrete(w, Fraction(1, 2))
        assert dw_functional(u, v, DiscreteSpace(P12, exact=True)) == Fraction(10, 3)

    def test_dw_opposite(self):
        x = SparseSequence({0: 1, 3: 2})
        assert dw_functional(x, -x, DiscreteSpace(P12)) == pytest.approx(2, rel=1e-15)

    def test_dw_stated_couple(self):
        w = discrete_witness_pair(P12)
        u, v = dw_couple_discrete(w, Fraction(1, 2), "stated")
        assert dw_functional(u, v, DiscreteSpace(P12, exact=True)) == 2

    def test_continuous_witnesses(self):
        w = continuous_witness_family(P12)
        space = Continuous1DSpace(P12)
        assert nj_functional(w.f, w.k, space) == pytest.approx(2, abs=1e-5)
        assert james_functional(w.f, w.k, space) == pytest.approx(2, abs=1e-5)

    def test_local_witnesses(self):
        params = MorreyParams(1, 3, 2)
        w = continuous_witness_family(params)
        space = LocalRadialSpace(params)
        assert nj_functional(w.f, w.k, space) == pytest.approx(2, abs=1e-12)


class TestErrors:
    def test_both_zero(self):
        z = SparseSequence.zero(1)
        with pytest.raises(BothZero):
            nj_functional(z, z, DiscreteSpace(P12))

    def test_nj_one_zero_is_fine(self):
        assert nj_functional(D0, SparseSequence.zero(1), DiscreteSpace(P12)) == 1

    def test_james_zero(self):
        with pytest.raises(ZeroVector):
            james_functional(D0, SparseSequence.zero(1), DiscreteSpace(P12))

    def test_dw_zero(self):
        with pytest.raises(ZeroVector):
            dw_functional(SparseSequence.zero(1), D0, DiscreteSpace(P12))

    def test_dw_equal(self):
        with pytest.raises(EqualVectors):
            dw_functional(D0, SparseSequence({0: 1}), DiscreteSpace(P12))

    def test_wrong_vector_kind(self):
        with pytest.raises(MorreyError):
            nj_functional(D0, D1, LocalRadialSpace(P12))

    def test_wrong_dimension(self):
        with pytest.raises(MorreyError):
            nj_functional(D0, D1, DiscreteSpace(MorreyParams(1, 2, 2)))

    def test_continuous_needs_d1(self):
        with pytest.raises(MorreyError):
            Continuous1DSpace(MorreyParams(1, 2, 2))

    def test_unknown_functional(self):
        with pytest.raises(MorreyError):
            evaluate("zbaganu", D0, D1, DiscreteSpace(P12))

    def test_search_budget(self):
        with pytest.raises(MorreyError):
            search_lower_bound(DiscreteSpace(P12), "nj", 0)

    def test_search_needs_discrete(self):
        with pytest.raises(MorreyError):
            search_lower_bound(LocalRadialSpace(P12), "nj", 10)


class TestProperties:
    @pytest.mark.parametrize("params", [P12, MorreyParams(2, 3, 1), MorreyParams(1, 3, 2)])
    def test_homogeneity(self, params):
        rng = random.Random(7)
        space = DiscreteSpace(params, exact=True)
        for _ in range(20):
            x, y = random_pair(rng, params.d, exact=True)
            c = Fraction(rng.choice([-3, -1, 2, 5]), rng.choice([1, 2, 7]))
            s, t = Fraction(rng.randint(1, 9), 4), Fraction(rng.randint(1, 9), 3)
            assert nj_functional(c * x, c * y, space) == pytest.approx(nj_functional(x, y, space), rel=1e-12)
            assert james_functional(c * x, c * y, space) == pytest.approx(james_functional(x, y, space), rel=1e-12)
            assert dw_functional(c * x, c * y, space) == pytest.approx(dw_functional(x, y, space), rel=1e-12)
            assert james_functional(s * x, t * y, space) == pytest.approx(james_functional(x, y, space), rel=1e-12)

    def test_dw_not_invariant_under_separate_scaling(self):
        # (|x| + |y|) / |x - y| depends on the relative scale of x and y
        space = DiscreteSpace(P12, exact=True)
        x, y = SparseSequence({0: 1}), SparseSequence({0: 1, 4: 1})
        assert dw_functional(x, y, space) != dw_functional(x, 2 * y, space)

    def test_symmetry(self):
        rng = random.Random(8)
        space = DiscreteSpace(MorreyParams(1, 3, 1))
        for _ in range(30):
            x, y = random_pair(rng)
            nj = nj_functional(x, y, space)
            assert nj_functional(y, x, space) == pytest.approx(nj, rel=1e-14)
            assert nj_functional(x, -y, space) == pytest.approx(nj, rel=1e-14)
            assert james_functional(y, x, space) == pytest.approx(james_functional(x, y, space), rel=1e-14)

    def test_parallelogram(self):
        rng = random.Random(9)
        for d in (1, 2):
            space = DiscreteSpace(MorreyParams(2, 2, d))
            for _ in range(100):
                assert nj_functional(*random_pair(rng, d), space) == pytest.approx(1, abs=1e-12)

    def test_exact_values_are_fractions(self):
        w = discrete_witness_pair(P12)
        report = evaluate("nj", w.x, w.y, DiscreteSpace(P12, exact=True))
        assert isinstance(report.value, Fraction)
        assert report.to_json()["exact"] == 2

    def test_trace(self):
        report = evaluate("dw", D0, D1, DiscreteSpace(P12))
        assert set(report.trace) == {"|x|", "|y|", "|x-y|", "|x^-y^|"}


class TestEnvelopes:
    def test_pass_at_bound(self):
        space = DiscreteSpace(P12)
        assert assert_envelopes(ConstantReport("nj", 2.0, (D0, D1), {}, 0.0), space)
        assert assert_envelopes(ConstantReport("james", 2.0, (D0, D1), {}, 0.0), space)

    def test_fail_above_bound(self):
        assert not assert_envelopes(ConstantReport("dw", 4.2, (D0, D1), {}, 0.0), DiscreteSpace(P12))

    def test_continuous_tolerance(self):
        space = Continuous1DSpace(P12)
        assert assert_envelopes(ConstantReport("nj", 2 + 5e-5, (D0, D1), {}, 0.0), space)
        assert not assert_envelopes(ConstantReport("nj", 2 + 5e-5, (D0, D1), {}, 0.0), DiscreteSpace(P12))


class TestSearch:
    def test_l1_nj(self):
        report = search_lower_bound(DiscreteSpace(MorreyParams(1, 1, 1)), "nj", 10_000, seed=0)
        assert report.value >= 2 - 1e-9

    def test_l2_nj_is_one(self):
        report = search_lower_bound(DiscreteSpace(MorreyParams(2, 2, 1)), "nj", 500, seed=3)
        assert report.value == pytest.approx(1, abs=1e-12)

    def test_separated_spikes(self):
        report = search_lower_bound(DiscreteSpace(P12), "nj", 10_000, seed=0)
        assert 2 - 1e-9 <= report.value <= 2 + 1e-9

    @pytest.mark.parametrize("functional", ["nj", "james", "dw"])
    def test_within_envelope(self, functional):
        space = DiscreteSpace(MorreyParams(1, 3, 2))
        report = search_lower_bound(space, functional, 2000, seed=1)
        assert assert_envelopes(report, space)

    def test_budget_respected(self):
        report = search_lower_bound(DiscreteSpace(MorreyParams(2, 3, 1)), "dw", 777, seed=2)
        assert report.evaluations <= 777

    def test_deterministic(self):
        space = DiscreteSpace(MorreyParams(2, 4, 1))
        a = search_lower_bound(space, "james", 1500, seed=5).to_json()
        b = search_lower_bound(space, "james", 1500, seed=5).to_json()
        assert a == b

    def test_independent_of_workers(self):
        space = DiscreteSpace(MorreyParams(2, 4, 1))
        a = search_lower_bound(space, "dw", 800, seed=4, workers=1).to_json()
        b = search_lower_bound(space, "dw", 800, seed=4, workers=3).to_json()
        assert a == b
