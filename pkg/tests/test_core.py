import itertools
import random

import pytest
from hypothesis import given, strategies as st

import oracles
from conftest import fam, families
from vcfold.construct import family_a_ri, lowsets
from vcfold.core import (
    GroundSetMismatch,
    SetFamily,
    SetOp,
    elements_of,
    is_kwise_intersecting,
    is_kwise_union,
    is_shattered,
    kfold,
    kfold_multi,
    mask_from_elements,
    max_kwise_union_size,
    permute_mask,
    shattered_collection,
    trace,
    vc_dimension,
)
from vcfold.formula import binom_leq

OPS = list(SetOp)
PYOPS = {SetOp.INTERSECTION: lambda a, b: a & b, SetOp.UNION: lambda a, b: a | b,
         SetOp.SYMMETRIC_DIFFERENCE: lambda a, b: a ^ b}


def test_family_normalizes_members():
    f = SetFamily(3, [5, 1, 5, 0])
    assert f.members == (0, 1, 5)
    assert 5 in f and 2 not in f
    assert f == SetFamily.from_sets(3, [[1, 3], [1], []])


@pytest.mark.parametrize("n, members", [(0, []), (129, []), (2, [4]), (3, [-1])])
def test_family_rejects_bad_input(n, members):
    with pytest.raises(ValueError):
        SetFamily(n, members)


def test_mask_roundtrip():
    assert mask_from_elements([1, 3]) == 0b101
    assert elements_of(0b101) == [1, 3]
    assert elements_of(0) == []


def test_ground_set_cap_of_128_is_usable():
    f = SetFamily(128, [0, (1 << 128) - 1])
    assert vc_dimension(f) == 1


class TestTrace:
    def test_examples(self):
        assert trace(fam(2, [], [1, 2]), mask_from_elements([1])) == fam(2, [], [1])
        assert trace(fam(3, [1], [2, 3]), 0) == fam(3, [])
        cube = SetFamily.cube(3)
        assert trace(cube, mask_from_elements([1, 3])) == fam(3, [], [1], [3], [1, 3])

    def test_mismatch(self):
        with pytest.raises(GroundSetMismatch):
            trace(fam(2, [1]), 0b100)

    @given(families(), st.data())
    def test_trace_composes(self, f, data):
        y = data.draw(st.integers(0, (1 << f.n) - 1))
        z = data.draw(st.integers(0, (1 << f.n) - 1))
        assert trace(trace(f, y), z) == trace(f, y & z)


class TestShattering:
    def test_examples(self):
        assert is_shattered(SetFamily.cube(3), 0b111)
        two = fam(2, [], [1, 2])
        assert is_shattered(two, 0b01)
        assert not is_shattered(two, 0b11)

    def test_shattered_collection_examples(self):
        assert shattered_collection(fam(2, [], [1, 2])) == fam(2, [], [1], [2])
        assert shattered_collection(fam(2, [], [2])) == fam(2, [], [2])
        assert shattered_collection(fam(3, [])) == fam(3, [])

    def test_empty_family_has_no_sh(self):
        with pytest.raises(ValueError):
            shattered_collection(SetFamily(3))

    @given(families(min_size=1))
    def test_matches_oracle_and_is_downward_closed(self, f):
        sh = shattered_collection(f)
        assert set(sh.members) == oracles.sh(set(f.members), f.n)
        for y in sh.members:
            for b in range(f.n):
                assert (y & ~(1 << b)) in sh
        for y in range(1 << f.n):
            assert is_shattered(f, y) == (y in sh)


class TestVC:
    def test_examples(self):
        assert vc_dimension(fam(3, [])) == 0
        assert vc_dimension(lowsets(4, 2)) == 2
        assert vc_dimension(fam(3, [], [1], [2], [1, 2])) == 2
        assert vc_dimension(SetFamily(3)) == -1

    @given(families())
    def test_matches_oracle(self, f):
        assert vc_dimension(f) == oracles.vc(set(f.members), f.n)

    @given(families(max_n=8, min_size=1))
    def test_sauer_shelah(self, f):
        assert len(f) <= binom_leq(f.n, vc_dimension(f))


class TestKfold:
    def test_examples(self):
        for s in ([1], [2, 3], []):
            assert kfold(fam(3, s), SetOp.SYMMETRIC_DIFFERENCE, 2) == fam(3, [])
        assert kfold(fam(2, [], [1], [2]), SetOp.UNION, 2) == fam(2, [], [1], [2], [1, 2])
        a = fam(3, [1], [2])
        assert kfold(a, SetOp.UNION, 1) == a

    def test_ari_symdiff_stays_small(self):
        closure = kfold(family_a_ri(5, 1, 1), SetOp.SYMMETRIC_DIFFERENCE, 2)
        assert max(bin(m).count("1") for m in closure) <= 3

    def test_errors(self):
        with pytest.raises(ValueError):
            kfold(fam(2, [1]), SetOp.UNION, 0)
        with pytest.raises(ValueError):
            kfold_multi([], SetOp.UNION)
        with pytest.raises(GroundSetMismatch):
            kfold_multi([fam(2, [1]), fam(3, [1])], SetOp.UNION)

    def test_multi_examples(self):
        a = fam(3, [1], [2, 3])
        assert kfold_multi([a], SetOp.UNION) == a
        assert kfold_multi([fam(2, [1]), fam(2, [2])], SetOp.SYMMETRIC_DIFFERENCE) == fam(2, [1, 2])

    @given(families(max_n=4, min_size=1, max_size=6), st.sampled_from(OPS), st.integers(1, 3))
    def test_matches_oracle_and_multi(self, f, op, k):
        got = kfold(f, op, k)
        assert set(got.members) == oracles.kfold(set(f.members), PYOPS[op], k)
        assert kfold_multi([f] * k, op) == got
        assert len(got) <= len(f) ** k

    @given(families(max_n=5, min_size=1, max_size=6), st.sampled_from(OPS), st.integers(1, 3),
           st.randoms(use_true_random=False))
    def test_relabelling_commutes(self, f, op, k, rnd):
        perm = list(range(f.n))
        rnd.shuffle(perm)
        assert kfold(f.permute(perm), op, k) == kfold(f, op, k).permute(perm)
        assert vc_dimension(f.permute(perm)) == vc_dimension(f)
        y = rnd.getrandbits(f.n)
        assert trace(f.permute(perm), permute_mask(y, perm)) == trace(f, y).permute(perm)


class TestKwise:
    def test_union_examples(self):
        for n, t, k in [(4, 1, 2), (5, 2, 3), (3, 0, 2)]:
            assert is_kwise_union(lowsets(n, t), k, k * t)
        assert is_kwise_union(family_a_ri(6, 1, 1), 2, 3)
        assert is_kwise_union(family_a_ri(6, 2, 1), 3, 5)
        assert not is_kwise_union(fam(3, [1, 2], [2, 3]), 2, 2)

    def test_intersecting_examples(self):
        for n in (1, 3, 5):
            assert is_kwise_intersecting(SetFamily(n, [(1 << n) - 1]), 3, n)
        n, k, r, i = 6, 2, 1, 2
        d = k * i + r
        assert is_kwise_intersecting(family_a_ri(n, r, i).complement(), k, n - d)
        assert not is_kwise_intersecting(fam(3, [1, 2], [2, 3]), 2, 2)

    @given(families(max_n=5, min_size=1, max_size=8), st.integers(1, 3), st.integers(0, 5))
    def test_match_definitions(self, f, k, bound):
        assert is_kwise_union(f, k, bound) == (oracles.max_union(f.members, k) <= bound)
        assert max_kwise_union_size(f, k) == oracles.max_union(f.members, k)
        assert is_kwise_intersecting(f, k, bound) == (oracles.min_intersection(f.members, k) >= bound)

    @given(families(max_n=6, min_size=1, max_size=10), st.integers(1, 3), st.integers(0, 6))
    def test_complement_duality(self, f, k, t):
        assert is_kwise_intersecting(f, k, t) == is_kwise_union(f.complement(), k, f.n - t)


def test_setop_parse():
    assert SetOp.parse("cup") is SetOp.UNION
    assert SetOp.parse("XOR") is SetOp.SYMMETRIC_DIFFERENCE
    with pytest.raises(ValueError):
        SetOp.parse("minus")


def test_sauer_shelah_on_seeded_random_families():
    rng = random.Random(7)
    for _ in range(300):
        n = rng.randint(1, 10)
        f = SetFamily(n, rng.sample(range(1 << n), rng.randint(1, min(1 << n, 200))))
        assert len(f) <= binom_leq(n, vc_dimension(f))


def test_vc_search_only_needs_log_size():
    # four members can shatter at most two points
    f = SetFamily(6, [0, 1, 2, 3])
    assert vc_dimension(f) == 2
    assert all(not is_shattered(f, sum(1 << b for b in c)) for c in itertools.combinations(range(6), 3))
