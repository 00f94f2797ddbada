import itertools
from fractions import Fraction

import pytest

import oracles
from conftest import fam
from vcfold.construct import (
    ModDCode,
    complete_chain,
    cube_minus_two,
    down_closure,
    family_a_ri,
    highsets,
    lowsets,
    mod_d_decode,
    mod_d_encode,
    mod_d_family,
    mod_d_size,
)
from vcfold.core import SetFamily, SetOp, is_kwise_union, kfold, mask_from_elements, popcount, vc_dimension
from vcfold.formula import binom_leq
from vcfold.normalize import is_downward_closed


def brute_mod_d(n, d):
    """Filter all of 2^[n] by the membership rule directly."""
    keep = []
    for s in range(1 << n):
        if all(s >> (x - d - 1) & 1 for x in range(d + 1, n + 1) if s >> (x - 1) & 1):
            keep.append(s)
    return SetFamily(n, keep)


class TestLayers:
    def test_lowsets(self):
        assert lowsets(3, 0) == fam(3, [])
        assert len(lowsets(4, 2)) == 11
        for n in range(1, 7):
            for d in range(n + 1):
                assert len(lowsets(n, d)) == binom_leq(n, d)
                assert vc_dimension(lowsets(n, d)) == d

    def test_highsets(self):
        assert highsets(3, 0) == fam(3, [1, 2, 3])
        assert highsets(5, 2) == lowsets(5, 2).complement()
        assert len(highsets(6, 2)) == binom_leq(6, 2)

    @pytest.mark.parametrize("n, d", [(3, 4), (3, -1)])
    def test_range(self, n, d):
        with pytest.raises(ValueError):
            lowsets(n, d)

    def test_intersection_and_union_powers_of_layers(self):
        # pairwise unions of high sets stay high, intersections of low sets stay low,
        # so both families keep small VC for the "other" operation only
        assert vc_dimension(kfold(highsets(4, 1), SetOp.INTERSECTION, 2)) == 2
        assert vc_dimension(kfold(lowsets(4, 1), SetOp.UNION, 2)) == 2
        assert vc_dimension(kfold(lowsets(4, 1), SetOp.INTERSECTION, 2)) == 1
        assert vc_dimension(kfold(highsets(4, 1), SetOp.UNION, 2)) == 1


class TestProductFamilies:
    def test_size_examples(self):
        assert len(family_a_ri(5, 1, 1)) == 10
        for n in range(1, 7):
            for i in range(n + 1):
                assert family_a_ri(n, 0, i) == lowsets(n, i)

    def test_size_formula_and_structure(self):
        for n in range(1, 8):
            for r in range(n + 1):
                for i in range(n - r + 1):
                    f = family_a_ri(n, r, i)
                    assert len(f) == 2 ** r * binom_leq(n - r, i)
                    assert is_downward_closed(f)
                    assert vc_dimension(f) == i + r

    def test_kwise_union(self):
        assert is_kwise_union(family_a_ri(5, 1, 1), 2, 3)
        for n, k, r, i in itertools.product(range(2, 7), (1, 2, 3), range(3), range(3)):
            if r + i <= n:
                f = family_a_ri(n, r, i)
                assert is_kwise_union(f, k, k * i + r)
                if k * i + r < n and (i < n - r):
                    assert not is_kwise_union(f, k, k * i + r - 1)

    def test_range(self):
        with pytest.raises(ValueError):
            family_a_ri(3, 2, 2)
        with pytest.raises(ValueError):
            family_a_ri(3, -1, 0)


class TestModD:
    def test_size_example(self):
        assert len(mod_d_family(4, 2)) == 9

    def test_matches_rule_and_product(self):
        for n in range(1, 11):
            for d in range(1, n + 1):
                f = mod_d_family(n, d)
                assert f == brute_mod_d(n, d)
                assert len(f) == mod_d_size(n, d)

    def test_vc_and_closure(self):
        for n, d in [(6, 2), (8, 3)]:
            f = mod_d_family(n, d)
            assert vc_dimension(f) == d
            assert kfold(f, SetOp.UNION, 2) == f
            assert kfold(f, SetOp.INTERSECTION, 2) == f

    def test_beats_power(self):
        for n in range(2, 21):
            for d in range(1, n):
                assert Fraction(mod_d_size(n, d)) > Fraction(n, d) ** d

    def test_codes(self):
        assert mod_d_encode(0, 6, 2) == ModDCode((0, 0))
        assert mod_d_decode((2, 1), 4, 2) == mask_from_elements([1, 2, 3])
        for s in mod_d_family(6, 2):
            assert mod_d_decode(mod_d_encode(s, 6, 2), 6, 2) == s
        codes = {mod_d_encode(s, 7, 3).counts for s in mod_d_family(7, 3)}
        assert len(codes) == mod_d_size(7, 3)

    def test_code_errors(self):
        with pytest.raises(ValueError):
            mod_d_encode(mask_from_elements([3]), 4, 2)
        with pytest.raises(ValueError):
            mod_d_decode((3, 0), 4, 2)
        with pytest.raises(ValueError):
            mod_d_decode((1,), 4, 2)
        with pytest.raises(ValueError):
            mod_d_family(3, 0)


class TestChainAndCube:
    def test_chain(self):
        assert complete_chain(1) == fam(1, [], [1])
        for n in range(1, 9):
            c = complete_chain(n)
            assert len(c) == n + 1
            assert c == mod_d_family(n, 1)
            assert vc_dimension(kfold(c, SetOp.INTERSECTION, 2)) == 1

    def test_cube_minus_two(self):
        assert len(cube_minus_two(4)) == 14
        n = 4
        full = (1 << n) - 1
        a = cube_minus_two(n)
        assert kfold(a, SetOp.INTERSECTION, 2) == SetFamily(n, (m for m in range(1 << n) if m != full))
        assert kfold(a, SetOp.UNION, 2) == SetFamily(n, (m for m in range(1 << n) if m != 1))
        with pytest.raises(ValueError):
            cube_minus_two(1)

    @pytest.mark.parametrize("d", [3, 4])
    def test_cube_minus_two_two_sided_vc(self, d):
        a = cube_minus_two(d + 1)
        assert vc_dimension(kfold(a, SetOp.INTERSECTION, 2)) == d
        assert vc_dimension(kfold(a, SetOp.UNION, 2)) == d
        # and it beats the modular construction there
        assert len(a) == 2 ** (d + 1) - 2 > 3 * 2 ** (d - 1) == mod_d_size(d + 1, d)


def test_down_closure():
    f = down_closure(3, [mask_from_elements([1, 2])])
    assert f == fam(3, [], [1], [2], [1, 2])
    assert is_downward_closed(down_closure(5, [0b10110, 0b01001]))


def test_relabelled_product_family_is_still_extremal():
    f = family_a_ri(5, 1, 1).permute([4, 3, 2, 1, 0])
    assert oracles.isomorphic(f.members, family_a_ri(5, 1, 1).members, 5)
    assert is_kwise_union(f, 2, 3)
    assert all(popcount(m) <= 2 for m in f)
