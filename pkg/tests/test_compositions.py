import itertools
from math import comb

import pytest
from hypothesis import given
from hypothesis import strategies as st

from mzvtools.compositions import (
    Composition,
    add,
    binom_product,
    coarsenings,
    compositions_of,
    compositions_up_to,
    depth,
    enumerate_weak,
    format_composition,
    hoffman_dual,
    is_admissible,
    mzv_dual_index,
    parse_composition,
    plus_first,
    refinements,
    reverse,
    weight,
)
from mzvtools.errors import CompositionError

compositions = st.lists(st.integers(1, 6), min_size=1, max_size=6).map(Composition)
small_compositions = st.lists(st.integers(1, 3), min_size=1, max_size=3).map(Composition)


def brute_dual(k):
    # expand to 1's joined by ',' and '+', then swap the separators
    seps = []
    for part in k:
        seps.extend(["+"] * (part - 1))
        seps.append(",")
    seps.pop()
    swapped = ["," if s == "+" else "+" for s in seps]
    out, run = [], 1
    for s in swapped:
        if s == "+":
            run += 1
        else:
            out.append(run)
            run = 1
    out.append(run)
    return tuple(out)


class TestComposition:
    def test_basic_properties(self):
        k = Composition((3, 1, 2))
        assert k.weight == 6 and k.depth == 3 and k.admissible
        assert not Composition((1, 2)).admissible
        assert str(k) == "3,1,2"
        assert repr(k) == "Composition(3, 1, 2)"

    @pytest.mark.parametrize("bad", [(), (0,), (2, -1), (1.5,), (True,)])
    def test_rejects_invalid(self, bad):
        with pytest.raises(CompositionError):
            Composition(bad)

    def test_free_functions(self):
        assert weight((2, 1)) == 3 and depth((2, 1)) == 2
        assert is_admissible((2, 1)) and not is_admissible((1, 2))
        assert reverse((1, 2, 3)) == (3, 2, 1)
        assert plus_first((1, 2)) == (2, 2)


class TestParse:
    @pytest.mark.parametrize(
        "text, expected",
        [
            ("2,1", (2, 1)),
            ("(2, 1)", (2, 1)),
            ("1^3,2", (1, 1, 1, 2)),
            ("3", (3,)),
            (" 2^2 , 1 ", (2, 2, 1)),
        ],
    )
    def test_literals(self, text, expected):
        assert parse_composition(text) == expected

    @pytest.mark.parametrize("text", ["", "x", "2,,1", "0", "1^0", "2,-1", "(", "1^"])
    def test_bad_literals(self, text):
        with pytest.raises(CompositionError):
            parse_composition(text)

    def test_sequence_passthrough(self):
        assert parse_composition([2, 1]) == (2, 1)

    @given(compositions)
    def test_round_trip(self, k):
        assert parse_composition(format_composition(k)) == k


class TestDuality:
    @pytest.mark.parametrize(
        "k, dual",
        [((1, 1, 2, 1), (3, 2)), ((2, 1, 4), (1, 3, 1, 1, 1)), ((1,), (1,)), ((2,), (1, 1)), ((1, 1), (2,))],
    )
    def test_known_duals(self, k, dual):
        assert hoffman_dual(k) == dual

    def test_mzv_dual_index(self):
        # zeta(2,1) = zeta(3)
        assert mzv_dual_index((1, 1)) == (3,)
        assert mzv_dual_index((2,)) == (2, 1)
        assert mzv_dual_index((1,)) == (2,)

    @given(compositions)
    def test_matches_separator_swap(self, k):
        assert hoffman_dual(k) == brute_dual(k)

    @given(compositions)
    def test_involution_and_shape(self, k):
        d = hoffman_dual(k)
        assert hoffman_dual(d) == k
        assert weight(d) == weight(k)
        assert depth(d) == weight(k) + 1 - depth(k)
        assert hoffman_dual(reverse(k)) == reverse(d)


class TestWeakAndBinomials:
    def test_enumerate_order(self):
        assert enumerate_weak(1, 3) == [(1, 0, 0), (0, 1, 0), (0, 0, 1)]
        assert enumerate_weak(0, 2) == [(0, 0)]

    @pytest.mark.parametrize("total, length", [(0, 1), (3, 2), (4, 3), (5, 4)])
    def test_enumerate_count(self, total, length):
        got = enumerate_weak(total, length)
        assert len(got) == comb(total + length - 1, length - 1) == len(set(got))
        assert all(sum(j) == total and len(j) == length for j in got)
        assert got == sorted(got, reverse=True)

    @pytest.mark.parametrize("total, length", [(-1, 2), (2, 0)])
    def test_enumerate_errors(self, total, length):
        with pytest.raises(CompositionError):
            enumerate_weak(total, length)

    def test_binom_product(self):
        assert binom_product((2, 2), (1, 0)) == 2
        assert binom_product((3, 1), (2, 4)) == comb(4, 2) * comb(4, 4)
        assert binom_product((1,), (0,)) == 1
        with pytest.raises(CompositionError):
            binom_product((1, 2), (0,))
        with pytest.raises(CompositionError):
            binom_product((1,), (-1,))

    def test_add(self):
        assert add((2, 1), (0, 3)) == (2, 4)
        with pytest.raises(CompositionError):
            add((2,), (0, 1))


class TestCoarseRefine:
    def test_coarsenings(self):
        assert coarsenings((2, 1)) == [(2, 1), (3,)]
        assert coarsenings((1, 1, 1)) == [(1, 1, 1), (2, 1), (1, 2), (3,)]

    def test_refinements(self):
        assert sorted(refinements((2,))) == [(1, 1), (2,)]
        assert len(refinements((3, 2))) == 8

    @given(small_compositions)
    def test_refine_coarsen_duality(self, k):
        for l in refinements(k):
            assert k in coarsenings(l)
        assert len(coarsenings(k)) == 2 ** (depth(k) - 1)
        assert len(refinements(k)) == 2 ** (weight(k) - depth(k))

    def test_compositions_of(self):
        assert compositions_of(3) == [(3,), (2, 1), (1, 2), (1, 1, 1)]
        with pytest.raises(CompositionError):
            compositions_of(0)
        for n in range(1, 9):
            got = compositions_of(n)
            assert len(got) == len(set(got)) == 2 ** (n - 1)

    def test_compositions_up_to(self):
        adm = compositions_up_to(4, admissible_only=True)
        assert adm == [(2,), (3,), (2, 1), (4,), (3, 1), (2, 2), (2, 1, 1)]
        assert len(compositions_up_to(5)) == 31
        assert compositions_up_to(0) == []

    def test_immutability(self):
        k = Composition((2, 1))
        with pytest.raises(TypeError):
            k[0] = 3  # type: ignore[index]
        assert hash(k) == hash((2, 1))

    def test_exhaustive_small(self):
        # every composition of n arises from exactly one subset of cut points
        for n in range(1, 8):
            cuts = [set(c) for r in range(n) for c in itertools.combinations(range(1, n), r)]
            assert len(cuts) == len(compositions_of(n))
