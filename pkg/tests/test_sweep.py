"""Vector kernels against the scalar reference implementations."""

import random
from itertools import combinations

import numpy as np
import pytest

from dbelines import (all_lines, are_twins, canonical_code,
                      check_distinct_lines, check_twin_line_laws,
                      class_size_bound, equiv_classes, line_of_fast,
                      space_from_code, twin_pairs)
from dbelines.bitset import iter_pairs, pair_count
from dbelines import sweep as sw


def random_codes(n, count, seed):
    rng = random.Random(seed)
    top = 1 << pair_count(n)
    return np.fromiter((rng.randrange(top) for _ in range(count)),
                       dtype=np.int64, count=count)


def all_codes(n):
    return np.arange(1 << pair_count(n), dtype=np.int64)


def batch(n, codes):
    ones = sw.one_masks(n, codes)
    lines = sw.line_masks(n, codes, ones)
    return ones, lines


class TestMaskKernels:
    @pytest.mark.parametrize("n", [2, 3, 4, 5])
    def test_line_masks_exhaustive(self, n):
        codes = all_codes(n)
        ones, lines = batch(n, codes)
        for ci, code in enumerate(codes):
            space = space_from_code(n, int(code))
            assert tuple(space.adj) == tuple(int(ones[p, ci]) for p in range(n))
            for k, (u, v) in enumerate(iter_pairs(n)):
                assert int(lines[k, ci]) == line_of_fast(space, u, v)

    @pytest.mark.parametrize("n", [6, 7, 8])
    def test_line_masks_random(self, n):
        codes = random_codes(n, 400, seed=n)
        _, lines = batch(n, codes)
        for ci, code in enumerate(codes):
            space = space_from_code(n, int(code))
            for k, (u, v) in enumerate(iter_pairs(n)):
                assert int(lines[k, ci]) == line_of_fast(space, u, v)

    @pytest.mark.parametrize("n", [3, 5, 7])
    def test_twin_flags(self, n):
        codes = random_codes(n, 300, seed=20 + n)
        ones = sw.one_masks(n, codes)
        twins = sw.twin_pair_flags(n, codes, ones)
        for ci, code in enumerate(codes):
            space = space_from_code(n, int(code))
            for k, (u, v) in enumerate(iter_pairs(n)):
                assert bool(twins[k, ci]) == are_twins(space, u, v)


class TestLineStats:
    @pytest.mark.parametrize("n", [3, 4, 5, 6, 7, 8])
    def test_counts_against_scalar(self, n):
        codes = random_codes(n, 250, seed=30 + n)
        _, lines = batch(n, codes)
        srt = sw.sorted_lines(lines)
        distinct = sw.distinct_counts(srt)
        universal = sw.universal_flags(n, lines)
        max_class, oversize = sw.class_size_stats(n, srt)
        bound = class_size_bound(n)
        for ci, code in enumerate(codes):
            space = space_from_code(n, int(code))
            family = all_lines(space)
            classes = equiv_classes(family, space)
            sizes = [len(c.edges) for c in classes]
            assert int(distinct[ci]) == family.count
            assert bool(universal[ci]) == family.has_universal
            assert int(max_class[ci]) == max(sizes)
            assert int(oversize[ci]) == sum(s > bound for s in sizes)


def scalar_law_counts(n, codes):
    """Instance/violation counts recomputed edge by edge in plain Python."""
    inst = {law: 0 for law in ("disjoint-diff-label", "adjacent-label2",
                               "adjacent-label1-nontwin", "twin-a", "twin-b",
                               "twin-c")}
    viol = dict(inst)
    for code in codes:
        space = space_from_code(n, int(code))
        d = space.dist
        for quad in combinations(range(n), 4):
            a, b, c, e = quad
            for p, q in (((a, b), (c, e)), ((a, c), (b, e)), ((a, e), (b, c))):
                if d(*p) != d(*q):
                    inst["disjoint-diff-label"] += 1
        for mid in range(n):
            for a, b in combinations([x for x in range(n) if x != mid], 2):
                if d(a, mid) == d(mid, b) == 2:
                    inst["adjacent-label2"] += 1
                if d(a, mid) == d(mid, b) == 1 and not are_twins(space, a, b):
                    inst["adjacent-label1-nontwin"] += 1
        for v in check_distinct_lines(space):
            viol[v.law] += 1
        for u, v in twin_pairs(space):
            others = [w for w in range(n) if w not in (u, v)]
            inst["twin-a"] += len(others) * (len(others) - 1) // 2
            for w in others:
                inst["twin-b" if d(w, v) == 1 else "twin-c"] += 1
        for v in check_twin_line_laws(space):
            viol[v.law] += 1
    return inst, viol


class TestLawKernels:
    @pytest.mark.parametrize("n", [4, 5])
    def test_exhaustive_against_scalar(self, n):
        codes = all_codes(n)
        ones, lines = batch(n, codes)
        bits = sw.label_bits(n, codes)
        twins = sw.twin_pair_flags(n, codes, ones)
        counts = sw.distinct_line_counts(n, bits, lines, twins)
        counts.update(sw.twin_law_counts(n, bits, lines, twins))
        inst, viol = scalar_law_counts(n, codes)
        for law, cnt in counts.items():
            assert cnt.instances == inst[law], law
            assert cnt.violations == viol[law], law
            assert not cnt.bad_codes.any()

    @pytest.mark.parametrize("n", [6, 7])
    def test_random_against_scalar(self, n):
        codes = random_codes(n, 120, seed=40 + n)
        ones, lines = batch(n, codes)
        bits = sw.label_bits(n, codes)
        twins = sw.twin_pair_flags(n, codes, ones)
        counts = sw.distinct_line_counts(n, bits, lines, twins)
        counts.update(sw.twin_law_counts(n, bits, lines, twins))
        inst, viol = scalar_law_counts(n, codes)
        for law, cnt in counts.items():
            assert cnt.instances == inst[law], law
            assert cnt.violations == viol[law], law

    def test_size_bound_counts(self):
        n = 6
        codes = all_codes(n)
        ones, lines = batch(n, codes)
        srt = sw.sorted_lines(lines)
        distinct = sw.distinct_counts(srt)
        universal = sw.universal_flags(n, lines)
        _, oversize = sw.class_size_stats(n, srt)
        twins = sw.twin_pair_flags(n, codes, ones)
        twin_free = ~twins.any(axis=0)
        cnt = sw.size_bound_counts(twin_free, universal, distinct, oversize)
        assert cnt.violations == 0
        applicable = int((twin_free & ~universal).sum())
        assert applicable > 0
        assert cnt.instances == int(distinct[twin_free & ~universal].sum())


class TestCanonicalKernel:
    @pytest.mark.parametrize("n", [3, 4, 5, 6])
    def test_matches_scalar(self, n):
        codes = random_codes(n, 60, seed=50 + n)
        vec = sw.canonical_min(n, codes)
        for ci, code in enumerate(codes):
            assert int(vec[ci]) == canonical_code(space_from_code(n, int(code)))

    def test_rejects_large_n(self):
        with pytest.raises(ValueError):
            sw.one_masks(9, np.zeros(1, dtype=np.int64))
