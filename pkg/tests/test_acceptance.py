"""Acceptance suite: one test per criterion, each printing a pass/fail line.

Run with:  pytest tests/test_acceptance.py -v -s
"""

import itertools
import math
import random
import subprocess
import sys
import time

import numpy as np
import pytest

from fiberlrc.families import (
    EXAMPLE_7_1_GENERATORS,
    artin_schreier_genus,
    artin_schreier_total_points,
    build_artin_schreier,
    build_gk,
    gk_total_points,
)
from fiberlrc.lrc import RecoveryStructure
from fiberlrc.recovery import (
    correct_single_error,
    detect_single_error,
    local_recover,
    pattern_recoverable,
    peel_repair,
    received_word,
)
from fiberlrc.simulate import SimConfig, run_simulation
from fiberlrc.verify import (
    brute_force_min_distance,
    check_distance_bounds,
    matrix_rank,
    maximality_check,
)


class _Criterion:
    def __init__(self, name, budget_s):
        self.name = name
        self.budget_s = budget_s

    def __enter__(self):
        self.t0 = time.perf_counter()
        return self

    def __exit__(self, exc_type, exc, tb):
        elapsed = time.perf_counter() - self.t0
        status = "PASS" if exc_type is None else "FAIL"
        print(f"\n{self.name}: {status} ({elapsed:.2f}s, budget {self.budget_s}s)")
        if exc_type is None:
            assert elapsed < self.budget_s, (
                f"{self.name} exceeded its runtime budget: {elapsed:.2f}s")
        return False


def test_criterion_1_table_reproduction():
    expected = {
        270: (3252, 215), 260: (3132, 425), 250: (3012, 635),
        240: (2892, 845), 230: (2772, 1055), 220: (2652, 1265),
        210: (2532, 1475),
    }
    with _Criterion("criterion-1 table-reproduction", 1.0):
        result = subprocess.run(
            [sys.executable, "-m", "fiberlrc.cli", "params", "--family", "gk",
             "--q", "3", "--N", "3", "--l", "270..210..10"],
            capture_output=True, text=True)
        assert result.returncode == 0, result.stderr
        lines = result.stdout.strip().splitlines()
        assert len(lines) == 7
        for line, l in zip(lines, range(270, 200, -10)):
            fields = dict(part.split("=") for part in line.split())
            k, d = expected[l]
            assert int(fields["n"]) == 6048
            assert int(fields["k"]) == k
            assert int(fields["d_lower"]) == d


def test_criterion_2_three_cover_end_to_end():
    with _Criterion("criterion-2 example-7.1-end-to-end", 300.0):
        bundle = build_artin_schreier(3, 3, 3, l=699,
                                      generators=EXAMPLE_7_1_GENERATORS)
        code = bundle.descriptor
        assert bundle.eval_set.n == 19683
        assert code.k == 5600 and code.d_lower == 54
        rng = random.Random(20260810)
        msg = [rng.randrange(729) for _ in range(code.k)]
        codeword = bundle.encode(msg)
        hits = 0
        for _ in range(1000):
            i = rng.randrange(code.n)
            j = rng.randrange(code.t)
            word = received_word(codeword, erase=[i])
            if local_recover(word, i, j, bundle) == int(codeword[i]):
                hits += 1
        assert hits == 1000


def test_criterion_3_maximality_counts():
    with _Criterion("criterion-3 maximality-counts", 10.0):
        for p, h, t, total in ((2, 2, 2, 65), (3, 2, 2, 730)):
            count = artin_schreier_total_points(p, h, t)
            assert count == total
            q = p ** (2 * h)
            assert maximality_check(count, artin_schreier_genus(p, h, t), q)
        for q0, N, total, genus in ((2, 3, 225, 10), (3, 3, 6076, 99)):
            count = gk_total_points(q0, N)
            assert count == total
            field_size = q0 ** (2 * N)
            sq = math.isqrt(field_size)
            solved_twice_g = count - field_size - 1
            assert solved_twice_g % (2 * sq) == 0
            assert solved_twice_g // (2 * sq) == genus
            assert maximality_check(count, genus, field_size)


def test_criterion_4_distance_oracle():
    with _Criterion("criterion-4 distance-oracle", 60.0):
        as64 = build_artin_schreier(2, 2, 2, l=1)
        assert as64.descriptor.d_lower == 60
        d64 = brute_force_min_distance(as64)
        assert d64 >= 60 and check_distance_bounds(as64, d64)
        assert d64 >= 3  # availability-2 floor

        gk216 = build_gk(2, 3, l=0)
        assert gk216.descriptor.d_lower == 208
        d216 = brute_force_min_distance(gk216)
        assert d216 >= 208 and check_distance_bounds(gk216, d216)
        assert d216 >= 3

        tiny = build_artin_schreier(2, 1, 1, l=0)
        assert tiny.descriptor.d_lower == 8
        assert brute_force_min_distance(tiny) == 8


def test_criterion_5_availability_guarantees():
    with _Criterion("criterion-5 availability-guarantees", 60.0):
        bundle = build_artin_schreier(2, 2, 2, l=1)
        structure = bundle.structure
        n = bundle.n
        counts = {1: 0, 2: 0, 3: 0}
        for size in (1, 2, 3):
            for pattern in itertools.combinations(range(n), size):
                ok, _ = pattern_recoverable(structure, pattern, rho=1)
                assert ok
                counts[size] += 1
        assert counts == {1: 64, 2: 2016, 3: 41664}

        grid = RecoveryStructure(
            [[(0, 1), (2, 3), (4, 5), (6, 7)],
             [(0, 2), (1, 3), (4, 6), (5, 7)],
             [(0, 3), (1, 2), (4, 7), (5, 6)]], 8)
        ok, report = pattern_recoverable(grid, {0, 1, 2, 3}, rho=1)
        assert not ok and report.residual == (0, 1, 2, 3)


def test_criterion_6_detect_correct():
    with _Criterion("criterion-6 detect-correct", 60.0):
        bundle = build_artin_schreier(3, 2, 2, l=40)
        assert bundle.n == 729
        field = bundle.field
        rng = random.Random(64)
        msg = [rng.randrange(field.q) for _ in range(bundle.descriptor.k)]
        codeword = np.asarray(bundle.encode(msg))
        for _ in range(1000):
            pos = rng.randrange(bundle.n)
            delta = rng.randrange(1, field.q)
            word = codeword.copy()
            word[pos] = field.add(int(word[pos]), delta)
            flags = detect_single_error(word, bundle)
            assert pos in flags
            result = correct_single_error(word, bundle)
            assert result.status == "corrected" and result.position == pos
            assert (result.word == codeword).all()


def test_criterion_7_consultation_economics():
    with _Criterion("criterion-7 consultation-economics", 60.0):
        bundle = build_artin_schreier(3, 2, 2, l=73)
        assert bundle.n == 729
        r_max = max(bundle.descriptor.locality)
        for eps in (1, 2, 3):
            local = run_simulation(
                SimConfig(rounds=200, seed=1000 + eps, epsilon=eps), bundle)
            assert local.failures == 0
            assert all(r.consultations <= eps * r_max for r in local.rounds)
            global_ = run_simulation(
                SimConfig(rounds=200, seed=1000 + eps, epsilon=eps,
                          policy="global"), bundle)
            assert all(r.consultations == 729 - eps for r in global_.rounds)


def test_criterion_8_rho_variant():
    with _Criterion("criterion-8 rho-variant", 30.0):
        l = 15
        bundle = build_artin_schreier(3, 2, 2, l=l, rho=2)
        code = bundle.descriptor
        assert code.k == (l + 1) * 1 * 1
        rng = random.Random(8)
        msg = [rng.randrange(bundle.field.q) for _ in range(code.k)]
        codeword = bundle.encode(msg)
        # any 2 erasures inside a single class are repairable by that class
        # alone: with both erased, the class's one remaining symbol recovers
        # each of them through its own partition
        for j in range(code.t):
            for cls in bundle.structure.classes[j][:40]:
                for pair in itertools.combinations(cls, 2):
                    word = received_word(codeword, erase=pair)
                    for i in pair:
                        assert local_recover(word, i, j, bundle) \
                            == int(codeword[i])
                    repaired, report = peel_repair(word, bundle)
                    assert report.repaired and (repaired == codeword).all()
        G = bundle.generator_matrix()
        assert matrix_rank(G, bundle.field) == code.k
