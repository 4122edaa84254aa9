import itertools
import random

import numpy as np
import pytest

from fiberlrc.exceptions import InsufficientHelpersError, InvalidParameterError
from fiberlrc.families import build_artin_schreier
from fiberlrc.lrc import RecoveryStructure
from fiberlrc.recovery import (
    ERASED,
    correct_single_error,
    detect_single_error,
    local_recover,
    pattern_recoverable,
    peel_repair,
    received_word,
    recovery_sweep,
)


@pytest.fixture(scope="module")
def as64():
    return build_artin_schreier(2, 2, 2, l=7)


@pytest.fixture(scope="module")
def as729():
    return build_artin_schreier(3, 2, 2, l=40)


@pytest.fixture(scope="module")
def as729_word(as729):
    rng = random.Random(5)
    msg = [rng.randrange(as729.field.q) for _ in range(as729.descriptor.k)]
    return as729.encode(msg)


# The unrecoverable-four fixture: 8 positions, three partitions into pairs.
# Erasing the first four positions leaves every touched class fully erased.
GRID_PARTITIONS = [
    [(0, 1), (2, 3), (4, 5), (6, 7)],
    [(0, 2), (1, 3), (4, 6), (5, 7)],
    [(0, 3), (1, 2), (4, 7), (5, 6)],
]


def test_local_recover_constant(as64):
    unit = [0] * as64.descriptor.k
    unit[0] = 1
    word = received_word(as64.encode(unit), erase=[10])
    for j in range(2):
        assert local_recover(word, 10, j, as64) == 1


def test_local_recover_all_positions(as64):
    rng = random.Random(17)
    msg = [rng.randrange(16) for _ in range(as64.descriptor.k)]
    codeword = as64.encode(msg)
    for i in range(as64.n):
        word = received_word(codeword, erase=[i])
        for j in range(2):
            assert local_recover(word, i, j, as64) == int(codeword[i])


def test_local_recover_sampled_large(as729, as729_word):
    rng = random.Random(23)
    for _ in range(300):
        i = rng.randrange(as729.n)
        j = rng.randrange(2)
        word = received_word(as729_word, erase=[i])
        assert local_recover(word, i, j, as729) == int(as729_word[i])


def test_local_recover_insufficient_helpers(as64):
    word = received_word(as64.encode([0] * as64.descriptor.k))
    cls = as64.structure.class_members(0, 0)
    word[list(cls)] = ERASED
    with pytest.raises(InsufficientHelpersError):
        local_recover(word, 0, 0, as64)


def test_rho2_recovery():
    # rho=2 on p=3: two erasures inside one size-3 class, recovered from
    # the single remaining symbol
    bundle = build_artin_schreier(3, 2, 2, l=10, rho=2)
    rng = random.Random(3)
    msg = [rng.randrange(81) for _ in range(bundle.descriptor.k)]
    codeword = bundle.encode(msg)
    cls = bundle.structure.class_members(0, 0)
    word = received_word(codeword, erase=list(cls[:2]))
    for i in cls[:2]:
        assert local_recover(word, i, 0, bundle) == int(codeword[i])
    repaired, report = peel_repair(word, bundle)
    assert report.repaired
    assert (repaired == codeword).all()
    # both actions consulted only the one class
    assert all(a.partition == 0 for a in report.actions)


def test_peel_single_erasure_consultations(as64):
    rng = random.Random(31)
    msg = [rng.randrange(16) for _ in range(as64.descriptor.k)]
    codeword = as64.encode(msg)
    r_max = max(as64.descriptor.locality)
    for i in range(as64.n):
        word = received_word(codeword, erase=[i])
        repaired, report = peel_repair(word, as64)
        assert report.repaired and (repaired == codeword).all()
        assert report.consultations <= r_max


def test_peel_all_triples(as64):
    # b(3)=2: every 3-erasure pattern on an availability-2 instance peels
    rng = random.Random(7)
    msg = [rng.randrange(16) for _ in range(as64.descriptor.k)]
    codeword = as64.encode(msg)
    for pattern in itertools.combinations(range(as64.n), 3):
        ok, _ = pattern_recoverable(as64.structure, pattern,
                                    as64.descriptor.rho)
        assert ok
    # spot-check with symbols
    for pattern in [(0, 1, 2), (5, 21, 40), (61, 62, 63)]:
        word = received_word(codeword, erase=pattern)
        repaired, report = peel_repair(word, as64)
        assert report.repaired and (repaired == codeword).all()


def test_peel_soundness_random_patterns(as729, as729_word):
    rng = random.Random(11)
    for _ in range(50):
        pattern = rng.sample(range(as729.n), rng.randrange(1, 8))
        word = received_word(as729_word, erase=pattern)
        repaired, report = peel_repair(word, as729)
        if report.repaired:
            assert (repaired == as729_word).all()
        else:
            kept = repaired != ERASED
            assert (repaired[kept] == np.asarray(as729_word)[kept]).all()


def test_grid_fixture_stuck():
    structure = RecoveryStructure(GRID_PARTITIONS, 8)
    ok, report = pattern_recoverable(structure, {0, 1, 2, 3}, rho=1)
    assert not ok
    assert report.residual == (0, 1, 2, 3)
    assert report.actions == []


def test_grid_fixture_other_patterns_recover():
    structure = RecoveryStructure(GRID_PARTITIONS, 8)
    for size in (1, 2, 3):
        for pattern in itertools.combinations(range(8), size):
            ok, _ = pattern_recoverable(structure, pattern, rho=1)
            assert ok


def test_singletons_recoverable(as64):
    for i in range(as64.n):
        ok, report = pattern_recoverable(as64.structure, [i])
        assert ok and len(report.actions) == 1


def test_all_pairs_recoverable(as64):
    for pattern in itertools.combinations(range(as64.n), 2):
        ok, _ = pattern_recoverable(as64.structure, pattern)
        assert ok


def test_detect_no_error(as729, as729_word):
    assert detect_single_error(as729_word, as729) == set()


def test_detect_single_corruption_t1():
    bundle = build_artin_schreier(2, 2, 1, l=3)
    rng = random.Random(13)
    msg = [rng.randrange(16) for _ in range(bundle.descriptor.k)]
    codeword = bundle.encode(msg)
    for _ in range(30):
        pos = rng.randrange(bundle.n)
        bad = (int(codeword[pos]) + 1 + rng.randrange(14)) % 16
        if bad == int(codeword[pos]):
            continue
        word = np.asarray(codeword).copy()
        word[pos] = bad
        flags = detect_single_error(word, bundle)
        assert flags
        assert flags <= set(bundle.structure.class_members(0, pos))


def test_detect_and_correct_t2(as729, as729_word):
    rng = random.Random(29)
    field = as729.field
    for _ in range(100):
        pos = rng.randrange(as729.n)
        delta = rng.randrange(1, field.q)
        word = np.asarray(as729_word).copy()
        word[pos] = field.add(int(word[pos]), delta)
        flags = detect_single_error(word, as729)
        assert pos in flags
        result = correct_single_error(word, as729)
        assert result.status == "corrected" and result.position == pos
        assert (result.word == as729_word).all()


def test_correct_clean_word(as729, as729_word):
    result = correct_single_error(as729_word, as729)
    assert result.status == "clean"
    assert (result.word == as729_word).all()


def test_correct_two_errors_same_class(as729, as729_word):
    # derived collision: corrupt two members of one class
    field = as729.field
    cls = as729.structure.class_members(0, 0)
    word = np.asarray(as729_word).copy()
    word[cls[0]] = field.add(int(word[cls[0]]), 1)
    word[cls[1]] = field.add(int(word[cls[1]]), 2)
    result = correct_single_error(word, as729)
    assert result.status == "uncorrectable"


def test_sweep_matches_local_recover(as64):
    rng = random.Random(41)
    msg = [rng.randrange(16) for _ in range(as64.descriptor.k)]
    codeword = as64.encode(msg)
    word = np.asarray(codeword).copy()
    word[7] = (int(word[7]) + 1) % 16
    sweep = recovery_sweep(word, as64)
    for i in range(as64.n):
        probe = received_word(word, erase=[i])
        for j in range(2):
            assert sweep[j, i] == local_recover(probe, i, j, as64)


def test_correct_requires_t2():
    bundle = build_artin_schreier(2, 2, 1, l=3)
    word = bundle.encode([0] * bundle.descriptor.k)
    with pytest.raises(InvalidParameterError):
        correct_single_error(word, bundle)
