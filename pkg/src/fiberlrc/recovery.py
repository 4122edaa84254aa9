"""Local recovery, greedy peeling, and single-error detection/correction.

Received words are int arrays with ERASED (-1) marking missing symbols.
Recovering position i through partition j interpolates the unique
polynomial of degree <= class_size - 1 - rho through class_size - rho
unerased class members and evaluates it at i's coordinate.  Helpers are
always the lowest-indexed eligible positions, and peeling always serves
the lowest erased position first, so repair logs are reproducible.

Consultations are counted per recovery action as the number of distinct
helpers that action read, summed over actions with no deduplication
across actions.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field

import numpy as np

from .exceptions import InsufficientHelpersError, InvalidParameterError
from .lrc import CodeBundle, RecoveryStructure

ERASED = -1


def received_word(codeword, erase=()) -> np.ndarray:
    word = np.asarray(codeword, dtype=np.int32).copy()
    for i in erase:
        word[i] = ERASED
    return word


@dataclass(frozen=True)
class RepairAction:
    position: int
    partition: int
    helpers: tuple[int, ...]


@dataclass
class RepairReport:
    actions: list[RepairAction] = dc_field(default_factory=list)
    residual: tuple[int, ...] = ()

    @property
    def consultations(self) -> int:
        return sum(len(a.helpers) for a in self.actions)

    @property
    def repaired(self) -> bool:
        return not self.residual


def _interpolate(field, xs: list[int], ys: list[int], x0: int) -> int:
    """Lagrange evaluation at x0 of the poly through (xs, ys)."""
    acc = 0
    for r, xr in enumerate(xs):
        term = ys[r]
        for u, xu in enumerate(xs):
            if u != r:
                term = field.mul(term, field.div(field.sub(x0, xu),
                                                 field.sub(xr, xu)))
        acc = field.add(acc, term)
    return acc


def local_recover(word, position: int, partition: int, bundle: CodeBundle) -> int:
    """Recover one symbol through one recovery class.

    Reads the first class_size - rho unerased class members other than the
    target; fails if the class cannot supply that many.
    """
    code = bundle.descriptor
    structure = bundle.structure
    members = structure.class_members(partition, position)
    need = code.cover_degrees[partition] - code.rho
    helpers = [r for r in members if r != position and word[r] != ERASED][:need]
    if len(helpers) < need:
        raise InsufficientHelpersError(
            f"position {position}, partition {partition}: "
            f"{len(helpers)} unerased helpers < {need}")
    coords = bundle.eval_set.coords[partition]
    xs = [int(coords[r]) for r in helpers]
    ys = [int(word[r]) for r in helpers]
    return _interpolate(code.field, xs, ys, int(coords[position]))


def _peel_schedule(structure: RecoveryStructure, class_sizes, rho: int,
                   erased: set[int]):
    """Greedy schedule: repeatedly serve the lowest erased position that
    has a partition class with at most rho - 1 other erased members, using
    the lowest such partition.  Yields (position, partition, helpers)."""
    erased = set(erased)
    while erased:
        progress = False
        for i in sorted(erased):
            for j in range(structure.t):
                members = structure.class_members(j, i)
                others_erased = sum(1 for r in members if r != i and r in erased)
                if others_erased <= rho - 1:
                    need = class_sizes[j] - rho
                    helpers = tuple(r for r in members
                                    if r != i and r not in erased)[:need]
                    yield i, j, helpers
                    erased.discard(i)
                    progress = True
                    break
            if progress:
                break
        if not progress:
            return


def peel_repair(word, bundle: CodeBundle) -> tuple[np.ndarray, RepairReport]:
    """Repair as many erasures as possible; a stuck state is reported, not
    raised."""
    code = bundle.descriptor
    out = np.asarray(word, dtype=np.int32).copy()
    if out.shape != (code.n,):
        raise InvalidParameterError(
            f"word length {out.size} != n={code.n}", token="word-length-mismatch")
    erased = {int(i) for i in np.flatnonzero(out == ERASED)}
    report = RepairReport()
    for i, j, helpers in _peel_schedule(bundle.structure, code.cover_degrees,
                                        code.rho, erased):
        out[i] = local_recover(out, i, j, bundle)
        report.actions.append(RepairAction(i, j, helpers))
    report.residual = tuple(sorted(int(i) for i in np.flatnonzero(out == ERASED)))
    return out, report


def pattern_recoverable(structure: RecoveryStructure, pattern, rho: int = 1,
                        class_sizes=None) -> tuple[bool, RepairReport]:
    """Peel an erasure pattern on a bare recovery structure, counting class
    membership only (no symbols)."""
    pattern = set(int(i) for i in pattern)
    for i in pattern:
        if not 0 <= i < structure.n:
            raise InvalidParameterError(f"position {i} out of range",
                                        token="bad-pattern")
    if class_sizes is None:
        class_sizes = [len(structure.classes[j][0]) for j in range(structure.t)]
    report = RepairReport()
    remaining = set(pattern)
    for i, j, helpers in _peel_schedule(structure, class_sizes, rho, pattern):
        report.actions.append(RepairAction(i, j, helpers))
        remaining.discard(i)
    report.residual = tuple(sorted(remaining))
    return not remaining, report


# ---------------------------------------------------------------------------
# Single-error detection and correction (erasure-experiment style)
# ---------------------------------------------------------------------------

def _sweep_tables(bundle: CodeBundle):
    """Per (partition, position) helper indices and Lagrange weights for
    erasure-free recovery sweeps; cached on the bundle."""
    if bundle._sweep_cache is not None:
        return bundle._sweep_cache
    code = bundle.descriptor
    field = code.field
    structure = bundle.structure
    tables = []
    for j in range(structure.t):
        need = code.cover_degrees[j] - code.rho
        coords = bundle.eval_set.coords[j]
        hidx = np.zeros((code.n, need), dtype=np.int64)
        wts = np.zeros((code.n, need), dtype=np.int64)
        for i in range(code.n):
            helpers = [r for r in structure.class_members(j, i) if r != i][:need]
            xs = [int(coords[r]) for r in helpers]
            x0 = int(coords[i])
            for r, xr in enumerate(xs):
                w = 1
                for u, xu in enumerate(xs):
                    if u != r:
                        w = field.mul(w, field.div(field.sub(x0, xu),
                                                   field.sub(xr, xu)))
                hidx[i, r] = helpers[r]
                wts[i, r] = w
        tables.append((hidx, wts))
    bundle._sweep_cache = tables
    return tables


def recovery_sweep(word, bundle: CodeBundle) -> np.ndarray:
    """(t, n) array: entry [j, i] is position i re-derived through partition
    j with i treated as erased.  Word must be erasure-free."""
    code = bundle.descriptor
    field = code.field
    arr = np.asarray(word, dtype=np.int64)
    if (arr == ERASED).any():
        raise InvalidParameterError("sweep requires an erasure-free word",
                                    token="word-has-erasures")
    q = field.q
    out = np.zeros((bundle.structure.t, code.n), dtype=np.int64)
    for j, (hidx, wts) in enumerate(_sweep_tables(bundle)):
        acc = np.zeros(code.n, dtype=np.int64)
        for r in range(hidx.shape[1]):
            prod = field.mul_flat[wts[:, r] * q + arr[hidx[:, r]]]
            acc = field.add_flat[acc * q + prod].astype(np.int64)
        out[j] = acc
    return out


def detect_single_error(word, bundle: CodeBundle) -> set[int]:
    """Positions whose erase-and-recover experiment disagrees with the word
    in at least one partition.  Empty for an uncorrupted codeword."""
    arr = np.asarray(word, dtype=np.int64)
    recovered = recovery_sweep(arr, bundle)
    mism = recovered != arr[None, :]
    return {int(i) for i in np.flatnonzero(mism.any(axis=0))}


@dataclass
class CorrectionResult:
    word: np.ndarray
    status: str                  # "clean" | "corrected" | "uncorrectable"
    position: int | None = None


def correct_single_error(word, bundle: CodeBundle) -> CorrectionResult:
    """Locate the unique position flagged by every partition and re-derive
    its symbol.  Needs availability >= 2."""
    code = bundle.descriptor
    if code.t < 2:
        raise InvalidParameterError(
            "correction needs availability >= 2", token="availability-too-low")
    arr = np.asarray(word, dtype=np.int64)
    recovered = recovery_sweep(arr, bundle)
    mism = recovered != arr[None, :]
    if not mism.any():
        return CorrectionResult(arr.astype(np.int32), "clean")
    candidates = np.flatnonzero(mism.all(axis=0))
    if len(candidates) != 1:
        return CorrectionResult(arr.astype(np.int32), "uncorrectable")
    pos = int(candidates[0])
    out = arr.astype(np.int32).copy()
    out[pos] = int(recovered[0, pos])
    return CorrectionResult(out, "corrected", pos)
