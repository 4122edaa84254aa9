"""Evaluation-set assembly, code parameters, and evaluation encoding.

A code instance lives over a base line covered by t component covers.
Evaluation points are tuples (base value, t fiber coordinates); positions
are ordered ascending by (base index, coord indices), which makes
codewords bit-exact across runs and implementations.  The j-th recovery
partition groups positions agreeing on the base value and on every
coordinate except j; its classes are exactly the fibers that the
interpolation repair works on.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np

from ._backend import kernels
from .curves import CoverDescriptor
from .exceptions import InvalidParameterError, PartialFiberError
from .galois import Field


@dataclass(frozen=True)
class CoverProfile:
    """Degree data of one cover, enough to compute code parameters."""

    cover_degree: int   # fiber size d_h
    coord_degree: int   # pole degree d_x of the fiber coordinate


@dataclass(frozen=True)
class CodeDescriptor:
    field: Field
    family: str
    t: int
    n: int
    k: int
    d_lower: int
    locality: tuple[int, ...]
    rho: int
    l: int
    s: int
    d_g: int
    cover_degrees: tuple[int, ...]
    proj_degrees: tuple[int, ...]
    coord_degrees: tuple[int, ...]


def code_parameters(field: Field, family: str, profiles: list[CoverProfile],
                    s: int, l: int, rho: int = 1) -> CodeDescriptor:
    """Validate (l, rho) against the cover degrees and derive n, k, d_lower.

    Raises distinct errors for l out of range, nonpositive dimension, and
    nonpositive distance bound.
    """
    if rho < 1:
        raise InvalidParameterError(f"rho={rho} must be >= 1", token="rho-invalid")
    if l < 0 or l >= s:
        raise InvalidParameterError(
            f"l={l} out of range [0, {s})", token="l-out-of-range")
    t = len(profiles)
    cover_degrees = tuple(pr.cover_degree for pr in profiles)
    coord_degrees = tuple(pr.coord_degree for pr in profiles)
    d_g = 1
    for d in cover_degrees:
        d_g *= d
    proj_degrees = tuple(d_g // d for d in cover_degrees)
    n = d_g * s
    k = l + 1
    for d in cover_degrees:
        k *= d - rho
    if k <= 0:
        raise InvalidParameterError(
            f"dimension {k} <= 0 (some cover degree <= rho={rho})",
            token="k-nonpositive")
    penalty = sum((dh - 1 - rho) * dg * dx
                  for dh, dg, dx in zip(cover_degrees, proj_degrees, coord_degrees))
    d_lower = n - l * d_g - penalty
    if d_lower <= 0:
        raise InvalidParameterError(
            f"distance bound {d_lower} <= 0 at l={l}", token="distance-nonpositive")
    return CodeDescriptor(
        field=field, family=family, t=t, n=n, k=k, d_lower=d_lower,
        locality=tuple(d - 1 for d in cover_degrees), rho=rho, l=l, s=s,
        d_g=d_g, cover_degrees=cover_degrees, proj_degrees=proj_degrees,
        coord_degrees=coord_degrees)


class EvaluationSet:
    """The n ordered evaluation points, stored as index arrays."""

    def __init__(self, base: np.ndarray, coords: np.ndarray,
                 base_values: np.ndarray, d_g: int):
        self.base = base                # (n,) uint16, base value per position
        self.coords = coords            # (t, n) uint16
        self.base_values = base_values  # (s,) uint16, distinct values ascending
        self.d_g = d_g
        self.n = int(base.shape[0])
        self.t = int(coords.shape[0])
        self.s = int(base_values.shape[0])
        lookup = {int(v): i for i, v in enumerate(base_values)}
        self.base_index = np.array([lookup[int(b)] for b in base], dtype=np.int32)

    def point(self, i: int) -> tuple[int, tuple[int, ...]]:
        return int(self.base[i]), tuple(int(c) for c in self.coords[:, i])


class RecoveryStructure:
    """t partitions of [0, n); partition j groups positions that agree on
    the base and on every coordinate except j."""

    def __init__(self, partitions: list[list[tuple[int, ...]]], n: int):
        self.n = n
        self.t = len(partitions)
        self.classes = partitions
        self.class_of = []
        for j, classes in enumerate(partitions):
            idx = np.full(n, -1, dtype=np.int32)
            for cid, members in enumerate(classes):
                for pos in members:
                    if idx[pos] != -1 or not 0 <= pos < n:
                        raise InvalidParameterError(
                            f"partition {j} is not a partition", token="bad-partition")
                    idx[pos] = cid
            if (idx == -1).any():
                raise InvalidParameterError(
                    f"partition {j} misses positions", token="bad-partition")
            self.class_of.append(idx)

    def class_members(self, j: int, position: int) -> tuple[int, ...]:
        return self.classes[j][int(self.class_of[j][position])]

    def recovery_set(self, j: int, position: int) -> tuple[int, ...]:
        return tuple(r for r in self.class_members(j, position) if r != position)


def assemble_evaluation_set(covers: list[CoverDescriptor],
                            field: Field) -> tuple[EvaluationSet, RecoveryStructure]:
    """Enumerate the full fibers over every admissible base value.

    Base values in any cover's ramified set are excluded up front; a value
    whose fibers are all nonempty must have them all full, otherwise the
    cover data is inconsistent and assembly fails loudly.
    """
    if not covers:
        raise InvalidParameterError("need at least one cover", token="bad-parameter")
    for c in covers:
        if c.field != field:
            raise InvalidParameterError("covers live over different fields",
                                        token="field-mismatch")
    excluded = set()
    for c in covers:
        excluded |= set(c.ramified_base_values)
    d_g = 1
    for c in covers:
        d_g *= c.cover_degree
    t = len(covers)
    bases: list[int] = []
    coord_cols: list[tuple[int, ...]] = []
    base_values: list[int] = []
    for b in field.elements():
        if b in excluded:
            continue
        fibers = [c.fiber(b) for c in covers]
        if any(len(f) == 0 for f in fibers):
            continue
        for c, f in zip(covers, fibers):
            if len(f) != c.cover_degree:
                raise PartialFiberError(
                    f"base value {b}: fiber size {len(f)} != {c.cover_degree}")
        base_values.append(b)
        for combo in itertools.product(*fibers):
            bases.append(b)
            coord_cols.append(combo)
    n = len(bases)
    if n == 0:
        raise InvalidParameterError("no admissible base values", token="empty-set")
    base_arr = np.array(bases, dtype=np.uint16)
    coords_arr = np.array(coord_cols, dtype=np.uint16).T.copy()
    eval_set = EvaluationSet(base_arr, coords_arr,
                             np.array(base_values, dtype=np.uint16), d_g)
    partitions = []
    for j in range(t):
        groups: dict[tuple, list[int]] = {}
        for pos in range(n):
            key = (bases[pos],) + tuple(
                coord_cols[pos][w] for w in range(t) if w != j)
            groups.setdefault(key, []).append(pos)
        partitions.append([tuple(members) for members in groups.values()])
    return eval_set, RecoveryStructure(partitions, n)


@dataclass(frozen=True)
class MonomialBasis:
    """Ordered exponent tuples (kappa, e_1, ..., e_t) spanning the
    evaluation function space; kappa bounds the base-polynomial degree and
    each e_j stays below cover_degree_j - rho."""

    l: int
    rho: int
    exponent_bounds: tuple[int, ...]  # inclusive bound per coordinate
    tuples: tuple[tuple[int, ...], ...]

    @property
    def size(self) -> int:
        return len(self.tuples)


def monomial_basis(code: CodeDescriptor) -> MonomialBasis:
    bounds = tuple(d - 1 - code.rho for d in code.cover_degrees)
    if any(b < 0 for b in bounds):
        raise InvalidParameterError(
            f"empty exponent range: cover degrees {code.cover_degrees} with "
            f"rho={code.rho}", token="k-nonpositive")
    tuples = tuple(
        (kappa,) + es
        for kappa in range(code.l + 1)
        for es in itertools.product(*(range(b + 1) for b in bounds))
    )
    assert len(tuples) == code.k
    return MonomialBasis(l=code.l, rho=code.rho, exponent_bounds=bounds,
                         tuples=tuples)


# ---------------------------------------------------------------------------
# Encoding
# ---------------------------------------------------------------------------

def _coordinate_monomials(field: Field, eval_set: EvaluationSet,
                          bounds: tuple[int, ...]) -> np.ndarray:
    """(T, n) array: row for each coordinate exponent tuple in lex order."""
    q = field.q
    mul = field.mul_flat
    t, n = eval_set.coords.shape
    powers = []
    for j in range(t):
        col = eval_set.coords[j].astype(np.int64)
        pw = [np.ones(n, dtype=np.uint16)]
        for _ in range(bounds[j]):
            pw.append(mul[pw[-1].astype(np.int64) * q + col])
        powers.append(pw)
    rows = []
    for es in itertools.product(*(range(b + 1) for b in bounds)):
        acc = powers[0][es[0]]
        for j in range(1, t):
            acc = mul[acc.astype(np.int64) * q + powers[j][es[j]]]
        rows.append(acc)
    return np.array(rows, dtype=np.uint16)


class Encoder:
    """Evaluation encoder for one assembled code.

    Precomputes the coordinate-monomial rows once; each encode then costs a
    Horner evaluation of the base polynomials at the s distinct base values
    plus one combine pass over the n positions.  Requires the field's dense
    tables (all shipped families are table scale).
    """

    def __init__(self, code: CodeDescriptor, basis: MonomialBasis,
                 eval_set: EvaluationSet):
        if not code.field.has_pair_tables:
            raise InvalidParameterError(
                f"{code.field!r} exceeds the dense-table limit",
                token="field-too-large")
        self.code = code
        self.basis = basis
        self.eval_set = eval_set
        self._mono = _coordinate_monomials(code.field, eval_set,
                                           basis.exponent_bounds)
        self._T = self._mono.shape[0]

    def encode(self, message) -> np.ndarray:
        """Codeword (n,) for a message of k coefficients in basis order."""
        code = self.code
        msg = np.asarray(message, dtype=np.int64)
        if msg.shape != (code.k,):
            raise InvalidParameterError(
                f"message length {msg.size} != k={code.k}",
                token="message-length-mismatch")
        if msg.min(initial=0) < 0 or msg.max(initial=0) >= code.field.q:
            raise InvalidParameterError("message symbol out of range",
                                        token="element-out-of-range")
        field = code.field
        # coefficient layout: kappa outermost, coordinate tuple innermost
        coeffs = msg.reshape(code.l + 1, self._T).T.astype(np.uint16).copy()
        pvals = kernels.horner_eval(coeffs, self.eval_set.base_values,
                                    field.mul_flat, field.add_flat, field.q)
        return kernels.combine_monomials(
            np.ascontiguousarray(self._mono), np.ascontiguousarray(pvals),
            self.eval_set.base_index, field.mul_flat, field.add_flat, field.q)

    def generator_matrix(self) -> np.ndarray:
        """(k, n) matrix whose rows encode the unit messages; rank k."""
        code = self.code
        field = code.field
        q = field.q
        mul = field.mul_flat
        n = self.eval_set.n
        base_col = self.eval_set.base.astype(np.int64)
        G = np.zeros((code.k, n), dtype=np.uint16)
        base_pow = np.ones(n, dtype=np.uint16)
        row = 0
        for kappa in range(code.l + 1):
            if kappa > 0:
                base_pow = mul[base_pow.astype(np.int64) * q + base_col]
            for tt in range(self._T):
                G[row] = mul[base_pow.astype(np.int64) * q + self._mono[tt]]
                row += 1
        return G


def encode_scalar(code: CodeDescriptor, basis: MonomialBasis,
                  eval_set: EvaluationSet, message) -> list[int]:
    """Reference encoder: direct evaluation with scalar field ops.

    Independent of the vectorized kernels; quadratic, for tests and for
    fields without dense tables.
    """
    field = code.field
    msg = list(message)
    if len(msg) != code.k:
        raise InvalidParameterError(
            f"message length {len(msg)} != k={code.k}",
            token="message-length-mismatch")
    word = []
    for i in range(eval_set.n):
        b, cs = eval_set.point(i)
        acc = 0
        for coeff, tup in zip(msg, basis.tuples):
            if coeff == 0:
                continue
            term = field.mul(coeff, field.pow(b, tup[0]))
            for j, e in enumerate(tup[1:]):
                if e:
                    term = field.mul(term, field.pow(cs[j], e))
            acc = field.add(acc, term)
        word.append(acc)
    return word


@dataclass
class CodeBundle:
    """Everything needed to encode and repair: descriptor, points,
    partitions, monomial basis, and the covers that produced them."""

    descriptor: CodeDescriptor
    covers: list[CoverDescriptor]
    eval_set: EvaluationSet
    structure: RecoveryStructure
    basis: MonomialBasis
    generators: tuple[int, ...] = ()   # artin-schreier coefficient preset

    def __post_init__(self):
        self._encoder: Encoder | None = None
        self._sweep_cache = None

    @property
    def field(self) -> Field:
        return self.descriptor.field

    @property
    def n(self) -> int:
        return self.descriptor.n

    def encoder(self) -> Encoder:
        if self._encoder is None:
            self._encoder = Encoder(self.descriptor, self.basis, self.eval_set)
        return self._encoder

    def encode(self, message) -> np.ndarray:
        return self.encoder().encode(message)

    def generator_matrix(self) -> np.ndarray:
        return self.encoder().generator_matrix()
