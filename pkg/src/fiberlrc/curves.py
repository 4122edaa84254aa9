"""Cover descriptors and fiber solvers.

Each cover is a map from a component curve down to the projective base
line; its fibers over unramified base values become the recovery classes
of the assembled code.  Solvers return index-sorted tuples so downstream
point ordering is deterministic.  The point at infinity is represented by
the module-level INFINITY token, never by a field element.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field

from .exceptions import InvalidParameterError
from .galois import Field


class _Infinity:
    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "INFINITY"


INFINITY = _Infinity()


def solve_artin_schreier(c: int, field: Field) -> tuple[int, ...]:
    """All y with y^p - y = c, sorted by index.

    Nonempty exactly when the absolute trace of c vanishes, in which case
    the solution set is a coset of the prime subfield (size p).
    """
    return _artin_schreier_map(field).get(c, ())


_AS_CACHE: dict[tuple, dict[int, tuple[int, ...]]] = {}


def _artin_schreier_map(field: Field) -> dict[int, tuple[int, ...]]:
    key = field.key()
    cached = _AS_CACHE.get(key)
    if cached is None:
        buckets: dict[int, list[int]] = {}
        for y in field.elements():
            c = field.sub(field.pow(y, field.p), y)
            buckets.setdefault(c, []).append(y)
        cached = {c: tuple(sorted(ys)) for c, ys in buckets.items()}
        _AS_CACHE[key] = cached
    return cached


def solve_power(c: int, M: int, field: Field) -> tuple[int, ...]:
    """All z with z^M = c, for M dividing q - 1.

    Returns (0,) for c = 0; otherwise M solutions when c is an M-th power
    residue (a coset of the M-th roots of unity) and nothing when it is not.
    """
    q = field.q
    if M <= 0 or (q - 1) % M != 0:
        raise InvalidParameterError(
            f"M={M} does not divide q-1={q - 1}", token="bad-root-degree")
    if c == 0:
        return (0,)
    if field.log_table is not None:
        e = int(field.log_table[c])
        if e % M != 0:
            return ()
        stride = (q - 1) // M
        base = e // M
        return tuple(sorted(int(field.exp_table[(base + i * stride) % (q - 1)])
                            for i in range(M)))
    if field.pow(c, (q - 1) // M) != 1:
        return ()
    return tuple(sorted(z for z in range(1, q) if field.pow(z, M) == c))


def solve_hermitian(y: int, q0: int, field: Field) -> tuple[int, ...]:
    """All x with x^q0 + x = y^(q0+1) in ``field``, sorted by index.

    Requires GF(q0^2) to embed in the field; solution sets are cosets of
    the q0-element kernel of x -> x^q0 + x, so sizes are 0 or q0.
    """
    _check_hermitian_subfield(q0, field)
    c = field.pow(y, q0 + 1)
    return _hermitian_map(q0, field).get(c, ())


_HERM_CACHE: dict[tuple, dict[int, tuple[int, ...]]] = {}


def _hermitian_map(q0: int, field: Field) -> dict[int, tuple[int, ...]]:
    key = (q0, field.key())
    cached = _HERM_CACHE.get(key)
    if cached is None:
        buckets: dict[int, list[int]] = {}
        for x in field.elements():
            c = field.add(field.pow(x, q0), x)
            buckets.setdefault(c, []).append(x)
        cached = {c: tuple(sorted(xs)) for c, xs in buckets.items()}
        _HERM_CACHE[key] = cached
    return cached


def _prime_power(n: int) -> tuple[int, int]:
    """(p, e) with n = p^e, or raise."""
    if n < 2:
        raise InvalidParameterError(f"{n} is not a prime power", token="not-prime-power")
    p = 2
    while p * p <= n:
        if n % p == 0:
            break
        p += 1
    else:
        return n, 1
    e = 0
    while n % p == 0:
        n //= p
        e += 1
    if n != 1:
        raise InvalidParameterError(f"{n} is not a prime power", token="not-prime-power")
    return p, e


def _check_hermitian_subfield(q0: int, field: Field):
    p0, e0 = _prime_power(q0)
    if p0 != field.p or field.m % (2 * e0) != 0:
        raise InvalidParameterError(
            f"GF({q0}^2) does not embed in {field!r}", token="bad-subfield")


def trace_kernel_basis(p: int, h: int, field: Field) -> list[int]:
    """Deterministic GF(p)-basis of {a : a^(p^h) + a = 0} in GF(p^(2h)).

    Scans element indices in ascending order and keeps each kernel member
    independent of the span so far; returns h elements.
    """
    if field.p != p or field.m != 2 * h:
        raise InvalidParameterError(
            f"expected GF({p}^{2 * h}), got {field!r}", token="bad-degree")
    ph = p ** h
    basis: list[int] = []
    span = {0}
    for a in field.elements():
        if a == 0 or a in span:
            continue
        if field.add(field.pow(a, ph), a) != 0:
            continue
        basis.append(a)
        span = {field.add(s, field.mul(c, a)) for s in span for c in range(p)}
        if len(basis) == h:
            break
    if len(basis) != h:  # pragma: no cover - would indicate a field bug
        raise InvalidParameterError("trace kernel has unexpected dimension",
                                    token="bad-kernel")
    return basis


def in_trace_kernel(a: int, h: int, field: Field) -> bool:
    return field.add(field.pow(a, field.p ** h), a) == 0


def artin_schreier_points(a: int, h: int, field: Field) -> list[tuple[int, int]]:
    """Affine points of y^p - y = a*x^(p^h + 1); exactly p*q of them.

    The coefficient must be a nonzero trace-kernel element, which makes
    every fiber full.
    """
    if a == 0 or not in_trace_kernel(a, h, field):
        raise InvalidParameterError(
            "coefficient must be a nonzero trace-kernel element",
            token="invalid-generators")
    exp = field.p ** h + 1
    pts = []
    for x in field.elements():
        c = field.mul(a, field.pow(x, exp))
        ys = solve_artin_schreier(c, field)
        if len(ys) != field.p:
            raise InvalidParameterError(
                f"fiber over x={x} has {len(ys)} points, expected {field.p}",
                token="partial-fiber")
        pts.extend((x, y) for y in ys)
    return pts


@dataclass(frozen=True)
class CoverDescriptor:
    """One component cover of the base line.

    cover_degree is the fiber size d_h; coord_degree is the pole degree of
    the fiber coordinate as a map to the projective line (it drives the
    distance bound, and generally differs from d_h).
    """

    kind: str
    field: Field
    cover_degree: int
    coord_degree: int
    ramified_base_values: frozenset = dc_field(default_factory=frozenset)
    coefficient: int | None = None   # artin-schreier: the kernel element a
    q0: int | None = None            # hermitian / norm-power: the small q
    root_degree: int | None = None   # norm-power: M = (q^N+1)/(q+1)

    def fiber(self, base_value: int) -> tuple[int, ...]:
        """Coordinate values above an affine base value, sorted by index."""
        f = self.field
        if self.kind == "artin-schreier":
            h = (f.m // 2)
            c = f.mul(self.coefficient, f.pow(base_value, f.p ** h + 1))
            return solve_artin_schreier(c, f)
        if self.kind == "hermitian":
            return solve_hermitian(base_value, self.q0, f)
        if self.kind == "norm-power":
            c = f.sub(f.pow(base_value, self.q0 ** 2), base_value)
            return solve_power(c, self.root_degree, f)
        if self.kind == "projective-line":
            return (base_value,)
        raise InvalidParameterError(f"unknown cover kind {self.kind!r}",
                                    token="bad-cover")


def artin_schreier_cover(a: int, h: int, field: Field) -> CoverDescriptor:
    if field.m != 2 * h:
        raise InvalidParameterError(
            f"expected GF(p^{2 * h}), got {field!r}", token="bad-degree")
    if a == 0 or not in_trace_kernel(a, h, field):
        raise InvalidParameterError(
            "coefficient must be a nonzero trace-kernel element",
            token="invalid-generators")
    return CoverDescriptor(
        kind="artin-schreier",
        field=field,
        cover_degree=field.p,
        coord_degree=field.p ** h + 1,
        ramified_base_values=frozenset({INFINITY}),
        coefficient=a,
    )


def hermitian_cover(q0: int, field: Field) -> CoverDescriptor:
    _check_hermitian_subfield(q0, field)
    return CoverDescriptor(
        kind="hermitian",
        field=field,
        cover_degree=q0,
        coord_degree=q0 + 1,
        ramified_base_values=frozenset({INFINITY}),
        q0=q0,
    )


def norm_power_cover(q0: int, N: int, field: Field) -> CoverDescriptor:
    """Cover z^M = y^(q0^2) - y with M = (q0^N + 1)/(q0 + 1).

    Ramified over infinity and over every base value in GF(q0^2), where the
    right-hand side vanishes and the fiber degenerates to {0}.
    """
    if N < 3 or N % 2 == 0:
        raise InvalidParameterError(f"N={N} must be odd and >= 3", token="N-not-odd")
    M = (q0 ** N + 1) // (q0 + 1)
    if M * (q0 + 1) != q0 ** N + 1:
        raise InvalidParameterError("inconsistent norm-power degree",
                                    token="bad-parameter")  # pragma: no cover
    p0, e0 = _prime_power(q0)
    if field.p != p0 or field.m != 2 * N * e0:
        raise InvalidParameterError(
            f"expected GF({q0}^{2 * N}), got {field!r}", token="bad-degree")
    subfield = frozenset(field.subfield_elements(2 * e0))
    return CoverDescriptor(
        kind="norm-power",
        field=field,
        cover_degree=M,
        coord_degree=q0 ** 2,
        ramified_base_values=subfield | {INFINITY},
        q0=q0,
        root_degree=M,
    )
