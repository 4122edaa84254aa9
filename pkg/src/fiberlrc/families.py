"""Turn-key constructors for the shipped code families.

Two families are fully constructible: multi-cover Artin-Schreier fiber
products (availability t, balanced locality p-1) and the generalized GK
fiber of a norm-power cover with a Hermitian cover (availability 2).  The
Suzuki family ships as a parameter calculator only; the fiber coordinate
functions needed to build it explicitly are not known.
"""

from __future__ import annotations

from dataclasses import dataclass

from .curves import (
    artin_schreier_cover,
    hermitian_cover,
    norm_power_cover,
    solve_hermitian,
    solve_power,
    trace_kernel_basis,
    in_trace_kernel,
    _prime_power,
)
from .exceptions import InvalidParameterError
from .galois import Field, get_field
from .lrc import (
    CodeBundle,
    CoverProfile,
    assemble_evaluation_set,
    code_parameters,
    monomial_basis,
)

# Largest field a GK build will enumerate without an explicit override.
DESK_FIELD_LIMIT = 3 ** 6

# Generator preset reproducing the published three-cover instance over
# GF(3^6): the residue powers 350, 210, 490 of the pinned modulus.
EXAMPLE_7_1_GENERATORS = (58, 91, 523)


def artin_schreier_parameters(p: int, h: int, t: int, l: int, rho: int = 1,
                              field: Field | None = None):
    if not 1 <= t <= h:
        raise InvalidParameterError(
            f"availability t={t} must satisfy 1 <= t <= h={h}",
            token="t-exceeds-h")
    q = p ** (2 * h)
    if field is None:
        field = get_field(p, 2 * h)
    profiles = [CoverProfile(p, p ** h + 1)] * t
    return code_parameters(field, "artin-schreier", profiles, s=q, l=l, rho=rho)


def build_artin_schreier(p: int, h: int, t: int, l: int, rho: int = 1,
                         generators=None, field: Field | None = None) -> CodeBundle:
    """Assemble the full availability-t bundle over GF(p^(2h)).

    Generators default to the first t elements of the deterministic
    trace-kernel basis; explicit ones must be independent kernel elements.
    """
    if field is None:
        field = get_field(p, 2 * h)
    descriptor = artin_schreier_parameters(p, h, t, l, rho, field)
    if generators is None:
        generators = trace_kernel_basis(p, h, field)[:t]
    generators = tuple(int(a) for a in generators)
    if len(generators) != t:
        raise InvalidParameterError(
            f"need {t} generators, got {len(generators)}",
            token="invalid-generators")
    span = {0}
    for a in generators:
        if a == 0 or not in_trace_kernel(a, h, field):
            raise InvalidParameterError(
                f"generator {a} is not a nonzero trace-kernel element",
                token="invalid-generators")
        if a in span:
            raise InvalidParameterError(
                f"generators are dependent over GF({p})", token="invalid-generators")
        span = {field.add(s0, field.mul(c, a)) for s0 in span for c in range(p)}
    covers = [artin_schreier_cover(a, h, field) for a in generators]
    eval_set, structure = assemble_evaluation_set(covers, field)
    if eval_set.n != descriptor.n or eval_set.s != descriptor.s:
        raise InvalidParameterError(
            f"assembled ({eval_set.n}, {eval_set.s}) != predicted "
            f"({descriptor.n}, {descriptor.s})", token="assembly-mismatch")
    return CodeBundle(descriptor, covers, eval_set, structure,
                      monomial_basis(descriptor), generators=generators)


def gk_parameters(q: int, N: int, l: int, rho: int = 1,
                  field: Field | None = None):
    if N < 3 or N % 2 == 0:
        raise InvalidParameterError(f"N={N} must be odd and >= 3", token="N-not-odd")
    p, e = _prime_power(q)
    M = (q ** N + 1) // (q + 1)
    s = q * q * (q ** (N - 1) - 1) * (q + 1)
    if field is None:
        field = get_field(p, 2 * N * e)
    profiles = [CoverProfile(M, q * q), CoverProfile(q, q + 1)]
    return code_parameters(field, "gk", profiles, s=s, l=l, rho=rho)


def build_gk(q: int, N: int, l: int, rho: int = 1, field: Field | None = None,
             allow_large: bool = False) -> CodeBundle:
    """Assemble the availability-2 bundle over GF(q^(2N)).

    Cover order is (norm-power, hermitian), so the locality vector is
    ((q^N+1)/(q+1) - 1, q - 1).  Fields beyond desk scale are refused
    unless allow_large is set.
    """
    p, e = _prime_power(q)
    if q ** (2 * N) > DESK_FIELD_LIMIT and not allow_large:
        raise InvalidParameterError(
            f"GF({q}^{2 * N}) exceeds the desk-scale limit; pass allow_large",
            token="field-too-large")
    if field is None:
        field = get_field(p, 2 * N * e)
    descriptor = gk_parameters(q, N, l, rho, field)
    covers = [norm_power_cover(q, N, field), hermitian_cover(q, field)]
    eval_set, structure = assemble_evaluation_set(covers, field)
    if eval_set.n != descriptor.n or eval_set.s != descriptor.s:
        raise InvalidParameterError(
            f"assembled ({eval_set.n}, {eval_set.s}) != predicted "
            f"({descriptor.n}, {descriptor.s})", token="assembly-mismatch")
    return CodeBundle(descriptor, covers, eval_set, structure,
                      monomial_basis(descriptor))


@dataclass(frozen=True)
class SuzukiParameterReport:
    """Published parameter formulas only; no construction is attempted."""

    q0: int
    q: int
    case: int
    n: int
    k: int
    locality: tuple[int, int]
    availability: int = 2
    d_floor: int = 3
    constructed: bool = False
    note: str = "construction not implemented: fiber coordinate functions unknown"


def suzuki_params(q0: int) -> tuple[SuzukiParameterReport, SuzukiParameterReport]:
    """Parameter reports for both published cases at q = 2*q0^2."""
    if q0 < 2 or q0 & (q0 - 1):
        raise InvalidParameterError(
            f"q0={q0} must be a power of two >= 2", token="q0-not-power-of-two")
    q = 2 * q0 * q0
    factor = q * q + 2 * q * q0 + q + 1
    case1 = SuzukiParameterReport(
        q0=q0, q=q, case=1, n=q * (q - 1), k=(q - 1) * (q - 2),
        locality=(q - 1, q - 2))
    case2 = SuzukiParameterReport(
        q0=q0, q=q, case=2, n=q * (q - 1) * factor, k=(q - 1) * (q - 2) * factor,
        locality=(q - 1, q - 2))
    return case1, case2


# ---------------------------------------------------------------------------
# Point-count identities (maximality checks run against these)
# ---------------------------------------------------------------------------

def artin_schreier_total_points(p: int, h: int, t: int, generators=None,
                                field: Field | None = None) -> int:
    """Rational points of the t-cover fiber product, infinity included."""
    if field is None:
        field = get_field(p, 2 * h)
    if generators is None:
        generators = trace_kernel_basis(p, h, field)[:t]
    covers = [artin_schreier_cover(a, h, field) for a in generators]
    total = 0
    for x in field.elements():
        cnt = 1
        for c in covers:
            cnt *= len(c.fiber(x))
        total += cnt
    return total + 1


def artin_schreier_genus(p: int, h: int, t: int) -> int:
    return (p ** t - 1) * p ** h // 2


def gk_total_points(q: int, N: int, field: Field | None = None) -> int:
    """Rational points of the normalized GK fiber, infinity included."""
    p, e = _prime_power(q)
    M = (q ** N + 1) // (q + 1)
    if field is None:
        field = get_field(p, 2 * N * e)
    total = 0
    for y in field.elements():
        hx = len(solve_hermitian(y, q, field))
        c = field.sub(field.pow(y, q * q), y)
        hz = len(solve_power(c, M, field))
        total += hx * hz
    return total + 1


def gk_expected_points(q: int, N: int) -> int:
    return q ** (2 * N + 2) - q ** (N + 3) + q ** (N + 2) + 1


PRESETS = {
    "example-7.1": lambda: build_artin_schreier(
        3, 3, 3, l=699, generators=EXAMPLE_7_1_GENERATORS),
    "gk-table-1": lambda: build_gk(3, 3, l=270),
}


def build_preset(name: str) -> CodeBundle:
    try:
        factory = PRESETS[name]
    except KeyError:
        raise InvalidParameterError(f"unknown preset {name!r}",
                                    token="unknown-preset") from None
    return factory()
