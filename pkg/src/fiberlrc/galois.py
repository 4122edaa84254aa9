"""Exact arithmetic in GF(p^m) with an integer element encoding.

An element c_0 + c_1*u + ... + c_{m-1}*u^{m-1} (u the residue of the modulus
variable) is encoded as the index sum(c_i * p^i), so index 0 is the additive
identity and index 1 the multiplicative identity.  The encoding is a
bijection [0, p^m) <-> field elements and serializes as a plain decimal.

Moduli are monic irreducible polynomials over GF(p), stored little-endian
(c_0, ..., c_m).  Construction validates irreducibility with Rabin's test.
For small fields the constructor materializes full q x q addition and
multiplication tables plus log/antilog tables; the vectorized kernels and
the table-based scalar operations both run off these.
"""

from __future__ import annotations

import functools
import math

import numpy as np

from .exceptions import FieldMismatchError, InvalidModulusError, InvalidParameterError

# Fields up to this size get dense q x q pair tables (add/mul); beyond it
# only log/antilog tables are built and vectorized kernels are unavailable.
PAIR_TABLE_LIMIT = 1024
LOG_TABLE_LIMIT = 1 << 16

# Pinned moduli.  GF(9) uses u^2+1 and GF(3^6) uses the modulus whose
# residue powers 350, 210, 490 are the shipped generator preset; other
# fields fall back to a deterministic search (smallest index first).
PINNED_MODULI: dict[tuple[int, int], tuple[int, ...]] = {
    (3, 2): (1, 0, 1),
    (3, 6): (2, 2, 1, 0, 2, 0, 1),
}


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    for d in range(2, math.isqrt(n) + 1):
        if n % d == 0:
            return False
    return True


def _prime_factors(n: int) -> list[int]:
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


# ---------------------------------------------------------------------------
# Polynomial arithmetic over GF(p), used only for field construction.
# Coefficient lists are little-endian.
# ---------------------------------------------------------------------------

def _poly_trim(a: list[int]) -> list[int]:
    while len(a) > 1 and a[-1] == 0:
        a.pop()
    return a


def _poly_mulmod(a: list[int], b: list[int], mod: tuple[int, ...], p: int) -> list[int]:
    m = len(mod) - 1
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] = (out[i + j] + ai * bj) % p
    for d in range(len(out) - 1, m - 1, -1):
        c = out[d]
        if c:
            for i in range(m + 1):
                out[d - m + i] = (out[d - m + i] - c * mod[i]) % p
    out = out[:m]
    out.extend([0] * (m - len(out)))
    return out


def _poly_powmod(a: list[int], n: int, mod: tuple[int, ...], p: int) -> list[int]:
    m = len(mod) - 1
    result = [1] + [0] * (m - 1)
    base = list(a)
    while n:
        if n & 1:
            result = _poly_mulmod(result, base, mod, p)
        base = _poly_mulmod(base, base, mod, p)
        n >>= 1
    return result


def _poly_gcd(a: list[int], b: list[int], p: int) -> list[int]:
    a, b = _poly_trim(list(a)), _poly_trim(list(b))
    while b != [0]:
        # a mod b
        a = list(a)
        inv_lead = pow(b[-1], p - 2, p)
        while len(a) >= len(b) and a != [0]:
            coef = (a[-1] * inv_lead) % p
            shift = len(a) - len(b)
            for i, bc in enumerate(b):
                a[shift + i] = (a[shift + i] - coef * bc) % p
            a = _poly_trim(a)
            if len(a) < len(b):
                break
        a, b = b, a
    return a


def _is_irreducible(mod: tuple[int, ...], p: int) -> bool:
    """Rabin's test: u^(p^m) = u mod f, and gcd(u^(p^(m/l)) - u, f) = 1
    for every prime l dividing m."""
    m = len(mod) - 1
    if m == 1:
        return True
    u = [0, 1] + [0] * (m - 2)
    frob = list(u)
    powers = {}
    for step in range(1, m + 1):
        frob = _poly_powmod(frob, p, mod, p)
        powers[step] = list(frob)
    if powers[m] != u:
        return False
    for ell in _prime_factors(m):
        diff = [(x - y) % p for x, y in zip(powers[m // ell], u)]
        g = _poly_gcd(list(mod), diff, p)
        if len(_poly_trim(g)) > 1:
            return False
    return True


def default_modulus(p: int, m: int) -> tuple[int, ...]:
    """Pinned modulus if one is shipped, else the smallest-index monic
    irreducible of degree m (deterministic across runs)."""
    pinned = PINNED_MODULI.get((p, m))
    if pinned is not None:
        return pinned
    if m == 1:
        return (0, 1)
    for low in range(p ** m):
        coeffs = []
        v = low
        for _ in range(m):
            coeffs.append(v % p)
            v //= p
        cand = tuple(coeffs) + (1,)
        if cand[0] != 0 and _is_irreducible(cand, p):
            return cand
    raise InvalidModulusError(f"no irreducible modulus found for GF({p}^{m})")


class Field:
    """GF(p^m) with integer-indexed elements.

    All scalar operations take and return indices in [0, q).  The instance
    and its tables are immutable after construction and safe to share.
    """

    def __init__(self, p: int, m: int, modulus: tuple[int, ...] | None = None):
        if not _is_prime(p):
            raise InvalidParameterError(f"p={p} is not prime", token="p-not-prime")
        if m < 1:
            raise InvalidParameterError(f"extension degree m={m} must be >= 1", token="bad-degree")
        if modulus is None:
            modulus = default_modulus(p, m)
        modulus = tuple(int(c) % p for c in modulus)
        if len(modulus) != m + 1 or modulus[-1] != 1:
            raise InvalidModulusError(
                f"modulus must be monic of degree {m}, got {modulus}")
        if not _is_irreducible(modulus, p):
            raise InvalidModulusError(f"modulus {modulus} is reducible over GF({p})")
        self.p = p
        self.m = m
        self.q = p ** m
        self.modulus = modulus
        self._p_powers = tuple(p ** i for i in range(m))
        self._build_tables()

    # -- construction helpers ------------------------------------------------

    def _index(self, coeffs: list[int]) -> int:
        v = 0
        for c in reversed(coeffs):
            v = v * self.p + c
        return v

    def _coeffs(self, a: int) -> list[int]:
        out = []
        for _ in range(self.m):
            out.append(a % self.p)
            a //= self.p
        return out

    def _find_generator(self) -> int:
        factors = _prime_factors(self.q - 1)
        for g in range(2, self.q):
            coeffs = self._coeffs(g)
            if all(
                _poly_powmod(coeffs, (self.q - 1) // ell, self.modulus, self.p)
                != [1] + [0] * (self.m - 1)
                for ell in factors
            ):
                return g
        raise InvalidModulusError("no multiplicative generator found")  # pragma: no cover

    def _build_tables(self):
        q, p = self.q, self.p
        self.exp_table = None
        self.log_table = None
        self.add_flat = None
        self.mul_flat = None
        self.neg_table = None
        self.inv_table = None
        if q > LOG_TABLE_LIMIT:
            return
        gen = self._find_generator() if q > 2 else 1
        self.generator = gen
        exp = np.zeros(2 * (q - 1), dtype=np.uint16)
        log = np.zeros(q, dtype=np.int64)
        cur = [1] + [0] * (self.m - 1)
        gcoef = self._coeffs(gen)
        for i in range(q - 1):
            idx = self._index(cur)
            exp[i] = idx
            exp[i + q - 1] = idx
            log[idx] = i
            cur = _poly_mulmod(cur, gcoef, self.modulus, p)
        log[0] = -1
        self.exp_table = exp
        self.log_table = log
        if q > PAIR_TABLE_LIMIT:
            return
        # digit matrix: row a = base-p digits of a
        digits = np.zeros((q, self.m), dtype=np.int64)
        vals = np.arange(q)
        for i in range(self.m):
            digits[:, i] = vals % p
            vals = vals // p
        pw = np.array(self._p_powers, dtype=np.int64)
        add = ((digits[:, None, :] + digits[None, :, :]) % p) @ pw
        self.add_flat = add.astype(np.uint16).reshape(-1)
        self.neg_table = (((-digits) % p) @ pw).astype(np.uint16)
        mul = np.zeros((q, q), dtype=np.uint16)
        la = log[1:q]
        mul[1:, 1:] = exp[(la[:, None] + la[None, :]) % (q - 1)]
        self.mul_flat = mul.reshape(-1)
        inv = np.zeros(q, dtype=np.uint16)
        inv[1:] = exp[(q - 1 - log[1:q]) % (q - 1)]
        self.inv_table = inv

    # -- predicates ----------------------------------------------------------

    @property
    def has_pair_tables(self) -> bool:
        return self.add_flat is not None

    def _check(self, a: int) -> int:
        if not 0 <= a < self.q:
            raise InvalidParameterError(
                f"element index {a} out of range for GF({self.q})",
                token="element-out-of-range")
        return a

    # -- scalar arithmetic on indices ----------------------------------------

    def add(self, a: int, b: int) -> int:
        self._check(a)
        self._check(b)
        if self.add_flat is not None:
            return int(self.add_flat[a * self.q + b])
        ca, cb = self._coeffs(a), self._coeffs(b)
        return self._index([(x + y) % self.p for x, y in zip(ca, cb)])

    def neg(self, a: int) -> int:
        self._check(a)
        if self.neg_table is not None:
            return int(self.neg_table[a])
        return self._index([(-x) % self.p for x in self._coeffs(a)])

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg(b))

    def mul(self, a: int, b: int) -> int:
        self._check(a)
        self._check(b)
        if a == 0 or b == 0:
            return 0
        if self.mul_flat is not None:
            return int(self.mul_flat[a * self.q + b])
        if self.log_table is not None:
            return int(self.exp_table[self.log_table[a] + self.log_table[b]])
        return self._index(
            _poly_mulmod(self._coeffs(a), self._coeffs(b), self.modulus, self.p))

    def inv(self, a: int) -> int:
        self._check(a)
        if a == 0:
            raise ZeroDivisionError("inverse of 0 in GF")
        if self.inv_table is not None:
            return int(self.inv_table[a])
        return self.pow(a, self.q - 2)

    def div(self, a: int, b: int) -> int:
        return self.mul(a, self.inv(b))

    def pow(self, a: int, n: int) -> int:
        """a^n for n >= 0; 0^0 is 1."""
        self._check(a)
        if n < 0:
            raise InvalidParameterError("negative exponent", token="bad-exponent")
        if n == 0:
            return 1
        if a == 0:
            return 0
        if self.log_table is not None:
            return int(self.exp_table[(int(self.log_table[a]) * n) % (self.q - 1)])
        return self._index(_poly_powmod(self._coeffs(a), n, self.modulus, self.p))

    def subfield_trace(self, a: int, d: int) -> int:
        """Relative trace into GF(p^d): sum of a^(p^(d*i)) for i < m/d."""
        if self.m % d != 0:
            raise InvalidParameterError(
                f"d={d} does not divide extension degree {self.m}", token="bad-subfield")
        acc = 0
        term = self._check(a)
        step = self.p ** d
        for _ in range(self.m // d):
            acc = self.add(acc, term)
            term = self.pow(term, step)
        return acc

    def absolute_trace(self, a: int) -> int:
        return self.subfield_trace(a, 1)

    def in_subfield(self, a: int, d: int) -> bool:
        """True iff a lies in the subfield GF(p^d)."""
        if self.m % d != 0:
            return False
        return self.pow(a, self.p ** d) == a

    def subfield_elements(self, d: int) -> list[int]:
        if self.m % d != 0:
            raise InvalidParameterError(
                f"GF({self.p}^{d}) is not a subfield of GF({self.p}^{self.m})",
                token="bad-subfield")
        return [a for a in range(self.q) if self.in_subfield(a, d)]

    # -- misc ----------------------------------------------------------------

    def element(self, index: int) -> "FieldElement":
        return FieldElement(self, self._check(index))

    def elements(self):
        return range(self.q)

    def key(self) -> tuple[int, int, tuple[int, ...]]:
        return (self.p, self.m, self.modulus)

    def __eq__(self, other):
        return isinstance(other, Field) and self.key() == other.key()

    def __hash__(self):
        return hash(self.key())

    def __repr__(self):
        if self.m == 1:
            return f"GF({self.p})"
        return f"GF({self.p}^{self.m})"


@functools.lru_cache(maxsize=32)
def get_field(p: int, m: int, modulus: tuple[int, ...] | None = None) -> Field:
    """Memoized field constructor; table building is the expensive part."""
    return Field(p, m, modulus)


class FieldElement:
    """Thin operator wrapper around (field, index) for scalar work.

    Hot paths use raw indices; this exists for convenient expression-level
    math and enforces that operands share a field.
    """

    __slots__ = ("field", "index")

    def __init__(self, field: Field, index: int):
        self.field = field
        self.index = field._check(index)

    def _coerce(self, other) -> int:
        if isinstance(other, FieldElement):
            if other.field != self.field:
                raise FieldMismatchError(
                    f"operands from {self.field!r} and {other.field!r}")
            return other.index
        if isinstance(other, int):
            return self.field._check(other)
        raise TypeError(f"cannot combine FieldElement with {type(other).__name__}")

    def __add__(self, other):
        return FieldElement(self.field, self.field.add(self.index, self._coerce(other)))

    __radd__ = __add__

    def __neg__(self):
        return FieldElement(self.field, self.field.neg(self.index))

    def __sub__(self, other):
        return FieldElement(self.field, self.field.sub(self.index, self._coerce(other)))

    def __mul__(self, other):
        return FieldElement(self.field, self.field.mul(self.index, self._coerce(other)))

    __rmul__ = __mul__

    def __truediv__(self, other):
        return FieldElement(self.field, self.field.div(self.index, self._coerce(other)))

    def __pow__(self, n: int):
        return FieldElement(self.field, self.field.pow(self.index, n))

    def trace(self, d: int = 1):
        return FieldElement(self.field, self.field.subfield_trace(self.index, d))

    def __eq__(self, other):
        if isinstance(other, int):
            return self.index == other
        return (isinstance(other, FieldElement)
                and other.field == self.field and other.index == self.index)

    def __hash__(self):
        return hash((self.field.key(), self.index))

    def __int__(self):
        return self.index

    def __repr__(self):
        return f"{self.index}@{self.field!r}"
