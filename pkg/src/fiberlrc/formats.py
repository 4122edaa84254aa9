"""Bit-exact flat-file formats.

Descriptor files are line-oriented UTF-8 ``key=value`` with a fixed key
vocabulary; unknown keys are rejected so two implementations cannot
silently disagree.  Symbol files hold whitespace-separated decimal element
indices with ``*`` marking an erasure.  Matrix files carry an ``n k q``
header and k rows of n indices.
"""

from __future__ import annotations

from pathlib import Path

import numpy as np

from .exceptions import FormatError
from .families import build_artin_schreier, build_gk
from .galois import get_field
from .lrc import CodeBundle
from .recovery import ERASED

_KNOWN_KEYS = {"format", "family", "p", "m", "modulus", "t",
               "q_gk", "N", "l", "rho"}


def descriptor_to_lines(bundle: CodeBundle) -> list[str]:
    code = bundle.descriptor
    field = code.field
    lines = [
        "format=LRC1",
        f"family={code.family}",
        f"p={field.p}",
        f"m={field.m}",
        "modulus=" + ",".join(str(c) for c in field.modulus),
        f"t={code.t}",
    ]
    if code.family == "artin-schreier":
        for i, a in enumerate(bundle.generators, start=1):
            lines.append(f"a_{i}={a}")
    elif code.family == "gk":
        lines.append(f"q_gk={bundle.covers[1].q0}")
        lines.append(f"N={_gk_N(bundle)}")
    lines.append(f"l={code.l}")
    lines.append(f"rho={code.rho}")
    return lines


def _gk_N(bundle: CodeBundle) -> int:
    q0 = bundle.covers[1].q0
    M = bundle.covers[0].cover_degree
    N = 1
    while (q0 ** N + 1) // (q0 + 1) != M or (q0 ** N + 1) % (q0 + 1):
        N += 2
        if N > 99:  # pragma: no cover
            raise FormatError("cannot recover N from cover degrees")
    return N


def write_descriptor(path, bundle: CodeBundle):
    Path(path).write_text("\n".join(descriptor_to_lines(bundle)) + "\n",
                          encoding="utf-8")


def parse_descriptor(text: str) -> dict[str, str]:
    entries: dict[str, str] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line:
            continue
        if "=" not in line:
            raise FormatError(f"line {lineno}: expected key=value", token="bad-line")
        key, value = line.split("=", 1)
        generator_key = key.startswith("a_") and key[2:].isdigit()
        if key not in _KNOWN_KEYS and not generator_key:
            raise FormatError(f"line {lineno}: unknown key {key!r}",
                              token="unknown-key")
        if key in entries:
            raise FormatError(f"line {lineno}: duplicate key {key!r}",
                              token="duplicate-key")
        entries[key] = value
    return entries


def _require(entries: dict[str, str], key: str) -> str:
    if key not in entries:
        raise FormatError(f"missing key {key!r}", token="missing-key")
    return entries[key]


def _int_value(entries: dict[str, str], key: str) -> int:
    try:
        return int(_require(entries, key))
    except ValueError:
        raise FormatError(f"key {key!r} is not an integer", token="bad-value")


def load_descriptor(path) -> CodeBundle:
    """Rebuild the full code bundle described by a descriptor file."""
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError:
        raise FormatError(f"cannot read {path}", token="file-not-found")
    entries = parse_descriptor(text)
    if _require(entries, "format") != "LRC1":
        raise FormatError("unsupported format tag", token="bad-format")
    family = _require(entries, "family")
    p = _int_value(entries, "p")
    m = _int_value(entries, "m")
    try:
        modulus = tuple(int(c) for c in _require(entries, "modulus").split(","))
    except ValueError:
        raise FormatError("modulus coefficients must be integers", token="bad-value")
    field = get_field(p, m, modulus)
    l = _int_value(entries, "l")
    rho = _int_value(entries, "rho")
    if family == "artin-schreier":
        if m % 2:
            raise FormatError("artin-schreier needs even extension degree",
                              token="bad-value")
        t = _int_value(entries, "t")
        generators = [_int_value(entries, f"a_{i}") for i in range(1, t + 1)]
        return build_artin_schreier(p, m // 2, t, l=l, rho=rho,
                                    generators=generators, field=field)
    if family == "gk":
        q_gk = _int_value(entries, "q_gk")
        N = _int_value(entries, "N")
        if q_gk ** (2 * N) != p ** m:
            raise FormatError("field size does not match q_gk^(2N)",
                              token="bad-value")
        return build_gk(q_gk, N, l=l, rho=rho, field=field, allow_large=True)
    raise FormatError(f"unknown family {family!r}", token="bad-family")


# ---------------------------------------------------------------------------
# Symbol words
# ---------------------------------------------------------------------------

def write_symbols(path, word):
    tokens = ["*" if int(x) == ERASED else str(int(x)) for x in word]
    Path(path).write_text("\n".join(tokens) + "\n", encoding="utf-8")


def read_symbols(path, q: int | None = None) -> np.ndarray:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError:
        raise FormatError(f"cannot read {path}", token="file-not-found")
    out = []
    for tok in text.split():
        if tok == "*":
            out.append(ERASED)
            continue
        try:
            v = int(tok)
        except ValueError:
            raise FormatError(f"bad symbol token {tok!r}", token="bad-token")
        if v < 0 or (q is not None and v >= q):
            raise FormatError(f"symbol {v} out of range", token="element-out-of-range")
        out.append(v)
    return np.array(out, dtype=np.int32)


# ---------------------------------------------------------------------------
# Matrices
# ---------------------------------------------------------------------------

def write_matrix(path, matrix, q: int):
    matrix = np.asarray(matrix)
    k, n = matrix.shape
    lines = [f"{n} {k} {q}"]
    for row in matrix:
        lines.append(" ".join(str(int(x)) for x in row))
    Path(path).write_text("\n".join(lines) + "\n", encoding="utf-8")


def read_matrix(path) -> tuple[np.ndarray, int]:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError:
        raise FormatError(f"cannot read {path}", token="file-not-found")
    lines = [ln for ln in text.splitlines() if ln.strip()]
    if not lines:
        raise FormatError("empty matrix file", token="bad-file")
    try:
        n, k, q = (int(x) for x in lines[0].split())
    except ValueError:
        raise FormatError("bad matrix header", token="bad-header")
    if len(lines) != k + 1:
        raise FormatError(f"expected {k} rows, found {len(lines) - 1}",
                          token="bad-file")
    rows = []
    for ln in lines[1:]:
        row = [int(x) for x in ln.split()]
        if len(row) != n or any(not 0 <= x < q for x in row):
            raise FormatError("bad matrix row", token="bad-file")
        rows.append(row)
    return np.array(rows, dtype=np.uint16), q


# ---------------------------------------------------------------------------
# Informational exports (points / partitions)
# ---------------------------------------------------------------------------

def write_points(path, bundle: CodeBundle):
    es = bundle.eval_set
    lines = [f"n={es.n} t={es.t} q={bundle.field.q}"]
    for i in range(es.n):
        b, cs = es.point(i)
        lines.append(str(b) + " " + " ".join(str(c) for c in cs))
    Path(path).write_text("\n".join(lines) + "\n", encoding="utf-8")


def write_partitions(path, bundle: CodeBundle):
    st = bundle.structure
    lines = [f"n={st.n} t={st.t}"]
    for j in range(st.t):
        for cid, members in enumerate(st.classes[j]):
            lines.append(f"{j + 1} {cid}: " + " ".join(str(x) for x in members))
    Path(path).write_text("\n".join(lines) + "\n", encoding="utf-8")
