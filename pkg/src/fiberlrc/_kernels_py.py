"""Pure-Python (numpy) kernels, signature-compatible with the compiled ones.

Selected automatically when the extension is missing or when
FIBERLRC_BACKEND=python is set.  Table lookups become fancy-indexing
gathers; correctness is identical to the compiled path.
"""

import numpy as np


def _gather2(table: np.ndarray, a: np.ndarray, b: np.ndarray, q: int) -> np.ndarray:
    return table[a.astype(np.int64) * q + b]


def horner_eval(coeffs, xs, mul_flat, add_flat, q):
    coeffs = np.asarray(coeffs, dtype=np.uint16)
    xs = np.asarray(xs, dtype=np.uint16)
    T, L = coeffs.shape
    S = xs.shape[0]
    out = np.zeros((T, S), dtype=np.uint16)
    xb = np.broadcast_to(xs, (T, S))
    for d in range(L - 1, -1, -1):
        out = _gather2(add_flat, _gather2(mul_flat, out, xb, q),
                       np.broadcast_to(coeffs[:, d : d + 1], (T, S)), q)
    return out


def combine_monomials(mono, pvals, base_idx, mul_flat, add_flat, q):
    mono = np.asarray(mono, dtype=np.uint16)
    T, n = mono.shape
    out = np.zeros(n, dtype=np.uint16)
    for t in range(T):
        prod = _gather2(mul_flat, mono[t], pvals[t][base_idx], q)
        out = _gather2(add_flat, out, prod, q)
    return out


def matvec(rows, vec, mul_flat, add_flat, q):
    rows = np.asarray(rows, dtype=np.uint16)
    k, n = rows.shape
    out = np.zeros(n, dtype=np.uint16)
    for r in range(k):
        s = int(vec[r])
        if s == 0:
            continue
        prod = mul_flat[s * q + rows[r].astype(np.int64)]
        out = _gather2(add_flat, out, prod, q)
    return out


def min_weight(rows, inc_delta, mul_flat, add_flat, q):
    rows = np.asarray(rows, dtype=np.uint16)
    k, n = rows.shape
    total = q ** k
    cw = np.zeros(n, dtype=np.uint16)
    dig = [0] * k
    rows64 = rows.astype(np.int64)
    best = n + 1
    for _ in range(total - 1):
        r = 0
        while True:
            v = dig[r]
            d = int(inc_delta[v])
            prod = mul_flat[d * q + rows64[r]]
            cw = _gather2(add_flat, cw, prod, q)
            if v + 1 == q:
                dig[r] = 0
                r += 1
            else:
                dig[r] = v + 1
                break
        wt = int(np.count_nonzero(cw))
        if wt < best:
            best = wt
    return best
