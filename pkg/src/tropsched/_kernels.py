"""Integer fast path: max-plus kernels on int64 arrays with a bottom sentinel.

Finite entries are accepted only up to |v| <= 2**50 and the sentinel sits at
-2**62, so adding two clamped values can never wrap below the int64 minimum.
Every kernel re-clamps its output to the sentinel, which keeps the drift of
"bottom plus finite" sums bounded; anything at or below -2**61 converts back
to the bottom element.
"""

from __future__ import annotations

try:
    import numpy as np
except ImportError:  # pragma: no cover - numpy is a declared dependency
    np = None

NEG = -(1 << 62)
MAG_CAP = 1 << 50
BOTTOM_CUTOFF = -(1 << 61)


def available() -> bool:
    return np is not None


def from_payload_rows(rows):
    """int64 array for integer payload rows, or None if not representable."""
    flat = []
    push = flat.append
    for row in rows:
        for v in row:
            if v is None:
                push(NEG)
            elif type(v) is int and -MAG_CAP <= v <= MAG_CAP:
                push(v)
            else:
                return None
    m = len(rows)
    n = len(rows[0]) if m else 0
    return np.array(flat, dtype=np.int64).reshape(m, n)


def from_payload_vec(entries):
    out = np.empty(len(entries), dtype=np.int64)
    for i, v in enumerate(entries):
        if v is None:
            out[i] = NEG
        elif type(v) is int and -MAG_CAP <= v <= MAG_CAP:
            out[i] = v
        else:
            return None
    return out


def to_payload_rows(arr):
    return tuple(
        tuple(None if x <= BOTTOM_CUTOFF else x for x in row)
        for row in arr.tolist()
    )


def to_payload_vec(arr):
    return tuple(None if x <= BOTTOM_CUTOFF else x for x in arr.tolist())


def matmul(a, b):
    m, k = a.shape
    n = b.shape[1]
    if k == 0:
        return np.full((m, n), NEG, dtype=np.int64)
    out = np.empty((m, n), dtype=np.int64)
    for i in range(m):
        np.max(a[i, :, None] + b, axis=0, out=out[i])
    np.maximum(out, NEG, out=out)
    return out


def matvec(a, v):
    if a.shape[1] == 0:
        return np.full(a.shape[0], NEG, dtype=np.int64)
    return np.maximum(np.max(a + v[None, :], axis=1), NEG)


def vecmat(v, a):
    if a.shape[0] == 0:
        return np.full(a.shape[1], NEG, dtype=np.int64)
    return np.maximum(np.max(v[:, None] + a, axis=0), NEG)


def closure(a):
    """Floyd-Warshall transitive closure A+ (max-plus), input left intact."""
    d = a.copy()
    n = d.shape[0]
    for k in range(n):
        np.maximum(d, d[:, k, None] + d[None, k, :], out=d)
        np.maximum(d, NEG, out=d)
    return d


def new_bottom(m, n):
    return np.full((m, n), NEG, dtype=np.int64)


def outer_acc(acc, v, w):
    """acc = acc max (v_i + w_j), in place."""
    np.maximum(acc, v[:, None] + w[None, :], out=acc)
    np.maximum(acc, NEG, out=acc)


def scale_max(acc, scale, base):
    """(acc + scale) max base, clamped."""
    return np.maximum(np.maximum(acc + scale, NEG), base)
