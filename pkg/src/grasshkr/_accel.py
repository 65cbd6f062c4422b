"""Hot kernels: sparse polynomial merges for exterior powers and batched
reflection into the dominant chamber.

Each kernel has a numba version and a numpy version.  Setting
``GRASSHKR_NO_NUMBA=1`` (or not having numba installed) selects numpy.
"""

import os

import numpy as np

try:
    import numba as nb
except ImportError:  # pragma: no cover
    nb = None


def _want_numba():
    return nb is not None and os.environ.get("GRASSHKR_NO_NUMBA", "") not in ("1", "true", "yes")


USE_NUMBA = _want_numba()


def merge_shifted_numpy(keys_a, cnt_a, keys_b, cnt_b, shift):
    """Return (keys, counts) of the sum of two sparse polynomials, the second shifted."""
    keys = np.concatenate((keys_a, keys_b + shift))
    cnts = np.concatenate((cnt_a, cnt_b))
    uniq, inv = np.unique(keys, return_inverse=True)
    out = np.zeros(uniq.size, dtype=np.int64)
    # integer scatter-add; bincount would go through float64
    np.add.at(out, inv, cnts)
    return uniq, out


def dominant_chamber_numpy(V, A):
    """Reflect each row of V into the dominant chamber.

    Returns (D, steps) where steps counts the simple reflections used.
    A row of D has a zero entry exactly when the input row was singular.
    """
    V = np.array(V, dtype=np.int64, copy=True)
    steps = np.zeros(V.shape[0], dtype=np.int64)
    At = A.T.copy()
    while True:
        neg = V < 0
        rows = np.flatnonzero(neg.any(axis=1))
        if rows.size == 0:
            return V, steps
        i = neg[rows].argmax(axis=1)
        c = V[rows, i]
        V[rows] -= c[:, None] * At[i]
        steps[rows] += 1


if nb is not None:

    @nb.njit(cache=True)
    def merge_shifted_numba(keys_a, cnt_a, keys_b, cnt_b, shift):
        na, nb_ = keys_a.size, keys_b.size
        keys = np.empty(na + nb_, dtype=np.int64)
        cnts = np.empty(na + nb_, dtype=np.int64)
        i = j = k = 0
        while i < na and j < nb_:
            kb = keys_b[j] + shift
            if keys_a[i] < kb:
                keys[k] = keys_a[i]
                cnts[k] = cnt_a[i]
                i += 1
            elif keys_a[i] > kb:
                keys[k] = kb
                cnts[k] = cnt_b[j]
                j += 1
            else:
                keys[k] = kb
                cnts[k] = cnt_a[i] + cnt_b[j]
                i += 1
                j += 1
            k += 1
        while i < na:
            keys[k] = keys_a[i]
            cnts[k] = cnt_a[i]
            i += 1
            k += 1
        while j < nb_:
            keys[k] = keys_b[j] + shift
            cnts[k] = cnt_b[j]
            j += 1
            k += 1
        return keys[:k].copy(), cnts[:k].copy()

    @nb.njit(cache=True)
    def dominant_chamber_numba(V, A):
        m, n = V.shape
        D = V.copy()
        steps = np.zeros(m, dtype=np.int64)
        for r in range(m):
            while True:
                hit = -1
                for i in range(n):
                    if D[r, i] < 0:
                        hit = i
                        break
                if hit < 0:
                    break
                c = D[r, hit]
                for t in range(n):
                    D[r, t] -= c * A[t, hit]
                steps[r] += 1
        return D, steps

else:  # pragma: no cover
    merge_shifted_numba = None
    dominant_chamber_numba = None


def merge_shifted(keys_a, cnt_a, keys_b, cnt_b, shift):
    if USE_NUMBA:
        return merge_shifted_numba(keys_a, cnt_a, keys_b, cnt_b, np.int64(shift))
    return merge_shifted_numpy(keys_a, cnt_a, keys_b, cnt_b, shift)


def dominant_chamber(V, A):
    V = np.ascontiguousarray(V, dtype=np.int64)
    A = np.ascontiguousarray(A, dtype=np.int64)
    if V.ndim != 2:
        raise ValueError("expected a 2-d array of weights")
    if USE_NUMBA:
        return dominant_chamber_numba(V, A)
    return dominant_chamber_numpy(V, A)


def backend():
    return "numba" if USE_NUMBA else "numpy"
