"""Compiled kernel for the pairwise Jacobi sums behind the harmonic energies."""

import os

import numba
import numpy as np
from numba import prange

if "NUMBA_THREADING_LAYER" not in os.environ:
    # the bundled TBB is too old; workqueue needs nothing external
    numba.config.THREADING_LAYER = "workqueue"

# reassociation lets the inner reduction vectorize; the reduction tree is
# still fixed by the compiled code, independent of the thread count
_FASTMATH = {"reassoc", "contract", "nsz", "arcp"}


@numba.njit(cache=True)
def _kahan_add(acc, comp, m, value):
    # compiled without fastmath so the compensation survives
    y = value - comp[m]
    t = acc[m] + y
    comp[m] = (t - acc[m]) - y
    acc[m] = t


@numba.njit(parallel=True, fastmath=_FASTMATH, cache=True)
def tile_energies(cos, w, tiles, r1s, r1o, A, B, C, m_max, seg):
    """Per-tile sums S_m = sum over the tile's pairs of w_j w_k R_m(t_jk).

    ``tiles`` rows are (row0, row1, col0, col1, diagonal_flag); pairs below the
    diagonal are skipped and off-diagonal pairs counted twice.  Row sums are
    accumulated with Kahan compensation in row order.
    """
    n_tiles = tiles.shape[0]
    out = np.zeros((n_tiles, m_max + 1))
    for t in prange(n_tiles):
        i0 = tiles[t, 0]
        i1 = tiles[t, 1]
        k0 = tiles[t, 2]
        k1 = tiles[t, 3]
        diag = tiles[t, 4]
        acc = np.zeros(m_max + 1)
        comp = np.zeros(m_max + 1)
        x = np.empty(seg)
        ww = np.empty(seg)
        r0 = np.empty(seg)
        r1 = np.empty(seg)
        for i in range(i0, i1):
            ks = k0
            if diag == 1 and i > k0:
                ks = i
            n = k1 - ks
            if n <= 0:
                continue
            wi = w[i]
            s0 = 0.0
            s1 = 0.0
            for j in range(n):
                k = ks + j
                xv = cos[i, k]
                x[j] = xv
                f = 2.0
                if k == i:
                    f = 1.0
                wv = f * wi * w[k]
                ww[j] = wv
                r0[j] = 1.0
                rv = r1s * xv + r1o
                r1[j] = rv
                s0 += wv
                s1 += wv * rv
            _kahan_add(acc, comp, 0, s0)
            if m_max >= 1:
                _kahan_add(acc, comp, 1, s1)
            for m in range(2, m_max + 1):
                a = A[m]
                b = B[m]
                c = C[m]
                s = 0.0
                for j in range(n):
                    rv = (a * x[j] + b) * r1[j] - c * r0[j]
                    r0[j] = r1[j]
                    r1[j] = rv
                    s += ww[j] * rv
                _kahan_add(acc, comp, m, s)
        for m in range(m_max + 1):
            out[t, m] = acc[m]
    return out


def make_tiles(n: int, tile_size: int) -> np.ndarray:
    """Upper-triangular tile list in fixed row-major order."""
    starts = list(range(0, n, tile_size))
    rows = []
    for bi, i0 in enumerate(starts):
        i1 = min(i0 + tile_size, n)
        for k0 in starts[bi:]:
            k1 = min(k0 + tile_size, n)
            rows.append((i0, i1, k0, k1, 1 if k0 == i0 else 0))
    return np.asarray(rows, dtype=np.int64)


def set_threads(threads):
    """Cap the worker count; results do not depend on it."""
    if threads is None:
        return
    numba.set_num_threads(max(1, min(int(threads), numba.config.NUMBA_NUM_THREADS)))
