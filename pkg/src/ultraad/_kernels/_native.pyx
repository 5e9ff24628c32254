# cython: boundscheck=False, wraparound=False, cdivision=True
"""Cython versions of the hot kernels; must match _reference bit-for-bit
on the integer counters and to float64 round-off on the interpolation."""

import numpy as np

cimport numpy as cnp

cnp.import_array()


def bilinear_upsample(src, int H, int W):
    src = np.ascontiguousarray(src, dtype=np.float64)
    if src.ndim != 2 or src.size == 0:
        raise ValueError("source map must be a non-empty 2-D array")
    cdef cnp.ndarray[cnp.float64_t, ndim=2] a = src
    cdef int h = a.shape[0]
    cdef int w = a.shape[1]
    if h > H or w > W:
        raise ValueError(f"cannot upsample {h}x{w} to smaller {H}x{W}")

    cdef cnp.ndarray[cnp.float64_t, ndim=2] out = np.empty((H, W), dtype=np.float64)
    cdef double sy, sx, fy, fx, top, bot
    cdef Py_ssize_t i, j, y0, y1, x0, x1
    for i in range(H):
        sy = (i + 0.5) * h / H - 0.5
        if sy < 0.0:
            sy = 0.0
        elif sy > h - 1.0:
            sy = h - 1.0
        y0 = <Py_ssize_t>sy
        y1 = y0 + 1 if y0 + 1 < h else h - 1
        fy = sy - y0
        for j in range(W):
            sx = (j + 0.5) * w / W - 0.5
            if sx < 0.0:
                sx = 0.0
            elif sx > w - 1.0:
                sx = w - 1.0
            x0 = <Py_ssize_t>sx
            x1 = x0 + 1 if x0 + 1 < w else w - 1
            fx = sx - x0
            top = a[y0, x0] * (1.0 - fx) + a[y0, x1] * fx
            bot = a[y1, x0] * (1.0 - fx) + a[y1, x1] * fx
            out[i, j] = top * (1.0 - fy) + bot * fy
    return out


def auc_wins_ties(scores, labels):
    cdef cnp.ndarray[cnp.float64_t, ndim=1] s_all = np.asarray(scores, dtype=np.float64)
    cdef cnp.ndarray[cnp.int64_t, ndim=1] y_all = np.asarray(labels, dtype=np.int64)
    cdef cnp.ndarray[cnp.intp_t, ndim=1] order = np.argsort(s_all, kind="mergesort")

    cdef long long wins = 0, ties = 0, neg_seen = 0
    cdef long long grp_pos = 0, grp_neg = 0
    cdef Py_ssize_t n = s_all.shape[0]
    cdef Py_ssize_t k
    cdef double cur, prev = 0.0
    for k in range(n):
        cur = s_all[order[k]]
        if k > 0 and cur != prev:
            wins += grp_pos * neg_seen
            ties += grp_pos * grp_neg
            neg_seen += grp_neg
            grp_pos = 0
            grp_neg = 0
        if y_all[order[k]] != 0:
            grp_pos += 1
        else:
            grp_neg += 1
        prev = cur
    wins += grp_pos * neg_seen
    ties += grp_pos * grp_neg
    return int(wins), int(ties)


def box_downsample(mask, int h, int w):
    cdef cnp.ndarray[cnp.float64_t, ndim=2] a = np.ascontiguousarray(mask, dtype=np.float64)
    cdef int H = a.shape[0]
    cdef int W = a.shape[1]
    if h > H or w > W:
        raise ValueError("target grid coarser than source required")
    cdef cnp.ndarray[cnp.float64_t, ndim=2] out = np.empty((h, w), dtype=np.float64)
    cdef Py_ssize_t i, j, r, c, r0, r1, c0, c1
    cdef double acc
    for i in range(h):
        r0 = (i * H) // h
        r1 = ((i + 1) * H) // h
        for j in range(w):
            c0 = (j * W) // w
            c1 = ((j + 1) * W) // w
            acc = 0.0
            for r in range(r0, r1):
                for c in range(c0, c1):
                    acc += a[r, c]
            out[i, j] = acc / ((r1 - r0) * (c1 - c0))
    return out
