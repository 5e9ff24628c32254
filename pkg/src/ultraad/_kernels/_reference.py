"""Pure-numpy implementations of the hot kernels.

These are the fallback when the Cython extension is not built, and the
ground truth the native kernels are tested against.
"""

import numpy as np


def bilinear_upsample(src: np.ndarray, H: int, W: int) -> np.ndarray:
    """Bilinear interpolation of a 2-D map to (H, W), align_corners=False.

    Source coordinates are pixel centers: out pixel (i, j) samples
    ((i + 0.5) * h / H - 0.5, (j + 0.5) * w / W - 0.5), clamped to the grid.
    """
    src = np.asarray(src, dtype=np.float64)
    if src.ndim != 2 or src.size == 0:
        raise ValueError("source map must be a non-empty 2-D array")
    h, w = src.shape
    if h > H or w > W:
        raise ValueError(f"cannot upsample {h}x{w} to smaller {H}x{W}")

    ys = np.clip((np.arange(H) + 0.5) * h / H - 0.5, 0.0, h - 1.0)
    xs = np.clip((np.arange(W) + 0.5) * w / W - 0.5, 0.0, w - 1.0)
    y0 = np.floor(ys).astype(np.intp)
    x0 = np.floor(xs).astype(np.intp)
    y1 = np.minimum(y0 + 1, h - 1)
    x1 = np.minimum(x0 + 1, w - 1)
    fy = (ys - y0)[:, None]
    fx = (xs - x0)[None, :]

    top = src[np.ix_(y0, x0)] * (1 - fx) + src[np.ix_(y0, x1)] * fx
    bot = src[np.ix_(y1, x0)] * (1 - fx) + src[np.ix_(y1, x1)] * fx
    return top * (1 - fy) + bot * fy


def auc_wins_ties(scores: np.ndarray, labels: np.ndarray) -> tuple:
    """Exact (wins, ties) pair counts for the Mann-Whitney statistic.

    wins = #{(pos, neg) pairs with score_pos > score_neg},
    ties = #{pairs with equal scores}. Returned as Python ints.
    """
    scores = np.asarray(scores, dtype=np.float64)
    labels = np.asarray(labels, dtype=np.int64)
    order = np.argsort(scores, kind="mergesort")
    s = scores[order]
    y = labels[order]

    # group boundaries over tied score runs
    starts = np.flatnonzero(np.concatenate(([True], s[1:] != s[:-1])))
    ends = np.concatenate((starts[1:], [len(s)]))
    pos_in_group = np.add.reduceat(y, starts) if len(s) else np.array([], dtype=np.int64)
    size_in_group = ends - starts
    neg_in_group = size_in_group - pos_in_group

    neg_before = np.concatenate(([0], np.cumsum(neg_in_group)[:-1]))
    wins = int(np.sum(pos_in_group * neg_before))
    ties = int(np.sum(pos_in_group * neg_in_group))
    return wins, ties


def box_downsample(mask: np.ndarray, h: int, w: int) -> np.ndarray:
    """Average-pool a (H, W) array onto an (h, w) grid of pixel boxes.

    Box (i, j) covers pixel rows [floor(i*H/h), floor((i+1)*H/h)) and the
    analogous columns, matching the patch-cell geometry used elsewhere.
    """
    mask = np.asarray(mask, dtype=np.float64)
    H, W = mask.shape
    if h > H or w > W:
        raise ValueError("target grid coarser than source required")
    rb = (np.arange(h + 1) * H) // h
    cb = (np.arange(w + 1) * W) // w
    out = np.empty((h, w), dtype=np.float64)
    for i in range(h):
        rows = mask[rb[i]:rb[i + 1]]
        for j in range(w):
            out[i, j] = rows[:, cb[j]:cb[j + 1]].mean()
    return out
