"""Pure-Python (numpy) kernels, used when the compiled core is absent.

Each function here has a bit-identical twin in _speedups.pyx; the test
suite checks the two backends against each other.  Encodings are int16,
multiplicities and histograms int64.
"""

from __future__ import annotations

import numpy as np


def _odometer(digits: np.ndarray, base: int) -> bool:
    """Advance a little-endian counter in place; False when it wraps."""
    for i in range(digits.shape[0]):
        digits[i] += 1
        if digits[i] < base:
            return True
        digits[i] = 0
    return False


def affine_view_hist(pts, mult, Q, mul_t, add_t, neg_t):
    """Histogram of multiset sizes |H ^ S| over all Q^r planes x_r = m.x + d.

    pts:  (n, r) int16 affine coordinates, mult: (n,) int64.
    Returns int64 hist of length sum(mult)+1; entry c counts the (m, d)
    planes whose intersection with S has total multiplicity c.
    """
    pts = np.asarray(pts, dtype=np.int16)
    mult = np.asarray(mult, dtype=np.int64)
    n, r = pts.shape
    total = int(mult.sum())
    hist = np.zeros(total + 1, dtype=np.int64)
    xr = pts[:, r - 1].astype(np.intp)
    cols = [pts[:, i].astype(np.intp) for i in range(r - 1)]
    m = np.zeros(r - 1, dtype=np.int64)
    neg = neg_t.astype(np.intp)
    while True:
        acc = np.zeros(n, dtype=np.intp)
        for i in range(r - 1):
            mi = int(m[i])
            if mi:
                acc = add_t[acc, mul_t[mi, cols[i]].astype(np.intp)].astype(np.intp)
        dvals = add_t[xr, neg[acc]].astype(np.intp)
        per_d = np.zeros(Q, dtype=np.int64)
        np.add.at(per_d, dvals, mult)
        hist += np.bincount(per_d, minlength=total + 1)
        if not _odometer(m, Q):
            break
    return hist


def affine_dvals(pts, m, mul_t, add_t, neg_t):
    """Per-point d with point on the plane x_r = m.x + d; int16 (n,)."""
    pts = np.asarray(pts, dtype=np.int16)
    n, r = pts.shape
    acc = np.zeros(n, dtype=np.intp)
    for i in range(r - 1):
        mi = int(m[i])
        if mi:
            acc = add_t[acc, mul_t[mi, pts[:, i].astype(np.intp)].astype(np.intp)].astype(np.intp)
    neg = neg_t.astype(np.intp)
    return add_t[pts[:, r - 1].astype(np.intp), neg[acc]].astype(np.int16)


def form_counts(pts_proj, mult, forms, mul_t, add_t):
    """Multiset size of zero-set ^ S for each projective form.

    pts_proj: (n, r+1) int16, mult: (n,) int64, forms: (F, r+1) int16.
    Returns int64 (F,).
    """
    pts_proj = np.asarray(pts_proj, dtype=np.int16)
    forms = np.asarray(forms, dtype=np.int16)
    mult = np.asarray(mult, dtype=np.int64)
    n, w = pts_proj.shape
    F = forms.shape[0]
    out = np.zeros(F, dtype=np.int64)
    if F == 0 or n == 0:
        return out
    if n <= F:
        fcols = [forms[:, i].astype(np.intp) for i in range(w)]
        for p in range(n):
            vals = np.zeros(F, dtype=np.intp)
            for i in range(w):
                c = int(pts_proj[p, i])
                if c:
                    vals = add_t[vals, mul_t[fcols[i], c].astype(np.intp)].astype(np.intp)
            out[vals == 0] += int(mult[p])
    else:
        pcols = [pts_proj[:, i].astype(np.intp) for i in range(w)]
        for f in range(F):
            vals = np.zeros(n, dtype=np.intp)
            for i in range(w):
                c = int(forms[f, i])
                if c:
                    vals = add_t[vals, mul_t[c, pcols[i]].astype(np.intp)].astype(np.intp)
            out[f] = int(mult[vals == 0].sum())
    return out


def weight_hist(gmat, Q, mul_t, add_t):
    """Weight distribution of the code spanned by gmat, over all Q^k messages.

    gmat: (k, n) int16.  Returns int64 (n+1,).
    """
    gmat = np.asarray(gmat, dtype=np.int16)
    k, n = gmat.shape
    hist = np.zeros(n + 1, dtype=np.int64)
    scaled = mul_t[:, gmat.astype(np.intp)].astype(np.intp)  # (Q, k, n)
    if k == 1:
        weights = np.count_nonzero(scaled[:, 0, :], axis=1)
        hist += np.bincount(weights, minlength=n + 1)
        return hist
    partial = np.zeros((k - 1, n), dtype=np.intp)
    digits = np.zeros(k - 1, dtype=np.int64)  # digits[i] = message coord k-2-i
    last = scaled[:, k - 1, :]

    def recompute(level):
        # partial[j] = sum over coordinates c <= j of digit(c) * G[c]
        for j in range(level, k - 1):
            row = scaled[int(digits[k - 2 - j]), j, :]
            partial[j] = row if j == 0 else add_t[partial[j - 1], row]

    recompute(0)
    while True:
        full = add_t[partial[k - 2][None, :], last]
        weights = np.count_nonzero(full, axis=1)
        hist += np.bincount(weights, minlength=n + 1)
        # advance the prefix odometer (digits[0] is the fastest digit)
        lvl = 0
        while lvl < k - 1:
            digits[lvl] += 1
            if digits[lvl] < Q:
                break
            digits[lvl] = 0
            lvl += 1
        if lvl == k - 1:
            break
        recompute(k - 2 - lvl)
    return hist


_POINT_CACHE: dict[tuple[int, int], np.ndarray] = {}


def _points_matrix(q: int, nvars: int) -> np.ndarray:
    key = (q, nvars)
    got = _POINT_CACHE.get(key)
    if got is None:
        idx = np.arange(q ** nvars)
        cols = []
        for i in range(nvars):
            cols.append((idx // q ** i) % q)
        got = np.stack(cols, axis=1).astype(np.intp)
        _POINT_CACHE[key] = got
    return got


def quadric_counts(quad, lin, const_term, q, smul_t, sadd_t):
    """(affine zeros over GF(q)^n, projective zeros of the degree-2 part).

    quad: (n, n) int16 upper-triangular subfield-index coefficients,
    lin: (n,) int16, const_term: int.  Brute force over all q^n points.
    """
    quad = np.asarray(quad, dtype=np.int16)
    lin = np.asarray(lin, dtype=np.int16)
    nvars = quad.shape[0]
    pts = _points_matrix(q, nvars)
    qform = np.zeros(pts.shape[0], dtype=np.intp)
    for i in range(nvars):
        for j in range(i, nvars):
            c = int(quad[i, j])
            if c:
                term = smul_t[c, smul_t[pts[:, i], pts[:, j]].astype(np.intp)].astype(np.intp)
                qform = sadd_t[qform, term].astype(np.intp)
    full = qform
    for i in range(nvars):
        c = int(lin[i])
        if c:
            full = sadd_t[full, smul_t[c, pts[:, i]].astype(np.intp)].astype(np.intp)
    if const_term:
        full = sadd_t[full, int(const_term)].astype(np.intp)
    affine = int(np.count_nonzero(full == 0))
    nonzero_pt = np.any(pts != 0, axis=1)
    inf_reps = int(np.count_nonzero((qform == 0) & nonzero_pt))
    return affine, inf_reps // (q - 1)
