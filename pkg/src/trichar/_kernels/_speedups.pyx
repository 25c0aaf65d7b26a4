# cython: boundscheck=False, wraparound=False, cdivision=True, language_level=3
"""Compiled kernels: bit-identical twins of the numpy fallbacks.

All tables and encodings are int16, multiplicities and histograms int64.
"""

import numpy as np


def affine_view_hist(pts, mult, Q, mul_t, add_t, neg_t):
    """Histogram of multiset sizes over all Q^r planes x_r = m.x + d."""
    cdef const short[:, ::1] P = np.ascontiguousarray(pts, dtype=np.int16)
    cdef const long long[::1] M = np.ascontiguousarray(mult, dtype=np.int64)
    cdef const short[:, ::1] mul = np.ascontiguousarray(mul_t, dtype=np.int16)
    cdef const short[:, ::1] add = np.ascontiguousarray(add_t, dtype=np.int16)
    cdef const short[::1] neg = np.ascontiguousarray(neg_t, dtype=np.int16)
    cdef Py_ssize_t n = P.shape[0], r = P.shape[1]
    cdef int q2 = Q
    cdef long long total = 0
    cdef Py_ssize_t p, i
    for p in range(n):
        total += M[p]
    hist_arr = np.zeros(total + 1, dtype=np.int64)
    perd_arr = np.zeros(q2, dtype=np.int64)
    mdig_arr = np.zeros(r - 1 if r > 1 else 1, dtype=np.int16)
    cdef long long[::1] hist = hist_arr
    cdef long long[::1] perd = perd_arr
    cdef short[::1] mdig = mdig_arr
    cdef Py_ssize_t nm = r - 1
    cdef int acc, d, mi
    cdef Py_ssize_t lvl
    cdef bint carry
    while True:
        for d in range(q2):
            perd[d] = 0
        for p in range(n):
            acc = 0
            for i in range(nm):
                mi = mdig[i]
                if mi != 0:
                    acc = add[acc, mul[mi, P[p, i]]]
            d = add[P[p, r - 1], neg[acc]]
            perd[d] += M[p]
        for d in range(q2):
            hist[perd[d]] += 1
        # advance m odometer
        carry = True
        for lvl in range(nm):
            mdig[lvl] += 1
            if mdig[lvl] < q2:
                carry = False
                break
            mdig[lvl] = 0
        if carry:
            break
    return hist_arr


def affine_dvals(pts, m, mul_t, add_t, neg_t):
    """Per-point d with point on the plane x_r = m.x + d; int16 (n,)."""
    cdef const short[:, ::1] P = np.ascontiguousarray(pts, dtype=np.int16)
    cdef const short[::1] mv = np.ascontiguousarray(m, dtype=np.int16)
    cdef const short[:, ::1] mul = np.ascontiguousarray(mul_t, dtype=np.int16)
    cdef const short[:, ::1] add = np.ascontiguousarray(add_t, dtype=np.int16)
    cdef const short[::1] neg = np.ascontiguousarray(neg_t, dtype=np.int16)
    cdef Py_ssize_t n = P.shape[0], r = P.shape[1]
    out_arr = np.zeros(n, dtype=np.int16)
    cdef short[::1] out = out_arr
    cdef Py_ssize_t p, i
    cdef int acc, mi
    for p in range(n):
        acc = 0
        for i in range(r - 1):
            mi = mv[i]
            if mi != 0:
                acc = add[acc, mul[mi, P[p, i]]]
        out[p] = add[P[p, r - 1], neg[acc]]
    return out_arr


def form_counts(pts_proj, mult, forms, mul_t, add_t):
    """Multiset size of zero-set ^ S for each projective form; int64 (F,)."""
    cdef const short[:, ::1] P = np.ascontiguousarray(pts_proj, dtype=np.int16)
    cdef const long long[::1] M = np.ascontiguousarray(mult, dtype=np.int64)
    cdef const short[:, ::1] F = np.ascontiguousarray(forms, dtype=np.int16)
    cdef const short[:, ::1] mul = np.ascontiguousarray(mul_t, dtype=np.int16)
    cdef const short[:, ::1] add = np.ascontiguousarray(add_t, dtype=np.int16)
    cdef Py_ssize_t n = P.shape[0], w = P.shape[1], nf = F.shape[0]
    out_arr = np.zeros(nf, dtype=np.int64)
    cdef long long[::1] out = out_arr
    cdef Py_ssize_t f, p, i
    cdef int val, c
    for f in range(nf):
        for p in range(n):
            val = 0
            for i in range(w):
                c = F[f, i]
                if c != 0:
                    val = add[val, mul[c, P[p, i]]]
            if val == 0:
                out[f] += M[p]
    return out_arr


def weight_hist(gmat, Q, mul_t, add_t):
    """Weight distribution over all Q^k messages; int64 (n+1,)."""
    cdef const short[:, ::1] G = np.ascontiguousarray(gmat, dtype=np.int16)
    cdef const short[:, ::1] mul = np.ascontiguousarray(mul_t, dtype=np.int16)
    cdef const short[:, ::1] add = np.ascontiguousarray(add_t, dtype=np.int16)
    cdef Py_ssize_t k = G.shape[0], n = G.shape[1]
    cdef int q2 = Q
    hist_arr = np.zeros(n + 1, dtype=np.int64)
    cdef long long[::1] hist = hist_arr
    # scaled[v, i, j] = v * G[i, j]
    scaled_arr = np.zeros((q2, k, n), dtype=np.int16)
    cdef short[:, :, ::1] scaled = scaled_arr
    cdef Py_ssize_t v, i, j
    for v in range(q2):
        for i in range(k):
            for j in range(n):
                scaled[v, i, j] = mul[v, G[i, j]]
    cdef Py_ssize_t w, p
    if k == 1:
        for v in range(q2):
            w = 0
            for j in range(n):
                if scaled[v, 0, j] != 0:
                    w += 1
            hist[w] += 1
        return hist_arr
    partial_arr = np.zeros((k - 1, n), dtype=np.int16)
    digits_arr = np.zeros(k - 1, dtype=np.int64)
    cdef short[:, ::1] partial = partial_arr
    cdef long long[::1] digits = digits_arr
    cdef Py_ssize_t lvl, c
    cdef int dv
    # fill partial[0..k-2]
    for c in range(k - 1):
        dv = <int> digits[k - 2 - c]
        if c == 0:
            for j in range(n):
                partial[0, j] = scaled[dv, 0, j]
        else:
            for j in range(n):
                partial[c, j] = add[partial[c - 1, j], scaled[dv, c, j]]
    cdef bint done = False
    while not done:
        for v in range(q2):
            w = 0
            for j in range(n):
                if add[partial[k - 2, j], scaled[v, k - 1, j]] != 0:
                    w += 1
            hist[w] += 1
        # advance the prefix odometer; digits[0] is the fastest digit and
        # stands for message coordinate k-2
        lvl = 0
        while lvl < k - 1:
            digits[lvl] += 1
            if digits[lvl] < q2:
                break
            digits[lvl] = 0
            lvl += 1
        if lvl == k - 1:
            done = True
        else:
            for c in range(k - 2 - lvl, k - 1):
                dv = <int> digits[k - 2 - c]
                if c == 0:
                    for j in range(n):
                        partial[0, j] = scaled[dv, 0, j]
                else:
                    for j in range(n):
                        partial[c, j] = add[partial[c - 1, j], scaled[dv, c, j]]
    return hist_arr


def quadric_counts(quad, lin, const_term, q, smul_t, sadd_t):
    """(affine zeros over GF(q)^n, projective zeros of the degree-2 part)."""
    cdef const short[:, ::1] Qc = np.ascontiguousarray(quad, dtype=np.int16)
    cdef const short[::1] L = np.ascontiguousarray(lin, dtype=np.int16)
    cdef const short[:, ::1] smul = np.ascontiguousarray(smul_t, dtype=np.int16)
    cdef const short[:, ::1] sadd = np.ascontiguousarray(sadd_t, dtype=np.int16)
    cdef int c0 = const_term, qq = q
    cdef Py_ssize_t nvars = Qc.shape[0]
    pt_arr = np.zeros(nvars, dtype=np.int16)
    cdef short[::1] pt = pt_arr
    cdef long long affine = 0, infreps = 0
    cdef Py_ssize_t i, j, lvl
    cdef int qf, full, c
    cdef bint carry, nonzero
    while True:
        qf = 0
        for i in range(nvars):
            if pt[i] != 0:
                for j in range(i, nvars):
                    c = Qc[i, j]
                    if c != 0 and pt[j] != 0:
                        qf = sadd[qf, smul[c, smul[pt[i], pt[j]]]]
        full = qf
        for i in range(nvars):
            c = L[i]
            if c != 0 and pt[i] != 0:
                full = sadd[full, smul[c, pt[i]]]
        if c0 != 0:
            full = sadd[full, c0]
        if full == 0:
            affine += 1
        nonzero = False
        for i in range(nvars):
            if pt[i] != 0:
                nonzero = True
                break
        if qf == 0 and nonzero:
            infreps += 1
        carry = True
        for lvl in range(nvars):
            pt[lvl] += 1
            if pt[lvl] < qq:
                carry = False
                break
            pt[lvl] = 0
        if carry:
            break
    return int(affine), int(infreps // (qq - 1))
