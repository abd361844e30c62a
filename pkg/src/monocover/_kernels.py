"""Numba kernels for the table-backed finite-field machinery.

Field elements are packed integers: x = sum_i c_i * p^i encodes the coset
c_0 + c_1*t + ... + c_{k-1}*t^{k-1} of F_p[t]/(modulus).  Addition is
carry-free digit arithmetic; multiplication goes through discrete-log
tables built once per field context.

The character-sum kernels enumerate a projective chart row by row.  Within
a row the value of each linear form is an affine function c + b*z of the
inner coordinate z, so chi(c + b*z) = chi(b) * chi(z (+) u) with
u = c/b, where (+) is the carry-free translation.  The translation is
realized as a block/LUT split: the low digits of z go through a small
L1-resident lookup table, the high digits through a per-block base offset.
"""

import numpy as np
from numba import njit

# ---------------------------------------------------------------------------
# scalar packed-field helpers (usable inside other kernels)


@njit(cache=True, inline="always")
def _padd(a, b, p, k):
    """Carry-free base-p addition of packed elements."""
    out = 0
    pw = 1
    for _ in range(k):
        out += ((a % p + b % p) % p) * pw
        a //= p
        b //= p
        pw *= p
    return out


@njit(cache=True, inline="always")
def _pmul(a, b, qm1, logtab, exptab):
    if a == 0 or b == 0:
        return 0
    return exptab[(logtab[a] + logtab[b]) % qm1]


@njit(cache=True, inline="always")
def _pdiv(a, b, qm1, logtab, exptab):
    # b must be nonzero
    if a == 0:
        return 0
    return exptab[(logtab[a] - logtab[b]) % qm1]


@njit(cache=True)
def build_log_tables(p, k, q, mod_c, gen_c, exptab, logtab):
    """Fill exp/log tables by iterating multiplication by the generator.

    mod_c: k+1 coefficients of the monic modulus, gen_c: k coefficients of
    the generator.  exptab has length q-1, logtab length q (logtab[0] = -1).
    """
    cur = np.zeros(k, np.int64)
    tmp = np.zeros(2 * k, np.int64)
    cur[0] = 1
    logtab[0] = -1
    for e in range(q - 1):
        packed = 0
        pw = 1
        for i in range(k):
            packed += cur[i] * pw
            pw *= p
        exptab[e] = packed
        logtab[packed] = e
        # cur <- cur * gen  (mod modulus)
        for i in range(2 * k):
            tmp[i] = 0
        for i in range(k):
            if cur[i] == 0:
                continue
            ci = cur[i]
            for j in range(k):
                tmp[i + j] = (tmp[i + j] + ci * gen_c[j]) % p
        for d in range(2 * k - 2, k - 1, -1):
            c = tmp[d]
            if c == 0:
                continue
            tmp[d] = 0
            # subtract c * t^(d-k) * modulus
            for j in range(k + 1):
                tmp[d - k + j] = (tmp[d - k + j] - c * mod_c[j]) % p
        for i in range(k):
            cur[i] = tmp[i]


@njit(cache=True)
def eval_poly_all(coeffs, q, qm1, p, k, logtab, exptab, out):
    """Evaluate a polynomial (packed coefficients, lowest first) at every
    field element; used for deterministic root scans."""
    deg = coeffs.shape[0] - 1
    for x in range(q):
        acc = coeffs[deg]
        for i in range(deg - 1, -1, -1):
            acc = _pmul(acc, x, qm1, logtab, exptab)
            acc = _padd(acc, coeffs[i], p, k)
        out[x] = acc


# ---------------------------------------------------------------------------
# character-sum kernels


@njit(cache=True)
def _fill_translation(u, p, k, kl, bl, nb, lut, hb):
    """lut[t] = t (+) u_low for t < bl;  hb[b] = (b (+) u_high) * bl."""
    ulow = u % bl
    uhigh = u // bl
    for t in range(bl):
        lut[t] = _padd(t, ulow, p, kl)
    for b in range(nb):
        hb[b] = _padd(b, uhigh, p, k - kl) * bl


@njit(cache=True)
def row_charsum(cvals, bvals, p, k, q, qm1, kl, bl, nb,
                logtab, exptab, chi, lut, hb):
    """sum_{z in F_q} prod_j chi(cvals[j] + bvals[j]*z).

    lut: (m, bl) int32 scratch, hb: (m, nb) int32 scratch.
    Returns an exact int64.
    """
    m = cvals.shape[0]
    pref = 1
    mm = 0
    for j in range(m):
        b = bvals[j]
        if b == 0:
            cj = cvals[j]
            if cj == 0:
                return np.int64(0)
            if logtab[cj] & 1:
                pref = -pref
        else:
            if logtab[b] & 1:
                pref = -pref
            u = _pdiv(cvals[j], b, qm1, logtab, exptab)
            _fill_translation(u, p, k, kl, bl, nb, lut[mm], hb[mm])
            mm += 1
    if mm == 0:
        return np.int64(pref) * q
    s = np.int64(0)
    for blk in range(nb):
        for t in range(bl):
            c = np.int64(chi[hb[0, blk] + lut[0, t]])
            for j in range(1, mm):
                c *= chi[hb[j, blk] + lut[j, t]]
            s += c
    return pref * s


@njit(cache=True)
def chart2_charsum(c0, c1, c2, p, k, q, qm1, kl, bl, nb, logtab, exptab, chi):
    """sum over (y, z) in F_q^2 of prod_j chi(c0[j] + c1[j]*y + c2[j]*z)."""
    m = c0.shape[0]
    lut = np.empty((m, bl), np.int32)
    hb = np.empty((m, nb), np.int32)
    cv = np.empty(m, np.int64)
    total = np.int64(0)
    for y in range(q):
        for j in range(m):
            cv[j] = _padd(c0[j], _pmul(c1[j], y, qm1, logtab, exptab), p, k)
        total += row_charsum(cv, c2, p, k, q, qm1, kl, bl, nb,
                             logtab, exptab, chi, lut, hb)
    return total


@njit(cache=True)
def chart1_charsum(c0, c1, p, k, q, qm1, kl, bl, nb, logtab, exptab, chi):
    m = c0.shape[0]
    lut = np.empty((m, bl), np.int32)
    hb = np.empty((m, nb), np.int32)
    return row_charsum(c0, c1, p, k, q, qm1, kl, bl, nb,
                       logtab, exptab, chi, lut, hb)


# ---------------------------------------------------------------------------
# packed-vector action kernels (Schreier-Sims on nonzero vectors)


@njit(cache=True)
def apply_packed(mat, pts, ell, dim, out):
    """Apply an integer matrix mod ell to packed base-ell vectors."""
    n = pts.shape[0]
    for i in range(n):
        x = pts[i]
        acc = 0
        pw = 1
        # out vector digits accumulated on the fly
        res = 0
        for r in range(dim):
            s = 0
            xx = x
            for c in range(dim):
                s += mat[r, c] * (xx % ell)
                xx //= ell
            res += (s % ell) * pw
            pw *= ell
        out[i] = res
    return out


@njit(cache=True)
def apply_packed_one(mat, pt, ell, dim):
    res = 0
    pw = 1
    for r in range(dim):
        s = 0
        xx = pt
        for c in range(dim):
            s += mat[r, c] * (xx % ell)
            xx //= ell
        res += (s % ell) * pw
        pw *= ell
    return res


@njit(cache=True)
def orbit_bfs_ext(gen_mats, ell, dim, schreier, queue, qlen):
    """BFS over packed points.  queue[0:qlen] holds seed points already
    marked in the Schreier vector; newly reached points are appended to
    queue with the index of the generator that produced them.  Returns the
    total number of points written to queue."""
    head = 0
    tail = qlen
    ngens = gen_mats.shape[0]
    while head < tail:
        x = queue[head]
        head += 1
        for g in range(ngens):
            y = apply_packed_one(gen_mats[g], x, ell, dim)
            if schreier[y] == -1:
                schreier[y] = g
                queue[tail] = y
                tail += 1
    return tail
