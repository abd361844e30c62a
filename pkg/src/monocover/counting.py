"""Point counting on double covers of P^n branched along hyperplane
arrangements.

For a projective point x with first nonzero coordinate normalized to 1, the
fiber of the double cover w^2 = F(x), F = prod_j l_j(x), has 1 + chi(F(x))
points (chi the quadratic character; branch points contribute exactly 1, and
the count is well defined on classes because m is even).  Hence

    N = #P^n(F_Q) + sum_x chi(F(x)),

and all the work is the character sum, evaluated chart by chart with the
kernels in _kernels (the enumeration is a pure fold over a partition of the
index range, so chunking never changes the result).
"""

import numpy as np

from .errors import TableBudgetExceeded
from . import _kernels, ff


def _split_params(p, k):
    """Low/high digit split for the translation LUT: the low block is the
    largest power of p not exceeding 1024 (L1-resident)."""
    kl = 1
    while kl < k and p ** (kl + 1) <= 1024:
        kl += 1
    return kl, p ** kl, p ** (k - kl)


class _FieldKernelCtx:
    """Per-field arrays and constants shared by all kernel calls."""

    def __init__(self, field):
        if field.q > ff.TABLE_BUDGET:
            raise TableBudgetExceeded(
                f"field of size {field.q} has no tables")
        self.field = field
        self.p = field.p
        self.k = field.k
        self.q = field.q
        self.logtab = field.logtab
        self.exptab = field.exptab
        self.chitab = field.chitab
        self.kl, self.bl, self.nb = _split_params(self.p, self.k)


_ctx_cache = {}


def _kernel_ctx(field):
    key = id(field)
    if key not in _ctx_cache:
        _ctx_cache[key] = _FieldKernelCtx(field)
    return _ctx_cache[key]


def _chart_sum(ctx, const_row, coeff_rows):
    """Character sum over one chart: forms l_j = const_j + sum_s coeff[s][j] z_s."""
    F = ctx.field
    r = len(coeff_rows)
    if r == 0:
        val = 1
        for c in const_row:
            val = F.mul(val, int(c))
        return F.quad_char(val)
    if r == 1:
        return int(_kernels.chart1_charsum(
            const_row, coeff_rows[0], ctx.p, ctx.k, ctx.q, ctx.q - 1,
            ctx.kl, ctx.bl, ctx.nb, ctx.logtab, ctx.exptab, ctx.chitab))
    if r == 2:
        return int(_kernels.chart2_charsum(
            const_row, coeff_rows[0], coeff_rows[1], ctx.p, ctx.k, ctx.q,
            ctx.q - 1, ctx.kl, ctx.bl, ctx.nb, ctx.logtab, ctx.exptab,
            ctx.chitab))
    # fold the outermost coordinate in python, recurse on the rest
    total = 0
    m = len(const_row)
    for w in range(ctx.q):
        folded = np.array(
            [F.add(int(const_row[j]), F.mul(int(coeff_rows[0][j]), w))
             for j in range(m)], np.int64)
        total += _chart_sum(ctx, folded, coeff_rows[1:])
    return total


def char_sum(rows_packed, field):
    """sum over P^n(F_q) of chi(prod_j l_j(x)), charts with first nonzero
    coordinate = 1, enumerated from the chart x_0 = 1 down to the point
    (0, ..., 0, 1)."""
    ctx = _kernel_ctx(field)
    n1 = len(rows_packed)
    total = 0
    for t in range(n1):
        const_row = np.array(rows_packed[t], np.int64)
        coeff_rows = [np.array(rows_packed[s], np.int64)
                      for s in range(t + 1, n1)]
        total += _chart_sum(ctx, const_row, coeff_rows)
    return total


def extension_field_for(arr, i):
    """Canonical field F_{q^i} over the arrangement's base field."""
    base = arr.field
    ktot = base.k * i
    q = base.p ** ktot
    if q > ff.TABLE_BUDGET:
        raise TableBudgetExceeded(
            f"counting over F_{base.p}^{ktot} exceeds the table budget")
    return ff.build_ext_field(base.p, ktot)


def embedded_rows(arr, tgt):
    base = arr.field
    if tgt is base:
        return [list(r) for r in arr.rows]
    emb = ff.subfield_embedding(base, tgt)
    return [[emb(x) for x in row] for row in arr.rows]


def count_points(arr, i):
    """#X(F_{q^i}) for the double cover X attached to the arrangement."""
    tgt = extension_field_for(arr, i)
    rows = embedded_rows(arr, tgt)
    cs = char_sum(rows, tgt)
    npn = sum(tgt.q ** j for j in range(arr.n + 1))
    return npn + cs


# ---------------------------------------------------------------------------
# independent oracles (no chi tables, no packed kernels)


def naive_count_line(arr, i):
    """n = 1 oracle: brute-force double loop over both affine charts,
    counting solutions of w^2 = F directly."""
    if arr.n != 1:
        raise ValueError("oracle is for n = 1")
    tgt = extension_field_for(arr, i)
    rows = embedded_rows(arr, tgt)
    m = arr.m
    total = 0
    # chart x_0 = 1
    for z in range(tgt.q):
        f = 1
        for j in range(m):
            f = tgt.mul(f, tgt.add(rows[0][j], tgt.mul(rows[1][j], z)))
        for w in range(tgt.q):
            if tgt.mul(w, w) == f:
                total += 1
    # the remaining point (0 : 1)
    f = 1
    for j in range(m):
        f = tgt.mul(f, rows[1][j])
    for w in range(tgt.q):
        if tgt.mul(w, w) == f:
            total += 1
    return total


def naive_count_projective(arr, i):
    """Generic small oracle: enumerate normalized projective points and count
    fiber solutions w^2 = F by direct search."""
    tgt = extension_field_for(arr, i)
    rows = embedded_rows(arr, tgt)
    n1 = arr.n + 1
    sqrt_count = {}
    for f in range(tgt.q):
        sqrt_count[f] = 0
    for w in range(tgt.q):
        sqrt_count[tgt.mul(w, w)] += 1
    total = 0
    for t in range(n1):
        free = n1 - t - 1
        for idx in range(tgt.q ** free):
            coords = [0] * t + [1]
            x = idx
            for _ in range(free):
                coords.append(x % tgt.q)
                x //= tgt.q
            f = 1
            for j in range(arr.m):
                v = 0
                for r in range(n1):
                    v = tgt.add(v, tgt.mul(rows[r][j], coords[r]))
                f = tgt.mul(f, v)
            total += sqrt_count[f]
    return total
