"""Hyperplane arrangements over finite fields: general-position validation,
the moduli normal form, seeded random sampling, the rational-normal-curve
image of point tuples on the line, and a line-oriented file format.

An arrangement is an (n+1) x m matrix over F_q whose j-th column holds the
coefficients of the linear form defining the j-th hyperplane.  General
position means every (n+1) x (n+1) minor is nonzero.
"""

import random
from itertools import combinations

from .errors import (DuplicatePoints, NotGeneralPosition, SamplingExhausted)
from . import ff

SAMPLING_LIMIT = 10 ** 5


class Arrangement:
    """m hyperplanes in P^n over a finite field; rows[i][j] = coefficient of
    x_i in the j-th defining form (packed field elements)."""

    def __init__(self, field, n, m, rows):
        if m % 2 != 0 or m < n + 3:
            raise ValueError("m must be even with m >= n+3")
        rows = tuple(tuple(int(x) for x in r) for r in rows)
        if len(rows) != n + 1 or any(len(r) != m for r in rows):
            raise ValueError(f"need an {(n + 1)}x{m} coefficient matrix")
        for j in range(m):
            if not any(rows[i][j] for i in range(n + 1)):
                raise ValueError(f"column {j} is zero")
        self.field = field
        self.n = n
        self.m = m
        self.rows = rows

    def column(self, j):
        return tuple(self.rows[i][j] for i in range(self.n + 1))

    def rescale_column(self, j, lam):
        if lam == 0:
            raise ValueError("scale factor must be nonzero")
        F = self.field
        rows = [list(r) for r in self.rows]
        for i in range(self.n + 1):
            rows[i][j] = F.mul(rows[i][j], lam)
        return Arrangement(F, self.n, self.m, rows)

    def __eq__(self, other):
        return (isinstance(other, Arrangement) and self.field is other.field
                and self.rows == other.rows)

    def __hash__(self):
        return hash((id(self.field), self.rows))

    def __repr__(self):
        return f"Arrangement(n={self.n}, m={self.m}, q={self.field.q})"


def _minor_det(arr, cols):
    """Determinant of the square submatrix on the given columns, computed
    with generic field-context arithmetic (works in extension fields)."""
    F = arr.field
    n1 = arr.n + 1
    m = [[arr.rows[i][c] for c in cols] for i in range(n1)]
    det = 1
    for c in range(n1):
        piv = next((r for r in range(c, n1) if m[r][c] != 0), None)
        if piv is None:
            return 0
        if piv != c:
            m[c], m[piv] = m[piv], m[c]
            det = F.neg(det)
        det = F.mul(det, m[c][c])
        inv = F.inv(m[c][c])
        for r in range(c + 1, n1):
            if m[r][c] != 0:
                f = F.mul(m[r][c], inv)
                for cc in range(c, n1):
                    m[r][cc] = F.sub(m[r][cc], F.mul(f, m[c][cc]))
    return det


def is_general_position(arr):
    """True iff all C(m, n+1) maximal minors are nonzero."""
    for cols in combinations(range(arr.m), arr.n + 1):
        if _minor_det(arr, cols) == 0:
            return False
    return True


def normal_form(arr):
    """The unique equivalent arrangement with first n+1 columns the identity,
    column n+2 all ones, and first row 1 in the remaining columns; obtained
    by the coordinate change making the first forms coordinate forms plus
    column rescaling."""
    if not is_general_position(arr):
        raise NotGeneralPosition("normal form needs general position")
    F = arr.field
    n1 = arr.n + 1
    # P = inverse of the leading (n+1)x(n+1) block: makes columns 0..n the
    # scaled identity
    a = [[arr.rows[i][j] for j in range(n1)] + [1 if i == k else 0
                                                for k in range(n1)]
         for i in range(n1)]
    for c in range(n1):
        piv = next(r for r in range(c, n1) if a[r][c] != 0)
        a[c], a[piv] = a[piv], a[c]
        inv = F.inv(a[c][c])
        a[c] = [F.mul(x, inv) for x in a[c]]
        for r in range(n1):
            if r != c and a[r][c] != 0:
                f = a[r][c]
                a[r] = [F.sub(x, F.mul(f, y)) for x, y in zip(a[r], a[c])]
    pinv = [row[n1:] for row in a]
    rows = [[0] * arr.m for _ in range(n1)]
    for j in range(arr.m):
        col = arr.column(j)
        for i in range(n1):
            s = 0
            for k in range(n1):
                s = F.add(s, F.mul(pinv[i][k], col[k]))
            rows[i][j] = s
    # rescale rows so column n+1 becomes all ones
    for i in range(n1):
        v = rows[i][n1]
        inv = F.inv(v)
        rows[i] = [F.mul(x, inv) for x in rows[i]]
    # rescale columns: identity block back to 1s, later columns to first row 1
    for j in range(n1):
        inv = F.inv(rows[j][j])
        for i in range(n1):
            rows[i][j] = F.mul(rows[i][j], inv)
    for j in range(n1 + 1, arr.m):
        inv = F.inv(rows[0][j])
        for i in range(n1):
            rows[i][j] = F.mul(rows[i][j], inv)
    return Arrangement(F, arr.n, arr.m, rows)


class PointsOnLine:
    """m pairwise distinct points of P^1(F_q), stored as normalized pairs
    (first nonzero coordinate = 1)."""

    def __init__(self, field, pairs):
        norm = []
        F = field
        for (a, b) in pairs:
            if a == 0 and b == 0:
                raise ValueError("(0, 0) is not a projective point")
            if a != 0:
                inv = F.inv(a)
                norm.append((1, F.mul(b, inv)))
            else:
                norm.append((0, 1))
        if len(set(norm)) != len(norm):
            raise DuplicatePoints("points must be pairwise distinct")
        self.field = field
        self.pairs = tuple(norm)

    def __len__(self):
        return len(self.pairs)

    def __repr__(self):
        return f"PointsOnLine(q={self.field.q}, {list(self.pairs)})"


def hyperelliptic_image(pts, n):
    """Arrangement in P^n with column i = (a_i^n, a_i^(n-1) b_i, ..., b_i^n)
    for the point (a_i, b_i): the rational-normal-curve embedding that makes
    the double cover of P^n restrict to the hyperelliptic curve locus."""
    F = pts.field
    m = len(pts)
    rows = [[0] * m for _ in range(n + 1)]
    for j, (a, b) in enumerate(pts.pairs):
        for r in range(n + 1):
            rows[r][j] = F.mul(F.pow_(a, n - r), F.pow_(b, r))
    arr = Arrangement(F, n, m, rows)
    if not is_general_position(arr):
        raise AssertionError("distinct points must give general position")
    return arr


def all_line_points(field):
    pts = [(1, b) for b in range(field.q)]
    pts.append((0, 1))
    return pts


def random_points(m, field, seed):
    """m distinct points of P^1, uniformly among such tuples (seeded)."""
    if field.q + 1 < m:
        raise SamplingExhausted(f"P^1(F_{field.q}) has fewer than {m} points")
    rng = random.Random(seed)
    pts = rng.sample(all_line_points(field), m)
    return PointsOnLine(field, pts)


def random_arrangement(n, m, field, seed):
    """Seeded rejection sampler for general-position arrangements.  For
    n = 1 routes through distinct points of the line (always succeeds when
    q + 1 >= m); otherwise uniform coefficient matrices are drawn until the
    general-position test passes."""
    if n == 1:
        pts = random_points(m, field, seed)
        return hyperelliptic_image(pts, 1)
    rng = random.Random(seed)
    q = field.q
    for _ in range(SAMPLING_LIMIT):
        rows = [[rng.randrange(q) for _ in range(m)] for _ in range(n + 1)]
        if any(all(rows[i][j] == 0 for i in range(n + 1)) for j in range(m)):
            continue
        arr = Arrangement(field, n, m, rows)
        if is_general_position(arr):
            return arr
    raise SamplingExhausted(
        f"no general-position arrangement found for n={n}, m={m}, q={q}")


# ---------------------------------------------------------------------------
# file format: header "n m q" then n+1 rows of m packed integers.
# Column j of the matrix holds the coefficients of the j-th linear form.


def format_arrangement(arr):
    lines = [f"{arr.n} {arr.m} {arr.field.q}"]
    for row in arr.rows:
        lines.append(" ".join(str(x) for x in row))
    return "\n".join(lines) + "\n"


def parse_arrangement(text):
    lines = [ln for ln in text.splitlines()
             if ln.strip() and not ln.lstrip().startswith("#")]
    if not lines:
        raise ValueError("empty arrangement file")
    header = lines[0].split()
    if len(header) != 3:
        raise ValueError("header must be 'n m q'")
    n, m, q = (int(x) for x in header)
    field = ff.field_of_order(q)
    rows = []
    for ln in lines[1:n + 2]:
        row = [int(x) for x in ln.split()]
        if any(not 0 <= x < q for x in row):
            raise ValueError("entries must be packed field elements in [0, q)")
        rows.append(row)
    if len(rows) != n + 1:
        raise ValueError(f"expected {n + 1} coefficient rows")
    return Arrangement(field, n, m, rows)


def load_arrangement(path):
    with open(path, "r", encoding="utf-8") as fh:
        return parse_arrangement(fh.read())


def save_arrangement(arr, path):
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(format_arrangement(arr))
