"""Dense exact linear algebra over F_p and over Z.

Matrices over F_p are immutable tuples of tuples of canonical ints plus the
modulus; this keeps them hashable (char-poly histograms, BSGS membership)
and exact.  Integer work (Frobenius characteristic polynomials, exterior
powers of companion matrices) uses arbitrary-precision ints throughout:
Bareiss fraction-free elimination for determinants and exact interpolation
for characteristic polynomials.
"""

from fractions import Fraction

from .errors import NonIntegralDivision, NonSquare


class Mat:
    """Immutable matrix over F_p."""

    __slots__ = ("rows", "p", "nrows", "ncols", "_hash")

    def __init__(self, rows, p):
        self.rows = tuple(tuple(x % p for x in r) for r in rows)
        self.p = p
        self.nrows = len(self.rows)
        self.ncols = len(self.rows[0]) if self.rows else 0
        if any(len(r) != self.ncols for r in self.rows):
            raise ValueError("ragged rows")
        self._hash = None

    @classmethod
    def identity(cls, n, p):
        return cls(tuple(tuple(1 if i == j else 0 for j in range(n))
                         for i in range(n)), p)

    @classmethod
    def diag(cls, entries, p):
        n = len(entries)
        return cls(tuple(tuple(entries[i] if i == j else 0 for j in range(n))
                         for i in range(n)), p)

    @classmethod
    def zeros(cls, nrows, ncols, p):
        return cls(tuple((0,) * ncols for _ in range(nrows)), p)

    def __eq__(self, other):
        return (isinstance(other, Mat) and self.p == other.p
                and self.rows == other.rows)

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.rows, self.p))
        return self._hash

    def __mul__(self, other):
        p = self.p
        if isinstance(other, Mat):
            if self.ncols != other.nrows:
                raise ValueError("dimension mismatch")
            bt = tuple(zip(*other.rows))
            return Mat(tuple(tuple(sum(a * b for a, b in zip(row, col)) % p
                                   for col in bt)
                             for row in self.rows), p)
        raise TypeError

    def scale(self, c):
        c %= self.p
        return Mat(tuple(tuple((c * x) % self.p for x in r)
                         for r in self.rows), self.p)

    def __add__(self, other):
        return Mat(tuple(tuple(a + b for a, b in zip(r1, r2))
                         for r1, r2 in zip(self.rows, other.rows)), self.p)

    def __sub__(self, other):
        return Mat(tuple(tuple(a - b for a, b in zip(r1, r2))
                         for r1, r2 in zip(self.rows, other.rows)), self.p)

    def __neg__(self):
        return Mat(tuple(tuple(-x for x in r) for r in self.rows), self.p)

    @property
    def T(self):
        return Mat(tuple(zip(*self.rows)), self.p)

    def apply(self, vec):
        p = self.p
        return tuple(sum(a * x for a, x in zip(row, vec)) % p
                     for row in self.rows)

    def is_identity(self):
        return self == Mat.identity(self.nrows, self.p)

    def pow_(self, e):
        if self.nrows != self.ncols:
            raise NonSquare("pow of non-square matrix")
        result = Mat.identity(self.nrows, self.p)
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def det(self):
        if self.nrows != self.ncols:
            raise NonSquare("determinant of non-square matrix")
        p = self.p
        m = [list(r) for r in self.rows]
        n = self.nrows
        det = 1
        for c in range(n):
            piv = next((r for r in range(c, n) if m[r][c]), None)
            if piv is None:
                return 0
            if piv != c:
                m[c], m[piv] = m[piv], m[c]
                det = p - det
            det = (det * m[c][c]) % p
            inv = pow(m[c][c], p - 2, p)
            for r in range(c + 1, n):
                if m[r][c]:
                    f = (m[r][c] * inv) % p
                    for cc in range(c, n):
                        m[r][cc] = (m[r][cc] - f * m[c][cc]) % p
        return det

    def inv(self):
        if self.nrows != self.ncols:
            raise NonSquare("inverse of non-square matrix")
        p, n = self.p, self.nrows
        m = [list(r) + [1 if i == j else 0 for j in range(n)]
             for i, r in enumerate(self.rows)]
        for c in range(n):
            piv = next((r for r in range(c, n) if m[r][c]), None)
            if piv is None:
                raise ZeroDivisionError("singular matrix")
            m[c], m[piv] = m[piv], m[c]
            f = pow(m[c][c], p - 2, p)
            m[c] = [(x * f) % p for x in m[c]]
            for r in range(n):
                if r != c and m[r][c]:
                    g = m[r][c]
                    m[r] = [(x - g * y) % p for x, y in zip(m[r], m[c])]
        return Mat(tuple(tuple(r[n:]) for r in m), p)

    def rank(self):
        p = self.p
        m = [list(r) for r in self.rows]
        rank, c = 0, 0
        while rank < self.nrows and c < self.ncols:
            piv = next((r for r in range(rank, self.nrows) if m[r][c]), None)
            if piv is None:
                c += 1
                continue
            m[rank], m[piv] = m[piv], m[rank]
            inv = pow(m[rank][c], p - 2, p)
            for r in range(rank + 1, self.nrows):
                if m[r][c]:
                    f = (m[r][c] * inv) % p
                    for cc in range(c, self.ncols):
                        m[r][cc] = (m[r][cc] - f * m[rank][cc]) % p
            rank += 1
            c += 1
        return rank

    def __repr__(self):
        return f"Mat({[list(r) for r in self.rows]}, p={self.p})"


def det_ff(m):
    """Exact determinant over F_p by Gaussian elimination."""
    return m.det()


def char_poly_ff(m):
    """Monic characteristic polynomial det(T*I - m) over F_p, computed by
    Hessenberg reduction.  Uses only field divisions, so it is valid for any
    p (no division by integers up to dim, unlike Faddeev-LeVerrier).

    Returns coefficients lowest degree first, length dim + 1.
    """
    if m.nrows != m.ncols:
        raise NonSquare("characteristic polynomial of non-square matrix")
    p, n = m.p, m.nrows
    h = [list(r) for r in m.rows]
    for j in range(n - 2):
        piv = next((r for r in range(j + 1, n) if h[r][j]), None)
        if piv is None:
            continue
        if piv != j + 1:
            h[j + 1], h[piv] = h[piv], h[j + 1]
            for r in range(n):
                h[r][j + 1], h[r][piv] = h[r][piv], h[r][j + 1]
        inv = pow(h[j + 1][j], p - 2, p)
        for r in range(j + 2, n):
            if h[r][j]:
                f = (h[r][j] * inv) % p
                for c in range(n):
                    h[r][c] = (h[r][c] - f * h[j + 1][c]) % p
                for rr in range(n):
                    h[rr][j + 1] = (h[rr][j + 1] + f * h[rr][r]) % p
    # charpoly recurrence on the Hessenberg form
    polys = [[1]]
    for mdim in range(1, n + 1):
        prev = polys[mdim - 1]
        cur = [0] * (mdim + 1)
        a = h[mdim - 1][mdim - 1]
        for i, c in enumerate(prev):
            cur[i + 1] = (cur[i + 1] + c) % p
            cur[i] = (cur[i] - a * c) % p
        beta = 1
        for krow in range(mdim - 1, 0, -1):
            beta = (beta * h[krow][krow - 1]) % p
            coeff = (h[krow - 1][mdim - 1] * beta) % p
            if coeff:
                for i, c in enumerate(polys[krow - 1]):
                    cur[i] = (cur[i] - coeff * c) % p
        polys.append(cur)
    return tuple(polys[n])


def poly_reduce_mod(poly, p):
    """Coefficientwise reduction of an integer polynomial mod p."""
    return tuple(c % p for c in poly.coeffs)


def newton_charpoly(power_sums, d):
    """Monic integer polynomial of degree d whose root power sums are the
    given p_1..p_d, via Newton's identities k*e_k = sum (-1)^(j-1) e_{k-j} p_j
    in exact integer arithmetic."""
    if len(power_sums) < d:
        raise ValueError("need at least d power sums")
    e = [1]
    for k in range(1, d + 1):
        s = 0
        for j in range(1, k + 1):
            t = e[k - j] * power_sums[j - 1]
            s += t if j % 2 == 1 else -t
        if s % k:
            raise NonIntegralDivision(
                f"e_{k} is not integral (sum {s} not divisible by {k})")
        e.append(s // k)
    coeffs = [0] * (d + 1)
    for k in range(d + 1):
        coeffs[d - k] = e[k] if k % 2 == 0 else -e[k]
    return PolyZ(coeffs)


def power_sums_from_poly(poly, count):
    """Newton's identities run forward: power sums p_1..p_count of the roots
    of a monic integer polynomial."""
    d = poly.degree
    e = [0] * (d + 1)
    for k in range(d + 1):
        c = poly.coeffs[d - k]
        e[k] = c if k % 2 == 0 else -c
    ps = []
    for i in range(1, count + 1):
        s = 0
        for j in range(1, min(i, d) + 1):
            t = e[j] * ps[i - j - 1] if i - j >= 1 else 0
            if i - j == 0:
                t = e[j] * i
            s += -t if j % 2 == 0 else t
        ps.append(s)
    return ps


def bareiss_det(rows):
    """Fraction-free exact determinant of an integer matrix."""
    m = [list(r) for r in rows]
    n = len(m)
    if n == 0:
        return 1
    sign = 1
    prev = 1
    for c in range(n - 1):
        piv = next((r for r in range(c, n) if m[r][c]), None)
        if piv is None:
            return 0
        if piv != c:
            m[c], m[piv] = m[piv], m[c]
            sign = -sign
        for r in range(c + 1, n):
            for cc in range(c + 1, n):
                m[r][cc] = (m[r][cc] * m[c][c] - m[r][c] * m[c][cc]) // prev
            m[r][c] = 0
        prev = m[c][c]
    return sign * m[n - 1][n - 1]


def int_charpoly(rows):
    """Exact characteristic polynomial det(T*I - M) of an integer matrix:
    Bareiss determinants at d+1 points, then exact interpolation."""
    n = len(rows)
    vals = []
    for t in range(n + 1):
        shifted = [[(t if i == j else 0) - rows[i][j] for j in range(n)]
                   for i in range(n)]
        vals.append(bareiss_det(shifted))
    coeffs = _interpolate_integer(list(range(n + 1)), vals)
    if len(coeffs) < n + 1:
        coeffs = coeffs + [0] * (n + 1 - len(coeffs))
    return PolyZ(coeffs)


def _interpolate_integer(xs, ys):
    acc = [Fraction(0)]
    for i, xi in enumerate(xs):
        num = [Fraction(ys[i])]
        den = Fraction(1)
        for j, xj in enumerate(xs):
            if j == i:
                continue
            num = _poly_mul_frac(num, [Fraction(-xj), Fraction(1)])
            den *= Fraction(xi - xj)
        num = [c / den for c in num]
        acc = _poly_add_frac(acc, num)
    out = []
    for c in acc:
        if c.denominator != 1:
            raise AssertionError("interpolation produced non-integer")
        out.append(int(c))
    while len(out) > 1 and out[-1] == 0:
        out.pop()
    return out


def _poly_mul_frac(a, b):
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        for j, bj in enumerate(b):
            out[i + j] += ai * bj
    return out


def _poly_add_frac(a, b):
    if len(a) < len(b):
        a, b = b, a
    out = list(a)
    for i, c in enumerate(b):
        out[i] += c
    return out


class PolyZ:
    """Integer polynomial, exact coefficients lowest degree first."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs):
        coeffs = [int(c) for c in coeffs]
        while len(coeffs) > 1 and coeffs[-1] == 0:
            coeffs.pop()
        if not coeffs:
            coeffs = [0]
        self.coeffs = tuple(coeffs)

    @property
    def degree(self):
        if self.coeffs == (0,):
            return -1
        return len(self.coeffs) - 1

    @property
    def is_monic(self):
        return self.coeffs[-1] == 1 and self.degree >= 0

    def __eq__(self, other):
        return isinstance(other, PolyZ) and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __mul__(self, other):
        if isinstance(other, int):
            return PolyZ([c * other for c in self.coeffs])
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return PolyZ(out)

    def __add__(self, other):
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] += c
        return PolyZ(out)

    def __sub__(self, other):
        return self + (other * -1)

    def __neg__(self):
        return self * -1

    def __call__(self, x):
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    @classmethod
    def from_roots(cls, roots):
        out = cls([1])
        for r in roots:
            out = out * cls([-r, 1])
        return out

    def divmod_exact(self, other):
        """Polynomial division over Z by a monic divisor."""
        if not other.is_monic:
            raise ValueError("divisor must be monic")
        rem = list(self.coeffs)
        dq = len(rem) - len(other.coeffs)
        if dq < 0:
            return PolyZ([0]), self
        quot = [0] * (dq + 1)
        for d in range(len(rem) - 1, len(other.coeffs) - 2, -1):
            c = rem[d]
            if c:
                quot[d - (len(other.coeffs) - 1)] = c
                for j, b in enumerate(other.coeffs):
                    rem[d - (len(other.coeffs) - 1) + j] -= c * b
        return PolyZ(quot), PolyZ(rem[:len(other.coeffs) - 1] or [0])

    def companion(self):
        """Companion matrix (integer rows) of a monic polynomial."""
        if not self.is_monic:
            raise ValueError("companion matrix needs a monic polynomial")
        d = self.degree
        rows = [[0] * d for _ in range(d)]
        for i in range(1, d):
            rows[i][i - 1] = 1
        for i in range(d):
            rows[i][d - 1] = -self.coeffs[i]
        return rows

    def __repr__(self):
        return f"PolyZ({list(self.coeffs)})"


class BilinearSpace:
    """A dimension, a Gram matrix over F_p and a symmetry flag."""

    ALTERNATING = "alternating"
    SYMMETRIC = "symmetric"

    def __init__(self, gram, symmetry, allow_degenerate=False):
        if gram.nrows != gram.ncols:
            raise NonSquare("Gram matrix must be square")
        self.gram = gram
        self.dim = gram.nrows
        self.p = gram.p
        self.symmetry = symmetry
        if symmetry == self.ALTERNATING:
            if gram.T != -gram or any(gram.rows[i][i] for i in range(self.dim)):
                raise ValueError("Gram matrix is not alternating")
        elif symmetry == self.SYMMETRIC:
            if gram.T != gram:
                raise ValueError("Gram matrix is not symmetric")
        else:
            raise ValueError(f"unknown symmetry {symmetry!r}")
        self.degenerate = gram.det() == 0
        if self.degenerate and not allow_degenerate:
            raise ValueError("degenerate form (pass allow_degenerate=True)")

    def pair(self, u, v):
        p = self.p
        gv = self.gram.apply(v)
        return sum(a * b for a, b in zip(u, gv)) % p

    def norm(self, v):
        return self.pair(v, v)

    @property
    def alternating(self):
        return self.symmetry == self.ALTERNATING

    @property
    def symmetric(self):
        return self.symmetry == self.SYMMETRIC

    def __repr__(self):
        return f"BilinearSpace(dim={self.dim}, p={self.p}, {self.symmetry})"


def standard_symplectic_space(g, p):
    """Dimension-2g space with (e_i, e_{g+i}) = 1."""
    n = 2 * g
    rows = [[0] * n for _ in range(n)]
    for i in range(g):
        rows[i][g + i] = 1
        rows[g + i][i] = -1
    return BilinearSpace(Mat(rows, p), BilinearSpace.ALTERNATING)
