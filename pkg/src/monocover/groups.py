"""Symplectic and orthogonal groups over F_ell: Picard-Lefschetz maps,
spinor norm via constructive reflection decomposition, kernel classes and
closed-form group orders.

Spinor norm convention: theta(reflection in delta) = square class of
(delta, delta).  All downstream claims are phrased so they are stable under
the choice between the two standard conventions.
"""

from dataclasses import dataclass

from .errors import (BadParity, IsotropicVector, NotAnIsometry,
                     UnsupportedDim, ZeroVector)
from .linalg import BilinearSpace, Mat


class IsometrySpace:
    """A nondegenerate bilinear space together with cached data for the
    isometry-group operations (orthogonal diagonalization, scratch)."""

    def __init__(self, bilinear):
        if bilinear.degenerate:
            raise ValueError("isometry space must be nondegenerate")
        self.bilinear = bilinear
        self.gram = bilinear.gram
        self.dim = bilinear.dim
        self.p = bilinear.p
        self._diag = None

    @property
    def alternating(self):
        return self.bilinear.alternating

    @property
    def symmetric(self):
        return self.bilinear.symmetric

    def pair(self, u, v):
        return self.bilinear.pair(u, v)

    def norm(self, v):
        return self.bilinear.norm(v)

    def square_class(self, x):
        x %= self.p
        if x == 0:
            return 0
        return 1 if pow(x, (self.p - 1) // 2, self.p) == 1 else -1

    def diagonal_basis(self):
        """Basis matrix B (columns) with B^T G B diagonal, plus the diagonal
        entries.  Cached; symmetric spaces only."""
        if self._diag is not None:
            return self._diag
        if not self.symmetric:
            raise ValueError("diagonalization applies to symmetric spaces")
        p, n = self.p, self.dim
        g = [list(r) for r in self.gram.rows]
        basis = [[1 if i == j else 0 for j in range(n)] for i in range(n)]

        def pairing(u, v):
            return sum(u[i] * sum(self.gram.rows[i][j] * v[j]
                                  for j in range(n)) for i in range(n)) % p

        done = []
        vecs = [list(b) for b in basis]
        for step in range(n):
            # pick a vector of nonzero norm in the remaining complement
            cand = None
            for v in vecs:
                if pairing(v, v):
                    cand = v
                    break
            if cand is None:
                # char != 2: some (u, w) != 0, then u + w is anisotropic
                found = False
                for a in range(len(vecs)):
                    for b in range(a + 1, len(vecs)):
                        if pairing(vecs[a], vecs[b]):
                            cand = [(x + y) % p
                                    for x, y in zip(vecs[a], vecs[b])]
                            found = True
                            break
                    if found:
                        break
                if cand is None:
                    raise AssertionError("degenerate complement")
            done.append(cand)
            nv = pairing(cand, cand)
            inv_nv = pow(nv, p - 2, p)
            new_vecs = []
            for v in vecs:
                c = (pairing(v, cand) * inv_nv) % p
                w = [(x - c * y) % p for x, y in zip(v, cand)]
                if any(w):
                    new_vecs.append(w)
            vecs = new_vecs
        bmat = Mat(tuple(zip(*done)), p)
        dvals = tuple(pairing(v, v) for v in done)
        self._diag = (bmat, bmat.inv(), dvals)
        return self._diag

    def disc_square(self):
        """True iff det(Gram) is a square mod p."""
        return self.square_class(self.gram.det()) == 1

    def __repr__(self):
        return f"IsometrySpace(dim={self.dim}, p={self.p}, {self.bilinear.symmetry})"


class Isometry:
    """Matrix preserving the form; mat^T G mat = G is checked on construction."""

    __slots__ = ("mat", "space")

    def __init__(self, mat, space, check=True):
        if check and mat.T * space.gram * mat != space.gram:
            raise NotAnIsometry("matrix does not preserve the form")
        self.mat = mat
        self.space = space

    def __mul__(self, other):
        return Isometry(self.mat * other.mat, self.space, check=False)

    def inv(self):
        return Isometry(self.mat.inv(), self.space, check=False)

    def __eq__(self, other):
        return isinstance(other, Isometry) and self.mat == other.mat

    def __hash__(self):
        return hash(self.mat)

    def __repr__(self):
        return f"Isometry({self.mat!r})"


def _rank_one_update(space, delta, coeff):
    """Matrix of a |-> a + coeff * (a, delta) * delta."""
    p = space.p
    gd = space.gram.apply(delta)
    n = space.dim
    rows = [[(coeff * delta[r] * gd[c]) % p for c in range(n)]
            for r in range(n)]
    for i in range(n):
        rows[i][i] = (rows[i][i] + 1) % p
    return Mat(rows, p)


def transvection(space, delta, lam):
    """T_{delta,lam}: a |-> a + lam * (a, delta) * delta on a symplectic space."""
    if not space.alternating:
        raise ValueError("transvections live in symplectic spaces")
    if not any(x % space.p for x in delta):
        raise ZeroVector("transvection vector must be nonzero")
    return Isometry(_rank_one_update(space, delta, lam), space)


def pl_map(space, delta, n, m):
    """Picard-Lefschetz transformation attached to a vanishing cycle:
    a |-> a - eps * 2^(m-n-1) * (a, delta) * delta with eps = (-1)^(n/2) for
    n even and (-1)^((n-1)/2) for n odd.  A reflection for n even (when
    (delta, delta) = eps / 2^(m-n-2)), a transvection for n odd."""
    if m % 2 != 0 or m < n + 3:
        raise BadParity("m must be even with m >= n+3")
    if not any(x % space.p for x in delta):
        raise ZeroVector("vanishing cycle must be nonzero")
    p = space.p
    eps = 1 if (n // 2 if n % 2 == 0 else (n - 1) // 2) % 2 == 0 else -1
    coeff = (-eps * pow(2, m - n - 1, p)) % p
    return Isometry(_rank_one_update(space, delta, coeff), space)


def reflection_matrix(space, delta):
    """Reflection in an anisotropic vector: delta -> -delta, fixes delta-perp."""
    if not space.symmetric:
        raise ValueError("reflections live in orthogonal spaces")
    nd = space.norm(delta)
    if nd == 0:
        raise IsotropicVector("reflection vector must be anisotropic")
    p = space.p
    coeff = (-2 * pow(nd, p - 2, p)) % p
    return Isometry(_rank_one_update(space, delta, coeff), space)


def spinor_norm(g):
    """Spinor norm in {+1, -1}: decompose g into reflections by the
    constructive Cartan-Dieudonne procedure in an orthogonal (diagonal)
    basis and return the square class of the product of (delta_i, delta_i)."""
    space = g.space
    if not space.symmetric:
        raise NotAnIsometry("spinor norm is defined on orthogonal groups")
    p, n = space.p, space.dim
    bmat, binv, dvals = space.diagonal_basis()
    h = [list(r) for r in (binv * g.mat * bmat).rows]

    def dpair(u, v):
        return sum(u[i] * dvals[i] * v[i] for i in range(n)) % p

    def apply_reflection(w, nw):
        inv_nw = pow(nw, p - 2, p)
        # h <- R_w h ; R_w x = x - 2 (x,w)/ (w,w) w
        for col in range(n):
            x = [h[r][col] for r in range(n)]
            c = (2 * dpair(x, w) * inv_nw) % p
            if c:
                for r in range(n):
                    h[r][col] = (x[r] - c * w[r]) % p

    theta = 1
    for i in range(n):
        v = [1 if r == i else 0 for r in range(n)]
        gv = [h[r][i] for r in range(n)]
        u = [(a - b) % p for a, b in zip(v, gv)]
        if not any(u):
            continue
        nu = dpair(u, u)
        if nu:
            apply_reflection(u, nu)
            theta *= space.square_class(nu)
        else:
            # two-reflection fix through v + gv (norm 4(v,v) != 0) then v
            w1 = [(a + b) % p for a, b in zip(v, gv)]
            nw1 = dpair(w1, w1)
            apply_reflection(w1, nw1)
            apply_reflection(v, dvals[i])
            theta *= space.square_class(nw1) * space.square_class(dvals[i])
    for r in range(n):
        for c in range(n):
            if h[r][c] != (1 if r == c else 0):
                raise NotAnIsometry("reflection decomposition did not close")
    return theta


def det_sign(g):
    d = g.mat.det()
    if d == 1:
        return 1
    if d == g.space.p - 1:
        return -1
    raise NotAnIsometry("isometry determinant must be +-1")


def kernel_class(g):
    """(spinor norm, determinant sign); ker(theta) iff first is +1,
    ker(theta*det) iff the product is +1."""
    return (spinor_norm(g), det_sign(g))


SP = "SP"
O_FULL = "O_FULL"
SO = "SO"
O_KER_THETA = "O_KER_THETA"
O_KER_THETA_DET = "O_KER_THETA_DET"
OMEGA = "OMEGA"

_ORTHOGONAL_LABELS = (O_FULL, SO, O_KER_THETA, O_KER_THETA_DET, OMEGA)


@dataclass(frozen=True)
class GroupSpec:
    """Predicted/named classical group: family label, dimension, field and,
    for orthogonal labels in even dimension, the discriminant square class
    of the Gram matrix (True = square)."""
    label: str
    dim: int
    ell: int
    disc_square: bool = True


def orthogonal_epsilon(dim, ell, disc_square):
    """Type of a nondegenerate symmetric form in even dimension: +1 (split)
    iff (-1)^(dim/2) * disc is a square."""
    k = dim // 2
    minus_one_class = 1 if pow(ell - 1, (ell - 1) // 2, ell) == 1 else -1
    cls = (minus_one_class ** (k % 2)) * (1 if disc_square else -1)
    return 1 if cls == 1 else -1


def group_order(spec):
    """Exact order from the classical product formulas."""
    q, d = spec.ell, spec.dim
    if q % 2 == 0:
        raise UnsupportedDim("even characteristic not supported")
    if spec.label == SP:
        if d % 2 != 0 or d < 2:
            raise UnsupportedDim("Sp needs even dimension >= 2")
        g = d // 2
        order = q ** (g * g)
        for i in range(1, g + 1):
            order *= q ** (2 * i) - 1
        return order
    if spec.label not in _ORTHOGONAL_LABELS:
        raise ValueError(f"unknown label {spec.label}")
    if d < 2:
        raise UnsupportedDim("orthogonal groups need dimension >= 2")
    if d % 2 == 1:
        k = (d - 1) // 2
        full = 2 * q ** (k * k)
        for i in range(1, k + 1):
            full *= q ** (2 * i) - 1
    else:
        k = d // 2
        eps = orthogonal_epsilon(d, q, spec.disc_square)
        full = 2 * q ** (k * (k - 1)) * (q ** k - eps)
        for i in range(1, k - 1 + 1):
            full *= q ** (2 * i) - 1
    if spec.label == O_FULL:
        return full
    if spec.label in (SO, O_KER_THETA, O_KER_THETA_DET):
        if d < 3:
            raise UnsupportedDim("index-2 kernels need dimension >= 3")
        return full // 2
    # OMEGA
    if d < 3:
        raise UnsupportedDim("Omega needs dimension >= 3")
    return full // 4


def isotropic_vector_count(space):
    """Number of nonzero isotropic vectors, by direct enumeration.
    Cross-check oracle for orthogonal_epsilon on small spaces."""
    p, n = space.p, space.dim
    count = 0
    total = p ** n
    for idx in range(1, total):
        v = []
        x = idx
        for _ in range(n):
            v.append(x % p)
            x //= p
        if space.norm(tuple(v)) == 0:
            count += 1
    return count


def minus_identity(space):
    return Isometry(-Mat.identity(space.dim, space.p), space)
