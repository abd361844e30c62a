"""Exterior powers of a symplectic space: matrices of wedge^n g, the induced
bilinear pairing, wedge characteristic polynomials over Z, and the
isotropic-shear test.

Basis vectors of wedge^n are indexed by n-subsets of {0..2g-1} in
lexicographic order; all signs follow from keeping wedge monomials sorted,
so the matrix of wedge^n g has (S, T) entry det(g[S, T]) with no extra
Koszul signs.
"""

from itertools import combinations

from .errors import BadDegree
from .linalg import (BilinearSpace, Mat, PolyZ, bareiss_det, int_charpoly)


class WedgeBasisIndex:
    """Lexicographic indexing of the n-subsets of {0..dim-1}."""

    def __init__(self, dim, n):
        if not 1 <= n <= dim:
            raise BadDegree(f"need 1 <= n <= {dim}, got {n}")
        self.dim = dim
        self.n = n
        self.subsets = list(combinations(range(dim), n))
        self.position = {s: i for i, s in enumerate(self.subsets)}

    def __len__(self):
        return len(self.subsets)


def _minor_ff(rows, sub_r, sub_c, p):
    m = Mat(tuple(tuple(rows[r][c] for c in sub_c) for r in sub_r), p)
    return m.det()


def wedge_matrix(g, n):
    """Matrix of wedge^n g on the lex-ordered subset basis: entry (S, T) is
    the determinant of the S x T minor.  g may be a Mat over F_p or an
    Isometry (its matrix is used)."""
    mat = g.mat if hasattr(g, "mat") else g
    idx = WedgeBasisIndex(mat.nrows, n)
    p = mat.p
    rows = []
    for s in idx.subsets:
        rows.append(tuple(_minor_ff(mat.rows, s, t, p) for t in idx.subsets))
    return Mat(tuple(rows), p)


def wedge_matrix_int(rows, n):
    """Integer wedge matrix (minors by fraction-free elimination)."""
    dim = len(rows)
    idx = WedgeBasisIndex(dim, n)
    out = []
    for s in idx.subsets:
        out.append([bareiss_det([[rows[r][c] for c in t] for r in s])
                    for t in idx.subsets])
    return out


def induced_wedge_form(space, n):
    """Bilinear form on wedge^n with (u_1^...^u_n, v_1^...^v_n) =
    det((u_i, v_j)); symmetric for n even, alternating for n odd."""
    if not space.alternating:
        raise ValueError("induced wedge form is defined for symplectic spaces")
    gram = space.gram
    dim = gram.nrows
    p = gram.p
    idx = WedgeBasisIndex(dim, n)
    rows = []
    for s in idx.subsets:
        rows.append(tuple(_minor_ff(gram.rows, s, t, p) for t in idx.subsets))
    symmetry = (BilinearSpace.SYMMETRIC if n % 2 == 0
                else BilinearSpace.ALTERNATING)
    return BilinearSpace(Mat(tuple(rows), p), symmetry)


def wedge_char_poly(poly, n):
    """Monic integer polynomial of degree C(deg, n) whose roots are the
    n-fold products of the roots of poly, computed exactly as the
    characteristic polynomial of wedge^n of the companion matrix."""
    if not poly.is_monic:
        raise ValueError("wedge_char_poly needs a monic polynomial")
    if poly.degree < n:
        raise BadDegree("n exceeds the polynomial degree")
    comp = poly.companion()
    return int_charpoly(wedge_matrix_int(comp, n))


def shear_check(g, n):
    """True iff wedge^n g is a nontrivial isotropic shear:
    wedge != id and (wedge - id)^2 = 0."""
    w = wedge_matrix(g, n)
    ident = Mat.identity(w.nrows, w.p)
    if w == ident:
        return False
    d = w - ident
    return (d * d) == Mat.zeros(w.nrows, w.ncols, w.p)
