"""Exact arithmetic in F_p and F_{p^k} for odd p, with table-backed
extension fields, subfield embeddings and the quadratic character.

Elements of F_p are canonical integers in [0, p).  Elements of F_{p^k} are
packed integers x = sum_i c_i p^i encoding the coefficient vector
(c_0, ..., c_{k-1}) with respect to the power basis of a fixed monic
irreducible modulus.  The modulus and the multiplicative generator are both
chosen as the smallest candidate in packed-integer order, so every context
(and everything derived from its discrete-log tables) is bit-reproducible.

Fields of size up to TABLE_BUDGET carry full exp/log tables and a
chi table for the quadratic character; larger fields fall back to
coefficient-vector arithmetic.
"""

import numpy as np

from .errors import (CompositeModulus, EvenModulus, IncompatibleDegrees,
                     TableBudgetExceeded)
from . import _kernels

TABLE_BUDGET = 2 ** 24


def is_prime(n):
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


def factorize(n):
    """Prime factorization by trial division (desk scale)."""
    out = {}
    d = 2
    while d * d <= n:
        while n % d == 0:
            out[d] = out.get(d, 0) + 1
            n //= d
        d += 1 if d == 2 else 2
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


# ---------------------------------------------------------------------------
# polynomials over F_p: coefficient lists, lowest degree first


def poly_trim(a):
    while a and a[-1] == 0:
        a.pop()
    return a


def poly_mul(a, b, p):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] = (out[i + j] + ai * bj) % p
    return poly_trim(out)


def poly_mod(a, f, p):
    """a mod f, f monic."""
    a = list(a)
    df = len(f) - 1
    for d in range(len(a) - 1, df - 1, -1):
        c = a[d]
        if c:
            for j in range(df + 1):
                a[d - df + j] = (a[d - df + j] - c * f[j]) % p
    del a[df:]
    return poly_trim(a)


def poly_divmod(a, b, p):
    """Quotient and remainder of a by b over F_p (b nonzero)."""
    a = list(a)
    db, da = len(b) - 1, len(a) - 1
    if da < db:
        return [], poly_trim(a)
    inv_lead = pow(b[-1], p - 2, p)
    q = [0] * (da - db + 1)
    for d in range(da, db - 1, -1):
        c = (a[d] * inv_lead) % p
        if c:
            q[d - db] = c
            for j in range(db + 1):
                a[d - db + j] = (a[d - db + j] - c * b[j]) % p
    return poly_trim(q), poly_trim(a[:db])


def poly_gcd(a, b, p):
    a, b = list(a), list(b)
    while b:
        a, b = b, poly_divmod(a, b, p)[1]
    if a:
        inv = pow(a[-1], p - 2, p)
        a = [(c * inv) % p for c in a]
    return a


def poly_pow_mod(base, e, f, p):
    result = [1]
    base = poly_mod(base, f, p)
    while e:
        if e & 1:
            result = poly_mod(poly_mul(result, base, p), f, p)
        base = poly_mod(poly_mul(base, base, p), f, p)
        e >>= 1
    return result


def poly_deriv(a, p):
    return poly_trim([(i * a[i]) % p for i in range(1, len(a))])


def is_irreducible(f, p):
    """f monic of degree k: irreducible iff no irreducible factor of degree
    <= k/2, tested via gcd(x^(p^j) - x, f) = 1 for j = 1..k//2."""
    k = len(f) - 1
    if k == 1:
        return True
    xp = [0, 1]
    for j in range(1, k // 2 + 1):
        xp = poly_pow_mod(xp, p, f, p)
        g = list(xp)
        # subtract x
        while len(g) < 2:
            g.append(0)
        g[1] = (g[1] - 1) % p
        if len(poly_gcd(poly_trim(g), f, p)) != 1:
            return False
    return True


def find_irreducible(p, k):
    """Smallest monic irreducible of degree k, packed-integer order on the
    lower coefficients (c_0 fastest)."""
    for idx in range(p ** k):
        f = []
        x = idx
        for _ in range(k):
            f.append(x % p)
            x //= p
        f.append(1)
        if is_irreducible(f, p):
            return f
    raise AssertionError("no irreducible polynomial found")


# ---------------------------------------------------------------------------
# field contexts


class GFp:
    """Prime field F_p, p an odd prime verified by trial division."""

    def __init__(self, p):
        if p == 2:
            raise EvenModulus("p = 2 is not supported: 2 must be invertible")
        if p < 2 or not is_prime(p):
            raise CompositeModulus(f"{p} is not prime")
        self.p = p
        self.k = 1
        self.q = p
        self._exp = None
        self._log = None
        self._chi = None

    def add(self, a, b):
        return (a + b) % self.p

    def sub(self, a, b):
        return (a - b) % self.p

    def neg(self, a):
        return (-a) % self.p

    def mul(self, a, b):
        return (a * b) % self.p

    def inv(self, a):
        if a % self.p == 0:
            raise ZeroDivisionError("inverse of zero")
        return pow(a, self.p - 2, self.p)

    def pow_(self, a, e):
        return pow(a, e, self.p)

    def quad_char(self, a):
        a %= self.p
        if a == 0:
            return 0
        return 1 if pow(a, (self.p - 1) // 2, self.p) == 1 else -1

    def elements(self):
        return range(self.p)

    def to_coeffs(self, a):
        return (a % self.p,)

    def from_coeffs(self, c):
        return c[0] % self.p

    def _build_tables(self):
        p = self.p
        for g in range(2, p):
            ok = True
            for r in factorize(p - 1):
                if pow(g, (p - 1) // r, p) == 1:
                    ok = False
                    break
            if ok:
                break
        exp = np.empty(p - 1, np.int64)
        log = np.full(p, -1, np.int64)
        x = 1
        for e in range(p - 1):
            exp[e] = x
            log[x] = e
            x = (x * g) % p
        self.gen = g
        self._exp = exp.astype(np.int32)
        self._log = log.astype(np.int32)

    @property
    def exptab(self):
        if self._exp is None:
            self._build_tables()
        return self._exp

    @property
    def logtab(self):
        if self._log is None:
            self._build_tables()
        return self._log

    @property
    def chitab(self):
        if self._chi is None:
            log = self.logtab
            chi = (1 - 2 * (log & 1)).astype(np.int8)
            chi[0] = 0
            self._chi = chi
        return self._chi

    def __repr__(self):
        return f"GFp({self.p})"


class GFq:
    """Extension field F_{p^k} with a deterministic modulus and generator.

    With tables enabled (q <= TABLE_BUDGET) multiplication, inversion and
    the quadratic character go through exp/log arrays; otherwise they fall
    back to polynomial arithmetic on coefficient vectors.
    """

    def __init__(self, p, k, tables="auto"):
        if p == 2:
            raise EvenModulus("p = 2 is not supported")
        if not is_prime(p):
            raise CompositeModulus(f"{p} is not prime")
        if k < 1:
            raise ValueError("k must be >= 1")
        self.p = p
        self.k = k
        self.q = p ** k
        if tables == "auto":
            tables = self.q <= TABLE_BUDGET
        elif tables and self.q > TABLE_BUDGET:
            raise TableBudgetExceeded(
                f"p^k = {self.q} exceeds the table budget {TABLE_BUDGET}")
        self.has_tables = bool(tables)
        self.modulus = find_irreducible(p, k)
        self._pw = [p ** i for i in range(k + 1)]
        self.gen = self._find_generator()
        self._exp = None
        self._log = None
        self._chi = None
        if self.has_tables:
            self._build_tables()

    # -- representation ----------------------------------------------------

    def to_coeffs(self, a):
        p = self.p
        return tuple((a // self._pw[i]) % p for i in range(self.k))

    def from_coeffs(self, c):
        return sum((ci % self.p) * self._pw[i] for i, ci in enumerate(c))

    def elements(self):
        return range(self.q)

    # -- arithmetic --------------------------------------------------------

    def add(self, a, b):
        p, out = self.p, 0
        for i in range(self.k):
            out += ((a % p + b % p) % p) * self._pw[i]
            a //= p
            b //= p
        return out

    def neg(self, a):
        p, out = self.p, 0
        for i in range(self.k):
            out += ((-(a % p)) % p) * self._pw[i]
            a //= p
        return out

    def sub(self, a, b):
        return self.add(a, self.neg(b))

    def _mul_raw(self, a, b):
        ac = [(a // self._pw[i]) % self.p for i in range(self.k)]
        bc = [(b // self._pw[i]) % self.p for i in range(self.k)]
        prod = poly_mul(ac, bc, self.p)
        prod = poly_mod(prod, self.modulus, self.p)
        return self.from_coeffs(tuple(prod) + (0,) * (self.k - len(prod)))

    def mul(self, a, b):
        if self._log is not None:
            if a == 0 or b == 0:
                return 0
            return int(self._exp[(int(self._log[a]) + int(self._log[b]))
                                 % (self.q - 1)])
        return self._mul_raw(a, b)

    def inv(self, a):
        if a == 0:
            raise ZeroDivisionError("inverse of zero")
        if self._log is not None:
            return int(self._exp[(-int(self._log[a])) % (self.q - 1)])
        return self.pow_(a, self.q - 2)

    def pow_(self, a, e):
        if a == 0:
            return 0 if e else 1
        if self._log is not None:
            return int(self._exp[(int(self._log[a]) * e) % (self.q - 1)])
        result, base = 1, a
        e %= self.q - 1
        while e:
            if e & 1:
                result = self._mul_raw(result, base)
            base = self._mul_raw(base, base)
            e >>= 1
        return result

    def quad_char(self, a):
        if a == 0:
            return 0
        if self._log is not None:
            return -1 if int(self._log[a]) & 1 else 1
        return 1 if self.pow_(a, (self.q - 1) // 2) == 1 else -1

    def log_of(self, a):
        if a == 0:
            raise ValueError("log of zero")
        if self._log is None:
            raise TableBudgetExceeded("field has no discrete-log tables")
        return int(self._log[a])

    def from_log(self, e):
        return int(self.exptab[e % (self.q - 1)])

    # -- construction internals --------------------------------------------

    def _find_generator(self):
        """Smallest packed element of multiplicative order q - 1, certified
        by checking gen^((q-1)/r) != 1 for every prime r | q - 1."""
        radicals = list(factorize(self.q - 1))
        for g in range(1, self.q):
            ok = True
            for r in radicals:
                if self.pow_raw(g, (self.q - 1) // r) == 1:
                    ok = False
                    break
            if ok:
                return g
        raise AssertionError("no generator found")

    def pow_raw(self, a, e):
        """Table-free exponentiation (used before tables exist)."""
        result, base = 1, a
        while e:
            if e & 1:
                result = self._mul_raw(result, base)
            base = self._mul_raw(base, base)
            e >>= 1
        return result

    def _build_tables(self):
        mod_c = np.array(self.modulus, np.int64)
        gen_c = np.array(self.to_coeffs(self.gen), np.int64)
        exp = np.empty(self.q - 1, np.int32)
        log = np.empty(self.q, np.int32)
        _kernels.build_log_tables(self.p, self.k, self.q, mod_c, gen_c,
                                  exp, log)
        # tables must be mutually inverse
        assert log[exp[0]] == 0 and log[exp[-1]] == self.q - 2
        self._exp = exp
        self._log = log

    @property
    def exptab(self):
        if self._exp is None:
            raise TableBudgetExceeded("field has no discrete-log tables")
        return self._exp

    @property
    def logtab(self):
        if self._log is None:
            raise TableBudgetExceeded("field has no discrete-log tables")
        return self._log

    @property
    def chitab(self):
        if self._chi is None:
            log = self.logtab
            chi = (1 - 2 * (log & 1)).astype(np.int8)
            chi[0] = 0
            self._chi = chi
        return self._chi

    def __repr__(self):
        return f"GFq({self.p}^{self.k})"


_field_cache = {}


def build_prime_field(p):
    key = ("p", p)
    if key not in _field_cache:
        _field_cache[key] = GFp(p)
    return _field_cache[key]


def build_ext_field(p, k, tables="auto"):
    """Canonical cached context for F_{p^k}; k = 1 yields the prime field."""
    if k == 1:
        return build_prime_field(p)
    key = ("q", p, k, bool(tables) if tables != "auto" else "auto")
    if key not in _field_cache:
        _field_cache[key] = GFq(p, k, tables=tables)
    return _field_cache[key]


def field_of_order(q):
    """Canonical field with q elements (q an odd prime power)."""
    fac = factorize(q)
    if len(fac) != 1:
        raise CompositeModulus(f"{q} is not a prime power")
    (p, k), = fac.items()
    return build_ext_field(p, k)


# ---------------------------------------------------------------------------
# subfield embeddings


class SubfieldEmbedding:
    """The ring homomorphism F_{p^k} -> F_{p^(k*i)} determined by sending the
    source power-basis root t to its smallest packed root in the target.

    A purely multiplicative map g_src^e -> g_tgt^(e*(P-1)/(Q-1)) identifies
    the subfield as a set but need not be additive; evaluating coefficient
    polynomials at an actual root of the source modulus is what makes the
    map a homomorphism fixing F_p.
    """

    def __init__(self, src, tgt):
        if src.p != tgt.p:
            raise IncompatibleDegrees("different characteristics")
        if tgt.k % src.k != 0:
            raise IncompatibleDegrees(
                f"degree {tgt.k} is not a multiple of {src.k}")
        self.src = src
        self.tgt = tgt
        if src.k == 1:
            self.root_powers = [1]
        else:
            root = self._find_root()
            self.root_powers = [1]
            for _ in range(src.k - 1):
                self.root_powers.append(tgt.mul(self.root_powers[-1], root))

    def _find_root(self):
        tgt = self.tgt
        coeffs = np.array(self.src.modulus, np.int64)
        out = np.empty(tgt.q, np.int64)
        _kernels.eval_poly_all(coeffs, tgt.q, tgt.q - 1, tgt.p, tgt.k,
                               tgt.logtab, tgt.exptab, out)
        roots = np.nonzero(out == 0)[0]
        if len(roots) == 0:
            raise AssertionError("modulus has no root in the target field")
        return int(roots[0])

    def __call__(self, x):
        if x == 0:
            return 0
        coeffs = self.src.to_coeffs(x)
        tgt = self.tgt
        acc = 0
        for c, rp in zip(coeffs, self.root_powers):
            if c:
                acc = tgt.add(acc, tgt.mul(c, rp))
        return acc


_embedding_cache = {}


def subfield_embedding(src, tgt):
    key = (id(src), id(tgt))
    if key not in _embedding_cache:
        _embedding_cache[key] = SubfieldEmbedding(src, tgt)
    return _embedding_cache[key]


def embed_subfield(x, src, tgt):
    return subfield_embedding(src, tgt)(x)
