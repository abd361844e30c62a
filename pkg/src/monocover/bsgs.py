"""Base and strong generating sets for matrix groups acting on the nonzero
vectors of F_ell^dim.

Vectors are packed integers sum v_i * ell^i; the permutation domain is
[1, ell^dim).  Orbits are computed by BFS with numba kernels and recorded
as Schreier vectors (per-point generator index), which certify the exact
group order as the product of orbit lengths once the chain is complete.

Two build strategies:

* full deterministic Schreier-Sims (processes every Schreier generator) --
  exact for arbitrary generating sets, intended for modest domains;
* seeded random sifting against a known upper bound on the order.  Since
  the product of orbit lengths is always a lower bound for the generated
  group, reaching an upper bound certifies equality exactly.  This is how
  classical-group orders are certified at scale.

Both are deterministic given the seed.
"""

import random

import numpy as np

from .errors import CertificationStalled, DomainBudgetExceeded
from .linalg import Mat
from . import _kernels

DOMAIN_BUDGET = 10 ** 7
STALL_LIMIT = 512


def _pack(vec, ell):
    out = 0
    for x in reversed(vec):
        out = out * ell + (x % ell)
    return out


def _unpack(pt, ell, dim):
    out = []
    for _ in range(dim):
        out.append(pt % ell)
        pt //= ell
    return tuple(out)


def _apply_pt(mat, pt, ell, dim):
    v = _unpack(pt, ell, dim)
    w = mat.apply(v)
    return _pack(w, ell)


class _StrongGen:
    __slots__ = ("mat", "inv", "arr", "ins_level")

    def __init__(self, mat, ins_level):
        self.mat = mat
        self.inv = mat.inv()
        self.arr = np.array([list(r) for r in mat.rows], np.int64)
        self.ins_level = ins_level


class _Level:
    def __init__(self, base, domain, ell, dim):
        self.base = base
        self.ell = ell
        self.dim = dim
        self.gens = []          # local _StrongGen references
        self.schreier = np.full(domain, -1, np.int16)
        self.schreier[base] = -2
        self.orbit = np.array([base], np.int64)
        self.umemo = {base: (None, None)}  # point -> (u, u^-1), u: base -> point

    def _stack(self, gens):
        return np.stack([g.arr for g in gens])

    def add_gen(self, sg):
        """Extend the orbit with one more generator."""
        gi = len(self.gens)
        self.gens.append(sg)
        if gi > 32000:
            raise AssertionError("too many strong generators")
        img = np.empty(len(self.orbit), np.int64)
        _kernels.apply_packed(sg.arr, self.orbit, self.ell, self.dim, img)
        img = np.unique(img)
        new = img[self.schreier[img] == -1]
        if len(new) == 0:
            return
        self.schreier[new] = gi
        queue = np.empty(self.schreier.shape[0], np.int64)
        queue[:len(new)] = new
        tail = _kernels.orbit_bfs_ext(self._stack(self.gens), self.ell,
                                      self.dim, self.schreier, queue,
                                      len(new))
        self.orbit = np.concatenate([self.orbit, queue[:tail]])

    def urep(self, pt):
        """Transversal representative u with u(base) = pt, and its inverse.
        Walks the Schreier vector with path compression."""
        memo = self.umemo
        path = []
        y = int(pt)
        while y not in memo:
            gi = int(self.schreier[y])
            path.append((y, gi))
            y = _apply_pt(self.gens[gi].inv, y, self.ell, self.dim)
        u, uinv = memo[y]
        for point, gi in reversed(path):
            g = self.gens[gi]
            u = g.mat if u is None else g.mat * u
            uinv = g.inv if uinv is None else uinv * g.inv
            memo[point] = (u, uinv)
        return memo[pt]


class Bsgs:
    """Stabilizer chain with exact order, membership sifting and exactly
    uniform element sampling."""

    def __init__(self, gens, ell, dim, seed=0, upper_bound=None,
                 domain_budget=DOMAIN_BUDGET):
        domain = ell ** dim
        if domain > domain_budget:
            raise DomainBudgetExceeded(
                f"ell^dim = {domain} exceeds the domain budget {domain_budget}")
        self.ell = ell
        self.dim = dim
        self.domain = domain
        self.levels = []
        self._identity = Mat.identity(dim, ell)
        gens = [g.mat if hasattr(g, "mat") else g for g in gens]
        gens = [g for g in gens if g != self._identity]
        self._seed_gens = gens
        for g in gens:
            self._insert_gen(g, 0)
        if upper_bound is None:
            self._deterministic_schreier_sims()
        else:
            self._randomized_to_target(upper_bound, seed)

    # -- construction -------------------------------------------------------

    def _new_base_for(self, mat):
        for pt in range(1, self.domain):
            if _apply_pt(mat, pt, self.ell, self.dim) != pt:
                return pt
        raise AssertionError("identity passed as a strong generator")

    def _insert_gen(self, mat, ins_level):
        """Register mat as a strong generator fixing the first ins_level
        base points; extends orbits at levels 0..ins_level."""
        sg = _StrongGen(mat, ins_level)
        if ins_level == len(self.levels):
            self.levels.append(_Level(self._new_base_for(mat), self.domain,
                                      self.ell, self.dim))
        for t in range(ins_level + 1):
            self.levels[t].add_gen(sg)

    @property
    def order(self):
        out = 1
        for lvl in self.levels:
            out *= len(lvl.orbit)
        return out

    def sift(self, mat, start_level=0):
        """Reduce mat through the chain; returns (residue, level) where the
        reduction stopped (level == len(levels) and residue == identity for
        members)."""
        g = mat
        for i in range(start_level, len(self.levels)):
            lvl = self.levels[i]
            x = _apply_pt(g, lvl.base, self.ell, self.dim)
            if x == lvl.base:
                continue
            if lvl.schreier[x] == -1:
                return g, i
            _, uinv = lvl.urep(x)
            g = uinv * g
        return g, len(self.levels)

    def contains(self, mat):
        residue, _ = self.sift(mat)
        return residue == self._identity

    def _add_residue(self, residue, level):
        if level == len(self.levels):
            self._insert_gen(residue, level)
        else:
            self._insert_gen(residue, level)

    def _deterministic_schreier_sims(self):
        """Textbook Schreier-Sims: verify every Schreier generator sifts
        through the rest of the chain, adding residues until closure."""
        i = len(self.levels) - 1
        while i >= 0:
            lvl = self.levels[i]
            restart = False
            idx = 0
            while idx < len(lvl.orbit):
                x = int(lvl.orbit[idx])
                u_x, _ = lvl.urep(x)
                for sg in list(lvl.gens):
                    sx = _apply_pt(sg.mat, x, self.ell, self.dim)
                    _, usx_inv = lvl.urep(sx)
                    if u_x is None:
                        word = sg.mat
                    else:
                        word = sg.mat * u_x
                    schreier_gen = usx_inv * word if usx_inv is not None else word
                    if schreier_gen == self._identity:
                        continue
                    residue, j = self.sift(schreier_gen, i + 1)
                    if residue != self._identity:
                        self._add_residue(residue, j)
                        i = j
                        restart = True
                        break
                if restart:
                    break
                idx += 1
            if restart:
                continue
            i -= 1

    def _random_word(self, rng):
        g = rng.choice(self._all_gens).mat
        for _ in range(rng.randrange(1, 3)):
            g = g * rng.choice(self._all_gens).mat
        if self.levels:
            lvl = rng.choice(self.levels)
            pt = int(lvl.orbit[rng.randrange(len(lvl.orbit))])
            u, _ = lvl.urep(pt)
            if u is not None:
                g = u * g
        return g

    def _randomized_to_target(self, target, seed):
        if not self.levels:
            if target != 1:
                raise CertificationStalled("no generators but target > 1")
            return
        self._all_gens = self.levels[0].gens
        rng = random.Random(seed)
        stall = 0
        while self.order < target:
            g = self._random_word(rng)
            residue, j = self.sift(g)
            if residue != self._identity:
                self._add_residue(residue, j)
                stall = 0
            else:
                stall += 1
                if stall >= STALL_LIMIT:
                    raise CertificationStalled(
                        f"order stalled at {self.order} < target {target}")
        if self.order != target:
            raise CertificationStalled(
                f"orbit product {self.order} overshot target {target}")

    # -- sampling ------------------------------------------------------------

    def sample(self, rng):
        """Exactly uniform group element: independent uniform transversal
        choice at every level."""
        acc = None
        for lvl in self.levels:
            pt = int(lvl.orbit[rng.randrange(len(lvl.orbit))])
            u, _ = lvl.urep(pt)
            if u is None:
                continue
            acc = u if acc is None else acc * u
        return acc if acc is not None else self._identity

    def base_points(self):
        return [_unpack(lvl.base, self.ell, self.dim) for lvl in self.levels]


def bsgs_build(gens, ell, dim, seed=0, upper_bound=None,
               domain_budget=DOMAIN_BUDGET):
    """Build a BSGS for the matrix group generated by gens (Mat or Isometry)
    acting on nonzero packed vectors.  With upper_bound set, uses seeded
    random sifting and certifies order == upper_bound exactly."""
    return Bsgs(gens, ell, dim, seed=seed, upper_bound=upper_bound,
                domain_budget=domain_budget)


def bsgs_sample(b, rng_seed):
    """Deterministic uniform sample; accepts a seed or a random.Random."""
    rng = rng_seed if isinstance(rng_seed, random.Random) \
        else random.Random(rng_seed)
    return b.sample(rng)
