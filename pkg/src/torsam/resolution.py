"""Minimal graded free resolutions over R, plus Betti data over the ambient P.

Over R a resolution is built level by level and degree by degree: the new
generators of F_i in degree t are a complement of the image of the
lower-degree part inside ker(d_{i-1})_t. Each level is finished once it has
been processed through a certified bound on its generator degrees, obtained
from the chain reg_P(Omega^{i+1}) <= max(reg_P(R) + maxdeg F_i, reg_P(Omega^i) + 1).

Over P everything comes from Koszul homology: beta^P_{i,j}(M) is the
dimension of H_i(K(x) ⊗ M)_j, computed for j up to a regularity bound read
off a Gröbner basis of the presentation (Taylor bound on the initial module).
"""

from fractions import Fraction
from itertools import combinations
from math import comb

import numpy as np

from . import linalg
from .groebner import Submodule
from .ring import FreeLayout, map_matrix


# --- Hilbert series --------------------------------------------------------

class HilbertSeries:
    """z^shift * h(z) / (1 - z)^dim with h(1) != 0."""

    def __init__(self, coeffs, shift, dim):
        self.coeffs = list(coeffs)
        self.shift = shift
        self.dim = dim

    @classmethod
    def from_numerator(cls, num, npoles):
        """num: dict power -> int coefficient of the numerator over (1-z)^npoles."""
        num = {k: v for k, v in num.items() if v}
        if not num:
            return cls([], 0, -1)
        lo, hi = min(num), max(num)
        c = [num.get(k, 0) for k in range(lo, hi + 1)]
        d = npoles
        # divide out factors of (1 - z) while h(1) = 0
        while d > 0 and sum(c) == 0:
            q = []
            acc = 0
            for a in c[:-1]:
                acc += a
                q.append(acc)
            c = q
            d -= 1
        while c and c[-1] == 0:
            c.pop()
        return cls(c, lo, d)

    @property
    def numerator(self):
        return {self.shift + k: v for k, v in enumerate(self.coeffs) if v}

    @property
    def multiplicity(self):
        return sum(self.coeffs)

    def is_zero(self):
        return not self.coeffs

    def top_degree(self):
        if self.dim != 0:
            return None
        return self.shift + len(self.coeffs) - 1

    def value(self, t):
        """Hilbert function at t."""
        out = 0
        d = self.dim
        for k, c in enumerate(self.coeffs):
            s = t - self.shift - k
            if s < 0:
                continue
            out += c * (comb(s + d - 1, d - 1) if d > 0 else (1 if s == 0 else 0))
        return out

    def polynomial_value(self, t):
        """Hilbert polynomial at t (agrees with value for t large)."""
        d = self.dim
        if d <= 0:
            return 0
        out = Fraction(0)
        for k, c in enumerate(self.coeffs):
            s = t - self.shift - k
            # C(s + d - 1, d - 1) as a polynomial in s
            num = Fraction(1)
            for r in range(1, d):
                num *= Fraction(s + r, r)
            out += c * num
        return int(out)

    def to_json(self):
        return {"numerator": [[k, v] for k, v in sorted(self.numerator.items())], "dim": self.dim,
                "multiplicity": self.multiplicity}

    def over(self, D):
        """Numerator (dict power -> coeff) of the same series written over (1 - z)^D."""
        if self.is_zero():
            return {}
        if D < self.dim:
            raise ValueError("pole order too small")
        c = list(self.coeffs)
        for _ in range(D - self.dim):
            c = [a - b for a, b in zip(c + [0], [0] + c)]
        return {self.shift + k: v for k, v in enumerate(c) if v}

    def __add__(self, other):
        D = max(self.dim, other.dim, 0)
        num = self.over(D)
        for k, v in other.over(D).items():
            num[k] = num.get(k, 0) + v
        return HilbertSeries.from_numerator(num, D)

    def shifted(self, k):
        """Series of M(-k): multiply by z^k."""
        return HilbertSeries(self.coeffs, self.shift + k, self.dim)

    def __eq__(self, other):
        return (isinstance(other, HilbertSeries) and self.coeffs == other.coeffs
                and self.shift == other.shift and self.dim == other.dim)

    def __repr__(self):
        return f"HilbertSeries(z^{self.shift}*{self.coeffs}/(1-z)^{self.dim})"


# --- Betti numbers over P --------------------------------------------------

def taylor_bound(gens, nvars):
    """Upper bound for reg(P/J), J the monomial ideal generated by gens."""
    gens = _minimalize(gens)
    if not gens:
        return 0
    if any(sum(m) == 0 for m in gens):
        return None
    best = 0
    m = len(gens)
    degs = sorted((sum(g) for g in gens), reverse=True)
    full = sum(max(g[v] for g in gens) for v in range(nvars))
    for i in range(1, min(nvars, m) + 1):
        if comb(m, i) > 20000:
            cand = min(full, sum(degs[:i]))
        else:
            cand = 0
            for S in combinations(gens, i):
                cand = max(cand, sum(max(g[v] for g in S) for v in range(nvars)))
        best = max(best, cand - i)
    return best


def _minimalize(mons):
    mons = sorted(set(mons), key=sum)
    out = []
    for a in mons:
        if not any(all(x <= y for x, y in zip(b, a)) for b in out):
            out.append(a)
    return out


def regularity_bound(M):
    """Upper bound for reg_P(M)."""
    if not M.degrees:
        return 0
    if M.kill is not None:
        return M.top_degree()
    # finite length shows up as a zero piece past the generators
    for t in range(M.maxgen, M.maxgen + 3):
        if M.dim(t) == 0:
            return max((s for s in range(M.indeg, t) if M.dim(s)), default=M.indeg)
    U = Submodule(M.ring, M.degrees, M.columns)
    lead = U.leading_monomials()
    best = None
    for k, a in enumerate(M.degrees):
        b = taylor_bound(lead[k], M.ring.nvars)
        if b is None:
            continue
        best = a + b if best is None else max(best, a + b)
    return best if best is not None else M.indeg


def p_betti(M):
    """Graded Betti numbers of M over the ambient polynomial ring, {(i, j): beta}."""
    if "p_betti" in M._cache:
        return M._cache["p_betti"]
    n = M.ring.nvars
    p = M.p
    out = {}
    if M.is_zero():
        M._cache["p_betti"] = out
        return out
    B = regularity_bound(M)
    subsets = [list(combinations(range(n), i)) for i in range(n + 1)]
    index = [{S: k for k, S in enumerate(subsets[i])} for i in range(n + 1)]
    lo = M.indeg

    def boundary(i, j):
        # K_i ⊗ M in degree j -> K_{i-1} ⊗ M in degree j
        t = j - i
        ds, dt = M.dim(t), M.dim(t + 1)
        rows = len(subsets[i - 1]) * dt
        cols = len(subsets[i]) * ds
        D = np.zeros((rows, cols), dtype=np.int64)
        if ds == 0 or dt == 0:
            return D
        A = M.action(1, t)
        for c, S in enumerate(subsets[i]):
            for r, s in enumerate(S):
                T = S[:r] + S[r + 1:]
                row = index[i - 1][T]
                sign = 1 if r % 2 == 0 else p - 1
                D[row * dt:(row + 1) * dt, c * ds:(c + 1) * ds] = (sign * A[s]) % p
        return D

    ranks = {}

    def rk(i, j):
        if i < 1 or i > n:
            return 0
        if (i, j) not in ranks:
            ranks[(i, j)] = linalg.rank(boundary(i, j), p)
        return ranks[(i, j)]

    for i in range(n + 1):
        for j in range(lo + i, B + i + 1):
            dimc = len(subsets[i]) * M.dim(j - i)
            if dimc == 0:
                continue
            b = dimc - rk(i, j) - rk(i + 1, j)
            if b:
                out[(i, j)] = b
    M._cache["p_betti"] = out
    return out


def hilbert_data(M):
    if "hs" in M._cache:
        return M._cache["hs"]
    n = M.ring.nvars
    num = {}
    for (i, j), b in p_betti(M).items():
        num[j] = num.get(j, 0) + (-1) ** i * b
    hs = HilbertSeries.from_numerator(num, n)
    M._cache["hs"] = hs
    return hs


def regularity(M):
    """Castelnuovo-Mumford regularity over the ambient P: max(j - i)."""
    B = p_betti(M)
    if not B:
        raise ValueError("regularity of the zero module")
    return max(j - i for (i, j) in B)


def projdim_P(M):
    B = p_betti(M)
    if not B:
        raise ValueError("zero module")
    return max(i for (i, j) in B)


def depth_dim(M):
    """(depth, Krull dimension) of M."""
    if M.is_zero():
        raise ValueError("depth and dimension of the zero module are undefined")
    depth = M.ring.nvars - projdim_P(M)
    return depth, hilbert_data(M).dim


def ring_module(ring):
    return ring.as_module()


def ring_regularity(ring):
    if "reg" not in ring._flags:
        ring._flags["reg"] = regularity(ring.as_module())
    return ring._flags["reg"]


def ring_depth_dim(ring):
    if "depth_dim" not in ring._flags:
        ring._flags["depth_dim"] = depth_dim(ring.as_module())
    return ring._flags["depth_dim"]


def ring_multiplicity(ring):
    return hilbert_data(ring.as_module()).multiplicity


def is_gorenstein(ring):
    if "gorenstein" in ring._flags:
        return ring._flags["gorenstein"]
    n = ring.nvars
    depth, dim = ring_depth_dim(ring)
    B = p_betti(ring.as_module())
    ngens = sum(b for (i, j), b in B.items() if i == 1)
    if ngens == 0 or ngens == n - dim:
        out = True
    elif depth != dim:
        out = False
    else:
        pd = max(i for (i, j) in B)
        out = sum(b for (i, j), b in B.items() if i == pd) == 1
    ring._flags["gorenstein"] = out
    return out


# --- resolutions over R ----------------------------------------------------

class _Level:
    def __init__(self, degrees=(), columns=(), coords=()):
        self.degrees = list(degrees)
        self.columns = list(columns)
        self.coords = list(coords)
        self.done = None
        self.bound = None

    @property
    def complete(self):
        return self.bound is not None and self.done is not None and self.done >= self.bound


class FreeComplex:
    """Minimal graded free resolution F of a module M over its ring, built lazily.

    Level i stores the degrees of the generators of F_i and, for i >= 1, the
    images of those generators in F_{i-1} (tuples of polynomials).
    """

    def __init__(self, M, i_max=None, degree_bound=None):
        self.ring = M.ring
        self.M = M.minimal()
        self.p = self.ring.p
        self.i_max = i_max
        self.degree_bound = degree_bound
        self.minimal = True
        lev0 = _Level(self.M.degrees)
        lev0.done = max(self.M.degrees, default=0)
        lev0.bound = lev0.done
        self.levels = [lev0]
        self._layouts = {}
        self._rho = {}
        self._lev1_candidates = sorted(zip(self.M.col_degrees, range(len(self.M.columns))))

    # bookkeeping
    def layout(self, i):
        if i not in self._layouts:
            self._layouts[i] = FreeLayout(self.ring, self.level(i).degrees)
        return self._layouts[i]

    def level(self, i):
        while len(self.levels) <= i:
            self.levels.append(_Level())
        return self.levels[i]

    def rho(self, i):
        """Certified upper bound on reg_P(Omega^i M), hence on the degrees of F_i."""
        if i in self._rho:
            return self._rho[i]
        if i == 0:
            val = regularity(self.M) if not self.M.is_zero() else 0
        else:
            prev = self.complete(i - 1)
            val = max(ring_regularity(self.ring) + max(prev.degrees, default=0), self.rho(i - 1) + 1)
        self._rho[i] = val
        return val

    def differential_matrix(self, i, t):
        """Matrix of d_i: (F_i)_t -> (F_{i-1})_t, using generators known so far."""
        lev = self.level(i)
        return map_matrix(self.ring, self.layout(i - 1), lev.degrees, lev.coords, t)

    def _new_generator(self, i, t, vec):
        lev = self.level(i)
        lev.degrees.append(t)
        lev.coords.append(vec)
        lev.columns.append(tuple(self.layout(i - 1).polys(vec, t)))
        self._layouts.pop(i, None)

    def extend(self, i, T):
        """Make sure the generators of F_i of degree <= T are known."""
        lev = self.level(i)
        if i == 0 or (lev.done is not None and lev.done >= T):
            return lev
        if lev.bound is not None and lev.done >= lev.bound:
            return lev
        if i == 1:
            self._extend_first(T)
            return lev
        prev = self.extend(i - 1, T)
        start = self.M.indeg + i if lev.done is None else lev.done + 1
        if prev.bound is not None and prev.done >= prev.bound and not prev.degrees:
            lev.done = T
            lev.bound = lev.bound if lev.bound is not None else T
            return lev
        lay = self.layout(i - 1)
        for t in range(start, T + 1):
            n = lay.dim(t)
            if n == 0:
                lev.done = t
                continue
            D = self.differential_matrix(i - 1, t)
            K = linalg.nullspace(D, self.p) if D.shape[1] else np.zeros((0, n), dtype=np.int64)
            if len(K):
                img = self.differential_matrix(i, t)
                span = linalg.Span(n, self.p, img.T if img.shape[1] else None)
                for v in K:
                    if span.add(v):
                        self._new_generator(i, t, v)
            lev.done = t
        return lev

    def _extend_first(self, T):
        lev = self.level(1)
        cand = self._lev1_candidates
        last = cand[-1][0] if cand else self.M.indeg
        upto = min(T, last)
        start = self.M.indeg if lev.done is None else lev.done + 1
        M = self.M
        lay = self.layout(0)
        for t in range(start, upto + 1):
            here = [j for d, j in cand if d == t]
            if not here:
                lev.done = t
                continue
            n = lay.dim(t)
            img = self.differential_matrix(1, t)
            span = linalg.Span(n, self.p, img.T if img.shape[1] else None)
            for j in here:
                if span.add(M.col_coords[j]):
                    lev.degrees.append(t)
                    lev.coords.append(M.col_coords[j])
                    lev.columns.append(M.columns[j])
            lev.done = t
        if T >= last:
            lev.done = max(T, last)
            lev.bound = last

    def complete(self, i):
        """Finish level i; returns the level."""
        lev = self.level(i)
        if i == 0 or lev.complete:
            return lev
        if i == 1:
            self._extend_first(max(d for d, _ in self._lev1_candidates) if self._lev1_candidates else self.M.indeg)
            return lev
        prev = self.complete(i - 1)
        if not prev.degrees:
            lev.done = lev.done if lev.done is not None else self.M.indeg
            lev.bound = lev.done
            return lev
        bound = self.rho(i)
        if self.degree_bound is not None:
            bound = min(bound, self.degree_bound)
        self.extend(i, bound)
        lev.bound = bound
        return lev

    # queries
    def rank(self, i):
        return len(self.complete(i).degrees)

    def degrees(self, i):
        return list(self.complete(i).degrees)

    def maxdeg(self, i):
        d = self.complete(i).degrees
        return max(d) if d else None

    def betti(self, i):
        return self.rank(i)

    def betti_table(self, i_max=None):
        i_max = self.i_max if i_max is None else i_max
        out = []
        for i in range(i_max + 1):
            counts = {}
            for d in self.degrees(i):
                counts[d] = counts.get(d, 0) + 1
            for d in sorted(counts):
                out.append([i, -d, counts[d]])
        return out

    def entry(self, i, row, col):
        """Entry of d_i at (row generator of F_{i-1}, column generator of F_i)."""
        return self.level(i).columns[col][row]

    def syzygy_module(self, i, name=None):
        """Omega^i(M) = coker(d_{i+1}) presented on the generators of F_i."""
        from .module import Module
        if i == 0:
            return self.M
        lev = self.complete(i)
        nxt = self.complete(i + 1)
        return Module(self.ring, lev.degrees, nxt.columns, name=name or f"Omega^{i}")

    def check_complex(self, i_max=None, t_max=None):
        """d_{i-1} d_i = 0 on all stored generators (degreewise)."""
        i_max = self.i_max if i_max is None else i_max
        for i in range(2, i_max + 1):
            lev = self.complete(i)
            self.complete(i - 1)
            for d, v in zip(lev.degrees, lev.coords):
                D = self.differential_matrix(i - 1, d)
                if ((D @ v) % self.p).any():
                    return False
        return True

    def to_json(self, i_max=None):
        i_max = self.i_max if i_max is None else i_max
        return {"betti": self.betti_table(i_max), "i_max": i_max,
                "degree_bound": [self.level(i).bound for i in range(i_max + 1)], "minimal": True}


def minimal_resolution(M, i_max=None, degree_bound=None):
    if i_max is None:
        i_max = ring_depth_dim(M.ring)[0] + 4
    F = FreeComplex(M, i_max=i_max, degree_bound=degree_bound)
    for i in range(i_max + 1):
        F.complete(i)
    return F


def resolution_of(M):
    """Cached lazy resolution attached to the module."""
    if "resolution" not in M._cache:
        M._cache["resolution"] = FreeComplex(M)
    return M._cache["resolution"]


def projdim_finite(M):
    """(finite?, projdim or None), decided by the first-gap property at depth R + 1."""
    if M.is_zero():
        raise ValueError("projective dimension of the zero module")
    F = resolution_of(M)
    t = ring_depth_dim(M.ring)[0]
    if F.rank(t + 1) != 0:
        return False, None
    pd = max(i for i in range(t + 1) if F.rank(i))
    return True, pd
