"""Brute-force dense linear algebra over the ambient polynomial ring.

Shares nothing with the package beyond reading polynomial term dictionaries:
every graded piece is P-level coordinates modulo an explicitly spanned
subspace, and Tor comes from a non-minimal resolution built by kernels.
"""

from functools import lru_cache
from itertools import combinations_with_replacement

import numpy as np


@lru_cache(maxsize=None)
def monomials(n, d):
    if d < 0:
        return ()
    out = []
    for combo in combinations_with_replacement(range(n), d):
        e = [0] * n
        for v in combo:
            e[v] += 1
        out.append(tuple(e))
    return sorted(out, reverse=True)


def echelon(rows, p):
    """Reduced row echelon form of a list of vectors; returns (matrix, pivots)."""
    if not len(rows):
        return np.zeros((0, 0), dtype=np.int64), []
    A = np.array(rows, dtype=np.int64) % p
    m, n = A.shape
    piv = []
    r = 0
    for c in range(n):
        if r == m:
            break
        nz = np.nonzero(A[r:, c])[0]
        if not len(nz):
            continue
        k = r + nz[0]
        A[[r, k]] = A[[k, r]]
        A[r] = (A[r] * pow(int(A[r, c]), p - 2, p)) % p
        col = A[:, c].copy()
        col[r] = 0
        hit = np.nonzero(col)[0]
        if len(hit):
            A[hit] = (A[hit] - np.outer(col[hit], A[r])) % p
        piv.append(c)
        r += 1
    return A[:r], piv


def rank(rows, p):
    return len(echelon(rows, p)[1]) if len(rows) else 0


class Basis:
    """Incrementally grown echelon basis; add() reports whether a vector was new."""

    def __init__(self, p):
        self.p = p
        self.rows = []
        self.piv = []

    def add(self, v):
        v = np.array(v, dtype=np.int64) % self.p
        for r, c in zip(self.rows, self.piv):
            if v[c]:
                v = (v - v[c] * r) % self.p
        nz = np.nonzero(v)[0]
        if not len(nz):
            return False
        c = nz[0]
        self.rows.append((v * pow(int(v[c]), self.p - 2, self.p)) % self.p)
        self.piv.append(c)
        return True


class GradedSpace:
    """Degree-t piece of (⊕_j P(-b_j)) / W where W is spanned by the given generators.

    relations: list of (degree, vector) where vector is a list of term dicts (one per summand);
    ideal: term dicts of the ring relations; kill: s or None (drop P-degrees >= s).
    """

    def __init__(self, n, p, degrees, relations, ideal, kill=None):
        self.n, self.p = n, p
        self.degrees = list(degrees)
        self.relations = list(relations)
        self.ideal = list(ideal)
        self.kill = kill
        self._cache = {}
        self._layouts = {}

    def layout(self, t):
        if t in self._layouts:
            return self._layouts[t]
        blocks, off = [], 0
        for j, b in enumerate(self.degrees):
            d = t - b
            if d < 0 or (self.kill is not None and d >= self.kill):
                mons = []
            else:
                mons = monomials(self.n, d)
            blocks.append((off, {m: off + k for k, m in enumerate(mons)}))
            off += len(mons)
        self._layouts[t] = (blocks, off)
        return blocks, off

    def _add(self, vec, blocks, j, terms, shift, c=1):
        off, index = blocks[j]
        for m, a in terms.items():
            mm = tuple(x + y for x, y in zip(m, shift))
            if mm in index:
                vec[index[mm]] = (vec[index[mm]] + c * a) % self.p

    def piece(self, t):
        if t in self._cache:
            return self._cache[t]
        blocks, size = self.layout(t)
        rows = []
        for dcol, col in self.relations:
            for mu in monomials(self.n, t - dcol):
                v = np.zeros(size, dtype=np.int64)
                for j, f in enumerate(col):
                    self._add(v, blocks, j, f, mu)
                if v.any():
                    rows.append(v)
        for j, b in enumerate(self.degrees):
            for g in self.ideal:
                dg = sum(next(iter(g)))
                for mu in monomials(self.n, t - b - dg):
                    v = np.zeros(size, dtype=np.int64)
                    self._add(v, blocks, j, g, mu)
                    if v.any():
                        rows.append(v)
        E, piv = echelon(rows, self.p) if rows else (np.zeros((0, size), dtype=np.int64), [])
        free = [c for c in range(size) if c not in set(piv)]
        out = (blocks, size, E, piv, free)
        self._cache[t] = out
        return out

    def dim(self, t):
        return len(self.piece(t)[4])

    def reduce(self, v, t):
        """Coordinates of the class of a P-level vector in the quotient basis."""
        blocks, size, E, piv, free = self.piece(t)
        v = v.copy() % self.p
        for r, c in enumerate(piv):
            if v[c]:
                v = (v - v[c] * E[r]) % self.p
        return v[free]

    def lift(self, coords, t):
        blocks, size, E, piv, free = self.piece(t)
        v = np.zeros(size, dtype=np.int64)
        v[free] = coords
        return v

    def multiply_into(self, v, t, j_src, target, t2, j_dst, f):
        """P-level: the block j_src part of v (degree t) times f, placed in block j_dst of target."""
        blocks, _, _, _, _ = self.piece(t)
        off, index = blocks[j_src]
        tb, tsize = target.layout(t2)
        out = np.zeros(tsize, dtype=np.int64)
        toff, tindex = tb[j_dst]
        for m, k in index.items():
            if v[k] == 0:
                continue
            for mu, a in f.items():
                mm = tuple(x + y for x, y in zip(m, mu))
                if mm in tindex:
                    out[tindex[mm]] = (out[tindex[mm]] + int(v[k]) * a) % self.p
        return out


def _terms(f):
    return dict(f.terms)


def _deg(f):
    return sum(next(iter(f))) if f else None


class OracleResolution:
    """Non-minimal free resolution of M over R, generated degree by degree up to D."""

    def __init__(self, M, D, depth):
        R = M.ring
        self.n, self.p = R.nvars, R.p
        self.ideal = [_terms(f) for f in R.relations]
        self.D = D
        self._spaces = {}
        # level 0 generators and level 1 = all presentation columns (plus kill relations)
        Mx = M.explicit()
        self.levels = [list(Mx.degrees)]
        self.cols = [[]]
        cols1 = []
        for col in Mx.columns:
            terms = [_terms(f) for f in col]
            if not any(terms):
                continue
            d = next(b + _deg(f) for b, f in zip(Mx.degrees, terms) if f)
            cols1.append((d, terms))
        self.levels.append([d for d, _ in cols1])
        self.cols.append(cols1)
        for i in range(2, depth + 1):
            self._next_level(i)

    def free_space(self, i):
        key = (i, len(self.levels[i]))
        if key not in self._spaces:
            self._spaces[key] = GradedSpace(self.n, self.p, self.levels[i], [], self.ideal)
        return self._spaces[key]

    def image_vector(self, i, g, t):
        """d_i(e_g) as a P-level vector of F_{i-1} in degree t (= deg g)."""
        src = self.free_space(i - 1)
        blocks, size = src.layout(t)
        v = np.zeros(size, dtype=np.int64)
        for j, f in enumerate(self.cols[i][g][1]):
            src._add(v, blocks, j, f, (0,) * self.n)
        return v

    def differential(self, i, t):
        """Matrix of d_i: (F_i)_t -> (F_{i-1})_t in quotient coordinates."""
        S, T = self.free_space(i), self.free_space(i - 1)
        cols = []
        for k in range(S.dim(t)):
            e = np.zeros(S.dim(t), dtype=np.int64)
            e[k] = 1
            v = S.lift(e, t)
            blocks, _, _, _, _ = S.piece(t)
            img = np.zeros(T.layout(t)[1], dtype=np.int64)
            for j in range(len(self.levels[i])):
                for jj, f in enumerate(self.cols[i][j][1]):
                    if f:
                        img = (img + S.multiply_into(v, t, j, T, t, jj, f)) % self.p
            cols.append(T.reduce(img, t))
        if not cols:
            return np.zeros((T.dim(t), 0), dtype=np.int64)
        return np.array(cols, dtype=np.int64).T

    def _next_level(self, i):
        self.levels.append([])
        self.cols.append([])
        for t in range(min(self.levels[i - 1], default=0), self.D + 1):
            T = self.free_space(i - 1)
            if T.dim(t) == 0:
                continue
            A = self.differential(i - 1, t)
            ker = _nullspace(A, self.p) if A.shape[0] else np.eye(T.dim(t), dtype=np.int64)
            B = self.differential(i, t)
            span = Basis(self.p)
            for k in range(B.shape[1]):
                span.add(B[:, k])
            for z in ker:
                if span.add(z):
                    lifted = T.lift(z, t)
                    blocks, _ = T.layout(t)
                    terms = []
                    for j, b in enumerate(self.levels[i - 1]):
                        off, index = blocks[j]
                        terms.append({m: int(lifted[k]) for m, k in index.items() if lifted[k]})
                    self.levels[i].append(t)
                    self.cols[i].append((t, terms))


def _nullspace(A, p):
    """Rows spanning the right kernel of A."""
    m, n = A.shape
    if n == 0:
        return np.zeros((0, 0), dtype=np.int64)
    E, piv = echelon(list(A), p) if m else (np.zeros((0, n), dtype=np.int64), [])
    free = [c for c in range(n) if c not in set(piv)]
    out = []
    for f in free:
        v = np.zeros(n, dtype=np.int64)
        v[f] = 1
        for r, c in enumerate(piv):
            v[c] = (-E[r, f]) % p
        out.append(v)
    return np.array(out, dtype=np.int64) if out else np.zeros((0, n), dtype=np.int64)


def module_space(X):
    Xe = X.explicit()
    rels = []
    for col in Xe.columns:
        terms = [_terms(f) for f in col]
        if not any(terms):
            continue
        d = next(b + _deg(f) for b, f in zip(Xe.degrees, terms) if f)
        rels.append((d, terms))
    return GradedSpace(X.ring.nvars, X.ring.p, Xe.degrees, rels, [_terms(f) for f in X.ring.relations])


def tor_oracle(M, X, i, D):
    """{t: dim Tor_i(M, X)_t} for t <= D by brute force."""
    res = OracleResolution(M, D, i + 1)
    Xs = module_space(X)
    p = M.ring.p

    def tensor_dim(level, t):
        return sum(Xs.dim(t - b) for b in res.levels[level]) if level < len(res.levels) else 0

    def tensor_map(level, t):
        """(F_level ⊗ X)_t -> (F_{level-1} ⊗ X)_t."""
        if level == 0 or level >= len(res.levels):
            return np.zeros((tensor_dim(level - 1, t) if level else 0, tensor_dim(level, t)), dtype=np.int64)
        src_offs, off = [], 0
        for b in res.levels[level]:
            src_offs.append(off)
            off += Xs.dim(t - b)
        dst_offs, off2 = [], 0
        for b in res.levels[level - 1]:
            dst_offs.append(off2)
            off2 += Xs.dim(t - b)
        A = np.zeros((off2, off), dtype=np.int64)
        for g, (dg, col) in enumerate(res.cols[level]):
            u = t - dg
            for k in range(Xs.dim(u)):
                e = np.zeros(Xs.dim(u), dtype=np.int64)
                e[k] = 1
                v = Xs.lift(e, u)
                for j, f in enumerate(col):
                    if not f:
                        continue
                    bj = res.levels[level - 1][j]
                    u2 = t - bj
                    # multiply each summand block of X by f; X is presented blockwise too
                    w = np.zeros(Xs.layout(u2)[1], dtype=np.int64)
                    for jj in range(len(Xs.degrees)):
                        w = (w + Xs.multiply_into(v, u, jj, Xs, u2, jj, f)) % p
                    c = Xs.reduce(w, u2)
                    A[dst_offs[j]:dst_offs[j] + len(c), src_offs[g] + k] = (
                        A[dst_offs[j]:dst_offs[j] + len(c), src_offs[g] + k] + c) % p
        return A

    out = {}
    for t in range(min(res.levels[i], default=0) + X.indeg if res.levels[i] else 0, D + 1):
        n = tensor_dim(i, t)
        if n == 0:
            continue
        d_out = tensor_map(i, t)
        d_in = tensor_map(i + 1, t)
        z = n - (rank(list(d_out.T), p) if d_out.size else 0)
        b = rank(list(d_in.T), p) if d_in.size else 0
        if z - b:
            out[t] = z - b
    return out
