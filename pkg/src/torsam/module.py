"""Finitely generated graded modules M = F/U over a GradedRing.

F = ⊕ R(-a_k) and U is generated by homogeneous relation columns. Each
graded piece M_t is F_t/U_t with basis the non-pivot coordinates of the
echelon form of U_t. A module may also carry kill = s, meaning it is
F/(U + m^s F); this is how N/m^{n+1}N is represented without listing the
monomial relations.
"""

import numpy as np

from . import linalg
from .poly import monomials_of_degree
from .ring import FreeLayout, map_matrix


class Piece:
    __slots__ = ("t", "dim", "n", "nonpiv", "proj", "rows")

    def __init__(self, t, n, rows, pivots, p):
        self.t = t
        self.n = n
        self.rows = rows
        pivset = set(pivots)
        self.nonpiv = np.array([j for j in range(n) if j not in pivset], dtype=np.int64)
        self.dim = len(self.nonpiv)
        proj = np.zeros((self.dim, n), dtype=np.int64)
        if self.dim:
            proj[np.arange(self.dim), self.nonpiv] = 1
            for r, c in enumerate(pivots):
                proj[:, c] = (-rows[r, self.nonpiv]) % p
        self.proj = proj


class Module:
    def __init__(self, ring, degrees, columns=(), name="M", kill=None):
        self.ring = ring
        self.degrees = tuple(int(a) for a in degrees)
        self.name = name
        self.kill = kill
        P = ring.P
        r = len(self.degrees)
        cols, cdeg = [], []
        for col in columns:
            col = tuple(ring.reduce(f) for f in col)
            if len(col) != r:
                raise ValueError("relation column has the wrong length")
            d = None
            for f, a in zip(col, self.degrees):
                if f.is_zero():
                    continue
                if not f.is_homogeneous():
                    raise ValueError(f"matrix entry {f} is not homogeneous")
                e = f.degree() + a
                if d is None:
                    d = e
                elif d != e:
                    raise ValueError("degree mismatch in relation column")
            if d is None:
                continue
            cols.append(col)
            cdeg.append(d)
        self.columns = tuple(cols)
        self.col_degrees = tuple(cdeg)
        self.cover = FreeLayout(ring, self.degrees)
        self.layout = FreeLayout(ring, self.degrees, kill)
        self.col_coords = [self.cover.vector(c, b) for c, b in zip(cols, cdeg)]
        self._pieces = {}
        self._actions = {}
        self._cache = {}
        self._P = P

    # constructors
    @classmethod
    def free(cls, ring, degrees, name="F"):
        return cls(ring, degrees, (), name=name)

    @classmethod
    def cyclic(cls, ring, polys, name="M", degree=0):
        """R/(polys), generated in the given degree."""
        return cls(ring, [degree], [(f,) for f in polys], name=name)

    @classmethod
    def residue_field(cls, ring, name="k"):
        return cls.cyclic(ring, ring.gens(), name=name)

    @classmethod
    def from_rows(cls, ring, degrees, rows, name="M"):
        """Build from the matrix given row by row (one row per generator)."""
        r = len(degrees)
        if len(rows) != r:
            raise ValueError("one matrix row per generator")
        ncols = len(rows[0]) if rows else 0
        if any(len(row) != ncols for row in rows):
            raise ValueError("ragged matrix")
        cols = [tuple(rows[i][j] for i in range(r)) for j in range(ncols)]
        return cls(ring, degrees, cols, name=name)

    def rows(self):
        r = len(self.degrees)
        return [[c[i] for c in self.columns] for i in range(r)]

    @property
    def p(self):
        return self.ring.p

    @property
    def rank(self):
        return len(self.degrees)

    def __repr__(self):
        return f"Module({self.name}: {self.rank} gens in degrees {list(self.degrees)}, {len(self.columns)} relations)"

    # derived modules
    def truncation(self, n, name=None):
        """N/m^{n+1}N."""
        s = n + 1 if self.kill is None else min(self.kill, n + 1)
        return Module(self.ring, self.degrees, self.columns, name=name or f"{self.name}/m^{n + 1}{self.name}", kill=s)

    def explicit(self):
        """Same module with the m^s F relations written out as columns."""
        if self.kill is None:
            return self
        if "explicit" in self._cache:
            return self._cache["explicit"]
        P = self.ring.P
        cols = list(self.columns)
        for k in range(self.rank):
            for u in monomials_of_degree(P.nvars, self.kill):
                f = self.ring.reduce(P.monomial(u))
                if f.is_zero():
                    continue
                col = [P.zero()] * self.rank
                col[k] = f
                cols.append(tuple(col))
        out = Module(self.ring, self.degrees, cols, name=self.name)
        self._cache["explicit"] = out
        return out

    def with_relations(self, extra, name=None):
        return Module(self.explicit().ring, self.degrees, list(self.explicit().columns) + list(extra),
                      name=name or self.name)

    def direct_sum(self, other, name=None):
        if other.ring is not self.ring:
            raise ValueError("modules over different rings")
        a, b = self.explicit(), other.explicit()
        P = self.ring.P
        ra, rb = a.rank, b.rank
        cols = [tuple(c) + (P.zero(),) * rb for c in a.columns]
        cols += [(P.zero(),) * ra + tuple(c) for c in b.columns]
        return Module(self.ring, a.degrees + b.degrees, cols, name=name or f"{self.name}+{other.name}")

    def tensor(self, other, name=None):
        """self ⊗_R other, presented on pairs of generators."""
        if other.ring is not self.ring:
            raise ValueError("modules over different rings")
        a, b = self.explicit(), other.explicit()
        P = self.ring.P
        ra, rb = a.rank, b.rank
        zero = P.zero()
        cols = []
        for col in a.columns:
            for j in range(rb):
                v = [zero] * (ra * rb)
                for i in range(ra):
                    v[i * rb + j] = col[i]
                cols.append(tuple(v))
        for col in b.columns:
            for i in range(ra):
                v = [zero] * (ra * rb)
                for j in range(rb):
                    v[i * rb + j] = col[j]
                cols.append(tuple(v))
        degs = [x + y for x in a.degrees for y in b.degrees]
        return Module(self.ring, degs, cols, name=name or f"{self.name}⊗{other.name}")

    def power_is_zero(self, j):
        """m^j M = 0?  m^j M is generated in degrees indeg + j .. maxgen + j."""
        for t in range(self.indeg + j, self.maxgen + j + 1):
            if self.power_span(j, t).any():
                return False
        return True

    def power(self, s, name=None):
        """m^s M presented on the products u * e_k, u a monomial of degree s."""
        from .groebner import kernel
        M = self.explicit()
        P = self.ring.P
        if s == 0:
            return M
        zero = P.zero()
        cols, degs = [], []
        for k, a in enumerate(M.degrees):
            for u in monomials_of_degree(P.nvars, s):
                f = self.ring.reduce(P.monomial(u))
                if f.is_zero():
                    continue
                v = [zero] * M.rank
                v[k] = f
                cols.append(tuple(v))
                degs.append(a + s)
        g = len(cols)
        K = kernel(cols + list(M.columns), degs + list(M.col_degrees), M.degrees, self.ring)
        rels = [tuple(v[:g]) for v in K.gens if any(not f.is_zero() for f in v[:g])]
        return Module(self.ring, degs, rels, name=name or f"m^{s}{self.name}")

    def shift(self, s):
        """M(-s): generators move up by s."""
        return Module(self.ring, [a + s for a in self.degrees], self.columns, name=self.name, kill=self.kill)

    # graded pieces
    def relation_rows(self, t):
        D = map_matrix(self.ring, self.layout, self.col_degrees, self.col_coords, t)
        return D.T

    def piece(self, t):
        pc = self._pieces.get(t)
        if pc is None:
            n = self.layout.dim(t)
            rows = self.relation_rows(t) if n else np.zeros((0, 0), dtype=np.int64)
            if rows.shape[0]:
                ech, piv = linalg.rref(rows, self.p)
            else:
                ech, piv = np.zeros((0, n), dtype=np.int64), []
            pc = Piece(t, n, ech, piv, self.p)
            self._pieces[t] = pc
        return pc

    def dim(self, t):
        return self.piece(t).dim

    def action(self, e, t):
        """Tensor A[u, :, :]: matrix of basis_e[u] acting M_t -> M_{t+e}."""
        key = (e, t)
        if key in self._actions:
            return self._actions[key]
        ring = self.ring
        ne = ring.dim(e)
        src, dst = self.piece(t), self.piece(t + e)
        if ne == 0 or src.dim == 0 or dst.dim == 0:
            A = np.zeros((ne, dst.dim, src.dim), dtype=np.int64)
            self._actions[key] = A
            return A
        big = np.zeros((ne, dst.n, src.dim), dtype=np.int64)
        after = {k: (d, off, size) for k, d, off, size in self.layout.blocks(t + e)[0]}
        nonpiv = src.nonpiv
        for k, d, off, size in self.layout.blocks(t)[0]:
            if k not in after:
                continue
            sel = np.flatnonzero((nonpiv >= off) & (nonpiv < off + size))
            if sel.size == 0:
                continue
            local = nonpiv[sel] - off
            T = ring.mult(e, d)
            _, off2, size2 = after[k]
            big[:, off2:off2 + size2, sel] = T[:, local, :].transpose(0, 2, 1)
        A = np.matmul(dst.proj, big) % self.p
        self._actions[key] = A
        return A

    def act(self, c, e, t):
        """Matrix of the ring element with coordinates c in R_e acting M_t -> M_{t+e}."""
        A = self.action(e, t)
        if A.shape[0] == 0:
            return np.zeros((A.shape[1], A.shape[2]), dtype=np.int64)
        return np.tensordot(c, A, axes=(0, 0)) % self.p

    def act_poly(self, f, t):
        e = f.degree()
        if e < 0:
            return np.zeros((self.dim(t), self.dim(t)), dtype=np.int64)
        return self.act(self.ring.coords(f, e), e, t)

    def power_span(self, j, t):
        """Rows spanning (m^j M)_t inside M_t."""
        pc = self.piece(t)
        cols = []
        for k, d, off, size in self.layout.blocks(t)[0]:
            if d >= j:
                cols.extend(range(off, off + size))
        if not cols or pc.dim == 0:
            return np.zeros((0, pc.dim), dtype=np.int64)
        return pc.proj[:, cols].T % self.p

    # generators
    @property
    def indeg(self):
        return min(self.degrees) if self.degrees else 0

    @property
    def maxgen(self):
        return max(self.degrees) if self.degrees else 0

    def minimal_generators(self):
        """Indices of a minimal generating subset of the given generators."""
        if "mingens" in self._cache:
            return self._cache["mingens"]
        chosen = []
        for t in sorted(set(self.degrees)):
            ks = [k for k, a in enumerate(self.degrees) if a == t]
            blocks = {k: off for k, d, off, size in self.layout.blocks(t)[0]}
            ks = [k for k in ks if k in blocks]
            if not ks:
                continue
            rows = self.relation_rows(t)
            sub = rows[:, [blocks[k] for k in ks]] if rows.shape[0] else np.zeros((0, len(ks)), dtype=np.int64)
            span = linalg.Span(len(ks), self.p, sub)
            eye = np.eye(len(ks), dtype=np.int64)
            for i, k in enumerate(ks):
                if span.add(eye[i]):
                    chosen.append(k)
        self._cache["mingens"] = chosen
        return chosen

    def is_zero(self):
        return not self.minimal_generators()

    def minimal(self):
        """Isomorphic module presented on a minimal set of generators."""
        if "minimal" in self._cache:
            return self._cache["minimal"]
        M = self.explicit()
        S = M.minimal_generators()
        if len(S) == M.rank:
            self._cache["minimal"] = M
            return M
        ring = M.ring
        Sset = set(S)
        subst = {}
        for k in range(M.rank):
            if k in Sset:
                continue
            t = M.degrees[k]
            blocks, n = M.layout.blocks(t)
            rows = M.relation_rows(t)
            ek = np.zeros(n, dtype=np.int64)
            off_k = [off for kk, d, off, size in blocks if kk == k][0]
            ek[off_k] = 1
            other = [j for kk, d, off, size in blocks if kk not in Sset for j in range(off, off + size)]
            coef = linalg.solve_left(rows[:, other], ek[other], M.p)
            if coef is None:
                raise RuntimeError("generator not expressible through the minimal ones")
            u = (coef @ rows) % M.p
            r = (ek - u) % M.p
            subst[k] = M.layout.polys(r, t)
        cols = []
        for col in M.columns:
            new = [col[l] for l in S]
            for k, rk in subst.items():
                if col[k].is_zero():
                    continue
                for i, l in enumerate(S):
                    if not rk[l].is_zero():
                        new[i] = new[i] + col[k] * rk[l]
            cols.append(tuple(ring.reduce(f) for f in new))
        out = Module(ring, [M.degrees[l] for l in S], cols, name=self.name)
        self._cache["minimal"] = out
        return out

    def top_degree(self):
        """Largest degree with M_t != 0 when M has finite length, else None."""
        if "top" in self._cache:
            return self._cache["top"]
        top = None
        if self.is_zero():
            top = self.indeg - 1
        else:
            t = self.indeg
            limit = self.maxgen + (self.kill if self.kill is not None else 2)
            last = None
            found = False
            while t <= limit:
                if self.dim(t):
                    last = t
                elif t >= self.maxgen:
                    found = True
                    break
                t += 1
            if found:
                top = last
            else:
                from .resolution import hilbert_data
                hs = hilbert_data(self)
                if hs.dim == 0:
                    top = hs.top_degree()
        self._cache["top"] = top
        return top

    def is_finite_length(self):
        return self.top_degree() is not None

    def length(self):
        top = self.top_degree()
        if top is None:
            raise ValueError("module does not have finite length")
        return sum(self.dim(t) for t in range(self.indeg, top + 1))

    def hilbert_function(self, t):
        return self.dim(t)


def residue_field(ring):
    return Module.residue_field(ring)
