"""Standard graded rings R = P/I and their graded pieces over F_p.

R_d is represented by the standard monomials of degree d (monomials outside
in(I) for grevlex); a homogeneous element of degree d is a coordinate vector
in that basis. Degree data is built lazily from the row echelon form of the
Macaulay matrix of I in degree d.
"""

import numpy as np

from . import linalg
from .groebner import ideal_gb
from .poly import Poly, PolyRing, monomial_index, monomials_of_degree


class GradedRing:
    def __init__(self, names, relations=(), p=None, name="R"):
        if isinstance(names, int):
            names = [f"x{i + 1}" for i in range(names)]
        self.P = PolyRing(len(names), p, names)
        rels = []
        for f in relations:
            if isinstance(f, Poly):
                if f.ring != self.P:
                    raise ValueError("relation from another ring")
            else:
                raise TypeError("relations must be polynomials")
            if f.is_zero():
                continue
            if not f.is_homogeneous():
                raise ValueError(f"relation {f} is not homogeneous")
            if f.degree() < 2:
                raise ValueError(f"relation {f} has degree < 2")
            rels.append(f)
        self.relations = tuple(rels)
        self.name = name
        self._gb = None
        self._deg = {}
        self._mult = {}
        self._flags = {}

    # basic data
    @property
    def nvars(self):
        return self.P.nvars

    @property
    def p(self):
        return self.P.p

    @property
    def names(self):
        return self.P.names

    def __repr__(self):
        rel = ", ".join(str(f) for f in self.relations)
        return f"{self.name} = k[{','.join(self.names)}]/({rel})"

    def same_as(self, other):
        return (self.P == other.P and self.names == other.names
                and set(self.ideal_gb()) == set(other.ideal_gb()))

    def ideal_gb(self):
        if self._gb is None:
            self._gb = ideal_gb(list(self.relations), self.P) if self.relations else []
        return self._gb

    def var(self, i):
        return self.P.var(i)

    def gens(self):
        return self.P.gens()

    # degree data
    def _data(self, d):
        if d in self._deg:
            return self._deg[d]
        n = self.nvars
        mons = monomials_of_degree(n, d) if d >= 0 else ()
        idx = monomial_index(n, d) if d >= 0 else {}
        rows = []
        for f in self.relations:
            e = d - f.degree()
            if e < 0:
                continue
            for u in monomials_of_degree(n, e):
                row = np.zeros(len(mons), dtype=np.int64)
                for m, c in f.terms.items():
                    row[idx[tuple(a + b for a, b in zip(m, u))]] = c
                rows.append(row)
        if rows:
            ech, piv = linalg.rref(np.array(rows), self.p)
        else:
            ech, piv = np.zeros((0, len(mons)), dtype=np.int64), []
        pivset = set(piv)
        std = [j for j in range(len(mons)) if j not in pivset]
        nf = np.zeros((len(mons), len(std)), dtype=np.int64)
        for k, j in enumerate(std):
            nf[j, k] = 1
        for r, c in enumerate(piv):
            nf[c, :] = (-ech[r, std]) % self.p
        data = {"mons": mons, "idx": idx, "std": [mons[j] for j in std],
                "std_idx": {mons[j]: k for k, j in enumerate(std)}, "nf": nf}
        self._deg[d] = data
        return data

    def dim(self, d):
        if d < 0:
            return 0
        return len(self._data(d)["std"])

    def basis(self, d):
        return self._data(d)["std"] if d >= 0 else []

    def coords(self, f, d=None):
        """Coordinates of a homogeneous polynomial (reduced mod I) in R_d."""
        if d is None:
            d = f.degree()
        if d < 0:
            return np.zeros(0, dtype=np.int64)
        data = self._data(d)
        v = np.zeros(len(data["std"]), dtype=np.int64)
        nf, idx = data["nf"], data["idx"]
        for m, c in f.terms.items():
            if sum(m) != d:
                raise ValueError("element is not homogeneous of the stated degree")
            v = v + c * nf[idx[m]]
        return v % self.p

    def poly(self, d, v):
        std = self.basis(d)
        return Poly(self.P, {m: int(c) for m, c in zip(std, v) if c % self.p})

    def reduce(self, f):
        """Normal form of f modulo I."""
        if f.is_zero() or not self.relations:
            return f
        out = self.P.zero()
        for d, g in f.homogeneous_components().items():
            out = out + self.poly(d, self.coords(g, d))
        return out

    def mult(self, e, d):
        """Tensor T[u, s, x]: coordinates of basis_e[u] * basis_d[s] in R_{e+d}."""
        key = (e, d)
        if key in self._mult:
            return self._mult[key]
        be, bd = self.basis(e), self.basis(d)
        target = self._data(e + d) if e + d >= 0 else None
        if not be or not bd:
            T = np.zeros((len(be), len(bd), self.dim(e + d)), dtype=np.int64)
        else:
            idx, nf = target["idx"], target["nf"]
            ind = np.array([[idx[tuple(a + b for a, b in zip(u, s))] for s in bd] for u in be])
            T = nf[ind]
        self._mult[key] = T
        return T

    def mul_by_basis(self, c, d, e):
        """Matrix whose column u holds basis_e[u] * c, for c in R_d."""
        T = self.mult(e, d)
        if T.size == 0:
            return np.zeros((self.dim(d + e), self.dim(e)), dtype=np.int64)
        return np.einsum("s,usx->xu", c, T) % self.p

    def mul(self, c1, d1, c2, d2):
        T = self.mult(d1, d2)
        if T.size == 0:
            return np.zeros(self.dim(d1 + d2), dtype=np.int64)
        return np.einsum("u,s,usx->x", c1, c2, T) % self.p

    def linear_coords(self, x):
        """Coefficients of a linear form in the variable basis of R_1."""
        return self.coords(x, 1)

    # ring-level invariants, computed on R as a module over itself
    def as_module(self):
        if "module" not in self._flags:
            from .module import Module
            self._flags["module"] = Module.free(self, [0], name=self.name)
        return self._flags["module"]


class FreeLayout:
    """Degreewise coordinates of the twisted free module ⊕ R(-a_k)."""

    def __init__(self, ring, degrees, kill=None):
        self.ring = ring
        self.degrees = tuple(int(a) for a in degrees)
        self.kill = kill
        self._blocks = {}

    def blocks(self, t):
        """List of (k, d, offset, size) for the summands present in degree t."""
        if t in self._blocks:
            return self._blocks[t]
        out = []
        off = 0
        for k, a in enumerate(self.degrees):
            d = t - a
            if d < 0 or (self.kill is not None and d >= self.kill):
                continue
            size = self.ring.dim(d)
            if size == 0:
                continue
            out.append((k, d, off, size))
            off += size
        self._blocks[t] = (out, off)
        return self._blocks[t]

    def dim(self, t):
        return self.blocks(t)[1]

    def block_of(self, t, k):
        for b in self.blocks(t)[0]:
            if b[0] == k:
                return b
        return None

    def vector(self, polys, t):
        """Coordinates of a homogeneous vector (one poly per generator) in degree t."""
        blocks, n = self.blocks(t)
        v = np.zeros(n, dtype=np.int64)
        for k, d, off, size in blocks:
            f = polys[k]
            if not f.is_zero():
                v[off:off + size] = self.ring.coords(f, d)
        return v

    def polys(self, v, t):
        P = self.ring.P
        out = [P.zero() for _ in self.degrees]
        for k, d, off, size in self.blocks(t)[0]:
            out[k] = self.ring.poly(d, v[off:off + size])
        return out


def map_matrix(ring, target, src_degrees, columns, t):
    """Degree-t matrix of the map sending generator j (degree b_j) to columns[j].

    columns[j] is a coordinate vector in target degree b_j (layout without
    kill). Rows follow target.blocks(t); killed target blocks are dropped.
    """
    tblocks, tdim = target.blocks(t)
    pieces = []
    for b, col in zip(src_degrees, columns):
        e = t - b
        ne = ring.dim(e)
        if ne == 0:
            continue
        block = np.zeros((tdim, ne), dtype=np.int64)
        src_blocks = _full_blocks(target, b)
        for k, d, off, size in tblocks:
            if k not in src_blocks:
                continue
            d0, off0, size0 = src_blocks[k]
            c = col[off0:off0 + size0]
            if not c.any():
                continue
            block[off:off + size, :] = ring.mul_by_basis(c, d0, e)
        pieces.append(block)
    if not pieces:
        return np.zeros((tdim, 0), dtype=np.int64)
    return np.hstack(pieces)


def _full_blocks(layout, t):
    """Blocks of the un-killed layout in degree t, keyed by generator."""
    out = {}
    off = 0
    for k, a in enumerate(layout.degrees):
        d = t - a
        if d < 0:
            continue
        size = layout.ring.dim(d)
        if size == 0:
            continue
        out[k] = (d, off, size)
        off += size
    return out
