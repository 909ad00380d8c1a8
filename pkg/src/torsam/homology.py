"""Tor, Ext and Hom lengths, computed degree by degree.

A complex of twisted free modules tensored with (or Hom'd into) a graded
module is, in each internal degree, a finite complex of F_p vector spaces.
Every answer is either bracketed by a degree range where homology provably
vanishes, or refused with Inconclusive.
"""

import numpy as np

from . import linalg
from .groebner import Submodule
from .module import Module
from .resolution import (resolution_of, ring_depth_dim, ring_regularity, regularity,
                         is_gorenstein, projdim_finite, taylor_bound)


class Inconclusive(RuntimeError):
    def __init__(self, message, suggestion=None):
        super().__init__(message)
        self.suggestion = suggestion


# --- tensor complexes ------------------------------------------------------

def _entries(F, i, g):
    """Nonzero entries of column g of d_i as (row, degree, coordinates)."""
    cache = F.__dict__.setdefault("_entry_cache", {})
    key = (i, g)
    if key not in cache:
        lev, prev = F.level(i), F.level(i - 1)
        out = []
        dg = lev.degrees[g]
        for r, f in enumerate(lev.columns[g]):
            if f.is_zero():
                continue
            e = dg - prev.degrees[r]
            out.append((r, e, F.ring.coords(f, e)))
        cache[key] = out
    return cache[key]


def _gens_upto(F, i, T):
    """Indices of known generators of F_i of degree <= T (after extending)."""
    if i < 0:
        return []
    lev = F.extend(i, T) if i > 0 else F.level(0)
    return [g for g, d in enumerate(lev.degrees) if d <= T]


def tensor_layout(F, i, X, t):
    """Blocks (g, u, offset, size) of (F_i ⊗ X)_t = ⊕ X_{t - deg g}."""
    if i < 0:
        return [], 0
    out, off = [], 0
    lev = F.level(i)
    for g in _gens_upto(F, i, t - X.indeg):
        u = t - lev.degrees[g]
        size = X.dim(u)
        if size:
            out.append((g, u, off, size))
            off += size
    return out, off


def tensor_matrix(F, i, X, t):
    """Matrix of d_i ⊗ X in degree t."""
    src, n = tensor_layout(F, i, X, t)
    tgt, m = tensor_layout(F, i - 1, X, t)
    D = np.zeros((m, n), dtype=np.int64)
    if n == 0 or m == 0:
        return D
    where = {g: (off, size) for g, u, off, size in tgt}
    for g, u, off, size in src:
        for r, e, c in _entries(F, i, g):
            if r not in where:
                continue
            off2, size2 = where[r]
            D[off2:off2 + size2, off:off + size] = (D[off2:off2 + size2, off:off + size] + X.act(c, e, u)) % X.p
    return D


def _tor_degree(F, i, X, t):
    n = tensor_layout(F, i, X, t)[1]
    if n == 0:
        return 0
    p = X.p
    r_out = linalg.rank(tensor_matrix(F, i, X, t), p) if i > 0 else 0
    r_in = linalg.rank(tensor_matrix(F, i + 1, X, t), p)
    return n - r_out - r_in


def _finite_range(F, i, X):
    """Degrees where (F_i ⊗ X)_t can be nonzero, for X of finite length."""
    top = X.top_degree()
    if top is None:
        return None
    degs = F.degrees(i)
    if not degs:
        return range(0)
    return range(min(degs) + X.indeg, max(degs) + top + 1)


def tor_degrees(M, X, i, resolve="M"):
    """{t: dim Tor_i(M, X)_t} for X (or M, with resolve='X') of finite length."""
    if i < 0:
        return {}
    A, B = (M, X) if resolve == "M" else (X, M)
    F = resolution_of(A)
    rng = _finite_range(F, i, B)
    if rng is None:
        raise Inconclusive("second argument does not have finite length")
    out = {}
    for t in rng:
        v = _tor_degree(F, i, B, t)
        if v:
            out[t] = v
    return out


def tor_length(M, X, i):
    """Exact length of Tor_i(M, X)."""
    if i < 0:
        return 0
    if X.is_zero() or M.is_zero():
        return 0
    if X.is_finite_length():
        return sum(tor_degrees(M, X, i).values())
    if M.is_finite_length():
        return sum(tor_degrees(M, X, i, resolve="X").values())
    if i >= 1 and (_is_free(M) or _is_free(X)):
        return 0
    if tor_vanishes(M, X, i):
        return 0
    raise Inconclusive("Tor has no certified finite length here; give a finite-length argument")


def _is_free(M):
    return len(M.minimal().columns) == 0


# --- vanishing of Tor against modules of infinite length -------------------

def cycle_degree_bound(F, i, N):
    """Degree bound for the generators of Z_i(F ⊗ N)."""
    ring = F.ring
    P = ring.P
    Nm = N.minimal()
    cols_i, prev = F.complete(i), F.complete(i - 1)
    r = Nm.rank
    nprev = len(prev.degrees)
    twists = [d + b for d in prev.degrees for b in Nm.degrees]
    gens, coldeg = [], []
    zero = P.zero()
    for g, dg in enumerate(cols_i.degrees):
        for b, db in enumerate(Nm.degrees):
            v = [zero] * (nprev * r)
            for rr, f in enumerate(cols_i.columns[g]):
                v[rr * r + b] = f
            gens.append(tuple(v))
            coldeg.append(dg + db)
    for rr, d in enumerate(prev.degrees):
        for col, cd in zip(Nm.columns, Nm.col_degrees):
            v = [zero] * (nprev * r)
            for b in range(r):
                v[rr * r + b] = col[b]
            gens.append(tuple(v))
            coldeg.append(d + cd)
    if not twists:
        return max(coldeg, default=0)
    U = Submodule(ring, twists, gens)
    lead = U.leading_monomials()
    reg = None
    for k, a in enumerate(twists):
        b = taylor_bound(lead[k], ring.nvars)
        if b is None:
            continue
        reg = a + b if reg is None else max(reg, a + b)
    bound = max(max(coldeg, default=0), max(twists) + 1)
    if reg is not None:
        bound = max(bound, reg + 2)
    return bound


def tor_vanishes(M, N, i):
    """Exact test of Tor_i(M, N) = 0 for arbitrary f.g. graded M, N."""
    if i < 0 or M.is_zero() or N.is_zero():
        return True
    if i >= 1 and (_is_free(M) or _is_free(N)):
        return True
    if N.is_finite_length():
        return not tor_degrees(M, N, i)
    if M.is_finite_length():
        return not tor_degrees(M, N, i, resolve="X")
    F = resolution_of(M)
    if F.rank(i) == 0:
        return True
    lo = min(F.degrees(i)) + N.indeg
    cheap = max(F.degrees(i)) + N.maxgen + 2
    for t in range(lo, cheap + 1):
        if _tor_degree(F, i, N, t):
            return False
    if i == 0:
        return False
    D = cycle_degree_bound(F, i, N)
    for t in range(cheap + 1, D + 1):
        if _tor_degree(F, i, N, t):
            return False
    return True


# --- subcomplexes F ⊗ m^s N inside F ⊗ N -----------------------------------

def _power_columns(F, i, N, s, t):
    """Columns spanning (F_i ⊗ m^s N)_t inside (F_i ⊗ N)_t."""
    blocks, total = tensor_layout(F, i, N, t)
    rows = []
    for g, u, off, size in blocks:
        S = N.power_span(s, u) if s > 0 else np.eye(size, dtype=np.int64)
        for row in S:
            v = np.zeros(total, dtype=np.int64)
            v[off:off + size] = row
            rows.append(v)
    if not rows:
        return np.zeros((total, 0), dtype=np.int64)
    W = linalg.rref(np.array(rows), N.p)[0]
    return W.T


def _cycles_and_boundaries(F, i, N, s, t):
    """(Z, B) of F ⊗ m^s N in degree t, as row bases inside (F_i ⊗ N)_t."""
    p = N.p
    n = tensor_layout(F, i, N, t)[1]
    W = _power_columns(F, i, N, s, t)
    if i > 0 and W.shape[1]:
        D = tensor_matrix(F, i, N, t)
        ker = linalg.nullspace((D @ W) % p, p) if D.shape[0] else np.eye(W.shape[1], dtype=np.int64)
        Z = (ker @ W.T) % p if len(ker) else np.zeros((0, n), dtype=np.int64)
    else:
        Z = W.T.copy()
    W1 = _power_columns(F, i + 1, N, s, t)
    if W1.shape[1]:
        D1 = tensor_matrix(F, i + 1, N, t)
        B = ((D1 @ W1) % p).T
    else:
        B = np.zeros((0, n), dtype=np.int64)
    return Z, B


def power_homology_degree(F, i, N, s, t):
    """dim H_i(F ⊗ m^s N)_t."""
    Z, B = _cycles_and_boundaries(F, i, N, s, t)
    return linalg.rank(Z, N.p) - linalg.rank(B, N.p) if len(Z) else 0


def power_tor_vanishes(M, N, i, n):
    """Exact test of Tor_i(M, m^{n+1} N) = 0."""
    s = n + 1
    if N.is_finite_length() and N.truncation(n).length() == N.length():
        return True  # m^{n+1}N = 0
    F = resolution_of(M)
    if F.rank(i) == 0:
        return True
    if i >= 1 and _is_free(M):
        return True
    T0 = max(F.maxdeg(i), F.maxdeg(i + 1) if F.rank(i + 1) else F.maxdeg(i)) + N.maxgen + N.ring.nvars + s
    lo = min(F.degrees(i)) + N.indeg
    hi = T0
    if N.is_finite_length():
        hi = min(hi, max(F.degrees(i)) + N.top_degree())
    for t in range(lo, hi + 1):
        if power_homology_degree(F, i, N, s, t):
            return False
    if N.is_finite_length():
        return True
    if i >= 1 and _is_free(N):
        return True
    if i == 0:
        return False
    D = cycle_degree_bound(F, i, N)
    for t in range(T0 + 1, D + 1):
        if _tor_degree(F, i, N, t):
            return False
    return True


def power_tor_length(M, N, i, n):
    """Length of Tor_i(M, m^{n+1}N) when it is certified finite."""
    s = n + 1
    F = resolution_of(M)
    if F.rank(i) == 0:
        return 0
    if N.is_finite_length():
        top = max(F.degrees(i)) + N.top_degree()
    else:
        if not (i >= 1 and tor_vanishes(M, N, i)):
            if M.is_finite_length():
                # resolve m^{n+1}N instead; Tor against a finite-length M is finite
                X = N.power(s)
                return 0 if X.is_zero() else tor_length(M, X, i)
            raise Inconclusive("Tor_i(M, m^{n+1}N) not certified finite: Tor_i(M, N) != 0")
        top = max(F.maxdeg(i), F.maxdeg(i + 1) if F.rank(i + 1) else F.maxdeg(i)) + N.maxgen + N.ring.nvars + s
    lo = min(F.degrees(i)) + N.indeg
    return sum(power_homology_degree(F, i, N, s, t) for t in range(lo, top + 1))


# --- induced maps on Tor(k, -) ---------------------------------------------

def quotient_map(N, Q, u):
    """Matrix N_u -> Q_u of the canonical surjection, Q = N with extra kill."""
    src, dst = N.piece(u), Q.piece(u)
    M = np.zeros((dst.dim, src.dim), dtype=np.int64)
    if src.dim == 0 or dst.dim == 0:
        return M
    keep = {k: (off2, size) for k, d, off2, size in Q.layout.blocks(u)[0]}
    lift = np.zeros((dst.n, src.dim), dtype=np.int64)
    for k, d, off, size in N.layout.blocks(u)[0]:
        if k not in keep:
            continue
        off2, _ = keep[k]
        for j, c in enumerate(src.nonpiv):
            if off <= c < off + size:
                lift[off2 + c - off, j] = 1
    return (dst.proj @ lift) % N.p


def _complex_map(F, i, N, Q, t):
    """Block-diagonal map (F_i ⊗ N)_t -> (F_i ⊗ Q)_t."""
    sb, n = tensor_layout(F, i, N, t)
    tb, m = tensor_layout(F, i, Q, t)
    A = np.zeros((m, n), dtype=np.int64)
    where = {g: off for g, u, off, size in tb}
    for g, u, off, size in sb:
        if g in where:
            q = quotient_map(N, Q, u)
            A[where[g]:where[g] + q.shape[0], off:off + size] = q
    return A


def _homology_basis(D_out, D_in, n, p):
    """(cycle basis rows, boundary basis rows) in F_p^n."""
    if D_out is not None and D_out.shape[0]:
        Z = linalg.nullspace(D_out, p)
    else:
        Z = np.eye(n, dtype=np.int64)
    if D_in is not None and D_in.shape[1]:
        B = linalg.row_space(D_in.T, p)
    else:
        B = np.zeros((0, n), dtype=np.int64)
    return Z, B


class InducedMapReport:
    def __init__(self, n, i_max):
        self.n = n
        self.i_max = i_max
        self.per_i = {}

    def record(self, i, source_dim, rank, matrices):
        self.per_i[i] = {"source_dim": source_dim, "rank": rank, "matrices": matrices,
                         "injective": rank == source_dim, "zero": rank == 0}

    @property
    def injective(self):
        return all(v["injective"] for v in self.per_i.values())

    @property
    def zero(self):
        return all(v["zero"] for v in self.per_i.values())

    def to_json(self):
        return {"n": self.n, "i_max": self.i_max,
                "per_i": [[i, v["source_dim"], v["rank"], v["injective"], v["zero"]]
                          for i, v in sorted(self.per_i.items())]}


def _induced_degree(Fk, i, N, Q, t, p):
    """Matrix of H_i(F⊗N)_t -> H_i(F⊗Q)_t in chosen bases; returns (dim source, matrix)."""
    n = tensor_layout(Fk, i, N, t)[1]
    m = tensor_layout(Fk, i, Q, t)[1]
    if n == 0:
        return 0, np.zeros((0, 0), dtype=np.int64)
    ZA, BA = _homology_basis(tensor_matrix(Fk, i, N, t) if i else None, tensor_matrix(Fk, i + 1, N, t), n, p)
    spanA = linalg.Span(n, p, BA if len(BA) else None)
    hA = [z for z in ZA if spanA.add(z)]
    if not hA:
        return 0, np.zeros((0, 0), dtype=np.int64)
    if m == 0:
        return len(hA), np.zeros((0, len(hA)), dtype=np.int64)
    ZB, BB = _homology_basis(tensor_matrix(Fk, i, Q, t) if i else None, tensor_matrix(Fk, i + 1, Q, t), m, p)
    spanB = linalg.Span(m, p, BB if len(BB) else None)
    hB = [z for z in ZB if spanB.add(z)]
    f = _complex_map(Fk, i, N, Q, t)
    stack = np.vstack([BB] + ([np.array(hB)] if hB else [])) if (len(BB) or hB) else np.zeros((0, m), dtype=np.int64)
    mat = np.zeros((len(hB), len(hA)), dtype=np.int64)
    for j, z in enumerate(hA):
        w = (f @ z) % p
        if not len(stack):
            continue
        c = linalg.solve_left(stack, w, p)
        if c is None:
            raise RuntimeError("image of a cycle is not a cycle")
        mat[:, j] = c[len(BB):]
    return len(hA), mat


def induced_tor_map(N, n, i_max, resolution=None):
    """Tor_i(k, N) -> Tor_i(k, N/m^{n+1}N) for i <= i_max."""
    ring = N.ring
    p = ring.p
    Fk = resolution or resolution_of(Module.residue_field(ring))
    FN = resolution_of(N)
    Q = N.truncation(n)
    rep = InducedMapReport(n, i_max)
    for i in range(i_max + 1):
        if FN.rank(i) == 0:
            rep.record(i, 0, 0, [])
            continue
        degs = FN.degrees(i)
        src_total, rank_total, mats = 0, 0, []
        for t in range(min(degs), max(degs) + 1):
            d, mat = _induced_degree(Fk, i, N, Q, t, p)
            if d == 0:
                continue
            r = linalg.rank(mat, p) if mat.size else 0
            src_total += d
            rank_total += r
            mats.append([t, mat.tolist()])
        rep.record(i, src_total, rank_total, mats)
    return rep


def levin_map_zero(N, s, i_max, Fk=None):
    """Is Tor_i(k, m^s N) -> Tor_i(k, m^{s-1} N) zero for every i <= i_max?"""
    ring = N.ring
    p = ring.p
    Fk = Fk or resolution_of(Module.residue_field(ring))
    rreg = max(ring_regularity(ring), 1)
    base = max(regularity(N), N.maxgen + s)
    for i in range(i_max + 1):
        if Fk.rank(i) == 0:
            continue
        top = base + i * rreg
        lo = Fk.M.indeg + i + N.indeg
        for t in range(lo, top + 1):
            Z, _ = _cycles_and_boundaries(Fk, i, N, s, t)
            if not len(Z):
                continue
            _, B = _cycles_and_boundaries(Fk, i, N, s - 1, t)
            span = linalg.Span(Z.shape[1], p, B if len(B) else None)
            if any(span.add(z) for z in Z):
                return False
    return True


# --- Ext(k, M), Hom ---------------------------------------------------------

def _hom_layout(F, j, M, t, gens):
    out, off = [], 0
    lev = F.level(j)
    for g in gens:
        u = t + lev.degrees[g]
        size = M.dim(u)
        if size:
            out.append((g, u, off, size))
            off += size
    return out, off


def _hom_matrix(F, j, M, t, gens_j, gens_prev):
    """delta: Hom(F_{j-1}, M)_t -> Hom(F_j, M)_t, phi -> phi o d_j."""
    src, n = _hom_layout(F, j - 1, M, t, gens_prev)
    tgt, m = _hom_layout(F, j, M, t, gens_j)
    D = np.zeros((m, n), dtype=np.int64)
    if n == 0 or m == 0:
        return D
    where = {g: (off, size) for g, u, off, size in src}
    for g, u, off, size in tgt:
        for r, e, c in _entries(F, j, g):
            if r not in where:
                continue
            off2, size2 = where[r]
            D[off:off + size, off2:off2 + size2] = (D[off:off + size, off2:off2 + size2]
                                                     + M.act(c, e, u - e)) % M.p
    return D


def ext_degrees(M, i, window=None):
    """{t: dim Ext^i(k, M)_t}."""
    ring = M.ring
    p = ring.p
    Fk = resolution_of(Module.residue_field(ring))
    if Fk.rank(i) == 0:
        return {}
    degs = Fk.degrees(i)
    lo = M.indeg - max(degs)
    top = M.top_degree()
    rigorous = top is not None
    if window is not None:
        lo_w, hi = window
        lo = max(lo, lo_w)
    elif rigorous:
        hi = top - min(degs)
    else:
        hi = regularity(M) + 1
    out = {}
    gens_prev = range(len(Fk.degrees(i - 1))) if i > 0 else []
    if not rigorous:
        every = range(Fk.rank(i + 1))
    for t in range(lo, hi + 1):
        # only generators g with M_{t + deg g} != 0 contribute
        nxt = _gens_upto(Fk, i + 1, top - t) if rigorous else every
        gens_i = range(len(degs))
        n = _hom_layout(Fk, i, M, t, gens_i)[1]
        if n == 0:
            continue
        r_out = linalg.rank(_hom_matrix(Fk, i + 1, M, t, nxt, gens_i), p)
        r_in = linalg.rank(_hom_matrix(Fk, i, M, t, gens_i, gens_prev), p) if i > 0 else 0
        v = n - r_out - r_in
        if v:
            out[t] = v
    if not rigorous and out and max(out) >= hi:
        raise Inconclusive(f"Ext^{i}(k, M) nonzero at the window boundary {hi}",
                           suggestion=(lo, hi + 4))
    return out


def ext_bass(M, i, window=None):
    """Exact Bass number l Ext^i_R(k, M)."""
    return sum(ext_degrees(M, i, window).values())


def hom_length(L, X):
    """l Hom_R(L, X) for X of finite length."""
    top = X.top_degree()
    if top is None:
        raise ValueError("second argument must have finite length")
    Lm = L.minimal()
    if not Lm.degrees:
        return 0
    p = X.p
    total = 0
    for t in range(X.indeg - Lm.maxgen, top - Lm.indeg + 1):
        blocks, n = [], 0
        for k, a in enumerate(Lm.degrees):
            size = X.dim(t + a)
            blocks.append((k, t + a, n, size))
            n += size
        if n == 0:
            continue
        rows = []
        for col, b in zip(Lm.columns, Lm.col_degrees):
            u = t + b
            m = X.dim(u)
            if m == 0:
                continue
            R = np.zeros((m, n), dtype=np.int64)
            for k, ua, off, size in blocks:
                f = col[k]
                if f.is_zero() or size == 0:
                    continue
                e = f.degree()
                R[:, off:off + size] = X.act(L.ring.coords(f, e), e, ua)
            rows.append(R)
        if rows:
            A = np.vstack(rows)
            total += n - linalg.rank(A, p)
        else:
            total += n
    return total


class InjdimResult:
    def __init__(self, finite, exact, method, bass):
        self.finite = finite
        self.exact = exact
        self.method = method
        self.bass = bass

    def __bool__(self):
        return self.finite

    def to_json(self):
        return {"finite": self.finite, "exact": self.exact, "method": self.method,
                "bass": [[i, b] for i, b in sorted(self.bass.items())]}


def injdim_finite(M, gap=2):
    """Finiteness of injdim M: exact over Gorenstein rings, else a gap probe."""
    if M.is_zero():
        raise ValueError("injective dimension of the zero module")
    ring = M.ring
    depth = ring_depth_dim(ring)[0]
    if is_gorenstein(ring):
        fin, _ = projdim_finite(M)
        return InjdimResult(fin, True, "gorenstein", {})
    bass = {}
    for i in range(depth + 1, depth + gap + 1):
        bass[i] = ext_bass(M, i)
        if bass[i]:
            return InjdimResult(False, True, "nonzero-bass", bass)
    return InjdimResult(True, False, "gap-probe", bass)


# --- Tor tables -------------------------------------------------------------

class TorTable:
    """Lengths l Tor_i(M, X_n) for a family X_n."""

    def __init__(self, module_name, family, i_set, n_range, lengths, meta=None):
        self.module_name = module_name
        self.family = family
        self.i_set = list(i_set)
        self.n_range = list(n_range)
        self.lengths = dict(lengths)
        self.meta = dict(meta or {})

    def row(self, i):
        return [self.lengths[(i, n)] for n in self.n_range]

    def to_csv(self):
        lines = ["i,n,length"]
        for i in self.i_set:
            for n in self.n_range:
                lines.append(f"{i},{n},{self.lengths[(i, n)]}")
        return "\n".join(lines) + "\n"

    def to_json(self):
        return {"module": self.module_name, "family": self.family, "i": self.i_set,
                "n": self.n_range, "lengths": [[i, n, self.lengths[(i, n)]] for i in self.i_set
                                               for n in self.n_range],
                "meta": self.meta}


def ideal_power_module(ring, gens, n):
    """R / I^{n+1} for the ideal I generated by gens."""
    power = [ring.P.one()]
    for _ in range(n + 1):
        nxt = {}
        for f in power:
            for g in gens:
                h = ring.reduce(f * g)
                if not h.is_zero():
                    nxt[h] = None
        power = list(nxt)
    return Module.minimal(Module.cyclic(ring, power, name=f"R/I^{n + 1}"))


def is_m_primary(ring, gens):
    Q = Module.cyclic(ring, gens)
    return Q.is_zero() or Q.is_finite_length()


def tor_table(M, family="quotient", i_set=(1,), n_max=8, n_min=0, N=None, ideal=None):
    """Tor lengths against R/I^{n+1} (default I = m), N/m^{n+1}N or m^{n+1}N."""
    ring = M.ring
    ns = range(n_min, n_max + 1)
    out = {}
    if family == "quotient":
        if ideal is None:
            desc = "R/m^{n+1}"
            X = {n: ring.as_module().truncation(n) for n in ns}
        else:
            if not is_m_primary(ring, ideal):
                raise ValueError("ideal is not m-primary")
            desc = "R/I^{n+1}, I = (" + ", ".join(str(f) for f in ideal) + ")"
            X = {n: ideal_power_module(ring, ideal, n) for n in ns}
        for i in i_set:
            for n in ns:
                out[(i, n)] = tor_length(M, X[n], i)
    elif family == "truncation":
        desc = f"{N.name}/m^{{n+1}}{N.name}"
        for i in i_set:
            for n in ns:
                out[(i, n)] = tor_length(M, N.truncation(n), i)
    elif family == "power":
        desc = f"m^{{n+1}}{N.name}"
        for i in i_set:
            for n in ns:
                out[(i, n)] = power_tor_length(M, N, i, n)
    else:
        raise ValueError(f"unknown family {family}")
    return TorTable(M.name, desc, i_set, ns, out, {"n_min": n_min, "n_max": n_max})
