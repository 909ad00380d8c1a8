"""Gröbner bases of submodules of twisted free modules over R = P/I.

Vectors are handled internally as dicts {(position, monomial): coeff}.
Computations happen over P with the Gröbner basis of I adjoined in every
position, so normal forms are read modulo I for free. The default order is
position-over-term with grevlex inside each position.
"""

from .poly import (Poly, grevlex_key, mdeg, mdivides, mgcd_is_one, mlcm, mmul,
                   monomials_of_degree, mquo)


# --- raw vector helpers ----------------------------------------------------

def _order_key(order, twists):
    if order == "pot":
        return lambda t: (-t[0], grevlex_key(t[1]))
    if order == "top":
        return lambda t: (mdeg(t[1]) + twists[t[0]], grevlex_key(t[1]), -t[0])
    raise ValueError(f"unknown module order {order!r}")


def vec_to_raw(v):
    out = {}
    for pos, f in enumerate(v):
        for m, c in f.terms.items():
            out[(pos, m)] = c
    return out


def raw_to_vec(raw, P, rank):
    parts = [dict() for _ in range(rank)]
    for (pos, m), c in raw.items():
        parts[pos][m] = c
    return tuple(Poly(P, t) for t in parts)


def raw_degree(raw, twists):
    for (pos, m) in raw:
        return mdeg(m) + twists[pos]
    return None


def _axpy(f, c, mono, g, p):
    """f -= c * mono * g, in place."""
    for (pos, m), v in g.items():
        t = (pos, mmul(m, mono))
        w = (f.get(t, 0) - c * v) % p
        if w:
            f[t] = w
        else:
            f.pop(t, None)


def _monic(f, key, p):
    if not f:
        return f
    lt = max(f, key=key)
    c = f[lt]
    if c == 1:
        return f
    ic = pow(c, p - 2, p)
    return {t: v * ic % p for t, v in f.items()}


class _Reducer:
    """Leading-term index over a list of monic raw vectors."""

    def __init__(self, key, p):
        self.key = key
        self.p = p
        self.by_pos = {}

    def add(self, lead, vec):
        self.by_pos.setdefault(lead[0], []).append((lead[1], vec))

    def find(self, t):
        for m, vec in self.by_pos.get(t[0], ()):
            if mdivides(m, t[1]):
                return m, vec
        return None

    def reduce(self, f, full=True):
        f = dict(f)
        rem = {}
        key, p = self.key, self.p
        while f:
            t = max(f, key=key)
            c = f[t]
            hit = self.find(t)
            if hit is None:
                if not full:
                    f.update(rem)
                    return f
                rem[t] = c
                del f[t]
                continue
            m, g = hit
            _axpy(f, c, mquo(t[1], m), g, p)
        return rem


def buchberger(gens, p, key, rank1=False, twists=None, max_degree=None):
    """Reduced Gröbner basis of the raw vectors gens (homogeneous)."""
    twists = twists or [0]
    G = []       # all elements found, monic
    leads = []
    live = []    # indices not made redundant
    pairs = []   # (degree, key of lcm term, i, j, lcm term)

    def tdeg(t):
        return mdeg(t[1]) + twists[t[0]]

    def lcm_t(i, j):
        return (leads[i][0], mlcm(leads[i][1], leads[j][1]))

    def update(h):
        nonlocal pairs, live
        lh = leads[h]
        cand = [g for g in live if leads[g][0] == lh[0]]
        C = [(g, lcm_t(g, h)) for g in cand]
        D = []
        while C:
            g1, l1 = C.pop()
            coprime = rank1 and mgcd_is_one(leads[g1][1], lh[1])
            if coprime or not any(mdivides(l2[1], l1[1]) for _, l2 in C + D):
                D.append((g1, l1))
        E = [(g, l) for g, l in D if not (rank1 and mgcd_is_one(leads[g][1], lh[1]))]
        kept = []
        for pr in pairs:
            _, _, i, j, l = pr
            if (l[0] == lh[0] and mdivides(lh[1], l[1])
                    and lcm_t(i, h) != l and lcm_t(j, h) != l):
                continue
            kept.append(pr)
        for g, l in E:
            kept.append((tdeg(l), key(l), g, h, l))
        pairs = kept
        live = [g for g in live if not (leads[g][0] == lh[0] and mdivides(lh[1], leads[g][1]))]
        live.append(h)

    red = _Reducer(key, p)

    def add_elem(f):
        f = _monic(f, key, p)
        lt = max(f, key=key)
        G.append(f)
        leads.append(lt)
        red.add(lt, f)
        update(len(G) - 1)

    todo = sorted((g for g in gens if g), key=lambda f: tdeg(max(f, key=key)))
    # feed generators degree by degree, interleaved with pairs of lower degree
    while todo or pairs:
        dg = tdeg(max(todo[0], key=key)) if todo else None
        dp = min(pr[0] for pr in pairs) if pairs else None
        if max_degree is not None:
            if dp is not None and dp > max_degree:
                pairs = []
                dp = None
            if dg is not None and dg > max_degree:
                todo = []
                dg = None
            if dg is None and dp is None:
                break
        if dg is not None and (dp is None or dg <= dp):
            f = red.reduce(todo.pop(0))
            if f:
                add_elem(f)
            continue
        pairs.sort(key=lambda pr: (pr[0], pr[1]))
        _, _, i, j, l = pairs.pop(0)
        gi, gj = G[i], G[j]
        s = {}
        _axpy(s, p - 1, mquo(l[1], leads[i][1]), gi, p)
        _axpy(s, 1, mquo(l[1], leads[j][1]), gj, p)
        s = red.reduce(s)
        if s:
            add_elem(s)

    return interreduce([G[g] for g in live], p, key)


def interreduce(basis, p, key):
    basis = [_monic(b, key, p) for b in basis if b]
    basis.sort(key=lambda f: key(max(f, key=key)))
    # drop elements whose leading term is divisible by another leading term
    minimal = []
    for f in basis:
        lt = max(f, key=key)
        if any(l[0] == lt[0] and mdivides(l[1], lt[1]) for l, _ in minimal):
            continue
        minimal.append((lt, f))
    out = []
    for k, (lt, f) in enumerate(minimal):
        r = _Reducer(key, p)
        for k2, (lt2, f2) in enumerate(minimal):
            if k2 != k:
                r.add(lt2, f2)
        head = {lt: f[lt]}
        tail = {t: c for t, c in f.items() if t != lt}
        g = r.reduce(tail)
        g.update(head)
        out.append(_monic(g, key, p))
    out.sort(key=lambda f: key(max(f, key=key)), reverse=True)
    return out


# --- submodules ------------------------------------------------------------

class Submodule:
    """Submodule of the twisted free module R^r generated by homogeneous vectors.

    ring is a GradedRing (anything with .P, .relations, .ideal_gb()).
    """

    def __init__(self, ring, twists, gens, order="pot"):
        self.ring = ring
        self.twists = tuple(int(a) for a in twists)
        self.rank = len(self.twists)
        P = ring.P
        clean = []
        for v in gens:
            v = tuple(v)
            if len(v) != self.rank:
                raise ValueError("vector length does not match the ambient rank")
            if any(f.ring != P for f in v):
                raise ValueError("vector entries from another ring")
            if vector_degree(v, self.twists, check=True) is None:
                continue
            clean.append(v)
        self.gens = tuple(clean)
        self.order = order
        self._gb = None

    @property
    def p(self):
        return self.ring.P.p

    def key(self):
        return _order_key(self.order, self.twists)

    def _raw_gens(self):
        raw = [vec_to_raw(v) for v in self.gens]
        for f in self.ring.ideal_gb():
            for k in range(self.rank):
                raw.append({(k, m): c for m, c in f.terms.items()})
        return raw

    def raw_gb(self):
        if self._gb is None:
            self._gb = buchberger(self._raw_gens(), self.p, self.key(),
                                  rank1=(self.rank == 1), twists=list(self.twists))
        return self._gb

    def reducer(self):
        r = _Reducer(self.key(), self.p)
        key = self.key()
        for f in self.raw_gb():
            r.add(max(f, key=key), f)
        return r

    def normal_form(self, v):
        if len(v) != self.rank:
            raise ValueError("ambient mismatch: wrong vector length")
        if any(f.ring != self.ring.P for f in v):
            raise ValueError("ambient mismatch: entries from another ring")
        return raw_to_vec(self.reducer().reduce(vec_to_raw(v)), self.ring.P, self.rank)

    def contains(self, v):
        return all(f.is_zero() for f in self.normal_form(v))

    def leading_monomials(self):
        """Minimal generators of in(U + I R^r), grouped by position."""
        key = self.key()
        out = {k: [] for k in range(self.rank)}
        for f in self.raw_gb():
            pos, m = max(f, key=key)
            out[pos].append(m)
        return out

    def __repr__(self):
        return f"Submodule(rank={self.rank}, gens={len(self.gens)})"


def vector_degree(v, twists, check=False):
    """Twisted degree of a homogeneous vector; None for the zero vector."""
    deg = None
    for f, a in zip(v, twists):
        for m in f.terms:
            d = mdeg(m) + a
            if deg is None:
                deg = d
            elif d != deg:
                if check:
                    raise ValueError("vector is not homogeneous for the given twists")
                return None
    return deg


def groebner_basis(U):
    """Reduced Gröbner basis as a Submodule, with the I R^r part removed."""
    key = U.key()
    lead_I = [max(f.terms, key=grevlex_key) for f in U.ring.ideal_gb()]
    keep = []
    for f in U.raw_gb():
        pos, m = max(f, key=key)
        if any(mdivides(l, m) for l in lead_I):
            continue
        keep.append(raw_to_vec(f, U.ring.P, U.rank))
    out = Submodule(U.ring, U.twists, keep, U.order)
    return out


def normal_form(v, U):
    return U.normal_form(v)


def _elimination(ring, rank, twists, top, bottom, extra_top=()):
    """GB of the module generated by (top_j, e_j) and (extra, 0).

    Returns the second components of the elements with vanishing first part.
    top: list of vectors in R^rank; their tags get twists = their degrees.
    """
    P = ring.P
    p = P.p
    s = len(top)
    tag_tw = []
    for v, d in zip(top, bottom):
        tag_tw.append(d)
    all_tw = list(twists) + tag_tw
    key = _order_key("pot", all_tw)
    raw = []
    for j, v in enumerate(top):
        r = vec_to_raw(v)
        r[(rank + j, (0,) * P.nvars)] = 1
        raw.append(r)
    for v in extra_top:
        raw.append(vec_to_raw(v))
    for f in ring.ideal_gb():
        for k in range(rank):
            raw.append({(k, m): c for m, c in f.terms.items()})
    gb = buchberger(raw, p, key, rank1=False, twists=all_tw)
    out = []
    for f in gb:
        pos, _ = max(f, key=key)
        if pos >= rank:
            parts = {(pp - rank, m): c for (pp, m), c in f.items()}
            out.append(raw_to_vec(parts, P, s))
    return out, tag_tw


def reduce_mod_ideal(v, ring):
    return tuple(ring.reduce(f) for f in v)


def syzygies(U):
    """Generators of the kernel of R^{gens} -> ambient, as a Submodule."""
    gens = list(U.gens)
    if not gens:
        return Submodule(U.ring, (), [])
    degs = [vector_degree(v, U.twists) for v in gens]
    syz, tw = _elimination(U.ring, U.rank, U.twists, gens, degs)
    syz = [reduce_mod_ideal(v, U.ring) for v in syz]
    return Submodule(U.ring, tw, [v for v in syz if any(not f.is_zero() for f in v)])


def power_submodule(M, n):
    """m^n times the generators of M, inside the cover of M."""
    if n < 0:
        raise ValueError("negative power")
    ring = M.ring
    P = ring.P
    r = len(M.degrees)
    gens = []
    for k in range(r):
        for u in monomials_of_degree(P.nvars, n):
            f = ring.reduce(P.monomial(u))
            if f.is_zero():
                continue
            v = [P.zero()] * r
            v[k] = f
            gens.append(tuple(v))
    return Submodule(ring, M.degrees, gens)


def colon(U, x, relations=()):
    """{v : x v in U + relations} inside the cover of U.

    relations are the relations of the module M containing U (vectors of the
    same ambient). x = 0 returns the whole ambient.
    """
    ring = U.ring
    P = ring.P
    r = U.rank
    if x.is_zero():
        return Submodule(ring, U.twists, [_unit(P, r, k) for k in range(r)])
    if not x.is_homogeneous():
        raise ValueError("colon needs a homogeneous element")
    dx = x.degree()
    top = []
    for k in range(r):
        v = [P.zero()] * r
        v[k] = x
        top.append(tuple(v))
    degs = [U.twists[k] + dx for k in range(r)]
    extra = list(U.gens) + list(relations)
    res, _ = _elimination(ring, r, U.twists, top, degs, extra_top=extra)
    res = [reduce_mod_ideal(v, ring) for v in res]
    return Submodule(ring, U.twists, res)


def _unit(P, r, k):
    v = [P.zero()] * r
    v[k] = P.one()
    return tuple(v)


def kernel(columns, source_twists, target_twists, ring):
    """Kernel of the matrix map with the given columns (vectors in the target)."""
    source_twists = list(source_twists)
    if len(columns) != len(source_twists):
        raise ValueError("one column per source generator")
    for v, a in zip(columns, source_twists):
        d = vector_degree(v, target_twists, check=True)
        if d is not None and d != a:
            raise ValueError("twist inconsistency: column degree differs from source twist")
    P = ring.P
    nz = [j for j, v in enumerate(columns) if vector_degree(v, target_twists) is not None]
    gens = []
    # zero columns are free kernel directions
    for j, v in enumerate(columns):
        if j not in nz:
            gens.append(_unit(P, len(columns), j))
    if nz:
        sub = [columns[j] for j in nz]
        syz, _ = _elimination(ring, len(target_twists), target_twists, sub,
                              [source_twists[j] for j in nz])
        for s in syz:
            s = reduce_mod_ideal(s, ring)
            full = [P.zero()] * len(columns)
            for j, f in zip(nz, s):
                full[j] = f
            if any(not f.is_zero() for f in full):
                gens.append(tuple(full))
    return Submodule(ring, source_twists, gens)


def intersection(U, V):
    if U.twists != V.twists:
        raise ValueError("ambient mismatch")
    ring = U.ring
    r = U.rank
    top = list(U.gens)
    if not top:
        return Submodule(ring, U.twists, [])
    degs = [vector_degree(v, U.twists) for v in top]
    res, _ = _elimination(ring, r, U.twists, top, degs, extra_top=list(V.gens))
    # res are coefficient vectors c with sum c_j u_j in V; map back
    P = ring.P
    out = []
    for c in res:
        v = [P.zero()] * r
        for cj, u in zip(c, top):
            for k in range(r):
                v[k] = v[k] + cj * u[k]
        v = reduce_mod_ideal(v, ring)
        if any(not f.is_zero() for f in v):
            out.append(v)
    return Submodule(ring, U.twists, out)


def ideal_gb(polys, P):
    """Reduced Gröbner basis of an ideal of P, as a list of monic polys."""
    raw = [{(0, m): c for m, c in f.terms.items()} for f in polys if not f.is_zero()]
    key = _order_key("pot", [0])
    gb = buchberger(raw, P.p, key, rank1=True, twists=[0])
    return [Poly(P, {m: c for (_, m), c in f.items()}) for f in gb]
