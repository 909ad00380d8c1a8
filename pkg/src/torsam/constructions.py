"""Example rings and modules: trivial extensions, the non-CM family, hypersurfaces."""

from .homology import tor_length
from .invariants import hs_function
from .module import Module
from .poly import Poly
from .resolution import hilbert_data, is_gorenstein
from .ring import GradedRing


class TrivialExtensionSpec:
    """R = S ⋉ L with L placed in degree 1, plus S viewed as an R-module."""

    def __init__(self, S, L, R, S_module, L_module, lift):
        self.S = S
        self.L = L
        self.R = R
        self.S_module = S_module
        self.L_module = L_module
        self.lift = lift

    def hilbert_identity(self):
        """Hilb_R = Hilb_S + z Hilb_L, exactly."""
        lhs = hilbert_data(self.R.as_module())
        rhs = hilbert_data(self.S.as_module())
        if not self.L.is_zero():
            rhs = rhs + hilbert_data(self.L).shifted(1)
        return lhs == rhs


def _fresh_names(names, t):
    out = []
    k = 1
    while len(out) < t:
        cand = f"y{k}" if t > 1 else "y"
        if t == 1 and cand in names:
            cand = f"y{k}"
        if cand not in names and cand not in out:
            out.append(cand)
        k += 1
    return out


def trivial_extension(S, L):
    """S ⋉ L for an S-module L generated in degree 0."""
    if L.ring is not S:
        raise ValueError("L must be a module over S")
    Lm = L.minimal()
    if any(a != 0 for a in Lm.degrees):
        raise ValueError("L must be generated in degree 0")
    t = Lm.rank
    n = S.nvars
    ynames = _fresh_names(S.names, t)
    names = list(S.names) + ynames
    R0 = GradedRing(names, (), S.p)
    P = R0.P

    def lift(f):
        return Poly(P, {m + (0,) * t: c for m, c in f.terms.items()})

    ys = [P.var(n + j) for j in range(t)]
    rels = [lift(f) for f in S.relations]
    for a in range(t):
        for b in range(a, t):
            rels.append(ys[a] * ys[b])
    for col in Lm.columns:
        f = P.zero()
        for a in range(t):
            f = f + lift(col[a]) * ys[a]
        if not f.is_zero():
            rels.append(f)
    R = GradedRing(names, rels, S.p, name=f"{S.name}x{L.name}")
    S_mod = Module.cyclic(R, ys, name="S")
    # L as an R-module: same presentation, y acting by zero, shifted to degree 1
    zero = P.zero()
    Lcols = [tuple(lift(f) for f in col) for col in Lm.columns]
    for a in range(t):
        for y in ys:
            v = [zero] * t
            v[a] = y
            Lcols.append(tuple(v))
    L_mod = Module(R, [1] * t, Lcols, name="L")
    return TrivialExtensionSpec(S, Lm, R, S_mod, L_mod, lift)


def noncm_example(p, q, field=None):
    """R = S ⋉ L with S = k[x1..xq], L = S/(x_{p+2},...,x_q); M = S as an R-module."""
    if not (0 <= p <= q - 1):
        raise ValueError("need 0 <= p <= q - 1")
    S = GradedRing([f"x{i + 1}" for i in range(q)], (), field, name="S")
    L = Module.cyclic(S, [S.var(j) for j in range(p + 1, q)], name="L")
    spec = trivial_extension(S, L)
    return spec.R, spec.S_module, spec


def tor1_identity_check(spec, n_max):
    """Rows (n, l Tor_1^R(S, R/m^{n+1}), rank n^n L / n^{n+1} L) for n = 0..n_max."""
    R = spec.R
    rows = []
    for n in range(n_max + 1):
        left = tor_length(spec.S_module, R.as_module().truncation(n), 1)
        if spec.L.is_zero():
            right = 0
        else:
            right = hs_function(spec.L, n) - (hs_function(spec.L, n - 1) if n > 0 else 0)
        rows.append((n, left, right))
    return rows


def hypersurface(f, names=None, name="R"):
    """R = P/(f) for a homogeneous f of degree >= 2."""
    if f.is_zero() or f.degree() < 2:
        raise ValueError("a hypersurface needs a form of degree >= 2")
    if not f.is_homogeneous():
        raise ValueError("relation is not homogeneous")
    R = GradedRing(list(names or f.ring.names), [f], f.ring.p, name=name)
    R._flags["gorenstein"] = True
    R._flags["multiplicity"] = f.degree()
    assert is_gorenstein(R)
    return R


def residue_sum(R, r):
    """k^r."""
    k = Module.residue_field(R)
    out = k
    for _ in range(r - 1):
        out = out.direct_sum(k)
    out.name = f"k^{r}"
    return out
