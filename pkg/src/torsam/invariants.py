"""Hilbert-Samuel data, superficial elements, rho, polyreg, Avramov and Levin indices.

Every asymptotic statement is checked on an explicit window and the window
travels with the answer.
"""

import numpy as np

from . import linalg
from .homology import Inconclusive, induced_tor_map, levin_map_zero
from .module import Module
from .poly import Poly
from .resolution import (HilbertSeries, depth_dim, hilbert_data, regularity, resolution_of,
                         ring_depth_dim)


# --- Hilbert series and Hilbert-Samuel function ----------------------------

def hilbert_series(M):
    if M.is_zero():
        raise ValueError("Hilbert series of the zero module")
    return hilbert_data(M)


def multiplicity(M):
    return hilbert_series(M).multiplicity


def _threshold(hs):
    """Least t0 with HF(t) = HP(t) for all t >= t0."""
    if hs.is_zero():
        return -10**9
    return hs.shift + len(hs.coeffs) - hs.dim


def hs_function(M, n):
    """l(M / m^{n+1} M)."""
    if n < 0:
        raise ValueError("n must be non-negative")
    return M.truncation(n).length()


def _samuel_pieces(M):
    """Pieces (hs, offset) with l(M/m^{j}M) = sum HF_hs(j + offset) for j >= 1.

    Uses l(M/m^j M) = sum_{t < j + indeg} HF_M(t) + sum_c HF_{M/M_c}(j + c), where
    M_c is generated by the generators of degree <= c and c runs over
    [indeg, maxgen).
    """
    if "samuel" in M._cache:
        return M._cache["samuel"]
    Mm = M.minimal()
    hs = hilbert_data(Mm)
    cum = HilbertSeries(hs.coeffs, hs.shift, hs.dim + 1)
    pieces = [(cum, Mm.indeg - 1)]
    P = Mm.ring.P
    for c in range(Mm.indeg, Mm.maxgen):
        units = []
        for k, a in enumerate(Mm.degrees):
            if a <= c:
                v = [P.zero()] * Mm.rank
                v[k] = P.one()
                units.append(tuple(v))
        Q = Module(Mm.ring, Mm.degrees, list(Mm.columns) + units)
        if Q.is_zero():
            continue
        pieces.append((hilbert_data(Q), c))
    M._cache["samuel"] = pieces
    return pieces


def hs_polynomial_value(M, n):
    """Value at n of the Hilbert-Samuel polynomial of M."""
    j = n + 1
    total = 0
    for hs, off in _samuel_pieces(M):
        total += hs.polynomial_value(j + off) if hs.dim > 0 else 0
    return total


def postulation_number(M):
    """Least c >= 0 with l(M/m^{n+1}M) equal to the Hilbert-Samuel polynomial for n >= c."""
    if "post" in M._cache:
        return M._cache["post"]
    # beyond this every piece agrees with its polynomial
    start = max([0] + [_threshold(hs) - off - 1 for hs, off in _samuel_pieces(M)])
    c = start
    for n in range(start - 1, -1, -1):
        if hs_function(M, n) != hs_polynomial_value(M, n):
            break
        c = n
    M._cache["post"] = c
    return c


# --- superficial elements and rho ------------------------------------------

def _linear_coords(M, x):
    if isinstance(x, Poly):
        if x.degree() != 1 or not x.is_homogeneous():
            raise ValueError("superficial candidates are linear forms")
        return M.ring.coords(x, 1)
    return np.asarray(x, dtype=np.int64) % M.p


def _colon_span(M, c, n, t):
    """Basis rows of (m^{n+1}M :_M x)_t."""
    p = M.p
    d = M.dim(t)
    if d == 0:
        return np.zeros((0, 0), dtype=np.int64)
    A = M.act(c, 1, t)
    W = M.power_span(n + 1, t + 1)
    if A.shape[0] == 0:
        return np.eye(d, dtype=np.int64)
    big = np.hstack([A, (-W.T) % p]) if len(W) else A
    ker = linalg.nullspace(big, p)
    if not len(ker):
        return np.zeros((0, d), dtype=np.int64)
    return linalg.row_space(ker[:, :d], p)


def _dim_sum(p, *spans):
    rows = [s for s in spans if len(s)]
    if not rows:
        return 0
    return linalg.rank(np.vstack(rows), p)


def _colon_equal(M, c, n, cutoff=None):
    """Does (m^{n+1}M : x) ∩ m^{cutoff}M = m^n M hold (cutoff None: no intersection)?"""
    p = M.p
    for t in range(M.indeg, M.maxgen + n):
        d = M.dim(t)
        if d == 0:
            continue
        C = _colon_span(M, c, n, t)
        X = M.power_span(n, t)
        dx = linalg.rank(X, p) if len(X) else 0
        if cutoff is None:
            dc = len(C)
        else:
            V = M.power_span(cutoff, t)
            dv = linalg.rank(V, p) if len(V) else 0
            dc = len(C) + dv - _dim_sum(p, C, V)
        if dc != dx:
            return False
    return True


def is_superficial(x, M, n_max):
    """(holds, c): some c <= n_max // 2 with the defining equality for n in [c, n_max].

    c = n always satisfies the equality for that single n, so c is capped to
    keep a window of real checks.
    """
    c = _linear_coords(M, x)
    if M.is_zero():
        return True, 0
    for cc in range(n_max // 2 + 1):
        if all(_colon_equal(M, c, n, cc) for n in range(cc, n_max + 1)):
            return True, cc
    return False, None


def find_superficial(targets, trials=20, seed=0, n_max=6):
    """A linear form superficial for every target, by seeded random search."""
    if trials < 1:
        raise ValueError("trials must be >= 1")
    ring = targets[0].ring
    rng = np.random.default_rng(seed)
    failing = None
    for _ in range(trials):
        c = rng.integers(0, ring.p, size=ring.nvars)
        if not c.any():
            continue
        ok = True
        for T in targets:
            if not is_superficial(c, T, n_max)[0]:
                ok, failing = False, T
                break
        if ok:
            return Poly(ring.P, {tuple(int(i == v) for i in range(ring.nvars)): int(c[v])
                                 for v in range(ring.nvars)})
    raise Inconclusive(f"no superficial element found for {failing.name if failing else '?'} "
                       f"in {trials} trials")


def rho(x, M, n_max):
    """Least r <= n_max with (m^{n+1}M : x) = m^n M for all n in [r, n_max]."""
    c = _linear_coords(M, x)
    eq = [_colon_equal(M, c, n) for n in range(n_max + 1)]
    if not eq[-1]:
        raise Inconclusive(f"colon equality fails at n = {n_max}", suggestion=n_max + 4)
    r = n_max
    while r > 0 and eq[r - 1]:
        r -= 1
    return r


def is_nonzerodivisor(x, M, t_max):
    """x * v = 0 forces v = 0 in degrees <= t_max."""
    c = _linear_coords(M, x)
    for t in range(M.indeg, t_max + 1):
        d = M.dim(t)
        if d and linalg.rank(M.act(c, 1, t), M.p) < d:
            return False
    return True


# --- polynomial regularity -------------------------------------------------

UNSUPPORTED = "unsupported-class"


def single_generation_degree(M):
    degs = set(M.minimal().degrees)
    return degs.pop() if len(degs) == 1 else None


def polyreg(M):
    """reg of gr_m M for M generated in one degree d0, else UNSUPPORTED.

    For such M, gr_m M is M regraded so that the generators sit in degree 0,
    hence polyreg = reg_P(M) - d0.
    """
    d0 = single_generation_degree(M)
    if d0 is None:
        return UNSUPPORTED
    return regularity(M) - d0


# --- Avramov and Levin indices ---------------------------------------------

def avramov_index(N, i_max, n_max):
    """Least n <= n_max with Tor(k, N) -> Tor(k, N/m^{n+1}N) injective through i_max."""
    for n in range(n_max + 1):
        if induced_tor_map(N, n, i_max).injective:
            return n
    raise Inconclusive(f"no injective pi^n for n <= {n_max}", suggestion=n_max + 4)


def levin_index(N, i_max, s_max):
    """Least n <= s_max with Tor(k, m^s N) -> Tor(k, m^{s-1} N) zero for s in [n, s_max]."""
    if s_max < 1:
        raise ValueError("s_max must be >= 1")
    zero = {s: levin_map_zero(N, s, i_max) for s in range(1, s_max + 1)}
    if not zero[s_max]:
        raise Inconclusive(f"map nonzero at s = {s_max}", suggestion=s_max + 4)
    n = s_max
    while n > 1 and zero[n - 1]:
        n -= 1
    return n


# --- report ------------------------------------------------------------------

def default_windows(M):
    depth = ring_depth_dim(M.ring)[0]
    n_max = max(postulation_number(M) + 3, 6)
    return {"n_max": n_max, "i_max": depth + 4, "s_max": n_max}


def invariant_report(M, n_max=None, i_max=None, s_max=None, seed=0, rho_trials=1):
    w = default_windows(M)
    n_max = w["n_max"] if n_max is None else n_max
    i_max = w["i_max"] if i_max is None else i_max
    s_max = n_max if s_max is None else s_max
    depth, dim = depth_dim(M)
    out = {
        "multiplicity": multiplicity(M), "dim": dim, "depth": depth,
        "embdim_R": M.ring.nvars, "postulation_number": postulation_number(M),
        "polyreg": polyreg(M),
        "bounds": {"n_max": n_max, "i_max": i_max, "s_max": s_max},
    }
    try:
        x = find_superficial([M], trials=20, seed=seed, n_max=n_max)
        out["superficial"] = str(x)
        out["rho"] = rho(x, M, n_max) if depth >= 1 else "depth-0"
    except Inconclusive as e:
        out["superficial"] = None
        out["rho"] = f"inconclusive: {e}"
    for key, fn, args in (("avramov_index", avramov_index, (i_max, n_max)),
                          ("levin_index", levin_index, (i_max, s_max))):
        try:
            out[key] = fn(M, *args)
        except Inconclusive as e:
            out[key] = f"inconclusive: {e}"
    out["betti_R"] = resolution_of(M).betti_table(min(i_max, 3))
    return out
