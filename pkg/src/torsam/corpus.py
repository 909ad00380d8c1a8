"""Seeded random rings and modules for the fuzz scenarios."""

import numpy as np

from .grammar import format_document
from .module import Module
from .poly import Poly, monomials_of_degree
from .ring import GradedRing

RING_SHAPES = ("random", "regular-ring", "hypersurface", "complete-intersection", "monomial")
MODULE_KINDS = ("matrix", "matrix+free", "residue", "cyclic-linear", "free")
_VARS = ("x", "y", "z")


class Instance:
    """One corpus entry: a ring, a module M and a partner module N over it."""

    def __init__(self, idx, seed, shape, kind, ring, M, N):
        self.idx = idx
        self.seed = seed
        self.shape = shape
        self.kind = kind
        self.ring = ring
        self.M = M
        self.N = N

    def text(self):
        return format_document([self.ring], [self.M, self.N], self.ring.p)

    def to_json(self):
        return {"id": self.idx, "seed": self.seed, "shape": self.shape, "kind": self.kind,
                "input": self.text()}


def random_form(P, d, rng, density=1.0):
    """Random homogeneous form of degree d; density < 1 keeps a random subset of monomials."""
    mons = monomials_of_degree(P.nvars, d)
    terms = {}
    for m in mons:
        if rng.random() < density:
            terms[m] = int(rng.integers(1, P.p))
    if not terms:
        m = mons[int(rng.integers(len(mons)))]
        terms[m] = int(rng.integers(1, P.p))
    return Poly(P, terms)


def random_monomial(P, d, rng):
    mons = monomials_of_degree(P.nvars, d)
    return P.monomial(mons[int(rng.integers(len(mons)))])


def random_ring(rng, shape="random", nvars=None, field=None):
    n = int(nvars) if nvars else int(rng.integers(2, 4))
    names = list(_VARS[:n])
    P = GradedRing(names, (), field).P
    if shape == "regular-ring":
        rels = []
    elif shape == "hypersurface":
        rels = [random_form(P, int(rng.integers(2, 4)), rng)]
    elif shape == "complete-intersection":
        rels = [random_form(P, int(rng.integers(2, 4)), rng) for _ in range(min(2, n))]
    elif shape == "monomial":
        # sparse relations such as (x^2, xy) give depth-0 rings of positive dimension
        rels = [random_monomial(P, 2, rng) for _ in range(int(rng.integers(1, 3)))]
    elif shape == "random":
        k = int(rng.integers(1, 3))
        rels = [random_form(P, int(rng.integers(2, 4)), rng, density=0.5) for _ in range(k)]
    else:
        raise ValueError(f"unknown ring shape {shape}")
    return GradedRing(names, rels, field, name="R")


def random_matrix_module(R, rng, name="M"):
    P = R.P
    r = int(rng.integers(1, 3))
    degrees = sorted(int(a) for a in rng.integers(0, 2, size=r))
    ncols = int(rng.integers(1, 3))
    cols = []
    for _ in range(ncols):
        top = max(degrees) + int(rng.integers(1, 3))
        col = []
        for a in degrees:
            e = top - a
            if e > 2 or rng.random() < 0.25:
                col.append(P.zero())
            else:
                col.append(random_form(P, e, rng, density=0.6))
        cols.append(tuple(col))
    return Module(R, degrees, cols, name=name)


def random_module(R, rng, kind="matrix", name="M"):
    P = R.P
    if kind == "matrix":
        M = random_matrix_module(R, rng, name)
    elif kind == "matrix+free":
        M = random_matrix_module(R, rng, name).direct_sum(Module.free(R, [0]), name=name)
    elif kind == "residue":
        M = Module.residue_field(R, name=name)
    elif kind == "cyclic-linear":
        M = Module.cyclic(R, [random_form(P, 1, rng, density=0.6)], name=name)
    elif kind == "free":
        M = Module.free(R, [0] * int(rng.integers(1, 3)), name=name)
    else:
        raise ValueError(f"unknown module kind {kind}")
    return M


_KIND_WEIGHTS = np.array([0.4, 0.1, 0.15, 0.2, 0.15])


def fuzz_corpus(seed, count, shapes=None, nvars=None, kinds=None, field=None):
    """count instances; instance idx draws from default_rng([seed, idx]) only."""
    if count < 1:
        raise ValueError("count must be >= 1")
    shapes = tuple(shapes) if shapes else RING_SHAPES
    kinds = tuple(kinds) if kinds else MODULE_KINDS
    w = np.array([_KIND_WEIGHTS[MODULE_KINDS.index(k)] for k in kinds])
    w = w / w.sum()
    out = []
    for idx in range(count):
        rng = np.random.default_rng([seed, idx])
        shape = shapes[int(rng.integers(len(shapes)))]
        while True:
            R = random_ring(rng, shape, nvars, field)
            kind = kinds[int(rng.choice(len(kinds), p=w))]
            M = random_module(R, rng, kind, "M")
            N = random_module(R, rng, kinds[int(rng.choice(len(kinds), p=w))], "N")
            if not M.is_zero() and not N.is_zero() and not R.as_module().is_zero():
                break
        out.append(Instance(idx, seed, shape, kind, R, M, N))
    return out


def finite_length_pairs(seed, count, field=None):
    """Pairs (M, X) of finite-length modules over 2-3 variable quotient rings."""
    out = []
    for idx in range(count):
        rng = np.random.default_rng([seed, idx, 1])
        while True:
            R = random_ring(rng, ("random", "regular-ring", "monomial")[idx % 3], None, field)
            mods = []
            for name in ("M", "X"):
                base = random_module(R, rng, ("matrix", "cyclic-linear", "residue")[int(rng.integers(3))], name)
                mods.append(base.truncation(int(rng.integers(1, 3))).explicit())
                mods[-1].name = name
            if all(not Mx.is_zero() for Mx in mods):
                break
        out.append((R, mods[0], mods[1]))
    return out
