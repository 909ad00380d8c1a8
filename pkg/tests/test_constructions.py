import pytest

from helpers import poly, ring
from torsam.constructions import (hypersurface, noncm_example, residue_sum, tor1_identity_check,
                                  trivial_extension)
from torsam.fitter import fit
from torsam.grammar import format_document, parse_input
from torsam.homology import tor_table
from torsam.module import Module
from torsam.resolution import depth_dim, minimal_resolution, ring_depth_dim, ring_multiplicity


def test_trivial_extension_of_free():
    S = ring("k[x]", "S")
    spec = trivial_extension(S, S.as_module())
    assert list(spec.R.names) == ["x", "y"]
    assert [spec.R.dim(t) for t in range(5)] == [1, 2, 2, 2, 2]
    assert spec.hilbert_identity()
    assert tor1_identity_check(spec, 4) == [(n, 1, 1) for n in range(5)]


def test_trivial_extension_of_cyclic():
    S = ring("k[x1,x2]", "S")
    L = Module.cyclic(S, [S.gens()[1]], name="L")
    spec = trivial_extension(S, L)
    text = format_document([spec.R], [], S.p)
    assert "y^2" in text and "x2*y" in text
    assert ring_depth_dim(spec.R) == (1, 2)
    assert spec.hilbert_identity()
    assert all(a == b == 1 for _, a, b in tor1_identity_check(spec, 5))


def test_trivial_extension_of_zero():
    S = ring("k[x1,x2]", "S")
    spec = trivial_extension(S, Module.free(S, []))
    assert spec.R.relations == () and spec.R.nvars == 2
    assert all(a == b == 0 for _, a, b in tor1_identity_check(spec, 3))


def test_trivial_extension_rejects_shifted_generators():
    S = ring("k[x]", "S")
    with pytest.raises(ValueError):
        trivial_extension(S, Module.free(S, [1]))


@pytest.mark.parametrize("p, q, degree", [(0, 2, 0), (1, 2, 1), (0, 1, 0), (1, 3, 1), (0, 3, 0)])
def test_noncm_examples(p, q, degree):
    R, S_mod, spec = noncm_example(p, q)
    assert ring_depth_dim(R) == (p + 1, q)
    assert depth_dim(S_mod) == (q, q)
    assert fit(tor_table(S_mod, "quotient", (1,), 8), 1).degree == degree
    cm_r = p + 1 == q
    sd, ld = depth_dim(spec.S.as_module()), depth_dim(spec.L)
    assert cm_r == (sd[0] == sd[1] and ld[0] == sd[1])
    # the printed form parses back to the same data
    doc = parse_input(format_document([R], [S_mod], R.p))
    assert [doc.module("S").dim(t) for t in range(5)] == [S_mod.dim(t) for t in range(5)]


def test_noncm_constraints():
    with pytest.raises(ValueError):
        noncm_example(2, 2)
    with pytest.raises(ValueError):
        noncm_example(-1, 2)


@pytest.mark.parametrize("spec, e, dd", [("k[x,y]", "x^2", (1, 1)), ("k[x]", "x^3", (0, 0)),
                                         ("k[x,y]", "x^2 + y^2", (1, 1))])
def test_hypersurfaces(spec, e, dd):
    P = ring(spec)
    R = hypersurface(poly(P, e))
    assert ring_multiplicity(R) == poly(P, e).degree()
    assert ring_depth_dim(R) == dd


def test_hypersurface_errors():
    P = ring("k[x,y]")
    with pytest.raises(ValueError):
        hypersurface(poly(P, "x"))
    with pytest.raises(ValueError):
        hypersurface(P.P.zero())


def test_hypersurface_betti_of_k_eventually_constant():
    R = hypersurface(poly(ring("k[x,y]"), "x^2 + x*y"))
    F = minimal_resolution(Module.residue_field(R), 6)
    b = [F.rank(i) for i in range(7)]
    assert b[2:] == [b[2]] * 5


def test_residue_sum():
    R = ring("k[x] / (x^3)")
    M = residue_sum(R, 3)
    assert M.length() == 3 and M.power_is_zero(1)
