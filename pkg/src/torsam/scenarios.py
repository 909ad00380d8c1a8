"""Named verification scenarios; each produces records with a verdict per checked claim."""

import json
import dataclasses
from dataclasses import asdict, dataclass

import numpy as np

from .constructions import noncm_example, residue_sum, tor1_identity_check, trivial_extension
from .corpus import fuzz_corpus
from .fitter import fit, fit_values
from .grammar import format_document, parse_input
from .homology import (Inconclusive, _is_free, ext_bass, injdim_finite, power_tor_vanishes,
                       tor_length, tor_table, tor_vanishes)
from .invariants import (UNSUPPORTED, avramov_index, find_superficial, is_superficial,
                         levin_index, polyreg, rho)
from .module import Module
from .poly import default_characteristic
from .resolution import (depth_dim, projdim_finite, resolution_of, ring_depth_dim,
                         ring_multiplicity)
from .ring import GradedRing

HOLDS, FAILS, VACUOUS, INCONCLUSIVE = "holds", "fails", "vacuous", "inconclusive"
VERDICTS = (HOLDS, FAILS, VACUOUS, INCONCLUSIVE)
FUZZ_NOTE = "suspected artifact bug: the statement is a theorem"


@dataclass
class ScenarioConfig:
    scenario: str
    input: str = None
    n_max: int = None
    i_max: int = None
    s_max: int = None
    trials: int = None
    seed: int = 0
    field: int = None
    params: dict = dataclasses.field(default_factory=dict)

    def to_json(self):
        return asdict(self)


class VerificationReport:
    def __init__(self, scenario, config, records, extra=None):
        self.scenario = scenario
        self.config = config
        self.records = records
        self.extra = dict(extra or {})

    def counts(self):
        out = {v: 0 for v in VERDICTS}
        for r in self.records:
            out[r["verdict"]] += 1
        out["total"] = len(self.records)
        return out

    @property
    def exit_code(self):
        c = self.counts()
        if c[FAILS]:
            return 1
        if c[INCONCLUSIVE]:
            return 2
        return 0

    def to_json(self):
        summary = self.counts()
        summary.update(self.extra)
        return {"scenario": self.scenario, "config": self.config.to_json(),
                "records": self.records, "summary": summary}

    def dumps(self):
        return canonical_json(self.to_json())


def canonical_json(obj):
    return json.dumps(obj, sort_keys=True, indent=1, ensure_ascii=False) + "\n"


def record(claim, anchor, verdict, values=None, bounds=None, instance=None, note=None):
    out = {"claim": claim, "anchor": anchor, "verdict": verdict, "values": values or {},
           "bounds": bounds or {}}
    if instance is not None:
        out["instance"] = instance
    if note:
        out["note"] = note
    return out


def _text(R, *mods):
    return format_document([R], list(mods), R.p)


def _instance(R, mods, idx=None, **extra):
    out = {"input": _text(R, *mods)}
    if idx is not None:
        out["id"] = idx
    out.update(extra)
    return out


def _verdict(ok):
    return HOLDS if ok else FAILS


def _pd(M):
    fin, pd = projdim_finite(M)
    return pd if fin else "inf"


def _pd_at_least(M, i):
    fin, pd = projdim_finite(M)
    return (not fin) or pd >= i


def _pd_at_most(M, i):
    fin, pd = projdim_finite(M)
    return fin and pd <= i


def _field(cfg):
    return cfg.field if cfg.field is not None else default_characteristic()


def _from_input(cfg):
    doc = parse_input(cfg.input, cfg.field)
    R = doc.ring()
    mods = [m for m in doc.modules.values() if m.ring is R]
    if not mods:
        mods = [R.as_module()]
    return R, mods


def _ideal_module(R, gens, name="I"):
    """The ideal generated by linear forms gens, as a module generated in degree 1."""
    P = R.P
    r = len(gens)
    # Koszul-type relations suffice for regular sequences of variables
    cols = []
    for a in range(r):
        for b in range(a + 1, r):
            v = [P.zero()] * r
            v[a] = gens[b]
            v[b] = -gens[a]
            cols.append(tuple(v))
    return Module(R, [1] * r, cols, name=name)


# --- suites -------------------------------------------------------------------

def constructed_suite(p):
    """Small rings and modules used by the chain and detection scenarios."""
    out = []
    R = GradedRing(["x", "y"], (), p, name="R")
    x, y = R.gens()
    out += [("regular-2", R, R.as_module()), ("regular-2", R, Module.residue_field(R)),
            ("regular-2", R, _ideal_module(R, [x, y], "m")),
            ("regular-2", R, Module.cyclic(R, [x * x], name="R/(x^2)"))]
    R = GradedRing(["x", "y"], [GradedRing(["x", "y"], (), p).P.var(0) ** 2], p, name="R")
    x, y = R.gens()
    out += [("x2", R, R.as_module()), ("x2", R, Module.cyclic(R, [x], name="R/(x)")),
            ("x2", R, Module.residue_field(R))]
    P1 = GradedRing(["x"], (), p).P
    R = GradedRing(["x"], [P1.var(0) ** 2], p, name="R")
    out += [("dual-numbers", R, Module.cyclic(R, [], name="R")),
            ("dual-numbers", R, Module.cyclic(R, R.gens(), name="m", degree=1))]
    P3 = GradedRing(["x", "y", "z"], (), p).P
    R = GradedRing(["x", "y", "z"], [P3.var(0) * P3.var(1)], p, name="R")
    out += [("xy", R, Module.cyclic(R, [R.gens()[0]], name="R/(x)"))]
    R, S_mod, _ = noncm_example(0, 2, p)
    out += [("noncm-0-2", R, S_mod)]
    P2 = GradedRing(["x", "y"], (), p).P
    R = GradedRing(["x", "y"], [P2.var(0) ** 2 + P2.var(0) * P2.var(1)], p, name="R")
    out += [("x2+xy", R, R.as_module()), ("x2+xy", R, Module.residue_field(R))]
    R = GradedRing(["x"], [P1.var(0) ** 3], p, name="R")
    out += [("x3", R, Module.residue_field(R))]
    return out


def _cm_suite(p):
    R1 = GradedRing(["x", "y"], (), p, name="R")
    P2 = R1.P
    R2 = GradedRing(["x", "y"], [P2.var(0) ** 2], p, name="R")
    P3 = GradedRing(["x", "y", "z"], (), p).P
    R3 = GradedRing(["x", "y", "z"], [P3.var(0) * P3.var(1)], p, name="R")
    return [(R1, Module.residue_field(R1), (1,)),
            (R2, Module.cyclic(R2, [R2.gens()[0]], name="R/(x)"), (1,)),
            (R3, Module.cyclic(R3, [R3.gens()[0]], name="R/(x)"), (1, 2))]


# --- scenarios ----------------------------------------------------------------

def _growth_case(R, M, i, n_max, cm_only):
    depth, dim = ring_depth_dim(R)
    inst = _instance(R, [M], i=i)
    bounds = {"n_max": n_max}
    if cm_only:
        claim = "deg P^i = dim R - 1 for CM R with dim R >= 1 and projdim M >= i"
        anchor = "cm-growth"
        if depth != dim or dim < 1 or not _pd_at_least(M, i):
            return [record(claim, anchor, VACUOUS, {"depth_R": depth, "dim_R": dim, "projdim_M": _pd(M)},
                           bounds, inst)]
    else:
        claim = "dim R - 1 >= deg P^i >= depth R - 1 and Tor_i(M, R/m^{n+1}) != 0 when projdim M >= i"
        anchor = "tor-growth-bounds"
        if depth < 1:
            return [record(claim, anchor, VACUOUS, {"depth_R": depth}, bounds, inst)]
    table = tor_table(M, "quotient", (i,), n_max)
    row = table.row(i)
    vals = {"depth_R": depth, "dim_R": dim, "projdim_M": _pd(M), "table": row}
    try:
        fp = fit(table, i)
    except Inconclusive as e:
        vals["error"] = str(e)
        return [record(claim, anchor, INCONCLUSIVE, vals, bounds, inst)]
    vals["fit"] = fp.to_json()
    vals["degree"] = fp.degree
    if cm_only:
        ok = fp.degree == dim - 1
    else:
        ok = fp.degree <= dim - 1
        if _pd_at_least(M, i):
            ok = ok and fp.degree >= depth - 1 and all(v != 0 for v in row)
    return [record(claim, anchor, _verdict(ok), vals, bounds, inst)]


def scenario_cmgrowth(cfg):
    n_max = cfg.n_max or 8
    if cfg.input:
        R, mods = _from_input(cfg)
        i_set = cfg.params.get("i", [1])
        cases = [(R, M, tuple(i_set)) for M in mods]
    else:
        cases = _cm_suite(_field(cfg))
    recs = []
    for R, M, i_set in cases:
        for i in i_set:
            recs += _growth_case(R, M, i, n_max, True)
    return recs, {}


def scenario_igrowth(cfg):
    n_max = cfg.n_max or 8
    p = _field(cfg)
    if cfg.input:
        R, mods = _from_input(cfg)
        cases = [(R, M, tuple(cfg.params.get("i", [1]))) for M in mods]
    else:
        cases = _cm_suite(p)
        for pq in ((0, 2), (1, 3), (0, 3)):
            R, S_mod, _ = noncm_example(*pq, field=p)
            cases.append((R, S_mod, (1,)))
        for inst in fuzz_corpus(cfg.seed, cfg.trials, field=p) if cfg.trials else []:
            cases.append((inst.ring, inst.M, (1,)))
    recs = []
    for R, M, i_set in cases:
        for i in i_set:
            recs += _growth_case(R, M, i, n_max, False)
    return recs, {}


def scenario_noncm(cfg):
    n_max = cfg.n_max or 8
    pairs = [tuple(cfg.params["pq"])] if "pq" in cfg.params else [(0, 2), (1, 3), (0, 3)]
    recs = []
    for pp, q in pairs:
        R, S_mod, spec = noncm_example(pp, q, _field(cfg))
        depth, dim = ring_depth_dim(R)
        mdepth, mdim = depth_dim(S_mod)
        inst = _instance(R, [S_mod], p=pp, q=q)
        table = tor_table(S_mod, "quotient", (1,), n_max)
        vals = {"p": pp, "q": q, "depth_R": depth, "dim_R": dim, "depth_M": mdepth, "dim_M": mdim,
                "table": table.row(1)}
        try:
            fp = fit(table, 1)
            vals["degree"] = fp.degree
            vals["fit"] = fp.to_json()
            ok = depth == pp + 1 and dim == q and mdepth == dim and fp.degree == pp
            verdict = _verdict(ok)
        except Inconclusive as e:
            vals["error"] = str(e)
            verdict = INCONCLUSIVE
        recs.append(record("depth R = p+1, dim R = q, M MCM and deg P^1 = p", "non-cm-degree",
                           verdict, vals, {"n_max": n_max}, inst))
        hs = spec.hilbert_identity()
        recs.append(record("Hilb_R = Hilb_S + z Hilb_L", "trivial-extension-hilbert", _verdict(hs),
                           {"p": pp, "q": q}, {}, inst))
        sd = depth_dim(spec.S.as_module())
        ld = depth_dim(spec.L)
        cm_r = depth == dim
        cm_pred = sd[0] == sd[1] and ld[0] == sd[1]
        recs.append(record("R is CM iff S is CM and L is MCM over S", "trivial-extension-cm",
                           _verdict(cm_r == cm_pred),
                           {"R_cm": cm_r, "S_depth_dim": list(sd), "L_depth_dim": list(ld)}, {}, inst))
        recs.append(record("depth_R S = depth S and dim_R S = dim S", "trivial-extension-structural",
                           _verdict((mdepth, mdim) == sd), {"over_R": [mdepth, mdim], "over_S": list(sd)},
                           {}, inst))
    return recs, {}


def _trivext_suite(p):
    S2 = GradedRing(["x1", "x2"], (), p, name="S")
    S3 = GradedRing(["x1", "x2", "x3"], (), p, name="S")
    return [(S2, Module.cyclic(S2, [S2.gens()[1]], name="L")),
            (S2, Module.free(S2, [0], name="L")),
            (S3, Module.cyclic(S3, [S3.gens()[1], S3.gens()[2]], name="L")),
            (S2, Module.residue_field(S2, name="L"))]


def scenario_trivext_identity(cfg):
    n_max = cfg.n_max if cfg.n_max is not None else 6
    recs = []
    for S, L in _trivext_suite(_field(cfg)):
        spec = trivial_extension(S, L)
        rows = tor1_identity_check(spec, n_max)
        ok = all(a == b for _, a, b in rows)
        inst = {"S": _text(S, L), "R": _text(spec.R, spec.S_module)}
        recs.append(record("l Tor_1^R(S, R/m^{n+1}) = rank n^n L / n^{n+1} L", "trivial-extension-tor",
                           _verdict(ok), {"rows": [list(r) for r in rows]}, {"n_max": n_max}, inst))
        recs.append(record("Hilb_R = Hilb_S + z Hilb_L", "trivial-extension-hilbert",
                           _verdict(spec.hilbert_identity()), {}, {}, inst))
    return recs, {}


def recursion_data(n_max, p):
    R = GradedRing(["x", "y", "z"], (), p, name="R")
    x, y, z = R.gens()
    M = Module.cyclic(R, [x], name="M")
    S = GradedRing(["x", "z"], (), p, name="S")
    N = Module.cyclic(S, [S.gens()[0]], name="N")
    PR = tor_table(M, "quotient", (1,), n_max).row(1)
    PS = tor_table(N, "quotient", (1,), n_max).row(1)
    return R, M, y, S, N, PR, PS


def scenario_recursion(cfg):
    n_max = cfg.n_max or 8
    p = _field(cfg)
    R, M, y, S, N, PR, PS = recursion_data(n_max, p)
    from math import comb
    inst = {"R": _text(R, M), "S": _text(S, N), "superficial": "y"}
    recs = []
    om = resolution_of(M).syzygy_module(1)
    sup = {name: is_superficial(y, T, n_max)[0] for name, T in
           (("R", R.as_module()), ("M", M), ("Omega1M", om))}
    recs.append(record("y is superficial on R, M and Omega^1 M", "recursion-hypothesis",
                       _verdict(all(sup.values())), sup, {"n_max": n_max}, inst))
    hand_r = [comb(n + 2, 2) for n in range(n_max + 1)]
    hand_s = [n + 1 for n in range(n_max + 1)]
    recs.append(record("P^1_{R,M}(n) = C(n+2,2) and P^1_{S,N}(n) = n+1", "recursion-hand-values",
                       _verdict(PR == hand_r and PS == hand_s), {"P_R": PR, "P_S": PS},
                       {"n_max": n_max}, inst))
    fr, fs = fit_values(PR), fit_values(PS)
    lo = max(fr.n0, fs.n0, 0) + 1
    window = list(range(lo, n_max + 1))
    literal = [[n, PR[n], PR[n - 1] + PS[n - 1]] for n in window]
    shifted = [[n, PR[n], PR[n - 1] + PS[n]] for n in window]
    recs.append(record("P^1_{R,M}(n) = P^1_{R,M}(n-1) + P^1_{S,N}(n-1)", "recursion-as-stated",
                       _verdict(all(a == b for _, a, b in literal)), {"rows": literal},
                       {"n_max": n_max, "window": [lo, n_max]}, inst,
                       note="the index-(n) form below is what the length count yields"))
    recs.append(record("P^1_{R,M}(n) = P^1_{R,M}(n-1) + P^1_{S,N}(n)", "recursion-length-count",
                       _verdict(all(a == b for _, a, b in shifted)), {"rows": shifted},
                       {"n_max": n_max, "window": [lo, n_max]}, inst))
    return recs, {}


# --- fuzz scenarios -----------------------------------------------------------

def _fuzz(cfg, default_trials=200):
    trials = cfg.trials if cfg.trials is not None else default_trials
    return fuzz_corpus(cfg.seed, trials, field=_field(cfg)) if trials else []


def _trigger(recs):
    live = sum(r["verdict"] != VACUOUS for r in recs)
    total = len(recs)
    return {"triggered": live, "trigger_rate": round(live / total, 4) if total else 0.0}


def scenario_minor_lemma(cfg):
    n_max = cfg.n_max if cfg.n_max is not None else 2
    recs = []
    for inst in _fuzz(cfg):
        R, M = inst.ring, inst.M
        k = R.as_module()
        vanish = [n for n in range(n_max + 1) if tor_length(M, k.truncation(n), 1) == 0]
        claim = "Tor_1(M, R/m^{n+1}) = 0 implies m^n Omega^1 M = 0, and M free or depth R = 0"
        meta = _instance(R, [M], inst.idx)
        if not vanish:
            recs.append(record(claim, "minor-lemma", VACUOUS, {}, {"n_max": n_max}, meta))
            continue
        om = resolution_of(M).syzygy_module(1)
        depth = ring_depth_dim(R)[0]
        free = _is_free(M)
        killed = {n: om.power_is_zero(n) for n in vanish}
        ok = all(killed.values()) and (free or depth == 0)
        vals = {"vanishing_n": vanish, "m^n_syz_zero": [killed[n] for n in vanish], "free": free,
                "depth_R": depth}
        if not ok:
            meta["n"] = [n for n in vanish if not killed[n]][:1] or vanish[:1]
            meta["i"] = 1
        recs.append(record(claim, "minor-lemma", _verdict(ok), vals, {"n_max": n_max}, meta,
                           None if ok else FUZZ_NOTE))
    return recs, _trigger(recs)


def scenario_intheorem(cfg):
    n_max = cfg.n_max if cfg.n_max is not None else 2
    i_max = cfg.i_max if cfg.i_max is not None else 2
    bounds = {"n_max": n_max, "i_max": i_max}
    recs = []
    for inst in _fuzz(cfg):
        R, M, N = inst.ring, inst.M, inst.N
        meta = _instance(R, [M, N], inst.idx)
        depth_N = depth_dim(N)[0]
        hits1, hits2, bad1, bad2 = [], [], [], []
        for i in range(1, i_max + 1):
            omN = None
            for n in range(n_max + 1):
                if tor_length(M, N.truncation(n), i) != 0:
                    continue
                if tor_vanishes(M, N, i):
                    hits1.append([i, n])
                    if omN is None:
                        omN = resolution_of(M).syzygy_module(i).tensor(N)
                    if not (omN.power_is_zero(n) and (depth_N == 0 or _pd_at_most(M, i - 1))):
                        bad1.append([i, n])
                if power_tor_vanishes(M, N, i, n):
                    hits2.append([i, n])
                    if not (N.power_is_zero(n + 1) or _pd_at_most(M, i - 1)):
                        bad2.append([i, n])
        for claim, anchor, hits, bad in (
                ("Tor_i(M,N) = 0 = Tor_i(M, N/m^{n+1}N) implies m^n(Omega^i M ⊗ N) = 0 and "
                 "(depth N = 0 or projdim M <= i-1)", "vanishing-pair", hits1, bad1),
                ("Tor_i(M, N/m^{n+1}N) = 0 = Tor_i(M, m^{n+1}N) implies m^{n+1}N = 0 or "
                 "projdim M <= i-1", "vanishing-pair-power", hits2, bad2)):
            verdict = FAILS if bad else (HOLDS if hits else VACUOUS)
            m = dict(meta)
            if bad:
                m["i"], m["n"] = bad[0]
            recs.append(record(claim, anchor, verdict, {"triggered": hits, "failed": bad,
                                                        "depth_N": depth_N, "projdim_M": _pd(M)},
                               bounds, m, FUZZ_NOTE if bad else None))
    return recs, _trigger(recs)


def scenario_lv(cfg):
    """Conclusion checked: m^{n+1}N = 0 or projdim M <= i.

    The sharper bound projdim M <= i - 1 fails already for M = k, N = R = k[x],
    i = 1 (m N is free); its status is reported per instance but not judged.
    """
    n_max = cfg.n_max if cfg.n_max is not None else 2
    i_max = cfg.i_max if cfg.i_max is not None else 2
    bounds = {"n_max": n_max, "i_max": i_max}
    recs = []
    sharp_violations = 0
    for inst in _fuzz(cfg):
        R, M, N = inst.ring, inst.M, inst.N
        meta = _instance(R, [M, N], inst.idx)
        hits, bad, sharp_bad = [], [], []
        for n in range(n_max + 1):
            van = {i: power_tor_vanishes(M, N, i, n) for i in range(0, i_max + 2)}
            for i in range(0, i_max + 1):
                if van[i] and van[i + 1]:
                    hits.append([i, n])
                    killed = N.power_is_zero(n + 1)
                    if not (killed or _pd_at_most(M, i)):
                        bad.append([i, n])
                    if not (killed or (i >= 1 and _pd_at_most(M, i - 1))):
                        sharp_bad.append([i, n])
        sharp_violations += bool(sharp_bad)
        verdict = FAILS if bad else (HOLDS if hits else VACUOUS)
        if bad:
            meta["i"], meta["n"] = bad[0]
        recs.append(record("Tor_i(M, m^{n+1}N) = 0 = Tor_{i+1}(M, m^{n+1}N) implies m^{n+1}N = 0 or "
                           "projdim M <= i", "power-vanishing-pair", verdict,
                           {"triggered": hits, "failed": bad, "projdim_M": _pd(M),
                            "bound_i_minus_1_fails_at": sharp_bad}, bounds, meta,
                           FUZZ_NOTE if bad else None))
    extra = _trigger(recs)
    extra["bound_i_minus_1_violations"] = sharp_violations
    return recs, extra


def _extension_by_k(M, rng):
    """(E, note): 0 -> L -> E -> M -> 0 with L = k(-d) or 0, so l(L) is finite."""
    Mm = M.minimal()
    R = M.ring
    P = R.P
    if not Mm.columns:
        return Mm.direct_sum(Module.residue_field(R)), "split"
    d = Mm.col_degrees[0]
    cols = []
    for col, cd in zip(Mm.columns, Mm.col_degrees):
        c = P.const(int(rng.integers(1, R.p))) if cd == d else P.zero()
        cols.append(tuple(col) + (c,))
    for x in R.gens():
        cols.append((P.zero(),) * Mm.rank + (x,))
    return Module(R, Mm.degrees + (d,), cols, name="E"), f"glued in degree {d}"


def scenario_hs_properties(cfg):
    n_max = cfg.n_max if cfg.n_max is not None else 8
    bounds = {"n_max": n_max}
    recs = []
    for inst in _fuzz(cfg):
        R, M, N = inst.ring, inst.M, inst.N
        depth, dim = ring_depth_dim(R)
        rng = np.random.default_rng([cfg.seed, inst.idx, 7])

        def row(X, i=1):
            return tor_table(X, "quotient", (i,), n_max).row(i)

        def deg(values):
            return fit_values(values).degree

        base = _instance(R, [M, N], inst.idx)
        rM, rN = row(M), row(N)
        S = M.direct_sum(N)
        rS = row(S)
        try:
            ok = rS == [a + b for a, b in zip(rM, rN)] and deg(rS) == max(deg(rM), deg(rN))
            v = _verdict(ok)
        except Inconclusive:
            v = INCONCLUSIVE
        recs.append(record("P^1(M ⊕ N) = P^1(M) + P^1(N)", "hs-additivity", v,
                           {"M": rM, "N": rN, "sum": rS}, bounds, base))
        # (2) depth R >= 1 and M not free
        if depth >= 1 and not _is_free(M):
            try:
                d = deg(rM)
                v = _verdict(d >= 0)
            except Inconclusive:
                d, v = None, INCONCLUSIVE
            recs.append(record("depth R >= 1 and M not free implies deg P^1(M) >= 0", "hs-nonzero",
                               v, {"degree": d, "table": rM}, bounds, base))
        else:
            recs.append(record("depth R >= 1 and M not free implies deg P^1(M) >= 0", "hs-nonzero",
                               VACUOUS, {"depth_R": depth}, bounds, base))
        # (3) finite-length kernel
        E, how = _extension_by_k(M, rng)
        rE = row(E)
        try:
            dE, dM = deg(rE), deg(rM)
            v = _verdict(dE >= dM)
        except Inconclusive:
            dE = dM = None
            v = INCONCLUSIVE
        recs.append(record("0 -> L -> E -> M -> 0 with l(L) finite implies deg P^1(E) >= deg P^1(M)",
                           "hs-monotone", v, {"E": rE, "M": rM, "deg_E": dE, "deg_M": dM,
                                              "extension": how},
                           bounds, _instance(R, [E, M.minimal()], inst.idx)))
        # (4) finite length module
        T = M.truncation(1).explicit()
        T.name = "T"
        if depth >= 1:
            rT = row(T)
            try:
                dT = deg(rT)
                v = _verdict(dT == dim - 1)
            except Inconclusive:
                dT, v = None, INCONCLUSIVE
            recs.append(record("l(M) finite implies deg P^1(M) = dim R - 1", "hs-finite-length", v,
                               {"degree": dT, "dim_R": dim, "table": rT}, bounds,
                               _instance(R, [T], inst.idx)))
        else:
            recs.append(record("l(M) finite implies deg P^1(M) = dim R - 1", "hs-finite-length",
                               VACUOUS, {"depth_R": depth}, bounds, _instance(R, [T], inst.idx)))
        # shift identity
        om = resolution_of(M).syzygy_module(1)
        r2, r1 = row(M, 2), row(om, 1)
        recs.append(record("P^2(M) = P^1(Omega^1 M)", "hs-shift", _verdict(r2 == r1),
                           {"P2_M": r2, "P1_syz": r1}, bounds, base))
    return recs, _trigger(recs)


def scenario_testmodule(cfg):
    n_max = cfg.n_max if cfg.n_max is not None else 2
    i_extra = cfg.i_max if cfg.i_max is not None else 2
    recs = []
    for inst in _fuzz(cfg):
        R, N = inst.ring, inst.N
        depth = ring_depth_dim(R)[0]
        i_max = depth + i_extra
        bounds = {"n_max": n_max, "i_max": i_max}
        witness = None
        for n in range(n_max + 1):
            if not N.power_is_zero(n + 1) and projdim_finite(N.truncation(n).explicit())[0]:
                witness = n
                break
        for M in (inst.M, Module.residue_field(R, name="k")):
            claim = "projdim M = inf implies Tor_i(M, N) != 0 for depth R + 1 <= i"
            meta = _instance(R, [M, N], inst.idx)
            if witness is None or projdim_finite(M)[0]:
                recs.append(record(claim, "test-module", VACUOUS, {"witness_n": witness}, bounds, meta))
                continue
            zero = [i for i in range(depth + 1, i_max + 1) if tor_vanishes(M, N, i)]
            if zero:
                meta["i"], meta["n"] = zero[0], witness
            recs.append(record(claim, "test-module", _verdict(not zero),
                               {"witness_n": witness, "vanishing_i": zero}, bounds, meta,
                               FUZZ_NOTE if zero else None))
    return recs, _trigger(recs)


# --- invariant chains -----------------------------------------------------------

def _suite_modules(cfg):
    if cfg.input:
        R, mods = _from_input(cfg)
        return [("input", R, M) for M in mods]
    out = constructed_suite(_field(cfg))
    for inst in _fuzz(cfg, 0):
        out.append((f"corpus-{inst.idx}", inst.ring, inst.M))
    return out


def scenario_avind_chain(cfg):
    n_max = cfg.n_max if cfg.n_max is not None else 8
    s_max = cfg.s_max if cfg.s_max is not None else 8
    recs = []
    for label, R, M in _suite_modules(cfg):
        i_max = cfg.i_max if cfg.i_max is not None else ring_depth_dim(R)[0] + 4
        bounds = {"n_max": n_max, "i_max": i_max, "s_max": s_max}
        meta = _instance(R, [M], label=label)
        claim = "A(N) <= L(N) - 1 <= polyreg(N)"
        pr = polyreg(M)
        if pr == UNSUPPORTED:
            recs.append(record(claim, "avramov-levin-chain", VACUOUS, {"polyreg": pr}, bounds, meta))
            continue
        try:
            a = avramov_index(M, i_max, n_max)
            lv = levin_index(M, i_max, s_max)
        except Inconclusive as e:
            recs.append(record(claim, "avramov-levin-chain", INCONCLUSIVE, {"error": str(e)}, bounds, meta))
            continue
        ok = a <= lv - 1 <= pr
        recs.append(record(claim, "avramov-levin-chain", _verdict(ok),
                           {"avramov": a, "levin": lv, "polyreg": pr}, bounds, meta))
    return recs, {}


def scenario_rho_polyreg(cfg):
    n_max = cfg.n_max if cfg.n_max is not None else 8
    trials = cfg.params.get("superficial_trials", 20)
    recs = []
    for label, R, M in _suite_modules(cfg):
        bounds = {"n_max": n_max, "trials": trials}
        meta = _instance(R, [M], label=label)
        claim = "rho(x, M) <= polyreg(M) + 1 for x superficial and depth M >= 1"
        pr = polyreg(M)
        depth = depth_dim(M)[0]
        if pr == UNSUPPORTED or depth < 1:
            recs.append(record(claim, "rho-polyreg", VACUOUS, {"polyreg": pr, "depth_M": depth}, bounds, meta))
            continue
        try:
            x = find_superficial([M], trials, cfg.seed, n_max)
            r = rho(x, M, n_max)
        except Inconclusive as e:
            recs.append(record(claim, "rho-polyreg", INCONCLUSIVE, {"error": str(e)}, bounds, meta))
            continue
        recs.append(record(claim, "rho-polyreg", _verdict(r <= pr + 1),
                           {"x": str(x), "rho": r, "polyreg": pr, "depth_M": depth}, bounds, meta))
    return recs, {}


def scenario_regularity_detect(cfg):
    n_max = cfg.n_max if cfg.n_max is not None else 3
    recs = []
    for label, R, N in _suite_modules(cfg):
        depth, dim = ring_depth_dim(R)
        i_max = cfg.i_max if cfg.i_max is not None else depth + 4
        window = max(n_max, 6)
        bounds = {"n_max": n_max, "i_max": i_max, "window": window}
        meta = _instance(R, [N], label=label)
        claim = ("depth N >= 1, injdim N/m^{n+1}N finite, n >= rho(N) imply embdim R - depth R <= 1; "
                 "n >= A(N) as well implies R regular")
        if depth_dim(N)[0] < 1:
            recs.append(record(claim, "regularity-detection", VACUOUS, {"depth_N": 0}, bounds, meta))
            continue
        rows, verdicts = [], []
        rho_n = a_n = None
        for n in range(n_max + 1):
            inj = injdim_finite(N.truncation(n).explicit())
            if not inj.finite:
                rows.append({"n": n, "injdim_finite": False})
                continue
            try:
                if rho_n is None:
                    x = find_superficial([N], 20, cfg.seed, window)
                    rho_n = rho(x, N, window)
                if a_n is None:
                    a_n = avramov_index(N, i_max, window)
            except Inconclusive as e:
                rows.append({"n": n, "error": str(e)})
                verdicts.append(INCONCLUSIVE)
                continue
            hyp = N.ring.nvars - depth <= 1
            reg = N.ring.nvars == dim
            row = {"n": n, "injdim_finite": True, "exact": inj.exact, "rho": rho_n, "avramov": a_n}
            ok = True
            if n >= rho_n:
                row["hypersurface"] = hyp
                ok = ok and hyp
            if n >= a_n:
                row["regular"] = reg
                ok = ok and reg
            rows.append(row)
            if ok:
                verdicts.append(HOLDS)
            else:
                verdicts.append(FAILS if inj.exact else INCONCLUSIVE)
        verdict = (FAILS if FAILS in verdicts else INCONCLUSIVE if INCONCLUSIVE in verdicts
                   else HOLDS if verdicts else VACUOUS)
        recs.append(record(claim, "regularity-detection", verdict,
                           {"rows": rows, "embdim": R.nvars, "depth_R": depth, "dim_R": dim}, bounds, meta))
    return recs, _trigger(recs)


def scenario_hypersurface_ding(cfg):
    p = _field(cfg)
    P2 = GradedRing(["x", "y"], (), p).P
    P1 = GradedRing(["x"], (), p).P
    rings = [GradedRing(["x", "y"], [P2.var(0) ** 2 + P2.var(0) * P2.var(1)], p, name="R"),
             GradedRing(["x"], [P1.var(0) ** 3], p, name="R")]
    r_max = cfg.params.get("r_max", 3)
    recs = []
    for R in rings:
        e = ring_multiplicity(R)
        depth = ring_depth_dim(R)[0]
        i_max = cfg.i_max if cfg.i_max is not None else depth + 4
        for r in range(1, r_max + 1):
            M = residue_sum(R, r)
            meta = _instance(R, [M], r=r)
            bounds = {"i_max": i_max}
            if not M.power_is_zero(e - 1):
                recs.append(record("m^{e-1} M = 0 implies projdim M = inf = injdim M", "hypersurface-infinite",
                                   VACUOUS, {"e": e}, bounds, meta))
                continue
            fin_pd = projdim_finite(M)[0]
            inj = injdim_finite(M)
            F = resolution_of(M)
            betti = [F.rank(i) for i in range(i_max + 1)]
            bass = [ext_bass(M, i) for i in range(i_max + 1)]
            ok = (not fin_pd) and (not inj.finite) and all(betti) and all(bass)
            recs.append(record("m^{e-1} M = 0 implies projdim M = inf = injdim M", "hypersurface-infinite",
                               _verdict(ok), {"e": e, "projdim_finite": fin_pd, "injdim": inj.to_json(),
                                              "betti": betti, "bass": bass}, bounds, meta))
    return recs, {}


def scenario_mprimary(cfg):
    n_max = cfg.n_max if cfg.n_max is not None else 8
    p = _field(cfg)
    P = GradedRing(["x", "y"], (), p).P
    R = GradedRing(["x", "y"], [P.var(0) ** 2], p, name="R")
    x, y = R.gens()
    M = Module.cyclic(R, [x], name="M")
    meta = _instance(R, [M], ideal="(y)")
    t_i = tor_table(M, "quotient", (1,), n_max, ideal=[y]).row(1)
    recs = [record("l Tor_1(M, R/I^{n+1}) = 0 for I = (y)", "m-primary-vanishing",
                   _verdict(all(v == 0 for v in t_i)), {"table": t_i}, {"n_max": n_max}, meta)]
    t_m = tor_table(M, "quotient", (1,), n_max).row(1)
    dim = ring_depth_dim(R)[1]
    try:
        fp = fit_values(t_m)
        ok = fp.degree == dim - 1 and all(v == 1 for v in t_m)
        recs.append(record("against I = m the degree is dim R - 1 with constant value 1", "m-primary-contrast",
                           _verdict(ok), {"table": t_m, "fit": fp.to_json(), "degree": fp.degree},
                           {"n_max": n_max}, meta))
    except Inconclusive as e:
        recs.append(record("against I = m the degree is dim R - 1 with constant value 1", "m-primary-contrast",
                           INCONCLUSIVE, {"table": t_m, "error": str(e)}, {"n_max": n_max}, meta))
    return recs, {}


def scenario_closing_question(cfg):
    n_max = cfg.n_max if cfg.n_max is not None else 4
    window = max(n_max, 6)
    p = _field(cfg)
    cases = []
    for label, R, M in constructed_suite(p):
        if R.nvars - ring_depth_dim(R)[0] == 1 and len(R.relations) == 1:
            cases.append((label, R, M))
    trials = cfg.trials if cfg.trials is not None else 20
    for inst in (fuzz_corpus(cfg.seed, trials, shapes=("hypersurface",), field=p) if trials else []):
        cases.append((f"corpus-{inst.idx}", inst.ring, inst.M))
    recs = []
    for label, R, N in cases:
        depth = ring_depth_dim(R)[0]
        i_max = cfg.i_max if cfg.i_max is not None else depth + 4
        meta = _instance(R, [N], label=label)
        bounds = {"n_max": n_max, "i_max": i_max, "window": window}
        claim = "n outside [e-1, d-1] implies projdim = inf = injdim for N/m^{n+1}N"
        if depth_dim(N)[0] < 1:
            recs.append(record(claim, "singular-hypersurface", VACUOUS, {"depth_N": 0}, bounds, meta))
            continue
        e = ring_multiplicity(R)
        try:
            x = find_superficial([N], 20, cfg.seed, window)
            d = max(rho(x, N, window), avramov_index(N, i_max, window))
        except Inconclusive as exc:
            recs.append(record(claim, "singular-hypersurface", INCONCLUSIVE, {"error": str(exc)}, bounds, meta))
            continue
        rows, bad, open_rows = [], [], []
        for n in range(n_max + 1):
            Q = N.truncation(n).explicit()
            pd_inf = not projdim_finite(Q)[0]
            inj = injdim_finite(Q)
            inside = e - 1 <= n <= d - 1
            rows.append({"n": n, "in_window": inside, "projdim_inf": pd_inf, "injdim_inf": not inj.finite})
            if inside:
                open_rows.append(n)
            elif not (pd_inf and not inj.finite):
                bad.append(n)
        verdict = FAILS if bad else HOLDS
        recs.append(record(claim, "singular-hypersurface", verdict,
                           {"e": e, "d": d, "rows": rows, "open_window_n": open_rows}, bounds, meta,
                           FUZZ_NOTE if bad else ("outcomes inside [e-1, d-1] are recorded only"
                                                  if open_rows else None)))
    return recs, {}


SCENARIOS = {
    "cmgrowth": scenario_cmgrowth,
    "igrowth": scenario_igrowth,
    "noncm": scenario_noncm,
    "trivext-identity": scenario_trivext_identity,
    "recursion": scenario_recursion,
    "minor-lemma-fuzz": scenario_minor_lemma,
    "hs-properties": scenario_hs_properties,
    "intheorem-fuzz": scenario_intheorem,
    "lv-fuzz": scenario_lv,
    "testmodule": scenario_testmodule,
    "avind-chain": scenario_avind_chain,
    "rho-polyreg": scenario_rho_polyreg,
    "regularity-detect": scenario_regularity_detect,
    "hypersurface-ding": scenario_hypersurface_ding,
    "mprimary-vanishing": scenario_mprimary,
    "closing-question-fuzz": scenario_closing_question,
}


def run_scenario(cfg):
    if cfg.scenario not in SCENARIOS:
        raise KeyError(f"unknown scenario {cfg.scenario}; known: {', '.join(sorted(SCENARIOS))}")
    recs, extra = SCENARIOS[cfg.scenario](cfg)
    return VerificationReport(cfg.scenario, cfg, recs, extra)
