"""torsam command line: parse, resolve, tables, fits, constructions, scenarios, fuzzing."""

import argparse
import datetime
import json
import sys

from .constructions import hypersurface, noncm_example, trivial_extension
from .corpus import RING_SHAPES, fuzz_corpus
from .fitter import fit, fit_values
from .grammar import ParseError, format_document, parse_input, parse_poly
from .homology import Inconclusive, tor_table
from .invariants import invariant_report
from .poly import default_characteristic, is_prime
from .resolution import hilbert_data, minimal_resolution, ring_depth_dim
from .ring import GradedRing
from .scenarios import SCENARIOS, ScenarioConfig, canonical_json, run_scenario

EXIT_OK, EXIT_FAILED, EXIT_INCONCLUSIVE, EXIT_INPUT = 0, 1, 2, 3


class InputError(Exception):
    pass


def _int_list(text):
    return [int(a) for a in text.split(",") if a.strip()]


def _read(path):
    if path == "-":
        return sys.stdin.read()
    try:
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    except OSError as e:
        raise InputError(f"cannot read {path}: {e.strerror}") from None


def _doc(args):
    if not args.file:
        raise InputError("an input file is required")
    return parse_input(_read(args.file), args.field)


def _pick_module(doc, name):
    if not doc.modules:
        R = doc.ring()
        M = R.as_module()
        M.name = R.name
        return M
    if name is None:
        return doc.module()
    if name not in doc.modules:
        raise InputError(f"no module named {name}")
    return doc.modules[name]


def _emit(args, payload, text=None):
    """Write JSON (with a separate generated_at field) or plain text."""
    if args.format == "json" or text is None:
        obj = dict(payload)
        if not args.no_timestamp:
            obj["generated_at"] = datetime.datetime.now(datetime.timezone.utc).isoformat(timespec="seconds")
        out = canonical_json(obj)
    else:
        out = text if text.endswith("\n") else text + "\n"
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(out)
    else:
        sys.stdout.write(out)


# --- verbs ----------------------------------------------------------------------

def cmd_parse(args):
    doc = _doc(args)
    rings = list(doc.rings.values())
    mods = list(doc.modules.values())
    text = format_document(rings, mods, doc.field)
    payload = {"field": doc.field, "normalized": text,
               "rings": [{"name": R.name, "vars": list(R.names), "relations": [str(f) for f in R.relations]}
                         for R in rings],
               "modules": [{"name": M.name, "ring": M.ring.name, "degrees": list(M.degrees),
                            "relations": len(M.columns)} for M in mods]}
    _emit(args, payload, text)
    return EXIT_OK


def cmd_resolve(args):
    doc = _doc(args)
    M = _pick_module(doc, args.module)
    i_max = args.i_max if args.i_max is not None else ring_depth_dim(M.ring)[0] + 4
    F = minimal_resolution(M, i_max)
    hs = hilbert_data(M)
    payload = {"module": M.name, "resolution": F.to_json(i_max), "hilbert_series": hs.to_json()}
    lines = [f"{M.name}: betti numbers up to i = {i_max}"]
    lines += [f"  i={i}  " + " ".join(f"R(-{d})^{F.degrees(i).count(d)}" for d in sorted(set(F.degrees(i))))
              for i in range(i_max + 1)]
    _emit(args, payload, "\n".join(lines))
    return EXIT_OK


def cmd_invariants(args):
    doc = _doc(args)
    M = _pick_module(doc, args.module)
    rep = invariant_report(M, args.n_max, args.i_max, args.s_max, seed=args.seed)
    payload = {"module": M.name, "input": format_document([M.ring], [M], M.ring.p), "report": rep}
    _emit(args, payload)
    return EXIT_OK


def _table(args, doc):
    M = _pick_module(doc, args.module)
    i_set = _int_list(args.i) if args.i else [1]
    n_max = args.n_max if args.n_max is not None else 8
    ideal = None
    if args.ideal:
        ideal = [parse_poly(s.strip(), M.ring.P) for s in args.ideal.split(",")]
    N = None
    if args.family != "quotient":
        N = _pick_module(doc, args.partner) if args.partner else M.ring.as_module()
    return tor_table(M, args.family, i_set, n_max, N=N, ideal=ideal), i_set


def cmd_tor_table(args):
    doc = _doc(args)
    table, _ = _table(args, doc)
    if args.format == "csv":
        _emit(args, {}, table.to_csv())
    else:
        _emit(args, {"table": table.to_json()})
    return EXIT_OK


def cmd_fit(args):
    if args.values:
        vals = _int_list(args.values)
        fp = fit_values(vals, args.n_start)
        _emit(args, {"values": vals, "n_start": args.n_start, "fit": fp.to_json()})
        return EXIT_OK
    doc = _doc(args)
    table, i_set = _table(args, doc)
    fits = {str(i): fit(table, i).to_json() for i in i_set}
    _emit(args, {"table": table.to_json(), "fits": fits})
    return EXIT_OK


def cmd_construct(args):
    p = args.field if args.field is not None else default_characteristic()
    if args.kind == "noncm":
        R, S_mod, spec = noncm_example(args.p, args.q, p)
        text = format_document([R], [S_mod, spec.L_module], p)
    elif args.kind == "hypersurface":
        if not args.form:
            raise InputError("--form is required")
        names = [v.strip() for v in (args.vars or "x,y").split(",")]
        P = GradedRing(names, (), p).P
        R = hypersurface(parse_poly(args.form, P), names)
        text = format_document([R], [], p)
    else:
        doc = _doc(args)
        S = doc.ring()
        L = _pick_module(doc, args.module)
        spec = trivial_extension(S, L)
        text = format_document([spec.R], [spec.S_module, spec.L_module], p)
    _emit(args, {"kind": args.kind, "input": text}, text)
    return EXIT_OK


def _config_from_args(args):
    if args.config:
        raw = json.loads(_read(args.config))
        cfg = raw.get("config", raw)
        return ScenarioConfig(**cfg)
    if args.scenario is None:
        raise InputError("a scenario id is required")
    text = _read(args.file) if args.file else None
    params = {}
    if args.p is not None or args.q is not None:
        if args.p is None or args.q is None:
            raise InputError("--p and --q go together")
        params["pq"] = [args.p, args.q]
    if args.i:
        params["i"] = _int_list(args.i)
    return ScenarioConfig(args.scenario, text, args.n_max, args.i_max, args.s_max, args.trials,
                          args.seed, args.field, params)


def cmd_verify(args):
    cfg = _config_from_args(args)
    if cfg.scenario not in SCENARIOS:
        raise InputError(f"unknown scenario {cfg.scenario}; known: {', '.join(sorted(SCENARIOS))}")
    if cfg.input:
        parse_input(cfg.input, cfg.field)
    rep = run_scenario(cfg)
    c = rep.counts()
    text = (f"{cfg.scenario}: " + ", ".join(f"{c[k]} {k}" for k in ("holds", "fails", "vacuous", "inconclusive"))
            + "".join(f"\n  {r['verdict']}: {r['claim']}" for r in rep.records if r["verdict"] in ("fails", "inconclusive")))
    _emit(args, rep.to_json(), text)
    return rep.exit_code


def cmd_fuzz(args):
    count = args.trials if args.trials is not None else 10
    shapes = args.shapes.split(",") if args.shapes else None
    if shapes and any(s not in RING_SHAPES for s in shapes):
        raise InputError(f"shapes must be among {', '.join(RING_SHAPES)}")
    corpus = fuzz_corpus(args.seed, count, shapes, field=args.field)
    payload = {"seed": args.seed, "count": count, "instances": [inst.to_json() for inst in corpus]}
    text = "\n".join(f"# instance {inst.idx} ({inst.shape}, {inst.kind})\n{inst.text()}" for inst in corpus)
    _emit(args, payload, text)
    return EXIT_OK


# --- parser -----------------------------------------------------------------------

def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--n-max", type=int)
    common.add_argument("--i-max", type=int)
    common.add_argument("--s-max", type=int)
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--trials", type=int)
    common.add_argument("--field", type=int, help="characteristic (default: TORSAM_FIELD or 32003)")
    common.add_argument("--out", help="write output here instead of stdout")
    common.add_argument("--format", choices=("json", "csv", "text"), default="json")
    common.add_argument("--no-timestamp", action="store_true", help="omit the generated_at field")

    ap = argparse.ArgumentParser(prog="torsam", description=__doc__)
    sub = ap.add_subparsers(dest="verb", required=True)

    def verb(name, fn, help_text, file_arg=True):
        sp = sub.add_parser(name, parents=[common], help=help_text)
        if file_arg:
            sp.add_argument("file", nargs="?", help="input in the ring/module grammar ('-' for stdin)")
        sp.set_defaults(fn=fn)
        return sp

    verb("parse", cmd_parse, "validate and normalize an input file")
    sp = verb("resolve", cmd_resolve, "minimal free resolution and Hilbert series")
    sp.add_argument("--module")
    sp = verb("invariants", cmd_invariants, "invariant report for a module")
    sp.add_argument("--module")
    for name, fn, h in (("tor-table", cmd_tor_table, "lengths of Tor_i(M, X_n)"),
                        ("fit", cmd_fit, "fit the eventual polynomial of a Tor table")):
        sp = verb(name, fn, h)
        sp.add_argument("--module")
        sp.add_argument("--partner", help="N for the truncation and power families")
        sp.add_argument("--family", choices=("quotient", "truncation", "power"), default="quotient")
        sp.add_argument("--i", help="comma-separated homological degrees")
        sp.add_argument("--ideal", help="comma-separated generators of an m-primary ideal")
        if name == "fit":
            sp.add_argument("--values", help="comma-separated integers to fit directly")
            sp.add_argument("--n-start", type=int, default=0)
    sp = verb("construct", cmd_construct, "build example rings", file_arg=False)
    sp.add_argument("kind", choices=("trivext", "noncm", "hypersurface"))
    sp.add_argument("file", nargs="?", help="for trivext: ring S and module L")
    sp.add_argument("--module")
    sp.add_argument("--p", type=int, default=0)
    sp.add_argument("--q", type=int, default=2)
    sp.add_argument("--form")
    sp.add_argument("--vars")
    sp = verb("verify", cmd_verify, "run a verification scenario", file_arg=False)
    sp.add_argument("scenario", nargs="?", help=", ".join(sorted(SCENARIOS)))
    sp.add_argument("file", nargs="?")
    sp.add_argument("--config", help="rerun the config embedded in a report")
    sp.add_argument("--p", type=int)
    sp.add_argument("--q", type=int)
    sp.add_argument("--i")
    sp = verb("fuzz", cmd_fuzz, "print a seeded random corpus", file_arg=False)
    sp.add_argument("--shapes", help=", ".join(RING_SHAPES))
    return ap


def main(argv=None):
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as e:
        return EXIT_INPUT if e.code else EXIT_OK
    if args.field is not None and not is_prime(args.field):
        print(f"torsam: --field {args.field} is not prime", file=sys.stderr)
        return EXIT_INPUT
    try:
        return args.fn(args)
    except (ParseError, InputError, ValueError, json.JSONDecodeError) as e:
        print(f"torsam: {e}", file=sys.stderr)
        return EXIT_INPUT
    except Inconclusive as e:
        print(f"torsam: inconclusive: {e}", file=sys.stderr)
        return EXIT_INCONCLUSIVE


if __name__ == "__main__":
    sys.exit(main())
