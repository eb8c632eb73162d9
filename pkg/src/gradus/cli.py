"""Command-line front end.

Exit codes: 0 success, 1 verification failure, 2 input error.  Every command
builds one JSON-serializable report; ``--format text`` renders the same
report.  Timing is kept under a separate ``timing`` key (dropped by
``--no-timing``) so the rest of a report is identical across reruns.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from dataclasses import dataclass, field as dc_field

from . import __version__
from .exact import BadCharacteristic, FieldSpec
from .roots import InvalidType, JSubset, build_root_system, chevalley_constants

EXIT_OK, EXIT_FAIL, EXIT_INPUT = 0, 1, 2


class InputError(Exception):
    pass


@dataclass
class RunConfig:
    command: str
    type_label: str | None = None
    rank: int | None = None
    J: tuple | None = None
    fields: tuple = ()
    seed: int = 0
    attempts: int = 20
    samples: int = 200
    exhaustive: bool = False
    out: str | None = None
    fmt: str = "text"
    timing: bool = True
    path: str | None = None
    extra: dict = dc_field(default_factory=dict)


# ------------------------------------------------------------------ parsing


def _parse_J(text: str | None):
    if text is None:
        return None
    try:
        return tuple(int(t) for t in text.replace(" ", "").split(",") if t)
    except ValueError:
        raise InputError(f"--J expects a comma list of integers, got {text!r}")


def _parse_fields(args, default: str) -> tuple:
    if getattr(args, "field", None) and getattr(args, "fields", None):
        raise InputError("--field and --fields are mutually exclusive")
    text = getattr(args, "fields", None) or getattr(args, "field", None) or default
    out = []
    for t in text.split(","):
        try:
            out.append(FieldSpec.parse(t.strip()))
        except (ValueError, BadCharacteristic) as e:
            raise InputError(str(e))
    return tuple(out)


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="gradus", description="Graded Lie algebras, structurable algebras and Kantor pairs")
    ap.add_argument("--version", action="version", version=f"gradus {__version__}")
    sub = ap.add_subparsers(dest="command", required=True)

    def common(p, fields_default=None, multi=False):
        p.add_argument("--format", choices=("json", "text"), default="text")
        p.add_argument("--out", default=None, help="write the JSON report here")
        p.add_argument("--seed", type=int, default=0)
        p.add_argument("--no-timing", action="store_true", help="omit the timing block")
        if fields_default is not None:
            p.add_argument("--field", default=None, help="Q or GF<p>")
            if multi:
                p.add_argument("--fields", default=None, help="comma list of fields")

    def typed(p, with_J=False):
        p.add_argument("type", help="root system type, A..G")
        p.add_argument("rank", type=int)
        if with_J:
            p.add_argument("--J", required=True, help="comma list of 1-based simple root indices")

    p = sub.add_parser("roots", help="list the roots of a root system")
    typed(p)
    common(p)

    p = sub.add_parser("grade", help="grading defined by a set J of simple roots")
    typed(p, with_J=True)
    common(p, "Q")

    p = sub.add_parser("kappa", help="build K(A) from a structurable algebra JSON file")
    p.add_argument("path")
    common(p, "")

    p = sub.add_parser("hat", help="build the hat extension of a graded Chevalley algebra")
    typed(p, with_J=True)
    common(p, "Q")

    p = sub.add_parser("verify-table", help="check the classification table by both routes")
    typed(p)
    common(p, "Q,GF5,GF7", multi=True)
    p.add_argument("--attempts", type=int, default=20)
    p.add_argument("--exhaustive", action="store_true", help="enumerate all pairs (finite fields only)")

    p = sub.add_parser("algebraic", help="test e_sigma(x, s) automorphisms")
    typed(p, with_J=True)
    common(p, "Q")
    p.add_argument("-n", "--samples", type=int, default=200)
    p.add_argument("--exhaustive", action="store_true")
    return ap


def config_from_args(args) -> RunConfig:
    cmd = args.command
    cfg = RunConfig(cmd, fmt=args.format, out=args.out, seed=args.seed, timing=not args.no_timing)
    if hasattr(args, "type"):
        cfg.type_label, cfg.rank = args.type.upper(), args.rank
    cfg.J = _parse_J(getattr(args, "J", None))
    if cmd in ("grade", "hat", "algebraic"):
        cfg.fields = _parse_fields(args, "Q")
    elif cmd == "verify-table":
        cfg.fields = _parse_fields(args, "Q,GF5,GF7")
    elif cmd == "kappa" and args.field:
        cfg.fields = _parse_fields(args, "Q")
    cfg.attempts = getattr(args, "attempts", 20)
    cfg.samples = getattr(args, "samples", 200)
    cfg.exhaustive = getattr(args, "exhaustive", False)
    cfg.path = getattr(args, "path", None)
    return cfg


# ----------------------------------------------------------------- commands


def _root_system(cfg):
    try:
        return build_root_system(cfg.type_label, cfg.rank)
    except InvalidType as e:
        raise InputError(str(e))


def _grading(cfg, rs, F):
    from .lie import TooWideGrading, chevalley_algebra, grading_from_J
    try:
        J = JSubset(rs, cfg.J)
    except ValueError as e:
        raise InputError(str(e))
    L = chevalley_algebra(rs, F)
    try:
        return L, grading_from_J(L, J)
    except TooWideGrading as e:
        raise InputError(str(e))


def cmd_roots(cfg, timing) -> tuple[dict, int]:
    rs = _root_system(cfg)
    t0 = time.perf_counter()
    consts = chevalley_constants(rs)
    timing["constants"] = time.perf_counter() - t0
    bad = consts.check()
    rep = {"root_system": rs.name, "n_roots": len(rs.roots), "n_positive": rs.n_positive,
           "highest_root": list(rs.highest_root), "cartan": rs.cartan.tolist(),
           "positive_roots": [list(r) for r in rs.positive],
           "constants": {"count": len(consts), "violations": len(bad)}}
    return rep, EXIT_OK if not bad else EXIT_FAIL


def cmd_grade(cfg, timing) -> tuple[dict, int]:
    from .lie import grading_derivation
    rs = _root_system(cfg)
    F = cfg.fields[0]
    t0 = time.perf_counter()
    L, g = _grading(cfg, rs, F)
    zeta = grading_derivation(g)
    timing["grade"] = time.perf_counter() - t0
    rep = {"root_system": rs.name, "J": list(cfg.J), "n_roots": len(rs.roots), "width": g.J.width().name,
           "root_levels": {str(k): v for k, v in sorted(g.J.component_counts().items())},
           "dims": g.dims(2), "zeta": zeta.kind, "distinguished": g.J.is_distinguished()}
    if zeta.inner:
        rep["zeta_cartan_coords"] = [F.format_scalar(c) for c in zeta.element[len(rs.roots):]]
    return rep, EXIT_OK


def cmd_kappa(cfg, timing) -> tuple[dict, int]:
    from .structurable import (EqDefFails, JacobiFails, NotInvolution, NotUnital, StructIdFails,
                               StructurableAlgebra, check_eps_identity, kappa, validate_structurable)
    try:
        with open(cfg.path) as fh:
            data = json.load(fh)
        A = StructurableAlgebra.from_json(data, cfg.fields[0] if cfg.fields else None)
    except (OSError, json.JSONDecodeError, KeyError, TypeError, ValueError) as e:
        raise InputError(f"cannot read structurable algebra: {e}")
    rep = {"source": data.get("name") or cfg.path, "field": str(A.field), "dim": A.dim}
    t0 = time.perf_counter()
    try:
        val = validate_structurable(A)
    except (NotInvolution, NotUnital) as e:
        rep["validation"] = {"ok": False, "error": type(e).__name__, "message": str(e)}
        return rep, EXIT_FAIL
    except (StructIdFails, EqDefFails) as e:
        rep["validation"] = {"ok": False, "error": type(e).__name__, "tuple": list(e.tuple), "message": str(e)}
        return rep, EXIT_FAIL
    rep["validation"] = {"ok": True, **val.to_json()}
    rep["eps_identity_failure"] = check_eps_identity(A)
    try:
        K = kappa(A)
    except JacobiFails as e:
        rep["jacobi"] = {"ok": False, "message": str(e)}
        return rep, EXIT_FAIL
    timing["kappa"] = time.perf_counter() - t0
    rep["blocks"] = list(K.block_dims)
    rep["jacobi"] = K.jacobi.to_json()
    zeta = K.zeta()
    rep["grading_derivation"] = {"witness": "[1+, 1-]", "element": [A.field.format_scalar(c) for c in zeta],
                                 "acts_as_grading": K.zeta_acts_as_grading()}
    rep["kappa"] = K.to_json()
    ok = K.jacobi.ok and rep["grading_derivation"]["acts_as_grading"] and rep["eps_identity_failure"] is None
    return rep, EXIT_OK if ok else EXIT_FAIL


def cmd_hat(cfg, timing) -> tuple[dict, int]:
    from .hat import build_hat, contains_grading_derivation
    rs = _root_system(cfg)
    F = cfg.fields[0]
    L, g = _grading(cfg, rs, F)
    t0 = time.perf_counter()
    H = build_hat(L, g)
    timing["hat"] = time.perf_counter() - t0
    has_zeta = contains_grading_derivation(H)
    rep = {"root_system": rs.name, "J": list(cfg.J), "field": str(F), "dims": g.dims(2),
           "hat_dim_zero": H.dim_zero, "hat_dim": H.algebra.dim, "contains_zeta": has_zeta}
    return rep, EXIT_OK if has_zeta else EXIT_FAIL


def cmd_verify_table(cfg, timing) -> tuple[dict, int]:
    from .nilpotent import cross_validate, generate_table, load_golden, table_diff
    rs = _root_system(cfg)
    if cfg.exhaustive and not all(F.is_finite for F in cfg.fields):
        raise InputError("--exhaustive needs finite fields only")
    t0 = time.perf_counter()
    table = generate_table(rs.type_label, rs.rank)
    golden = [e for e in load_golden() if (e.type_label, e.rank) == (rs.type_label, rs.rank)]
    diff = table_diff(table, golden) if golden else []
    timing["table"] = time.perf_counter() - t0
    t0 = time.perf_counter()
    cv = cross_validate(rs.type_label, rs.rank, list(cfg.fields), attempts=cfg.attempts, seed=cfg.seed,
                        exhaustive=True if cfg.exhaustive else None, table=table)
    timing["cross_validate"] = time.perf_counter() - t0
    rep = {"root_system": rs.name, "golden_rows": len(golden), "golden_diff": diff,
           "structurable": [list(e.J) for e in table if e.verdict == "Structurable"],
           "cross_validation": cv.to_json()}
    ok = not diff and cv.consistent
    if not ok:
        rep["first_discrepancy"] = diff[0] if diff else cv.discrepancies[0]
    return rep, EXIT_OK if ok else EXIT_FAIL


def cmd_algebraic(cfg, timing) -> tuple[dict, int]:
    from .lie import is_algebraic
    rs = _root_system(cfg)
    F = cfg.fields[0]
    L, g = _grading(cfg, rs, F)
    t0 = time.perf_counter()
    try:
        res = is_algebraic(L, g, samples=cfg.samples, seed=cfg.seed, exhaustive=cfg.exhaustive)
    except ValueError as e:
        raise InputError(str(e))
    timing["algebraic"] = time.perf_counter() - t0
    rep = {"root_system": rs.name, "J": list(cfg.J), "field": str(F), **res.to_json()}
    return rep, EXIT_OK if res.ok else EXIT_FAIL


COMMANDS = {"roots": cmd_roots, "grade": cmd_grade, "kappa": cmd_kappa, "hat": cmd_hat,
            "verify-table": cmd_verify_table, "algebraic": cmd_algebraic}


# ---------------------------------------------------------------- rendering


def render_text(rep: dict) -> str:
    cmd = rep["command"]
    r = rep.get("result", {})
    lines = [f"gradus {rep['version']}  {cmd}  seed={rep['seed']}  fields={','.join(rep['fields']) or '-'}"]
    if "error" in rep:
        lines.append(f"error: {rep['error']}")
        return "\n".join(lines)
    if cmd == "roots":
        lines += [f"{r['root_system']}: {r['n_roots']} roots ({r['n_positive']} positive)",
                  f"highest root: {' '.join(map(str, r['highest_root']))}",
                  f"structure constants: {r['constants']['count']}, violations: {r['constants']['violations']}"]
    elif cmd == "grade":
        lines += [f"{r['root_system']} J={r['J']} ({r['width'].lower()})",
                  f"dims: {' '.join(map(str, r['dims']))}",
                  f"zeta: {r['zeta']}"]
    elif cmd == "kappa":
        v = r.get("validation", {})
        if not v.get("ok"):
            lines.append(f"validation failed: {v.get('error')} {v.get('tuple', '')} {v.get('message', '')}")
        else:
            lines.append(f"{r['source']}: dim {r['dim']}, skew-dimension {v['skew_dimension']}")
            if "blocks" in r:
                lines += [f"blocks: {' '.join(map(str, r['blocks']))}",
                          f"jacobi: {'pass' if r['jacobi']['ok'] else 'FAIL'} ({r['jacobi']['mode']})",
                          f"[1+, 1-] acts as grading derivation: {r['grading_derivation']['acts_as_grading']}"]
    elif cmd == "hat":
        lines += [f"{r['root_system']} J={r['J']} over {r['field']}: dims {' '.join(map(str, r['dims']))}",
                  f"hat L0 dim: {r['hat_dim_zero']}, contains zeta: {r['contains_zeta']}"]
    elif cmd == "verify-table":
        lines.append(f"{r['root_system']}: golden rows {r['golden_rows']}, diff {len(r['golden_diff'])}")
        lines += [f"  golden: {d}" for d in r["golden_diff"]]
        for e in r["cross_validation"]["entries"]:
            cells = ", ".join(f"{f}: {c.get('status')}" for f, c in e["cells"].items())
            lines.append(f"  J={e['J']} {e['verdict']}  [{cells}]")
        lines.append("consistent" if rep["exit_code"] == 0 else f"DISCREPANCY: {r.get('first_discrepancy')}")
    elif cmd == "algebraic":
        lines.append(f"{r['root_system']} J={r['J']} over {r['field']}: {'pass' if r['ok'] else 'FAIL'} "
                     f"({r['mode']}, {r['tested']} tested)")
        lines += [f"warning: {w}" for w in r["warnings"]]
        if r["counterexample"]:
            lines.append(f"counterexample: {r['counterexample']}")
    if "timing" in rep:
        lines.append("timing: " + ", ".join(f"{k} {v:.2f}s" for k, v in rep["timing"].items()))
    return "\n".join(lines)


def run(cfg: RunConfig) -> tuple[dict, int]:
    timing: dict = {}
    rep = {"version": __version__, "command": cfg.command, "seed": cfg.seed,
           "fields": [str(f) for f in cfg.fields],
           "config": {"type": cfg.type_label, "rank": cfg.rank, "J": list(cfg.J) if cfg.J else None,
                      "attempts": cfg.attempts, "samples": cfg.samples, "exhaustive": cfg.exhaustive}}
    try:
        result, code = COMMANDS[cfg.command](cfg, timing)
        rep["result"] = result
    except InputError as e:
        rep["error"] = str(e)
        code = EXIT_INPUT
    rep["exit_code"] = code
    if cfg.timing:
        rep["timing"] = {k: round(v, 4) for k, v in timing.items()}
    return rep, code


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_INPUT if e.code else EXIT_OK
    try:
        cfg = config_from_args(args)
    except InputError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_INPUT
    rep, code = run(cfg)
    text = json.dumps(rep, indent=1, sort_keys=True)
    if cfg.out:
        with open(cfg.out, "w") as fh:
            fh.write(text + "\n")
    print(text if cfg.fmt == "json" else render_text(rep))
    if "error" in rep and cfg.fmt == "json":
        print(f"error: {rep['error']}", file=sys.stderr)
    return code


if __name__ == "__main__":
    sys.exit(main())
