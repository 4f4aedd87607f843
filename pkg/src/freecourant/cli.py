"""Command-line entry point.

    freecourant expand "[(e1), (x*e1)]" --config cfg.json
    freecourant check --config cfg.json --suite all --seed 0
    freecourant dims | quotient | courant --config cfg.json
    freecourant universal --config cfg.json --target dorfman --map map.json

A config is one JSON file.  Flags override its bounds and seed.  The exit
code is 0 iff every reported verdict passes, 1 on a failed verdict or a
witnessed error, 2 on bad input.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass, field

from .anchored import AnchoredMap, AnchoredModule
from .checks import (
    MAX_TUPLES,
    CheckReport,
    check_courant,
    check_leibniz,
    check_loday,
    check_module,
    check_precourant,
    check_square,
    check_symmetric,
    check_well_defined,
    format_reports,
)
from .courant import SymSquare, build_associated_courant, natural_courant
from .errors import (
    AnchorIncompatible,
    NonVanishingOnIdeal,
    NonVanishingOnInv,
    SaturationFailure,
    SymmetryViolation,
    TruncationOverflow,
)
from .free import ExpressionError, FreeLeibniz
from .instances import Dorfman, StructureConstants
from .poly import PolyParseError
from .symmetric import build_quotient
from .universal import broken_equal_target, identity_target, universal_pipeline

DEFAULTS = {"wmax": 3, "pmax": 3, "delta_max": 8}


class ConfigError(ValueError):
    pass


@dataclass
class Config:
    raw: dict
    module: AnchoredModule | None
    instance: dict
    wmax: int
    pmax: int
    delta_max: int
    seed: int = 0
    suites: list = field(default_factory=list)


def _load_json(path):
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as ex:
        raise ConfigError(f"{path}: {ex.strerror}") from None
    try:
        return json.loads(text)
    except json.JSONDecodeError as ex:
        raise ConfigError(f"{path}:{ex.lineno}:{ex.colno}: {ex.msg}") from None


def parse_config(raw: dict, where="config") -> Config:
    if not isinstance(raw, dict):
        raise ConfigError(f"{where}: top level must be an object")
    mod = raw.get("module")
    if mod is None and "generators" in raw:
        mod = {k: raw[k] for k in ("vars", "generators", "anchor") if k in raw}
    module = None
    if mod is not None:
        try:
            module = AnchoredModule.from_config(mod)
        except PolyParseError as ex:
            raise ConfigError(f"{where}: module.anchor: {ex}") from None
        except (KeyError, ValueError, TypeError) as ex:
            raise ConfigError(f"{where}: module: {ex}") from None
    bounds = {**DEFAULTS, **raw.get("bounds", {})}
    for k in ("wmax", "pmax", "delta_max"):
        v = bounds[k]
        if not isinstance(v, int) or isinstance(v, bool) or v < (1 if k == "wmax" else 0):
            raise ConfigError(f"{where}: bounds.{k} must be a {'positive' if k == 'wmax' else 'non-negative'} integer")
    inst = raw.get("instance", {"type": "quotient"})
    if "type" not in inst:
        raise ConfigError(f"{where}: instance.type is required")
    return Config(raw, module, inst, bounds["wmax"], bounds["pmax"], bounds["delta_max"],
                  raw.get("seed", 0), raw.get("suites", []))


def load_config(path) -> Config:
    return parse_config(_load_json(path), path)


def _need_module(cfg: Config):
    if cfg.module is None:
        raise ConfigError("this command needs a module block (vars, generators, anchor)")
    return cfg.module


def make_instance(cfg: Config):
    kind = cfg.instance["type"]
    if kind == "free":
        return FreeLeibniz(_need_module(cfg), cfg.wmax, cfg.pmax)
    if kind == "quotient":
        return build_quotient(FreeLeibniz(_need_module(cfg), cfg.wmax, cfg.pmax), cfg.delta_max)
    if kind == "sc":
        try:
            return StructureConstants.from_config(cfg.instance)
        except (KeyError, ValueError, TypeError, ZeroDivisionError) as ex:
            raise ConfigError(f"instance: {ex}") from None
    if kind == "dorfman":
        dcfg = dict(cfg.instance)
        dcfg.setdefault("vars", cfg.module.vars if cfg.module else ["x"])
        dcfg.setdefault("sample_degree", cfg.pmax)
        return Dorfman.from_config(dcfg)
    raise ConfigError(f"unknown instance type {kind!r} (free, quotient, sc, dorfman)")


# -- commands

def cmd_expand(args, cfg: Config, out):
    free = FreeLeibniz(_need_module(cfg), cfg.wmax, cfg.pmax)
    target = build_quotient(free, cfg.delta_max) if args.quotient else free
    u = target.parse(args.expr)
    print(target.format(u, ascii=args.ascii), file=out)
    return [], {"expression": args.expr, "normal_form": target.format(u)}


def _suites(inst, requested):
    avail = ["leibniz", "symmetric", "module"]
    if hasattr(inst, "loday_D") or isinstance(inst, StructureConstants):
        avail.append("loday")
    if inst.has_pairing:
        avail.append("courant")
    if requested == "all":
        return [s for s in ("leibniz", "symmetric", "loday", "module", "courant") if s in avail]
    if requested not in avail:
        raise ConfigError(f"suite {requested!r} does not apply to a {inst.name} instance")
    return [requested]


def _zero_D(inst):
    return lambda f, X, Y: inst.zero()


def cmd_check(args, cfg: Config, out):
    inst = make_instance(cfg)
    kw = {"seed": cfg.seed, "max_tuples": args.max_tuples}
    reports: list[CheckReport] = []
    for suite in _suites(inst, args.suite):
        if suite == "leibniz":
            reps = check_leibniz(inst, **kw)
        elif suite == "symmetric":
            reps = check_symmetric(inst, **kw)
        elif suite == "loday":
            D = getattr(inst, "loday_D", None) or _zero_D(inst)
            reps = check_loday(inst, D, **kw)
        elif suite == "module":
            reps = check_module(natural_courant(inst), **kw)
        else:
            reps = check_courant(inst, **kw)
        print(format_reports(reps, f"{suite} suite on {inst.name}"), file=out)
        reports.extend(reps)
    return reports, {"instance": inst.name}


def _dims_lines(q, delta):
    return [f"weight={k} dim_free={n} dim_relations={r} dim_quotient={d} saturation_delta={delta}"
            for k, n, r, d in q.dims()]


def cmd_dims(args, cfg: Config, out):
    q = build_quotient(FreeLeibniz(_need_module(cfg), cfg.wmax, cfg.pmax), cfg.delta_max)
    lines = _dims_lines(q, q.saturation.delta)
    print("\n".join(lines), file=out)
    return [], {"dims": [list(t) for t in q.dims()], "saturation_delta": q.saturation.delta}


def cmd_quotient(args, cfg: Config, out):
    q = build_quotient(FreeLeibniz(_need_module(cfg), cfg.wmax, cfg.pmax), cfg.delta_max)
    sat = q.saturation
    kinds = {}
    for g in q.generators:
        kinds[g.kind] = kinds.get(g.kind, 0) + 1
    print(f"FS M over {q.module!r}, W_max={cfg.wmax}, P_max={cfg.pmax}", file=out)
    print("\n".join(_dims_lines(q, sat.delta)), file=out)
    print(f"saturation history (rank per delta): {sat.history}", file=out)
    print(f"nonzero generators: J1={kinds.get('J1', 0)} J2={kinds.get('J2', 0)}; discarded (overflow): {sat.discarded}",
          file=out)
    print("cobasis: " + ", ".join(q.free.format_word(w) for w in q.labels), file=out)
    return [], {"dims": [list(t) for t in q.dims()], "history": sat.history, "generators": kinds}


def cmd_courant(args, cfg: Config, out):
    kind = cfg.instance["type"]
    if kind not in ("quotient", "sc"):
        raise ConfigError("courant needs a symmetric instance with a finite basis (quotient or sc)")
    base = make_instance(cfg)
    data = build_associated_courant(base, delta_max=cfg.delta_max, seed=cfg.seed)
    res = data.residue
    print(f"C({base.name}): E⊙² balancing history {res.square.saturation.history}, "
          f"<Inv> history {res.saturation.history}, Inv generators {len(res.generators)}", file=out)
    for (k, n, r, d), (_, _, r2, d2) in zip(res.square.dims(), res.dims()):
        print(f"weight={k} dim_pairs={n} dim_balanced={d} dim_inv={r2 - r} dim_R={d2}", file=out)
    kw = {"seed": cfg.seed, "max_tuples": args.max_tuples}
    reports = []
    for title, reps in (
        ("bimodule lemma on E⊙²", check_square(res.square, **kw)),
        ("pre-Courant relations in C(E)", check_precourant(data, **kw)),
        ("R(E) as an E-module", check_module(data, **kw)),
        ("induced actions", check_well_defined(data)),
    ):
        print(format_reports(reps, title), file=out)
        reports.extend(reps)
    return reports, {"square_dims": [list(t) for t in res.square.dims()], "R_dims": [list(t) for t in res.dims()]}


def _parse_map(path, module, target):
    raw = _load_json(path)
    if not isinstance(raw, dict):
        raise ConfigError(f"{path}: map must be an object generator -> element")
    missing = [g for g in module.gens if g not in raw]
    if missing:
        raise ConfigError(f"{path}: no image for {', '.join(missing)}")
    images = []
    for g in module.gens:
        try:
            images.append(target.parse(raw[g]))
        except (ValueError, ExpressionError, PolyParseError) as ex:
            raise ConfigError(f"{path}: image of {g}: {ex}") from None
    return images


def cmd_universal(args, cfg: Config, out):
    module = _need_module(cfg)
    q = build_quotient(FreeLeibniz(module, cfg.wmax, cfg.pmax), cfg.delta_max)
    source = build_associated_courant(q, delta_max=cfg.delta_max, verify=False)
    t = args.target
    if t == "self":
        target, images = identity_target(source)
    else:
        if t == "dorfman":
            target = natural_courant(Dorfman(module.vars))
        elif t == "dorfman-broken":
            target = broken_equal_target(Dorfman(module.vars))
        elif t.startswith("sc:"):
            target = natural_courant(StructureConstants.from_config(_load_json(t[3:])))
        else:
            raise ConfigError(f"unknown target {t!r} (dorfman, dorfman-broken, sc:<file>, self)")
        if not args.map:
            raise ConfigError("--map is required unless --target self")
        images = _parse_map(args.map, module, target.base)
    phi = AnchoredMap(module, target.base, images)
    m = universal_pipeline(source, phi, target)
    print(f"phi: " + ", ".join(f"{g} -> {target.base.format(v)}" for g, v in zip(module.gens, images)), file=out)
    print(format_reports(m.reports, f"universal property into {target.name}"), file=out)
    return m.reports, {"target": target.name}


COMMANDS = {
    "expand": cmd_expand,
    "check": cmd_check,
    "dims": cmd_dims,
    "quotient": cmd_quotient,
    "courant": cmd_courant,
    "universal": cmd_universal,
}


def build_parser():
    p = argparse.ArgumentParser(prog="freecourant", description=__doc__.split("\n\n")[0])
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp):
        sp.add_argument("--config", help="JSON config file")
        sp.add_argument("--wmax", type=int, help="override bounds.wmax")
        sp.add_argument("--pmax", type=int, help="override bounds.pmax")
        sp.add_argument("--delta-max", type=int, help="override bounds.delta_max")
        sp.add_argument("--seed", type=int, help="sample seed (default: config seed or 0)")
        sp.add_argument("--report", help="write a JSON mirror of the report here")
        sp.add_argument("--max-tuples", type=int, default=MAX_TUPLES)

    sp = sub.add_parser("expand", help="normal form of an element expression")
    sp.add_argument("expr")
    sp.add_argument("--quotient", action="store_true", help="project into FS M")
    sp.add_argument("--ascii", action="store_true", help="print ' ox ' for the tensor sign")
    common(sp)
    sp = sub.add_parser("check", help="run identity suites on an instance")
    sp.add_argument("--suite", default="all", choices=["leibniz", "symmetric", "loday", "module", "courant", "all"])
    common(sp)
    for name, hlp in (("dims", "graded dimensions of FS M"), ("quotient", "saturation details of FS M"),
                      ("courant", "build C(E) and check it")):
        common(sub.add_parser(name, help=hlp))
    sp = sub.add_parser("universal", help="verify the free Courant universal property")
    sp.add_argument("--target", default="dorfman")
    sp.add_argument("--map", help="JSON file: generator -> image in the target grammar")
    common(sp)
    return p


def _resolve_config(args) -> Config:
    raw = _load_json(args.config) if args.config else {}
    if not args.config and args.command in ("expand", "dims", "quotient", "universal"):
        raise ConfigError("--config is required")
    raw = dict(raw)
    bounds = dict(raw.get("bounds", {}))
    for k in ("wmax", "pmax", "delta_max"):
        v = getattr(args, k)
        if v is not None:
            bounds[k] = v
    raw["bounds"] = bounds
    if args.seed is not None:
        raw["seed"] = args.seed
    return parse_config(raw, args.config or "config")


def main(argv=None, out=None) -> int:
    out = out or sys.stdout
    args = build_parser().parse_args(argv)
    try:
        cfg = _resolve_config(args)
        reports, extra = COMMANDS[args.command](args, cfg, out)
    except ConfigError as ex:
        print(f"error: {ex}", file=sys.stderr)
        return 2
    except (ExpressionError, PolyParseError) as ex:
        print(f"error: {ex}", file=sys.stderr)
        return 2
    except (TruncationOverflow, SaturationFailure, SymmetryViolation, NonVanishingOnIdeal,
            NonVanishingOnInv, AnchorIncompatible) as ex:
        print(f"{type(ex).__name__}: {ex}", file=out)
        if isinstance(ex, SaturationFailure):
            print(f"rank history: {ex.history}", file=out)
        if isinstance(ex, SymmetryViolation):
            print(format_reports(ex.reports), file=out)
        return 1
    ok = all(r.verdict for r in reports)
    if args.report:
        doc = {
            "command": args.command,
            "config": cfg.raw,
            "verdict": "pass" if ok else "fail",
            "reports": [r.to_dict() for r in reports],
            **extra,
        }
        with open(args.report, "w", encoding="utf-8") as fh:
            json.dump(doc, fh, indent=2, ensure_ascii=False, sort_keys=True)
            fh.write("\n")
    return 0 if ok else 1


if __name__ == "__main__":
    sys.exit(main())
