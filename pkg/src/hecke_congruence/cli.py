"""Command-line entry point.

Subcommands: hecke, bgu, adlv, hn, congruence, validate. Exit status is 0 when
every check performed passes, 1 when a check fails, 2 on bad input.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass
from typing import Sequence

from sympy import isprime

from . import congruence as cg
from . import hecke as hk
from . import isocrystal as iso
from . import mv
from .errors import ConfigError, HeckeCongruenceError
from .presets import DatumConfig, get_preset, load_config
from .reports import Report
from .root_datum import BasedRootDatum
from .torus_algebra import HeckePolynomial


@dataclass(frozen=True)
class RunConfig:
    command: str
    datum: BasedRootDatum
    mu: tuple[int, ...]
    source: str
    fmt: str = "text"
    specialize_p: int | None = None
    convention: str = iso.UPSILON


def _parse_mu(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(a) for a in text.replace(" ", "").strip("()[]").split(",") if a)
    except ValueError:
        raise ConfigError(f"--mu: expected comma-separated integers, got {text!r}") from None


def _load(args) -> tuple[DatumConfig, str]:
    if args.preset:
        p = get_preset(args.preset)
        return DatumConfig(p.datum, p.mu), f"preset {p.datum.name}"
    return load_config(args.config), f"config {args.config}"


def build_run_config(args) -> RunConfig:
    cfg, source = _load(args)
    mu = _parse_mu(args.mu) if args.mu else cfg.mu
    if len(mu) != cfg.datum.rank:
        raise ConfigError(f"mu has length {len(mu)}, expected {cfg.datum.rank}")
    if args.specialize_p is not None and not isprime(args.specialize_p):
        raise ConfigError(f"--specialize-p must be a prime, got {args.specialize_p}")
    if args.command != "validate":
        cfg.datum.validate()
        n = cfg.datum.reflex_degree(mu)
        if cfg.reflex_degree is not None and cfg.reflex_degree != n:
            raise ConfigError(
                f"field 'n': config gives {cfg.reflex_degree} but the reflex degree is {n}"
            )
    return RunConfig(
        command=args.command,
        datum=cfg.datum,
        mu=mu,
        source=source,
        fmt=args.format,
        specialize_p=args.specialize_p,
        convention=iso.MU_INVERSE if getattr(args, "mu_inverse", False) else iso.UPSILON,
    )


# ---------------------------------------------------------------------------
# commands


def _poly_fields(rc: RunConfig, poly: HeckePolynomial, key: str, out: dict) -> None:
    out[key] = str(poly)
    if rc.specialize_p is not None:
        out[f"{key}_at_p"] = str(poly.specialize(rc.specialize_p))


def cmd_hecke(rc: RunConfig, args) -> Report:
    d = rc.datum
    r = hk.hecke_report(d, rc.mu)
    poly = hk.hecke_polynomial(d, rc.mu)
    if rc.specialize_p is not None:
        r.data["polynomial_at_p"] = str(poly.specialize(rc.specialize_p))
        r.data["p"] = rc.specialize_p
    if not args.factors:
        r.data.pop("factors")
    r.extend(hk.dominant_weight_factor_check(d, rc.mu))
    return r


def cmd_bgu(rc: RunConfig, args) -> Report:
    r = iso.class_report(rc.datum, rc.mu, rc.convention, args.box_scale)
    r.data["count"] = len(r.data["classes"])
    if not args.list:
        r.data.pop("classes")
    return r


def _selected(rc: RunConfig, which: str) -> iso.SigmaClass:
    classes = iso.enumerate_unramified(rc.datum, rc.mu, rc.convention)
    try:
        return iso.select_class(classes, which)
    except LookupError as exc:
        raise ConfigError(str(exc)) from exc


def cmd_adlv(rc: RunConfig, args) -> Report:
    d = rc.datum
    c = _selected(rc, args.cls)
    r = Report("adlv")
    a = iso.adlv_dimension(d, rc.mu, c)
    s = iso.newton_stratum_dimension(d, rc.mu, c)
    two = 2 * d.pair_rho(hk.normalize_mu(d, rc.mu))
    r.data.update({"class": c.to_dict(), "adlv_dimension": a, "newton_stratum_dimension": s})
    r.add("dimensions sum to 2<rho,mu>", a + s == two, f"{a} + {s} vs {two}")
    r.add("dimensions nonnegative", a >= 0 and s >= 0)
    if c.is_ordinary:
        r.add("ordinary ADLV dimension zero", a == 0)
    if args.mv:
        sub = mv.mv_report(d, rc.mu, c, rc.convention)
        r.extend(sub)
        r.data["labels"] = sub.data["labels"]
        r.data["components"] = sub.data["count"]
    if args.partition:
        r.data["partition"] = mv.orbit_partition(d, rc.mu, rc.convention)["rows"]
    return r


def cmd_hn(rc: RunConfig, args) -> Report:
    d = rc.datum
    proper_only = not args.allow_full
    if args.check_condition2:
        return iso.check_hodge_newton_condition(d, rc.mu, proper_only, rc.convention)
    c = _selected(rc, args.cls)
    levi = d.levi(_parse_mu(args.levi)) if args.levi is not None else None
    try:
        v = iso.hn_decomposable(d, rc.mu, c, levi, proper_only, rc.convention)
    except ValueError as exc:
        raise ConfigError(str(exc)) from exc
    r = Report("hodge-newton")
    r.data.update(
        {
            "class": c.to_dict(),
            "levi": list((levi or c.levi).indices),
            "proper_only": proper_only,
            "verdict": v.value,
        }
    )
    return r


def cmd_congruence(rc: RunConfig, args) -> Report:
    d = rc.datum
    if args.ledger:
        r = cg.induction_ledger(d, rc.mu, rc.convention)
    else:
        c = _selected(rc, args.cls)
        cf = cg.build_congruence_factor(d, rc.mu, c, rc.convention)
        r = cg.verify_divisibility(d, rc.mu, cf)
        if rc.specialize_p is not None:
            _poly_fields(rc, cf.h_prime, "h_prime", r.data)
            _poly_fields(rc, cf.h_full, "h_full", r.data)
    if args.check_ordinary:
        o = cg.ordinary_congruence_check(d, rc.mu, rc.convention)
        r.extend(o)
        r.data["ordinary"] = o.data
    return r


def cmd_validate(rc: RunConfig, args) -> Report:
    r = Report("validate")
    rep = rc.datum.validate()
    r.data.update(rep.to_dict())
    r.add("root datum valid", True)
    mu_ok = rc.datum.is_minuscule(rc.mu)
    r.add("mu minuscule", mu_ok)
    if mu_ok:
        r.data["reflex_degree"] = rc.datum.reflex_degree(rc.mu)
        r.data["orbit_size"] = len(rc.datum.weyl_orbit(rc.mu))
    return r


COMMANDS = {
    "hecke": cmd_hecke,
    "bgu": cmd_bgu,
    "adlv": cmd_adlv,
    "hn": cmd_hn,
    "congruence": cmd_congruence,
    "validate": cmd_validate,
}


# ---------------------------------------------------------------------------
# output


def document(rc: RunConfig, report: Report) -> dict:
    datum = rc.datum.to_dict()
    datum["mu"] = list(rc.mu)
    return {
        "command": rc.command,
        "source": rc.source,
        "convention": rc.convention,
        "datum": datum,
        "result": report.to_dict(),
    }


def dumps(doc: dict) -> str:
    """Canonical JSON: re-parsing and re-dumping reproduces the same bytes."""
    return json.dumps(doc, sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def _text_value(v) -> str:
    if isinstance(v, (dict, list)):
        return json.dumps(v, sort_keys=True, ensure_ascii=False)
    return str(v)


_TEXT_SKIP = {"polynomial_json"}


def render_text(rc: RunConfig, report: Report) -> str:
    lines = [f"# {rc.command} ({rc.source}, mu = {list(rc.mu)})"]
    for key in sorted(report.data):
        if key in _TEXT_SKIP:
            continue
        value = report.data[key]
        if isinstance(value, list) and value and isinstance(value[0], dict):
            lines.append(f"{key}:")
            lines.extend(f"  - {_text_value(v)}" for v in value)
        else:
            lines.append(f"{key}: {_text_value(value)}")
    for c in report.checks:
        mark = "PASS" if c.passed else "FAIL"
        lines.append(f"[{mark}] {c.name}" + (f" ({c.detail})" if c.detail and not c.passed else ""))
    s = report.summary()
    lines.append(f"checks: {s['passed']}/{s['total']} passed")
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    src = common.add_mutually_exclusive_group(required=True)
    src.add_argument("--preset", help="compiled-in datum name")
    src.add_argument("--config", help="TOML or JSON datum file")
    common.add_argument("--mu", help="override mu, e.g. 1,0")
    common.add_argument("--format", choices=("text", "json"), default="text")
    common.add_argument("--specialize-p", type=int, metavar="P", help="substitute a prime for p")
    common.add_argument(
        "--mu-inverse",
        action="store_true",
        help="compare classes against mu^{-1} instead of sigma(mu^{-1})",
    )

    parser = argparse.ArgumentParser(prog="hecke-congruence", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("hecke", parents=[common], help="Hecke polynomial")
    p.add_argument("--factors", action="store_true", help="list the orbit factors")

    p = sub.add_parser("bgu", parents=[common], help="unramified classes")
    p.add_argument("--list", action="store_true", help="print every class")
    p.add_argument("--box-scale", type=int, default=1, help="multiply the search bound")

    p = sub.add_parser("adlv", parents=[common], help="dimensions and component labels")
    p.add_argument("--class", dest="cls", default="ordinary", help="ordinary, basic or an index")
    p.add_argument("--mv", action="store_true", help="list component labels")
    p.add_argument("--partition", action="store_true", help="place every orbit weight")

    p = sub.add_parser("hn", parents=[common], help="Hodge-Newton decomposability")
    p.add_argument("--class", dest="cls", default="ordinary")
    p.add_argument("--levi", help="simple-root indices of M (0-based), default the Newton centralizer")
    p.add_argument("--check-condition2", action="store_true", help="check every class")
    p.add_argument("--allow-full", action="store_true", help="treat M = G as a real verdict")

    p = sub.add_parser("congruence", parents=[common], help="congruence factors")
    p.add_argument("--class", dest="cls", default="ordinary")
    p.add_argument("--ledger", action="store_true", help="all classes, in Newton order")
    p.add_argument("--check-ordinary", action="store_true", help="evaluate H at ordinary Frobenius")

    sub.add_parser("validate", parents=[common], help="validate a datum")
    return parser


def run(argv: Sequence[str] | None = None, out=None) -> int:
    out = sys.stdout if out is None else out
    args = build_parser().parse_args(argv)
    try:
        rc = build_run_config(args)
        report = COMMANDS[rc.command](rc, args)
    except (HeckeCongruenceError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    if rc.fmt == "json":
        out.write(dumps(document(rc, report)))
    else:
        out.write(render_text(rc, report))
    return 0 if report.passed else 1


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
