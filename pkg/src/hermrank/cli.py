"""Command-line interface.

Every subcommand writes one report to stdout (or ``--out``) in JSON, markdown
or plain text.  Exit codes: 0 success, 1 usage or input error, 2 verification
mismatch.  Output contains no timings, so equal invocations give equal bytes.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from pathlib import Path

from . import __version__
from .engine import DEFAULT_SWEEP, KINDS, RankReport, form_to_json, rank
from .fixtures import verify_formula_fixtures
from .gaussian import GaussianRational, as_fraction
from .identities import check_identities
from .structures import (
    FAMILIES,
    AlgebraInstance,
    DomainError,
    FamilyParams,
    SalamonError,
    instance_from_json,
    instance_from_salamon,
    instantiate_family,
    parse_salamon,
)
from .suspension import suspension_report
from .table import reproduce_table

EXIT_OK, EXIT_INPUT, EXIT_MISMATCH = 0, 1, 2
FORMATS = ("json", "md", "text")


class UsageError(Exception):
    """Bad flags or flag values; reported with exit code 1."""


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


def parse_rational(text: str) -> Fraction:
    """``"p/q"`` or a decimal string, exactly."""
    try:
        return as_fraction(text)
    except ValueError:
        raise UsageError(f"malformed rational {text!r}; use p/q or a decimal such as 0.25") from None


def parse_gaussian(text: str) -> GaussianRational:
    """``"a"``, ``"bi"`` or ``"a+bi"`` with rational ``a`` and ``b`` (``p/q`` or decimal)."""
    compact = text.replace(" ", "")
    if not compact.endswith("i"):
        return GaussianRational(parse_rational(compact))
    body = compact[:-1].rstrip("*")
    cut = max(body.rfind("+"), body.rfind("-"), 0)
    re_text, im_text = body[:cut], body[cut:]
    if im_text in ("", "+", "-"):
        im_text += "1"
    try:
        return GaussianRational(as_fraction(re_text) if re_text else 0, as_fraction(im_text))
    except ValueError:
        raise UsageError(f"malformed Gaussian rational {text!r}; use forms like 2, -1/2, 3i or 1+2i") from None


# ---------------------------------------------------------------- algebra input

def _add_algebra_flags(p: argparse.ArgumentParser) -> None:
    g = p.add_argument_group("algebra")
    g.add_argument("--family", choices=FAMILIES)
    g.add_argument("--rho", help="0 or 1")
    g.add_argument("--lambda", dest="lam", metavar="LAMBDA", help="rational >= 0")
    g.add_argument("--D", help="Gaussian rational with Im D >= 0, e.g. -1 or 1/2+i")
    g.add_argument("--B", help="Gaussian rational")
    g.add_argument("--c", help="rational >= 0")
    g.add_argument("--eps", help="0 or 1")
    g.add_argument("--sign", help="+1 or -1 (family III)")
    g.add_argument("--salamon", help='Salamon notation such as "(0,0,0,12,13,23)"')
    g.add_argument("--algebra", metavar="JSON", help="algebra JSON object, or @path to a file holding one")


def _family_params(args) -> FamilyParams:
    values = {}
    if args.rho is not None:
        values["rho"] = parse_rational(args.rho)
    if args.lam is not None:
        values["lam"] = parse_rational(args.lam)
    if args.D is not None:
        values["D"] = parse_gaussian(args.D)
    if args.B is not None:
        values["B"] = parse_gaussian(args.B)
    if args.c is not None:
        values["c"] = parse_rational(args.c)
    if args.eps is not None:
        values["eps"] = parse_rational(args.eps)
    if args.sign is not None:
        values["sign"] = parse_rational(args.sign)
    return FamilyParams.create(args.family, **values)


def _load_json_arg(text: str) -> dict:
    try:
        raw = Path(text[1:]).read_text(encoding="utf-8") if text.startswith("@") else text
        obj = json.loads(raw)
    except (OSError, json.JSONDecodeError) as exc:
        raise UsageError(f"cannot read algebra JSON: {exc}") from None
    if not isinstance(obj, dict):
        raise UsageError("algebra JSON must be an object")
    return obj


def algebra_from_args(args) -> AlgebraInstance:
    family_flags = [n for n in ("rho", "lam", "D", "B", "c", "eps", "sign") if getattr(args, n) is not None]
    sources = [name for name, present in (("--family", args.family), ("--salamon", args.salamon),
                                          ("--algebra", args.algebra)) if present]
    if len(sources) != 1:
        raise UsageError("give exactly one of --family, --salamon or --algebra")
    if family_flags and args.family is None:
        raise UsageError("parameter flags such as --rho need --family")
    if args.salamon:
        return instance_from_salamon(args.salamon)
    if args.algebra:
        return instance_from_json(_load_json_arg(args.algebra))
    return instantiate_family(_family_params(args))


# ---------------------------------------------------------------- emitters

def _dump_json(payload) -> str:
    return json.dumps(payload, indent=2, sort_keys=True, ensure_ascii=False) + "\n"


def _rank_text(report: RankReport) -> str:
    lines = [f"algebra: {report.instance.label}",
             f"kind: {report.kind}",
             f"rank: {report.lower}" if report.status == "exact"
             else f"rank: between {report.lower} and {report.upper} ({report.status})",
             "witness: " + json.dumps(report.certificate.witness.to_json())]
    if report.theta is not None:
        lines.append(f"theta: {report.theta}")
    if report.sweep:
        lines.append(f"sweep: {report.sweep['evaluated']} Lee forms, "
                     f"largest per-theta upper bound {report.sweep['sweep_max_upper']}")
    lines.append(f"certificate: {len(report.certificate.steps)} reduction steps")
    lines.append(f"scope: {report.scope}")
    lines.extend(f"note: {n}" for n in report.notes)
    return "\n".join(lines) + "\n"


def _rank_md(report: RankReport) -> str:
    rank_cell = str(report.lower) if report.status == "exact" else f"[{report.lower}, {report.upper}]"
    return ("| algebra | kind | rank | status |\n|---|---|---|---|\n"
            f"| {report.instance.label} | {report.kind} | {rank_cell} | {report.status} |\n")


def _parse_payload(instance: AlgebraInstance) -> dict:
    out = {"algebra": instance.to_json(), "n": instance.n, "label": instance.label,
           "differentials": [form_to_json(img) for img in instance.spec.images],
           "notes": list(instance.notes)}
    if instance.salamon is not None:
        out["structure_constants"] = instance.salamon.to_json()["structure_constants"]
        out["real_differentials"] = instance.salamon.describe()
    return out


def _parse_text(payload: dict, instance: AlgebraInstance) -> str:
    lines = [f"algebra: {payload['label']}"]
    lines.extend(payload.get("real_differentials", []))
    for j, img in enumerate(instance.spec.images, start=1):
        lines.append(f"d phi^{j} = {img if img else 0}")
    lines.extend(f"note: {n}" for n in payload["notes"])
    return "\n".join(lines) + "\n"


def _render(fmt: str, payload, text: str, md: str | None = None) -> str:
    if fmt == "json":
        return _dump_json(payload)
    if fmt == "md":
        return md if md is not None else "```\n" + text + "```\n"
    return text


# ---------------------------------------------------------------- commands

def cmd_rank(args) -> tuple[str, int]:
    instance = algebra_from_args(args)
    report = rank(args.kind, instance, seed=args.seed, sweep=args.sweep)
    return _render(args.format, report.to_json(), _rank_text(report), _rank_md(report)), EXIT_OK


def cmd_table(args) -> tuple[str, int]:
    result = reproduce_table(seed=args.seed, sweep=args.sweep)
    out = _render(args.format, result.to_json(), result.to_text(), result.to_markdown())
    return out, EXIT_OK if result.ok else EXIT_MISMATCH


def cmd_verify(args) -> tuple[str, int]:
    fixtures = None
    if args.fixtures:
        try:
            fixtures = json.loads(Path(args.fixtures).read_text(encoding="utf-8"))
        except (OSError, json.JSONDecodeError) as exc:
            raise UsageError(f"cannot read fixtures: {exc}") from None
    report = verify_formula_fixtures(fixtures)
    return _render(args.format, report.to_json(), report.to_text()), EXIT_OK if report.ok else EXIT_MISMATCH


def cmd_identities(args) -> tuple[str, int]:
    if args.instances < 1:
        raise UsageError("--instances must be positive")
    report = check_identities(instances=args.instances, seed=args.seed)
    return _render(args.format, report.to_json(), report.to_text()), EXIT_OK if report.ok else EXIT_MISMATCH


def cmd_suspension(args) -> tuple[str, int]:
    report = suspension_report()
    return _render(args.format, report.to_json(), report.to_text()), EXIT_OK if report.ok else EXIT_MISMATCH


def cmd_parse(args) -> tuple[str, int]:
    if args.text is not None:
        if args.salamon or args.family or args.algebra:
            raise UsageError("give the Salamon string either positionally or with --salamon")
        args.salamon = args.text
    if args.salamon and not (args.family or args.algebra):
        spec = parse_salamon(args.salamon)
        try:
            instance = instance_from_salamon(spec)
        except DomainError as exc:
            payload = {"algebra": {"salamon": spec.text}, "structure_constants": spec.to_json()["structure_constants"],
                       "real_differentials": spec.describe(), "complex_structure": str(exc)}
            text = "\n".join([f"algebra: salamon {spec.text}", *spec.describe(), f"complex structure: {exc}"]) + "\n"
            return _render(args.format, payload, text), EXIT_OK
    else:
        instance = algebra_from_args(args)
    payload = _parse_payload(instance)
    return _render(args.format, payload, _parse_text(payload, instance)), EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="hermrank", description="Exact degenerate special-Hermitian ranks of nilpotent Lie algebras.")
    parser.add_argument("--version", action="version", version=f"hermrank {__version__}")
    sub = parser.add_subparsers(dest="command", metavar="COMMAND", parser_class=_Parser)

    def common(p, seed=True, sweep=False):
        p.add_argument("--format", choices=FORMATS, default="json")
        p.add_argument("--out", help="write the report here instead of stdout")
        if seed:
            p.add_argument("--seed", type=int, default=0, help="seed of all random sampling (default 0)")
        if sweep:
            p.add_argument("--sweep", type=int, default=DEFAULT_SWEEP,
                           help=f"Lee forms tried for HlcK ranks (default {DEFAULT_SWEEP})")

    p = sub.add_parser("rank", help="rank of one algebra")
    p.add_argument("--kind", choices=KINDS, required=True)
    _add_algebra_flags(p)
    common(p, sweep=True)
    p.set_defaults(func=cmd_rank)

    p = sub.add_parser("table", help="reproduce the rank table of the four families")
    common(p, sweep=True)
    p.set_defaults(func=cmd_table)

    p = sub.add_parser("verify-paper", help="recompute the displayed formulas and compare with the embedded fixtures")
    p.add_argument("--fixtures", help="compare against this fixture file instead of the embedded one")
    common(p, seed=False)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("check-identities", help="randomized exact checks of the operator identities")
    p.add_argument("--instances", type=int, default=200, help="instances per family (default 200)")
    common(p)
    p.set_defaults(func=cmd_identities)

    p = sub.add_parser("suspension", help="algebraic checks of the torus-suspension example")
    common(p, seed=False)
    p.set_defaults(func=cmd_suspension)

    p = sub.add_parser("parse", help="parse an algebra and print its structure equations")
    p.add_argument("text", nargs="?", help="Salamon string, same as --salamon")
    _add_algebra_flags(p)
    common(p, seed=False)
    p.set_defaults(func=cmd_parse)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        if args.command is None:
            raise UsageError("hermrank: choose a subcommand, see --help")
        if getattr(args, "seed", 0) < 0:
            raise UsageError("--seed must be nonnegative")
        if getattr(args, "sweep", 1) < 1:
            raise UsageError("--sweep must be positive")
        output, code = args.func(args)
    except (UsageError, DomainError, SalamonError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    if args.out:
        try:
            Path(args.out).write_text(output, encoding="utf-8")
        except OSError as exc:
            print(f"error: cannot write {args.out}: {exc}", file=sys.stderr)
            return EXIT_INPUT
    else:
        sys.stdout.write(output)
    return code


if __name__ == "__main__":
    raise SystemExit(main())
