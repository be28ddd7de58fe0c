"""Command-line front end: ``fanohyp {bott,scan,koszul,wps,fano,tables}``.

Every subcommand builds a JSON-ready record and renders it as json, csv or
markdown.  Rendered output is cached by a hash of the normalized arguments.
Exit codes: 0 success, 1 usage error, 2 internal inconsistency.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from typing import Callable

from . import __version__
from .bundles import GrassmannianSpace, bundle, cohomology, line_bundle, parse_weight
from .cache import ENV_VAR, ResultCache
from .catalog import CATALOG, InconsistencyError, audit, classify, get_model
from .koszul import (
    CURVE_SETUPS,
    DEFAULT_TWIST_MAX,
    ScanRegion,
    curve_vanishing_check,
    exception_markdown,
    exception_rows,
    restriction_surjective,
    scan,
    vanishing_markdown,
    vanishing_rows,
    verify_closed_form,
)
from .wps import (
    WeightedSpace,
    coin_lemma,
    ideal_generation_check,
    multiplication_cokernel_dim,
    optimality_witness,
    section_dominating_check,
    theorem_bound,
)

FORMATS = ("json", "csv", "markdown")


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: error: {message}\n")


def _weight(text: str) -> tuple[int, ...]:
    try:
        return parse_weight(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _csv(header: list[str], rows: list[list]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    writer.writerows(rows)
    return buf.getvalue()


def _json(record) -> str:
    return json.dumps(record, indent=2, ensure_ascii=False) + "\n"


def _space(args) -> GrassmannianSpace:
    try:
        return GrassmannianSpace(args.k, args.n)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


# -- subcommands -------------------------------------------------------------


def cmd_bott(args) -> tuple[dict, Callable[[str], str]]:
    space = _space(args)
    try:
        V = bundle(space, args.u, args.q, args.twist)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    res = cohomology(V)
    record = {
        "space": {"k": space.k, "n": space.n},
        "u_weight": list(V.u_weight.parts),
        "q_weight": list(V.q_weight.parts),
        "twist": V.twist,
        "bundle": str(V),
        "vanishes": res.vanishes,
        "degree": res.degree,
        "dimension": res.dimension,
        "dominant": None if res.vanishes else list(res.dominant),
    }

    def render(fmt):
        if fmt == "json":
            return _json(record)
        if fmt == "csv":
            return _csv(
                ["k", "n", "u_weight", "q_weight", "twist", "vanishes", "degree", "dimension"],
                [[space.k, space.n, str(V.u_weight), str(V.q_weight), V.twist, res.vanishes, res.degree, res.dimension]],
            )
        if res.vanishes:
            return f"{V} on {space}: all cohomology vanishes\n"
        return f"{V} on {space}: H^{res.degree} has dimension {res.dimension}, all other cohomology vanishes\n"

    return record, render


def cmd_scan(args):
    space = _space(args)
    try:
        region = ScanRegion(args.i_max if args.i_max is not None else space.dim, args.n_min, args.n_max)
        report = scan(args.u, args.q, space, region)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    record = report.as_dict()

    def render(fmt):
        if fmt == "json":
            return _json(record)
        if fmt == "csv":
            return _csv(["i", "N", "dim"], [[h.i, h.N, h.dim] for h in report.hits])
        head = f"Scan of {report.label}(-N) on {space}, i ≤ {region.i_max}, {region.twist_min} ≤ N ≤ {region.twist_max}\n\n"
        if not report.hits:
            return head + "no nonzero cohomology in the region\n"
        lines = ["| i | N | dim |", "|---|---|---|"] + [f"| {h.i} | {h.N} | {h.dim} |" for h in report.hits]
        return head + "\n".join(lines) + "\n"

    return record, render


def cmd_koszul(args):
    if args.closed_form:
        if args.k is None or args.n is None:
            raise UsageError("--closed-form needs --k and --n")
        try:
            rep = verify_closed_form(args.k, args.n, args.d_max, literal=args.literal)
        except ValueError as exc:
            raise UsageError(str(exc)) from None
        record = {
            "space": {"k": rep.k, "n": rep.n},
            "d_max": rep.d_max,
            "literal": args.literal,
            "cases": rep.cases,
            "mismatches": [
                {"side": m.side, "weight": list(m.weight), "d": m.d, "i": m.i, "predicted": m.predicted, "dim": m.actual_dimension}
                for m in rep.mismatches
            ],
        }

        def render(fmt):
            if fmt == "json":
                return _json(record)
            if fmt == "csv":
                return _csv(
                    ["side", "weight", "d", "i", "predicted", "dim"],
                    [[m.side, ",".join(map(str, m.weight)), m.d, m.i, m.predicted, m.actual_dimension] for m in rep.mismatches],
                )
            text = f"closed form on Gr({rep.k},{rep.n}), d ≤ {rep.d_max}: {rep.cases} cases, {len(rep.mismatches)} mismatches\n"
            return text + "".join(f"- {m}\n" for m in rep.mismatches)

        return record, render

    if args.id is None or args.a is None:
        raise UsageError("koszul needs --id and --a (or --closed-form)")
    model = _model(args.id)
    if model.weighted:
        raise UsageError(f"{args.id} lives on a weighted projective space; use `fano --audit`")
    entries = []
    res = restriction_surjective(model.structural, line_bundle(model.ambient, args.a))
    entries.append({"check": f"restriction onto O({args.a})", "holds": res.holds, "terms": res.terms_checked,
                    "witness": None if res.holds else str(res.witness)})
    if args.d is not None:
        setup = CURVE_SETUPS.get(args.id)
        if setup is None:
            raise UsageError(f"no curve vanishing setup for {args.id}; available: {', '.join(CURVE_SETUPS)}")
        cres = curve_vanishing_check(setup.koszul_bundle(args.a, args.d), setup.targets)
        entries.append({"check": f"curve vanishing (a={args.a}, d={args.d})", "holds": cres.holds,
                        "terms": cres.terms_checked, "witness": None if cres.holds else str(cres.witness)})
    record = {"id": args.id, "a": args.a, "d": args.d, "checks": entries}

    def render(fmt):
        if fmt == "json":
            return _json(record)
        if fmt == "csv":
            return _csv(["check", "holds", "terms", "witness"], [[e["check"], e["holds"], e["terms"], e["witness"] or ""] for e in entries])
        lines = [f"{args.id} ({model.description}):"]
        for e in entries:
            mark = "holds" if e["holds"] else f"FAILS: {e['witness']}"
            lines.append(f"- {e['check']}: {mark} ({e['terms']} terms)")
        return "\n".join(lines) + "\n"

    return record, render


def cmd_wps(args):
    if args.x is not None or args.y is not None:
        if args.x is None or args.y is None:
            raise UsageError("coin lemma needs both --x and --y")
        try:
            alpha, beta = coin_lemma(args.x, args.y)
        except ValueError as exc:
            raise UsageError(str(exc)) from None
        record = {"x": args.x, "y": args.y, "alpha": alpha, "beta": beta}
        return record, _simple(record, f"{alpha}·{args.x} + {beta}·{args.y} = {args.x * args.y - 1}\n")
    try:
        space = WeightedSpace(args.units, tuple(args.heavy))
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    base = {"space": {"units": space.unit_count, "heavy": list(space.heavy_weights)}}
    if args.bound:
        tb = theorem_bound(space)
        if not tb:
            record = {**base, "applicable": False, "reason": tb.reason}
            return record, _simple(record, f"{space}: bound not applicable ({tb.reason})\n")
        record = {**base, "applicable": True, "d": tb.d, "a_min": tb.a_min}
        return record, _simple(record, f"{space}: O({tb.d}) dominates O(a) for a ≥ {tb.a_min}\n")
    if args.witness:
        try:
            w = optimality_witness(space)
        except ValueError as exc:
            raise UsageError(str(exc)) from None
        record = {**base, "d": w.d, "a": w.degree, "section": w.format_section(),
                  "vanishes_at_point": w.vanishes_at_point, "in_image": w.in_image}
        text = f"{space}: {w.format_section()} in degree {w.degree} is {'inside' if w.in_image else 'outside'} the image\n"
        return record, _simple(record, text)
    if args.ideal is not None:
        try:
            res = ideal_generation_check(space, args.ideal, args.t)
        except ValueError as exc:
            raise UsageError(str(exc)) from None
        record = {**base, "m": args.ideal, "t": args.t, "holds": res.holds,
                  "kernel_dims": {str(j): v for j, v in res.kernel_dims.items()},
                  "generated_dims": {str(j): v for j, v in res.generated_dims.items()}}
        dims = ", ".join(f"degree {j}: {res.generated_dims[j]}/{res.kernel_dims[j]}" for j in sorted(res.kernel_dims))
        text = f"{space} by O({args.ideal}): quadric generation through degree {args.t} {'holds' if res.holds else 'fails'} ({dims})\n"
        return record, _simple(record, text)
    if args.cokernel is not None:
        if len(args.cokernel) != 2:
            raise UsageError("--cokernel takes two degrees, e.g. 1,1")
        a1, a2 = args.cokernel
        try:
            dim = multiplication_cokernel_dim(space, a1, a2)
        except ValueError as exc:
            raise UsageError(str(exc)) from None
        record = {**base, "a1": a1, "a2": a2, "cokernel_dim": dim}
        return record, _simple(record, f"{space}: cokernel of H^0(O({a1})) ⊗ H^0(O({a2})) has dimension {dim}\n")
    if args.d is None or args.a is None:
        raise UsageError("wps needs --d and --a, or one of --bound, --witness, --ideal, --cokernel, --x/--y")
    try:
        res = section_dominating_check(space, args.d, args.a)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    record = res.as_dict()
    text = f"{space}: O({args.d}) {'is' if res.surjective else 'is not'} section-dominating for O({args.a}) (rank {res.rank} of {res.target_dim})\n"
    return record, _simple(record, text)


def _simple(record: dict, text: str) -> Callable[[str], str]:
    def render(fmt):
        if fmt == "json":
            return _json(record)
        if fmt == "csv":
            flat = {k: (json.dumps(v, sort_keys=True) if isinstance(v, (dict, list)) else v) for k, v in record.items()}
            return _csv(list(flat), [list(flat.values())])
        return text

    return render


def _model(fid: str):
    try:
        return get_model(fid)
    except KeyError as exc:
        raise UsageError(exc.args[0]) from None


def cmd_fano(args):
    model = _model(args.id)
    if args.a < 1:
        raise UsageError("--a must be positive")
    verdict = audit(args.id, args.a) if args.audit else classify(args.id, args.a)
    record = verdict.as_dict()
    record["branches"] = [b.as_dict() for b in verdict.justification]
    record["notes"] = list(verdict.notes)

    def render(fmt):
        if fmt == "json":
            return _json(record)
        if fmt == "csv":
            coeff = verdict.bound_coefficient
            return _csv(["id", "a", "status", "coefficient"], [[verdict.id, verdict.a, verdict.status.value, "" if coeff is None else str(coeff)]])
        coeff = "" if verdict.bound_coefficient is None else f", 2g-2 ≥ {verdict.bound_coefficient}·deg_C O(1)"
        lines = [f"{model.id}: {model.description}, index {model.index}, a = {verdict.a}: {verdict.status.value}{coeff}"]
        for b in verdict.justification:
            lines.append(f"- [{b.component} / {b.route}] {b.branch}: {b.expression} = {b.coefficient}")
        for c in verdict.checks:
            lines.append(f"- check ({c.source}) {c.name}: {'ok' if c.result else 'FAILED'}" + (f" [{c.detail}]" if c.detail else ""))
        lines.extend(f"- note: {n}" for n in verdict.notes)
        return "\n".join(lines) + "\n"

    return record, render


def cmd_tables(args):
    setup = CURVE_SETUPS.get(args.family)
    if setup is None:
        raise UsageError(f"unknown table family {args.family!r}; expected one of {', '.join(CURVE_SETUPS)}")
    rows = vanishing_rows(setup, args.n_max) if args.kind in ("vanishing", "both") else []
    reports = exception_rows(setup, 0, args.n_max) if args.kind in ("exceptions", "both") else []
    record = {
        "family": args.family,
        "space": {"k": setup.space.k, "n": setup.space.n},
        "n_max": args.n_max,
        "vanishing": [r.as_dict() for r in rows],
        "exceptions": [r.as_dict() for r in reports],
    }

    def render(fmt):
        if fmt == "json":
            return _json(record)
        if fmt == "csv":
            out = []
            for r in rows:
                refs = ";".join(f"{i}:{n}" for i, n in r.refinements)
                out.append(["vanishing", r.label(setup.space), r.i_max, r.n_min, refs, "", "", ""])
            for rep in reports:
                for h in rep.hits or [None]:
                    out.append(["exceptions", rep.label, rep.region.i_max, rep.region.twist_min, "",
                                "" if h is None else h.i, "" if h is None else h.N, "" if h is None else h.dim])
            return _csv(["table", "bundle", "i_max", "n_min", "refinements", "i", "N", "dim"], out)
        parts = [f"# {args.family} on {setup.space}\n"]
        if args.kind in ("vanishing", "both"):
            parts.append("\n## Required vanishing of H^i(bundle(-N))\n\n" + vanishing_markdown(setup, rows))
        if args.kind in ("exceptions", "both"):
            parts.append(f"\n## Nonzero non-top cohomology, 0 ≤ N ≤ {args.n_max}\n\n" + exception_markdown(reports))
        return "".join(parts)

    return record, render


COMMANDS = {"bott": cmd_bott, "scan": cmd_scan, "koszul": cmd_koszul, "wps": cmd_wps, "fano": cmd_fano, "tables": cmd_tables}


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="fanohyp", description="Bott-Borel-Weil cohomology, weighted projective checks and Fano verdicts.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    common = _Parser(add_help=False)
    common.add_argument("--format", choices=FORMATS, default="markdown")
    common.add_argument("--cache-dir", default=None, help=f"cache directory (default: ${ENV_VAR}, unset disables)")
    common.add_argument("--no-cache", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("bott", parents=[common], help="cohomology of one homogeneous bundle")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--u", type=_weight, default=(), help="U-weight, comma separated")
    p.add_argument("--q", type=_weight, default=(), help="Q-weight, comma separated")
    p.add_argument("--twist", type=int, default=0)

    p = sub.add_parser("scan", parents=[common], help="cohomology of K_u U∨ ⊗ K_q Q∨(-N) over a range of N")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--u", type=_weight, default=())
    p.add_argument("--q", type=_weight, default=())
    p.add_argument("--i-max", type=int, default=None)
    p.add_argument("--n-min", type=int, default=0)
    p.add_argument("--n-max", type=int, default=DEFAULT_TWIST_MAX)

    p = sub.add_parser("koszul", parents=[common], help="Koszul vanishing checks")
    p.add_argument("--id")
    p.add_argument("--a", type=int)
    p.add_argument("--d", type=int)
    p.add_argument("--closed-form", action="store_true", help="compare the closed-form rule against Bott")
    p.add_argument("--k", type=int)
    p.add_argument("--n", type=int)
    p.add_argument("--d-max", type=int)
    p.add_argument("--literal", action="store_true", help="use d >= n in the saturated U-side top branch")

    p = sub.add_parser("wps", parents=[common], help="weighted projective space checks")
    p.add_argument("--units", type=int, default=1)
    p.add_argument("--heavy", type=_weight, default=())
    p.add_argument("--d", type=int)
    p.add_argument("--a", type=int)
    p.add_argument("--bound", action="store_true")
    p.add_argument("--witness", action="store_true")
    p.add_argument("--ideal", type=int, metavar="M", help="quadric generation for the embedding by O(M)")
    p.add_argument("--t", type=int, default=3)
    p.add_argument("--cokernel", type=_weight, metavar="A1,A2")
    p.add_argument("--x", type=int)
    p.add_argument("--y", type=int)

    p = sub.add_parser("fano", parents=[common], help="hyperbolicity verdict for a family and degree")
    p.add_argument("--id", required=True, help=f"one of {', '.join(CATALOG)}")
    p.add_argument("--a", type=int, required=True)
    p.add_argument("--audit", action="store_true", help="run every supporting check")

    p = sub.add_parser("tables", parents=[common], help="regenerate the vanishing and exception tables")
    p.add_argument("--family", required=True, choices=sorted(CURVE_SETUPS))
    p.add_argument("--n-max", type=int, default=DEFAULT_TWIST_MAX)
    p.add_argument("--kind", choices=("vanishing", "exceptions", "both"), default="both")
    return parser


def _cache_payload(args) -> dict:
    skip = {"cache_dir", "no_cache"}
    return {k: (list(v) if isinstance(v, tuple) else v) for k, v in sorted(vars(args).items()) if k not in skip}


def run(argv=None, stdout=None) -> int:
    stdout = stdout or sys.stdout
    args = build_parser().parse_args(argv)
    cache = ResultCache.from_settings(args.cache_dir, args.no_cache, __version__)
    payload = _cache_payload(args)
    try:
        output = cache.get(payload) if cache else None
        if output is None:
            _, render = COMMANDS[args.command](args)
            output = render(args.format)
            if cache:
                cache.put(payload, output)
    except UsageError as exc:
        print(f"fanohyp {args.command}: error: {exc}", file=sys.stderr)
        return 1
    except InconsistencyError as exc:
        print(f"fanohyp {args.command}: internal inconsistency: {exc}", file=sys.stderr)
        return 2
    stdout.write(output)
    return 0


def main(argv=None) -> None:
    sys.exit(run(argv))


if __name__ == "__main__":
    main()
