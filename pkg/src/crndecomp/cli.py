"""Command-line front end.

Exit codes: 0 success, 1 internal invariant failure, 2 unreadable or
unparsable input, 3 malformed partition or point, 4 missing rate constants.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from typing import Any, Optional, Sequence

from . import __version__
from .decomp import (
    Decomposition,
    InvariantError,
    MalformedPartition,
    OracleMismatch,
    count_decompositions,
    deficiency_relation,
    enumerate_coarsenings,
    finest_incidence_independent,
    finest_independent,
    is_bi_independent,
    is_incidence_independent,
    is_independent,
    subnetwork_report,
    weak_reversibility_of_decomposition,
)
from .exactla import format_rational
from .graphops import linkage_structure
from .kinetics import (
    MassActionSystem,
    equilibrium_intersection_check,
    is_complex_balanced_at,
    zero_support_analysis,
)
from .model import Network
from .parser import NetworkDocument, ParseError, read_network

EXIT_OK, EXIT_INTERNAL, EXIT_PARSE, EXIT_PARTITION, EXIT_RATES = 0, 1, 2, 3, 4


class CliError(Exception):
    def __init__(self, message: str, code: int) -> None:
        super().__init__(message)
        self.code = code


def _b(value: bool) -> str:
    return "true" if value else "false"


def _q(value) -> Any:
    """Exact number for JSON: int when integral, "p/q" string otherwise."""
    q = Fraction(value)
    return q.numerator if q.denominator == 1 else format_rational(q)


def reaction_name(net: Network, j: int) -> str:
    return net.reactions[j].display_name


def parse_parts(spec: str, net: Network) -> Decomposition:
    """``"1,2,3;4,5"`` -> Decomposition; tokens are labels or 1-based indices (labels win)."""
    labels = {rx.label: rx.index for rx in net.reactions if rx.label}
    parts = []
    for chunk in spec.split(";"):
        part = []
        for tok in chunk.split(","):
            tok = tok.strip()
            if not tok:
                raise MalformedPartition(f"empty reaction reference in {spec!r}")
            if tok in labels:
                part.append(labels[tok])
            elif tok.isdigit() and 1 <= int(tok) <= net.r:
                part.append(int(tok) - 1)
            else:
                raise MalformedPartition(f"unknown reaction {tok!r}")
        parts.append(part)
    flat = [j for p in parts for j in p]
    if len(flat) != len(set(flat)):
        raise MalformedPartition("a reaction is named more than once")
    d = Decomposition(tuple(tuple(p) for p in parts))
    d.validate(net.r)
    return d


def parse_point(spec: str, net: Network) -> tuple[Fraction, ...]:
    values: dict[str, Fraction] = {}
    for item in spec.split(","):
        if "=" not in item:
            raise CliError(f"bad point entry {item.strip()!r}; expected NAME=VALUE", EXIT_PARTITION)
        name, _, raw = item.partition("=")
        name = name.strip()
        if name not in net.species_names:
            raise CliError(f"unknown species {name!r}", EXIT_PARTITION)
        if name in values:
            raise CliError(f"species {name} assigned twice", EXIT_PARTITION)
        try:
            q = Fraction(raw.strip())
        except (ValueError, ZeroDivisionError):
            raise CliError(f"bad value {raw.strip()!r} for {name}", EXIT_PARTITION) from None
        if q < 0:
            raise CliError(f"negative concentration for {name}", EXIT_PARTITION)
        values[name] = q
    missing = [s for s in net.species_names if s not in values]
    if missing:
        raise CliError(f"point does not assign {', '.join(missing)}", EXIT_PARTITION)
    return tuple(values[s] for s in net.species_names)


def _network_json(net: Network) -> dict:
    st = net.stats
    return {
        "species": list(net.species_names),
        "complexes": [net.complex_name(i) for i in range(net.n)],
        "reactions": [
            {"index": j + 1, "label": reaction_name(net, j), "text": net.reaction_text(j)} for j in range(net.r)
        ],
        "stats": {
            "n": st.n, "m": st.m, "r": st.r, "l": st.l, "sl": st.sl, "t": st.t, "s": st.s,
            "deficiency": st.delta,
            "weakly_reversible": st.weakly_reversible,
            "reversible": st.reversible,
        },
    }


def _parts_json(net: Network, d: Decomposition) -> list[list[str]]:
    return [[reaction_name(net, j) for j in p] for p in d.parts]


def _parts_text(net: Network, d: Decomposition) -> str:
    return " | ".join("{" + ",".join(reaction_name(net, j) for j in p) + "}" for p in d.parts)


def _part_reports(net: Network, d: Decomposition) -> list[dict]:
    return [
        {
            "reactions": [reaction_name(net, j) for j in pr.reactions],
            "n": pr.n, "l": pr.l, "s": pr.s, "deficiency": pr.delta,
            "weakly_reversible": pr.weakly_reversible,
            "reversible": pr.reversible,
        }
        for pr in subnetwork_report(net, d)
    ]


def _part_lines(parts: list[dict]) -> list[str]:
    out = []
    for k, p in enumerate(parts, start=1):
        out.append(
            f"  P{k}: {{{','.join(p['reactions'])}}} n={p['n']} l={p['l']} s={p['s']} "
            f"deficiency={p['deficiency']} weakly_reversible={_b(p['weakly_reversible'])} "
            f"reversible={_b(p['reversible'])}"
        )
    return out


def cmd_analyze(doc: NetworkDocument, args) -> tuple[dict, list[str]]:
    net = doc.network
    st = net.stats
    ls = linkage_structure(net)
    result = {
        "linkage_classes": [[net.complex_name(c) for c in cls] for cls in ls.classes],
        "strong_linkage_classes": [[net.complex_name(c) for c in cls] for cls in ls.strong],
        "terminal_strong_linkage_classes": [[net.complex_name(c) for c in cls] for cls in ls.terminal_strong],
    }
    lines = [
        f"n={st.n} l={st.l} s={st.s} deficiency={st.delta} "
        f"weakly_reversible={_b(st.weakly_reversible)} reversible={_b(st.reversible)}",
        f"m={st.m} r={st.r} sl={st.sl} t={st.t}",
    ]
    for title, key in (("linkage classes", "linkage_classes"),
                       ("strong linkage classes", "strong_linkage_classes"),
                       ("terminal strong linkage classes", "terminal_strong_linkage_classes")):
        lines.append(f"{title}: " + " | ".join("{" + ", ".join(c) + "}" for c in result[key]))
    return result, lines


def cmd_decompose(doc: NetworkDocument, args) -> tuple[dict, list[str]]:
    net = doc.network
    if args.kind == "independent":
        d, _ = finest_independent(net)
    else:
        d, _ = finest_incidence_independent(net)
    parts = _part_reports(net, d)
    result: dict[str, Any] = {
        "kind": args.kind,
        "finest": _parts_json(net, d),
        "length": d.length,
        "trivial": d.is_trivial,
        "parts": parts,
    }
    kind_text = "independent" if args.kind == "independent" else "incidence independent"
    lines = [
        f"finest {kind_text} decomposition: length={d.length} "
        f"({'trivial' if d.is_trivial else 'nontrivial'})",
        *_part_lines(parts),
    ]
    if args.count:
        result["count"] = count_decompositions(d.length)
        lines.append(f"count={result['count']}")
    if args.enumerate:
        listed = []
        for k, c in enumerate(enumerate_coarsenings(d, args.max), start=1):
            listed.append(_parts_json(net, c))
            lines.append(f"D{k}: {_parts_text(net, c)}")
        result["decompositions"] = listed
    return result, lines


def cmd_check(doc: NetworkDocument, args) -> tuple[dict, list[str]]:
    net = doc.network
    d = parse_parts(args.parts, net)
    ind = is_independent(net, d)
    inc = is_incidence_independent(net, d)
    rel = deficiency_relation(net, d)
    wr = weak_reversibility_of_decomposition(net, d)
    result = {
        "parts": _parts_json(net, d),
        "independent": ind,
        "incidence_independent": inc,
        "bi_independent": is_bi_independent(net, d),
        "deficiency": rel.delta,
        "part_deficiencies": list(rel.part_deltas),
        "deficiency_relation": rel.relation,
        "part_weakly_reversible": list(wr.weakly_reversible),
        "part_reversible": list(wr.reversible),
        "weakly_reversible_decomposition": wr.all_weakly_reversible,
        "reversible_decomposition": wr.all_reversible,
    }
    lines = [
        f"decomposition: {_parts_text(net, d)}",
        f"independent={_b(ind)}",
        f"incidence_independent={_b(inc)}",
        f"bi_independent={_b(result['bi_independent'])}",
        f"deficiency={rel.delta} sum_of_part_deficiencies={rel.total} "
        f"({'+'.join(map(str, rel.part_deltas))}) relation: deficiency {rel.relation} sum",
        *_part_lines(_part_reports(net, d)),
    ]
    return result, lines


def cmd_zero_analysis(doc: NetworkDocument, args) -> tuple[dict, list[str]]:
    net = doc.network
    d, _ = finest_independent(net)
    facts = zero_support_analysis(net, d)
    names = net.species_names
    zero = [names[s] for s in sorted(facts.zero_species)]
    unsupported = [net.complex_name(c) for c in sorted(facts.unsupported_complexes)]
    log = [
        {
            "rule": e.rule,
            "subject": names[e.index] if e.kind == "species" else net.complex_name(e.index),
            "kind": e.kind,
            "reason": e.reason,
        }
        for e in facts.derivation_log
    ]
    result = {
        "finest": _parts_json(net, d),
        "deficiency_zero_parts": [k + 1 for k in facts.deficiency_zero_parts],
        "zero_species": zero,
        "unsupported_complexes": unsupported,
        "positive_steady_state_possible": facts.positive_steady_state_possible,
        "conditional": facts.conditional,
        "derivation_log": log,
    }
    lines = [
        f"finest independent decomposition: {_parts_text(net, d)}",
        "deficiency-zero parts: " + (", ".join(f"P{k}" for k in result["deficiency_zero_parts"]) or "none"),
        "zero species: {" + ", ".join(zero) + "}",
        "unsupported complexes: {" + ", ".join(unsupported) + "}",
    ]
    if facts.positive_steady_state_possible:
        lines.append("verdict: no species is forced to zero by this analysis")
    else:
        lines.append("verdict: a positive steady state is not possible")
    lines.append("derivation:")
    for e in log:
        lines.append(f"  [{e['rule']}] {e['kind']} {e['subject']}: {e['reason']}")
    return result, lines


def cmd_equilibrium(doc: NetworkDocument, args) -> tuple[dict, list[str]]:
    net = doc.network
    if doc.rates is None:
        raise CliError("network file has no [k=...] rate annotations", EXIT_RATES)
    x = parse_point(args.point, net)
    sys_ = MassActionSystem(net, doc.rate_vector())
    d = parse_parts(args.parts, net) if args.parts else Decomposition.trivial(net.r)
    rep = equilibrium_intersection_check(sys_, d, x)
    result: dict[str, Any] = {
        "point": {s: _q(v) for s, v in zip(net.species_names, x)},
        "equilibrium": rep.whole,
    }
    lines = [
        "point: " + ", ".join(f"{s}={format_rational(v)}" for s, v in zip(net.species_names, x)),
        f"equilibrium={_b(rep.whole)}",
    ]
    if args.parts:
        result["parts"] = [
            {"reactions": names, "equilibrium": eq} for names, eq in zip(_parts_json(net, d), rep.parts)
        ]
        result["independent"] = rep.independent
        for k, (names, eq) in enumerate(zip(_parts_json(net, d), rep.parts), start=1):
            lines.append(f"  P{k}: {{{','.join(names)}}} equilibrium={_b(eq)}")
        lines.append(f"independent={_b(rep.independent)}")
    if rep.positive_point:
        cb = is_complex_balanced_at(sys_, x)
        result["complex_balanced"] = cb
        lines.append(f"complex_balanced={_b(cb)}")
    return result, lines


COMMANDS = {
    "analyze": cmd_analyze,
    "decompose": cmd_decompose,
    "check": cmd_check,
    "zero-analysis": cmd_zero_analysis,
    "equilibrium": cmd_equilibrium,
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("text", "json"), default=argparse.SUPPRESS)
    common.add_argument("--seed", type=int, default=argparse.SUPPRESS)

    p = argparse.ArgumentParser(
        prog="crndecomp",
        description="Independent and incidence-independent decompositions of reaction networks.",
        parents=[common],
    )
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    a = sub.add_parser("analyze", parents=[common], help="network statistics")
    a.add_argument("file")

    d = sub.add_parser("decompose", parents=[common], help="finest decomposition, counts, enumeration")
    d.add_argument("file")
    d.add_argument("--kind", choices=("independent", "incidence"), default="independent")
    d.add_argument("--count", action="store_true", help="print the number of decompositions")
    d.add_argument("--enumerate", action="store_true", help="list every coarsening of the finest")
    d.add_argument("--max", type=int, default=None, metavar="K", help="stop enumeration after K")

    c = sub.add_parser("check", parents=[common], help="classify a given partition")
    c.add_argument("file")
    c.add_argument("--parts", required=True, help='e.g. "1,2,3;4,5" (1-based indices or labels)')

    z = sub.add_parser("zero-analysis", parents=[common], help="species forced to zero at steady state")
    z.add_argument("file")

    e = sub.add_parser("equilibrium", parents=[common], help="evaluate f(x) at a point")
    e.add_argument("file")
    e.add_argument("--point", required=True, help='e.g. "A=2,B=1,C=2"')
    e.add_argument("--parts", default=None)
    return p


def run(argv: Optional[Sequence[str]] = None) -> tuple[int, str]:
    """Run the CLI and return (exit code, output text) without touching sys.exit."""
    args = build_parser().parse_args(argv)
    fmt = getattr(args, "format", "text")
    echo = {k: v for k, v in vars(args).items() if k not in ("command", "format")}
    echo = {"name": args.command, "format": fmt, **echo}
    try:
        try:
            doc = read_network(args.file)
        except OSError as exc:
            raise CliError(f"cannot read {args.file}: {exc.strerror}", EXIT_PARSE) from None
        except ParseError as exc:
            raise CliError(f"{args.file}: {exc}", EXIT_PARSE) from None
        result, lines = COMMANDS[args.command](doc, args)
    except CliError as exc:
        return exc.code, _error(fmt, echo, str(exc), exc.code)
    except MalformedPartition as exc:
        return EXIT_PARTITION, _error(fmt, echo, f"malformed partition: {exc}", EXIT_PARTITION)
    except (InvariantError, OracleMismatch, AssertionError) as exc:
        return EXIT_INTERNAL, _error(fmt, echo, f"internal invariant failure: {exc}", EXIT_INTERNAL)

    if fmt == "json":
        report = {"command": echo, "network": _network_json(doc.network), "result": result}
        return EXIT_OK, json.dumps(report, indent=2) + "\n"
    return EXIT_OK, "\n".join(lines) + "\n"


def _error(fmt: str, echo: dict, message: str, code: int) -> str:
    if fmt == "json":
        return json.dumps({"command": echo, "network": None, "result": {"error": message, "exit_code": code}},
                          indent=2) + "\n"
    return f"error: {message}\n"


def main(argv: Optional[Sequence[str]] = None) -> int:
    code, out = run(argv)
    # text-mode errors go to stderr; JSON error reports stay on stdout
    to_stderr = code != EXIT_OK and out.startswith("error:")
    (sys.stderr if to_stderr else sys.stdout).write(out)
    return code


if __name__ == "__main__":
    sys.exit(main())
