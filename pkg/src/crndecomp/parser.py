"""Plain-text reaction network format.

One reaction per line::

    # comment
    species: A, B, C            (optional; fixes species order)
    R1: 2A + B -> A + 2B [k=1]
    B + A <-> A [k=1, 2]
    V -> 0

Labels and rate annotations are optional.  ``<->`` expands to a forward and
a backward reaction (labels get ``_f`` / ``_b``); a single rate applies to
both directions, two comma-separated rates are forward then backward.
Coefficients are positive integers or fractions ``p/q``; species names start
with a letter and may contain letters, digits and underscores.  ``0`` is the
empty complex.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

from .exactla import format_rational
from .model import Network, NetworkError


class ParseError(ValueError):
    def __init__(self, message: str, line: int, column: int) -> None:
        super().__init__(f"line {line}, column {column}: {message}")
        self.message = message
        self.line = line
        self.column = column


@dataclass(frozen=True)
class NetworkDocument:
    network: Network
    rates: Optional[dict[int, Fraction]] = None
    source_labels: dict[int, str] = field(default_factory=dict)

    def __post_init__(self) -> None:
        if self.rates is not None:
            if set(self.rates) != set(range(self.network.r)):
                raise ValueError("rates must be given for every reaction or for none")
            if any(k <= 0 for k in self.rates.values()):
                raise ValueError("rate constants must be positive")

    def rate_vector(self) -> tuple[Fraction, ...]:
        if self.rates is None:
            raise ValueError("document has no rate constants")
        return tuple(self.rates[j] for j in range(self.network.r))


_NAME = re.compile(r"[A-Za-z][A-Za-z0-9_]*")
_LABEL = re.compile(r"\s*([A-Za-z0-9_][A-Za-z0-9_.\-]*)\s*:")
_COEF = re.compile(r"(\d+)(?:\s*/\s*(\d+))?")
_RATE_VALUE = re.compile(r"\s*(\d+\s*/\s*\d+|\d+(?:\.\d+)?)\s*")
_ARROWS = ("<->", "->")


def _parse_rate(text: str, line: int, col: int) -> Fraction:
    m = _RATE_VALUE.fullmatch(text)
    if not m:
        raise ParseError(f"bad rate constant {text.strip()!r}", line, col)
    try:
        value = Fraction(m.group(1).replace(" ", ""))
    except ZeroDivisionError:
        raise ParseError("zero denominator in rate constant", line, col) from None
    if value <= 0:
        raise ParseError("rate constant must be positive", line, col)
    return value


def _parse_complex(text: str, offset: int, line: int, species: dict[str, int]) -> dict[int, Fraction]:
    """Parse ``2A + B`` (or ``0``) starting at column ``offset`` (0-based)."""
    stripped = text.strip()
    if not stripped:
        raise ParseError("empty complex (write 0 for the zero complex)", line, offset + 1)
    if stripped == "0":
        return {}
    out: dict[int, Fraction] = {}
    pos = 0
    for term in text.split("+"):
        col = offset + pos + (len(term) - len(term.lstrip())) + 1
        pos += len(term) + 1
        t = term.strip()
        if not t:
            raise ParseError("empty term", line, col)
        coef = Fraction(1)
        m = _COEF.match(t)
        if m:
            num, den = m.group(1), m.group(2)
            if den is not None and int(den) == 0:
                raise ParseError("zero denominator", line, col)
            coef = Fraction(int(num), int(den) if den else 1)
            t = t[m.end():].lstrip()
            if t.startswith(".") or t.startswith("e"):
                raise ParseError("decimal coefficients are not allowed; use p/q", line, col)
            if coef == 0:
                raise ParseError("zero coefficient", line, col)
        if t.startswith("*"):
            t = t[1:].lstrip()
        if not _NAME.fullmatch(t):
            raise ParseError(f"bad species name {t!r}", line, col)
        idx = species.setdefault(t, len(species))
        out[idx] = out.get(idx, Fraction(0)) + coef
    return out


def parse_network(text: str) -> NetworkDocument:
    species: dict[str, int] = {}
    entries: list[tuple[dict, dict, Optional[str], Optional[Fraction], int]] = []
    labels_seen: dict[str, int] = {}
    any_rate = False

    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].rstrip()
        if not line.strip():
            continue

        if not any(a in line for a in _ARROWS):
            m = re.match(r"\s*species\s*:", line)
            if not m:
                raise ParseError("expected a reaction arrow '->' or '<->'", lineno, len(line) + 1)
            if entries:
                raise ParseError("species declaration must come before reactions", lineno, 1)
            for tok in re.split(r"[,\s]+", line[m.end():].strip()):
                if not tok:
                    continue
                if not _NAME.fullmatch(tok):
                    raise ParseError(f"bad species name {tok!r}", lineno, line.find(tok) + 1)
                if tok in species:
                    raise ParseError(f"species {tok} declared twice", lineno, line.find(tok) + 1)
                species[tok] = len(species)
            continue

        body_start = 0
        label = None
        lm = _LABEL.match(line)
        if lm:
            label = lm.group(1)
            body_start = lm.end()

        rates: list[Fraction] = []
        body_end = len(line)
        bracket = line.find("[", body_start)
        if bracket != -1:
            close = line.find("]", bracket)
            if close == -1:
                raise ParseError("unterminated rate annotation", lineno, bracket + 1)
            if line[close + 1:].strip():
                raise ParseError("unexpected text after rate annotation", lineno, close + 2)
            inner = line[bracket + 1:close]
            km = re.fullmatch(r"\s*k\s*=(.*)", inner)
            if not km:
                raise ParseError("rate annotation must look like [k=VALUE]", lineno, bracket + 1)
            col = bracket + 2 + km.start(1)
            rates = [_parse_rate(v, lineno, col) for v in km.group(1).split(",")]
            body_end = bracket
            any_rate = True

        body = line[body_start:body_end]
        reversible = "<->" in body
        arrow = "<->" if reversible else "->"
        a = body.find(arrow)
        if body.count("->") != 1:
            raise ParseError("exactly one reaction arrow per line", lineno, body_start + a + 1)
        lhs, rhs = body[:a], body[a + len(arrow):]
        reac = _parse_complex(lhs, body_start, lineno, species)
        prod = _parse_complex(rhs, body_start + a + len(arrow), lineno, species)
        if reac == prod:
            raise ParseError("self-loop reaction: reactant equals product", lineno, body_start + a + 1)
        if len(rates) > (2 if reversible else 1):
            raise ParseError("too many rate constants", lineno, bracket + 1)

        if reversible:
            kf = rates[0] if rates else None
            kb = rates[-1] if rates else None
            lf = f"{label}_f" if label else None
            lb = f"{label}_b" if label else None
            pending = [(reac, prod, lf, kf), (prod, reac, lb, kb)]
        else:
            pending = [(reac, prod, label, rates[0] if rates else None)]

        for r_, p_, lab, k in pending:
            if lab is not None:
                if lab in labels_seen:
                    raise ParseError(f"duplicate reaction label {lab!r}", lineno, 1)
                labels_seen[lab] = len(entries)
            for prev in entries:
                if prev[0] == r_ and prev[1] == p_:
                    raise ParseError(f"duplicate reaction (same as line {prev[4]})", lineno, body_start + 1)
            entries.append((r_, p_, lab, k, lineno))

    if not entries:
        raise ParseError("no reactions found", 1, 1)
    if any_rate and any(e[3] is None for e in entries):
        missing = next(e for e in entries if e[3] is None)
        raise ParseError("rate constants must be given for every reaction or none", missing[4], 1)

    names = sorted(species, key=species.get)
    try:
        net = Network.from_reactions(names, [(r_, p_, lab) for r_, p_, lab, _, _ in entries])
    except NetworkError as exc:
        raise ParseError(str(exc), 1, 1) from exc
    rates = {j: e[3] for j, e in enumerate(entries)} if any_rate else None
    source_labels = {j: e[2] for j, e in enumerate(entries) if e[2] is not None}
    return NetworkDocument(net, rates, source_labels)


def format_network(doc: NetworkDocument) -> str:
    """Canonical text for a document; ``parse_network`` inverts it exactly."""
    net = doc.network
    lines = []
    appearance: list[int] = []
    for rx in net.reactions:
        for cx in (rx.reactant, rx.product):
            for idx, _ in cx.coeffs:
                if idx not in appearance:
                    appearance.append(idx)
    if appearance != list(range(net.m)):
        lines.append("species: " + ", ".join(net.species_names))
    for j, rx in enumerate(net.reactions):
        label = doc.source_labels.get(j)
        text = net.reaction_text(j)
        if label:
            text = f"{label}: {text}"
        if doc.rates is not None:
            text += f" [k={format_rational(doc.rates[j])}]"
        lines.append(text)
    return "\n".join(lines) + "\n"


def read_network(path) -> NetworkDocument:
    with open(path, encoding="utf-8") as fh:
        return parse_network(fh.read())
