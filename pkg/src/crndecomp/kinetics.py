"""Mass-action evaluation, equilibrium checks and steady-state support analysis."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping, Optional, Sequence

from .decomp import Decomposition, is_independent
from .exactla import as_fraction
from .graphops import descendants, linkage_structure
from .model import Network


class InexactPower(ValueError):
    """A fractional exponent would make an exact rate irrational."""


@dataclass(frozen=True)
class MassActionSystem:
    network: Network
    rates: tuple[Fraction, ...]

    def __post_init__(self) -> None:
        if len(self.rates) != self.network.r:
            raise ValueError(f"need {self.network.r} rate constants, got {len(self.rates)}")
        rates = tuple(as_fraction(k) for k in self.rates)
        if any(k <= 0 for k in rates):
            raise ValueError("rate constants must be positive")
        object.__setattr__(self, "rates", rates)

    @classmethod
    def from_mapping(cls, network: Network, rates: Mapping[int, object]) -> "MassActionSystem":
        return cls(network, tuple(rates[j] for j in range(network.r)))

    def restrict(self, reactions: Sequence[int]) -> "MassActionSystem":
        chosen = sorted(reactions)
        return MassActionSystem(self.network.restrict(chosen), tuple(self.rates[j] for j in chosen))


def _check_point(net: Network, x: Sequence) -> tuple[Fraction, ...]:
    if len(x) != net.m:
        raise ValueError(f"concentration vector has {len(x)} entries, network has {net.m} species")
    xs = tuple(as_fraction(v) for v in x)
    if any(v < 0 for v in xs):
        raise ValueError("concentrations must be nonnegative")
    return xs


def _monomial(x: Sequence[Fraction], reactant) -> Fraction:
    out = Fraction(1)
    for s, e in reactant.coeffs:
        base = x[s]
        if e.denominator == 1:
            out *= base ** e.numerator
        elif base in (0, 1):
            out *= base
        else:
            raise InexactPower(f"{base}^{e} is not rational in general; use evaluate_rates_float")
    return out


def evaluate_rates(sys: MassActionSystem, x: Sequence) -> tuple[Fraction, ...]:
    """K_r(x) = k_r * prod_s x_s ** y_s with y the reactant complex."""
    xs = _check_point(sys.network, x)
    return tuple(k * _monomial(xs, rx.reactant) for k, rx in zip(sys.rates, sys.network.reactions))


def sfrf(sys: MassActionSystem, x: Sequence) -> tuple[Fraction, ...]:
    """Species formation rate f(x) = N K(x)."""
    return sys.network.matrices.N.apply(evaluate_rates(sys, x))


def is_equilibrium(sys: MassActionSystem, x: Sequence) -> bool:
    return not any(sfrf(sys, x))


def is_complex_balanced_at(sys: MassActionSystem, x: Sequence) -> bool:
    xs = _check_point(sys.network, x)
    if any(v <= 0 for v in xs):
        raise ValueError("complex balance is only defined at positive concentrations")
    return not any(sys.network.matrices.Ia.apply(evaluate_rates(sys, xs)))


def evaluate_rates_float(sys: MassActionSystem, x: Sequence[float]) -> tuple[float, ...]:
    if len(x) != sys.network.m:
        raise ValueError("dimension mismatch")
    if any(v < 0 for v in x):
        raise ValueError("concentrations must be nonnegative")
    return tuple(
        float(k) * math.prod(float(x[s]) ** float(e) for s, e in rx.reactant.coeffs)
        for k, rx in zip(sys.rates, sys.network.reactions)
    )


def is_equilibrium_float(sys: MassActionSystem, x: Sequence[float], atol: float = 1e-9) -> bool:
    """Floating-point convenience check, |f_i(x)| <= atol for every species."""
    K = evaluate_rates_float(sys, x)
    N = sys.network.matrices.N
    return all(
        abs(sum(float(a) * k for a, k in zip(N.row(i), K))) <= atol for i in range(N.rows)
    )


@dataclass(frozen=True)
class EquilibriumReport:
    whole: bool
    parts: tuple[bool, ...]
    independent: bool
    positive_point: bool

    @property
    def equality_applicable(self) -> bool:
        """Whether equilibria of the whole must also be equilibria of every part."""
        return self.independent and self.positive_point


def equilibrium_intersection_check(sys: MassActionSystem, d: Decomposition, x: Sequence) -> EquilibriumReport:
    net = sys.network
    d.validate(net.r)
    xs = _check_point(net, x)
    whole = is_equilibrium(sys, xs)
    parts = tuple(is_equilibrium(sys.restrict(p), xs) for p in d.parts)
    if all(parts) and not whole:
        raise AssertionError("every part is at equilibrium but the whole network is not")
    ind = is_independent(net, d)
    positive = all(v > 0 for v in xs)
    if ind and whole and not all(parts):
        raise AssertionError("independent decomposition: whole equilibrium is not a part equilibrium")
    return EquilibriumReport(whole, parts, ind, positive)


@dataclass(frozen=True)
class LogEntry:
    rule: str
    kind: str  # "complex" or "species"
    index: int
    reason: str


@dataclass(frozen=True)
class SupportFacts:
    zero_species: frozenset[int]
    unsupported_complexes: frozenset[int]
    derivation_log: tuple[LogEntry, ...]
    conditional: bool = False
    deficiency_zero_parts: tuple[int, ...] = field(default=())

    @property
    def positive_steady_state_possible(self) -> bool:
        return not self.zero_species


ROUND_RULES = ("R2", "R3", "R4", "R5")


def zero_support_analysis(
    net: Network, d: Decomposition, rule_order: Sequence[str] = ROUND_RULES
) -> SupportFacts:
    """Species forced to zero at every nonnegative steady state.

    R1 seeds, for each deficiency-zero part, the complexes outside that
    part's terminal strong linkage classes.  Rounds of R2..R5 then run to a
    fixed point:

    R2  a complex containing a zero species is unsupported
    R3  a complex with a directed path to an unsupported complex is unsupported
    R4  an unsupported single-species complex makes its species zero
    R5  if every net producer of a species has an unsupported reactant, every
        net consumer of that species has rate zero, so its reactant is unsupported

    R1 relies on whole-network steady states being steady states of each part,
    which holds when ``d`` is independent; otherwise the result is flagged
    ``conditional``.
    """
    d.validate(net.r)
    if sorted(rule_order) != sorted(ROUND_RULES):
        raise ValueError(f"rule_order must be a permutation of {ROUND_RULES}")
    conditional = not is_independent(net, d)
    names = net.species_names
    unsupported: set[int] = set()
    zero: set[int] = set()
    log: list[LogEntry] = []

    def mark_complex(c: int, rule: str, reason: str) -> bool:
        if c in unsupported or net.complexes[c].is_zero:
            return False
        unsupported.add(c)
        log.append(LogEntry(rule, "complex", c, reason))
        return True

    def mark_species(s: int, rule: str, reason: str) -> bool:
        if s in zero:
            return False
        zero.add(s)
        log.append(LogEntry(rule, "species", s, reason))
        return True

    dz_parts = []
    transfer = "steady states of the whole are steady states of each independent part"
    if conditional:
        transfer = "decomposition is not independent; seeding is conditional"
    for k, part in enumerate(d.parts):
        sub = net.restrict(part)
        if sub.stats.delta != 0:
            continue
        dz_parts.append(k)
        terminal = {c for cls in linkage_structure(sub).terminal_strong for c in cls}
        for ci, cx in enumerate(sub.complexes):
            if ci not in terminal:
                mark_complex(
                    net.complex_index[cx], "R1",
                    f"not in a terminal strong linkage class of deficiency-zero part {k + 1} ({transfer})",
                )

    N = net.matrices.N
    reactant_of = [a for a, _ in net.arcs]

    def r2() -> bool:
        changed = False
        for c, cx in enumerate(net.complexes):
            hit = cx.support & zero
            if hit:
                s = min(hit)
                changed |= mark_complex(c, "R2", f"contains zero species {names[s]}")
        return changed

    def r3() -> bool:
        changed = False
        for c in range(net.n):
            if c in unsupported:
                continue
            reach = descendants(net, c) & unsupported
            if reach:
                target = min(reach)
                changed |= mark_complex(c, "R3", f"reaches unsupported complex {net.complex_name(target)}")
        return changed

    def r4() -> bool:
        changed = False
        for c in sorted(unsupported):
            supp = net.complexes[c].support
            if len(supp) == 1:
                (s,) = supp
                changed |= mark_species(s, "R4", f"sole species of unsupported complex {net.complex_name(c)}")
        return changed

    def r5() -> bool:
        changed = False
        for s in range(net.m):
            row = N.row(s)
            producers = [j for j in range(net.r) if row[j] > 0]
            if any(reactant_of[j] not in unsupported for j in producers):
                continue
            for j in range(net.r):
                if row[j] < 0:
                    changed |= mark_complex(
                        reactant_of[j], "R5",
                        f"consumes {names[s]}, whose producers all have zero rate at steady state",
                    )
        return changed

    rules = {"R2": r2, "R3": r3, "R4": r4, "R5": r5}
    while True:
        changed = False
        for name in rule_order:
            changed |= rules[name]()
        if not changed:
            break

    for c in unsupported:
        if net.complexes[c].support & zero:
            continue
        if len(net.complexes[c].support) == 1:
            raise AssertionError("singleton unsupported complex with nonzero species")

    return SupportFacts(frozenset(zero), frozenset(unsupported), tuple(log), conditional, tuple(dz_parts))


def embedded_deficiency_zero_report(net: Network, finest: Decomposition) -> list[int]:
    """Indices of the parts of ``finest`` whose subnetworks have deficiency zero."""
    finest.validate(net.r)
    return [k for k, p in enumerate(finest.parts) if net.restrict(p).stats.delta == 0]
