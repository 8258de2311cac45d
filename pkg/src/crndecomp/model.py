"""Core reaction-network types and the matrices derived from them."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Mapping, Optional, Sequence

from .exactla import RationalMatrix, as_fraction, format_rational, rank


class NetworkError(ValueError):
    """Raised when reactions do not form a valid reaction network."""


@dataclass(frozen=True)
class Species:
    id: int
    name: str


@dataclass(frozen=True)
class Complex:
    """A nonnegative combination of species, stored sparsely as sorted (index, coefficient) pairs.

    The empty combination is the zero complex.
    """

    coeffs: tuple[tuple[int, Fraction], ...] = ()

    def __post_init__(self) -> None:
        prev = -1
        for idx, c in self.coeffs:
            if idx <= prev:
                raise ValueError("complex coefficients must be sorted by species index without repeats")
            if not c > 0:
                raise ValueError("stored complex coefficients must be positive")
            prev = idx

    @classmethod
    def from_mapping(cls, mapping: Mapping[int, object]) -> "Complex":
        items = []
        for idx, c in sorted(mapping.items()):
            q = as_fraction(c)
            if q < 0:
                raise ValueError(f"negative stoichiometric coefficient {q}")
            if q:
                items.append((idx, q))
        return cls(tuple(items))

    def as_dict(self) -> dict[int, Fraction]:
        return dict(self.coeffs)

    def get(self, species: int) -> Fraction:
        return self.as_dict().get(species, Fraction(0))

    @property
    def support(self) -> frozenset[int]:
        return frozenset(idx for idx, _ in self.coeffs)

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    def vector(self, m: int) -> tuple[Fraction, ...]:
        d = self.as_dict()
        return tuple(d.get(i, Fraction(0)) for i in range(m))

    def render(self, species_names: Sequence[str]) -> str:
        if not self.coeffs:
            return "0"
        terms = []
        for idx, c in self.coeffs:
            name = species_names[idx]
            if c == 1:
                terms.append(name)
            elif c.denominator == 1:
                terms.append(f"{c.numerator}{name}")
            else:
                terms.append(f"{format_rational(c)} {name}")
        return " + ".join(terms)


@dataclass(frozen=True)
class Reaction:
    index: int
    reactant: Complex
    product: Complex
    label: Optional[str] = None

    def __post_init__(self) -> None:
        if self.reactant == self.product:
            raise NetworkError(f"reaction {self.display_name} is a self-loop (reactant equals product)")

    @property
    def display_name(self) -> str:
        return self.label if self.label else f"R{self.index + 1}"


@dataclass(frozen=True)
class NetworkMatrices:
    Y: RationalMatrix
    Ia: RationalMatrix
    N: RationalMatrix


@dataclass(frozen=True)
class NetworkStats:
    n: int
    r: int
    m: int
    l: int
    sl: int
    t: int
    s: int
    delta: int
    weakly_reversible: bool
    reversible: bool


@dataclass(frozen=True)
class Network:
    """A reaction network.

    Complexes are the distinct reactant/product complexes in order of first
    appearance.  Build instances with :meth:`from_reactions`; the reaction
    tuple is authoritative and ``complexes`` must be consistent with it.
    """

    species: tuple[Species, ...]
    complexes: tuple[Complex, ...]
    reactions: tuple[Reaction, ...]

    def __post_init__(self) -> None:
        names = [s.name for s in self.species]
        if len(set(names)) != len(names):
            raise NetworkError("species names must be unique")
        if [s.id for s in self.species] != list(range(len(self.species))):
            raise NetworkError("species ids must be contiguous from 0")
        if not self.reactions:
            raise NetworkError("a network needs at least one reaction")
        if len(set(self.complexes)) != len(self.complexes):
            raise NetworkError("complexes must be distinct")
        used = set()
        seen_pairs = set()
        m = len(self.species)
        for j, rx in enumerate(self.reactions):
            if rx.index != j:
                raise NetworkError("reaction indices must be contiguous from 0")
            for cx in (rx.reactant, rx.product):
                if any(idx >= m for idx in cx.support):
                    raise NetworkError(f"reaction {rx.display_name} refers to an unknown species")
                used.add(cx)
            pair = (rx.reactant, rx.product)
            if pair in seen_pairs:
                raise NetworkError(f"duplicate reaction {rx.display_name}")
            seen_pairs.add(pair)
        if used != set(self.complexes):
            raise NetworkError("every complex must occur in some reaction")

    @classmethod
    def from_reactions(
        cls,
        species_names: Sequence[str],
        reactions: Iterable[tuple[Mapping[int, object], Mapping[int, object], Optional[str]]],
        *,
        require_all_species: bool = True,
    ) -> "Network":
        """Build a network from (reactant, product, label) triples over species indices."""
        species = tuple(Species(i, name) for i, name in enumerate(species_names))
        rxs = []
        for j, (reac, prod, label) in enumerate(reactions):
            rxs.append(Reaction(j, Complex.from_mapping(reac), Complex.from_mapping(prod), label))
        net = cls(species, _complexes_in_order(rxs), tuple(rxs))
        if require_all_species:
            present = set().union(*(c.support for c in net.complexes))
            missing = [s.name for s in species if s.id not in present]
            if missing:
                raise NetworkError(f"species {', '.join(missing)} occur in no complex")
        return net

    @property
    def m(self) -> int:
        return len(self.species)

    @property
    def n(self) -> int:
        return len(self.complexes)

    @property
    def r(self) -> int:
        return len(self.reactions)

    @cached_property
    def species_names(self) -> tuple[str, ...]:
        return tuple(s.name for s in self.species)

    @cached_property
    def complex_index(self) -> dict[Complex, int]:
        return {c: i for i, c in enumerate(self.complexes)}

    @cached_property
    def arcs(self) -> tuple[tuple[int, int], ...]:
        """(reactant index, product index) per reaction."""
        idx = self.complex_index
        return tuple((idx[rx.reactant], idx[rx.product]) for rx in self.reactions)

    def complex_name(self, i: int) -> str:
        return self.complexes[i].render(self.species_names)

    def reaction_text(self, j: int) -> str:
        rx = self.reactions[j]
        names = self.species_names
        return f"{rx.reactant.render(names)} -> {rx.product.render(names)}"

    def restrict(self, reaction_indices: Iterable[int]) -> "Network":
        """Subnetwork induced by a subset of reactions.

        The species list is kept whole so that vectors over species stay
        comparable with the parent network; complexes are those of the
        chosen reactions, in order of first appearance.
        """
        chosen = sorted(set(reaction_indices))
        if not chosen:
            raise NetworkError("a subnetwork needs at least one reaction")
        rxs = []
        for new_j, j in enumerate(chosen):
            rx = self.reactions[j]
            rxs.append(Reaction(new_j, rx.reactant, rx.product, rx.display_name))
        return Network(self.species, _complexes_in_order(rxs), tuple(rxs))

    @cached_property
    def matrices(self) -> NetworkMatrices:
        return build_matrices(self)

    @cached_property
    def stats(self) -> NetworkStats:
        return network_stats(self)


def _complexes_in_order(reactions: Sequence[Reaction]) -> tuple[Complex, ...]:
    seen: dict[Complex, None] = {}
    for rx in reactions:
        seen.setdefault(rx.reactant, None)
        seen.setdefault(rx.product, None)
    return tuple(seen)


def build_matrices(net: Network) -> NetworkMatrices:
    """Molecularity (m x n), incidence (n x r) and stoichiometric (m x r) matrices."""
    m, n, r = net.m, net.n, net.r
    Y = RationalMatrix.from_rows(
        [[net.complexes[j].get(i) for j in range(n)] for i in range(m)], cols=n
    )
    ia_rows = [[0] * r for _ in range(n)]
    for j, (src, dst) in enumerate(net.arcs):
        ia_rows[src][j] = -1
        ia_rows[dst][j] = 1
    Ia = RationalMatrix.from_rows(ia_rows, cols=r)
    cols = []
    for rx in net.reactions:
        a, b = rx.reactant.vector(m), rx.product.vector(m)
        cols.append([q - p for p, q in zip(a, b)])
    N = RationalMatrix.from_rows([[cols[j][i] for j in range(r)] for i in range(m)], cols=r)
    return NetworkMatrices(Y, Ia, N)


def network_stats(net: Network) -> NetworkStats:
    from .graphops import is_reversible, linkage_structure

    ls = linkage_structure(net)
    s = rank(net.matrices.N)
    l, sl = len(ls.classes), len(ls.strong)
    return NetworkStats(
        n=net.n,
        r=net.r,
        m=net.m,
        l=l,
        sl=sl,
        t=len(ls.terminal_strong),
        s=s,
        delta=net.n - l - s,
        weakly_reversible=sl == l,
        reversible=is_reversible(net),
    )
