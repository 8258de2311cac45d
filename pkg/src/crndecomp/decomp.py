"""Independent and incidence-independent decompositions of reaction networks.

The finest decomposition is found with the coordinate graph of a row basis:
basis vectors become vertices, and two vertices are joined whenever they both
carry a nonzero coefficient in the expansion of some other row.  Connected
components (plus the rows expanded over them) are the parts.  Every other
independent decomposition is a coarsening of the finest one, so counting
them is a Bell number and enumerating them is enumerating set partitions of
the finest parts.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import comb
from typing import Iterable, Iterator, Literal, Optional, Sequence

from .exactla import RationalMatrix, rank, row_basis
from .graphops import Partition, connected_components, is_reversible, is_weakly_reversible, linkage_structure
from .model import Network

Kind = Literal["unchecked", "independent", "incidence_independent", "bi_independent"]
TestKind = Literal["independent", "incidence"]


class MalformedPartition(ValueError):
    """The given parts do not partition the reaction set."""


class InvariantError(AssertionError):
    """An internal consistency check failed; indicates a bug, not bad input."""


class OracleMismatch(AssertionError):
    """Brute-force enumeration disagrees with the coordinate-graph result."""


def canonical_parts(parts: Iterable[Iterable[int]]) -> Partition:
    return tuple(sorted(tuple(sorted(p)) for p in parts))


@dataclass(frozen=True)
class Decomposition:
    """A partition of reaction indices, parts ordered by smallest member."""

    parts: Partition
    kind: Kind = "unchecked"

    def __post_init__(self) -> None:
        if not self.parts:
            raise MalformedPartition("a decomposition has at least one part")
        if any(len(p) == 0 for p in self.parts):
            raise MalformedPartition("parts must be nonempty")
        object.__setattr__(self, "parts", canonical_parts(self.parts))

    @classmethod
    def trivial(cls, r: int, kind: Kind = "bi_independent") -> "Decomposition":
        return cls((tuple(range(r)),), kind)

    @property
    def length(self) -> int:
        return len(self.parts)

    @property
    def is_trivial(self) -> bool:
        return len(self.parts) == 1

    def validate(self, r: int) -> None:
        seen: set[int] = set()
        for p in self.parts:
            for j in p:
                if not 0 <= j < r:
                    raise MalformedPartition(f"reaction index {j} out of range 0..{r - 1}")
                if j in seen:
                    raise MalformedPartition(f"reaction index {j} appears in more than one part")
                seen.add(j)
        if len(seen) != r:
            missing = sorted(set(range(r)) - seen)
            raise MalformedPartition(f"reactions {missing} are not covered")

    def refines(self, other: "Decomposition") -> bool:
        """True if every part of self lies inside a part of ``other``."""
        owner = {j: k for k, p in enumerate(other.parts) for j in p}
        return all(len({owner[j] for j in p}) == 1 for p in self.parts)


@dataclass(frozen=True)
class CoordinateGraph:
    vertices: tuple[int, ...]
    edges: frozenset[tuple[int, int]]
    coords: dict[int, tuple] = field(compare=False, repr=False)

    def components(self) -> Partition:
        """Components as tuples of basis row indices."""
        pos = {v: k for k, v in enumerate(self.vertices)}
        comps = connected_components(len(self.vertices), ((pos[a], pos[b]) for a, b in self.edges))
        return tuple(tuple(self.vertices[k] for k in c) for c in comps)

    @property
    def is_connected(self) -> bool:
        return len(self.components()) <= 1


def coordinate_graph(vectors: RationalMatrix) -> CoordinateGraph:
    """Coordinate graph of the rows of ``vectors`` over a greedy row basis."""
    basis = row_basis(vectors)
    edges = set()
    for k, a in basis.coords.items():
        support = [basis.basis_indices[j] for j, c in enumerate(a) if c != 0]
        for x in range(len(support)):
            for y in range(x + 1, len(support)):
                edges.add((support[x], support[y]))
    return CoordinateGraph(basis.basis_indices, frozenset(edges), dict(basis.coords))


def partition_rows(vectors: RationalMatrix) -> Partition:
    """Finest partition of the row indices into parts whose spans form a direct sum."""
    graph = coordinate_graph(vectors)
    comps = graph.components()
    owner = {v: k for k, comp in enumerate(comps) for v in comp}
    parts = [list(c) for c in comps]
    for k, a in graph.coords.items():
        support = {owner[graph.vertices[j]] for j, c in enumerate(a) if c != 0}
        if not support:
            # a zero row spans nothing and may stand alone
            parts.append([k])
            continue
        if len(support) != 1:
            raise InvariantError(f"row {k} expands over several components")
        parts[support.pop()].append(k)
    return canonical_parts(parts)


@dataclass(frozen=True)
class PartReport:
    reactions: tuple[int, ...]
    n: int
    l: int
    s: int
    delta: int
    weakly_reversible: bool
    reversible: bool


SubnetworkReport = tuple[PartReport, ...]


def subnetwork_report(net: Network, d: Decomposition) -> SubnetworkReport:
    d.validate(net.r)
    out = []
    for part in d.parts:
        st = net.restrict(part).stats
        out.append(PartReport(part, st.n, st.l, st.s, st.delta, st.weakly_reversible, st.reversible))
    return tuple(out)


def finest_independent(net: Network) -> tuple[Decomposition, SubnetworkReport]:
    """Finest independent decomposition from the coordinate graph of the transposed stoichiometric matrix."""
    parts = partition_rows(net.matrices.N.T)
    d = Decomposition(parts, "independent")
    return d, subnetwork_report(net, d)


def finest_incidence_independent(net: Network) -> tuple[Decomposition, SubnetworkReport]:
    """Finest incidence-independent decomposition, built linkage class by linkage class."""
    ls = linkage_structure(net)
    where = {v: k for k, cls in enumerate(ls.classes) for v in cls}
    IaT = net.matrices.Ia.T
    parts: list[tuple[int, ...]] = []
    for k, cls in enumerate(ls.classes):
        reactions = [j for j, (a, _) in enumerate(net.arcs) if where[a] == k]
        if not reactions:
            continue
        sub = IaT.select_rows(reactions).select_columns(cls)
        for p in partition_rows(sub):
            parts.append(tuple(reactions[i] for i in p))
    d = Decomposition(tuple(parts), "incidence_independent")
    return d, subnetwork_report(net, d)


def _rank_of_columns(M: RationalMatrix, cols: Sequence[int]) -> int:
    return rank(M.select_columns(cols))


def stoichiometric_rank_sum(net: Network, d: Decomposition) -> int:
    N = net.matrices.N
    return sum(_rank_of_columns(N, p) for p in d.parts)


def is_independent(net: Network, d: Decomposition) -> bool:
    d.validate(net.r)
    return stoichiometric_rank_sum(net, d) == net.stats.s


def _incidence_by_counts(net: Network, d: Decomposition) -> bool:
    total = 0
    for p in d.parts:
        st = net.restrict(p).stats
        total += st.n - st.l
    return net.stats.n - net.stats.l == total


def _incidence_by_rank(net: Network, d: Decomposition) -> bool:
    Ia = net.matrices.Ia
    return rank(Ia) == sum(_rank_of_columns(Ia, p) for p in d.parts)


def is_incidence_independent(net: Network, d: Decomposition) -> bool:
    """n - l equals the sum of n_i - l_i; cross-checked against incidence ranks."""
    d.validate(net.r)
    by_counts = _incidence_by_counts(net, d)
    if by_counts != _incidence_by_rank(net, d):
        raise InvariantError("complex/linkage count test and incidence rank test disagree")
    return by_counts


def is_bi_independent(net: Network, d: Decomposition) -> bool:
    return is_independent(net, d) and is_incidence_independent(net, d)


def classify(net: Network, d: Decomposition) -> Decomposition:
    """Return ``d`` tagged with the strongest kind it satisfies."""
    ind = is_independent(net, d)
    inc = is_incidence_independent(net, d)
    kind: Kind = "bi_independent" if ind and inc else "independent" if ind else (
        "incidence_independent" if inc else "unchecked")
    return Decomposition(d.parts, kind)


@dataclass(frozen=True)
class DeficiencyRelation:
    delta: int
    part_deltas: tuple[int, ...]
    relation: Literal["<", ">", "="]
    independent: bool
    incidence_independent: bool

    @property
    def total(self) -> int:
        return sum(self.part_deltas)


def deficiency_relation(net: Network, d: Decomposition) -> DeficiencyRelation:
    d.validate(net.r)
    delta = net.stats.delta
    parts = tuple(net.restrict(p).stats.delta for p in d.parts)
    total = sum(parts)
    relation = "=" if delta == total else "<" if delta < total else ">"
    ind = is_independent(net, d)
    inc = is_incidence_independent(net, d)
    if ind and delta > total:
        raise InvariantError(f"independent decomposition with deficiency {delta} > {total}")
    if inc and delta < total:
        raise InvariantError(f"incidence-independent decomposition with deficiency {delta} < {total}")
    return DeficiencyRelation(delta, parts, relation, ind, inc)


_BELL = [1]


def count_decompositions(finest_length: int) -> int:
    """Bell number via B_p = sum_{k=1}^{p} C(p-1, k-1) B_{p-k}, with B_0 = 1."""
    if finest_length < 0:
        raise ValueError("length must be nonnegative")
    while len(_BELL) <= finest_length:
        p = len(_BELL)
        _BELL.append(sum(comb(p - 1, k - 1) * _BELL[p - k] for k in range(1, p + 1)))
    return _BELL[finest_length]


def restricted_growth_strings(n: int) -> Iterator[tuple[int, ...]]:
    """All restricted growth strings of length n in lexicographic order.

    a[0] = 0 and a[i] <= 1 + max(a[:i]); each string encodes one set partition.
    """
    if n == 0:
        yield ()
        return
    a = [0] * n
    m = [0] * n  # m[i] = max(a[:i+1])
    while True:
        yield tuple(a)
        i = n - 1
        while i > 0 and a[i] == m[i - 1] + 1:
            i -= 1
        if i == 0:
            return
        a[i] += 1
        m[i] = max(m[i - 1], a[i])
        for k in range(i + 1, n):
            a[k] = 0
            m[k] = m[i]


def set_partitions(items: Sequence, max_blocks: Optional[int] = None) -> Iterator[list[list]]:
    for rgs in restricted_growth_strings(len(items)):
        blocks = max(rgs, default=-1) + 1
        if max_blocks is not None and blocks > max_blocks:
            continue
        out: list[list] = [[] for _ in range(blocks)]
        for item, b in zip(items, rgs):
            out[b].append(item)
        yield out


def enumerate_coarsenings(finest: Decomposition, limit: Optional[int] = None) -> Iterator[Decomposition]:
    """Lazily yield every coarsening of ``finest`` (itself included) in restricted-growth order."""
    emitted = 0
    for blocks in set_partitions(finest.parts):
        if limit is not None and emitted >= limit:
            return
        merged = [tuple(j for part in block for j in part) for block in blocks]
        yield Decomposition(tuple(merged), finest.kind)
        emitted += 1


def brute_force_decompositions(
    net: Network, kind: TestKind = "independent", max_reactions: int = 8
) -> list[Decomposition]:
    """Test oracle: filter every partition of the reaction set by the rank/count test.

    Also checks that a unique finest element exists, that it agrees with the
    coordinate-graph method, and that everything found is a coarsening of it;
    raises :class:`OracleMismatch` otherwise.
    """
    if net.r > max_reactions:
        raise ValueError(f"{net.r} reactions exceeds the brute-force bound of {max_reactions}")

    cache: dict[tuple[int, ...], int] = {}
    if kind == "independent":
        N = net.matrices.N
        target = net.stats.s

        def weight(part: tuple[int, ...]) -> int:
            if part not in cache:
                cache[part] = _rank_of_columns(N, part)
            return cache[part]
    elif kind == "incidence":
        target = net.stats.n - net.stats.l

        def weight(part: tuple[int, ...]) -> int:
            if part not in cache:
                st = net.restrict(part).stats
                cache[part] = st.n - st.l
            return cache[part]
    else:
        raise ValueError(f"unknown kind {kind!r}")

    found = []
    for blocks in set_partitions(list(range(net.r))):
        parts = tuple(tuple(b) for b in blocks)
        if sum(weight(p) for p in parts) == target:
            found.append(Decomposition(parts, "independent" if kind == "independent" else "incidence_independent"))

    longest = max(d.length for d in found)
    finest_candidates = [d for d in found if d.length == longest]
    if len(finest_candidates) != 1:
        raise OracleMismatch(f"{len(finest_candidates)} maximal-length decompositions")
    finest = finest_candidates[0]
    method = finest_independent(net)[0] if kind == "independent" else finest_incidence_independent(net)[0]
    if method.parts != finest.parts:
        raise OracleMismatch(f"coordinate graph gives {method.parts}, brute force gives {finest.parts}")
    for d in found:
        if not finest.refines(d):
            raise OracleMismatch(f"{d.parts} is not a coarsening of {finest.parts}")
    if len(found) != count_decompositions(finest.length):
        raise OracleMismatch(f"found {len(found)} decompositions, expected Bell({finest.length})")
    return found


@dataclass(frozen=True)
class ReversibilityReport:
    weakly_reversible: tuple[bool, ...]
    reversible: tuple[bool, ...]

    @property
    def all_weakly_reversible(self) -> bool:
        return all(self.weakly_reversible)

    @property
    def all_reversible(self) -> bool:
        return all(self.reversible)


def weak_reversibility_of_decomposition(net: Network, d: Decomposition) -> ReversibilityReport:
    d.validate(net.r)
    subs = [net.restrict(p) for p in d.parts]
    return ReversibilityReport(
        tuple(is_weakly_reversible(s) for s in subs),
        tuple(is_reversible(s) for s in subs),
    )


def linkage_class_decomposition(net: Network) -> Decomposition:
    ls = linkage_structure(net)
    where = {v: k for k, cls in enumerate(ls.classes) for v in cls}
    parts: dict[int, list[int]] = {}
    for j, (a, _) in enumerate(net.arcs):
        parts.setdefault(where[a], []).append(j)
    return Decomposition(tuple(tuple(p) for p in parts.values()))
