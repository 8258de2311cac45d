"""Graph computations on the complex digraph of a network."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Iterable, Sequence

from .model import Network

Partition = tuple[tuple[int, ...], ...]


class UnionFind:
    """Disjoint sets over 0..n-1 with path halving and union by size."""

    def __init__(self, n: int) -> None:
        self.parent = list(range(n))
        self.size = [1] * n

    def find(self, x: int) -> int:
        parent = self.parent
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def union(self, a: int, b: int) -> None:
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return
        if self.size[ra] < self.size[rb]:
            ra, rb = rb, ra
        self.parent[rb] = ra
        self.size[ra] += self.size[rb]

    def groups(self) -> Partition:
        """Components as sorted tuples, ordered by smallest member."""
        out: dict[int, list[int]] = {}
        for x in range(len(self.parent)):
            out.setdefault(self.find(x), []).append(x)
        return tuple(sorted(tuple(g) for g in out.values()))


def connected_components(n: int, edges: Iterable[tuple[int, int]]) -> Partition:
    uf = UnionFind(n)
    for a, b in edges:
        uf.union(a, b)
    return uf.groups()


def strongly_connected_components(n: int, arcs: Sequence[tuple[int, int]]) -> Partition:
    """Tarjan's algorithm, iterative so deep graphs do not hit the recursion limit."""
    succ: list[list[int]] = [[] for _ in range(n)]
    for a, b in arcs:
        succ[a].append(b)

    index = [-1] * n
    low = [0] * n
    on_stack = [False] * n
    stack: list[int] = []
    counter = 0
    sccs: list[tuple[int, ...]] = []

    for root in range(n):
        if index[root] != -1:
            continue
        work = [(root, 0)]
        while work:
            v, i = work[-1]
            if i == 0:
                index[v] = low[v] = counter
                counter += 1
                stack.append(v)
                on_stack[v] = True
            if i < len(succ[v]):
                work[-1] = (v, i + 1)
                w = succ[v][i]
                if index[w] == -1:
                    work.append((w, 0))
                elif on_stack[w]:
                    low[v] = min(low[v], index[w])
                continue
            work.pop()
            if work:
                parent = work[-1][0]
                low[parent] = min(low[parent], low[v])
            if low[v] == index[v]:
                comp = []
                while True:
                    w = stack.pop()
                    on_stack[w] = False
                    comp.append(w)
                    if w == v:
                        break
                sccs.append(tuple(sorted(comp)))
    return tuple(sorted(sccs))


@dataclass(frozen=True)
class LinkageClasses:
    classes: Partition
    strong: Partition
    terminal_strong: Partition


def linkage_structure(net: Network) -> LinkageClasses:
    arcs = net.arcs
    classes = connected_components(net.n, arcs)
    strong = strongly_connected_components(net.n, arcs)
    where = {}
    for k, comp in enumerate(strong):
        for v in comp:
            where[v] = k
    leaves = set()
    for a, b in arcs:
        if where[a] != where[b]:
            leaves.add(where[a])
    terminal = tuple(comp for k, comp in enumerate(strong) if k not in leaves)
    return LinkageClasses(classes, strong, terminal)


def is_weakly_reversible(net: Network) -> bool:
    ls = linkage_structure(net)
    return len(ls.strong) == len(ls.classes)


def is_reversible(net: Network) -> bool:
    arcs = set(net.arcs)
    return all((b, a) in arcs for a, b in arcs)


def reachable(net: Network, source: int, target: int) -> bool:
    """True iff a directed path (possibly empty) leads from complex ``source`` to ``target``."""
    for v in (source, target):
        if not 0 <= v < net.n:
            raise IndexError(f"complex index {v} out of range")
    return target in descendants(net, source)


def descendants(net: Network, source: int) -> set[int]:
    """Complexes reachable from ``source``, including itself."""
    succ: dict[int, list[int]] = {}
    for a, b in net.arcs:
        succ.setdefault(a, []).append(b)
    seen = {source}
    queue = deque([source])
    while queue:
        v = queue.popleft()
        for w in succ.get(v, ()):
            if w not in seen:
                seen.add(w)
                queue.append(w)
    return seen
