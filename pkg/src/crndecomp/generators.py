"""Seeded random networks for property tests.

All generators take a :class:`random.Random` (or a seed) and return a valid
:class:`~crndecomp.model.Network`; species that end up unused are dropped.
"""

from __future__ import annotations

import random
from typing import Optional, Union

from .model import Network

Seed = Union[int, random.Random]
Vec = tuple[int, ...]


def _rng(seed: Seed) -> random.Random:
    return seed if isinstance(seed, random.Random) else random.Random(seed)


def _assemble(m: int, pairs: list[tuple[Vec, Vec]]) -> Network:
    used = sorted({i for a, b in pairs for i in range(m) if a[i] or b[i]})
    remap = {old: new for new, old in enumerate(used)}
    names = [f"X{k + 1}" for k in range(len(used))]
    rxs = []
    for a, b in pairs:
        rxs.append(({remap[i]: a[i] for i in used if a[i]}, {remap[i]: b[i] for i in used if b[i]}, None))
    return Network.from_reactions(names, rxs)


def _random_complex(rng: random.Random, m: int, max_coef: int = 3) -> Vec:
    # sparse-ish: most entries zero so networks share complexes
    return tuple(rng.randint(1, max_coef) if rng.random() < 0.35 else 0 for _ in range(m))


def _add(pairs: list[tuple[Vec, Vec]], a: Vec, b: Vec) -> None:
    if a != b and (a, b) not in pairs:
        pairs.append((a, b))


def generic_network(seed: Seed, max_species: int = 5, max_reactions: int = 8) -> Network:
    rng = _rng(seed)
    m = rng.randint(1, max_species)
    r = rng.randint(1, max_reactions)
    pool = [_random_complex(rng, m) for _ in range(rng.randint(2, r + 2))]
    pairs: list[tuple[Vec, Vec]] = []
    for _ in range(20 * r):
        if len(pairs) == r:
            break
        _add(pairs, rng.choice(pool), rng.choice(pool))
    if not pairs:
        e = tuple(1 if i == 0 else 0 for i in range(m))
        pairs.append((e, (0,) * m))
    return _assemble(m, pairs)


def reversible_network(seed: Seed, max_species: int = 5, max_reactions: int = 8) -> Network:
    rng = _rng(seed)
    base = generic_network(rng, max_species, max(1, max_reactions // 2))
    m = base.m
    pairs: list[tuple[Vec, Vec]] = []
    for rx in base.reactions:
        a = tuple(int(v) for v in rx.reactant.vector(m))
        b = tuple(int(v) for v in rx.product.vector(m))
        _add(pairs, a, b)
        _add(pairs, b, a)
    return _assemble(m, pairs)


def _cycles_network(rng: random.Random, m: int, pool: list[Vec], max_reactions: int) -> Network:
    pairs: list[tuple[Vec, Vec]] = []
    for _ in range(rng.randint(1, 3)):
        length = rng.randint(2, min(4, len(pool)))
        if len(pairs) + length > max_reactions:
            break
        cyc = rng.sample(pool, length)
        for i in range(length):
            _add(pairs, cyc[i], cyc[(i + 1) % length])
    if not pairs:
        a, b = rng.sample(pool, 2)
        _add(pairs, a, b)
        _add(pairs, b, a)
    return _assemble(m, pairs)


def weakly_reversible_network(seed: Seed, max_species: int = 4, max_reactions: int = 8) -> Network:
    """Union of one to three directed cycles over randomly chosen distinct complexes."""
    rng = _rng(seed)
    m = rng.randint(1, max_species)
    pool: list[Vec] = []
    while len(pool) < 5:
        c = _random_complex(rng, m, 2)
        if c not in pool:
            pool.append(c)
        elif m == 1 and len(pool) >= 3:
            break
    return _cycles_network(rng, m, pool, max_reactions)


def monospecies_network(seed: Seed, max_species: int = 5, max_reactions: int = 8) -> Network:
    """Weakly reversible network whose complexes are single species (coefficient 1) or 0."""
    rng = _rng(seed)
    m = rng.randint(1, max_species)
    pool = [(0,) * m] + [tuple(1 if i == k else 0 for i in range(m)) for k in range(m)]
    return _cycles_network(rng, m, pool, max_reactions)


def random_corpus(seed: int, count: int, max_reactions: int = 6, deficiency: Optional[int] = None) -> list[Network]:
    """``count`` generic networks; with ``deficiency`` set, rejection-sample to that deficiency."""
    rng = random.Random(seed)
    out = []
    while len(out) < count:
        net = generic_network(rng, max_reactions=max_reactions)
        if deficiency is None or net.stats.delta == deficiency:
            out.append(net)
    return out
