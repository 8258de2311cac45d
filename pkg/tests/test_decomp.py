import random

import pytest
import sympy

from conftest import load
from oracles import oracle_finest
from crndecomp import (
    Decomposition,
    MalformedPartition,
    RationalMatrix,
    brute_force_decompositions,
    coordinate_graph,
    count_decompositions,
    deficiency_relation,
    enumerate_coarsenings,
    finest_incidence_independent,
    finest_independent,
    is_bi_independent,
    is_incidence_independent,
    is_independent,
    parse_network,
    weak_reversibility_of_decomposition,
)
from crndecomp.decomp import linkage_class_decomposition, restricted_growth_strings
from crndecomp.generators import generic_network, monospecies_network, reversible_network, weakly_reversible_network
from crndecomp.model import Network


# --- coordinate graph ---

def test_coordinate_graph_exchange():
    g = coordinate_graph(RationalMatrix.from_rows([[-1, 1, 0], [1, -1, 0], [-1, 0, 1], [1, 0, -1]]))
    assert g.vertices == (0, 2)
    assert not g.edges
    assert len(g.components()) == 2


def test_coordinate_graph_target_cell():
    g = coordinate_graph(RationalMatrix.from_rows([[-1, 1, 0], [0, -1, 0], [0, 0, 1], [0, 0, -1]]))
    assert len(g.vertices) == 3 and not g.edges
    assert len(g.components()) == 3


def test_coordinate_graph_forced_edge():
    g = coordinate_graph(RationalMatrix.from_rows([[1, 0], [0, 1], [1, 1]]))
    assert g.vertices == (0, 1)
    assert g.edges == frozenset({(0, 1)})
    assert g.is_connected


# --- finest decompositions ---

def test_finest_independent_exchange():
    d, report = finest_independent(load("exchange.crn").network)
    assert d.parts == ((0, 1), (2, 3))
    assert d.kind == "independent"
    assert [p.delta for p in report] == [1, 1]


def test_finest_independent_target_cell():
    d, _ = finest_independent(load("targetcell.crn").network)
    assert d.parts == ((0,), (1,), (2, 3))


def test_finest_independent_baccam():
    net = load("baccam.crn").network
    d, _ = finest_independent(net)
    assert d.parts == ((0,), (1,), (2,), (3, 4))
    assert d.parts == oracle_finest(net, "independent")[0]
    assert d.refines(Decomposition(((0, 1, 2), (3, 4))))


def test_finest_independent_five_reactions_is_all_singletons():
    # The five reaction vectors e2-e1, -e2, e4, e4-e3, -e5 are linearly
    # independent, so every partition is independent.
    net = load("five_reactions.crn").network
    assert net.stats.s == 5
    d, _ = finest_independent(net)
    assert d.parts == ((0,), (1,), (2,), (3,), (4,))
    finest, found = oracle_finest(net, "independent")
    assert finest == d.parts and len(found) == 52


def test_finest_incidence_target_cell():
    d, _ = finest_incidence_independent(load("targetcell.crn").network)
    assert d.parts == ((0,), (1,), (2,), (3,))
    assert d.kind == "incidence_independent"


def test_finest_incidence_twostep():
    d, _ = finest_incidence_independent(load("twostep.crn").network)
    assert d.parts == ((0,), (1,))


def test_finest_incidence_baccam():
    d, _ = finest_incidence_independent(load("baccam.crn").network)
    assert d.length == 5


def test_finest_incidence_five_reactions():
    d, _ = finest_incidence_independent(load("five_reactions.crn").network)
    assert d.length == 5
    assert count_decompositions(d.length) == 52


def test_trivial_indicator():
    d, _ = finest_independent(load("two_cycles.crn").network)
    assert d.is_trivial


# --- checks ---

def test_baccam_baccam_split_bi_independent():
    net = load("baccam.crn").network
    d = Decomposition(((0, 1, 2), (3, 4)))
    assert is_independent(net, d)
    assert is_incidence_independent(net, d)
    assert is_bi_independent(net, d)
    rel = deficiency_relation(net, d)
    assert rel.delta == 1 and rel.part_deltas == (0, 1) and rel.relation == "="


def test_trivial_decomposition_checks():
    for name in ("baccam.crn", "exchange.crn", "branch.crn"):
        net = load(name).network
        d = Decomposition.trivial(net.r)
        assert is_independent(net, d) and is_incidence_independent(net, d) and is_bi_independent(net, d)
        assert deficiency_relation(net, d).relation == "="


def test_exchange_cross_split_not_independent():
    net = load("exchange.crn").network
    d = Decomposition(((0, 2), (1, 3)))
    assert not is_independent(net, d)
    assert not is_bi_independent(net, d)


def test_linkage_class_decomposition_incidence_independent():
    for name in ("baccam.crn", "exchange.crn", "branch.crn", "five_reactions.crn"):
        net = load(name).network
        d = linkage_class_decomposition(net)
        assert d.length == net.stats.l > 1
        assert is_incidence_independent(net, d)


def test_two_cycles_not_incidence_independent():
    net = load("two_cycles.crn").network
    d = Decomposition(((0, 1, 2), (3, 4, 5)))
    assert net.stats.n - net.stats.l == 3
    assert [net.restrict(p).stats.n - net.restrict(p).stats.l for p in d.parts] == [2, 2]
    assert not is_incidence_independent(net, d)
    assert weak_reversibility_of_decomposition(net, d).all_weakly_reversible


def test_independent_but_not_incidence_independent():
    net = load("ssystem.crn").network
    d = Decomposition(((0, 1), (2, 3)))
    assert is_independent(net, d)
    assert not is_incidence_independent(net, d)
    assert not is_bi_independent(net, d)


def test_branch_deficiency_relation():
    net = load("branch.crn").network
    rel = deficiency_relation(net, Decomposition(((0,), (1, 2, 3))))
    assert (rel.delta, rel.part_deltas, rel.relation) == (1, (0, 1), "=")
    assert rel.independent


@pytest.mark.parametrize("parts", [((0, 1),), ((0, 1, 2), (2, 3, 4)), ((0, 1, 2, 3), (9,))])
def test_malformed_partition(parts):
    net = load("baccam.crn").network
    with pytest.raises(MalformedPartition):
        is_independent(net, Decomposition(parts))


def test_empty_part_rejected():
    with pytest.raises(MalformedPartition):
        Decomposition(((0,), ()))


# --- counting and enumeration ---

@pytest.mark.parametrize("p, bell", [(0, 1), (1, 1), (2, 2), (3, 5), (4, 15), (5, 52), (8, 4140)])
def test_bell_numbers(p, bell):
    assert count_decompositions(p) == bell


def test_bell_matches_sympy():
    for p in range(30):
        assert count_decompositions(p) == sympy.bell(p)


def test_restricted_growth_strings():
    assert list(restricted_growth_strings(3)) == [
        (0, 0, 0), (0, 0, 1), (0, 1, 0), (0, 1, 1), (0, 1, 2)]
    assert list(restricted_growth_strings(0)) == [()]
    for n in range(7):
        assert len(list(restricted_growth_strings(n))) == count_decompositions(n)


def test_enumerate_listed_five_partitions():
    finest = Decomposition(((0, 1), (2, 3), (4,)), "independent")
    got = {d.parts for d in enumerate_coarsenings(finest)}
    assert got == {
        ((0, 1), (2, 3), (4,)),
        ((0, 1, 2, 3), (4,)),
        ((0, 1), (2, 3, 4)),
        ((0, 1, 4), (2, 3)),
        ((0, 1, 2, 3, 4),),
    }


def test_enumerate_small_cases():
    assert [d.parts for d in enumerate_coarsenings(Decomposition(((0, 1, 2),)))] == [((0, 1, 2),)]
    four = Decomposition(((0,), (1,), (2,), (3,)))
    assert len(list(enumerate_coarsenings(four))) == 15
    assert len(list(enumerate_coarsenings(four, limit=4))) == 4


def test_enumeration_is_lazy():
    big = Decomposition(tuple((j,) for j in range(40)))
    gen = enumerate_coarsenings(big)
    assert next(gen).is_trivial


# --- brute-force oracle ---

def test_brute_force_exchange():
    found = brute_force_decompositions(load("exchange.crn").network)
    assert {d.parts for d in found} == {((0, 1), (2, 3)), ((0, 1, 2, 3),)}


def test_brute_force_single_reaction():
    found = brute_force_decompositions(parse_network("A -> B").network)
    assert [d.parts for d in found] == [((0,),)]


def test_brute_force_bound():
    net = parse_network("\n".join(f"X{i} -> X{i + 1}" for i in range(9))).network
    with pytest.raises(ValueError):
        brute_force_decompositions(net)


def _corpus(seed, count):
    rng = random.Random(seed)
    makers = [generic_network, reversible_network, weakly_reversible_network, monospecies_network]
    return [makers[k % 4](rng) for k in range(count)]


@pytest.mark.parametrize("kind", ["independent", "incidence"])
def test_method_agrees_with_independent_oracle(kind, base_seed):
    for net in _corpus(base_seed, 60):
        if net.r > 7:
            continue
        finest, found = oracle_finest(net, kind)
        ours = finest_independent(net)[0] if kind == "independent" else finest_incidence_independent(net)[0]
        assert ours.parts == finest
        assert {d.parts for d in brute_force_decompositions(net, kind)} == found


def _permuted(net: Network, perm):
    rxs = [net.reactions[j] for j in perm]
    return Network.from_reactions(
        net.species_names, [(rx.reactant.as_dict(), rx.product.as_dict(), None) for rx in rxs]
    )


def test_basis_choice_invariance(base_seed):
    rng = random.Random(base_seed + 1)
    for net in _corpus(base_seed + 2, 80):
        perm = list(range(net.r))
        rng.shuffle(perm)
        other = _permuted(net, perm)
        for finder in (finest_independent, finest_incidence_independent):
            a = finder(net)[0]
            b = finder(other)[0]
            relabeled = Decomposition(tuple(tuple(perm[j] for j in p) for p in b.parts))
            assert relabeled.parts == a.parts


def test_reversibility_report():
    net = load("ssystem.crn").network
    rep = weak_reversibility_of_decomposition(net, Decomposition(((0, 1), (2, 3))))
    assert rep.weakly_reversible == (False, False)
    assert not rep.all_weakly_reversible
    net = parse_network("A <-> B\nC <-> D").network
    rep = weak_reversibility_of_decomposition(net, Decomposition(((0, 1), (2, 3))))
    assert rep.all_reversible and rep.all_weakly_reversible
