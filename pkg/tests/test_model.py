from fractions import Fraction

import pytest

from conftest import load
from crndecomp import Network, build_matrices, network_stats, parse_network, rank
from crndecomp.generators import generic_network, monospecies_network, reversible_network, weakly_reversible_network
from crndecomp.model import Complex, NetworkError, Reaction

# Printed matrices of the Baccam model; complex order T+V, I1+V, I1, I2, 0, I2+V, V
BACCAM_Y = [
    [1, 0, 0, 0, 0, 0, 0],
    [1, 1, 0, 0, 0, 1, 1],
    [0, 1, 1, 0, 0, 0, 0],
    [0, 0, 0, 1, 0, 1, 0],
]
BACCAM_IA = [
    [-1, 0, 0, 0, 0],
    [1, 0, 0, 0, 0],
    [0, -1, 0, 0, 0],
    [0, 1, -1, -1, 0],
    [0, 0, 1, 0, 1],
    [0, 0, 0, 1, 0],
    [0, 0, 0, 0, -1],
]
BACCAM_N = [
    [-1, 0, 0, 0, 0],
    [0, 0, 0, 1, -1],
    [1, -1, 0, 0, 0],
    [0, 1, -1, 0, 0],
]


def test_baccam_matrices():
    net = load("baccam.crn").network
    assert net.species_names == ("T", "V", "I1", "I2")
    assert [net.complex_name(i) for i in range(net.n)] == ["T + V", "V + I1", "I1", "I2", "0", "V + I2", "V"]
    mats = build_matrices(net)
    assert mats.Y.to_rows() == BACCAM_Y
    assert mats.Ia.to_rows() == BACCAM_IA
    assert mats.N.to_rows() == BACCAM_N


def test_single_reaction_matrices():
    mats = build_matrices(parse_network("A -> B").network)
    assert mats.Y.to_rows() == [[1, 0], [0, 1]]
    assert mats.Ia.to_rows() == [[-1], [1]]
    assert mats.N.to_rows() == [[-1], [1]]


def test_branch_stoichiometric_matrix():
    net = load("branch.crn").network
    assert net.species_names == ("A", "B", "C")
    N = net.matrices.N
    cols = [N.column(j) for j in range(net.r)]
    assert cols == [(0, -1, 2), (0, -1, 0), (0, 1, 0), (0, -1, 0)]
    assert (net.matrices.Y @ net.matrices.Ia) == N


def test_baccam_stats():
    st = network_stats(load("baccam.crn").network)
    assert (st.n, st.l, st.s, st.delta) == (7, 2, 4, 1)
    assert st.weakly_reversible is False
    # the complex digraph is acyclic, so every complex is its own strong class
    assert st.sl == 7
    assert st.t == 3


def test_reversible_pair_stats():
    st = parse_network("A <-> B").network.stats
    assert (st.n, st.l, st.sl, st.s, st.delta) == (2, 1, 1, 1, 0)
    assert st.weakly_reversible and st.reversible


def test_branch_subnetwork_stats():
    net = load("branch.crn").network
    assert (net.stats.s, net.stats.delta) == (2, 1)
    n1, n2 = net.restrict([0]), net.restrict([1, 2, 3])
    assert (n1.stats.s, n1.stats.delta) == (1, 0)
    assert (n2.stats.s, n2.stats.delta) == (1, 1)


def test_complex_invariants():
    assert Complex.from_mapping({0: 0, 1: 2}).coeffs == ((1, Fraction(2)),)
    assert Complex.from_mapping({}).is_zero
    with pytest.raises(ValueError):
        Complex(((0, Fraction(0)),))
    with pytest.raises(ValueError):
        Complex.from_mapping({0: -1})
    assert Complex.from_mapping({1: 1, 0: 1}) == Complex.from_mapping({0: 1, 1: 1})


def test_self_loop_rejected():
    c = Complex.from_mapping({0: 1})
    with pytest.raises(NetworkError):
        Reaction(0, c, c)


def test_duplicate_reaction_rejected():
    with pytest.raises(NetworkError):
        Network.from_reactions(["A", "B"], [({0: 1}, {1: 1}, None), ({0: 1}, {1: 1}, None)])


def test_unused_species_rejected():
    with pytest.raises(NetworkError):
        Network.from_reactions(["A", "B", "C"], [({0: 1}, {1: 1}, None)])


def test_restrict_keeps_species_and_orders_complexes():
    net = load("baccam.crn").network
    sub = net.restrict([3, 4])
    assert sub.species == net.species
    assert [sub.complex_name(i) for i in range(sub.n)] == ["I2", "V + I2", "V", "0"]
    assert [rx.label for rx in sub.reactions] == ["R4", "R5"]


def _corpus():
    nets = []
    for seed in range(60):
        nets += [generic_network(seed), reversible_network(seed), weakly_reversible_network(seed),
                 monospecies_network(seed)]
    return nets


@pytest.mark.parametrize("net", _corpus())
def test_structural_identities(net):
    mats = net.matrices
    assert mats.Y @ mats.Ia == mats.N
    for j in range(net.r):
        col = mats.Ia.column(j)
        assert sorted(v for v in col if v) == [-1, 1]
        assert any(mats.N.column(j))
    st = net.stats
    assert rank(mats.Ia) == st.n - st.l
    assert st.delta == st.n - st.l - st.s >= 0
    assert st.weakly_reversible == (st.sl == st.l)
    if st.reversible:
        assert st.weakly_reversible
