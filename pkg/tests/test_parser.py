from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import FIXTURES, load
from crndecomp import NetworkDocument, ParseError, format_network, parse_network
from crndecomp.generators import generic_network, reversible_network, weakly_reversible_network

EXCHANGE = """\
2A + B -> A + 2B
2B + C -> A + B + C
2A -> A + C
B + C -> B + A
"""


def test_exchange_counts():
    net = parse_network(EXCHANGE).network
    assert (net.m, net.n, net.r) == (3, 8, 4)
    assert net.stats.s == 2
    assert net.stats.n - net.stats.l - net.stats.s == net.stats.delta == 2


def test_reversible_expands_forward_then_backward():
    doc = parse_network("X: B + A <-> A")
    net = doc.network
    assert net.r == 2
    assert net.reaction_text(0) == "B + A -> A"
    assert net.reaction_text(1) == "A -> B + A"
    assert [rx.label for rx in net.reactions] == ["X_f", "X_b"]


def test_reversible_rates():
    doc = parse_network("A <-> B [k=1, 3/2]\nB -> C [k=2]")
    assert doc.rate_vector() == (1, Fraction(3, 2), 2)
    doc = parse_network("A <-> B [k=5]")
    assert doc.rate_vector() == (5, 5)


def test_zero_complex_and_comments():
    doc = parse_network("# a comment\n\n  V -> 0   # decay\n0 -> V\n")
    assert doc.network.r == 2
    assert doc.network.complexes[1].is_zero


def test_fraction_coefficients():
    net = parse_network("1/2 A + B -> 3/4 C").network
    assert net.complexes[0].as_dict() == {0: Fraction(1, 2), 1: 1}
    assert net.complexes[1].as_dict() == {2: Fraction(3, 4)}


def test_species_declaration_fixes_order():
    net = load("branch.crn").network
    assert net.species_names == ("A", "B", "C")
    assert parse_network("B -> 2C").network.species_names == ("B", "C")


@pytest.mark.parametrize(
    "text, fragment",
    [
        ("A -> A", "self-loop"),
        ("A + B -> B + A", "self-loop"),
        ("A -> B\nA -> B", "duplicate reaction"),
        ("A <-> B\nB -> A", "duplicate reaction"),
        ("A -> B [k=0]", "positive"),
        ("A -> B [k=-1]", "bad rate"),
        ("0 A -> B", "zero coefficient"),
        ("0.5A -> B", "decimal"),
        ("A -> B [k=1]\nB -> C", "every reaction"),
        ("A => B", "arrow"),
        ("A -> B -> C", "arrow"),
        ("A + -> B", "empty term"),
        ("-> B", "empty complex"),
        ("2 -> B", "species name"),
        ("R: A -> B\nR: B -> C", "duplicate reaction label"),
        ("", "no reactions"),
    ],
)
def test_parse_errors(text, fragment):
    with pytest.raises(ParseError) as info:
        parse_network(text)
    assert fragment in str(info.value)


def test_error_reports_position():
    with pytest.raises(ParseError) as info:
        parse_network("A -> B\nC -> 2 + D")
    assert info.value.line == 2
    assert info.value.column == 6


def test_format_baccam():
    text = format_network(load("baccam.crn"))
    lines = text.strip().splitlines()
    assert len(lines) == 5
    assert lines[4] == "R5: V -> 0"


def test_format_keeps_rates():
    doc = parse_network("k1: A -> B [k=1]\nk2: B -> A [k=2]")
    text = format_network(doc)
    assert "[k=1]" in text and "[k=2]" in text
    assert parse_network(text) == doc


@pytest.mark.parametrize("path", sorted(FIXTURES.glob("*.crn")), ids=lambda p: p.name)
def test_fixture_round_trip(path):
    doc = parse_network(path.read_text())
    text = format_network(doc)
    again = parse_network(text)
    assert again == doc
    assert format_network(again) == text


def _doc_from_network(net, rates=None):
    return NetworkDocument(net, rates, {})


@settings(max_examples=100, deadline=None)
@given(st.integers(0, 10**6), st.sampled_from([generic_network, reversible_network, weakly_reversible_network]),
       st.booleans())
def test_random_round_trip(seed, generator, with_rates):
    net = generator(seed)
    rates = {j: Fraction(1 + (seed + j) % 5, 1 + j % 3) for j in range(net.r)} if with_rates else None
    doc = NetworkDocument(net, rates, {})
    assert parse_network(format_network(doc)) == doc


def test_whitespace_insensitive():
    a = parse_network("2A+B->A+2B")
    b = parse_network("\n\n   2 A  +   B  ->   A + 2 B   \n")
    assert a == b
