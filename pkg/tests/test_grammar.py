import pytest
from hypothesis import given, strategies as st

from conftest import virtual_reps
from eqcoh.errors import ParseError
from eqcoh.grammar import format_degree, parse_degree
from eqcoh.reps import VirtualRep, lam, phi, quat_w, regular, sign, trivial


@pytest.mark.parametrize(
    "text,n,expected",
    [
        ("2 - L2 - L3", 6, VirtualRep.of(6, 2, {2: -1, 3: -1})),
        ("-L1", 4, -lam(4, 1)),
        ("3L0 + 2L1 + 4L2", 5, VirtualRep.of(5, 0, {0: 3, 1: 2, 2: 4})),
        ("1 + s", 2, trivial(2, 1) + sign(2)),
        ("2rho", 3, regular(3).scale(2)),
        ("phi(4) - w(2)", 3, phi(4, 3) - quat_w(2, 3)),
        ("  L 1 +\t2 ", 7, lam(7, 1) + trivial(7, 2)),
        ("+4", 1, trivial(1, 4)),
    ],
)
def test_parse_examples(text, n, expected):
    assert parse_degree(text, n) == expected


@pytest.mark.parametrize(
    "text,pos",
    [
        ("", 0),
        ("2 -", 3),
        ("L", 1),
        ("2 + x", 4),
        ("phi(3", 5),
        ("L1 L2", 3),
    ],
)
def test_parse_errors_report_position(text, pos):
    with pytest.raises(ParseError) as exc:
        parse_degree(text, 4)
    assert exc.value.position == pos


def test_sign_in_odd_order_is_a_domain_error():
    from eqcoh.errors import DomainError

    with pytest.raises(DomainError):
        parse_degree("s", 3)


@given(virtual_reps())
def test_round_trip(a):
    assert parse_degree(format_degree(a), a.n) == a


@given(virtual_reps(), st.sampled_from([" ", "\t", ""]))
def test_whitespace_insensitive(a, ws):
    text = format_degree(a)
    assert parse_degree(ws.join(text), a.n) == a
