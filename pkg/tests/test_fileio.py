from __future__ import annotations

import pytest
from hypothesis import given, settings, strategies as st

from semiprim.errors import NotAnAutomorphism, ParseError
from semiprim.fileio import (
    format_group_file,
    format_triple,
    parse_group_file,
    parse_group_text,
    parse_triple_text,
    read_triple_file,
)
from semiprim.group import PermGroup
from semiprim.perm import to_raw
from semiprim.triples import build_from_triple, validate_triple


def test_sym3_with_stabilizer(tmp_path):
    f = tmp_path / "s3.grp"
    f.write_text("degree 3\ngen (0 1 2)\ngen (0 1)\nstab (0 1)\n")
    G, H = parse_group_file(f)
    assert G.order() == 6 and H.order() == 2
    assert H.contains_raw(to_raw([1, 0, 2], 3))


def test_c5_without_stabilizer(data_dir):
    G, H = parse_group_file(data_dir / "c5.grp")
    assert G.order() == 5 and H is None
    A = parse_group_text((data_dir / "c5.grp").read_text()).action()
    assert A.degree == 5


def test_point_out_of_range(data_dir):
    with pytest.raises(ParseError) as e:
        parse_group_file(data_dir / "bad.grp")
    assert e.value.line == 2
    assert "point out of range" in str(e.value)


@pytest.mark.parametrize(
    "text,line",
    [
        ("gen (0 1)\ndegree 2\n", 1),
        ("degree 3\ndegree 3\n", 2),
        ("degree x\n", 1),
        ("degree 3\nfoo (0 1)\n", 2),
        ("# only a comment\n", 1),
        ("degree 3\ngen (0 1\n", 2),
    ],
)
def test_parse_errors_carry_lines(text, line):
    with pytest.raises(ParseError) as e:
        parse_group_text(text)
    assert e.value.line == line


def test_comments_and_names():
    gf = parse_group_text("# hello\ndegree 4\nname Klein\ngen (0 1)(2 3)\n\ngen (0 2)(1 3)\n")
    assert gf.name == "Klein" and gf.group().order() == 4


def test_intransitive_without_stabilizer_is_regular():
    gf = parse_group_text("degree 4\ngen (0 1)\n")
    A = gf.action()
    assert A.stab.order() == 1 and A.degree == 2


perm_lists = st.integers(min_value=2, max_value=8).flatmap(
    lambda n: st.lists(st.permutations(list(range(n))), min_size=1, max_size=3).map(lambda gs: (n, gs))
)


@settings(max_examples=40, deadline=None)
@given(perm_lists)
def test_group_file_roundtrip(data):
    n, gs = data
    G = PermGroup(n, [to_raw(g, n) for g in gs])
    back = parse_group_text(format_group_file(G, name="x")).group()
    assert back.degree == n and back.gens == G.gens


def test_c3_triple_builds_sym3(data_dir):
    t = read_triple_file(data_dir / "c3.tri")
    assert t.L.order() == 1
    A = build_from_triple(t)
    assert (A.degree, A.order()) == (3, 6)


def test_wrong_order_image_is_not_an_automorphism():
    with pytest.raises(NotAnAutomorphism):
        parse_triple_text("K:\ndegree 4\ngen (0 1 2 3)\naut:\n(0 2)(1 3)\nL:\n")


def test_image_outside_k(data_dir):
    with pytest.raises(NotAnAutomorphism):
        read_triple_file(data_dir / "c3bad.tri")


def test_empty_l_section():
    t = parse_triple_text("K:\ndegree 5\ngen (0 1 2 3 4)\naut:\n(0 4 3 2 1)\nL:\n")
    assert t.L.order() == 1 and validate_triple(t).valid


def test_triple_errors():
    with pytest.raises(ParseError):
        parse_triple_text("degree 3\n")
    with pytest.raises(ParseError):
        parse_triple_text("K:\ndegree 3\ngen (0 1 2)\naut:\n(0 2 1); (0 1 2)\n")
    with pytest.raises(ParseError):
        parse_triple_text("K:\ndegree 3\ngen (0 1 2)\nK:\n")


def test_triple_text_roundtrip(data_dir):
    t = read_triple_file(data_dir / "c3.tri")
    t2 = parse_triple_text(format_triple(t))
    assert (len(t2.K), t2.H.order(), t2.L.order()) == (3, 2, 1)
    assert t2.H.gens == t.H.gens
