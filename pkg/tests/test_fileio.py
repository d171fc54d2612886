import pytest

from posetrep.errors import (CycleDetected, InvalidLabel,
                             MonotonicityViolation, ParseError)
from posetrep.fileio import (format_poset, format_sspace, load_sspace,
                             parse_poset, parse_sspace, save_sspace)
from posetrep.linalg import QQ, Field, Subspace
from posetrep.poset import Poset
from posetrep.sspace import SSpace

from helpers import example510

EX510 = """\
# the running example
elements: a b c d e f g p
relations: p<a p<b p<c e<p e<d g<e g<f
"""


def test_parse_poset_example():
    p = parse_poset(EX510)
    assert p == example510()


def test_poset_round_trip():
    p = example510()
    assert parse_poset(format_poset(p)) == p


def test_parse_errors():
    with pytest.raises(ParseError):
        parse_poset("relations: a<b")
    with pytest.raises(ParseError):
        parse_poset("elements: a b\nrelations: ab")
    with pytest.raises(CycleDetected):
        parse_poset("elements: a b\nrelations: a<b b<a")


def test_reserved_characters_rejected_for_user_labels():
    with pytest.raises(InvalidLabel):
        parse_poset("elements: a x^y\nrelations:")
    with pytest.raises(InvalidLabel):
        parse_poset("elements: velocity\nrelations:")


def test_derived_header_allows_rendered_labels():
    text = "elements-derived: d f d^f\nrelations: d^f<d d^f<f\n"
    p = parse_poset(text)
    assert p.lt("d^f", "d")
    assert format_poset(p) == text


def test_sspace_round_trip(tmp_path):
    p = example510()
    v = SSpace(p, QQ, 2, {
        "p": Subspace.from_rows(QQ, 2, [[1, "1/2"]]),
        "a": Subspace.full(QQ, 2),
        "b": Subspace.full(QQ, 2),
        "c": Subspace.full(QQ, 2),
    })
    assert "1/2" in format_sspace(v, "x.poset")
    path = tmp_path / "v.ssp"
    save_sspace(v, str(path))
    again = load_sspace(str(path))
    assert again == v
    assert (tmp_path / "v.poset").exists()


def test_sspace_prime_field(tmp_path):
    p = Poset.build(["s", "t"], [("s", "t")])
    f5 = Field.prime(5)
    v = SSpace(p, f5, 3, {"s": Subspace.from_rows(f5, 3, [[1, 2, 3]]),
                          "t": Subspace.from_rows(f5, 3, [[1, 2, 3], [0, 1, 4]])})
    path = tmp_path / "w.ssp"
    save_sspace(v, str(path))
    assert load_sspace(str(path)) == v


def test_sspace_monotonicity_checked_on_load():
    # s < t but only s carries a nonzero subspace
    bad = "field: Q\nposet: ignored\ndim: 1\nspace s: 1\n"

    def loader(_):
        return Poset.build(["s", "t"], [("s", "t")])

    with pytest.raises(MonotonicityViolation):
        parse_sspace(bad, loader)


def test_sspace_parse_errors():
    def loader(_):
        return Poset.build(["s"], [])

    with pytest.raises(ParseError):
        parse_sspace("poset: x\ndim: 1", loader)
    with pytest.raises(ParseError):
        parse_sspace("field: Q\nposet: x\ndim: 2\nspace s: 1\n", loader)
    with pytest.raises(ParseError):
        parse_sspace("field: F 6\nposet: x\ndim: 1\n", loader)


def test_sspace_omitted_elements_default_to_zero():
    def loader(_):
        return Poset.build(["s", "t"], [("s", "t")])

    v = parse_sspace("field: F 2\nposet: x\ndim: 2\nspace t: 1,0\n", loader)
    assert v.sub("s").is_zero()
    assert v.sub("t").dim == 1
