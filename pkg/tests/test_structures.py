from __future__ import annotations

import pytest

from uniline.structures import (
    FiniteStructure,
    Signature,
    StructureError,
    parse_structure,
    render_structure,
    render_structure_json,
)

CHAIN3_TEXT = """\
signature
  lt/2
universe
  a b c
relations
  lt: (a,b) (b,c) (a,c)
"""


def test_parse_chain3_text(chain3):
    assert parse_structure(CHAIN3_TEXT) == chain3


def test_parse_preserves_element_order():
    text = CHAIN3_TEXT.replace("a b c", "c b a")
    structure = parse_structure(text)
    assert structure.universe == ("c", "b", "a")


def test_arity_mismatch_reports_location():
    bad = CHAIN3_TEXT.replace("(a,b)", "(a,b,c)")
    with pytest.raises(StructureError, match="arity mismatch"):
        parse_structure(bad)


def test_unknown_element_rejected():
    bad = CHAIN3_TEXT.replace("(a,b)", "(a,z)")
    with pytest.raises(StructureError, match="unknown element"):
        parse_structure(bad)


def test_duplicate_universe_element_rejected():
    bad = CHAIN3_TEXT.replace("a b c", "a b b")
    with pytest.raises(StructureError, match="duplicate universe element"):
        parse_structure(bad)


def test_unknown_relation_rejected():
    bad = CHAIN3_TEXT.replace("lt:", "gt:")
    with pytest.raises(StructureError, match="unknown relation"):
        parse_structure(bad)


def test_malformed_syntax_reports_line():
    with pytest.raises(StructureError, match="line 1"):
        parse_structure("garbage before sections\nsignature\n")


def test_empty_universe_rejected():
    with pytest.raises(StructureError, match="non-empty"):
        parse_structure("signature\n  lt/2\nuniverse\nrelations\n  lt:\n")


def test_empty_relations_allowed(empty3):
    text = "signature\n  e/2\nuniverse\n  a b c\nrelations\n  e:\n"
    assert parse_structure(text) == empty3


def test_relations_section_optional(empty3):
    assert parse_structure("signature\n  e/2\nuniverse\n  a b c\n") == empty3


def test_round_trip_text(chain3, cycle3, empty4):
    for structure in (chain3, cycle3, empty4):
        assert parse_structure(render_structure(structure)) == structure


def test_round_trip_json(chain3, cycle3, empty4):
    for structure in (chain3, cycle3, empty4):
        assert parse_structure(render_structure_json(structure)) == structure


def test_text_rendering_is_stable(chain3):
    once = render_structure(chain3)
    assert render_structure(parse_structure(once)) == once


def test_json_rendering_is_stable(chain3):
    once = render_structure_json(chain3)
    assert render_structure_json(parse_structure(once)) == once


def test_parsing_is_deterministic():
    assert parse_structure(CHAIN3_TEXT) == parse_structure(CHAIN3_TEXT)


def test_signature_invariants():
    with pytest.raises(StructureError, match="duplicate relation"):
        Signature((("e", 2), ("e", 1)))
    with pytest.raises(StructureError, match="arity"):
        Signature((("e", 0),))


def test_build_rejects_unknown_relation():
    with pytest.raises(StructureError, match="unknown relation"):
        FiniteStructure.build(Signature.of(e=2), ["a"], {"f": []})


def test_comments_and_blank_lines_ignored(chain3):
    noisy = "# header\n\n" + CHAIN3_TEXT.replace("universe", "# mid\nuniverse")
    assert parse_structure(noisy) == chain3
