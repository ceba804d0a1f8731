import hashlib
import json

import pytest
from hypothesis import given, strategies as st

from chevdeform.classifier import (CLAUSES, CONDITIONS, FAILS, GUARDS, HOLDS, UNKNOWN, GroupTypeDescriptor,
                                   UnsupportedDescriptor, atlas, classify, cross_validate, gaps,
                                   load_exceptions, oracle_constructible, parse_descriptor, validation_grid)

# Exception lists typed in by hand from the displayed lists, independently of
# the data file, so that a transcription slip in either shows up here.
E_PF = [("SL2", 2), ("SL2", 3), ("SU3", 2), ("Sp4", 2), ("G2", 2)]
E_SCH = [("A1", 4), ("A1", 9), ("A2", 2), ("A2", 4), ("A3", 2), ("B2", 2), ("B3", 2), ("B3", 3), ("C3", 2),
         ("D4", 2), ("F4", 2), ("G2", 3), ("G2", 4), ("2A3", 2), ("2A3", 3), ("2A5", 2), ("2E6", 2)]
E_NS = [("SL2", 2), ("SL2", 3), ("PGL2", 2), ("PGL2", 3), ("PGL2", 4), ("SL3", 2), ("PGL3", 2), ("SU3", 2),
        ("PGU3", 2), ("PGU4", 2), ("SO6", 2)]
ZLB_MAIN = [("A1", 2), ("A1", 3), ("2A2", 2), ("2A3", 2), ("B2", 2), ("G2", 2)]
ZLB_VAN = [("A1", 2), ("A1", 3), ("A1", 5), ("2A2", 2), ("C*", 2), ("C*", 3), ("C*", 4), ("C*", 5), ("C*", 9),
           ("G2", 2)]
DATA_SHA256 = "c67dcf17958035dc7ff442c741fa67b0ed78bdf8f0bfe90b25cf33911d982b74"


def test_exception_lists_match_transcription():
    exc = load_exceptions()
    for name, lst in [("E_pf", E_PF), ("E_sch", E_SCH), ("E_ns", E_NS), ("zlb_main", ZLB_MAIN),
                      ("zlb_van", ZLB_VAN)]:
        assert [tuple(e) for e in exc[name]] == lst, name
    assert [tuple(e) for e in exc["gl_exceptions"]] == [(2, 2), (2, 3), (2, 5)]


def test_exception_data_checksum():
    text = json.dumps(load_exceptions(), sort_keys=True, separators=(",", ":"))
    assert hashlib.sha256(text.encode()).hexdigest() == DATA_SHA256


# ---------------------------------------------------------------------------
# descriptors

@pytest.mark.parametrize("text,label", [("A1:q=7:sc", "A1:q=7:sc"), ("A1:q=7", "A1:q=7:sc"),
                                        ("2A2:q=2", "2A2:q=2:sc"), ("A3:q=2:int2", "A3:q=2:int2"),
                                        ("GL2:q=5", "GL2:q=5"), ("GSp4:q=3", "GSp4:q=3"),
                                        ("A1:q=3:zlb", "A1:q=3:sc:zlb"), ("E6:q=4:ad", "E6:q=4:ad")])
def test_parse_descriptor_round_trip(text, label):
    d = parse_descriptor(text)
    assert str(d) == label
    assert parse_descriptor(str(d)) == d


@pytest.mark.parametrize("text", ["A0:q=2", "B1:q=3", "D3:q=2", "A1:q=6", "A1", "2A1:q=4", "E7:q=2:int5",
                                  "X2:q=2", "E6:q=3:int3x"])
def test_bad_descriptors(text):
    with pytest.raises((UnsupportedDescriptor, ValueError)):
        parse_descriptor(text)


def test_b2_and_c2_are_the_same_type():
    assert parse_descriptor("B2:q=2").key() == parse_descriptor("C2:q=2").key()
    assert classify(parse_descriptor("B2:q=3")).to_json()["conditions"] == \
        classify(parse_descriptor("C2:q=3")).to_json()["conditions"]


# ---------------------------------------------------------------------------
# table verdicts

def verdicts(text, literal=False):
    return {c: v.verdict for c, v in classify(parse_descriptor(text), literal=literal).conditions.items()}


def test_a1_q7_holds_everywhere():
    v = verdicts("A1:q=7:sc")
    for c in ("pf", "sch", "ct", "l-ge", "van", "n-s"):
        assert v[c] == HOLDS, c


def test_a1_q5_van_fails():
    assert verdicts("A1:q=5:sc")["van"] == FAILS


def test_a1_q2_pf_and_ns():
    assert verdicts("A1:q=2:sc")["pf"] == FAILS
    assert verdicts("A1:q=2:sc", literal=True)["n-s"] == FAILS
    # SL2(Z/4) -> SL2(F2) does not split, so the guarded reading holds
    assert verdicts("A1:q=2:sc")["n-s"] == HOLDS


def test_c3_q9_van_is_not_asserted():
    assert verdicts("C3:q=9:sc")["van"] == UNKNOWN
    assert verdicts("C3:q=7:sc")["van"] == HOLDS


@pytest.mark.parametrize("q,verdict", [(7, HOLDS), (2, FAILS), (3, HOLDS)])
def test_gl2_lcl(q, verdict):
    assert verdicts(f"GL2:q={q}")["l-cl"] == verdict


def test_gl2_q7_all_hold_and_gl3_lun():
    assert set(verdicts("GL2:q=7").values()) == {HOLDS}
    assert verdicts("GL3:q=3")["l-un"] == HOLDS


@pytest.mark.parametrize("text,c,verdict", [("A1:q=4:sc", "sch", FAILS), ("A1:q=3:sc", "n-s", FAILS),
                                            ("A1:q=4:sc", "n-s", HOLDS), ("A1:q=7:ad", "ct", HOLDS),
                                            ("A1:q=7:sc", "ct", HOLDS), ("A1:q=2:sc", "ct", FAILS),
                                            ("A2:q=3:sc", "ct", FAILS), ("A2:q=3:ad", "ct", HOLDS),
                                            ("A2:q=2:sc", "n-s", FAILS), ("2A2:q=2:sc", "pf", FAILS)])
def test_table_examples(text, c, verdict):
    assert verdicts(text)[c] == verdict


def test_twisted_van_is_unknown():
    assert verdicts("2A3:q=4:sc")["van"] == UNKNOWN


def test_guard_clauses_documented():
    for g in GUARDS:
        assert g in CLAUSES


# ---------------------------------------------------------------------------
# invariants over the whole atlas

TYPES = ["A1", "A2", "A3", "A4", "B2", "B3", "C3", "C4", "D4", "D5", "E6", "E7", "E8", "F4", "G2", "2A2", "2A3",
         "2D4", "2E6", "GL2", "GL3", "GSp4"]
QS = [2, 3, 4, 5, 7, 8, 9, 11]
ALL = atlas(TYPES, QS, isogenies=("sc", "ad", 2, 3)) + atlas(TYPES, QS, isogenies=("sc", "ad"), literal=True)


def test_atlas_nonempty_and_total():
    assert len(ALL) > 200
    for r in ALL:
        assert list(r.conditions) == list(CONDITIONS)


def test_every_citation_is_a_known_clause():
    for r in ALL:
        for c, v in r.conditions.items():
            assert v.cite in CLAUSES, (str(r.descriptor), c, v.cite)
            # derived-group verdicts name both clauses, e.g. Table(zlb.derived/pf.list)
            assert v.source.startswith(f"Table({v.cite}") and v.source.endswith(")")
            assert all(part in CLAUSES for part in v.source[6:-1].split("/"))
            assert v.verdict in (HOLDS, FAILS, UNKNOWN)


def test_implications_between_lie_conditions():
    for r in ALL:
        v = {c: x.verdict for c, x in r.conditions.items()}
        if v["l-ge"] == HOLDS:
            assert v["l-un"] != FAILS and v["l-cl"] != FAILS and v["csc"] != FAILS, str(r.descriptor)


def test_pf_fails_exactly_on_the_list():
    pf_types = {"SL2": "A1", "SU3": "2A2", "Sp4": "C2", "G2": "G2"}
    for r in atlas(["A1", "2A2", "C2", "G2", "A2"], QS, ("sc",)):
        d = r.descriptor
        listed = any(pf_types.get(g) == d.type_label and q == d.q for g, q in E_PF)
        assert (r.verdict("pf") == FAILS) == listed, str(d)


@given(st.sampled_from(range(len(ALL))))
def test_classification_is_deterministic(i):
    d = ALL[i].descriptor
    literal = ALL[i].literal
    a = classify(d, literal=literal).to_json()
    b = classify(parse_descriptor(str(d)), literal=literal).to_json()
    assert json.dumps(a, sort_keys=True) == json.dumps(b, sort_keys=True)


def test_gaps_list_unknowns():
    reps = atlas(["A1", "C3"], [2, 3, 9], ("sc",))
    g = gaps(reps)
    assert ("C3:q=9:sc", "van") in g
    assert all(classify(parse_descriptor(d)).verdict(c) == UNKNOWN for d, c in g)


# ---------------------------------------------------------------------------
# table against brute force

FAST = ["A1:q=2:sc", "A1:q=2:ad", "A1:q=3:sc", "A1:q=3:ad", "A1:q=4:sc", "A1:q=5:sc", "A1:q=5:ad",
        "A1:q=7:sc", "2A2:q=2:sc", "GL2:q=2", "GL2:q=3", "GL2:q=5", "GL3:q=2"]
LITERAL_DISAGREEMENTS = {
    "A1:q=2:sc": {"sch", "csc", "n-s"},
    "A1:q=2:ad": {"sch", "ct"},
    "A1:q=3:sc": {"sch"},
    "A1:q=3:ad": {"sch"},
    "2A2:q=2:sc": {"sch"},
    "GL2:q=2": {"sch", "csc", "l-un", "n-s", "standardHyp"},
    "GL2:q=3": {"sch"},
    "GL3:q=2": {"n-s"},
}


@pytest.fixture(scope="module")
def validated():
    return {s: (cross_validate(parse_descriptor(s)), cross_validate(parse_descriptor(s), literal=True))
            for s in FAST}


def test_default_mode_agrees_with_brute_force(validated):
    for s, (rep, _) in validated.items():
        assert not rep.inconsistent, (s, rep.disagreements())
        for c, v in rep.conditions.items():
            assert v.source in ("Both", "Oracle") or (c == "n-s" and s.startswith("2A2")), (s, c, v.source)


def test_literal_mode_disagreements_are_exactly_the_recorded_set(validated):
    found = {s: set(lit.disagreements()) for s, (_, lit) in validated.items() if lit.disagreements()}
    assert found == LITERAL_DISAGREEMENTS


def test_oracle_fills_unknowns(validated):
    rep, _ = validated["A1:q=2:sc"]
    assert rep.conditions["sch"].verdict == FAILS
    assert rep.conditions["sch"].source == "Oracle"
    assert rep.conditions["sch"].note == "sch.guard"


def test_oracle_grid_membership():
    assert all(oracle_constructible(d) is not None for d in validation_grid())
    assert len(validation_grid()) == 30
    assert oracle_constructible(parse_descriptor("E6:q=2")) is None
    with pytest.raises(UnsupportedDescriptor):
        cross_validate(parse_descriptor("G2:q=2"))


def test_budget_recorded_not_fatal():
    rep = cross_validate(GroupTypeDescriptor("A", 2, 3, "sc"), budget=100)
    assert any(b.startswith("sch") for b in rep.budget_exceeded)
    assert rep.conditions["sch"].source.startswith("Table")
