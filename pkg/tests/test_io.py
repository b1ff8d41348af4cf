from fractions import Fraction
from pathlib import Path

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from pcologic import Signature, eval_pco
from pcologic.canonical import extract_description
from pcologic.errors import (
    CoFragmentViolation,
    CompatibilityViolation,
    ParseError,
    SourceSpan,
    UnknownVariable,
    ValueOutOfRange,
)
from pcologic.examples import arithmetic_chain
from pcologic.formula import GE, GT, And, Cf, Eq, GOr, Neq, ProbCmp, ProbConst, SelImp, neg_c
from pcologic.formula import implies, lor, neg, pr_eq, pr_le
from pcologic.io import (
    parse_description,
    parse_formula,
    parse_model,
    parse_signature,
    parse_spec,
    read_description,
    read_model,
    read_signature,
    to_text,
    write_description,
    write_model,
    write_signature,
)
from pcologic.oracle import FormulaSampler
from pcologic.oracle.sampling import random_model

EXAMPLES = Path(__file__).resolve().parent.parent / "docs" / "examples"
SIGNATURES = {
    "xy": Signature({"X": "01", "Y": "01"}),
    "three": Signature({"A": "01", "B": "012", "C": "01"}),
    "worked": arithmetic_chain().signature,
}


def test_precedence_and_associativity(xy):
    phi = parse_formula("X=0 & Y=1 || X=1 -> Y=0 => X=0", xy)
    assert phi == implies(xy, GOr(And(Eq("X", "0"), Eq("Y", "1")), Eq("X", "1")),
                          SelImp(Eq("Y", "0"), Eq("X", "0")))
    assert parse_formula("[X=1] Y=0 & X=0", xy) == And(Cf({"X": 1}, Eq("Y", "0")), Eq("X", "0"))
    assert parse_formula("[X=1,Y=0] (Y=0 & X!=0)", xy) == \
        Cf([("X", "1"), ("Y", "0")], And(Eq("Y", "0"), Neq("X", "0")))


def test_sugar_expands_to_primitives(xy):
    a, b = Eq("X", "0"), Eq("Y", "1")
    assert parse_formula("~X=0", xy) == neg(xy, a)
    assert parse_formula("X=0 \\/ Y=1", xy) == lor(xy, a, b)
    assert parse_formula("!P(X=0) >= 1/2", xy) == neg_c(xy, ProbConst(a, GE, "1/2"))
    assert parse_formula("P(X=0) = 1/3", xy) == pr_eq(xy, a, "1/3")
    assert parse_formula("P(X=0) <= 0.25", xy) == pr_le(xy, a, "1/4")
    assert parse_formula("P(X=0 | Y=1) > 1/2", xy) == SelImp(b, ProbConst(a, GT, "1/2"))
    assert parse_formula("P(X=0) < P(Y=1)", xy) == ProbCmp(b, GT, a)
    assert parse_formula("X=0 -> Y=1", xy) == implies(xy, a, b)


def test_spec_parsing(xy):
    assert parse_spec("X=1, Y=0", xy).pairs == (("X", "1"), ("Y", "0"))
    assert parse_spec("[X=0]", xy).pairs == (("X", "0"),)


def _span(exc_info):
    return exc_info.value.span


def test_unknown_variable_has_span(xy):
    with pytest.raises(UnknownVariable) as info:
        parse_formula("X=0 & W=1", xy)
    assert _span(info) == SourceSpan(6, 7)
    assert "^" in info.value.describe()


def test_value_out_of_range_has_span(xy):
    with pytest.raises(ValueOutOfRange) as info:
        parse_formula("[X=2] Y=0", xy)
    assert _span(info) == SourceSpan(3, 4)


def test_pco_under_co_connective_rejected(xy):
    with pytest.raises(CoFragmentViolation):
        parse_formula("P(X=0) >= 1/2 \\/ P(X=1) >= 1/2", xy)
    with pytest.raises(CoFragmentViolation):
        parse_formula("(X=0 || X=1) => Y=0", xy)
    with pytest.raises(CoFragmentViolation):
        parse_formula("~(P(X=0) > 0)", xy)


@pytest.mark.parametrize("text", ["X=0 &", "P(X=0) >= 3/2", "P(X=0) >= x", "X", "X=0 $",
                                  "P(X=0|Y=1) >= P(X=1)", "[X=0 Y=0"])
def test_malformed_input(xy, text):
    with pytest.raises(ParseError):
        parse_formula(text, xy)


@pytest.mark.parametrize("name", sorted(SIGNATURES))
def test_random_round_trips(name):
    sig = SIGNATURES[name]
    s = FormulaSampler(sig, seed=len(name))
    for _ in range(1000):
        phi = s.pco()
        assert parse_formula(to_text(phi, sig), sig) == phi
        assert parse_formula(to_text(phi), sig) == phi


@settings(max_examples=100, deadline=None)
@given(st.integers(0, 10**6))
def test_round_trip_preserves_truth(seed):
    import random
    sig = SIGNATURES["three"]
    phi = FormulaSampler(sig, seed=seed).pco(4)
    model = random_model(sig, random.Random(seed), max_rows=5)
    assert eval_pco(model, parse_formula(to_text(phi, sig), sig)) == eval_pco(model, phi)


def test_printer_sugar(xy):
    assert to_text(parse_formula("~X=0 \\/ TOP", xy), xy) == "~X=0 \\/ TOP"
    assert to_text(ProbConst(Eq("X", "0"), GE, Fraction(2, 4))) == "P(X=0) >= 1/2"


# -- files --


def test_example_files_load():
    model = read_model(EXAMPLES / "chain.model")
    assert model == arithmetic_chain()
    desc = read_description(EXAMPLES / "chain.desc")
    assert desc == extract_description(model)
    assert read_signature(EXAMPLES / "xy.sig") == SIGNATURES["xy"]


def test_file_round_trips(models3):
    for model in models3[::13]:
        assert parse_model(write_model(model)) == model
        if not model.empty:
            desc = extract_description(model)
            assert parse_description(write_description(desc)) == desc
    sig = SIGNATURES["three"]
    assert parse_signature(write_signature(sig)) == sig


def test_laws_can_span_lines():
    text = """signature
X: 0 1
Y: 0 1
laws
Y <- 0 -> 1
Y <- 1 -> 0   # negation
team
2: 0 1
"""
    model = parse_model(text)
    assert model.laws.parents("Y") == {"X"} and len(model) == 2


@pytest.mark.parametrize("text, fragment", [
    ("signature\nX: 0 1\nX: 0 1\n", "declared twice"),
    ("X: 0 1\n", "before the first section"),
    ("signature\nX: 0 1\nteam\n1: 2\n", "not in the range"),
    ("signature\nX: 0 1\nY: 0 1\nlaws\nY <- 0 -> 1\n", "missing the entry"),
    ("signature\nX: 0 1\nY: 0 1\nlaws\nY <- 0 1 -> 1\n", "needs 1 input"),
    ("signature\nX: 0 1\nteam\n0: 1\n", "positive count"),
])
def test_file_errors(text, fragment):
    with pytest.raises(Exception) as info:
        parse_model(text)
    assert fragment in str(info.value)


def test_file_error_spans_point_at_the_line():
    text = "signature\nX: 0 1\nteam\n1: 0\n1: 7\n"
    with pytest.raises(ParseError) as info:
        parse_model(text)
    assert text[info.value.start:info.value.end] == "7"
    assert "line 5" in info.value.describe()


def test_incompatible_team_in_file():
    text = "signature\nX: 0 1\nY: 0 1\nlaws\nY <- 0 -> 0; 1 -> 1\nteam\n1: 0 1\n"
    with pytest.raises(CompatibilityViolation):
        parse_model(text)


def test_weights_must_be_rational():
    text = "signature\nX: 0 1\nweights\n0 : half\n"
    with pytest.raises(ParseError) as info:
        parse_description(text)
    assert "not a rational" in info.value.message
