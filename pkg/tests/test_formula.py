import pytest

from pcologic.errors import FormulaTooLarge, IllTypedArgument, NotCoFormula, SameVariable
from pcologic.formula import (
    DEFINED_OPS,
    GE,
    GT,
    And,
    Cf,
    Eq,
    GOr,
    Neq,
    ProbCmp,
    ProbConst,
    SelImp,
    bot,
    build_aff,
    build_dc,
    build_end,
    build_phi_f,
    is_bot,
    is_top,
    mk_defined,
    neg,
    neg_c,
    size,
    top,
    tuple_literal,
)
from pcologic.oracle import FormulaSampler


def test_co_flag_follows_structure():
    lit = Eq("X", "0")
    assert lit.co and SelImp(lit, Neq("Y", "1")).co
    assert Cf([("X", "1")], lit).co
    assert not ProbConst(lit, GE, "1/2").co
    assert not GOr(lit, lit).co
    assert not SelImp(lit, ProbConst(lit, GT, 0)).co


def test_probability_atoms_need_co_arguments():
    p = ProbConst(Eq("X", "0"), GE, 0)
    with pytest.raises(NotCoFormula):
        ProbConst(p, GE, 0)
    with pytest.raises(NotCoFormula):
        SelImp(p, Eq("X", "0"))
    with pytest.raises(NotCoFormula):
        ProbCmp(GOr(Eq("X", "0"), Eq("X", "1")), GE, Eq("X", "0"))


def test_bounds_must_lie_in_unit_interval():
    with pytest.raises(IllTypedArgument):
        ProbConst(Eq("X", "0"), GE, "3/2")
    with pytest.raises(IllTypedArgument):
        ProbConst(Eq("X", "0"), "<", 0)


def test_structural_equality_and_hashing():
    a = And(Eq("X", "0"), Cf({"Y": 1}, Neq("X", "1")))
    b = And(Eq("X", "0"), Cf({"Y": "1"}, Neq("X", "1")))
    assert a == b and hash(a) == hash(b)
    assert len({a, b}) == 1


def test_top_and_bot_use_first_variable(xy):
    assert top(xy) == Cf([("X", "0")], Eq("X", "0"))
    assert is_bot(bot(xy)) and is_top(top(xy))
    assert neg_c(xy, top(xy)) == bot(xy)
    assert neg_c(xy, bot(xy)) == top(xy)


def test_defined_operators_expand_to_primitives(xy):
    a = Eq("X", "0")
    assert mk_defined(xy, "neg", a) == SelImp(a, bot(xy))
    assert mk_defined(xy, "le", a, "1/3") == ProbConst(neg(xy, a), GE, "2/3")
    assert mk_defined(xy, "cmp_lt", a, Eq("Y", "1")) == ProbCmp(Eq("Y", "1"), GT, a)
    for op in ("top", "bot"):
        assert mk_defined(xy, op).co
    with pytest.raises(IllTypedArgument):
        mk_defined(xy, "xor", a, a)
    assert len(DEFINED_OPS) == 18


def test_neg_c_swaps_connectives(xy):
    a, b = Eq("X", "0"), Eq("Y", "1")
    p = ProbConst(a, GE, "1/2")
    q = ProbCmp(a, GE, b)
    assert isinstance(neg_c(xy, And(p, q)), GOr)
    assert neg_c(xy, q) == ProbCmp(b, GT, a)
    assert neg_c(xy, p) == ProbConst(neg(xy, a), GT, "1/2")
    # double negation of an evaluation atom is the atom again
    assert neg_c(xy, neg_c(xy, p)) == p


def test_neg_c_of_vacuous_counterfactual_is_bottom(xy):
    phi = Cf([("X", "0"), ("X", "1")], Eq("Y", "0"))
    assert is_bot(neg_c(xy, phi))


def test_tuple_literal(xy):
    assert tuple_literal(("X", "Y"), ("0", "1")) == And(Eq("X", "0"), Eq("Y", "1"))
    assert tuple_literal(("X", "Y"), ("0", "1"), "!=") == GOr(Neq("X", "0"), Neq("Y", "1"))
    assert tuple_literal(("X", "Y"), ("0", "1"), "!=", co=True, sig=xy).co
    with pytest.raises(IllTypedArgument):
        tuple_literal(("X",), ("0", "1"))


def test_builders_reject_bad_input(xy):
    with pytest.raises(SameVariable):
        build_dc(xy, "X", "X")
    with pytest.raises(FormulaTooLarge):
        build_aff(xy, "X", "Y", budget=10)


def test_builders_are_co_or_pco(xy, xyz):
    assert build_dc(xy, "X", "Y").co
    assert build_aff(xyz, "X", "Y").co
    assert not build_end(xyz, "Z").co  # global disjunction
    from pcologic import FunctionComponent
    laws = FunctionComponent(xy, {"Y": {("0",): "1", ("1",): "0"}})
    assert build_phi_f(laws).co


def test_sampled_formulas_respect_depth(xy):
    s = FormulaSampler(xy, seed=3)
    for _ in range(200):
        assert s.co(3).co
        phi = s.pco(4)
        assert size(phi) >= 1
