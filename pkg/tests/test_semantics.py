import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from pcologic import Signature, cond_prob, eval_co, eval_pco, intervene, prob
from pcologic.errors import EmptyModel, NotCoFormula, RangeViolation
from pcologic.formula import GE, GT, And, Cf, Eq, GOr, Neq, ProbCmp, ProbConst, SelImp, bot, top
from pcologic.oracle import FormulaSampler
from pcologic.oracle.sampling import random_model
from pcologic.semantics import eval_clauses

import reference as R

SIG3 = Signature({"A": "01", "B": "012", "C": "01"})


def test_worked_example_probabilities(chain):
    z2 = Eq("Z", "2")
    assert prob(chain, z2) == Fraction(1, 2)
    assert prob(intervene(chain, {"Y": 1}), z2) == Fraction(1, 4)
    assert eval_pco(chain, ProbConst(z2, GE, "1/2"))
    assert not eval_pco(chain, ProbConst(z2, GT, "1/2"))
    assert eval_pco(chain, Cf({"Y": 1}, ProbConst(z2, GE, "1/4")))
    assert not eval_pco(chain, Cf({"Y": 1}, ProbConst(z2, GT, "1/4")))


def test_conditional_probability(chain):
    assert cond_prob(chain, Eq("Z", "2"), Neq("X", "0")) == Fraction(2, 3)
    assert cond_prob(chain, Eq("Z", "2"), And(Eq("X", "0"), Eq("X", "1"))) is None


def test_counterfactual_at_single_row(chain):
    # setting X=2 in every row makes Y=3 and Z=6
    assert eval_co(chain, Cf({"X": 2}, And(Eq("Y", "3"), Eq("Z", "6"))))
    # Y is set directly, X unaffected
    assert not eval_co(chain, Cf({"Y": 1}, Eq("X", "0")))


def test_inconsistent_counterfactual_is_vacuous(chain):
    assert eval_pco(chain, Cf([("X", "0"), ("X", "1")], bot(chain.signature)))


def test_empty_model_satisfies_everything(xy, models2):
    empty = next(m for m in models2 if m.empty)
    s = FormulaSampler(xy, seed=11)
    for _ in range(100):
        assert eval_pco(empty, s.pco(3))
    with pytest.raises(EmptyModel):
        prob(empty, Eq("X", "0"))


def test_top_and_bot(models2, xy):
    for m in models2:
        assert eval_pco(m, top(xy))
        assert eval_pco(m, bot(xy)) == m.empty


def test_type_errors(chain):
    with pytest.raises(NotCoFormula):
        eval_co(chain, ProbConst(Eq("X", "0"), GE, 0))
    with pytest.raises(NotCoFormula):
        prob(chain, GOr(Eq("X", "0"), Eq("X", "1")))
    with pytest.raises(RangeViolation):
        eval_pco(chain, Eq("X", "9"))
    with pytest.raises(RangeViolation):
        eval_pco(chain, Eq("W", "0"))


def test_global_disjunction_is_not_flat(xy):
    from pcologic import CausalMultiteam, Multiteam
    m = CausalMultiteam(Multiteam(xy, [(0, 0), (1, 0)]))
    split = GOr(Eq("X", "0"), Eq("X", "1"))
    assert not eval_pco(m, split)
    assert all(eval_pco(m.with_team({row: 1}), split) for row in m.team.counts)


def test_agrees_with_reference_on_enumerated_models(xy, models2):
    s = FormulaSampler(xy, seed=2024)
    for _ in range(150):
        phi = s.pco(4)
        for m in models2:
            assert eval_pco(m, phi) == R.model_holds(m, phi), phi


@settings(max_examples=150, deadline=None)
@given(st.integers(0, 10**6))
def test_agrees_with_reference_on_random_models(seed):
    rng = random.Random(seed)
    model = random_model(SIG3, rng, max_rows=7)
    phi = FormulaSampler(SIG3, seed=seed).pco(4)
    assert eval_pco(model, phi) == R.model_holds(model, phi)


@settings(max_examples=150, deadline=None)
@given(st.integers(0, 10**6))
def test_co_formulas_are_flat_and_downward_closed(seed):
    rng = random.Random(seed)
    model = random_model(SIG3, rng, max_rows=6)
    alpha = FormulaSampler(SIG3, seed=seed).co(4)
    whole = eval_co(model, alpha)
    assert whole == eval_clauses(model, alpha)
    singles = [eval_co(model.with_team({row: 1}), alpha) for row in model.team.counts]
    assert whole == all(singles)
    if whole and model.team.counts:
        row = rng.choice(list(model.team.counts))
        assert eval_co(model.with_team({row: 1}), alpha)


@settings(max_examples=100, deadline=None)
@given(st.integers(0, 10**6))
def test_probability_is_additive(seed):
    rng = random.Random(seed)
    model = random_model(SIG3, rng, max_rows=6, min_rows=1)
    s = FormulaSampler(SIG3, seed=seed)
    a, b = s.co(2), s.co(2)
    # P(a) = P(a & b) + P(a & ~b)
    from pcologic.formula import neg
    assert prob(model, a) == prob(model, And(a, b)) + prob(model, And(a, neg(SIG3, b)))
    assert 0 <= prob(model, a) <= 1
    assert eval_pco(model, ProbCmp(a, GE, And(a, b)))


def test_multiplicities_matter(xy):
    from pcologic import CausalMultiteam, Multiteam
    one = CausalMultiteam(Multiteam(xy, {(0, 0): 1, (1, 0): 1}))
    three = CausalMultiteam(Multiteam(xy, {(0, 0): 3, (1, 0): 1}))
    atom = ProbConst(Eq("X", "0"), GT, "1/2")
    assert not eval_pco(one, atom) and eval_pco(three, atom)
    assert eval_co(one, Eq("Y", "0")) == eval_co(three, Eq("Y", "0"))


def test_selective_implication_conditions(chain):
    phi = SelImp(Neq("X", "0"), ProbConst(Eq("Z", "2"), GE, "2/3"))
    assert eval_pco(chain, phi)
