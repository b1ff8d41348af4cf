import pytest

from pcologic import eval_pco
from pcologic.errors import BudgetTooLarge, SideConditionViolation, UnknownRule, UnknownSchema
from pcologic.examples import correlated_pair
from pcologic.formula import GE, GT, Cf, Eq, ProbConst, SelImp, bot, iff, implies
from pcologic.io import read_model
from pcologic.oracle import (
    RULE_IDS,
    SCHEMA_IDS,
    EnumerationBudget,
    FormulaSampler,
    check_entailment,
    check_rule_soundness,
    check_validity,
    count_models,
    enumerate_models,
    estimate_models,
    instantiate_schema,
    law_families,
    make_instance,
    run_axiom_check,
)
from pcologic.oracle.schemas import full_instance_count
from pcologic.oracle.validity import first_countermodel

import reference as R


def test_model_counts_match_independent_recursion(xy, xyz, budget2, budget3):
    assert count_models(budget2) == R.count_models_recursively(xy, 4) == 130
    assert count_models(budget3) == R.count_models_recursively(xyz, 3) == 3195
    assert len(law_families(xyz)) == 199
    assert estimate_models(budget2) >= count_models(budget2)


def test_enumeration_is_exact_and_duplicate_free(models2, budget2):
    assert len(models2) == len(set(models2)) == count_models(budget2)
    assert all(len(m) <= 4 for m in models2)
    assert sum(m.empty for m in models2) == len(law_families(budget2.signature))


def test_enumeration_slices(budget2, models2):
    assert list(enumerate_models(budget2, 40, 47)) == models2[40:47]


def test_budget_cap(xyz):
    with pytest.raises(BudgetTooLarge):
        count_models(EnumerationBudget(xyz, 12, cap=1000))


def test_law_filter_restricts_families(xy):
    budget = EnumerationBudget(xy, 2, law_filter=lambda laws: not laws.endogenous)
    assert all(not m.laws.endogenous for m in enumerate_models(budget))


def test_verdicts(budget2):
    valid = check_validity(ProbConst(Eq("X", "0"), GE, 0), budget2)
    assert valid and valid.label == "valid-on-budget"
    assert valid.models_checked == 130
    bad = check_validity(Eq("X", "0"), budget2)
    assert not bad and bad.label == "counterexample"
    assert not eval_pco(bad.countermodel, Eq("X", "0"))
    assert "first countermodel is model #" in str(bad)


def test_parallel_search_finds_the_same_first_countermodel(budget2):
    phi = ProbConst(Eq("Y", "1"), GT, "1/3")
    assert first_countermodel(budget2, (), phi, workers=3) == \
        first_countermodel(budget2, (), phi, workers=1)


def test_material_conditional_does_not_entail_selective_implication(budget2):
    sig = budget2.signature
    verdict = check_entailment([implies(sig, Eq("X", "0"), Eq("Y", "1"))],
                               SelImp(Eq("X", "0"), Eq("Y", "1")), budget2,
                               all_countermodels=True)
    assert not verdict
    assert correlated_pair() in verdict.countermodels


def test_every_schema_is_registered(xy):
    assert len(SCHEMA_IDS) == 36
    for sid in SCHEMA_IDS:
        assert next(instantiate_schema(sid, xy, 1), None) is not None
    with pytest.raises(UnknownSchema):
        list(instantiate_schema("Z9", xy, 1))
    assert make_instance("O5and", xy, alpha=Eq("X", "0"), psi=Eq("Y", "0"), chi=Eq("Y", "1"))


def test_finite_schema_sizes(xy, xyz):
    sizes = {sid: full_instance_count(sid, xy) for sid in ("A1", "A2", "A3", "C9", "C10", "C11")}
    assert sizes == {"A1": 28, "A2": 4, "A3": 4, "C9": 4, "C10": 8, "C11": 2}
    assert full_instance_count("C11", xyz) == 12
    assert full_instance_count("T1", xy) is None


def test_sampled_instances_are_distinct(xy):
    items = list(instantiate_schema("C1", xy, 30, seed=4))
    assert len(items) == len(set(items)) == 30


def test_side_conditions(xy):
    with pytest.raises(SideConditionViolation):
        make_instance("C4b", xy, outer=[("X", "0")], inner=[("X", "1")], chi=Eq("Y", "0"))
    with pytest.raises(SideConditionViolation):
        make_instance("C8", xy, spec=[("X", "0"), ("X", "1")], alpha=Eq("Y", "0"),
                      cmp=GT, eps=1)
    with pytest.raises(SideConditionViolation):
        make_instance("C7", xy, spec=[("X", "0")], gamma=Cf({"Y": 0}, Eq("X", "0")))


def test_unrestricted_c4b_is_refuted(budget2):
    # [X=0,X=1] is vacuous but [X=0][X=1] is not
    sig = budget2.signature
    chi = bot(sig)
    phi = implies(sig, Cf([("X", "0"), ("X", "1")], chi), Cf({"X": 0}, Cf({"X": 1}, chi)))
    verdict = check_validity(phi, budget2)
    assert not verdict and not verdict.countermodel.empty


def test_unrestricted_c8_is_refuted(budget2):
    sig = budget2.signature
    spec = [("X", "0"), ("X", "1")]
    phi = iff(sig, Cf(spec, ProbConst(Eq("Y", "0"), GT, 1)),
              ProbConst(Cf(spec, Eq("Y", "0")), GT, 1))
    verdict = check_validity(phi, budget2)
    assert not verdict and not verdict.countermodel.empty


def test_axiom_check_report_and_countermodel_files(xy, tmp_path):
    result = run_axiom_check("A2", xy, 10, 2, out_dir=tmp_path)
    assert result.ok and result.instances == 4
    assert result.lines[0].startswith("# seed 0; ")
    assert result.lines[1] == "SCHEMA A2 instance 0: VALID"
    assert not list(tmp_path.iterdir())


def test_failure_lines_point_at_readable_models(xy, tmp_path, monkeypatch):
    # swap in a broken builder to exercise the failure path
    from pcologic.oracle import schemas
    monkeypatch.setitem(schemas._BUILDERS, "A2",
                        lambda sig, var, value: Eq(var, value))
    result = run_axiom_check("A2", xy, 2, 2, out_dir=tmp_path)
    assert not result.ok
    path = result.lines[1].split("FAIL ")[1]
    model = read_model(path)
    assert not eval_pco(model, Eq("X", "0"))


def test_rules_report_tested_cases(budget2):
    assert set(RULE_IDS) == {"MP", "Rep", "Mon⊃", "→to⊃", "Mon▷"}
    report = check_rule_soundness("MonCf", 5, budget2, seed=1)
    assert report.ok and report.tested == 5
    assert str(report).startswith("RULE Mon▷: 5 premise set(s) tested")
    with pytest.raises(UnknownRule):
        check_rule_soundness("Cut", 1, budget2)


def test_modus_ponens_holds_pointwise(budget2):
    report = check_rule_soundness("MP", 20, budget2)
    assert report.ok and report.tested == 20


def test_sampler_is_deterministic(xy):
    a, b = FormulaSampler(xy, seed=9), FormulaSampler(xy, seed=9)
    assert [a.pco(4) for _ in range(30)] == [b.pco(4) for _ in range(30)]


def test_consistent_spec_sampling(xy):
    s = FormulaSampler(xy, seed=1)
    assert all(s.spec(consistent=True).consistent for _ in range(50))
    assert not any(s.spec(consistent=False).consistent for _ in range(50))
