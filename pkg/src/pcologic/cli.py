"""Command-line interface.

Exit status: 0 when the answer is true/valid (or the command succeeded),
1 when it is false or a countermodel was found, 2 on usage or input errors.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from .canonical import build_canonical
from .errors import ParseError, PcoError
from .formula import neg_c
from .io.files import read_description, read_model, read_signature, write_model
from .io.parser import parse_formula, parse_spec
from .io.printer import fraction_text, to_text
from .model import intervene, observe
from .normal_form import normal_form, push_prob_inward
from .oracle import EnumerationBudget, check_entailment, check_validity, run_axiom_check
from .semantics import eval_pco, prob

TRUE, FALSE, USAGE = 0, 1, 2


def _emit_model(model, out):
    text = write_model(model)
    if out:
        Path(out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def _cmd_eval(args):
    model = read_model(args.model)
    phi = parse_formula(args.formula, model.signature)
    holds = eval_pco(model, phi)
    print("true" if holds else "false")
    return TRUE if holds else FALSE


def _cmd_prob(args):
    model = read_model(args.model)
    alpha = parse_formula(args.formula, model.signature)
    print(fraction_text(prob(model, alpha)))
    return TRUE


def _cmd_intervene(args):
    model = read_model(args.model)
    _emit_model(intervene(model, parse_spec(args.spec, model.signature)), args.output)
    return TRUE


def _cmd_observe(args):
    model = read_model(args.model)
    _emit_model(observe(model, parse_formula(args.formula, model.signature)), args.output)
    return TRUE


def _cmd_nf(args):
    sig = read_signature(args.sig)
    phi = normal_form(parse_formula(args.formula, sig))
    if args.push_prob:
        phi = push_prob_inward(phi)
    print(to_text(phi, sig))
    return TRUE


def _cmd_negc(args):
    sig = read_signature(args.sig)
    print(to_text(neg_c(sig, parse_formula(args.formula, sig)), sig))
    return TRUE


def _cmd_canonical(args):
    _emit_model(build_canonical(read_description(args.description)), args.output)
    return TRUE


def _report_verdict(verdict, sig):
    print(verdict.label)
    print(f"# {verdict}")
    if not verdict.holds:
        print("# countermodel:")
        sys.stdout.write(write_model(verdict.countermodel))
        return FALSE
    return TRUE


def _cmd_validity(args):
    sig = read_signature(args.sig)
    phi = parse_formula(args.formula, sig)
    budget = EnumerationBudget(sig, args.max_rows)
    return _report_verdict(check_validity(phi, budget, workers=args.workers), sig)


def _cmd_entails(args):
    sig = read_signature(args.sig)
    premises = [parse_formula(p, sig) for p in args.premise]
    phi = parse_formula(args.formula, sig)
    budget = EnumerationBudget(sig, args.max_rows)
    return _report_verdict(check_entailment(premises, phi, budget, workers=args.workers), sig)


def _cmd_axiom_check(args):
    sig = read_signature(args.sig)
    result = run_axiom_check(args.schema, sig, args.samples, args.max_rows, seed=args.seed,
                             out_dir=args.out_dir, workers=args.workers)
    sys.stdout.write(result.text())
    return TRUE if result.ok else FALSE


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="pcologic",
        description="Evaluate and check probabilistic causal formulas on causal multiteams.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("eval", help="evaluate a formula on a model")
    p.add_argument("model")
    p.add_argument("formula")
    p.set_defaults(run=_cmd_eval)

    p = sub.add_parser("prob", help="exact probability of a CO formula")
    p.add_argument("model")
    p.add_argument("formula")
    p.set_defaults(run=_cmd_prob)

    p = sub.add_parser("intervene", help="apply an intervention such as 'X=1,Y=2'")
    p.add_argument("model")
    p.add_argument("spec")
    p.add_argument("-o", "--output")
    p.set_defaults(run=_cmd_intervene)

    p = sub.add_parser("observe", help="keep the rows satisfying a CO formula")
    p.add_argument("model")
    p.add_argument("formula")
    p.add_argument("-o", "--output")
    p.set_defaults(run=_cmd_observe)

    p = sub.add_parser("nf", help="normal form of a formula")
    p.add_argument("formula")
    p.add_argument("--sig", required=True)
    p.add_argument("--push-prob", action="store_true",
                   help="also move counterfactuals inside probability atoms")
    p.set_defaults(run=_cmd_nf)

    p = sub.add_parser("negc", help="weak contradictory negation of a formula")
    p.add_argument("formula")
    p.add_argument("--sig", required=True)
    p.set_defaults(run=_cmd_negc)

    p = sub.add_parser("canonical", help="build the canonical model of a description file")
    p.add_argument("description")
    p.add_argument("-o", "--output")
    p.set_defaults(run=_cmd_canonical)

    for name, run, text in (("validity", _cmd_validity, "bounded validity check"),
                            ("entails", _cmd_entails, "bounded entailment check")):
        p = sub.add_parser(name, help=text)
        p.add_argument("--sig", required=True)
        p.add_argument("--max-rows", type=int, required=True)
        p.add_argument("--workers", type=int, default=1)
        if name == "entails":
            p.add_argument("--premise", action="append", default=[])
        p.add_argument("formula")
        p.set_defaults(run=run)

    p = sub.add_parser("axiom-check", help="check sampled instances of an axiom schema")
    p.add_argument("--schema", required=True)
    p.add_argument("--sig", required=True)
    p.add_argument("--samples", type=int, required=True)
    p.add_argument("--max-rows", type=int, required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out-dir", default="countermodels",
                   help="where countermodel files are written (only on failure)")
    p.add_argument("--workers", type=int, default=1)
    p.set_defaults(run=_cmd_axiom_check)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.run(args)
    except ParseError as exc:
        print(f"error: {exc.describe()}", file=sys.stderr)
    except (PcoError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
    return USAGE


if __name__ == "__main__":
    raise SystemExit(main())
