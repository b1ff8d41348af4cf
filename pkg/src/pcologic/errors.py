"""Exception hierarchy shared by every module of the package."""

from __future__ import annotations

from dataclasses import dataclass


class PcoError(Exception):
    """Base class for all errors raised by pcologic."""


# -- models ---------------------------------------------------------------


class ModelError(PcoError):
    pass


class RangeViolation(ModelError):
    """A variable or value lies outside the signature."""


class CompatibilityViolation(ModelError):
    def __init__(self, row, variable, expected, found):
        self.row = row
        self.variable = variable
        self.expected = expected
        self.found = found
        super().__init__(
            f"row {row} violates the law for {variable}: "
            f"law gives {expected!r}, row has {found!r}"
        )


class ConstantFunction(ModelError):
    def __init__(self, variable):
        self.variable = variable
        super().__init__(f"the law for {variable} is constant")


class CyclicLaws(ModelError):
    def __init__(self, cycle):
        self.cycle = list(cycle)
        super().__init__("laws are not recursive; cycle: " + " -> ".join(self.cycle))


class InconsistentIntervention(ModelError):
    pass


class NotEndogenous(ModelError):
    pass


class SignatureMismatch(ModelError):
    pass


class EmptyModel(ModelError):
    """Probability is undefined on the empty multiteam."""


# -- formulas -------------------------------------------------------------


class FormulaError(PcoError):
    pass


class IllTypedArgument(FormulaError):
    pass


class NotCoFormula(IllTypedArgument):
    pass


class SameVariable(FormulaError):
    pass


class FormulaTooLarge(FormulaError):
    def __init__(self, estimate, budget):
        self.estimate = estimate
        self.budget = budget
        super().__init__(
            f"formula would have about {estimate} nodes, above the budget of {budget}"
        )


class NotInNormalForm(FormulaError):
    pass


class SideConditionViolation(FormulaError):
    """A schema instance request breaks the schema's side condition."""


# -- canonical construction -------------------------------------------------


class SupportIncompatible(ModelError):
    pass


class WeightsNotNormalized(ModelError):
    pass


# -- oracle ---------------------------------------------------------------


class BudgetTooLarge(PcoError):
    def __init__(self, estimate, cap):
        self.estimate = estimate
        self.cap = cap
        super().__init__(f"about {estimate} models to enumerate, above the cap of {cap}")


class UnknownSchema(PcoError):
    pass


class UnknownRule(PcoError):
    pass


# -- text formats -----------------------------------------------------------


@dataclass(frozen=True)
class SourceSpan:
    """Character offsets ``start``..``end`` into the parsed text."""

    start: int
    end: int


class ParseError(PcoError):
    """Error in textual input, located by offsets ``start``..``end``."""

    def __init__(self, message, start=0, end=None, text=None):
        self.message = message
        self.start = start
        self.end = max(start, start if end is None else end)
        self.text = text
        super().__init__(self.describe())

    @property
    def span(self) -> SourceSpan:
        return SourceSpan(self.start, self.end)

    def describe(self):
        out = f"{self.message} (at {self.start}..{self.end})"
        if self.text is None:
            return out
        line_start = self.text.rfind("\n", 0, self.start) + 1
        line_end = self.text.find("\n", self.start)
        if line_end == -1:
            line_end = len(self.text)
        line = self.text[line_start:line_end]
        col = self.start - line_start
        width = max(1, min(self.end, line_end) - self.start)
        if "\n" in self.text:
            out += f", line {self.text.count(chr(10), 0, self.start) + 1}"
        return out + f"\n  {line}\n  {' ' * col}{'^' * width}"


class UnknownVariable(ParseError):
    pass


class ValueOutOfRange(ParseError, RangeViolation):
    pass


class CoFragmentViolation(ParseError, IllTypedArgument):
    pass
