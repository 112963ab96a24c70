"""Exception hierarchy.  Every error the CLI can report derives from TrsError."""

from __future__ import annotations


class TrsError(Exception):
    pass


class ParseError(TrsError):
    def __init__(self, message: str, line: int = 0, column: int = 0, source: str = ""):
        self.line = line
        self.column = column
        self.source = source
        where = f"{source}:" if source else ""
        if line:
            where += f"{line}:{column}: "
        elif where:
            where += " "
        super().__init__(where + message)
        self.message = message


class StepBudgetExceeded(TrsError):
    """Normalization did not finish within ``max_steps`` rewrite steps."""

    def __init__(self, term, max_steps: int, context: str = ""):
        self.term = term
        self.max_steps = max_steps
        msg = f"no normal form reached within {max_steps} steps starting from {term}"
        if context:
            msg += f" ({context})"
        super().__init__(msg + "; the system may be nonterminating")


class NonJoinableCP(TrsError):
    def __init__(self, cp, nf_t, nf_s):
        self.cp = cp
        super().__init__(
            f"critical pair ({cp.outer_rule},{cp.inner_rule}) at {cp.pos} "
            f"is not joinable: {nf_t} != {nf_s}"
        )


class NotComplete(TrsError):
    def __init__(self, failures):
        self.failures = list(failures)
        super().__init__(
            f"{len(self.failures)} critical pair(s) not joinable; "
            "the system is not confluent"
        )


class CompositeDegree(TrsError):
    """The degree is neither 0 nor prime, so the lower bound theorem does not apply."""

    def __init__(self, degree: int, factors):
        self.degree = degree
        self.factors = list(factors)
        if degree == 1:
            detail = "degree 1 is neither 0 nor prime"
        else:
            detail = f"degree {degree} = {' * '.join(map(str, self.factors))} is composite"
        super().__init__(
            f"{detail}; the lower bound requires degree 0 or prime "
            "(rerunning over each prime factor gives exploratory numbers only, "
            "not a proven bound)"
        )


class SideConditionViolated(TrsError):
    def __init__(self, clause: int, message: str):
        self.clause = clause
        super().__init__(f"Tietze step ({clause}) refused: {message}")


class SearchBudgetExceeded(TrsError):
    def __init__(self, message: str):
        super().__init__(message)


class SignatureMismatch(TrsError):
    pass
