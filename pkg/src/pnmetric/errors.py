"""Exception hierarchy for pnmetric."""

from __future__ import annotations


class PNMetricError(Exception):
    """Base class for all errors raised by this package."""


# construction / lookup


class ArityError(PNMetricError, ValueError):
    pass


class UnknownPoint(PNMetricError, KeyError):
    def __str__(self) -> str:
        return str(self.args[0]) if self.args else "unknown point"


class MissingEntry(PNMetricError, ValueError):
    def __init__(self, multiset):
        self.multiset = tuple(multiset)
        super().__init__(f"no table entry for multiset {list(self.multiset)}")


class DuplicateEntry(PNMetricError, ValueError):
    def __init__(self, multiset):
        self.multiset = tuple(multiset)
        super().__init__(f"duplicate table entry for multiset {list(self.multiset)}")


class PartialMetricAxiomViolation(PNMetricError, ValueError):
    def __init__(self, violations):
        self.violations = list(violations)
        first = self.violations[0]
        super().__init__(
            f"partial metric axiom {first.axiom!r} fails at {first.witness}: "
            f"{first.lhs} vs {first.rhs}"
        )


class InvalidSpace(PNMetricError, ValueError):
    def __init__(self, message, report=None):
        self.report = report
        super().__init__(message)


class NotAnNMetric(InvalidSpace):
    pass


class EvaluatorFailure(PNMetricError, RuntimeError):
    pass


# sequence analysis


class WindowTooLarge(PNMetricError, ValueError):
    pass


class NotCauchyOnPrefix(PNMetricError):
    def __init__(self, verdict):
        self.verdict = verdict
        super().__init__(
            f"sequence is not Cauchy on its tail window "
            f"(residual {verdict.residual:.6g} around r={verdict.r_estimate:.6g})"
        )


class UniquenessViolation(PNMetricError):
    """Two distinct special limits were found for one Cauchy sequence.

    Special limits are unique in any partial n-metric space, so this means
    the space is invalid or the tolerance is too loose.
    """

    def __init__(self, candidates):
        self.candidates = list(candidates)
        super().__init__(f"several special limits found: {self.candidates}")


class PreconditionNotMet(PNMetricError):
    pass


# fixed point engine


class InvalidLambda(PNMetricError, ValueError):
    pass


class NotCauchy(PNMetricError):
    def __init__(self, message, trace=None, verdict=None):
        self.trace = trace
        self.verdict = verdict
        super().__init__(message)


class NoSpecialLimit(PNMetricError):
    def __init__(self, message, trace=None):
        self.trace = trace
        super().__init__(message)


class HypothesesUnsatisfied(PNMetricError):
    def __init__(self, message, cases=None, special_limit=None):
        self.cases = cases or {}
        self.special_limit = special_limit
        super().__init__(message)


class TheoremContradicted(PNMetricError, AssertionError):
    """Hypotheses were verified but the conclusion failed.

    Never raised on a correctly validated space; seeing it means either the
    validation step or the engine itself is wrong.
    """


class CertificateFailed(PNMetricError):
    def __init__(self, certificate):
        self.certificate = certificate
        super().__init__(
            f"{certificate.kind} certificate does not hold on the orbit prefix"
        )


# I/O


class ParseError(PNMetricError, ValueError):
    pass


class SchemaError(PNMetricError, ValueError):
    pass
