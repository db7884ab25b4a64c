"""Exception hierarchy shared by every module of the package."""


class CoverForgeError(Exception):
    """Base class for all package errors."""


class CycleBudgetExceeded(CoverForgeError):
    def __init__(self, max_count):
        super().__init__(f"cycle enumeration exceeded budget of {max_count}")
        self.max_count = max_count


class LevelOutOfRange(CoverForgeError):
    pass


class WeightBaseNotUnit(CoverForgeError):
    pass


class IndeterminateAtDepth(CoverForgeError):
    def __init__(self, depth, candidates=None):
        super().__init__(f"successor not determined within tower depth {depth}")
        self.depth = depth
        self.candidates = candidates


class MaxPath(CoverForgeError):
    pass


class DegenerateCone(CoverForgeError):
    pass


class AlphabetTooLarge(CoverForgeError):
    pass


class NotTelescopable(CoverForgeError):
    pass


class FactorTooRare(CoverForgeError):
    pass


class DepthInsufficient(CoverForgeError):
    pass


class NotSingleVertex(CoverForgeError):
    pass


class OracleInconsistent(CoverForgeError):
    pass


class NotSturmianShape(CoverForgeError):
    pass


class KRInvalid(CoverForgeError):
    def __init__(self, violations):
        super().__init__("invalid KR tower: " + ", ".join(violations))
        self.violations = list(violations)


class NotContractible(CoverForgeError):
    pass


class NotProlongable(CoverForgeError):
    pass


class NoGrowth(CoverForgeError):
    pass


class PrefixTooShort(CoverForgeError):
    pass


class KeaneTie(CoverForgeError):
    """Exact length tie during Rauzy induction.

    ``step`` is the 1-based index of the induction step that tied; the
    substitutions and tape produced before the tie are attached.
    """

    def __init__(self, step, substitutions=(), tape=()):
        super().__init__(f"Keane tie at induction step {step}")
        self.step = step
        self.substitutions = list(substitutions)
        self.tape = list(tape)


class ReduciblePermutation(CoverForgeError):
    pass


class ReturnTimeExceeded(CoverForgeError):
    pass


class InvalidWindow(CoverForgeError):
    pass


class ParseError(CoverForgeError):
    def __init__(self, line_no, message):
        super().__init__(f"line {line_no}: {message}")
        self.line_no = line_no
