"""Exception types raised by the allocation and weighting engines."""


class ChainshareError(Exception):
    """Base class for every domain failure raised by this package."""


class IncompleteGameError(ChainshareError):
    """A characteristic function is missing the value of some coalition."""

    def __init__(self, coalition: tuple[str, ...]):
        self.coalition = tuple(coalition)
        super().__init__(
            "characteristic function has no value for coalition "
            "{" + ", ".join(self.coalition) + "}"
        )


class EnumerationBoundError(ChainshareError):
    """Too many players for exact 2**n enumeration."""

    def __init__(self, n: int, bound: int):
        self.n = n
        self.bound = bound
        super().__init__(
            f"{n} players exceed the exact enumeration bound of {bound}; "
            "use chainshare.sampling.sample_shapley with a value oracle instead"
        )


class AlignmentError(ChainshareError):
    """Two inputs that must share a player set do not."""


class FactorSumError(ChainshareError):
    """Raw adjustment factors do not sum to 1 within tolerance."""

    def __init__(self, total, tolerance):
        self.total = total
        self.tolerance = tolerance
        super().__init__(
            f"adjustment factors sum to {float(total):.6f}, outside "
            f"1 +/- {float(tolerance)}; pass normalize=True to rescale"
        )


class MatrixValidationError(ChainshareError):
    """A pairwise comparison matrix violates its structural invariants."""


class IterationLimitError(ChainshareError):
    """Power iteration failed to converge within the iteration cap."""

    def __init__(self, iterations: int, residual: float):
        self.iterations = iterations
        self.residual = residual
        super().__init__(
            f"power iteration did not converge after {iterations} iterations "
            f"(last max-norm step {residual:.3e})"
        )


class ConsistencyGateError(ChainshareError):
    """A comparison matrix failed the consistency-ratio gate."""

    def __init__(self, name: str, ratio: float):
        self.name = name
        self.ratio = ratio
        super().__init__(
            f"consistency gate failed for {name!r}: CR = {ratio:.4f} "
            "(threshold 0.1); pass allow_inconsistent=True to override"
        )


class SamplingPlanError(ChainshareError):
    """A sampling plan has an invalid permutation count, seed, or chunk size."""


class OracleError(ChainshareError):
    """The user-supplied coalition value oracle raised during sampling."""

    def __init__(self, permutation_index: int, cause: BaseException):
        self.permutation_index = permutation_index
        super().__init__(
            f"value oracle failed while evaluating permutation "
            f"{permutation_index}: {cause!r}"
        )


class ScenarioError(ChainshareError):
    """A scenario document is malformed; ``locus`` names the offending spot."""

    def __init__(self, message: str, locus: str = ""):
        self.locus = locus
        super().__init__(f"{locus}: {message}" if locus else message)
