class IsospecError(Exception):

    pass


class OperatorError(IsospecError):

    pass


class DimensionMismatch(OperatorError):

    def __init__(self, left, right):
        self.left = left
        self.right = right
        super(DimensionMismatch, self).__init__(
            'dimension mismatch: %s vs %s' % (left, right)
        )


class NotHermitian(OperatorError):

    def __init__(self, asymmetry, tolerance):
        self.asymmetry = asymmetry
        self.tolerance = tolerance
        super(NotHermitian, self).__init__(
            'operator is not hermitian: relative asymmetry %.3g exceeds %.3g'
            % (asymmetry, tolerance)
        )


class InvalidInterior(OperatorError):

    def __init__(self, margin, dim):
        self.margin = margin
        self.dim = dim
        super(InvalidInterior, self).__init__(
            'interior margin %s leaves nothing of a dimension %s operator'
            % (margin, dim)
        )


class ParameterError(IsospecError):
    """
    Base class for configuration-level mistakes (bad parameters, unknown
    scenarios, malformed overrides).
    """

    pass


class FockSpecError(ParameterError):

    pass


class DomainError(ParameterError):

    def __init__(self, J, radius):
        self.J = J
        self.radius = radius
        super(DomainError, self).__init__(
            'J=%r is outside the convergence domain [0, %r)' % (J, radius)
        )


class UnknownScenario(ParameterError):

    def __init__(self, name):
        self.name = name
        super(UnknownScenario, self).__init__('unknown scenario: %s' % name)


class UnknownParameter(ParameterError):

    def __init__(self, scenario, key):
        self.scenario = scenario
        self.key = key
        super(UnknownParameter, self).__init__(
            'scenario "%s" has no parameter "%s"' % (scenario, key)
        )


class MalformedOverride(ParameterError):

    pass


class InvalidParameter(ParameterError):

    def __init__(self, key, value, expected):
        self.key = key
        self.value = value
        self.expected = expected
        super(InvalidParameter, self).__init__(
            'parameter "%s" expects %s, got %r' % (key, expected, value)
        )


class InvalidEnvironment(ParameterError):

    def __init__(self, var, value):
        self.var = var
        self.value = value
        super(InvalidEnvironment, self).__init__(
            'environment variable %s has an invalid value: %r' % (var, value)
        )


class HypothesisError(IsospecError):
    """
    Base class for refusals: the inputs do not satisfy the hypotheses a
    construction needs.
    """

    pass


class CommutantViolation(HypothesisError):

    def __init__(self, residual, tolerance):
        self.residual = residual
        self.tolerance = tolerance
        super(CommutantViolation, self).__init__(
            'commutant condition [x1 x1^dagger, h1] = 0 fails: residual %.3g '
            'exceeds %.3g' % (residual, tolerance)
        )


class SingularNormOperator(HypothesisError):

    def __init__(self, min_singular, threshold):
        self.min_singular = min_singular
        self.threshold = threshold
        super(SingularNormOperator, self).__init__(
            'N1 = x1^dagger x1 is not safely invertible (smallest singular '
            'value %.3g <= %.3g); invertibility of N1 seems to play a crucial '
            'role in the construction' % (min_singular, threshold)
        )


class ParameterConstraint(HypothesisError):

    def __init__(self, condition):
        self.condition = condition
        super(ParameterConstraint, self).__init__(
            'parameter constraint violated: %s' % condition
        )


class DegenerateEigenvalue(HypothesisError):

    def __init__(self, index, value):
        self.index = index
        self.value = value
        super(DegenerateEigenvalue, self).__init__(
            'eigenvalue %d (%.12g) is degenerate; the reverse map requires a '
            'non-degenerate eigenvalue' % (index, value)
        )


class AnnihilatedEigenvector(HypothesisError):

    def __init__(self, index):
        self.index = index
        super(AnnihilatedEigenvector, self).__init__(
            'x1^dagger annihilates eigenvector %d' % index
        )


class NotFactorized(HypothesisError):

    def __init__(self, residual, tolerance):
        self.residual = residual
        self.tolerance = tolerance
        super(NotFactorized, self).__init__(
            'H1 = A^dagger A and H2 = A A^dagger do not hold (residual %.3g '
            'exceeds %.3g); the superalgebra is only recovered for factorized '
            'pairs' % (residual, tolerance)
        )


class SpectrumError(HypothesisError):

    pass


class TruncationError(IsospecError):

    def __init__(self, levels, tail_tol, J):
        self.levels = levels
        self.tail_tol = tail_tol
        self.J = J
        super(TruncationError, self).__init__(
            'a spectrum table of %d levels cannot bound the series tail below '
            '%.3g at J=%r' % (levels, tail_tol, J)
        )


class WeightError(IsospecError):

    def __init__(self, failures):
        self.failures = failures
        super(WeightError, self).__init__(
            'moment weight does not reproduce rho_n for n in %s'
            % ', '.join(str(n) for n in failures)
        )


class ReportError(IsospecError):

    def __init__(self, path, reason):
        self.path = path
        self.reason = reason
        super(ReportError, self).__init__(
            'cannot write report to %s: %s' % (path, reason)
        )


class ConfError(IsospecError):

    def __init__(self, conf, validation_results):
        self.conf = conf
        self.validation_results = validation_results
        super(ConfError, self).__init__('configuration validation failed')
