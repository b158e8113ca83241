"""
Gazeau-Klauder coherent states.

Scalar states are built on a strictly increasing spectrum ``0 = eps_0 <
eps_1 < ...``; vector states live on ``C^2 (x) H`` and combine a "bosonic"
sector (eigenvectors of ``h1``) with a "fermionic" one (eigenvectors of its
partner ``h2``). States are handled as coefficient tables over the
eigenbasis; :func:`embed_state` turns them into actual vectors.
"""

import logging
import functools

import numpy as np
import scipy.integrate
import scipy.linalg
from numpy.polynomial import laguerre
import mpmath

from . import exceptions
from . import operators
from . import fock


logger = logging.getLogger(__name__)

DEFAULT_TAIL_TOL = 1e-14
SPECTRUM_ZERO_TOL = 1e-12
LAGUERRE_NODES = 64
LAGUERRE_REFINEMENT = 16
ALPHA_SPREAD = 1e-10


class GKSpectrumData(object):
    """
    Spectrum of a Gazeau-Klauder family.

    :attr eps: the spectrum, ``eps[0] == 0``
    :attr rho: the generalized factorials ``rho_n = eps_1 ... eps_n``
    :attr radius: convergence radius of ``M(J)``, possibly ``inf``
    :attr omega: frequency scale
    :attr shift: the value subtracted from the original spectrum
    :attr complete:
        True if *eps* is the whole spectrum (finite-dimensional space), so
        that series are finite sums
    """

    def __init__(self, eps, radius=np.inf, omega=1.0, shift=0.0,
                 complete=False, q=None):
        eps = np.array(eps, dtype=float)
        eps.setflags(write=False)
        with np.errstate(over='ignore'):
            rho = np.concatenate([[1.0], np.cumprod(eps[1:])])
        rho.setflags(write=False)
        self.eps = eps
        self.rho = rho
        self.radius = radius
        self.omega = omega
        self.shift = shift
        self.complete = complete
        self.q = q

    def __repr__(self):
        return '<GKSpectrumData levels=%d radius=%r complete=%s>' % (
            self.levels, self.radius, self.complete)

    @property
    def levels(self):
        return self.eps.size


def _check_increasing(eps):
    gaps = np.diff(eps)
    if np.any(gaps <= 0):
        index = int(np.argmin(gaps)) + 1
        raise exceptions.SpectrumError(
            'spectrum is not strictly increasing at level %d' % index
        )


def spectrum_data(source, omega=1.0):
    """
    Build the :class:`GKSpectrumData` of *source*.

    *source* is a :class:`~isospec.fock.FockSpec` (the analytic spectrum
    ``[n]_q``, table size ``dim``), an
    :class:`~isospec.operators.EigenSystem` (shifted so that its lowest
    eigenvalue is 0) or a plain ascending sequence of levels.
    """
    if isinstance(source, fock.FockSpec):
        if source.is_boson:
            return GKSpectrumData(fock.q_numbers(1, source.dim), np.inf,
                                  omega, q=1.0)
        if not 0 < source.q < 1:
            raise exceptions.SpectrumError(
                'the quon spectrum [n]_q is strictly increasing only for '
                '0 < q < 1, got q=%r' % source.q
            )
        return GKSpectrumData(fock.q_numbers(source.q, source.dim),
                              1.0 / (1.0 - source.q), omega, q=source.q)
    if isinstance(source, operators.EigenSystem):
        if source.clusters:
            raise exceptions.SpectrumError(
                'degenerate eigenvalue clusters %s: coherent states need a '
                'strictly increasing spectrum' % (source.clusters,)
            )
        values = np.asarray(source.values, dtype=float)
        complete = True
    else:
        values = np.asarray(source, dtype=float)
        complete = True
    if values.size == 0:
        raise exceptions.SpectrumError('empty spectrum')
    shift = float(values[0])
    if abs(shift) > SPECTRUM_ZERO_TOL:
        logger.debug('shifting spectrum by %r so that eps_0 = 0', -shift)
        values = values - shift
    else:
        values = np.concatenate([[0.0], values[1:]])
        shift = 0.0
    _check_increasing(values)
    return GKSpectrumData(values, np.inf, omega, shift=shift,
                          complete=complete)


def _check_domain(J, data):
    if not 0 <= J < data.radius:
        raise exceptions.DomainError(J, data.radius)


def series_order(J, data, tail_tol=DEFAULT_TAIL_TOL):
    """
    Smallest ``n`` such that the tail of ``M(J) = sum_k J**k / rho_k`` past
    ``n`` is certified below *tail_tol*.

    Once the ratio ``r = J / eps_{n+1}`` is below 1, the tail is bounded by
    ``t_n r / (1 - r)``. Raise :class:`~isospec.exceptions.TruncationError`
    if the spectrum table is exhausted first.
    """
    _check_domain(J, data)
    if J == 0:
        return 0
    if data.complete:
        return data.levels - 1
    eps = data.eps
    term = 1.0
    for k in range(1, data.levels - 1):
        term *= J / eps[k]
        ratio = J / eps[k + 1]
        if ratio < 1 and term * ratio / (1 - ratio) < tail_tol:
            return k
    raise exceptions.TruncationError(data.levels, tail_tol, J)


def series_terms(J, data, n_max):
    """
    Return ``J**k / rho_k`` for ``0 <= k <= n_max``, computed by recurrence.
    """
    if n_max >= data.levels:
        raise exceptions.TruncationError(data.levels, 0.0, J)
    ratios = J / data.eps[1:n_max + 1]
    return np.concatenate([[1.0], np.cumprod(ratios)])


def big_M(J, data, tail_tol=DEFAULT_TAIL_TOL):
    """
    ``M(J) = sum_k J**k / rho_k`` with a tail certified below *tail_tol*.
    """
    n_max = series_order(J, data, tail_tol)
    return float(series_terms(J, data, n_max).sum())


def mp_big_M(J, q, terms=200, dps=40):
    """
    Extended-precision ``M(J)`` for the spectrum ``[n]_q``, from the
    q-Pochhammer form ``rho_n = (q; q)_n / (1 - q)**n``.
    """
    with mpmath.workdps(dps):
        J = mpmath.mpf(J)
        total = mpmath.mpf(0)
        for n in range(terms):
            if q == 1:
                rho = mpmath.factorial(n)
            else:
                q_mp = mpmath.mpf(q)
                rho = mpmath.qp(q_mp, q_mp, n) / (1 - q_mp) ** n
            total += J ** n / rho
        return float(total)


class VectorCSParams(object):
    """
    Parameters of a vector coherent state.

    *n_max* None selects the truncation order from the series tails.
    """

    def __init__(self, J1, J2, gamma=0.0, delta=1.0, n_max=None,
                 tail_tol=DEFAULT_TAIL_TOL):
        for name, value in (('J1', J1), ('J2', J2)):
            if value < 0:
                raise exceptions.InvalidParameter(name, value,
                                                  'a nonnegative number')
        if delta < 0:
            raise exceptions.InvalidParameter('delta', delta,
                                              'a nonnegative number')
        if n_max is not None and (int(n_max) != n_max or n_max < 0):
            raise exceptions.InvalidParameter('n_max', n_max,
                                              'a nonnegative integer')
        self.J1 = float(J1)
        self.J2 = float(J2)
        self.gamma = float(gamma)
        self.delta = float(delta)
        self.n_max = n_max
        self.tail_tol = tail_tol

    def __repr__(self):
        return '<VectorCSParams J=(%r, %r) gamma=%r delta=%r>' % (
            self.J1, self.J2, self.gamma, self.delta)

    def replace(self, **kwargs):
        values = {
            'J1': self.J1,
            'J2': self.J2,
            'gamma': self.gamma,
            'delta': self.delta,
            'n_max': self.n_max,
            'tail_tol': self.tail_tol,
        }
        values.update(kwargs)
        return VectorCSParams(**values)

    def swapped(self):
        """
        Parameters of ``Psi(J~, -gamma)`` with ``J~ = (J2, J1)``.
        """
        return self.replace(J1=self.J2, J2=self.J1, gamma=-self.gamma)

    def order(self, data):
        if self.n_max is not None:
            return int(self.n_max)
        return max(series_order(self.J1, data, self.tail_tol),
                   series_order(self.J2, data, self.tail_tol))


class VectorCoherentState(object):
    """
    Coefficients of a vector coherent state along the ``Phi_n^(b)`` and
    ``Phi_n^(f)`` basis vectors, ``0 <= n <= n_max``.

    :attr m1: the partial sum of ``M(J1)`` used for normalization
    :attr m2: the partial sum of ``M(J2)``
    """

    def __init__(self, b, f, params, m1, m2):
        self.b = b
        self.f = f
        self.params = params
        self.m1 = m1
        self.m2 = m2

    @property
    def sectors(self):
        return self.b, self.f

    @property
    def n_max(self):
        return self.b.size - 1

    def susy_norm(self):
        return float(np.sqrt(np.sum(np.abs(self.b) ** 2) +
                             np.sum(np.abs(self.f) ** 2)))

    def coefficients(self):
        return np.concatenate([self.b, self.f])

    def distance(self, other):
        return float(np.linalg.norm(self.coefficients() -
                                    other.coefficients()))


def synthesize_vector_cs(params, data):
    """
    Build ``Psi_delta(J, gamma)`` for *params*.

    ``b_n = c J1**(n/2) exp(-i (eps_n + delta) gamma) / sqrt(rho_n)`` and
    ``f_n = c J2**(n/2) exp(+i (eps_n + delta) gamma) / sqrt(rho_n)``, with
    ``c = (M(J1) + M(J2))**(-1/2)`` over the common truncation order.
    """
    _check_domain(params.J1, data)
    _check_domain(params.J2, data)
    n_max = params.order(data)
    terms1 = series_terms(params.J1, data, n_max)
    terms2 = series_terms(params.J2, data, n_max)
    m1, m2 = float(terms1.sum()), float(terms2.sum())
    c = 1.0 / np.sqrt(m1 + m2)
    phases = (data.eps[:n_max + 1] + params.delta) * params.gamma
    b = c * np.sqrt(terms1) * np.exp(-1j * phases)
    f = c * np.sqrt(terms2) * np.exp(1j * phases)
    return VectorCoherentState(b, f, params, m1, m2)


def action_identity(state, data):
    """
    Return ``(expectation, closed_form)``: the energy expectation summed from
    the coefficients, and ``omega (J1 M(J1) + J2 M(J2)) / (M(J1) + M(J2))``.
    """
    eps = data.eps[:state.n_max + 1]
    weights = np.abs(state.b) ** 2 + np.abs(state.f) ** 2
    expectation = data.omega * float(np.sum(eps * weights))
    p = state.params
    closed_form = data.omega * (p.J1 * state.m1 + p.J2 * state.m2) / \
        (state.m1 + state.m2)
    return expectation, closed_form


def evolve(state, t, data):
    """
    Apply ``V_delta(t) = diag(exp(-i (h1 + delta) t), exp(i (h2 + delta)
    t))`` in the eigenbasis.
    """
    phases = (data.eps[:state.n_max + 1] + state.params.delta) * t
    return VectorCoherentState(
        state.b * np.exp(-1j * phases),
        state.f * np.exp(1j * phases),
        state.params.replace(gamma=state.params.gamma + t),
        state.m1,
        state.m2,
    )


def _lower(coeffs, gamma, eps, sign):
    size = coeffs.size
    out = np.zeros(size, dtype=complex)
    if size > 1:
        steps = eps[1:size] - eps[:size - 1]
        out[:-1] = np.sqrt(eps[1:size]) * \
            np.exp(sign * 1j * steps * gamma) * coeffs[1:]
    return out


def _raise(coeffs, gamma, eps, sign):
    size = coeffs.size
    out = np.zeros(size, dtype=complex)
    if size > 1:
        steps = eps[1:size] - eps[:size - 1]
        out[1:] = np.sqrt(eps[1:size]) * \
            np.exp(-sign * 1j * steps * gamma) * coeffs[:-1]
    return out


def apply_A_gamma(vector, gamma, data, adjoint=False):
    """
    Apply ``A_gamma`` (or its adjoint) to a ``(b, f)`` pair of coefficient
    arrays.

    ``A_gamma Phi_n^(b) = sqrt(eps_n) exp(i (eps_n - eps_{n-1}) gamma)
    Phi_{n-1}^(b)`` and the same with the opposite phase on the f sector.
    The adjoint drops the component raised past the table.
    """
    b, f = vector
    b = np.asarray(b, dtype=complex)
    f = np.asarray(f, dtype=complex)
    eps = data.eps
    if b.size > eps.size:
        raise exceptions.TruncationError(eps.size, 0.0, None)
    if adjoint:
        return _raise(b, gamma, eps, 1), _raise(f, gamma, eps, -1)
    return _lower(b, gamma, eps, 1), _lower(f, gamma, eps, -1)


def eigen_relation_residual(state, data, gamma=None):
    """
    ``||A_gamma Psi - J^(1/2) Psi||`` over the components below ``n_max``
    (the last one depends on the truncated tail).
    """
    if gamma is None:
        gamma = state.params.gamma
    ab, af = apply_A_gamma(state.sectors, gamma, data)
    p = state.params
    db = (ab - np.sqrt(p.J1) * state.b)[:-1]
    df = (af - np.sqrt(p.J2) * state.f)[:-1]
    return float(np.sqrt(np.sum(np.abs(db) ** 2) + np.sum(np.abs(df) ** 2)))


def proportionality_residual(state, data, gamma):
    """
    Distance from ``A_gamma Psi`` to the line spanned by ``Psi``, over the
    components below ``n_max``.
    """
    ab, af = apply_A_gamma(state.sectors, gamma, data)
    image = np.concatenate([ab[:-1], af[:-1]])
    psi = np.concatenate([state.b[:-1], state.f[:-1]])
    psi = psi / np.linalg.norm(psi)
    projection = np.vdot(psi, image) * psi
    return float(np.linalg.norm(image - projection))


def continuity_check(params, params0, data):
    """
    Return ``||Psi(params) - Psi(params0)||``, both synthesized to a common
    truncation order.
    """
    n_max = max(params.order(data), params0.order(data))
    state = synthesize_vector_cs(params.replace(n_max=n_max), data)
    state0 = synthesize_vector_cs(params0.replace(n_max=n_max), data)
    return state.distance(state0)


def phase_lipschitz(state, data):
    """
    ``C = sqrt(sum (eps_n + delta)**2 (|b_n|**2 + |f_n|**2))``, so that a
    gamma shift by ``h`` moves the state by at most ``C |h|``.
    """
    eps = data.eps[:state.n_max + 1] + state.params.delta
    weights = np.abs(state.b) ** 2 + np.abs(state.f) ** 2
    return float(np.sqrt(np.sum(eps ** 2 * weights)))


@functools.lru_cache(maxsize=None)
def _laguerre_rule(nodes):
    return laguerre.laggauss(nodes)


class MomentWeight(object):
    """
    A density ``rho(u)`` on ``support`` whose moments should reproduce the
    generalized factorials.

    :param quadrature:
        ``'gauss-laguerre'`` (needs *laguerre_ratio*, the density divided by
        ``exp(-u)``) or ``'adaptive'`` (:func:`scipy.integrate.quad`)
    """

    QUADRATURES = ('gauss-laguerre', 'adaptive')

    def __init__(self, density, support=(0.0, np.inf),
                 quadrature='adaptive', laguerre_ratio=None,
                 nodes=LAGUERRE_NODES, name=None):
        if quadrature not in self.QUADRATURES:
            raise exceptions.InvalidParameter(
                'quadrature', quadrature,
                'one of %s' % ', '.join(self.QUADRATURES)
            )
        if quadrature == 'gauss-laguerre' and laguerre_ratio is None:
            raise exceptions.InvalidParameter(
                'laguerre_ratio', None, 'a callable for gauss-laguerre'
            )
        self.density = density
        self.support = support
        self.quadrature = quadrature
        self.laguerre_ratio = laguerre_ratio
        self.nodes = nodes
        self.name = name or 'custom'

    def __repr__(self):
        return '<MomentWeight %s (%s)>' % (self.name, self.quadrature)

    def _laguerre(self, s, nodes):
        x, w = _laguerre_rule(nodes)
        return float(np.sum(w * self.laguerre_ratio(x) * x ** s))

    def moment(self, s):
        """
        Return ``(integral of rho(u) u**s, error estimate)``.
        """
        if self.quadrature == 'gauss-laguerre':
            value = self._laguerre(s, self.nodes)
            finer = self._laguerre(s, self.nodes + LAGUERRE_REFINEMENT)
            return value, abs(finer - value)
        low, high = self.support
        value, error = scipy.integrate.quad(
            lambda u: self.density(u) * u ** s, low, high,
            epsabs=0, epsrel=1e-12, limit=200,
        )
        return value, error


def exponential_weight(quadrature='gauss-laguerre'):
    """
    ``rho(u) = exp(-u)``, whose moments are ``n!``.
    """
    return MomentWeight(lambda u: np.exp(-u), quadrature=quadrature,
                        laguerre_ratio=lambda u: np.ones_like(u),
                        name='exponential')


def scaled_exponential_weight(k, quadrature='gauss-laguerre'):
    """
    ``rho(u) = k exp(-k u)``, whose moments are ``n! / k**n``.
    """
    return MomentWeight(lambda u: k * np.exp(-k * u), quadrature=quadrature,
                        laguerre_ratio=lambda u: k * np.exp(-(k - 1) * u),
                        name='exponential(k=%g)' % k)


class MomentRecord(object):

    def __init__(self, n, moment, target, error_estimate, rtol):
        self.n = n
        self.moment = moment
        self.target = target
        self.error_estimate = error_estimate
        self.rel_error = abs(moment - target) / abs(target)
        self.converged = error_estimate <= rtol * max(abs(moment), 1.0)
        self.passed = self.converged and self.rel_error < rtol

    def to_dict(self):
        return {
            'n': self.n,
            'moment': self.moment,
            'target': self.target,
            'rel_error': self.rel_error,
            'error_estimate': self.error_estimate,
            'converged': self.converged,
            'passed': self.passed,
        }


class MomentCheck(object):

    def __init__(self, records):
        self.records = records

    @property
    def passed(self):
        return all(r.passed for r in self.records)

    @property
    def failures(self):
        return [r.n for r in self.records if not r.passed]

    def max_rel_error(self):
        return max(r.rel_error for r in self.records)


def moment_check(weight, data, n_up_to, rtol=1e-8):
    """
    Compare the moments ``0 <= n <= n_up_to`` of *weight* with ``rho_n``.
    """
    if n_up_to >= data.levels:
        raise exceptions.TruncationError(data.levels, rtol, None)
    records = []
    for n in range(n_up_to + 1):
        value, error = weight.moment(n)
        records.append(MomentRecord(n, value, float(data.rho[n]), error,
                                    rtol))
    return MomentCheck(records)


class FrameDefect(object):
    """
    ``F - 1`` for the frame operator of a coherent-state family, restricted
    to the leading *size* levels of each sector.

    :attr status: ``'ok'`` or ``'weight unknown'``
    :attr leakage:
        one dict per finite averaging window: ``gamma``, ``leakage`` (largest
        off-diagonal weight surviving the finite average), ``envelope``
        (bound on ``gamma * leakage``) and ``within_envelope``
    """

    def __init__(self, status, size, defect=None, moments=None, leakage=(),
                 delta=None):
        self.status = status
        self.size = size
        self.defect = defect
        self.moments = moments
        self.leakage = list(leakage)
        self.delta = delta

    @property
    def max_defect(self):
        if self.defect is None:
            return None
        return float(np.abs(self.defect).max())

    @property
    def cross_corner(self):
        """
        The ``<Phi_0^(b)| F |Phi_0^(f)>`` element, when there is a f sector.
        """
        if self.defect is None or self.defect.shape[0] == self.size:
            return None
        return float(self.defect[0, self.size].real)

    def remark_residual(self):
        """
        Distance from the defect to ``|Phi_0^(b)><Phi_0^(f)| + h.c.``.
        """
        expected = np.zeros(self.defect.shape)
        expected[0, self.size] = expected[self.size, 0] = 1.0
        return float(np.abs(self.defect - expected).max())

    @property
    def decay_ratio(self):
        if len(self.leakage) < 2:
            return None
        first = self.leakage[0]['leakage']
        if first < 1e-9:
            return 0.0
        return self.leakage[-1]['leakage'] / first


class _FiniteAverage(object):
    """
    ``(1 / 2G) integral over [-G, G] of exp(-i w g) dg``, integrated
    numerically and cached per ``(w, G)``.
    """

    def __init__(self):
        self._cache = {}

    def __call__(self, w, window):
        key = (round(abs(w), 12), window)
        if key not in self._cache:
            value, _ = scipy.integrate.quad(
                lambda g: 1.0, -window, window, weight='cos', wvar=abs(w),
                limit=200,
            )
            self._cache[key] = value / (2 * window)
        return self._cache[key]


def _zero_frequency(freqs, eps):
    return np.abs(freqs) <= 1e-12 * max(1.0, float(np.abs(eps).max()))


def _moment_table(weight, exponents):
    cache = {}
    table = np.empty(exponents.shape)
    for index, s in np.ndenumerate(exponents):
        if s not in cache:
            cache[s] = weight.moment(float(s))[0]
        table[index] = cache[s]
    return table


def _leakage(parts, freqs, zero, windows):
    average = _FiniteAverage()
    mask = ~zero
    records = []
    if not mask.any():
        return [{'gamma': w, 'leakage': 0.0, 'envelope': 0.0,
                 'within_envelope': True} for w in windows]
    envelope = float(np.max(np.abs(parts[mask]) / np.abs(freqs[mask])))
    for window in windows:
        leak = max(abs(parts[i] * average(freqs[i], window))
                   for i in zip(*np.nonzero(mask)))
        records.append({
            'gamma': window,
            'leakage': float(leak),
            'envelope': envelope,
            'within_envelope': window * leak <= envelope * (1 + 1e-6),
        })
    return records


def _checked_moments(weight, data, size, rtol):
    if size > data.levels:
        raise exceptions.TruncationError(data.levels, rtol, None)
    check = moment_check(weight, data, size - 1, rtol)
    if not check.passed:
        raise exceptions.WeightError(check.failures)
    return check


def frame_operator_defect(data, weight, delta, size=12, gammas=(),
                          rtol=1e-8):
    """
    Compute ``F - 1`` for ``F = integral dnu(J, gamma) |Psi_delta><Psi_delta|``
    on the leading *size* levels of each sector.

    The gamma average is done analytically: a matrix element survives iff
    its phase frequency vanishes (``eps_n - eps_m`` within a sector,
    ``eps_n + eps_m + 2 delta`` across sectors). The J integrals are moments
    of *weight*. Each window in *gammas* is checked against the finite
    average over ``[-G, G]``.

    A None *weight* returns a defect with status ``'weight unknown'``.
    """
    if delta < 0:
        raise exceptions.InvalidParameter('delta', delta,
                                          'a nonnegative number')
    if weight is None:
        return FrameDefect('weight unknown', size, delta=delta)
    check = _checked_moments(weight, data, size, rtol)
    eps = data.eps[:size]
    rho = data.rho[:size]
    n = np.arange(size)
    norms = np.sqrt(np.outer(rho, rho))
    mu0 = weight.moment(0)[0]
    like_parts = _moment_table(weight, (n[:, None] + n[None, :]) / 2.0) * \
        mu0 / norms
    half = _moment_table(weight, n / 2.0)
    cross_parts = np.outer(half, half) / norms
    like_freqs = eps[:, None] - eps[None, :]
    cross_freqs = eps[:, None] + eps[None, :] + 2 * delta
    like_zero = _zero_frequency(like_freqs, eps)
    cross_zero = _zero_frequency(cross_freqs, eps)

    frame = np.zeros((2 * size, 2 * size))
    like = np.where(like_zero, like_parts, 0.0)
    cross = np.where(cross_zero, cross_parts, 0.0)
    frame[:size, :size] = like
    frame[size:, size:] = like
    frame[:size, size:] = cross
    frame[size:, :size] = cross.T
    defect = frame - np.eye(2 * size)
    logger.debug('frame defect at delta=%r: max %.3g', delta,
                 np.abs(defect).max())

    parts = np.concatenate([like_parts.ravel(), cross_parts.ravel()])
    freqs = np.concatenate([like_freqs.ravel(), cross_freqs.ravel()])
    zero = np.concatenate([like_zero.ravel(), cross_zero.ravel()])
    leakage = _leakage(parts, freqs, zero, gammas)
    return FrameDefect('ok', size, defect, check, leakage, delta)


def build_frame_weight(kind):
    """
    The known moment weight of a spectrum family, or None.
    """
    if kind == fock.BOSON:
        return exponential_weight()
    return None


class ScalarGKState(object):
    """
    Coefficients ``N(J)**-1 J**(n/2) exp(-i eps_n gamma) / sqrt(rho_n)`` of
    a scalar Gazeau-Klauder state, with ``N(J)**2 = M(J)``.
    """

    def __init__(self, coeffs, J, gamma, norm_sq):
        self.coeffs = coeffs
        self.J = J
        self.gamma = gamma
        self.norm_sq = norm_sq

    @property
    def n_max(self):
        return self.coeffs.size - 1


def scalar_gk_state(J, gamma, data, tail_tol=DEFAULT_TAIL_TOL, n_max=None):
    _check_domain(J, data)
    if n_max is None:
        n_max = series_order(J, data, tail_tol)
    terms = series_terms(J, data, n_max)
    norm_sq = float(terms.sum())
    phases = data.eps[:n_max + 1] * gamma
    coeffs = np.sqrt(terms / norm_sq) * np.exp(-1j * phases)
    return ScalarGKState(coeffs, J, gamma, norm_sq)


def apply_a_gamma(coeffs, gamma, data, adjoint=False):
    """
    ``a_gamma |n> = sqrt(eps_n) exp(i (eps_n - eps_{n-1}) gamma) |n-1>``, or
    its adjoint.
    """
    coeffs = np.asarray(coeffs, dtype=complex)
    if adjoint:
        return _raise(coeffs, gamma, data.eps, 1)
    return _lower(coeffs, gamma, data.eps, 1)


def scalar_eigen_residual(state, data):
    image = apply_a_gamma(state.coeffs, state.gamma, data)
    return float(np.linalg.norm(
        (image - np.sqrt(state.J) * state.coeffs)[:-1]))


def evolve_scalar(state, t, data):
    """
    ``exp(-iHt)`` with ``H |n> = omega eps_n |n>``; the result is the state
    at ``gamma + omega t``.
    """
    phases = data.omega * data.eps[:state.n_max + 1] * t
    return ScalarGKState(state.coeffs * np.exp(-1j * phases), state.J,
                         state.gamma + data.omega * t, state.norm_sq)


def scalar_action_identity(state, data):
    """
    Return ``(<J, gamma| H |J, gamma>, omega J)``.
    """
    eps = data.eps[:state.n_max + 1]
    expectation = data.omega * float(np.sum(eps * np.abs(state.coeffs) ** 2))
    return expectation, data.omega * state.J


def scalar_frame_defect(data, weight, size=12, rtol=1e-8):
    """
    ``F - 1`` for ``F = integral N(J)**2 rho(J) dJ dnu(gamma) |J, gamma><J,
    gamma|`` on the leading *size* levels.
    """
    if weight is None:
        return FrameDefect('weight unknown', size)
    check = _checked_moments(weight, data, size, rtol)
    eps = data.eps[:size]
    n = np.arange(size)
    parts = _moment_table(weight, (n[:, None] + n[None, :]) / 2.0) / \
        np.sqrt(np.outer(data.rho[:size], data.rho[:size]))
    zero = _zero_frequency(eps[:, None] - eps[None, :], eps)
    frame = np.where(zero, parts, 0.0)
    return FrameDefect('ok', size, frame - np.eye(size), check)


def scalar_vector_consistency(state, scalar):
    """
    Distance between the b sector of *state*, stripped of its ``delta``
    phase and rescaled by ``sqrt(2)``, and a scalar state with the same
    ``J`` and ``gamma``.

    The vector state must have ``J1 == J2``; then ``N = M`` and the two
    normalizations differ by ``sqrt(2)``.
    """
    p = state.params
    size = min(state.b.size, scalar.coeffs.size)
    stripped = np.sqrt(2) * np.exp(1j * p.delta * p.gamma) * state.b[:size]
    return float(np.linalg.norm(stripped - scalar.coeffs[:size]))


def embed_state(state, es1, es2):
    """
    Turn *state* into a vector of ``C^2 (x) H`` using the eigenvectors of
    ``h1`` (b sector) and ``h2`` (f sector).
    """
    return embed_sectors(state.b, state.f, es1, es2)


def embed_sectors(b, f, es1, es2):
    """
    Embed a pair of sector coefficient arrays of equal size, see
    :func:`embed_state`.
    """
    dim = es1.source_dim
    size = len(b)
    if size > dim:
        raise exceptions.DimensionMismatch(size, dim)
    upper = es1.vectors[:, :size].dot(b)
    lower = es2.vectors[:, :size].dot(f)
    return np.concatenate([upper, lower])


def evolution_operator(h1, h2, delta, t, shift=0.0):
    """
    ``V_delta(t) = diag(exp(-i (h1 - shift + delta) t), exp(i (h2 - shift +
    delta) t))`` as a :class:`~isospec.operators.Operator`.

    *shift* is the value subtracted from the spectrum, see
    :attr:`GKSpectrumData.shift`.
    """
    identity = operators.Operator.identity(h1.dim)
    offset = (delta - shift) * identity
    upper = operators.unitary_from_hermitian(-t * (h1 + offset))
    lower = operators.unitary_from_hermitian(t * (h2 + offset))
    return operators.Operator(scipy.linalg.block_diag(upper.entries,
                                                      lower.entries))


def eigenbasis_intertwiner(es1, es2, weights):
    """
    ``x1 = sum_n s_n |phi_n^(1)><phi_n^(2)|``, so that ``x1^dagger
    phi_n^(1) = s_n phi_n^(2)``.
    """
    weights = np.asarray(weights, dtype=complex)
    size = weights.size
    v1 = es1.vectors[:, :size]
    v2 = es2.vectors[:, :size]
    return operators.Operator((v1 * weights).dot(v2.conj().T))


def align_partner_basis(x1, es1, es2):
    """
    Rephase the eigenvectors of *es2* so that ``<phi_n^(2), x1^dagger
    phi_n^(1)>`` is real and nonnegative.
    """
    images = x1.adjoint().entries.dot(es1.vectors)
    overlaps = np.sum(es2.vectors.conj() * images, axis=0)
    phases = np.ones(overlaps.size, dtype=complex)
    nonzero = np.abs(overlaps) > 0
    phases[nonzero] = overlaps[nonzero] / np.abs(overlaps[nonzero])
    return operators.EigenSystem(es2.values, es2.vectors * phases,
                                 es2.residual, es2.clusters)


class XOperator(object):
    """
    ``L = [[0, 0], [x1^dagger, 0]]``, ``L^dagger`` and ``X = L + L^dagger``
    in the ``Phi`` basis, with the norms ``alpha1[n] = ||x1^dagger
    phi_n^(1)||`` and ``alpha2[n] = ||x1 phi_n^(2)||``.

    *basis1* and *basis2* are the eigensystems of ``h1`` and ``h2``, the
    latter rephased by :func:`align_partner_basis`.
    """

    def __init__(self, l, ldag, x, alpha1, alpha2, basis1, basis2):
        self.l = l
        self.ldag = ldag
        self.x = x
        self.alpha1 = alpha1
        self.alpha2 = alpha2
        self.basis1 = basis1
        self.basis2 = basis2

    @property
    def dim(self):
        return self.alpha1.size

    def in_hilbert_space(self):
        """
        Return the matrix of ``X`` on ``C^2 (x) H``.
        """
        frame = scipy.linalg.block_diag(self.basis1.vectors,
                                        self.basis2.vectors)
        return frame.dot(self.x.entries).dot(frame.conj().T)


def build_X_operator(x1, es1, es2):
    """
    Build the :class:`XOperator` of *x1*.

    Raise :class:`~isospec.exceptions.DegenerateEigenvalue` if either
    spectrum is degenerate.
    """
    for es in (es1, es2):
        if es.clusters:
            index = es.clusters[0][0]
            raise exceptions.DegenerateEigenvalue(index,
                                                  float(es.values[index]))
    es2 = align_partner_basis(x1, es1, es2)
    block = es2.vectors.conj().T.dot(x1.adjoint().entries).dot(es1.vectors)
    dim = x1.dim
    zeros = np.zeros((dim, dim))
    l = operators.Operator(np.block([[zeros, zeros], [block, zeros]]))
    ldag = l.adjoint()
    alpha1 = np.linalg.norm(x1.adjoint().entries.dot(es1.vectors), axis=0)
    alpha2 = np.linalg.norm(x1.entries.dot(es2.vectors), axis=0)
    return XOperator(l, ldag, l + ldag, alpha1, alpha2, es1, es2)


def classify_X(xop, data):
    """
    Return ``'constant'`` when ``alpha1 = alpha2`` is constant, ``'epsilon'``
    when ``alpha1 = alpha2 = eps``, and ``'none'`` otherwise.
    """
    a1, a2 = xop.alpha1, xop.alpha2
    scale = max(1.0, float(np.abs(a1).max()))
    if np.abs(a1 - a2).max() > ALPHA_SPREAD * scale:
        return 'none'
    if np.abs(a1 - a1[0]).max() <= ALPHA_SPREAD * scale:
        return 'constant'
    eps = data.eps[:a1.size]
    if eps.size == a1.size and \
            np.abs(a1 - eps).max() <= ALPHA_SPREAD * scale:
        return 'epsilon'
    return 'none'


def apply_X(xop, state):
    """
    Embed *state* in ``C^2 (x) H`` and act on it with the matrix of ``X``.
    """
    vector = embed_state(state, xop.basis1, xop.basis2)
    return xop.in_hilbert_space().dot(vector)


def check_X_relations(xop, state, data):
    """
    Classify *xop* and measure the matching closed relation.

    Return ``(classification, residual)``; the residual is None when there
    is no closed relation.
    """
    kind = classify_X(xop, data)
    if kind == 'none':
        return kind, None
    image = apply_X(xop, state)
    params = state.params.swapped().replace(n_max=state.n_max)
    swapped = synthesize_vector_cs(params, data)
    if kind == 'constant':
        alpha = xop.alpha1[0]
        tb, tf = alpha * swapped.b, alpha * swapped.f
    else:
        p = swapped.params
        tb, tf = apply_A_gamma(
            (np.sqrt(p.J1) * swapped.b, np.sqrt(p.J2) * swapped.f),
            -state.params.gamma, data, adjoint=True,
        )
    target = embed_sectors(tb, tf, xop.basis1, xop.basis2)
    return kind, float(np.linalg.norm(image - target))
