"""
Partner hamiltonians from weak intertwining operators.

Given a hermitian ``h1`` and an operator ``x1`` such that ``x1 x1^dagger``
commutes with ``h1`` and ``N1 = x1^dagger x1`` is invertible, the partner

    h2 = N1^-1 (x1^dagger h1 x1)

is hermitian, weakly intertwined with ``h1`` (``x1^dagger (x1 h2 - h1 x1) =
0``) and shares the eigenvalues of ``h1`` on every eigenvector that
``x1^dagger`` does not annihilate. This module builds ``h2``, measures each
of those properties as a residual, maps eigenvectors both ways and iterates
the construction into chains.
"""

import logging

import numpy as np
import scipy.linalg

from . import exceptions
from . import operators
from .operators import Operator, InteriorSpec, interior_norm


logger = logging.getLogger(__name__)

KERNEL_POLICIES = ('refuse', 'exclude')

# Eigenvectors with more than this share of their norm outside the interior
# are left out of eigenvalue checks.
OUTSIDE_MASS = 1e-8


class Tolerances(object):
    """
    Tolerances of the construction and of its property checks.

    Residual tolerances (``commutant``, ``alpha``, ``beta``, ``gamma``,
    ``n1_commutation``) are multiplied by *scale*. Decision thresholds
    (``hermitian``, ``invert``, ``vanish``, ``cyclic``, ``collinear``,
    ``factorization``) are not.
    """

    RESIDUALS = {
        'commutant': 1e-10,
        'alpha': 1e-10,
        'beta': 1e-9,
        'gamma': 1e-8,
        'n1_commutation': 1e-9,
    }
    THRESHOLDS = {
        'hermitian': operators.HERMITIAN_TOL,
        'invert': 1e-8,
        'vanish': 1e-8,
        'cyclic': 1e-10,
        'collinear': 1e-8,
        'factorization': 1e-10,
    }

    def __init__(self, scale=1.0, **overrides):
        unknown = set(overrides) - set(self.RESIDUALS) - set(self.THRESHOLDS)
        if unknown:
            raise TypeError('unknown tolerances: %s'
                            % ', '.join(sorted(unknown)))
        self.scale = scale
        for name, value in self.RESIDUALS.items():
            setattr(self, name, overrides.get(name, value) * scale)
        for name, value in self.THRESHOLDS.items():
            setattr(self, name, overrides.get(name, value))

    def to_dict(self):
        names = sorted(list(self.RESIDUALS) + list(self.THRESHOLDS))
        ret = {name: getattr(self, name) for name in names}
        ret['scale'] = self.scale
        return ret


def check_kernel_policy(kernel):
    if kernel not in KERNEL_POLICIES:
        raise exceptions.InvalidParameter(
            'kernel', kernel, 'one of %s' % ', '.join(KERNEL_POLICIES)
        )


class HypothesisCheck(object):
    """
    Outcome of :func:`check_hypotheses`.

    :attr r_commutant: interior norm of ``[x1 x1^dagger, h1]``
    :attr commutant_scale: ``||x1 x1^dagger||_F ||h1||_F``
    :attr n1_min_singular: smallest singular value of ``N1`` on the interior
    :attr n1_norm: largest one
    :attr kernel_dim: number of leading basis vectors excluded as kernel
    :attr interior: the effective :class:`~isospec.operators.InteriorSpec`
    """

    def __init__(self, r_commutant, commutant_scale, n1_min_singular,
                 n1_norm, kernel_dim, interior):
        self.r_commutant = r_commutant
        self.commutant_scale = commutant_scale
        self.n1_min_singular = n1_min_singular
        self.n1_norm = n1_norm
        self.kernel_dim = kernel_dim
        self.interior = interior

    def gate(self, tolerances):
        """
        Raise the :class:`~isospec.exceptions.HypothesisError` that forbids
        the construction, if any.
        """
        commutant_tol = tolerances.commutant * max(self.commutant_scale, 1.0)
        if self.r_commutant > commutant_tol:
            raise exceptions.CommutantViolation(self.r_commutant,
                                                commutant_tol)
        invert_tol = tolerances.invert * self.n1_norm
        if self.n1_min_singular <= invert_tol:
            raise exceptions.SingularNormOperator(self.n1_min_singular,
                                                  invert_tol)


def _leading_kernel(n1, interior, threshold):
    """
    Count the leading basis vectors of the interior block that ``N1``
    annihilates.
    """
    entries = n1.entries
    start, stop = interior.lead, interior.stop(n1.dim)
    count = 0
    for i in range(start, stop - 1):
        if abs(entries[i, i]) > threshold:
            break
        count += 1
    return count


def check_hypotheses(h1, x1, interior=None, tolerances=None,
                     kernel='refuse'):
    """
    Measure how far *h1* and *x1* are from the hypotheses of the
    construction.

    The default *interior* is the margin of ``x1^dagger h1 x1``. With
    ``kernel='exclude'``, basis vectors at the start of the interior on which
    ``N1`` vanishes identically are moved out of it.

    Return a :class:`HypothesisCheck`. Nothing is raised for failed
    hypotheses, see :meth:`HypothesisCheck.gate`.
    """
    check_kernel_policy(kernel)
    if tolerances is None:
        tolerances = Tolerances()
    if h1.dim != x1.dim:
        raise exceptions.DimensionMismatch(h1.dim, x1.dim)
    operators.check_hermitian(h1, tolerances.hermitian)
    if interior is None:
        interior = InteriorSpec.for_factors(x1, h1, x1)
    xdag = x1.adjoint()
    xxd = x1 @ xdag
    n1 = xdag @ x1
    kernel_dim = 0
    if kernel == 'exclude':
        block = interior.block(n1.dim)
        scale = np.abs(n1.entries[block, block]).max()
        kernel_dim = _leading_kernel(n1, interior, tolerances.invert * scale)
        if kernel_dim:
            interior = interior.with_lead(interior.lead + kernel_dim)
            logger.debug('excluded %d leading kernel vectors of N1',
                         kernel_dim)
    block = interior.block(n1.dim)
    singular_values = scipy.linalg.svdvals(n1.entries[block, block])
    r_commutant = interior_norm(operators.commutator(xxd, h1), interior)
    return HypothesisCheck(
        r_commutant=r_commutant,
        commutant_scale=xxd.frobenius() * h1.frobenius(),
        n1_min_singular=float(singular_values.min()),
        n1_norm=float(singular_values.max()),
        kernel_dim=kernel_dim,
        interior=interior,
    )


class GammaRecord(object):
    """
    Eigenvalue check of one mapped eigenvector.
    """

    def __init__(self, n, value, mu, residual, tolerance):
        self.n = n
        self.value = value
        self.mu = mu
        self.residual = residual
        self.tolerance = tolerance

    @property
    def passed(self):
        return self.residual <= self.tolerance

    def to_dict(self):
        return {
            'n': self.n,
            'value': self.value,
            'mu': self.mu,
            'residual': self.residual,
            'passed': self.passed,
        }


class PropertyReport(object):
    """
    Residuals of the properties of a partner pair.

    :attr r_commutant: interior norm of ``[x1 x1^dagger, h1]``
    :attr r_alpha: ``||h2 - h2^dagger||_F``
    :attr r_beta: interior norm of ``x1^dagger (x1 h2 - h1 x1)``
    :attr r_beta_adjoint: interior norm of ``(h2 x1^dagger - x1^dagger h1) x1``
    :attr r_beta_strong: interior norm of ``x1 h2 - h1 x1``, reported only
    :attr r_n1_commutation: interior norm of ``[N1^-1, x1^dagger h1 x1]``
    :attr gamma: list of :class:`GammaRecord`
    """

    def __init__(self, hypotheses, r_alpha, r_beta, r_beta_adjoint,
                 r_beta_strong, r_n1_commutation, h1_norm, h2_norm,
                 x1_norm, tolerances, gamma=()):
        self.r_commutant = hypotheses.r_commutant
        self.n1_min_singular = hypotheses.n1_min_singular
        self.n1_norm = hypotheses.n1_norm
        self.kernel_dim = hypotheses.kernel_dim
        self.r_alpha = r_alpha
        self.r_beta = r_beta
        self.r_beta_adjoint = r_beta_adjoint
        self.r_beta_strong = r_beta_strong
        self.r_n1_commutation = r_n1_commutation
        self.h1_norm = h1_norm
        self.h2_norm = h2_norm
        self.x1_norm = x1_norm
        self.tolerances = tolerances
        self.gamma = list(gamma)

    @property
    def bounds(self):
        tol = self.tolerances
        beta_bound = tol.beta * self.h1_norm * self.x1_norm
        return {
            'alpha': tol.alpha * self.h2_norm,
            'beta': beta_bound,
            'beta_adjoint': beta_bound,
            'n1_commutation': tol.n1_commutation * max(1.0, self.h2_norm),
        }

    @property
    def flags(self):
        bounds = self.bounds
        return {
            'alpha': self.r_alpha <= bounds['alpha'],
            'beta': self.r_beta <= bounds['beta'],
            'beta_adjoint': self.r_beta_adjoint <= bounds['beta_adjoint'],
            'n1_commutation':
                self.r_n1_commutation <= bounds['n1_commutation'],
            'gamma': all(record.passed for record in self.gamma),
        }

    @property
    def passed(self):
        return all(self.flags.values())

    def with_gamma(self, gamma):
        self.gamma = list(gamma)
        return self

    def max_gamma_residual(self):
        return max([r.residual for r in self.gamma] or [0.0])

    def to_dict(self):
        return {
            'r_commutant': self.r_commutant,
            'r_alpha': self.r_alpha,
            'r_beta': self.r_beta,
            'r_beta_adjoint': self.r_beta_adjoint,
            'r_beta_strong': self.r_beta_strong,
            'r_n1_commutation': self.r_n1_commutation,
            'n1_min_singular': self.n1_min_singular,
            'kernel_dim': self.kernel_dim,
            'gamma': [record.to_dict() for record in self.gamma],
            'tolerances': self.tolerances.to_dict(),
            'passed': self.flags,
        }


class IntertwinedPair(object):
    """
    ``(h1, x1, N1, h2)`` together with their :class:`PropertyReport`.

    *eigensystem* is the eigensystem of *h1* the gamma checks were run
    against.
    """

    def __init__(self, h1, x1, n1, h2, interior, report, eigensystem,
                 tolerances, kernel):
        self.h1 = h1
        self.x1 = x1
        self.n1 = n1
        self.h2 = h2
        self.interior = interior
        self.report = report
        self.eigensystem = eigensystem
        self.tolerances = tolerances
        self.kernel = kernel

    def __repr__(self):
        return '<IntertwinedPair dim=%d %r>' % (self.h1.dim, self.interior)


def construct_partner(h1, x1, interior=None, tolerances=None,
                      kernel='refuse'):
    """
    Build ``h2 = N1^-1 (x1^dagger h1 x1)`` and verify its properties.

    ``h2`` is obtained from a linear solve on the interior block and is zero
    outside of it.

    :param h1: the hermitian starting :class:`~isospec.operators.Operator`
    :param x1: the intertwining :class:`~isospec.operators.Operator`
    :param interior:
        the :class:`~isospec.operators.InteriorSpec` where identities are
        asserted, see :func:`check_hypotheses` for the default
    :param tolerances: a :class:`Tolerances` object
    :param kernel: ``'refuse'`` or ``'exclude'``
    :return: an :class:`IntertwinedPair`
    """
    if tolerances is None:
        tolerances = Tolerances()
    hypotheses = check_hypotheses(h1, x1, interior, tolerances, kernel)
    hypotheses.gate(tolerances)
    interior = hypotheses.interior
    block = interior.block(h1.dim)
    xdag = x1.adjoint()
    n1 = xdag @ x1
    rhs = operators.product(xdag, h1, x1)
    logger.debug('solving for h2 on indices [%d, %d) of %d', block.start,
                 block.stop, h1.dim)
    n1_block = n1.entries[block, block]
    rhs_block = rhs.entries[block, block]
    h2_block = scipy.linalg.solve(n1_block, rhs_block, assume_a='her')
    h2_entries = np.zeros((h1.dim, h1.dim), dtype=complex)
    h2_entries[block, block] = h2_block
    h2 = Operator(h2_entries, band=operators.measure_band(h2_entries, 1e-12))

    # [N1^-1, x1^dagger h1 x1] from two solves
    right_block = scipy.linalg.solve(n1_block, rhs_block.conj().T,
                                     assume_a='her').conj().T
    r_n1_commutation = float(np.linalg.norm(h2_block - right_block))

    defect = x1 @ h2 - h1 @ x1
    report = PropertyReport(
        hypotheses,
        r_alpha=float(np.linalg.norm(h2_entries - h2_entries.conj().T)),
        r_beta=interior_norm(xdag @ defect, interior),
        r_beta_adjoint=interior_norm((h2 @ xdag - xdag @ h1) @ x1, interior),
        r_beta_strong=interior_norm(defect, interior),
        r_n1_commutation=r_n1_commutation,
        h1_norm=h1.frobenius(),
        h2_norm=h2.frobenius(),
        x1_norm=x1.frobenius(),
        tolerances=tolerances,
    )
    es1 = operators.hermitian_eigensystem(h1, tolerances.hermitian)
    pair = IntertwinedPair(h1, x1, n1, h2, interior, report, es1,
                           tolerances, kernel)
    mapped = map_eigenvectors(x1, es1, tolerances.vanish)
    report.with_gamma(verify_gamma(pair, mapped))
    return pair


class MappedVector(object):
    """
    ``x1^dagger`` applied to the eigenvector *n* of ``h1``.
    """

    def __init__(self, n, value, vector, mu, annihilated):
        self.n = n
        self.value = value
        self.vector = vector
        self.mu = mu
        self.annihilated = annihilated


def map_eigenvectors(x1, es1, vanish_tol=Tolerances.THRESHOLDS['vanish']):
    """
    Compute ``phi2_n = x1^dagger phi1_n`` for every eigenvector of *es1*.

    Vectors with norm below *vanish_tol* times the largest norm are flagged
    as annihilated.
    """
    images = x1.adjoint().entries.dot(es1.vectors)
    mus = np.linalg.norm(images, axis=0)
    threshold = vanish_tol * mus.max() if mus.size else 0.0
    return [
        MappedVector(n, float(es1.values[n]), images[:, n], float(mus[n]),
                     bool(mus[n] <= threshold))
        for n in range(images.shape[1])
    ]


def verify_gamma(pair, mapped):
    """
    Check ``h2 phi2_n = eps_n phi2_n`` on the interior for every surviving
    mapped vector.

    Vectors with non-negligible weight outside the interior are skipped.
    Return a list of :class:`GammaRecord`.
    """
    block = pair.interior.block(pair.h2.dim)
    outside = np.ones(pair.h2.dim, dtype=bool)
    outside[block] = False
    h2 = pair.h2.entries
    records = []
    skipped = 0
    for item in mapped:
        if item.annihilated:
            continue
        if np.linalg.norm(item.vector[outside]) > OUTSIDE_MASS * item.mu:
            skipped += 1
            continue
        defect = h2.dot(item.vector) - item.value * item.vector
        residual = float(np.linalg.norm(defect[block])) / item.mu
        tolerance = pair.tolerances.gamma * max(1.0, abs(item.value))
        records.append(GammaRecord(item.n, item.value, item.mu, residual,
                                   tolerance))
    if skipped:
        logger.debug('%d mapped eigenvectors reach outside the interior',
                     skipped)
    return records


class ReverseMapped(object):

    def __init__(self, n, value, vector, residual, collinearity, tolerance,
                 residual_tolerance):
        self.n = n
        self.value = value
        self.vector = vector
        self.residual = residual
        self.collinearity = collinearity
        self.tolerance = tolerance
        self.residual_tolerance = residual_tolerance

    @property
    def collinear(self):
        return self.collinearity > 1 - self.tolerance

    @property
    def passed(self):
        return self.residual <= self.residual_tolerance and self.collinear


def reverse_map_eigenvector(pair, n):
    """
    Map the partner eigenvector ``phi2_n`` back with ``x1`` and check that
    it is an eigenvector of ``h1`` collinear with ``phi1_n``.

    Raise :class:`~isospec.exceptions.DegenerateEigenvalue` when ``eps_n``
    is degenerate.
    The record passes when the residual is within the gamma tolerance and
    the vectors are collinear.
    """
    es1 = pair.eigensystem
    if not 0 <= n < len(es1):
        raise exceptions.InvalidParameter(
            'n', n, 'an eigenvector index below %d' % len(es1)
        )
    value = float(es1.values[n])
    if es1.is_degenerate(n):
        raise exceptions.DegenerateEigenvalue(n, value)
    mapped = map_eigenvectors(pair.x1, es1, pair.tolerances.vanish)[n]
    if mapped.annihilated:
        raise exceptions.AnnihilatedEigenvector(n)
    vector = pair.x1.entries.dot(mapped.vector)
    norm = np.linalg.norm(vector)
    residual = float(np.linalg.norm(
        pair.h1.entries.dot(vector) - value * vector) / norm)
    collinearity = float(abs(np.vdot(es1.vector(n), vector)) / norm)
    tolerance = pair.tolerances.gamma * max(1.0, abs(value))
    return ReverseMapped(n, value, vector, residual, collinearity,
                         pair.tolerances.collinear, tolerance)


class HamiltonianChain(object):
    """
    Partner pairs where each pair's ``h2`` is the next pair's ``h1``.

    :attr cyclic_at:
        index in :meth:`hamiltonians` of the first earlier hamiltonian a new
        link reproduced, or None
    """

    def __init__(self, links, cyclic_at=None):
        self.links = tuple(links)
        self.cyclic_at = cyclic_at

    @classmethod
    def start(cls, pair):
        return cls([pair])

    def __len__(self):
        return len(self.links)

    @property
    def last(self):
        return self.links[-1]

    def hamiltonians(self):
        return [self.links[0].h1] + [link.h2 for link in self.links]

    def consistency_defect(self):
        """
        Rebuild every link from its inputs and return the largest deviation
        from the stored ``h2`` (0.0 for a consistent chain).
        """
        defect = 0.0
        for prev, link in zip(self.links, self.links[1:]):
            if prev.h2 is not link.h1:
                return float('inf')
        for link in self.links:
            rebuilt = construct_partner(link.h1, link.x1, link.interior,
                                        link.tolerances, link.kernel)
            defect = max(defect, float(np.abs(rebuilt.h2.entries -
                                              link.h2.entries).max()))
        return defect


def extend_chain(chain, x_next, interior=None, tolerances=None,
                 kernel='refuse'):
    """
    Append the partner of the last hamiltonian of *chain* under *x_next*.

    The default interior grows the previous one by the margin of
    ``x_next^dagger h x_next``. The new hamiltonian is compared with all the
    previous ones to detect cycles.

    Return a new :class:`HamiltonianChain`.
    """
    last = chain.last
    if tolerances is None:
        tolerances = last.tolerances
    h = last.h2
    if interior is None:
        if operators.DENSE in (x_next.band, h.band):
            raise exceptions.InvalidInterior(operators.DENSE, h.dim)
        interior = last.interior.grow(2 * x_next.band + h.band)
    pair = construct_partner(h, x_next, interior, tolerances, kernel)
    cyclic_at = chain.cyclic_at
    if cyclic_at is None:
        scale = max(1.0, interior_norm(pair.h2, pair.interior))
        previous = chain.hamiltonians()[:-1]
        for index, candidate in enumerate(previous):
            distance = operators.interior_distance(pair.h2, candidate,
                                                   pair.interior)
            if distance <= tolerances.cyclic * scale:
                cyclic_at = index
                logger.debug('chain link %d reproduces hamiltonian %d',
                             len(chain) + 1, index)
                break
    return HamiltonianChain(chain.links + (pair,), cyclic_at)


class UnitaryStep(object):
    """
    One link ``x = a^dagger exp(iB)`` of a unitary chain.

    :attr r_factorization: ``||x x^dagger - a^dagger a||_F``
    :attr r_partner: ``||h_next - x^dagger x||_F``
    """

    def __init__(self, x, a_next, h_next, unitary, r_factorization,
                 r_partner):
        self.x = x
        self.a_next = a_next
        self.h_next = h_next
        self.unitary = unitary
        self.r_factorization = r_factorization
        self.r_partner = r_partner


def build_unitary_chain_step(a, b):
    """
    Given ``a_j`` and hermitian ``B_j``, build ``x_j = a_j^dagger
    exp(iB_j)``, ``a_next = exp(-iB_j) a_j^dagger exp(iB_j)`` and ``h_next =
    a_next^dagger a_next``.
    """
    if a.dim != b.dim:
        raise exceptions.DimensionMismatch(a.dim, b.dim)
    u = operators.unitary_from_hermitian(b)
    udag = u.adjoint()
    adag = a.adjoint()
    x = adag @ u
    a_next = operators.product(udag, adag, u)
    h_next = a_next.adjoint() @ a_next
    n = x.adjoint() @ x
    return UnitaryStep(
        x=x,
        a_next=a_next,
        h_next=h_next,
        unitary=u,
        r_factorization=(x @ x.adjoint() - adag @ a).frobenius(),
        r_partner=(h_next - n).frobenius(),
    )


class SusyAlgebra(object):
    """
    ``H = diag(H1, H2)``, ``Q = [[0, 0], [A, 0]]`` and the residuals of the
    superalgebra relations.
    """

    def __init__(self, h, q, qdag, residuals, r_factorization):
        self.h = h
        self.q = q
        self.qdag = qdag
        self.residuals = residuals
        self.r_factorization = r_factorization


def _sector_norm(op, interior, dim):
    """
    Interior norm of a ``2 dim`` block operator, taken sector by sector.
    """
    total = 0.0
    for rows in (slice(0, dim), slice(dim, 2 * dim)):
        for cols in (slice(0, dim), slice(dim, 2 * dim)):
            total += interior_norm(op.entries[rows, cols], interior) ** 2
    return float(np.sqrt(total))


def build_susy_algebra(h1, h2, a, interior=None, tolerances=None):
    """
    Assemble the superalgebra of a factorized pair ``H1 = A^dagger A``,
    ``H2 = A A^dagger``.

    Raise :class:`~isospec.exceptions.NotFactorized` if the pair is not
    factorized by *a*.
    """
    if tolerances is None:
        tolerances = Tolerances()
    dim = h1.dim
    for op in (h2, a):
        if op.dim != dim:
            raise exceptions.DimensionMismatch(dim, op.dim)
    if interior is None:
        interior = InteriorSpec.for_factors(a, a)
    adag = a.adjoint()
    r_factorization = np.hypot(interior_norm(h1 - adag @ a, interior),
                               interior_norm(h2 - a @ adag, interior))
    scale = max(1.0, interior_norm(h1, interior) +
                interior_norm(h2, interior))
    if r_factorization > tolerances.factorization * scale:
        raise exceptions.NotFactorized(r_factorization,
                                       tolerances.factorization * scale)
    zeros = np.zeros((dim, dim))
    h = Operator(scipy.linalg.block_diag(h1.entries, h2.entries))
    q = Operator(np.block([[zeros, zeros], [a.entries, zeros]]))
    qdag = q.adjoint()
    residuals = {
        'commutator_h_q': _sector_norm(operators.commutator(h, q),
                                       interior, dim),
        'commutator_h_qdag': _sector_norm(operators.commutator(h, qdag),
                                          interior, dim),
        'q_squared': _sector_norm(q @ q, interior, dim),
        'anticommutator_minus_h': _sector_norm(
            operators.anticommutator(q, qdag) - h, interior, dim),
    }
    return SusyAlgebra(h, q, qdag, residuals, float(r_factorization))


class PairingRecord(object):

    def __init__(self, n, value, residual, norm_defect):
        self.n = n
        self.value = value
        self.residual = residual
        self.norm_defect = norm_defect

    def to_dict(self):
        return {
            'n': self.n,
            'value': self.value,
            'residual': self.residual,
            'norm_defect': self.norm_defect,
        }


def check_susy_pairing(h1, h2, a, levels=None, vanish_tol=1e-8):
    """
    Check the spectral pairing of a factorized pair: for every eigenvector
    ``psi1_m`` of ``H1 = A^dagger A`` with ``E_m > 0``, ``A psi1_m /
    sqrt(E_m)`` is a unit eigenvector of ``H2`` with the same eigenvalue.

    Return ``(records, r_ground)`` where *r_ground* is ``||A psi1_0||``.
    """
    es1 = operators.hermitian_eigensystem(h1)
    if levels is None:
        levels = len(es1)
    threshold = vanish_tol * max(1.0, abs(es1.values).max())
    records = []
    for m in range(1, min(levels, len(es1))):
        value = float(es1.values[m])
        if value <= threshold:
            continue
        psi = a.entries.dot(es1.vector(m)) / np.sqrt(value)
        residual = float(np.linalg.norm(h2.entries.dot(psi) - value * psi))
        norm_defect = float(abs(np.linalg.norm(psi) - 1))
        records.append(PairingRecord(m - 1, value, residual, norm_defect))
    r_ground = float(np.linalg.norm(a.entries.dot(es1.vector(0))))
    return records, r_ground
