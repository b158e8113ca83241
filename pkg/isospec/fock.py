"""
Concrete operators: boson and quon ladders on truncated Fock space, shift
intertwiners built on an eigenbasis, and the small finite-matrix examples.
"""

import logging
import cmath

import numpy as np

from . import exceptions
from .operators import Operator


logger = logging.getLogger(__name__)

BOSON = 'boson'
QUON = 'quon'
KINDS = (BOSON, QUON)

FINITE_EXAMPLES = ('ex4_diag', 'ex4_phase', 'ex5_angular')

FINITE_DEFAULTS = {
    'ex4_diag': {'a': 1.0, 'b': 3.0, 'c': 0.0, 'alpha': 1.0, 'beta': 1.0},
    'ex4_phase': {'a': 0.0, 'b': 0.0, 'c': 1.0, 'alpha': 1.0, 'beta': 1j},
    'ex5_angular': {'hbar': 1.0, 'alpha': None},
}


class FockSpec(object):
    """
    A truncated Fock space.

    :param kind: ``'boson'`` or ``'quon'``
    :param dim: the truncation dimension, at least 2
    :param q: the quon deformation, ``-1 < q < 1``; forced to 1 for bosons
    """

    def __init__(self, kind, dim, q=None):
        if kind not in KINDS:
            raise exceptions.FockSpecError(
                'unknown Fock space kind %r, expected one of: %s'
                % (kind, ', '.join(KINDS))
            )
        if int(dim) != dim or dim < 2:
            raise exceptions.FockSpecError(
                'Fock space dimension must be an integer >= 2, got %r' % dim
            )
        if kind == BOSON:
            if q not in (None, 1, 1.0):
                raise exceptions.FockSpecError(
                    'a boson Fock space has q=1, got q=%r' % q
                )
            q = 1.0
        else:
            if q is None:
                raise exceptions.FockSpecError('a quon Fock space needs q')
            q = float(q)
            if not -1 < q < 1:
                raise exceptions.FockSpecError(
                    'quon deformation must satisfy |q| < 1, got q=%r' % q
                )
        self.kind = kind
        self.dim = int(dim)
        self.q = q

    def __repr__(self):
        return '<FockSpec %s dim=%d q=%r>' % (self.kind, self.dim, self.q)

    @property
    def is_boson(self):
        return self.kind == BOSON

    def resized(self, dim):
        return FockSpec(self.kind, dim, None if self.is_boson else self.q)


def q_numbers(q, size):
    """
    Return the q-numbers ``[n]_q = (1 - q**n) / (1 - q)`` for
    ``0 <= n < size`` (``n`` when ``q == 1``).

    >>> q_numbers(0.5, 4).tolist()
    [0.0, 1.0, 1.5, 1.75]
    >>> q_numbers(1, 4).tolist()
    [0.0, 1.0, 2.0, 3.0]
    """
    n = np.arange(size)
    if q == 1:
        return n.astype(float)
    q = float(q)
    return (1.0 - np.power(q, n)) / (1.0 - q)


class QNumberTable(object):
    """
    The quon occupation numbers ``alpha[n] = [n]_q`` and ladder weights
    ``beta[n] = sqrt(alpha[n + 1])``.
    """

    def __init__(self, q, size):
        self.q = q
        self.alpha = q_numbers(q, size)
        self.beta = np.sqrt(self.alpha[1:])

    def mutator_defect(self):
        """
        ``max |alpha[n + 1] - q alpha[n] - 1|``.
        """
        alpha = self.alpha
        return float(np.abs(alpha[1:] - self.q * alpha[:-1] - 1).max())


def build_ladder(spec):
    """
    Return the ``(a, a_dagger)`` pair of *spec*, with ``sqrt([n]_q)`` on the
    ``(n - 1, n)`` superdiagonal of ``a``.
    """
    table = QNumberTable(spec.q, spec.dim)
    a = Operator(np.diag(table.beta, 1), band=1)
    return a, a.adjoint()


def number_operator(spec):
    """
    ``a^dagger a`` of *spec*, which is diagonal with entries ``[n]_q``.
    """
    return Operator.diagonal(q_numbers(spec.q, spec.dim))


def q_mutator(spec):
    """
    ``a a^dagger - q a^dagger a``.
    """
    a, ad = build_ladder(spec)
    return a @ ad - spec.q * (ad @ a)


def fock_vectors(spec):
    """
    Build ``(a^dagger)**n phi_0 / (beta_0 ... beta_{n-1})`` for every
    representable ``n``, as the columns of a matrix.
    """
    _, ad = build_ladder(spec)
    beta = QNumberTable(spec.q, spec.dim).beta
    columns = []
    vector = np.zeros(spec.dim, dtype=complex)
    vector[0] = 1
    norm = 1.0
    for n in range(spec.dim):
        columns.append(vector / norm)
        if n < spec.dim - 1:
            vector = ad.entries.dot(vector)
            norm *= beta[n]
    return np.column_stack(columns)


def fock_vector_defect(spec):
    """
    Largest deviation of :func:`fock_vectors` from the standard basis.
    """
    return float(np.abs(fock_vectors(spec) - np.eye(spec.dim)).max())


def build_shift_intertwiner(es, step=1):
    """
    Return ``sum_l |phi_{l + step}><phi_l|`` over the eigenvectors of *es*.
    """
    dim = es.source_dim
    if int(step) != step or not 1 <= step < dim:
        raise exceptions.InvalidParameter(
            'step', step, 'an integer in [1, %d)' % dim
        )
    vectors = es.vectors
    entries = vectors[:, step:].dot(vectors[:, :dim - step].conj().T)
    return Operator(entries)


def _finite_params(name, params):
    if name not in FINITE_EXAMPLES:
        raise exceptions.InvalidParameter(
            'example', name, 'one of %s' % ', '.join(FINITE_EXAMPLES)
        )
    unknown = sorted(set(params or {}) - set(FINITE_DEFAULTS[name]))
    if unknown:
        raise exceptions.InvalidParameter(
            unknown[0], params[unknown[0]], 'no such parameter for %s' % name
        )
    merged = dict(FINITE_DEFAULTS[name])
    merged.update(params or {})
    return merged


def _ex4_matrices(p):
    a, b = float(p['a']), float(p['b'])
    c = complex(p['c'])
    alpha, beta = complex(p['alpha']), complex(p['beta'])
    if alpha == 0 or beta == 0:
        raise exceptions.ParameterConstraint(
            'N1 is invertible if and only if alpha and beta are different '
            'from zero'
        )
    if c != 0 and not np.isclose(abs(alpha), abs(beta), rtol=1e-12, atol=0):
        raise exceptions.ParameterConstraint(
            'the commutant condition needs c = 0 or |alpha| = |beta| '
            '(got c=%r, |alpha|=%r, |beta|=%r)' % (c, abs(alpha), abs(beta))
        )
    h1 = Operator([[a, c], [c.conjugate(), b]])
    x1 = Operator([[0, alpha], [beta, 0]])
    return h1, x1


def _ex5_params(p):
    hbar = float(p['hbar'])
    alpha = p['alpha']
    if alpha is None:
        alpha = np.sqrt(2) * hbar
    if complex(alpha).imag != 0 or alpha == 0:
        raise exceptions.ParameterConstraint(
            'x1 is self-adjoint only if alpha is real and nonzero, got %r'
            % alpha
        )
    return hbar, float(complex(alpha).real)


def finite_example(name, params=None):
    """
    Return the ``(h1, x1)`` matrices of a finite-dimensional example.

    *name* is one of :data:`FINITE_EXAMPLES`; *params* overrides entries of
    :data:`FINITE_DEFAULTS`. Raise
    :class:`~isospec.exceptions.ParameterConstraint` if the parameters
    violate the example's hypotheses.
    """
    p = _finite_params(name, params)
    if name.startswith('ex4'):
        return _ex4_matrices(p)
    hbar, alpha = _ex5_params(p)
    h1 = hbar / np.sqrt(2) * Operator([[0, 1, 0], [1, 0, 1], [0, 1, 0]])
    x1 = alpha * Operator([[0, 1j, 0], [-1j, 0, 0], [0, 0, 1]])
    return h1, x1


def predicted_partner(name, params=None):
    """
    Return the closed-form ``h2`` of a finite-dimensional example.

    For ``ex5_angular`` the closed form holds for any real ``alpha`` since
    ``N1 = alpha**2``; it is independent of alpha.
    """
    p = _finite_params(name, params)
    if name.startswith('ex4'):
        _ex4_matrices(p)
        a, b = float(p['a']), float(p['b'])
        c = complex(p['c'])
        phase = cmath.phase(complex(p['alpha'])) - \
            cmath.phase(complex(p['beta']))
        return Operator([
            [b, c.conjugate() * cmath.exp(1j * phase)],
            [c * cmath.exp(-1j * phase), a],
        ])
    hbar, _ = _ex5_params(p)
    return hbar / np.sqrt(2) * Operator([[0, -1, 1j], [-1, 0, 0],
                                         [-1j, 0, 0]])
