"""
Dense complex operators on truncated spaces.

Every identity of the infinite-dimensional theory is checked here on a
finite matrix, and only on the *interior* block that boundary truncation
leaves untouched, see :class:`InteriorSpec`.
"""

import logging

import numpy as np
import scipy.linalg

from . import exceptions


logger = logging.getLogger(__name__)

DENSE = 'dense'
HERMITIAN_TOL = 1e-10
DEGENERACY_GAP = 1e-8


def measure_band(entries, rtol=0.0):
    """
    Return the largest ``|i - j|`` such that ``entries[i, j]`` is nonzero.

    Entries whose magnitude is below *rtol* times the largest magnitude are
    considered zero.

    >>> measure_band([[1, 0], [0, 2]])
    0
    >>> measure_band([[0, 1e-20], [1, 0]], rtol=1e-12)
    1
    """
    magnitudes = np.abs(np.asarray(entries))
    scale = magnitudes.max() if magnitudes.size else 0.0
    if scale == 0:
        return 0
    rows, cols = np.nonzero(magnitudes > rtol * scale)
    return int(np.abs(rows - cols).max())


def band_sum(bands, dim):
    """
    Width of the band of a product of operators of widths *bands*.

    >>> band_sum([1, 1], 5)
    2
    >>> band_sum([3, 3], 5)
    'dense'
    >>> band_sum([0, 'dense'], 5)
    'dense'
    """
    if DENSE in bands:
        return DENSE
    total = sum(bands)
    if total > dim - 1:
        return DENSE
    return total


class Operator(object):
    """
    An immutable square complex matrix.

    :param entries: anything :func:`numpy.array` turns into a square matrix
    :param band:
        the width of the nonzero band, an integer or :data:`DENSE`; measured
        from the entries when omitted
    """

    # numpy scalars defer to our __rmul__
    __array_ufunc__ = None

    def __init__(self, entries, band=None):
        entries = np.array(entries, dtype=complex)
        if entries.ndim != 2 or entries.shape[0] != entries.shape[1] \
                or entries.shape[0] == 0:
            raise exceptions.OperatorError(
                'operator entries must form a non-empty square matrix, got '
                'shape %s' % (entries.shape,)
            )
        entries.setflags(write=False)
        self.entries = entries
        if band is None:
            band = measure_band(entries)
        elif band != DENSE and not 0 <= band <= self.dim - 1:
            raise exceptions.OperatorError(
                'band %r is out of range for dimension %d' % (band, self.dim)
            )
        self.band = band

    def __repr__(self):
        return '<Operator dim=%d band=%s>' % (self.dim, self.band)

    @property
    def dim(self):
        return self.entries.shape[0]

    @classmethod
    def identity(cls, dim):
        return cls(np.eye(dim), band=0)

    @classmethod
    def zeros(cls, dim):
        return cls(np.zeros((dim, dim)), band=0)

    @classmethod
    def diagonal(cls, values):
        return cls(np.diag(values), band=0)

    def adjoint(self):
        return Operator(self.entries.conj().T, band=self.band)

    @property
    def dag(self):
        return self.adjoint()

    def frobenius(self):
        return float(np.linalg.norm(self.entries))

    def __add__(self, other):
        _check_dims(self, other)
        return Operator(self.entries + other.entries,
                        band=_band_max(self.band, other.band))

    def __sub__(self, other):
        _check_dims(self, other)
        return Operator(self.entries - other.entries,
                        band=_band_max(self.band, other.band))

    def __neg__(self):
        return Operator(-self.entries, band=self.band)

    def __mul__(self, scalar):
        if scalar == 0:
            return Operator.zeros(self.dim)
        return Operator(scalar * self.entries, band=self.band)

    __rmul__ = __mul__

    def __matmul__(self, other):
        return multiply(self, other)

    def to_dict(self):
        """
        Serialize to ``{dim, entries, band}`` with entries as row-major
        ``[re, im]`` pairs.
        """
        flat = self.entries.reshape(-1)
        return {
            'dim': self.dim,
            'entries': [[float(z.real), float(z.imag)] for z in flat],
            'band': self.band,
        }

    @classmethod
    def from_dict(cls, data):
        try:
            dim = int(data['dim'])
            pairs = data['entries']
            band = data.get('band')
        except (KeyError, TypeError, ValueError) as exc:
            raise exceptions.OperatorError('malformed operator data: %s' % exc)
        if len(pairs) != dim * dim:
            raise exceptions.OperatorError(
                'operator of dimension %d needs %d entries, got %d'
                % (dim, dim * dim, len(pairs))
            )
        try:
            values = np.array([complex(re, im) for re, im in pairs])
        except (TypeError, ValueError):
            raise exceptions.OperatorError(
                'operator entries must be [re, im] pairs of numbers'
            )
        return cls(values.reshape(dim, dim), band=band)


def _band_max(a, b):
    if DENSE in (a, b):
        return DENSE
    return max(a, b)


def _check_dims(a, b):
    if a.dim != b.dim:
        raise exceptions.DimensionMismatch(a.dim, b.dim)


def multiply(a, b):
    _check_dims(a, b)
    return Operator(a.entries.dot(b.entries),
                    band=band_sum([a.band, b.band], a.dim))


def commutator(a, b):
    """
    Return ``ab - ba``.
    """
    _check_dims(a, b)
    entries = a.entries.dot(b.entries) - b.entries.dot(a.entries)
    return Operator(entries, band=band_sum([a.band, b.band], a.dim))


def anticommutator(a, b):
    """
    Return ``ab + ba``.
    """
    _check_dims(a, b)
    entries = a.entries.dot(b.entries) + b.entries.dot(a.entries)
    return Operator(entries, band=band_sum([a.band, b.band], a.dim))


def adjoint(a):
    return a.adjoint()


def product(*ops):
    """
    Multiply *ops* left to right.
    """
    ret = ops[0]
    for op in ops[1:]:
        ret = multiply(ret, op)
    return ret


def power(op, exponent):
    if exponent < 0:
        raise ValueError('negative exponent: %s' % exponent)
    if exponent == 0:
        return Operator.identity(op.dim)
    return product(*([op] * exponent))


class InteriorSpec(object):
    """
    The block of an operator where identities are asserted.

    Indices ``lead <= i < dim - margin`` are kept. The trailing *margin*
    absorbs the corruption truncation causes near the cut; *lead* is
    non-zero only when a kernel has been excluded at the start of the
    basis.
    """

    def __init__(self, margin, lead=0):
        if margin == DENSE or int(margin) != margin or margin < 0:
            raise exceptions.InvalidInterior(margin, None)
        if int(lead) != lead or lead < 0:
            raise exceptions.OperatorError('invalid interior lead: %r' % lead)
        self.margin = int(margin)
        self.lead = int(lead)

    def __repr__(self):
        return '<InteriorSpec margin=%d lead=%d>' % (self.margin, self.lead)

    def __eq__(self, other):
        return isinstance(other, InteriorSpec) and \
            (self.margin, self.lead) == (other.margin, other.lead)

    def __ne__(self, other):
        return not self == other

    def __hash__(self):
        return hash((self.margin, self.lead))

    @classmethod
    def for_factors(cls, *ops):
        """
        The default interior for an identity whose terms multiply *ops*: the
        margin is the sum of their band widths.
        """
        bands = [op.band for op in ops]
        dim = ops[0].dim
        if DENSE in bands:
            raise exceptions.InvalidInterior(DENSE, dim)
        margin = sum(bands)
        if margin >= dim:
            raise exceptions.InvalidInterior(margin, dim)
        return cls(margin)

    def grow(self, extra):
        return InteriorSpec(self.margin + extra, self.lead)

    def with_lead(self, lead):
        return InteriorSpec(self.margin, lead)

    def stop(self, dim):
        stop = dim - self.margin
        if stop <= self.lead:
            raise exceptions.InvalidInterior(self.margin, dim)
        return stop

    def block(self, dim):
        """
        Return the interior index range as a :class:`slice`.
        """
        return slice(self.lead, self.stop(dim))

    def size(self, dim):
        return self.stop(dim) - self.lead

    def to_dict(self):
        return {'margin': self.margin, 'lead': self.lead}


def _as_array(a):
    if isinstance(a, Operator):
        return a.entries
    return np.asarray(a)


def interior_norm(a, spec):
    """
    Frobenius norm of the interior block of *a* (an :class:`Operator` or a
    plain matrix).
    """
    entries = _as_array(a)
    block = spec.block(entries.shape[0])
    return float(np.linalg.norm(entries[block, block]))


def interior_distance(a, b, spec):
    _check_dims(a, b)
    return interior_norm(a.entries - b.entries, spec)


def hermitian_asymmetry(h):
    """
    Relative asymmetry ``||h - h^dagger||_F / ||h||_F`` (0 for the zero
    operator).
    """
    norm = h.frobenius()
    if norm == 0:
        return 0.0
    return float(np.linalg.norm(h.entries - h.entries.conj().T)) / norm


def check_hermitian(h, tolerance=HERMITIAN_TOL):
    asymmetry = hermitian_asymmetry(h)
    if asymmetry >= tolerance:
        raise exceptions.NotHermitian(asymmetry, tolerance)
    return asymmetry


def find_degenerate_clusters(values, rel_gap=DEGENERACY_GAP):
    """
    Group ascending *values* whose consecutive gaps are below *rel_gap* times
    the spectral range.

    Return a list of index tuples, one per cluster of two or more values.

    >>> find_degenerate_clusters([0.0, 1.0, 1.0, 2.0])
    [(1, 2)]
    >>> find_degenerate_clusters([3.0, 3.0, 3.0])
    [(0, 1, 2)]
    """
    values = np.asarray(values, dtype=float)
    if values.size < 2:
        return []
    spread = values[-1] - values[0]
    if spread == 0:
        return [tuple(range(values.size))]
    threshold = rel_gap * spread
    clusters = []
    current = [0]
    for i in range(1, values.size):
        if values[i] - values[i - 1] < threshold:
            current.append(i)
        else:
            if len(current) > 1:
                clusters.append(tuple(current))
            current = [i]
    if len(current) > 1:
        clusters.append(tuple(current))
    return clusters


class EigenSystem(object):
    """
    Ascending eigenvalues and orthonormal eigenvectors (as columns) of a
    hermitian operator.

    :attr residual:
        the reconstruction residual ``||h - V diag(values) V^dagger||_F``
    :attr clusters: index tuples of degenerate eigenvalues
    """

    def __init__(self, values, vectors, residual=0.0, clusters=None):
        values = np.array(values, dtype=float)
        vectors = np.array(vectors, dtype=complex)
        values.setflags(write=False)
        vectors.setflags(write=False)
        self.values = values
        self.vectors = vectors
        self.residual = residual
        if clusters is None:
            clusters = find_degenerate_clusters(values)
        self.clusters = clusters

    def __repr__(self):
        return '<EigenSystem dim=%d clusters=%d>' % (self.source_dim,
                                                     len(self.clusters))

    @property
    def source_dim(self):
        return self.vectors.shape[0]

    def __len__(self):
        return self.values.size

    def vector(self, n):
        return self.vectors[:, n]

    def is_degenerate(self, n):
        return any(n in cluster for cluster in self.clusters)

    def orthonormality_defect(self):
        gram = self.vectors.conj().T.dot(self.vectors)
        return float(np.abs(gram - np.eye(gram.shape[0])).max())


def hermitian_eigensystem(h, tolerance=HERMITIAN_TOL):
    """
    Diagonalize hermitian *h* with :func:`scipy.linalg.eigh`.

    Raise :class:`~isospec.exceptions.NotHermitian` if the relative asymmetry
    of *h* reaches *tolerance*.
    """
    check_hermitian(h, tolerance)
    values, vectors = scipy.linalg.eigh(h.entries)
    rebuilt = (vectors * values).dot(vectors.conj().T)
    residual = float(np.linalg.norm(h.entries - rebuilt))
    clusters = find_degenerate_clusters(values)
    if clusters:
        logger.debug('degenerate eigenvalue clusters: %s', clusters)
    return EigenSystem(values, vectors, residual, clusters)


def unitary_from_hermitian(b, tolerance=HERMITIAN_TOL):
    """
    Return ``exp(iB)`` for hermitian *b*, computed from its spectral
    decomposition.
    """
    es = hermitian_eigensystem(b, tolerance)
    vectors = es.vectors
    entries = (vectors * np.exp(1j * es.values)).dot(vectors.conj().T)
    return Operator(entries)


def unitarity_defect(u):
    """
    ``||U^dagger U - 1||_F``.
    """
    gram = u.entries.conj().T.dot(u.entries)
    return float(np.linalg.norm(gram - np.eye(u.dim)))
