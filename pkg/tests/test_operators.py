import numpy as np
import pytest

from isospec import operators
from isospec import exceptions
from isospec.operators import Operator, InteriorSpec

from .asserts import assert_operators_close


def random_hermitian(dim, seed):
    rng = np.random.RandomState(seed)
    m = rng.randn(dim, dim) + 1j * rng.randn(dim, dim)
    return Operator(m + m.conj().T)


def test_operator_shape_is_checked():
    with pytest.raises(exceptions.OperatorError):
        Operator([[1, 2, 3]])
    with pytest.raises(exceptions.OperatorError):
        Operator(np.zeros((0, 0)))
    with pytest.raises(exceptions.OperatorError):
        Operator(np.eye(3), band=5)


def test_operator_is_immutable():
    op = Operator.identity(2)
    with pytest.raises(ValueError):
        op.entries[0, 0] = 2


def test_arithmetic_and_bands():
    a = Operator(np.diag([1.0, 2.0], 1), band=1)
    ad = a.adjoint()
    assert ad.band == 1
    assert (a @ ad).band == 2
    assert (a + Operator.identity(3)).band == 1
    assert (2 * a).band == 1
    assert (0 * a).band == 0
    assert_operators_close(a - a, Operator.zeros(3))
    assert_operators_close(-a, (-1) * a)
    assert_operators_close(a.dag, ad)
    with pytest.raises(exceptions.DimensionMismatch):
        a + Operator.identity(2)


def test_numpy_scalars_multiply_operators():
    a = Operator(np.eye(2))
    product = np.float64(2.0) * a
    assert isinstance(product, Operator)
    assert_operators_close(product, Operator(2 * np.eye(2)))


def test_dense_products():
    a = Operator(np.diag(np.ones(3), 1), band=1)
    assert operators.power(a, 3).band == 3
    assert operators.power(a, 4).band == operators.DENSE
    assert_operators_close(operators.power(a, 0), Operator.identity(4))
    with pytest.raises(ValueError):
        operators.power(a, -1)


def test_commutators():
    x = Operator([[0, 1], [1, 0]])
    z = Operator([[1, 0], [0, -1]])
    assert_operators_close(operators.commutator(x, z),
                           Operator([[0, -2], [2, 0]]))
    assert_operators_close(operators.anticommutator(x, z), Operator.zeros(2))


def test_to_dict_from_dict():
    op = Operator([[1, 2j], [-2j, 3]])
    data = op.to_dict()
    assert data['dim'] == 2
    assert data['entries'][1] == [0.0, 2.0]
    assert data['band'] == 1
    assert_operators_close(Operator.from_dict(data), op, atol=0)


@pytest.mark.parametrize('data', [
    {'entries': []},
    {'dim': 2, 'entries': [[1, 0]]},
    {'dim': 1, 'entries': [['a', 0]]},
    {'dim': 1, 'entries': [[1, 0, 0]]},
])
def test_from_dict_errors(data):
    with pytest.raises(exceptions.OperatorError):
        Operator.from_dict(data)


def test_interior_spec():
    spec = InteriorSpec(2)
    assert spec.block(10) == slice(0, 8)
    assert spec.size(10) == 8
    assert spec.grow(3).margin == 5
    assert spec.with_lead(1).block(10) == slice(1, 8)
    assert spec.to_dict() == {'margin': 2, 'lead': 0}
    assert InteriorSpec(2) == InteriorSpec(2, 0)
    assert InteriorSpec(2) != InteriorSpec(2, 1)
    with pytest.raises(exceptions.InvalidInterior):
        InteriorSpec(-1)
    with pytest.raises(exceptions.InvalidInterior):
        InteriorSpec(10).block(10)


def test_interior_spec_for_factors():
    a = Operator(np.diag(np.ones(4), 1), band=1)
    assert InteriorSpec.for_factors(a, a.adjoint()).margin == 2
    dense = Operator(np.ones((5, 5)), band=operators.DENSE)
    with pytest.raises(exceptions.InvalidInterior):
        InteriorSpec.for_factors(dense)


def test_interior_norm():
    m = np.zeros((4, 4))
    m[3, 3] = 5
    m[0, 0] = 1
    assert operators.interior_norm(m, InteriorSpec(1)) == 1
    assert operators.interior_norm(Operator(m), InteriorSpec(0)) == \
        pytest.approx(np.sqrt(26))
    assert operators.interior_distance(Operator(m), Operator.zeros(4),
                                       InteriorSpec(1)) == 1


def test_check_hermitian():
    h = random_hermitian(5, seed=0)
    assert operators.check_hermitian(h) < 1e-15
    with pytest.raises(exceptions.NotHermitian):
        operators.check_hermitian(Operator([[0, 1], [0, 0]]))
    assert operators.hermitian_asymmetry(Operator.zeros(2)) == 0


def test_hermitian_eigensystem():
    h = random_hermitian(8, seed=1)
    es = operators.hermitian_eigensystem(h)
    assert len(es) == 8
    assert es.source_dim == 8
    assert np.all(np.diff(es.values) > 0)
    assert es.residual < 1e-12
    assert es.orthonormality_defect() < 1e-12
    assert not es.clusters
    for n in range(8):
        defect = h.entries.dot(es.vector(n)) - es.values[n] * es.vector(n)
        assert np.linalg.norm(defect) < 1e-12


def test_degenerate_eigensystem():
    es = operators.hermitian_eigensystem(Operator.diagonal([2, 0, 1, 1]))
    assert es.values.tolist() == pytest.approx([0, 1, 1, 2])
    assert es.clusters == [(1, 2)]
    assert es.is_degenerate(2)
    assert not es.is_degenerate(0)


def test_unitary_from_hermitian():
    b = random_hermitian(6, seed=2)
    u = operators.unitary_from_hermitian(b)
    assert operators.unitarity_defect(u) < 1e-12
    # exp(iB) commutes with B
    assert operators.commutator(u, b).frobenius() < 1e-10
    zero = operators.unitary_from_hermitian(Operator.zeros(3))
    assert_operators_close(zero, Operator.identity(3))


def random_operator(dim, rng):
    return Operator(rng.randn(dim, dim) + 1j * rng.randn(dim, dim))


def test_commutator_norm_bound():
    rng = np.random.RandomState(3)
    for dim in (1, 2, 5, 17):
        for _ in range(10):
            a = random_operator(dim, rng)
            b = random_operator(dim, rng)
            bound = 2 * a.frobenius() * b.frobenius()
            assert operators.commutator(a, b).frobenius() <= bound
            assert operators.anticommutator(a, b).frobenius() <= bound


def test_interior_norm_shrinks_with_margin():
    rng = np.random.RandomState(4)
    a = random_operator(12, rng)
    norms = [operators.interior_norm(a, InteriorSpec(margin))
             for margin in range(12)]
    assert norms[0] == pytest.approx(a.frobenius())
    assert all(later <= earlier
               for earlier, later in zip(norms, norms[1:]))


@pytest.mark.parametrize('dim', [1, 2, 10, 50, 200])
def test_eigensystem_reconstruction(dim):
    h = random_hermitian(dim, seed=dim)
    es = operators.hermitian_eigensystem(h)
    rebuilt = (es.vectors * es.values).dot(es.vectors.conj().T)
    assert np.linalg.norm(rebuilt - h.entries) < 1e-10 * h.frobenius()


def test_unitary_from_diagonal():
    u = operators.unitary_from_hermitian(Operator.diagonal([np.pi, 0.0]))
    assert_operators_close(u, Operator.diagonal([-1.0, 1.0]))


def test_unitary_of_squared_position_converges_on_leading_block():
    blocks = {}
    for dim in (60, 120):
        a = Operator(np.diag(np.sqrt(np.arange(1.0, dim)), 1), band=1)
        position = a + a.adjoint()
        u = operators.unitary_from_hermitian(position @ position)
        assert operators.unitarity_defect(u) < 1e-10
        blocks[dim] = u.entries[:15, :15]
    assert np.abs(blocks[60] - blocks[120]).max() < 1e-4
