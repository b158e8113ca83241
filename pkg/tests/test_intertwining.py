import numpy as np
import pytest

from isospec import fock
from isospec import exceptions
from isospec import intertwining
from isospec import operators
from isospec.operators import Operator, InteriorSpec

from .asserts import assert_operators_close


def boson(dim):
    spec = fock.FockSpec(fock.BOSON, dim)
    a, ad = fock.build_ladder(spec)
    return fock.number_operator(spec), a, ad


def test_tolerances():
    tolerances = intertwining.Tolerances(scale=10)
    assert tolerances.alpha == pytest.approx(1e-9)
    assert tolerances.invert == 1e-8
    assert intertwining.Tolerances(beta=1e-6).beta == 1e-6
    assert tolerances.to_dict()['scale'] == 10
    with pytest.raises(TypeError):
        intertwining.Tolerances(foo=1)


def test_check_kernel_policy():
    intertwining.check_kernel_policy('exclude')
    with pytest.raises(exceptions.InvalidParameter):
        intertwining.check_kernel_policy('ignore')


def test_check_hypotheses():
    n, a, ad = boson(20)
    check = intertwining.check_hypotheses(n, ad)
    assert check.interior == InteriorSpec(2)
    assert check.r_commutant < 1e-12
    assert check.n1_min_singular == pytest.approx(1)
    assert check.kernel_dim == 0
    check.gate(intertwining.Tolerances())

    h1 = Operator.diagonal([0.0, 1.0, 3.0])
    x1 = Operator([[1, 1, 0], [0, 1, 0], [0, 0, 1]])
    check = intertwining.check_hypotheses(h1, x1, InteriorSpec(0))
    assert check.r_commutant > 1
    with pytest.raises(exceptions.CommutantViolation):
        check.gate(intertwining.Tolerances())
    with pytest.raises(exceptions.InvalidParameter):
        intertwining.check_hypotheses(n, ad, kernel='ignore')


def test_ordinary_susy_partner():
    n, a, ad = boson(30)
    pair = intertwining.construct_partner(n, ad)
    assert pair.interior == InteriorSpec(2)
    assert operators.interior_distance(pair.h2, a @ ad, pair.interior) < \
        1e-12
    report = pair.report
    assert report.passed
    assert report.n1_min_singular == pytest.approx(1)
    assert report.kernel_dim == 0
    assert report.gamma
    assert report.max_gamma_residual() < 1e-10
    data = report.to_dict()
    assert data['passed']['gamma']
    assert data['tolerances']['alpha'] == 1e-10


@pytest.mark.parametrize('k', [1, 2, 3])
def test_power_partner_is_shifted_number(k):
    n, a, ad = boson(40)
    x1 = operators.power(ad, k)
    pair = intertwining.construct_partner(n, x1)
    expected = n + k * Operator.identity(40)
    assert operators.interior_distance(pair.h2, expected, pair.interior) < \
        1e-10
    mapped = intertwining.map_eigenvectors(x1, pair.eigensystem)
    assert [m.n for m in mapped if m.annihilated] == list(range(k))


def test_reverse_map():
    n, a, ad = boson(40)
    pair = intertwining.construct_partner(n, operators.power(ad, 2))
    reverse = intertwining.reverse_map_eigenvector(pair, 4)
    assert reverse.residual < 1e-10
    assert reverse.collinear
    assert reverse.passed
    assert reverse.residual_tolerance == pytest.approx(4e-8)
    with pytest.raises(exceptions.AnnihilatedEigenvector):
        intertwining.reverse_map_eigenvector(pair, 1)
    with pytest.raises(exceptions.InvalidParameter):
        intertwining.reverse_map_eigenvector(pair, 40)
    reverse.residual = 1.0
    assert not reverse.passed


def test_commutant_violation():
    h1 = Operator.diagonal([0.0, 1.0, 3.0])
    x1 = Operator([[1, 1, 0], [0, 1, 0], [0, 0, 1]])
    with pytest.raises(exceptions.CommutantViolation):
        intertwining.construct_partner(h1, x1, InteriorSpec(0))


def test_singular_norm_operator():
    n, a, ad = boson(10)
    with pytest.raises(exceptions.SingularNormOperator):
        intertwining.construct_partner(n, a)


def test_not_hermitian():
    h1 = Operator([[0, 1], [0, 0]])
    with pytest.raises(exceptions.NotHermitian):
        intertwining.construct_partner(h1, Operator.identity(2))


def test_dimension_mismatch():
    with pytest.raises(exceptions.DimensionMismatch):
        intertwining.construct_partner(Operator.identity(2),
                                       Operator.identity(3))


def test_shift_intertwiner_partner():
    levels = np.arange(12.0) ** 2
    h1 = Operator.diagonal(levels)
    es = operators.hermitian_eigensystem(h1)
    x1 = fock.build_shift_intertwiner(es, 1)
    pair = intertwining.construct_partner(h1, x1, InteriorSpec(1))
    assert_operators_close(pair.h2, Operator.diagonal(
        np.concatenate([levels[1:], [0.0]])), atol=1e-10)


@pytest.mark.parametrize('q', [-0.5, 0.5])
def test_quon_chain(q):
    spec = fock.FockSpec(fock.QUON, 40, q)
    a, ad = fock.build_ladder(spec)
    n = fock.number_operator(spec)
    identity = Operator.identity(40)
    raise2 = operators.power(ad, 2)
    pair = intertwining.construct_partner(n, raise2)
    expected = (1 + q) * identity + q ** 2 * n
    assert operators.interior_distance(pair.h2, expected, pair.interior) < \
        1e-10
    chain = intertwining.HamiltonianChain.start(pair)
    assert len(chain) == 1
    assert chain.cyclic_at is None

    lowered = intertwining.extend_chain(chain, operators.power(a, 2),
                                        kernel='exclude')
    assert lowered.cyclic_at == 0
    assert lowered.last.report.kernel_dim == 2
    assert lowered.last.interior.lead == 2
    assert lowered.consistency_defect() == 0.0

    raised = intertwining.extend_chain(chain, raise2)
    assert raised.cyclic_at is None
    expected = (1 + q + q ** 2 + q ** 3) * identity + q ** 4 * n
    last = raised.last
    assert operators.interior_distance(last.h2, expected, last.interior) < \
        1e-10
    assert len(raised.hamiltonians()) == 3


def test_quon_lowering_branch_needs_kernel_policy():
    spec = fock.FockSpec(fock.QUON, 40, 0.5)
    a, ad = fock.build_ladder(spec)
    pair = intertwining.construct_partner(fock.number_operator(spec),
                                          operators.power(ad, 2))
    chain = intertwining.HamiltonianChain.start(pair)
    with pytest.raises(exceptions.SingularNormOperator):
        intertwining.extend_chain(chain, operators.power(a, 2))


def test_extend_chain_needs_banded_operators():
    n, a, ad = boson(10)
    pair = intertwining.construct_partner(n, ad)
    chain = intertwining.HamiltonianChain.start(pair)
    dense = Operator(np.eye(10), band=operators.DENSE)
    with pytest.raises(exceptions.InvalidInterior):
        intertwining.extend_chain(chain, dense)


def test_unitary_chain_step():
    n, a, ad = boson(60)
    x = a + ad
    step = intertwining.build_unitary_chain_step(a, x @ x)
    assert step.r_factorization < 1e-9
    assert step.r_partner < 1e-9
    assert operators.unitarity_defect(step.unitary) < 1e-10
    with pytest.raises(exceptions.DimensionMismatch):
        intertwining.build_unitary_chain_step(a, Operator.identity(3))


def test_susy_algebra():
    n, a, ad = boson(30)
    algebra = intertwining.build_susy_algebra(ad @ a, a @ ad, a)
    assert algebra.h.dim == 60
    for name, value in algebra.residuals.items():
        assert value < 1e-12, name
    with pytest.raises(exceptions.NotFactorized):
        intertwining.build_susy_algebra(n, n + 2 * Operator.identity(30),
                                        operators.power(a, 2))


def test_susy_pairing():
    n, a, ad = boson(20)
    records, r_ground = intertwining.check_susy_pairing(ad @ a, a @ ad, a)
    assert len(records) == 19
    assert records[0].n == 0
    assert records[0].value == pytest.approx(1)
    assert max(r.residual for r in records) < 1e-12
    assert max(r.norm_defect for r in records) < 1e-12
    assert r_ground < 1e-14
    assert set(records[0].to_dict()) == {'n', 'value', 'residual',
                                         'norm_defect'}


def test_verify_gamma():
    n, a, ad = boson(30)
    pair = intertwining.construct_partner(n, ad)
    mapped = intertwining.map_eigenvectors(ad, pair.eigensystem)
    records = intertwining.verify_gamma(pair, mapped)
    assert [r.n for r in records] == [r.n for r in pair.report.gamma]
    assert all(r.passed for r in records)
    assert records[0].n == 1
