"""
The checks behind each registered scenario.

A runner takes the resolved scenario parameters, the
:class:`~isospec.reports.RunReport` it fills with residuals, facts and
record tables, and the :class:`~isospec.intertwining.Tolerances` of the
run. Refusals propagate as :class:`~isospec.exceptions.HypothesisError`.
"""

import cmath
import logging
import math

import numpy as np

from . import coherent
from . import exceptions
from . import fock
from . import intertwining
from . import operators
from .operators import Operator, InteriorSpec, interior_norm


logger = logging.getLogger(__name__)

RUNNERS = {}

CONTINUITY_STEPS = (1e-1, 1e-2, 1e-3)


def runner(*names):
    """
    Register the decorated function as the runner of scenarios *names*.
    """

    def decorator(func):
        for name in names:
            RUNNERS[name] = func
        return func

    return decorator


def _relative(value, scale):
    if scale == 0:
        return value
    return value / scale


def _rel_error(value, target):
    return _relative(abs(value - target), abs(target))


def pair_residuals(pair):
    """
    Residuals of an :class:`~isospec.intertwining.IntertwinedPair`, relative
    to the scales used by its property report.
    """
    rep = pair.report
    h1, x1 = pair.h1, pair.x1
    commutant_scale = (x1 @ x1.adjoint()).frobenius() * h1.frobenius()
    beta_scale = rep.h1_norm * rep.x1_norm
    gamma = [r.residual / max(1.0, abs(r.value)) for r in rep.gamma]
    return {
        'commutant_rel': rep.r_commutant / max(commutant_scale, 1.0),
        'n1_min_singular': rep.n1_min_singular,
        'alpha_rel': _relative(rep.r_alpha, rep.h2_norm),
        'beta_rel': _relative(rep.r_beta, beta_scale),
        'beta_adjoint_rel': _relative(rep.r_beta_adjoint, beta_scale),
        'beta_strong_rel': _relative(rep.r_beta_strong, beta_scale),
        'n1_commutation': rep.r_n1_commutation / max(1.0, rep.h2_norm),
        'gamma_rel': max(gamma or [0.0]),
    }


def worst_residuals(residual_maps):
    """
    Merge residual maps keeping the worst value of each: the smallest
    ``n1_min_singular``, the largest of everything else.
    """
    ret = {}
    for residuals in residual_maps:
        for name, value in residuals.items():
            if name not in ret:
                ret[name] = value
            elif name == 'n1_min_singular':
                ret[name] = min(ret[name], value)
            else:
                ret[name] = max(ret[name], value)
    return ret


def report_pair(report, pair):
    report.add_residuals(pair_residuals(pair))
    report.add_records('gamma', [r.to_dict() for r in pair.report.gamma])
    report.dims.update({
        'dim': pair.h1.dim,
        'interior': pair.interior.to_dict(),
    })
    report.add_fact('kernel_dim', pair.report.kernel_dim)


def _boson(dim):
    spec = fock.FockSpec(fock.BOSON, dim)
    a, ad = fock.build_ladder(spec)
    return spec, a, ad


def verify_user_pair(h1, x1, interior, kernel, report, tolerances):
    pair = intertwining.construct_partner(h1, x1, interior, tolerances,
                                          kernel)
    report_pair(report, pair)
    report.add_operator('h2', pair.h2)


@runner('ex1')
def run_ordinary_susy(params, report, tolerances):
    spec, a, ad = _boson(params['dim'])
    h1 = fock.number_operator(spec)
    pair = intertwining.construct_partner(h1, ad, tolerances=tolerances)
    report_pair(report, pair)
    report.add_residual('h2_closed_form', operators.interior_distance(
        pair.h2, a @ ad, pair.interior))
    ccr = operators.commutator(a, ad) - Operator.identity(spec.dim)
    report.add_residual('ccr_interior', interior_norm(ccr, InteriorSpec(1)))


@runner('ex2', 'ex2-cubed')
def run_power_intertwiner(params, report, tolerances):
    k = params['power']
    spec, a, ad = _boson(params['dim'])
    h1 = fock.number_operator(spec)
    x1 = operators.power(ad, k)
    pair = intertwining.construct_partner(h1, x1, tolerances=tolerances)
    report_pair(report, pair)
    expected = h1 + k * Operator.identity(spec.dim)
    report.add_residual('h2_closed_form', operators.interior_distance(
        pair.h2, expected, pair.interior))
    mapped = intertwining.map_eigenvectors(x1, pair.eigensystem,
                                           tolerances.vanish)
    report.add_fact('annihilated', [m.n for m in mapped if m.annihilated])
    reverse = intertwining.reverse_map_eigenvector(pair,
                                                   params['reverse_level'])
    report.add_residual('reverse_residual', reverse.residual)
    report.add_residual('reverse_collinearity', reverse.collinearity)


@runner('ex3-shift')
def run_shift_intertwiner(params, report, tolerances):
    dim, step = params['dim'], params['step']
    levels = np.arange(dim, dtype=float) ** 2
    h1 = Operator.diagonal(levels)
    es1 = operators.hermitian_eigensystem(h1, tolerances.hermitian)
    x1 = fock.build_shift_intertwiner(es1, step)
    # N1 vanishes on the last `step` eigenvectors
    interior = InteriorSpec(step)
    pair = intertwining.construct_partner(h1, x1, interior, tolerances)
    report_pair(report, pair)

    kept = es1.vectors[:, :dim - step]
    expected = Operator((kept * es1.values[step:]).dot(kept.conj().T))
    report.add_residual('h2_closed_form', operators.interior_distance(
        pair.h2, expected, pair.interior))
    identity = Operator.identity(dim)
    report.add_residual('n1_identity',
                        interior_norm(pair.n1 - identity, pair.interior))
    low = es1.vectors[:, :step]
    projector = Operator(np.eye(dim) - low.dot(low.conj().T))
    report.add_residual('range_projector',
                        (x1 @ x1.adjoint() - projector).frobenius())
    mapped = intertwining.map_eigenvectors(x1, es1, tolerances.vanish)
    report.add_fact('annihilated', [m.n for m in mapped if m.annihilated])


def _ex4_params(params):
    beta = params['beta'] * cmath.exp(1j * params['beta_phase'])
    if params['beta_phase'] == 0:
        beta = params['beta']
    return {
        'a': params['a'],
        'b': params['b'],
        'c': params['c'],
        'alpha': params['alpha'],
        'beta': beta,
    }


def _run_finite(name, example_params, report, tolerances):
    h1, x1 = fock.finite_example(name, example_params)
    pair = intertwining.construct_partner(h1, x1, InteriorSpec(0),
                                          tolerances)
    report_pair(report, pair)
    predicted = fock.predicted_partner(name, example_params)
    report.add_residual('h2_closed_form', float(np.abs(
        pair.h2.entries - predicted.entries).max()))
    report.add_operator('h2', pair.h2)
    return pair


@runner('ex4-diag', 'ex4-phase')
def run_two_level(params, report, tolerances):
    name = 'ex4_diag' if params['c'] == 0 else 'ex4_phase'
    pair = _run_finite(name, _ex4_params(params), report, tolerances)
    report.add_fact('branch', name)
    es2 = operators.hermitian_eigensystem(pair.h2, tolerances.hermitian)
    mapped = intertwining.map_eigenvectors(pair.x1, pair.eigensystem,
                                           tolerances.vanish)
    overlaps = [abs(np.vdot(es2.vector(m.n), m.vector)) / m.mu
                for m in mapped if not m.annihilated]
    report.add_residual('swap_overlap', min(overlaps))


@runner('ex5-angular')
def run_angular(params, report, tolerances):
    example_params = {'hbar': params['hbar'], 'alpha': params['alpha']}
    pair = _run_finite('ex5_angular', example_params, report, tolerances)
    alpha = params['alpha']
    report.add_residual('n1_scalar', float(np.abs(
        pair.n1.entries - alpha ** 2 * np.eye(pair.n1.dim)).max()))
    report.add_residual('x1_selfadjoint',
                        (pair.x1 - pair.x1.adjoint()).frobenius())


def _chain_rows(branch, chain):
    rows = []
    for index, link in enumerate(chain.links):
        residuals = pair_residuals(link)
        rows.append({
            'branch': branch,
            'link': index + 1,
            'margin': link.interior.margin,
            'lead': link.interior.lead,
            'kernel_dim': link.report.kernel_dim,
            'alpha_rel': residuals['alpha_rel'],
            'beta_rel': residuals['beta_rel'],
            'gamma_rel': residuals['gamma_rel'],
        })
    return rows


@runner('quon-chain')
def run_quon_chain(params, report, tolerances):
    q = params['q']
    spec = fock.FockSpec(fock.QUON, params['dim'], q)
    dim = spec.dim
    a, ad = fock.build_ladder(spec)
    number = fock.number_operator(spec)
    identity = Operator.identity(dim)
    report.dims['dim'] = dim

    report.add_residual('q_mutator', interior_norm(
        fock.q_mutator(spec) - identity, InteriorSpec(1)))
    values = operators.hermitian_eigensystem(ad @ a).values
    report.add_residual('number_eigenvalues', float(np.abs(
        np.sort(values) - np.sort(fock.q_numbers(q, dim))).max()))

    raise2 = operators.power(ad, 2)
    lower2 = operators.power(a, 2)
    pair = intertwining.construct_partner(number, raise2,
                                          tolerances=tolerances)
    h2_expected = (1 + q) * identity + q ** 2 * number
    report.add_residual('h2_closed_form', operators.interior_distance(
        pair.h2, h2_expected, pair.interior))
    chain = intertwining.HamiltonianChain.start(pair)

    # lowering branch, which is expected to come back to h1
    chain_a = intertwining.extend_chain(chain, lower2, kernel='exclude')
    last_a = chain_a.last
    report.add_residual('h3a_vs_h1', operators.interior_distance(
        last_a.h2, number, last_a.interior))
    report.add_fact('cyclic_at_a', chain_a.cyclic_at)
    report.add_fact('kernel_dim_a', last_a.report.kernel_dim)

    chain_b = intertwining.extend_chain(chain, raise2)
    last_b = chain_b.last
    h3b_expected = (1 + q + q ** 2) * identity + q ** 3 * (a @ ad)
    h3b_number = (1 + q + q ** 2 + q ** 3) * identity + q ** 4 * number
    report.add_residual('h3b_closed_form', operators.interior_distance(
        last_b.h2, h3b_expected, last_b.interior))
    report.add_residual('h3b_number_form', operators.interior_distance(
        last_b.h2, h3b_number, last_b.interior))
    report.add_fact('cyclic_at_b', chain_b.cyclic_at)

    chain_b = intertwining.extend_chain(chain_b, raise2)
    last_b = chain_b.last
    h4_expected = float(fock.q_numbers(q, 7)[6]) * identity + \
        q ** 6 * number
    report.add_residual('h4_closed_form', operators.interior_distance(
        last_b.h2, h4_expected, last_b.interior))

    links = chain_a.links + chain_b.links[1:]
    residuals = worst_residuals(pair_residuals(link) for link in links)
    report.add_residuals(residuals)
    report.add_residual('chain_consistency', max(
        chain_a.consistency_defect(), chain_b.consistency_defect()))
    report.add_records('chain', _chain_rows('a', chain_a) +
                       _chain_rows('b', chain_b))
    report.dims['interior'] = last_b.interior.to_dict()


def _leading_block(dim, size):
    return InteriorSpec(dim - size)


def _unitary_first_step(dim, size):
    spec, a, ad = _boson(dim)
    position = a + ad
    b = position @ position
    step = intertwining.build_unitary_chain_step(a, b)
    expected = a @ ad + 4 * b + 2j * (ad @ ad - a @ a)
    block = _leading_block(dim, size)
    residual = operators.interior_distance(step.h_next, expected, block)
    return (a, ad, b), step, residual


@runner('unitary-chain')
def run_unitary_chain(params, report, tolerances):
    size = params['block']
    dim, coarse, dim_h3 = params['dim'], params['dim_coarse'], \
        params['dim_h3']
    for name in ('dim', 'dim_coarse', 'dim_h3'):
        if params[name] <= size:
            raise exceptions.InvalidParameter(
                name, params[name], 'a dimension larger than block=%d' % size
            )
    report.dims.update({'dim': dim, 'dim_coarse': coarse, 'dim_h3': dim_h3,
                        'block': size})

    _, _, r_coarse = _unitary_first_step(coarse, size)
    (a, ad, _), step, r_fine = _unitary_first_step(dim, size)
    report.add_residual('h2_block', r_fine)
    report.add_residual('h2_block_coarse', r_coarse)
    # below this the coarse residual is already at rounding level
    ratio = 0.0 if r_coarse < 1e-9 else r_fine / r_coarse
    report.add_residual('h2_shrink_ratio', ratio)
    report.add_records('block_residuals', [
        {'dim': coarse, 'h2_block': r_coarse},
        {'dim': dim, 'h2_block': r_fine},
    ])

    identity = Operator.identity(dim)
    a2 = step.a_next
    flip = operators.commutator(a2, a2.adjoint()) + identity
    report.add_residual('a2_commutator_flip',
                        interior_norm(flip, _leading_block(dim, size)))
    report.add_residual('factorization_rel', _relative(
        step.r_factorization, (ad @ a).frobenius()))
    report.add_residual('partner_rel', _relative(
        step.r_partner, step.h_next.frobenius()))
    report.add_residual('unitarity',
                        operators.unitarity_defect(step.unitary))

    (a, ad, b), step1, _ = _unitary_first_step(dim_h3, size)
    a2 = step1.a_next
    position2 = a2 + a2.adjoint()
    step2 = intertwining.build_unitary_chain_step(a2, position2 @ position2)
    expected = ad @ a + 16 * b + 4j * (ad @ ad - a @ a)
    block = _leading_block(dim_h3, size)
    report.add_residual('h3_block_rel', _relative(
        operators.interior_distance(step2.h_next, expected, block),
        interior_norm(expected, block)))
    a3 = step2.a_next
    ccr = operators.commutator(a3, a3.adjoint()) - Operator.identity(dim_h3)
    report.add_residual('a3_commutator', interior_norm(ccr, block))


@runner('susy-algebra')
def run_susy_algebra(params, report, tolerances):
    spec, a, ad = _boson(params['dim'])
    h1 = ad @ a
    h2 = a @ ad
    algebra = intertwining.build_susy_algebra(h1, h2, a,
                                              tolerances=tolerances)
    report.add_residuals(algebra.residuals)
    report.add_residual('factorization', algebra.r_factorization)
    report.dims['dim'] = spec.dim

    number = fock.number_operator(spec)
    shifted = number + 2 * Operator.identity(spec.dim)
    try:
        intertwining.build_susy_algebra(number, shifted,
                                        operators.power(a, 2),
                                        tolerances=tolerances)
    except exceptions.NotFactorized as exc:
        logger.debug('control pair refused: %s', exc)
        report.add_residual('control_refused', 1.0)
    else:
        report.add_residual('control_refused', 0.0)

    records, r_ground = intertwining.check_susy_pairing(h1, h2, a)
    report.add_residual('pairing_residual',
                        max([r.residual for r in records] or [0.0]))
    report.add_residual('pairing_norm',
                        max([r.norm_defect for r in records] or [0.0]))
    report.add_residual('ground_annihilated', r_ground)
    report.add_records('pairing', [r.to_dict() for r in records])


def _grid_point(state, params, data):
    """
    Normalization, action identity, temporal stability and eigen-relation
    residuals of one vector coherent state.
    """
    p = state.params
    expectation, closed_form = coherent.action_identity(state, data)
    temporal = 0.0
    for t in params['times']:
        evolved = coherent.evolve(state, t, data)
        target = coherent.synthesize_vector_cs(
            p.replace(gamma=p.gamma + t, n_max=state.n_max), data)
        temporal = max(temporal, evolved.distance(target))
    row = {
        'J1': p.J1,
        'J2': p.J2,
        'gamma': p.gamma,
        'delta': p.delta,
        'n_max': state.n_max,
        'norm_defect': abs(state.susy_norm() - 1),
        'action_rel': _rel_error(expectation, closed_form),
        'temporal': temporal,
        'eigen_relation': coherent.eigen_relation_residual(state, data),
    }
    if p.J1 == p.J2:
        row['action_equal_J'] = abs(expectation - data.omega * p.J1) / \
            max(1.0, p.J1)
    return row


def _vector_grid(params, data, report):
    rows = []
    for J1 in params['J_grid']:
        for J2 in params['J_grid']:
            for gamma in params['gamma_grid']:
                for delta in params['delta_grid']:
                    cs_params = coherent.VectorCSParams(
                        J1, J2, gamma, delta, tail_tol=params['tail_tol'])
                    state = coherent.synthesize_vector_cs(cs_params, data)
                    rows.append(_grid_point(state, params, data))
    report.add_records('grid', rows)
    for name in ('norm_defect', 'action_rel', 'temporal', 'eigen_relation',
                 'action_equal_J'):
        values = [row[name] for row in rows if name in row]
        if values:
            report.add_residual(name, max(values))
    return rows


def _primary_params(params):
    return coherent.VectorCSParams(params['J1'], params['J2'],
                                   params['gamma'], params['delta'],
                                   tail_tol=params['tail_tol'])


def _continuity(primary, data, report):
    state = coherent.synthesize_vector_cs(primary, data)
    lipschitz = coherent.phase_lipschitz(state, data)
    gamma_steps = [coherent.continuity_check(
        primary.replace(gamma=primary.gamma + h), primary, data)
        for h in CONTINUITY_STEPS]
    J_steps = [coherent.continuity_check(
        primary.replace(J1=primary.J1 + h), primary, data)
        for h in CONTINUITY_STEPS]
    monotone = all(later < earlier
                   for steps in (gamma_steps, J_steps)
                   for earlier, later in zip(steps, steps[1:]))
    report.add_residual('continuity_monotone', 1.0 if monotone else 0.0)
    report.add_residual('continuity_first_order', max(
        _relative(d, lipschitz * h)
        for d, h in zip(gamma_steps, CONTINUITY_STEPS)))
    report.add_records('continuity', [
        {'step': h, 'gamma_distance': dg, 'J1_distance': dj}
        for h, dg, dj in zip(CONTINUITY_STEPS, gamma_steps, J_steps)
    ])


def _scalar_checks(params, data, report):
    weight = coherent.build_frame_weight(fock.BOSON)
    norm = eigen = temporal = action = consistency = 0.0
    for J in params['J_grid']:
        for gamma in params['gamma_grid']:
            scalar = coherent.scalar_gk_state(J, gamma, data,
                                              params['tail_tol'])
            norm = max(norm, abs(float(np.sum(np.abs(scalar.coeffs) ** 2))
                                 - 1))
            eigen = max(eigen, coherent.scalar_eigen_residual(scalar, data))
            for t in params['times']:
                evolved = coherent.evolve_scalar(scalar, t, data)
                target = coherent.scalar_gk_state(
                    J, gamma + data.omega * t, data, n_max=scalar.n_max)
                temporal = max(temporal, float(np.linalg.norm(
                    evolved.coeffs - target.coeffs)))
            expectation, closed_form = coherent.scalar_action_identity(
                scalar, data)
            action = max(action, _rel_error(expectation, closed_form))
            vector = coherent.synthesize_vector_cs(coherent.VectorCSParams(
                J, J, gamma, params['delta'], tail_tol=params['tail_tol']),
                data)
            consistency = max(consistency, coherent.scalar_vector_consistency(
                vector, scalar))
    report.add_residuals({
        'scalar_norm': norm,
        'scalar_eigen_relation': eigen,
        'scalar_temporal': temporal,
        'scalar_action': action,
        'scalar_vector_consistency': consistency,
    })
    frame = coherent.scalar_frame_defect(data, weight)
    report.add_residual('scalar_frame_defect', frame.max_defect)


def _operator_level(params, report, tolerances):
    """
    Temporal stability with actual matrices, and the X relation of a
    scaled-unitary intertwiner, on the three-level angular example.
    """
    h1, x1 = fock.finite_example('ex5_angular')
    pair = intertwining.construct_partner(h1, x1, InteriorSpec(0),
                                          tolerances)
    es1 = pair.eigensystem
    es2 = operators.hermitian_eigensystem(pair.h2, tolerances.hermitian)
    aligned = coherent.align_partner_basis(x1, es1, es2)
    data = coherent.spectrum_data(es1)
    state = coherent.synthesize_vector_cs(_primary_params(params), data)
    initial = coherent.embed_state(state, es1, aligned)
    residual = 0.0
    for t in params['times']:
        propagator = coherent.evolution_operator(
            h1, pair.h2, state.params.delta, t, data.shift)
        target = coherent.embed_state(coherent.evolve(state, t, data), es1,
                                      aligned)
        residual = max(residual, float(np.linalg.norm(
            propagator.entries.dot(initial) - target)))
    report.add_residual('operator_evolution', residual)
    report.add_fact('finite_shift', data.shift)

    xop = coherent.build_X_operator(x1, es1, es2)
    kind, relation = coherent.check_X_relations(xop, state, data)
    report.add_fact('x_constant_kind', kind)
    report.add_residual('x_constant_relation',
                        relation if kind == 'constant' else None)


def _synthetic_X(params, report):
    """
    X relations for intertwiners built on the eigenbases of ``N`` and of a
    unitarily rotated copy of it.
    """
    spec, a, ad = _boson(params['x_dim'])
    h1 = fock.number_operator(spec)
    rotation = operators.unitary_from_hermitian(a + ad)
    h2 = operators.product(rotation, h1, rotation.adjoint())
    es1 = operators.hermitian_eigensystem(h1)
    es2 = operators.hermitian_eigensystem(h2)
    data = coherent.spectrum_data(es1)
    state = coherent.synthesize_vector_cs(_primary_params(params), data)

    x1 = coherent.eigenbasis_intertwiner(es1, es2, data.eps)
    xop = coherent.build_X_operator(x1, es1, es2)
    kind, relation = coherent.check_X_relations(xop, state, data)
    report.add_fact('x_epsilon_kind', kind)
    report.add_residual('x_epsilon_relation',
                        relation if kind == 'epsilon' else None)

    n = np.arange(spec.dim)
    weights = 1 + params['x_generic_curvature'] * n ** 2
    generic = coherent.eigenbasis_intertwiner(es1, es2, weights)
    xop = coherent.build_X_operator(generic, es1, es2)
    kind, _ = coherent.check_X_relations(xop, state, data)
    report.add_fact('x_generic_kind', kind)
    report.add_residual('x_generic_unrelated', 1.0 if kind == 'none' else 0.0)


@runner('gk-boson')
def run_gk_boson(params, report, tolerances):
    spec = fock.FockSpec(fock.BOSON, params['dim'])
    data = coherent.spectrum_data(spec)
    report.dims['levels'] = data.levels
    report.add_residual('big_M_exp', _rel_error(
        coherent.big_M(1.0, data, params['tail_tol']), math.e))
    _vector_grid(params, data, report)

    mismatch_J = params['mismatch_J']
    state = coherent.synthesize_vector_cs(coherent.VectorCSParams(
        mismatch_J, mismatch_J, params['gamma'], params['delta'],
        tail_tol=params['tail_tol']), data)
    shifted = params['gamma'] + params['mismatch_shift']
    report.add_residual('eigen_mismatch', coherent.proportionality_residual(
        state, data, shifted))
    report.add_residual('eigen_mismatch_direct',
                        coherent.eigen_relation_residual(state, data,
                                                         shifted))

    state = coherent.synthesize_vector_cs(_primary_params(params), data)
    t1, t2 = params['times'][:2]
    composed = coherent.evolve(coherent.evolve(state, t1, data), t2, data)
    report.add_residual('temporal_composition', composed.distance(
        coherent.evolve(state, t1 + t2, data)))
    _continuity(_primary_params(params), data, report)
    _scalar_checks(params, data, report)
    _operator_level(params, report, tolerances)
    _synthetic_X(params, report)


@runner('gk-quon')
def run_gk_quon(params, report, tolerances):
    q = params['q']
    spec = fock.FockSpec(fock.QUON, params['dim'], q)
    data = coherent.spectrum_data(spec)
    report.dims['levels'] = data.levels
    report.add_fact('radius', data.radius)
    _vector_grid(params, data, report)

    rows = []
    for J in params['oracle_J']:
        value = coherent.big_M(J, data, params['tail_tol'])
        oracle = coherent.mp_big_M(J, q, terms=params['oracle_terms'])
        rows.append({'J': J, 'big_M': value, 'oracle': oracle,
                     'rel_error': _rel_error(value, oracle)})
    report.add_records('oracle', rows)
    report.add_residual('big_M_oracle_rel',
                        max(row['rel_error'] for row in rows))

    try:
        coherent.synthesize_vector_cs(
            coherent.VectorCSParams(data.radius, 0.0), data)
    except exceptions.DomainError as exc:
        logger.debug('J = R refused: %s', exc)
        report.add_residual('domain_refused', 1.0)
    else:
        report.add_residual('domain_refused', 0.0)

    frame = coherent.frame_operator_defect(
        data, coherent.build_frame_weight(fock.QUON), params['delta'])
    report.add_fact('frame_status', frame.status)


def _remark_rows(defect):
    rows = []
    for (i, j), value in np.ndenumerate(defect.defect):
        if abs(value) > 1e-12:
            rows.append({'row': i, 'column': j, 'value': float(value)})
    return rows


@runner('gk-frame')
def run_gk_frame(params, report, tolerances):
    spec = fock.FockSpec(fock.BOSON, params['dim'])
    data = coherent.spectrum_data(spec)
    weight = coherent.build_frame_weight(fock.BOSON)
    size = params['size']
    report.dims.update({'levels': data.levels, 'size': size})

    check = coherent.moment_check(weight, data, params['moments_up_to'])
    report.add_residual('moment_rel', check.max_rel_error())
    report.add_records('moments', [r.to_dict() for r in check.records])

    main = coherent.frame_operator_defect(data, weight, params['delta'],
                                          size, params['windows'])
    defects = [coherent.frame_operator_defect(data, weight, delta, size)
               for delta in params['deltas'] if delta > 0]
    if params['delta'] > 0:
        defects.append(main)
    if defects:
        report.add_residual('frame_defect',
                            max(d.max_defect for d in defects))
    report.add_records('windows', main.leakage)
    if main.leakage:
        within = all(row['within_envelope'] for row in main.leakage)
        report.add_residual('window_envelope', 1.0 if within else 0.0)
        report.add_residual('window_decay_ratio', main.decay_ratio)

    remark = coherent.frame_operator_defect(data, weight, 0.0, size)
    report.add_residual('remark_residual', remark.remark_residual())
    report.add_residual('cross_corner_defect',
                        abs(remark.cross_corner - 1))
    report.add_records('remark_defect', _remark_rows(remark))

    try:
        coherent.frame_operator_defect(
            data, coherent.scaled_exponential_weight(2.0), params['delta'],
            size)
    except exceptions.WeightError as exc:
        logger.debug('mismatched weight rejected: %s', exc)
        report.add_residual('mismatched_weight_rejected', 1.0)
    else:
        report.add_residual('mismatched_weight_rejected', 0.0)
