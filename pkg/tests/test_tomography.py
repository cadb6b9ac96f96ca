import json

import numpy as np
import pytest

from conftest import dense_S
from mubkit.classes import build_family
from mubkit.projections import family_projections
from mubkit.spin import SpinIndex
from mubkit.tomography import (
    MeasurementRecord,
    TomographyError,
    general_route_gate,
    measure_probs,
    random_density_matrix,
    random_pure_state,
    reconstruct_general,
    reconstruct_prime,
    spin_basis_expansion,
    spin_coefficient,
    validate_density,
)


def test_random_states_are_valid(rng):
    for d in (2, 3, 4, 8):
        validate_density(random_density_matrix(d, rng))
        pure = random_pure_state(d, rng)
        validate_density(pure)
        assert abs(np.trace(pure @ pure) - 1) < 1e-12


def test_validate_density_rejects():
    with pytest.raises(TomographyError, match="Hermitian"):
        validate_density(np.array([[1, 1], [0, 0]], dtype=complex))
    with pytest.raises(TomographyError, match="trace"):
        validate_density(np.eye(2))
    with pytest.raises(TomographyError, match="positive"):
        validate_density(np.diag([1.5, -0.5]))
    with pytest.raises(TomographyError, match="square"):
        validate_density(np.ones((2, 3)))


def test_maximally_mixed_probabilities():
    fam = build_family(3, 1)
    rec = measure_probs(np.eye(3) / 3, fam)
    for pr in rec.probs.values():
        np.testing.assert_allclose(pr, np.full(3, 1 / 3), atol=1e-12)


def test_probabilities_sum_to_one(rng):
    fam = build_family(2, 2)
    rec = measure_probs(random_density_matrix(4, rng), fam)
    assert set(rec.probs) == {str(c.label) for c in fam}
    for pr in rec.probs.values():
        assert abs(pr.sum() - 1) < 1e-12 and np.all(pr >= 0)


def test_dimension_mismatch_is_rejected(rng):
    with pytest.raises(TomographyError, match="dimension"):
        measure_probs(random_density_matrix(2, rng), build_family(3, 1))


@pytest.mark.parametrize("d", [2, 3, 5, 7])
def test_spin_coefficient_from_record_matches_trace(d, rng):
    fam = build_family(d, 1)
    rho = random_density_matrix(d, rng)
    rec = measure_probs(rho, fam)
    for j in range(d):
        for k in range(d):
            if j == 0 and k == 0:
                continue
            u = SpinIndex(d, j, k)
            direct = np.trace(dense_S(d, j, k).conj().T @ rho)
            assert abs(spin_coefficient(rec, u, fam) - direct) < 1e-12
            assert abs(spin_coefficient(rho, u) - direct) < 1e-12


def test_spin_coefficient_rejects_identity(rng):
    with pytest.raises(TomographyError):
        spin_coefficient(np.eye(3) / 3, SpinIndex(3, 0, 0))


@pytest.mark.parametrize("d", [2, 3, 5])
def test_prime_round_trip(d, rng):
    fam = build_family(d, 1)
    for _ in range(5):
        rho = random_density_matrix(d, rng)
        est = reconstruct_prime(measure_probs(rho, fam), fam)
        assert np.linalg.norm(est - rho) < 1e-12


@pytest.mark.parametrize("p,n", [(2, 2), (3, 2), (2, 3)])
def test_general_round_trip(p, n, rng):
    fam = build_family(p, n)
    projs = family_projections(fam)
    for _ in range(5):
        rho = random_density_matrix(p**n, rng)
        est = reconstruct_general(measure_probs(rho, fam, projections=projs), fam, projs)
        assert np.linalg.norm(est - rho) < 1e-10


def test_general_route_gate():
    assert general_route_gate() < 1e-9


@pytest.mark.parametrize("p,n", [(2, 2), (3, 2)])
def test_spin_basis_expansion_identity(p, n, rng):
    rho = random_density_matrix(p**n, rng)
    np.testing.assert_allclose(spin_basis_expansion(rho, p, n), rho, atol=1e-12)


def test_incomplete_records_are_rejected(rng):
    fam = build_family(3, 1)
    rec = measure_probs(random_density_matrix(3, rng), fam)
    del rec.probs["inf"]
    with pytest.raises(TomographyError, match="missing"):
        reconstruct_prime(rec, fam)
    fam4 = build_family(2, 2)
    rec4 = measure_probs(random_density_matrix(4, rng), fam4)
    del rec4.probs["00"]
    with pytest.raises(TomographyError, match="missing"):
        reconstruct_general(rec4, fam4)


def test_sampled_reconstruction_improves_with_shots():
    fam = build_family(3, 1)
    rho = random_density_matrix(3, np.random.default_rng(1))
    errs = []
    for shots in (100, 1_000_000):
        rec = measure_probs(rho, fam, shots=shots, seed=5)
        assert not rec.exact and rec.shots == shots
        errs.append(np.linalg.norm(reconstruct_prime(rec, fam) - rho))
    assert errs[1] < errs[0]
    assert errs[1] < 0.01


def test_sampling_is_seeded():
    fam = build_family(2, 2)
    rho = random_density_matrix(4, np.random.default_rng(2))
    a = measure_probs(rho, fam, shots=500, seed=9)
    b = measure_probs(rho, fam, shots=500, seed=9)
    for k in a.probs:
        np.testing.assert_array_equal(a.probs[k], b.probs[k])


def test_record_round_trip():
    fam = build_family(2, 1)
    rec = measure_probs(np.eye(2) / 2, fam, shots=10, seed=1)
    back = MeasurementRecord.from_dict(json.loads(json.dumps(rec.to_dict())))
    assert back.shots == 10 and back.seed == 1 and not back.exact
    for k in rec.probs:
        np.testing.assert_array_equal(back.probs[k], rec.probs[k])
