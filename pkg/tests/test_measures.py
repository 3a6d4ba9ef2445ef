import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import oracles
from cohorder.channels import identity_channel, pdc, random_incoherent_kraus
from cohorder.exceptions import AlphaOutOfRange, NotIncoherentChannel, SupportMismatch
from cohorder.measures import (
    CoherenceMeasure,
    c_alpha2,
    c_l1,
    c_l2sq,
    c_r,
    c_tsallis,
    check_alpha,
    check_generalized_monotonicity,
    evaluate,
    nearest_incoherent_tsallis,
    pure_closed_forms,
    qubit_closed_forms,
    shannon,
    tsallis_divergence,
    xstate_closed_forms,
)
from cohorder.states import (
    BlochVector,
    XStateParams,
    from_bloch,
    pure_from_spectrum,
    random_density_matrix,
    x_state,
)

PLUS = np.full((2, 2), 0.5, dtype=complex)
PSI1 = pure_from_spectrum([0.5, 0.25, 0.25])
PSI2 = pure_from_spectrum([0.4, 0.4, 0.2])
ALL = [CoherenceMeasure.l1(), CoherenceMeasure.rel_ent(), CoherenceMeasure.tsallis(0.5),
       CoherenceMeasure.alpha2(), CoherenceMeasure.l2sq()]


def test_l1_examples():
    assert c_l1(np.diag([0.2, 0.3, 0.5])) == 0
    assert c_l1(PSI1) == pytest.approx(1.9142, abs=5e-5)
    b = BlochVector(0.8, (0.8, 0.0, 0.6))
    assert c_l1(from_bloch(b)) == pytest.approx(0.64, abs=1e-14)


def test_rel_ent_examples():
    assert c_r(np.diag([0.7, 0.3])) == 0
    assert c_r(PSI1) == pytest.approx(1.5, abs=1e-12)
    assert c_r(PLUS) == pytest.approx(1.0, abs=1e-12)


def test_tsallis_examples():
    assert c_tsallis(PSI1, 0.5) == pytest.approx(0.7753, abs=5e-5)
    assert c_tsallis(PSI2, 0.5) == pytest.approx(0.8, abs=1e-12)
    for a in (0.3, 1.5, 2.0):
        assert c_tsallis(np.diag([0.1, 0.6, 0.3]), a) == 0


def test_alpha2_and_l2sq_examples():
    assert c_alpha2(np.diag([0.5, 0.5])) == 0
    assert c_alpha2(PLUS) == pytest.approx(1.0, abs=1e-14)
    assert c_alpha2(from_bloch(BlochVector(0.5))) == 0
    assert c_l2sq(np.diag([0.5, 0.5])) == 0
    assert c_l2sq(PLUS) == pytest.approx(0.5)
    assert c_l2sq(PSI1) == pytest.approx(0.625, abs=1e-14)


def test_nearest_incoherent_examples():
    d = np.diag([0.2, 0.5, 0.3]).astype(complex)
    np.testing.assert_allclose(nearest_incoherent_tsallis(d, 0.5), d, atol=1e-14)
    np.testing.assert_allclose(nearest_incoherent_tsallis(PLUS, 2), np.eye(2) / 2, atol=1e-14)
    np.testing.assert_allclose(nearest_incoherent_tsallis(PSI1, 0.5), np.diag([2 / 3, 1 / 6, 1 / 6]), atol=1e-12)


def test_divergence_examples():
    rho = random_density_matrix(3, np.random.default_rng(3))
    for a in (0.5, 2.0):
        assert tsallis_divergence(rho, rho, a) == pytest.approx(0.0, abs=1e-10)
    assert tsallis_divergence(PLUS, np.eye(2) / 2, 2) == pytest.approx(1.0, abs=1e-12)
    # scalar arithmetic for two commuting diagonal states
    direct = (0.75 ** 0.5 * 0.5 ** 0.5 + 0.25 ** 0.5 * 0.5 ** 0.5 - 1) / (0.5 - 1)
    assert tsallis_divergence(np.diag([0.75, 0.25]), np.diag([0.5, 0.5]), 0.5) == pytest.approx(direct, abs=1e-14)


def test_divergence_support_mismatch():
    with pytest.raises(SupportMismatch):
        tsallis_divergence(PLUS, np.diag([1.0, 0.0]), 2.0)


def test_alpha_range():
    for bad in (0.0, 1.0, 2.5, -1.0):
        with pytest.raises(AlphaOutOfRange):
            check_alpha(bad)
    assert check_alpha(2) == 2.0


def test_qubit_closed_form_examples():
    assert qubit_closed_forms(BlochVector(1.0, (1.0, 0.0, 0.0)), 0.5).l1 == pytest.approx(1.0)
    assert tuple(qubit_closed_forms(BlochVector(0.5), 0.5)) == pytest.approx((0.0, 0.0, 0.0), abs=1e-14)
    b = BlochVector.from_nz(0.6, 0.5)
    assert qubit_closed_forms(b, 2).tsallis == pytest.approx(c_alpha2(from_bloch(b)), abs=1e-12)


def test_xstate_closed_form_examples():
    for n in (1, 2, 3):
        assert tuple(xstate_closed_forms(XStateParams(n, 0.4, 0.0), 0.5)) == pytest.approx((0, 0, 0), abs=1e-14)
    assert xstate_closed_forms(XStateParams(1, 1.0, 1 / np.sqrt(2)), 0.5).l1 == pytest.approx(1.0)
    xp = XStateParams(2, 0.5, 0.6)
    assert xstate_closed_forms(xp, 2).tsallis == pytest.approx(c_alpha2(x_state(xp)), abs=1e-12)


def test_xstate_relative_entropy_closed_form():
    # n=1, p=1, a=b=1/sqrt(2) is |+><+|; the X-state C_r must give 1 bit
    assert xstate_closed_forms(XStateParams(1, 1.0, 1 / np.sqrt(2)), 0.5).rel_ent == pytest.approx(1.0, abs=1e-12)
    xp = XStateParams(3, 0.3, 0.8)
    assert xstate_closed_forms(xp, 0.5).rel_ent == pytest.approx(c_r(x_state(xp)), abs=1e-12)


def test_pure_formulas(rng):
    for _ in range(300):
        lam = rng.dirichlet(np.ones(int(rng.integers(2, 7))))
        rho = pure_from_spectrum(lam)
        alpha = float(rng.choice([0.3, 0.5, 1.5, 2.0]))
        assert c_l1(rho) == pytest.approx(np.sum(np.sqrt(lam)) ** 2 - 1, abs=1e-9)
        assert c_r(rho) == pytest.approx(shannon(lam), abs=1e-9)
        r = np.sum(lam ** (1 / alpha))
        assert c_tsallis(rho, alpha) == pytest.approx((r ** alpha - 1) / (alpha - 1), abs=1e-9)
        closed = pure_closed_forms(lam, alpha)
        assert closed.tsallis == pytest.approx(c_tsallis(rho, alpha), abs=1e-9)


def test_generic_path_matches_lapack_oracle(rng):
    for _ in range(200):
        rho = random_density_matrix(int(rng.integers(2, 7)), rng)
        alpha = float(rng.uniform(0.05, 2.0))
        if abs(alpha - 1) < 1e-3:
            continue
        assert c_l1(rho) == pytest.approx(oracles.l1(rho), abs=1e-10)
        assert c_r(rho) == pytest.approx(oracles.rel_ent(rho), abs=1e-9)
        assert c_tsallis(rho, alpha) == pytest.approx(oracles.tsallis(rho, alpha), abs=1e-9)


def test_alpha2_consistency(rng):
    for _ in range(1000):
        rho = random_density_matrix(int(rng.integers(2, 9)), rng)
        assert c_alpha2(rho) == pytest.approx(c_tsallis(rho, 2), abs=1e-10)


def test_ranges(rng):
    for _ in range(300):
        d = int(rng.integers(2, 8))
        rho = random_density_matrix(d, rng, rank=int(rng.integers(1, d + 1)))
        assert c_l1(rho) <= d - 1 + 1e-9
        assert c_r(rho) <= np.log2(d) + 1e-9
        assert all(v >= 0 for v in evaluate(rho, ALL))


def test_faithfulness(rng):
    for _ in range(200):
        d = int(rng.integers(2, 7))
        diag = np.diag(rng.dirichlet(np.ones(d))).astype(complex)
        assert all(m(diag) == 0.0 for m in ALL)
        rho = random_density_matrix(d, rng)
        assert all(m(rho) > 0.0 for m in ALL)


def test_tsallis_monotone_in_coherence():
    # small coherence gives a small but nonzero value; zero coherence gives exactly zero
    for eps in (1e-3, 1e-6):
        rho = np.array([[0.5, eps], [eps, 0.5]])
        assert c_tsallis(rho, 0.5) > 0
        assert c_l1(rho) == pytest.approx(2 * eps)


def test_measure_parse_and_labels():
    assert CoherenceMeasure.parse("tsallis:0.5") == CoherenceMeasure.tsallis(0.5)
    assert CoherenceMeasure.parse("rel").label == "C_r"
    assert CoherenceMeasure.parse("alpha2").label == "C_2"
    assert CoherenceMeasure.tsallis(1.5).label == "C_alpha=1.5"
    with pytest.raises(ValueError):
        CoherenceMeasure.parse("tsallis")
    with pytest.raises(ValueError):
        CoherenceMeasure.parse("bogus")
    with pytest.raises(AlphaOutOfRange):
        CoherenceMeasure.parse("tsallis:1")


def test_monotonicity_identity_equal(rng):
    rho = random_density_matrix(3, rng)
    for a in (0.5, 2.0):
        res = check_generalized_monotonicity(rho, identity_channel(3), a)
        assert res.lhs == pytest.approx(res.rhs, abs=1e-12) and res.holds


def test_monotonicity_plus_under_pdc():
    assert check_generalized_monotonicity(PLUS, pdc(0.5), 2).holds


def test_monotonicity_diagonal_state(rng):
    ch = random_incoherent_kraus(3, 3, rng, "permutation")
    res = check_generalized_monotonicity(np.diag([0.2, 0.3, 0.5]), ch, 0.5)
    assert res.lhs == pytest.approx(0.0, abs=1e-14) and res.rhs == 0 and res.holds


def test_monotonicity_rejects_coherent_kraus():
    h = np.array([[1, 1], [1, -1]]) / np.sqrt(2)
    with pytest.raises(NotIncoherentChannel):
        check_generalized_monotonicity(PLUS, [h], 0.5)


@settings(max_examples=40, deadline=None)
@given(st.integers(2, 3), st.sampled_from([0.5, 2.0]), st.integers(0, 2 ** 32 - 1))
def test_variational_oracle_property(d, alpha, seed):
    rho = random_density_matrix(d, np.random.default_rng(seed))
    step = 1e-2 if d == 3 else 1e-3
    best, _ = oracles.grid_minimum(rho, alpha, step=step)
    value = c_tsallis(rho, alpha)
    assert value <= best + 1e-9
    # grid minimum is an upper bound that converges as the step shrinks
    assert best - value <= 5e-2
