import numpy as np
import pytest

from cohorder.channels import (
    KrausChannel,
    adc,
    adc_bloch_transform,
    apply,
    identity_channel,
    l1_scaling_check,
    make_channel,
    ordering_dynamics,
    pdc,
    pdc_bloch_transform,
    random_incoherent_kraus,
)
from cohorder.exceptions import DimensionMismatch, IncompleteKraus, ParamOutOfRange
from cohorder.measures import c_l1
from cohorder.ordering import StateFamily
from cohorder.states import BlochVector, from_bloch, random_bloch, random_density_matrix, to_bloch, validate

PLUS = np.full((2, 2), 0.5, dtype=complex)
KET0 = np.diag([1.0, 0.0])


def test_apply_examples(rng):
    rho = from_bloch(random_bloch(rng))
    np.testing.assert_allclose(apply(identity_channel(2), rho), rho, atol=1e-15)
    np.testing.assert_allclose(apply(adc(1.0), rho), KET0, atol=1e-15)
    out = apply(pdc(0.5), PLUS)
    np.testing.assert_allclose(out, [[0.5, 0.25], [0.25, 0.5]], atol=1e-15)


def test_adc_examples(rng):
    rho = from_bloch(random_bloch(rng))
    np.testing.assert_allclose(apply(adc(0.0), rho), rho, atol=1e-15)
    out = apply(adc(0.5), from_bloch(BlochVector(0.6, (1.0, 0.0, 0.0))))
    assert out[0, 1] == pytest.approx(0.6 * np.sqrt(0.5) / 2, abs=1e-15)


def test_adc_displayed_matrix(rng):
    # entries of the evolved matrix written in Bloch coordinates
    for _ in range(200):
        b = random_bloch(rng)
        p = float(rng.uniform())
        q = 1 - p
        nx, ny, nz = b.n
        t = b.t
        expected = 0.5 * np.array([
            [1 + p + q * nz * t, np.sqrt(q) * t * (nx - 1j * ny)],
            [np.sqrt(q) * t * (nx + 1j * ny), 1 - p - q * nz * t],
        ])
        np.testing.assert_allclose(apply(adc(p), from_bloch(b)), expected, atol=1e-14)


def test_pdc_examples(rng):
    rho = from_bloch(random_bloch(rng))
    np.testing.assert_allclose(apply(pdc(0.0), rho), rho, atol=1e-15)
    np.testing.assert_allclose(apply(pdc(1.0), rho), np.diag(np.diag(rho)), atol=1e-15)
    out = apply(pdc(0.5), from_bloch(BlochVector(0.8, (0.8, 0.0, 0.6))))
    np.testing.assert_allclose(np.diag(out).real, [(1 + 0.48) / 2, (1 - 0.48) / 2], atol=1e-15)


def test_pdc_off_diagonal_scaling(rng):
    for _ in range(500):
        rho = from_bloch(random_bloch(rng))
        p = float(rng.uniform())
        out = apply(pdc(p), rho)
        assert abs(out[0, 1] - (1 - p) * rho[0, 1]) <= 1e-12
        assert abs(out[0, 0] - rho[0, 0]) <= 1e-12


def test_adc_bloch_examples(rng):
    b = random_bloch(rng)
    same = adc_bloch_transform(b, 0.0)
    assert same.t == pytest.approx(b.t) and same.n == pytest.approx(b.n)
    full = adc_bloch_transform(b, 1.0)
    assert full.t == pytest.approx(1.0) and full.n == pytest.approx((0, 0, 1))
    z = adc_bloch_transform(BlochVector(0.6), 0.5)
    assert z.t == pytest.approx(0.8) and z.n_z == pytest.approx(1.0)


def test_pdc_bloch_examples(rng):
    b = random_bloch(rng)
    same = pdc_bloch_transform(b, 0.0)
    assert same.t == pytest.approx(b.t) and same.n == pytest.approx(b.n)
    for nz in (1.0, -1.0):
        axis = BlochVector.from_nz(0.7, nz)
        out = pdc_bloch_transform(axis, 0.4)
        assert out.t == pytest.approx(0.7) and out.n == pytest.approx(axis.n)
    assert pdc_bloch_transform(BlochVector.from_nz(0.8, 0.0), 0.5).t == pytest.approx(0.4)


def test_bloch_transforms_match_matrices(rng):
    for _ in range(1000):
        b = random_bloch(rng)
        p = float(rng.uniform())
        for transform, ch in ((adc_bloch_transform, adc(p)), (pdc_bloch_transform, pdc(p))):
            np.testing.assert_allclose(from_bloch(transform(b, p)), apply(ch, from_bloch(b)), atol=1e-10)


def test_pdc_length_formula(rng):
    for _ in range(200):
        b = random_bloch(rng)
        q = 1 - float(rng.uniform())
        expected = b.t * np.sqrt(q ** 2 + (1 - q ** 2) * b.n_z ** 2)
        assert pdc_bloch_transform(b, 1 - q).t == pytest.approx(expected, abs=1e-12)


def test_trace_and_positivity(rng):
    for _ in range(1000):
        d = 2
        rho = random_density_matrix(d, rng)
        ch = make_channel(str(rng.choice(["adc", "pdc"])), float(rng.uniform()))
        assert validate(apply(ch, rho), tol=1e-10) == []


def test_l1_scaling_examples(rng):
    b = random_bloch(rng)
    for name in ("adc", "pdc"):
        res = l1_scaling_check(b, 0.0, name)
        assert res.lhs == pytest.approx(c_l1(from_bloch(b)), abs=1e-14) and res.holds
    res = l1_scaling_check(b, 0.5, "pdc")
    assert res.lhs == pytest.approx(0.5 * c_l1(from_bloch(b)), abs=1e-12) and res.holds
    res = l1_scaling_check(BlochVector(0.6, (1.0, 0.0, 0.0)), 0.5, "adc")
    assert res.lhs == pytest.approx(np.sqrt(0.5) * 0.6, abs=1e-14) and res.holds
    assert res.q_scaled_rhs == pytest.approx(0.5 * 0.6)


def test_channel_validation():
    with pytest.raises(ParamOutOfRange):
        adc(1.5)
    with pytest.raises(IncompleteKraus):
        KrausChannel("bad", (np.eye(2), np.eye(2)))
    with pytest.raises(DimensionMismatch):
        KrausChannel("bad", (np.eye(2), np.zeros((3, 3))))
    with pytest.raises(DimensionMismatch):
        apply(adc(0.3), np.eye(3) / 3)
    with pytest.raises(ValueError):
        make_channel("depolarizing", 0.1)


def test_sqrt_p_diagonal_kraus_is_not_trace_preserving():
    p = 0.3
    with pytest.raises(IncompleteKraus):
        KrausChannel("sqrt-p", (np.diag([1.0, np.sqrt(p)]), np.array([[0.0, np.sqrt(p)], [0.0, 0.0]])))


@pytest.mark.parametrize("kind", ["diagonal", "permutation"])
def test_random_incoherent_kraus(kind, rng):
    ch = random_incoherent_kraus(4, 3, rng, kind)
    diag = np.diag(rng.dirichlet(np.ones(4)))
    out = apply(ch, diag)
    assert np.max(np.abs(out - np.diag(np.diag(out)))) < 1e-14


def test_dynamics_identity_preserves(rng):
    fam = StateFamily.fixed_mixedness(0.6, 20, rng)
    res = ordering_dynamics(fam, identity_channel(2), ["l1", "rel", "alpha2"])
    assert res.all_preserved


def test_dynamics_pdc_and_adc(rng):
    fam = StateFamily.fixed_mixedness(0.7, 30, rng)
    res = ordering_dynamics(fam, pdc(0.5), ["rel", "l1"])
    assert all(m.preserved_fraction == 1.0 for m in res.per_measure)
    fam = StateFamily.fixed_mixedness(0.9, 60, rng)
    res = ordering_dynamics(fam, adc(0.5), ["rel", "l1"])
    rel = res.per_measure[0]
    assert rel.flipped >= 1
    w = rel.witnesses[0]
    assert (w["before"][0] - w["before"][1]) * (w["after"][0] - w["after"][1]) < 0
    # l1 only gains a state-independent prefactor, so it never flips
    assert res.per_measure[1].flipped == 0
    assert res.to_dict()["per_measure"][0]["flipped"] == rel.flipped


def test_to_bloch_after_channel(rng):
    b = random_bloch(rng, t=0.5)
    after = to_bloch(apply(pdc(0.2), from_bloch(b)))
    assert after.t == pytest.approx(pdc_bloch_transform(b, 0.2).t, abs=1e-12)
