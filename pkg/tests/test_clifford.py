"""Identity suite for the fiberwise Clifford/spinor algebra."""

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from swlab.clifford import (
    C1,
    C2,
    C3,
    CLIFFORD,
    Covector3,
    ImCoeff3,
    Spinor2,
    clifford_matrix,
    clifford_mul,
    herm_re,
    quaternion_J,
    tau,
    tau_arrays,
)

RNG = np.random.default_rng(20260810)

finite = st.floats(-10, 10, allow_nan=False, allow_infinity=False)
cplx = st.builds(complex, finite, finite)


def random_spinors(n):
    vals = RNG.standard_normal((4, n)) + 1j * RNG.standard_normal((4, n))
    return vals[0], vals[1], vals[2], vals[3]


def test_clifford_relations_exact():
    for i, ci in enumerate(CLIFFORD):
        for j, cj in enumerate(CLIFFORD):
            expect = -2.0 * np.eye(2) if i == j else np.zeros((2, 2))
            assert np.array_equal(ci @ cj + cj @ ci, expect)


def test_volume_form_is_identity():
    assert np.array_equal(C1 @ C2 @ C3, np.eye(2))


def test_clifford_mul_examples():
    out = clifford_mul(Covector3(1, 0, 0), Spinor2(1, 0))
    assert out == Spinor2(1j, 0)
    out = clifford_mul(Covector3(0, 0, 0), Spinor2(3 + 1j, -2))
    assert out == Spinor2(0, 0)
    out = clifford_mul(Covector3(0, 1, 0), Spinor2(0, 1))
    assert out == Spinor2(-1, 0)


def test_tau_examples():
    assert tau(Spinor2(1, 0), Spinor2(1, 0)) == ImCoeff3(0.5, 0.0, 0.0)
    assert tau(Spinor2(0, 0), Spinor2(2 + 1j, -3)) == ImCoeff3(0.0, 0.0, 0.0)


def test_tau_norm_identity_bulk():
    z, w, _, _ = random_spinors(10_000)
    r1, r2, r3 = tau_arrays(z, w, z, w)
    lhs = r1**2 + r2**2 + r3**2
    rhs = 0.25 * (np.abs(z) ** 2 + np.abs(w) ** 2) ** 2
    assert np.max(np.abs(lhs - rhs) / np.maximum(rhs, 1.0)) <= 1e-12


def test_pairing_identity_bulk():
    # <i e.psi, phi>_Re = -2 <e, i tau(psi, phi)> for unit covectors e.
    z, w, u, v = random_spinors(10_000)
    e = RNG.standard_normal((3, 10_000))
    e /= np.linalg.norm(e, axis=0)
    psi = np.stack([z, w])
    mats = np.array(CLIFFORD)  # (3, 2, 2)
    action = np.einsum("jab,jn->abn", mats, e)  # (2, 2, n)
    epsi = np.einsum("abn,bn->an", action, psi)
    lhs = np.real(np.sum(1j * epsi * np.conj(np.stack([u, v])), axis=0))
    r1, r2, r3 = tau_arrays(z, w, u, v)
    rhs = -2.0 * (e[0] * r1 + e[1] * r2 + e[2] * r3)
    scale = np.maximum(np.abs(rhs), 1.0)
    assert np.max(np.abs(lhs - rhs) / scale) <= 1e-12


def test_tau_symmetric():
    z, w, u, v = random_spinors(100)
    fwd = tau_arrays(z, w, u, v)
    bwd = tau_arrays(u, v, z, w)
    for a, b in zip(fwd, bwd):
        assert np.allclose(a, b, atol=1e-14)


@given(cplx, cplx)
@settings(max_examples=200, deadline=None)
def test_J_squared_is_minus_one(z, w):
    psi = Spinor2(z, w)
    jj = quaternion_J(quaternion_J(psi))
    assert jj.z == -z and jj.w == -w


@given(cplx, cplx)
@settings(max_examples=200, deadline=None)
def test_J_defining_properties(z, w):
    psi = Spinor2(z, w)
    jpsi = quaternion_J(psi)
    # isometry
    assert abs(jpsi.norm_sq() - psi.norm_sq()) <= 1e-9 * max(1.0, psi.norm_sq())
    # antilinearity: J(i psi) = -i J(psi)
    jipsi = quaternion_J(Spinor2(1j * z, 1j * w))
    assert jipsi.z == -1j * jpsi.z and jipsi.w == -1j * jpsi.w


def test_J_examples():
    assert quaternion_J(Spinor2(1, 0)) == Spinor2(0, 1)
    assert quaternion_J(Spinor2(0, 0)) == Spinor2(0, 0)


def test_J_commutes_with_clifford():
    z, w, _, _ = random_spinors(50)
    for e in (Covector3(1, 0, 0), Covector3(0, 1, 0), Covector3(0, 0, 1),
              Covector3(0.3, -1.2, 0.5)):
        m = clifford_matrix(e)
        for zi, wi in zip(z[:10], w[:10]):
            psi = Spinor2(zi, wi)
            a = quaternion_J(clifford_mul(e, psi))
            jp = quaternion_J(psi)
            b0 = m @ np.array([jp.z, jp.w])
            assert abs(a.z - b0[0]) + abs(a.w - b0[1]) <= 1e-12 * (1 + psi.norm())


def test_tau_flips_under_J():
    # tau(J psi, J psi) = -tau(psi, psi): the involution flips the 1-form.
    z, w, _, _ = random_spinors(200)
    r = np.stack(tau_arrays(z, w, z, w))
    jz, jw = -np.conj(w), np.conj(z)
    rj = np.stack(tau_arrays(jz, jw, jz, jw))
    assert np.max(np.abs(rj + r)) <= 1e-12 * (1 + np.max(np.abs(r)))
