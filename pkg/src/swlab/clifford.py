"""Exact fiberwise Clifford/spinor algebra for the rank-2 module over R^3.

Conventions, fixed once for the whole package:

* The oriented orthonormal coframe (e1, e2, e3) acts through the matrices
  ``C1, C2, C3`` below.  They satisfy the Clifford relation
  c(ei)c(ej) + c(ej)c(ei) = -2 delta_ij and c(e1)c(e2)c(e3) = Id, so the
  oriented volume form acts as the identity.
* The hermitian product on spinors is linear in the first slot:
  <psi, phi> = z*conj(u) + w*conj(v).
* Imaginary-valued quantities are stored through their real coefficient
  triples: ``ImCoeff3(a1, a2, a3)`` stands for i*(a1 e1 + a2 e2 + a3 e3).
* ``tau(psi, phi)`` returns the coefficient triple of the *real* 1-form
  obtained by multiplying the pairing by i, i.e. exactly the triple
  (Re(z u~ - w v~), Im(z v~ + w~ u), Re(z v~ + w~ u))/2.  The pairing itself
  is recovered as -i times that real form.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

C1 = np.array([[1j, 0.0], [0.0, -1j]])
C2 = np.array([[0.0, -1.0], [1.0, 0.0]], dtype=complex)
C3 = np.array([[0.0, 1j], [1j, 0.0]])
CLIFFORD = (C1, C2, C3)


@dataclass(frozen=True)
class Spinor2:
    """A fiber value (z, w) of the rank-2 complex spinor module."""

    z: complex
    w: complex

    def norm_sq(self) -> float:
        return abs(self.z) ** 2 + abs(self.w) ** 2

    def norm(self) -> float:
        return math.sqrt(self.norm_sq())


@dataclass(frozen=True)
class Covector3:
    """A real 1-form c1*e1 + c2*e2 + c3*e3 in the orthonormal coframe."""

    c1: float
    c2: float
    c3: float

    def norm(self) -> float:
        return math.sqrt(self.c1**2 + self.c2**2 + self.c3**2)

    def as_array(self) -> np.ndarray:
        return np.array([self.c1, self.c2, self.c3], dtype=float)


@dataclass(frozen=True)
class ImCoeff3:
    """Coefficient triple of an imaginary 1-form i*(a1 e1 + a2 e2 + a3 e3)."""

    a1: float
    a2: float
    a3: float

    def as_array(self) -> np.ndarray:
        return np.array([self.a1, self.a2, self.a3], dtype=float)

    def norm(self) -> float:
        return math.sqrt(self.a1**2 + self.a2**2 + self.a3**2)


def clifford_matrix(e: Covector3) -> np.ndarray:
    """Matrix of Clifford multiplication by the real covector e."""
    return e.c1 * C1 + e.c2 * C2 + e.c3 * C3


def clifford_mul(e: Covector3, psi: Spinor2) -> Spinor2:
    """Clifford multiplication e . psi."""
    v = clifford_matrix(e) @ np.array([psi.z, psi.w])
    return Spinor2(complex(v[0]), complex(v[1]))


def tau_arrays(z, w, u, v):
    """Vectorized pairing: triples of the real form i*tau(psi, phi).

    Accepts scalars or broadcastable arrays for the spinor components
    psi = (z, w), phi = (u, v); returns (rho1, rho2, rho3).
    """
    zu = z * np.conj(u)
    wv = w * np.conj(v)
    cross = z * np.conj(v) + np.conj(w) * u
    return 0.5 * np.real(zu - wv), 0.5 * np.imag(cross), 0.5 * np.real(cross)


def tau(psi: Spinor2, phi: Spinor2) -> ImCoeff3:
    """Spinor pairing with values in imaginary 1-forms.

    Returns the real coefficient triple rho with i*tau(psi, phi)
    = rho1 e1 + rho2 e2 + rho3 e3.  Symmetric in psi, phi, and
    |tau(psi,psi)|^2 = |psi|^4 / 4.
    """
    r1, r2, r3 = tau_arrays(psi.z, psi.w, phi.z, phi.w)
    return ImCoeff3(float(r1), float(r2), float(r3))


def quaternion_J(psi: Spinor2) -> Spinor2:
    """The antilinear quaternionic structure J(z, w) = (-conj(w), conj(z)).

    J^2 = -1, J(i psi) = -i J(psi), |J psi| = |psi|, and J commutes with
    Clifford multiplication by real covectors.
    """
    return Spinor2(-np.conj(psi.w), np.conj(psi.z))


def herm(psi: Spinor2, phi: Spinor2) -> complex:
    """Hermitian product, linear in the first slot."""
    return psi.z * np.conj(phi.z) + psi.w * np.conj(phi.w)


def herm_re(psi: Spinor2, phi: Spinor2) -> float:
    """Real part of the hermitian product."""
    return float(np.real(herm(psi, phi)))
