"""Small fixed-dimension qubit algebra: rotations, observables, GHZ correlators.

Conventions used throughout the package:

* A measurement direction is a unit 3-vector ``d`` on the Bloch sphere; the
  corresponding observable is ``sigma . d`` with eigenvalues +-1.
* A local rotation is an SU(2) element stored as a unit quaternion
  ``(q0, q1, q2, q3)`` encoding the 2x2 unitary
  ``q0*I - i*(q1*sx + q2*sy + q3*sz)``, i.e. a rotation by angle ``theta``
  about axis ``n`` with ``q0 = cos(theta/2)`` and
  ``(q1, q2, q3) = sin(theta/2) * n``.
* Measuring ``sigma . d`` on the locally rotated state ``(R1 x ... x Rn)|G>``
  is the same as measuring the conjugated observable ``R^dag (sigma . d) R``
  on the unrotated GHZ state ``|G> = (|0...0> + |1...1>)/sqrt(2)``;
  :func:`rotate_direction` returns the Bloch vector of that conjugated
  observable.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

UNIT_TOL = 1e-12
IMAG_TOL = 1e-12

# Largest party count accepted by the statevector oracle (4096 amplitudes).
STATEVECTOR_MAX_PARTIES = 10

SIGMA_X = np.array([[0.0, 1.0], [1.0, 0.0]], dtype=complex)
SIGMA_Y = np.array([[0.0, -1.0j], [1.0j, 0.0]], dtype=complex)
SIGMA_Z = np.array([[1.0, 0.0], [0.0, -1.0]], dtype=complex)

X_AXIS = np.array([1.0, 0.0, 0.0])
Y_AXIS = np.array([0.0, 1.0, 0.0])
Z_AXIS = np.array([0.0, 0.0, 1.0])


def check_unit_direction(direction) -> np.ndarray:
    """Return ``direction`` as a float array, rejecting non-unit vectors."""
    d = np.asarray(direction, dtype=float)
    if d.shape != (3,):
        raise ValueError(f"direction must have shape (3,), got {d.shape}")
    if abs(d @ d - 1.0) > 64 * UNIT_TOL:
        raise ValueError(f"direction is not unit-norm: |d|^2 = {d @ d!r}")
    return d


@dataclass(frozen=True)
class Rotation:
    """An SU(2) rotation stored as a unit quaternion (see module docstring)."""

    q0: float
    q1: float
    q2: float
    q3: float

    def __post_init__(self):
        norm2 = self.q0**2 + self.q1**2 + self.q2**2 + self.q3**2
        if abs(norm2 - 1.0) > 64 * UNIT_TOL:
            raise ValueError(f"quaternion is not unit-norm: |q|^2 = {norm2!r}")

    @classmethod
    def identity(cls) -> "Rotation":
        return cls(1.0, 0.0, 0.0, 0.0)

    @classmethod
    def from_axis_angle(cls, axis, angle: float) -> "Rotation":
        """Rotation by ``angle`` about the unit ``axis``."""
        a = check_unit_direction(axis)
        h = 0.5 * angle
        s = math.sin(h)
        return cls(math.cos(h), s * a[0], s * a[1], s * a[2])

    @property
    def quaternion(self) -> np.ndarray:
        return np.array([self.q0, self.q1, self.q2, self.q3])

    def matrix(self) -> np.ndarray:
        """The 2x2 unitary ``q0*I - i*(q1*sx + q2*sy + q3*sz)``."""
        q0, q1, q2, q3 = self.q0, self.q1, self.q2, self.q3
        return np.array(
            [
                [q0 - 1j * q3, -q2 - 1j * q1],
                [q2 - 1j * q1, q0 + 1j * q3],
            ]
        )


def haar_rotation(rng: np.random.Generator) -> Rotation:
    """Draw a Haar-distributed SU(2) rotation from ``rng``.

    Draws exactly four standard normals (``rng.standard_normal(4)``) and
    normalizes them to a unit quaternion, which is exactly Haar on SU(2).
    The draw is repeated only in the measure-zero event that all four
    normals underflow to a zero-norm vector.
    """
    while True:
        q = np.asarray(rng.standard_normal(4), dtype=float)
        norm = math.sqrt(float(q @ q))
        if norm > 0.0:
            break
    q = q / norm
    return Rotation(float(q[0]), float(q[1]), float(q[2]), float(q[3]))


def observable_matrix(direction) -> np.ndarray:
    """The 2x2 Hermitian observable ``sigma . d`` for a unit Bloch vector."""
    d = check_unit_direction(direction)
    return np.array(
        [
            [d[2], d[0] - 1j * d[1]],
            [d[0] + 1j * d[1], -d[2]],
        ]
    )


def rotate_direction(rotation: Rotation, direction) -> np.ndarray:
    """Bloch vector ``d'`` with ``sigma . d' = R^dag (sigma . d) R``.

    This is the direction whose measurement on the unrotated state is
    equivalent to measuring ``sigma . d`` on the state rotated by ``R``.
    """
    d = check_unit_direction(direction)
    out = rotate_directions(rotation.quaternion, d)
    return out


def rotate_directions(quaternions, directions) -> np.ndarray:
    """Broadcast form of :func:`rotate_direction`.

    ``quaternions`` has shape ``(..., 4)`` and ``directions`` shape
    ``(..., 3)``; leading dimensions broadcast. Implements
    ``d' = (q0^2 - |q|^2) d + 2 q0 (d x q) + 2 (q . d) q``
    with ``q = (q1, q2, q3)``, which is the Pauli decomposition of
    ``R^dag (sigma . d) R``.
    """
    quat = np.asarray(quaternions, dtype=float)
    d = np.asarray(directions, dtype=float)
    q0 = quat[..., :1]
    qv = quat[..., 1:]
    qq = np.sum(qv * qv, axis=-1, keepdims=True)
    qd = np.sum(qv * d, axis=-1, keepdims=True)
    return (q0 * q0 - qq) * d + 2.0 * q0 * np.cross(d, qv) + 2.0 * qd * qv


def ghz_correlator(observables) -> float:
    """``<G_n| O_1 x ... x O_n |G_n>`` for 2x2 observables ``O_k``.

    Uses the closed form
    ``0.5 * (prod m00 + prod m01 + prod m10 + prod m11)`` over the four
    matrix entries; the imaginary residue must stay below ``IMAG_TOL`` and
    is discarded (it is exactly zero for Hermitian inputs).
    """
    if len(observables) == 0:
        raise ValueError("ghz_correlator needs at least one observable")
    p00 = p01 = p10 = p11 = 1.0 + 0.0j
    for o in observables:
        p00 *= o[0, 0]
        p01 *= o[0, 1]
        p10 *= o[1, 0]
        p11 *= o[1, 1]
    value = 0.5 * (p00 + p01 + p10 + p11)
    if abs(value.imag) > IMAG_TOL:
        raise ValueError(f"non-real correlator (imag={value.imag!r}); "
                         "observables are not Hermitian")
    return float(value.real)


def ghz_statevector(n: int) -> np.ndarray:
    """Amplitudes of ``(|0...0> + |1...1>)/sqrt(2)`` on ``n`` qubits."""
    if not 1 <= n <= STATEVECTOR_MAX_PARTIES:
        raise ValueError(f"party count {n} outside [1, {STATEVECTOR_MAX_PARTIES}]")
    amps = np.zeros(2**n, dtype=complex)
    amps[0] = amps[-1] = 1.0 / math.sqrt(2.0)
    return amps


def _apply_single_qubit(matrix: np.ndarray, psi: np.ndarray, k: int, n: int) -> np.ndarray:
    out = np.tensordot(matrix, psi.reshape((2,) * n), axes=([1], [k]))
    return np.moveaxis(out, 0, k).reshape(-1)


def statevector_expectation(rotations, observables) -> float:
    """Slow oracle: build ``(R_1 x ... x R_n)|G_n>`` and take the expectation.

    Checks the closed-form path ``ghz_correlator`` + ``rotate_direction``
    by direct tensor application. Party count is capped at
    ``STATEVECTOR_MAX_PARTIES``.
    """
    n = len(rotations)
    if len(observables) != n:
        raise ValueError("rotation and observable counts differ")
    if not 1 <= n <= STATEVECTOR_MAX_PARTIES:
        raise ValueError(f"party count {n} outside [1, {STATEVECTOR_MAX_PARTIES}]")
    psi = ghz_statevector(n)
    for k, rot in enumerate(rotations):
        psi = _apply_single_qubit(rot.matrix(), psi, k, n)
    phi = psi
    for k, obs in enumerate(observables):
        phi = _apply_single_qubit(np.asarray(obs, dtype=complex), phi, k, n)
    value = np.vdot(psi, phi)
    if abs(value.imag) > 1e-10:
        raise ValueError(f"non-real expectation (imag={value.imag!r})")
    return float(value.real)
