"""Rotations, observables and GHZ correlators: the package's ground floor.

Walks through the basic objects: Bloch directions, SU(2) rotations stored as
unit quaternions, the sigma.d observables, and the closed-form GHZ
correlator, cross-checked against the explicit statevector.
"""

import numpy as np

from bellframes import su2

rng = np.random.default_rng(1)

print("=== Stabilizer expectations of the 3-party GHZ state ===")
for label, obs, want in [
    ("X X X", [su2.SIGMA_X] * 3, 1.0),
    ("X Y Y", [su2.SIGMA_X, su2.SIGMA_Y, su2.SIGMA_Y], -1.0),
    ("Z Z X", [su2.SIGMA_Z, su2.SIGMA_Z, su2.SIGMA_X], 0.0),
]:
    value = su2.ghz_correlator(obs)
    print(f"  <G_3| {label} |G_3> = {value:+.1f}   (expected {want:+.1f})")

print()
print("=== A Haar-random rotation is a unit quaternion ===")
rot = su2.haar_rotation(rng)
print(f"  q = ({rot.q0:+.4f}, {rot.q1:+.4f}, {rot.q2:+.4f}, {rot.q3:+.4f})")
print(f"  |q|^2 = {rot.q0**2 + rot.q1**2 + rot.q2**2 + rot.q3**2:.12f}")
m = rot.matrix()
print(f"  det(matrix) = {np.linalg.det(m):.10f}")

print()
print("=== Measuring d on a rotated state == measuring d' on the plain state ===")
d = np.array([0.0, 0.6, 0.8])
d_eff = su2.rotate_direction(rot, d)
print(f"  d      = {np.round(d, 4)}")
print(f"  d_eff  = {np.round(d_eff, 4)}  (|d_eff| = {np.linalg.norm(d_eff):.12f})")

fast = su2.ghz_correlator([su2.observable_matrix(su2.rotate_direction(rot, d))
                           for _ in range(3)])
slow = su2.statevector_expectation([rot] * 3,
                                   [su2.observable_matrix(d)] * 3)
print(f"  closed form: {fast:+.12f}")
print(f"  statevector: {slow:+.12f}   (difference {abs(fast - slow):.2e})")

print()
print("=== The rotated z-axis is uniform on the sphere ===")
n = 20_000
quats = rng.standard_normal((n, 4))
quats /= np.linalg.norm(quats, axis=1, keepdims=True)
images = su2.rotate_directions(quats, su2.Z_AXIS)
print(f"  mean of {n} rotated z-axes: {np.round(images.mean(axis=0), 4)}")
octants = (images[:, 0] > 0) * 4 + (images[:, 1] > 0) * 2 + (images[:, 2] > 0)
print(f"  octant occupation: {np.round(np.bincount(octants) / n, 3)}")
