"""Independent reference implementations used only to check the package.

Nothing here may call into the code paths it verifies: the integrator walks
the Schroedinger equation with classical RK4 steps, and the matrix builders
assemble elements from explicit selection rules instead of tensor products.
"""

import numpy as np


def rk4_unitary(h, t, tol=1e-10, n_start=64, max_doublings=14):
    """Integrate dU/dt = -i H U with RK4, doubling steps until converged.

    Returns the first iterate whose entrywise distance to the previous
    halving is below ``tol``.
    """
    h = np.asarray(h, dtype=np.complex128)

    def integrate(n_steps):
        m = -1j * h
        u = np.eye(h.shape[0], dtype=np.complex128)
        dt = t / n_steps
        for _ in range(n_steps):
            k1 = m @ u
            k2 = m @ (u + 0.5 * dt * k1)
            k3 = m @ (u + 0.5 * dt * k2)
            k4 = m @ (u + dt * k3)
            u = u + (dt / 6.0) * (k1 + 2 * k2 + 2 * k3 + k4)
        return u

    n = n_start
    prev = integrate(n)
    for _ in range(max_doublings):
        n *= 2
        cur = integrate(n)
        if np.max(np.abs(cur - prev)) < tol:
            return cur
        prev = cur
    raise AssertionError(f"RK4 oracle did not converge to {tol} within {n} steps")


def kron_by_index_formula(a, b):
    """(a kron b)[3i+k, 3j+l] = a[i,j]*b[k,l] via explicit double loops."""
    out = np.zeros((9, 9), dtype=np.complex128)
    for i in range(3):
        for j in range(3):
            for k in range(3):
                for l in range(3):
                    out[3 * i + k, 3 * j + l] = a[i, j] * b[k, l]
    return out


def two_atom_hamiltonian_by_rules(drive1, drive2, v):
    """Two-atom Hamiltonian assembled element by element from selection rules.

    ``drive1``/``drive2`` are (rabi, detuning, phase) tuples or None. Levels
    are coded 0, 1, 2 (= Rydberg) and the product index is 3*atom1 + atom2.
    A drive couples that atom's levels 1 and 2 with amplitude
    (rabi/2) e^{i phase} on the <1|H|2> side and shifts its level 2 by the
    detuning; the interaction shifts the (2, 2) product state by v.
    """
    out = np.zeros((9, 9), dtype=np.complex128)

    def single(drive):
        m = np.zeros((3, 3), dtype=np.complex128)
        if drive is not None:
            rabi, detuning, phase = drive
            m[1, 2] = 0.5 * rabi * np.exp(1j * phase)
            m[2, 1] = np.conj(m[1, 2])
            m[2, 2] = detuning
        return m

    m1, m2 = single(drive1), single(drive2)
    for a in range(3):
        for b in range(3):
            for c in range(3):
                for d in range(3):
                    element = 0.0 + 0.0j
                    if b == d:
                        element += m1[a, c]
                    if a == c:
                        element += m2[b, d]
                    if (a, b, c, d) == (2, 2, 2, 2):
                        element += v
                    out[3 * a + b, 3 * c + d] = element
    return out


def controlled_flip_family(theta):
    """Two-qubit matrix diag-embedded [[cos, i sin], [i sin, cos]] inner block."""
    c, s = np.cos(theta), np.sin(theta)
    return np.array(
        [
            [1, 0, 0, 0],
            [0, c, 1j * s, 0],
            [0, 1j * s, c, 0],
            [0, 0, 0, 1],
        ],
        dtype=np.complex128,
    )


def random_hermitian(rng, n=9, scale=1.0):
    m = rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))
    return np.ascontiguousarray(scale * (m + m.conj().T) / 2.0)
