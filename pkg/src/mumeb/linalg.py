"""Dense complex linear algebra for unitaries, bases, and entanglement checks.

Matrices are numpy complex128 arrays, row-major, zero-based.  A basis is a
square array whose columns are the basis vectors.  Sizes stay at N = kd^2 of a
few thousand at most, so everything is direct dense arithmetic.
"""

import numpy as np


def matmul(a, b):
    a = np.asarray(a, dtype=complex)
    b = np.asarray(b, dtype=complex)
    if a.ndim != 2 or b.ndim != 2 or a.shape[1] != b.shape[0]:
        raise ValueError(f"cannot multiply shapes {a.shape} and {b.shape}")
    return a @ b


def conj_transpose(a):
    return np.asarray(a, dtype=complex).conj().T


def tensor(a, b):
    """Kronecker product with row-major index pairing (i_A * rows_B + i_B)."""
    return np.kron(np.asarray(a, dtype=complex), np.asarray(b, dtype=complex))


def is_unitary(a, tol=1e-9):
    """Return (ok, deviation) where deviation = max |A^dag A - I|."""
    a = np.asarray(a, dtype=complex)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ValueError(f"unitarity needs a square matrix, got {a.shape}")
    dev = float(np.abs(a.conj().T @ a - np.eye(a.shape[0])).max())
    return dev <= tol, dev


def gram_deviation(basis):
    """Max |B^dag B - I|: orthonormality defect of the columns."""
    basis = np.asarray(basis, dtype=complex)
    return float(np.abs(basis.conj().T @ basis - np.eye(basis.shape[1])).max())


def reduced_density_check(v, d, dprime):
    """Max deviation of the subsystem-A reduced density of v from I_d / d.

    v lives in C^(d * dprime) with the A index major; the coefficient matrix M
    is the d x dprime reshape and the reduced density is M M^dag.
    """
    v = np.asarray(v, dtype=complex).reshape(-1)
    if v.size != d * dprime:
        raise ValueError(f"vector length {v.size} is not {d}*{dprime}")
    m = v.reshape(d, dprime)
    rho = m @ m.conj().T
    return float(np.abs(rho - np.eye(d) / d).max())


def max_entanglement_deviation(basis, d, dprime):
    """Largest reduced-density deviation over all columns of a basis at once."""
    basis = np.asarray(basis, dtype=complex)
    n = basis.shape[1]
    coeff = basis.T.reshape(n, d, dprime)
    rho = np.einsum("nij,nkj->nik", coeff, coeff.conj())
    return float(np.abs(rho - np.eye(d) / d).max())
