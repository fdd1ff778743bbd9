"""Generator families of unitaries and their expansion into maximally
entangled bases of C^d (x) C^kd.

A family member is a kd x kd unitary U; its basis consists of the kd^2
vectors (1/sqrt(d)) sum_r lambda(r xi) |e_(r+eta)> (x) U|e'_(r,j)> indexed by
(xi, eta) over the size-d ring and j = 0..k-1.  Subsystem-A indices are
row-major over the pair (A index, B index), and the kd basis e'_(r,j) of the
B side maps to column j*d + index(r) of U.
"""

import numpy as np

from . import fields, linalg
from .fields import FiniteField, GaloisRing


class MEBFamily:
    """A labeled set of generator unitaries plus construction metadata."""

    def __init__(self, d, k, ring, generators, metadata=None, validate_unitarity=True):
        self.d = d
        self.k = k
        self.ring = ring
        self.generators = [(label, np.asarray(mat, dtype=complex)) for label, mat in generators]
        self.metadata = dict(metadata or {})
        if ring.d != d:
            raise ValueError(f"ring size {ring.d} does not match d={d}")
        labels = [label for label, _ in self.generators]
        if len(set(labels)) != len(labels):
            raise ValueError("generator labels must be unique")
        for label, mat in self.generators:
            if mat.shape != (k * d, k * d):
                raise ValueError(f"generator {label} has shape {mat.shape}, expected {(k*d, k*d)}")
            if validate_unitarity:
                ok, dev = linalg.is_unitary(mat, 1e-9)
                if not ok:
                    raise ValueError(f"generator {label} is not unitary (deviation {dev:.3e})")

    @property
    def n_bases(self):
        return len(self.generators)

    def labels(self):
        return [label for label, _ in self.generators]

    def bases(self):
        """Expand every generator; returns the list of N x N basis matrices."""
        return [expand_basis(self.ring, mat, self.k) for _, mat in self.generators]

    def __repr__(self):
        return f"MEBFamily(d={self.d}, k={self.k}, bases={self.n_bases})"


def permutation_unitary(ring, a):
    """The multiplication permutation: entry (r, s) is 1 iff s = a*r.

    Acts on basis vectors as U(a)|e_r> = |e_(r/a)>; U(1) = I and
    U(a)U(b) = U(ab).
    """
    if not a.is_unit:
        raise ValueError("permutation unitary needs an invertible ring element")
    d = ring.d
    u = np.zeros((d, d), dtype=complex)
    u[np.arange(d), fields.mul_index_vector(ring, a)] = 1.0
    return u


def fourier_unitary(ring):
    """Character kernel (1/sqrt(d)) lambda(r*s); unitary because lambda is generic."""
    return fields.char_table(ring) / np.sqrt(ring.d)


def v_unitary(ring, a):
    """Twisted kernel V(a) = U(a) W."""
    return permutation_unitary(ring, a) @ fourier_unitary(ring)


def pauli_matrix(ring, xi, eta):
    """Monomial unitary with entry lambda(r*xi) at position (index(r+eta), index(r))."""
    d = ring.d
    h = np.zeros((d, d), dtype=complex)
    rows = fields.add_index_table(ring)[:, eta.index]
    h[rows, np.arange(d)] = fields.char_table(ring)[:, xi.index]
    return h


def expand_basis(ring, u, k=None):
    """Expand one generator into its full orthonormal basis of C^(kd^2).

    Returns an N x N array (N = kd^2) whose columns are the basis vectors in
    lexicographic (xi, eta, j) order by canonical ring index.
    """
    d = ring.d
    u = np.asarray(u, dtype=complex)
    if u.ndim != 2 or u.shape[0] != u.shape[1] or u.shape[0] % d:
        raise ValueError(f"generator shape {u.shape} is not a multiple of d={d}")
    if k is None:
        k = u.shape[0] // d
    if u.shape[0] != k * d:
        raise ValueError(f"generator size {u.shape[0]} does not equal k*d = {k*d}")
    ok, dev = linalg.is_unitary(u, 1e-9)
    if not ok:
        raise ValueError(f"generator is not unitary (deviation {dev:.3e})")

    kd = k * d
    n = k * d * d
    lam = fields.char_table(ring)
    add = fields.add_index_table(ring)
    neg = fields.neg_index_vector(ring)
    ucols = u.reshape(kd, k, d)  # ucols[iB, j, r] = u[iB, j*d + r]

    psi = np.zeros((d, kd, d, d, k), dtype=complex)  # [iA, iB, xi, eta, j]
    for eta in range(d):
        r_of = add[:, neg[eta]]            # r with r + eta = iA, per subsystem-A index
        phases = lam[r_of, :]              # [iA, xi]
        cols = ucols[:, :, r_of]           # [iB, j, iA]
        psi[:, :, :, eta, :] = np.einsum("ax,bja->abxj", phases, cols)
    return psi.reshape(n, n) / np.sqrt(d)


def family_cd(d_or_ring):
    """The 2(q_1 - 1) pairwise-unbiased generators of C^d (x) C^d for odd d.

    Half are multiplication permutations U(a) and half their Fourier twists
    V(a) = U(a) W, with a running over the aligned-unit set S.
    """
    ring = d_or_ring if isinstance(d_or_ring, fields.ProductRing) else fields.ring_for_dimension(d_or_ring)
    s_set = fields.unit_difference_set(ring)
    w = fourier_unitary(ring)
    gens = []
    for a in s_set:
        gens.append((f"U(a={a.index})", permutation_unitary(ring, a)))
    for a in s_set:
        gens.append((f"V(a={a.index})", permutation_unitary(ring, a) @ w))
    meta = {
        "construction": "gauss-dd",
        "s_indices": [a.index for a in s_set],
        "unitarity_tol": 1e-9,
        "vector_order": "(xi,eta,j) lexicographic",
    }
    return MEBFamily(ring.d, 1, ring, gens, meta)


# ---------------------------------------------------------------------------
# flat k x k blocks

def _factor_size(factor):
    return 2 ** factor.a if isinstance(factor, GaloisRing) else factor.q


def k_factors(k):
    """Prime-power carriers for k, ascending by size; 2-power parts use GR(4,a)."""
    out = []
    for p, a in fields.factor_into_prime_powers(k):
        out.append(GaloisRing(a) if p == 2 else FiniteField(p, a))
    return out


def b_block(factor, j):
    """The j-th flat unitary block of one prime-power factor of k.

    Odd q: entries zeta_p^(T(j m^2 + m n)) / sqrt(q) over field elements m, n.
    Even q: entries i^(Tr((j + 2n) m)) / sqrt(q) over the Teichmuller set of
    GR(4,a).  Any two distinct blocks (and any block against I) have all
    cross-overlap magnitudes 1/sqrt(q).
    """
    if isinstance(factor, GaloisRing):
        q = 2 ** factor.a
        if not 0 <= j < q:
            raise ValueError(f"block index {j} out of range for q={q}")
        teich = factor.teichmuller
        jel = teich[j]
        block = np.empty((q, q), dtype=complex)
        for mi, m in enumerate(teich):
            for ni, nel in enumerate(teich):
                arg = factor.mul(factor.add(jel, factor.scale(2, nel)), m)
                block[mi, ni] = 1j ** fields.galois_trace_z4(factor, arg)
        return block / np.sqrt(q)
    if factor.p == 2:
        raise ValueError("even characteristic uses the Galois-ring block")
    q = factor.q
    if not 0 <= j < q:
        raise ValueError(f"block index {j} out of range for q={q}")
    jel = factor.element(j)
    els = factor.elements()
    phase = np.empty((q, q))
    for mi, m in enumerate(els):
        jmm = fields.field_trace(jel * m * m)
        for ni, nel in enumerate(els):
            phase[mi, ni] = (jmm + fields.field_trace(m * nel)) / factor.p
    return np.exp(2j * np.pi * phase) / np.sqrt(q)


def b_tensor(k, j, factors=None):
    """The j-th member of the flat family of C^k: B_0 = I_k, and for j >= 1 the
    tensor of each factor's block at position j - 1.  Valid j: 0..q'_1."""
    if k < 2:
        raise ValueError("flat blocks need k >= 2")
    if factors is None:
        factors = k_factors(k)
    q1 = _factor_size(factors[0])
    if not 0 <= j <= q1:
        raise ValueError(f"tensor index {j} out of range 0..{q1}")
    if j == 0:
        return np.eye(k, dtype=complex)
    block = None
    for factor in factors:
        piece = b_block(factor, j - 1)
        block = piece if block is None else np.kron(block, piece)
    return block


def family_ckd(d_or_ring, k):
    """min{q'_1 + 1, 2(q_1 - 1)} generators B_t (x) U_t of C^d (x) C^kd."""
    if k < 2:
        raise ValueError("k must be at least 2; use family_cd for k = 1")
    base = family_cd(d_or_ring)
    factors = k_factors(k)
    n_fam = min(_factor_size(factors[0]) + 1, base.n_bases)
    gens = []
    for t in range(n_fam):
        label, u = base.generators[t]
        gens.append((f"B_{t}⊗{label}", np.kron(b_tensor(k, t, factors), u)))
    meta = {
        "construction": "gauss-tensor",
        "s_indices": base.metadata["s_indices"],
        "k_factor_sizes": [_factor_size(f) for f in factors],
        "unitarity_tol": 1e-9,
        "vector_order": "(xi,eta,j) lexicographic",
    }
    return MEBFamily(base.d, k, base.ring, gens, meta)


def family_ckd_mols(d_or_ring, k, squares=None):
    """min{w + 2, 2(q_1 - 1)} generators G_t (x) U_t, with G_t the t-th
    unbiased basis of C^k built from a net of w orthogonal squares of order
    sqrt(k)."""
    from . import mols as mols_mod

    x = int(round(np.sqrt(k)))
    if x * x != k or x < 2:
        raise ValueError(f"k={k} is not a square of an integer >= 2")
    if squares is None:
        squares = mols_mod.best_mols(x)
    else:
        mols_mod.validate_mols(squares)
        if squares and squares[0].order != x:
            raise ValueError(f"squares have order {squares[0].order}, need {x}")
    net = mols_mod.net_from_mols(squares, order=x)
    mubs = mols_mod.mubs_from_net(net, mols_mod.fourier_hadamard(x))
    base = family_cd(d_or_ring)
    n_fam = min(len(mubs), base.n_bases)
    gens = []
    for t in range(n_fam):
        label, u = base.generators[t]
        gens.append((f"G_{t}⊗{label}", np.kron(mubs[t], u)))
    meta = {
        "construction": "mols-net",
        "s_indices": base.metadata["s_indices"],
        "mols_order": x,
        "mols_count": len(squares),
        "net_blocks": net.n,
        "unitarity_tol": 1e-9,
        "vector_order": "(xi,eta,j) lexicographic",
    }
    return MEBFamily(base.d, k, base.ring, gens, meta)
