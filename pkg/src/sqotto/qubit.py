"""Two-level-system primitives: states, energy bases, entropies, coherence.

Conventions used throughout the package (hbar = k_B = 1):

* operators are 2x2 complex ndarrays in the computational basis, with
  ``sigma_z = diag(1, -1)``;
* an *energy-basis representation* of a state is the 2x2 matrix of
  ``<b_i| rho |b_j>`` with the basis ordered (ground, excited), so index 0
  is always the ground state;
* eigenvector phases are fixed deterministically (largest-magnitude
  component made real positive, ties broken toward the lower index) so
  that off-diagonal representation elements are reproducible.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

SIGMA_X = np.array([[0.0, 1.0], [1.0, 0.0]], dtype=complex)
SIGMA_Y = np.array([[0.0, -1.0j], [1.0j, 0.0]], dtype=complex)
SIGMA_Z = np.array([[1.0, 0.0], [0.0, -1.0]], dtype=complex)
IDENTITY = np.eye(2, dtype=complex)

#: lowering operator |g><e| in any (ground, excited)-ordered representation
SIGMA_MINUS_REP = np.array([[0.0, 1.0], [0.0, 0.0]], dtype=complex)
SIGMA_PLUS_REP = SIGMA_MINUS_REP.conj().T

_LOG_FLOOR = 1e-300


def hermitize(mat: np.ndarray) -> np.ndarray:
    """Return the Hermitian part (mat + mat^dag)/2, discarding roundoff skew."""
    return 0.5 * (mat + mat.conj().T)


def assert_state(rho: np.ndarray, atol: float = 1e-9, context: str = "state") -> np.ndarray:
    """Validate a density matrix: shape, Hermiticity, unit trace, positivity.

    Returns the input unchanged so calls can be inlined; raises ValueError
    with a descriptive message on violation.
    """
    rho = np.asarray(rho, dtype=complex)
    if rho.shape != (2, 2):
        raise ValueError(f"{context}: expected a 2x2 matrix, got shape {rho.shape}")
    if not np.allclose(rho, rho.conj().T, atol=atol):
        raise ValueError(f"{context}: matrix is not Hermitian within atol={atol}")
    tr = rho.trace().real
    if abs(tr - 1.0) > atol:
        raise ValueError(f"{context}: trace is {tr!r}, expected 1")
    evals = np.linalg.eigvalsh(hermitize(rho))
    if evals.min() < -atol:
        raise ValueError(f"{context}: negative eigenvalue {evals.min():g}")
    return rho


@dataclass(frozen=True)
class EnergyBasis:
    """Instantaneous eigenbasis of a qubit Hamiltonian.

    ``vectors`` holds the eigenvectors as columns in ascending energy order
    (ground first); ``energies`` are the matching eigenvalues.
    """

    energies: np.ndarray
    vectors: np.ndarray

    @property
    def ground(self) -> np.ndarray:
        return self.vectors[:, 0]

    @property
    def excited(self) -> np.ndarray:
        return self.vectors[:, 1]

    @property
    def gap(self) -> float:
        return float(self.energies[1] - self.energies[0])

    def to_rep(self, rho: np.ndarray) -> np.ndarray:
        """Matrix of <b_i|rho|b_j> in this basis, ordered (g, e)."""
        return self.vectors.conj().T @ np.asarray(rho, dtype=complex) @ self.vectors

    def from_rep(self, rep: np.ndarray) -> np.ndarray:
        """Reconstruct the computational-basis operator from its representation."""
        return self.vectors @ np.asarray(rep, dtype=complex) @ self.vectors.conj().T


def eigenbasis(hamiltonian: np.ndarray) -> EnergyBasis:
    """Diagonalize a Hermitian 2x2 Hamiltonian with a deterministic phase.

    Each eigenvector is rescaled so its largest-magnitude component is real
    and positive (ties broken toward the lower index), making downstream
    off-diagonal matrix elements reproducible across calls.
    """
    ham = np.asarray(hamiltonian, dtype=complex)
    if ham.shape != (2, 2):
        raise ValueError(f"expected a 2x2 Hamiltonian, got shape {ham.shape}")
    if not np.allclose(ham, ham.conj().T, atol=1e-10):
        raise ValueError("Hamiltonian is not Hermitian")
    energies, vectors = np.linalg.eigh(hermitize(ham))
    vectors = vectors.astype(complex).copy()
    for k in range(2):
        col = vectors[:, k]
        mags = np.abs(col)
        # bias toward the lower index so exact-magnitude ties are stable
        lead = int(np.argmax(mags - 1e-12 * np.arange(2)))
        phase = col[lead] / mags[lead]
        vectors[:, k] = col / phase
    return EnergyBasis(energies=energies, vectors=vectors)


def dephase(rho: np.ndarray, basis: EnergyBasis) -> np.ndarray:
    """Project out coherence between the basis eigenstates (pinching map)."""
    rep = basis.to_rep(rho)
    return basis.from_rep(np.diag(np.diag(rep).real).astype(complex))


def dephase_rep(rep: np.ndarray) -> np.ndarray:
    """Dephase a state given directly as an energy-basis representation."""
    return np.diag(np.diag(np.asarray(rep, dtype=complex)).real).astype(complex)


def von_neumann_entropy(rho: np.ndarray) -> float:
    """S(rho) = -Tr rho ln rho in nats, with 0 ln 0 = 0."""
    evals = np.linalg.eigvalsh(hermitize(np.asarray(rho, dtype=complex)))
    evals = np.clip(evals.real, 0.0, 1.0)
    mask = evals > _LOG_FLOOR
    return float(-(evals[mask] * np.log(evals[mask])).sum())


def relative_entropy_of_coherence(rho: np.ndarray, basis: EnergyBasis) -> float:
    """C(rho) = S(dephased rho) - S(rho), in nats; zero iff rho is diagonal."""
    return max(0.0, von_neumann_entropy(dephase(rho, basis)) - von_neumann_entropy(rho))


def coherence_of_rep(rep: np.ndarray) -> float:
    """Relative entropy of coherence for a state given as a basis representation."""
    return max(0.0, von_neumann_entropy(dephase_rep(rep)) - von_neumann_entropy(rep))


def kl_divergence(rho: np.ndarray, rho_ref: np.ndarray) -> float:
    """Quantum relative entropy D(rho || rho_ref) = Tr rho (ln rho - ln rho_ref).

    Raises ValueError when ``rho`` has weight on the kernel of ``rho_ref``
    (the divergence is undefined/infinite there).
    """
    rho = hermitize(np.asarray(rho, dtype=complex))
    ref = hermitize(np.asarray(rho_ref, dtype=complex))
    pr, vr = np.linalg.eigh(ref)
    pr = np.clip(pr.real, 0.0, None)
    weights = np.einsum("ik,ij,jk->k", vr.conj(), rho, vr).real
    for k in range(pr.size):
        if pr[k] <= 1e-14 and weights[k] > 1e-12:
            raise ValueError(
                "kl_divergence undefined: reference state is rank-deficient on "
                f"a direction carrying weight {weights[k]:g}"
            )
    log_ref = (vr * np.log(np.clip(pr, _LOG_FLOOR, None))) @ vr.conj().T
    cross = -float(np.trace(rho @ log_ref).real)
    return max(0.0, cross - von_neumann_entropy(rho))


def gibbs_state(hamiltonian: np.ndarray, beta: float) -> np.ndarray:
    """Thermal state e^{-beta H}/Z, computed overflow-safely from the gap."""
    if beta < 0:
        raise ValueError(f"inverse temperature must be non-negative, got {beta}")
    basis = eigenbasis(hamiltonian)
    gap = basis.gap
    # populations via the logistic function of beta*gap, safe for any argument
    p_e = 1.0 / (1.0 + np.exp(min(beta * gap, 700.0)))
    rep = np.diag([1.0 - p_e, p_e]).astype(complex)
    return basis.from_rep(rep)


def gibbs_rep(gap: float, beta: float) -> np.ndarray:
    """Energy-basis representation of a thermal state for a given gap."""
    if beta < 0:
        raise ValueError(f"inverse temperature must be non-negative, got {beta}")
    p_e = 1.0 / (1.0 + np.exp(min(beta * gap, 700.0)))
    return np.diag([1.0 - p_e, p_e]).astype(complex)


def mean_excitation_rep(rep: np.ndarray) -> float:
    """Population asymmetry n = (p_e - p_g)/2 of a (g, e)-ordered representation.

    Ranges over [-1/2, 1/2]; the energy relative to the band center is
    n * gap for a gap-symmetric spectrum.
    """
    rep = np.asarray(rep, dtype=complex)
    return float(0.5 * (rep[1, 1].real - rep[0, 0].real))


def mean_excitation(rho: np.ndarray, basis: EnergyBasis) -> float:
    """Population asymmetry (p_e - p_g)/2 of ``rho`` in the given basis."""
    return mean_excitation_rep(basis.to_rep(rho))


def trace_distance(rho_a: np.ndarray, rho_b: np.ndarray) -> float:
    """T(a, b) = (1/2) ||a - b||_1."""
    diff = hermitize(np.asarray(rho_a, dtype=complex) - np.asarray(rho_b, dtype=complex))
    return float(0.5 * np.abs(np.linalg.eigvalsh(diff)).sum())
