"""Operator algebra on truncated Fock spaces.

Dense complex matrices tagged with a tensor-space signature, plus the
vectorized (superoperator) representation the master-equation builders are
assembled in.  The flattening convention is column-major (Fortran order)
throughout the package::

    vec(A @ rho @ B) == kron(B.T, A) @ vec(rho)

Two-time correlation code depends on this convention; do not change it.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
import scipy.sparse as sp

HERMITICITY_TOL = 1e-12
DM_HERMITICITY_TOL = 1e-10
DM_TRACE_TOL = 1e-10
DM_POSITIVITY_TOL = -1e-8


@dataclass(frozen=True)
class SpaceSignature:
    """Ordered subsystem dimensions of a composite truncated Hilbert space.

    A two-level system contributes dimension 2, a resonator truncated at
    Fock level n_max contributes n_max + 1.  The TLS factor, when present,
    comes first; the resonator Fock factor is always last.
    """

    parts: tuple[int, ...]

    def __post_init__(self):
        parts = tuple(int(p) for p in self.parts)
        if not parts:
            raise ValueError("signature needs at least one subsystem")
        if any(p < 2 for p in parts):
            raise ValueError(f"every part dimension must be >= 2, got {parts}")
        object.__setattr__(self, "parts", parts)

    @property
    def total_dim(self) -> int:
        d = 1
        for p in self.parts:
            d *= p
        return d

    def __add__(self, other: "SpaceSignature") -> "SpaceSignature":
        return SpaceSignature(self.parts + other.parts)


@dataclass(frozen=True)
class Operator:
    """A linear operator on a signed composite space (dimensionless entries)."""

    sig: SpaceSignature
    data: np.ndarray

    def __post_init__(self):
        data = np.asarray(self.data, dtype=complex)
        d = self.sig.total_dim
        if data.shape != (d, d):
            raise ValueError(
                f"operator data shape {data.shape} does not match signature dim {d}"
            )
        data = data.copy()
        data.setflags(write=False)
        object.__setattr__(self, "data", data)

    @property
    def dim(self) -> int:
        return self.sig.total_dim

    def dag(self) -> "Operator":
        return Operator(self.sig, self.data.conj().T)

    def is_hermitian(self, tol: float = HERMITICITY_TOL) -> bool:
        return float(np.abs(self.data - self.data.conj().T).max()) < tol

    def __matmul__(self, other: "Operator") -> "Operator":
        if self.sig != other.sig:
            raise ValueError("operator product across mismatched signatures")
        return Operator(self.sig, self.data @ other.data)

    def __add__(self, other: "Operator") -> "Operator":
        if self.sig != other.sig:
            raise ValueError("operator sum across mismatched signatures")
        return Operator(self.sig, self.data + other.data)

    def __sub__(self, other: "Operator") -> "Operator":
        if self.sig != other.sig:
            raise ValueError("operator difference across mismatched signatures")
        return Operator(self.sig, self.data - other.data)

    def __mul__(self, scalar: complex) -> "Operator":
        return Operator(self.sig, self.data * scalar)

    __rmul__ = __mul__

    def __neg__(self) -> "Operator":
        return Operator(self.sig, -self.data)


@dataclass(frozen=True)
class DensityMatrix:
    """Hermitian, unit-trace, positive-semidefinite state on a composite space."""

    sig: SpaceSignature
    data: np.ndarray

    def __post_init__(self):
        data = np.asarray(self.data, dtype=complex)
        d = self.sig.total_dim
        if data.shape != (d, d):
            raise ValueError(
                f"density matrix shape {data.shape} does not match signature dim {d}"
            )
        data = data.copy()
        data.setflags(write=False)
        object.__setattr__(self, "data", data)

    @classmethod
    def from_data(
        cls,
        sig: SpaceSignature,
        data: np.ndarray,
        *,
        hermitize: bool = False,
        hermiticity_tol: float = DM_HERMITICITY_TOL,
        trace_tol: float = DM_TRACE_TOL,
        positivity_tol: float = DM_POSITIVITY_TOL,
    ) -> "DensityMatrix":
        """Validated constructor.

        `hermitize` replaces the matrix by its Hermitian part (used for
        states coming out of numerical integration, where the
        anti-Hermitian residue is integrator noise).  Mid-trajectory states
        pass a relaxed `positivity_tol` of -1e-6.
        """
        data = np.asarray(data, dtype=complex)
        herm_residue = float(np.abs(data - data.conj().T).max())
        if hermitize:
            data = 0.5 * (data + data.conj().T)
        elif herm_residue > hermiticity_tol:
            raise ValueError(f"density matrix not Hermitian: residue {herm_residue:.3e}")
        tr = np.trace(data)
        if abs(tr - 1.0) > trace_tol:
            raise ValueError(f"density matrix trace {tr} deviates from 1")
        wmin = float(np.linalg.eigvalsh(data)[0])
        if wmin < positivity_tol:
            raise ValueError(
                f"density matrix not positive semidefinite: min eigenvalue {wmin:.3e}"
            )
        return cls(sig, data)

    @property
    def dim(self) -> int:
        return self.sig.total_dim

    def min_eigenvalue(self) -> float:
        return float(np.linalg.eigvalsh(self.data)[0])


# ---------------------------------------------------------------------------
# elementary operators
# ---------------------------------------------------------------------------

def fock_annihilation(n_max: int) -> Operator:
    """Bosonic annihilation operator on the Fock space truncated at n_max.

    Matrix entries: sqrt(n) at row n-1, column n; everything else zero.
    """
    if n_max < 1:
        raise ValueError(f"n_max must be >= 1, got {n_max}")
    data = np.diag(np.sqrt(np.arange(1, n_max + 1)), k=1)
    return Operator(SpaceSignature((n_max + 1,)), data)


def fock_number(n_max: int) -> Operator:
    """Number operator diag(0, 1, ..., n_max)."""
    if n_max < 1:
        raise ValueError(f"n_max must be >= 1, got {n_max}")
    return Operator(SpaceSignature((n_max + 1,)), np.diag(np.arange(n_max + 1.0)))


def pauli_ops() -> tuple[Operator, Operator, Operator]:
    """(sigma_z, sigma_plus, sigma_minus) in the (excited, ground) basis.

    sigma_z = diag(+1, -1) with the excited state at index 0, so
    sigma_plus @ sigma_minus = diag(1, 0) projects onto the excited state.
    """
    sig = SpaceSignature((2,))
    sz = Operator(sig, np.diag([1.0, -1.0]))
    s_minus = Operator(sig, np.array([[0.0, 0.0], [1.0, 0.0]]))
    return sz, s_minus.dag(), s_minus


def identity(sig: SpaceSignature) -> Operator:
    return Operator(sig, np.eye(sig.total_dim))


def tensor(a: Operator, b: Operator) -> Operator:
    """Kronecker product; the result's signature concatenates the inputs'."""
    return Operator(a.sig + b.sig, np.kron(a.data, b.data))


# ---------------------------------------------------------------------------
# dissipator and vectorization
# ---------------------------------------------------------------------------

def dissipator_apply(o: Operator, rho: DensityMatrix) -> Operator:
    """Lindblad dissipator image D[o]rho = o rho o† - (o†o rho + rho o†o)/2.

    Traceless and Hermiticity-preserving for any jump operator o.
    """
    if o.sig != rho.sig:
        raise ValueError("jump operator and state live on different spaces")
    od = o.data
    odo = od.conj().T @ od
    out = od @ rho.data @ od.conj().T - 0.5 * (odo @ rho.data + rho.data @ odo)
    return Operator(o.sig, out)


def vec(m: np.ndarray) -> np.ndarray:
    """Column-major flattening of a matrix."""
    return np.asarray(m).reshape(-1, order="F")


def unvec(v: np.ndarray, dim: int) -> np.ndarray:
    """Inverse of :func:`vec`."""
    return np.asarray(v).reshape((dim, dim), order="F")


def trace_row(dim: int) -> sp.csr_matrix:
    """Row functional r with r @ vec(rho) == trace(rho)."""
    cols = np.arange(dim) * (dim + 1)
    return sp.csr_matrix(
        (np.ones(dim), (np.zeros(dim, dtype=int), cols)), shape=(1, dim * dim), dtype=complex
    )


def product_superop(a: np.ndarray, b: np.ndarray) -> sp.csr_matrix:
    """Superoperator of rho -> a @ rho @ b under column-major vec."""
    a = sp.csr_matrix(a)
    b = sp.csr_matrix(b)
    return sp.kron(b.T, a, format="csr")


def vectorize_superop(terms) -> sp.csr_matrix:
    """Assemble sum_i c_i A_i rho B_i as a sparse superoperator matrix.

    `terms` is an iterable of (coefficient, A, B) with A, B either Operators
    on one common signature or plain square arrays of one common dimension.
    """
    terms = list(terms)
    if not terms:
        raise ValueError("no terms to vectorize")
    mats = []
    dim = None
    for coeff, a, b in terms:
        if isinstance(a, Operator) and isinstance(b, Operator):
            if a.sig != b.sig:
                raise ValueError("superoperator term with mismatched signatures")
            a, b = a.data, b.data
        a = np.asarray(a)
        b = np.asarray(b)
        if a.shape != b.shape or a.shape[0] != a.shape[1]:
            raise ValueError("superoperator factors must be square and same-sized")
        if dim is None:
            dim = a.shape[0]
        elif a.shape[0] != dim:
            raise ValueError("superoperator terms span different dimensions")
        mats.append(complex(coeff) * product_superop(a, b))
    out = mats[0]
    for m in mats[1:]:
        out = out + m
    return out.tocsr()


def dissipator_superop(o: np.ndarray | Operator) -> sp.csr_matrix:
    """Vectorized Lindblad dissipator of the jump operator o."""
    if isinstance(o, Operator):
        o = o.data
    o = sp.csr_matrix(o)
    d = o.shape[0]
    eye = sp.identity(d, dtype=complex, format="csr")
    odo = (o.conj().T @ o).tocsr()
    return (
        sp.kron(o.conj(), o, format="csr")
        - 0.5 * sp.kron(eye, odo, format="csr")
        - 0.5 * sp.kron(odo.T, eye, format="csr")
    )


def hamiltonian_superop(h: np.ndarray | Operator) -> sp.csr_matrix:
    """Vectorized coherent term -i[h, rho]."""
    if isinstance(h, Operator):
        h = h.data
    h = sp.csr_matrix(h)
    d = h.shape[0]
    eye = sp.identity(d, dtype=complex, format="csr")
    return (-1j) * (sp.kron(eye, h, format="csr") - sp.kron(h.T, eye, format="csr"))
