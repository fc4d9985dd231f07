"""
Brute-force reference: the coupled Hamiltonian on a truncated Fock basis.

Nothing in this module uses the normal-mode solution.  States come from
exact diagonalisation, and every witness or negativity is evaluated from
operator matrices, so agreement with the closed forms is a genuine check.

Basis ordering is row-major, index = n_a * n_max + n_b.  The coupling only
changes n_a + n_b by 0 or 2, so the Hamiltonian splits into even and odd
parity blocks that are diagonalised separately.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np
import scipy.linalg
import scipy.sparse as sp

from .core import DomainError, OscillatorPair, SymplecticTransform
from .gaussian import Temperature

GROUND_BETA_OMEGA = 50.0
# Boltzmann weights below this fraction of the largest are dropped from rho.
WEIGHT_CUTOFF = 1e-18


class ConvergenceError(RuntimeError):
    """Truncation did not converge; carries both estimates."""

    def __init__(self, message, estimates=None):
        super().__init__(message)
        self.estimates = estimates


class OracleRefusedError(ConvergenceError):
    """Coupling too close to the instability for any tractable truncation."""


class DimensionCapError(DomainError):
    pass


@dataclass(frozen=True)
class FockConfig:
    """Per-mode truncation (levels 0..n_max-1) and certification tolerance."""

    n_max: int = 40
    convergence_tol: float = 1e-8
    dim_cap: int = 4096

    def __post_init__(self):
        if int(self.n_max) != self.n_max or self.n_max < 2:
            raise DomainError(f"n_max must be an integer >= 2, got {self.n_max!r}", "n_max >= 2")
        if self.n_max ** 2 > self.dim_cap:
            raise DimensionCapError(
                f"dimension {self.n_max ** 2} exceeds the cap {self.dim_cap}",
                "n_max^2 <= dim_cap",
            )
        if not self.convergence_tol > 0:
            raise DomainError("convergence_tol must be positive", "convergence_tol > 0")

    @property
    def dim(self) -> int:
        return self.n_max ** 2

    @property
    def reference_n_max(self) -> int:
        """Truncation used to certify results computed at ``n_max``.

        Normally 2 n_max; if that exceeds the dimension cap, the largest
        admissible truncation above n_max; if n_max is already at the cap,
        a coarser 3/4 n_max (a conservative check, since truncation error
        decays with the cutoff).
        """
        n_cap = math.isqrt(self.dim_cap)
        n_ref = min(2 * self.n_max, n_cap)
        if n_ref <= self.n_max:
            n_ref = max(2, (3 * self.n_max) // 4)
        return n_ref

    def with_n_max(self, n_max):
        return FockConfig(n_max, self.convergence_tol, self.dim_cap)


def default_config(pair: OscillatorPair, convergence_tol=1e-8) -> FockConfig:
    """Truncation policy: 40 levels up to g/g_c = 0.8, 64 up to 0.9, refuse beyond."""
    ratio = pair.coupling_ratio
    if ratio <= 0.8:
        return FockConfig(40, convergence_tol)
    if ratio <= 0.9:
        return FockConfig(64, convergence_tol)
    raise OracleRefusedError(
        f"g/g_c = {ratio:.6g} > 0.9: squeezing too strong for a certifiable truncation"
    )


def _check_refusal(pair):
    if pair.coupling_ratio > 0.9:
        raise OracleRefusedError(
            f"g/g_c = {pair.coupling_ratio:.6g} > 0.9: squeezing too strong for a certifiable truncation"
        )


@lru_cache(maxsize=8)
def _ladder_ops(n_max):
    a = sp.diags(np.sqrt(np.arange(1, n_max, dtype=float)), 1, format="csr")
    eye = sp.identity(n_max, format="csr")
    A = sp.kron(a, eye, format="csr")
    B = sp.kron(eye, a, format="csr")
    return A, B


@lru_cache(maxsize=8)
def _quadratures(n_max):
    A, B = _ladder_ops(n_max)
    A = A.astype(complex)
    B = B.astype(complex)
    x_a = (A + A.T) / 2
    x_b = (B + B.T) / 2
    p_a = (A - A.T) / 2j
    p_b = (B - B.T) / 2j
    return tuple(op.tocsr() for op in (x_a, x_b, p_a, p_b))


@lru_cache(maxsize=8)
def _parity_blocks(n_max):
    n_a, n_b = np.divmod(np.arange(n_max * n_max), n_max)
    even = (n_a + n_b) % 2 == 0
    return np.flatnonzero(even), np.flatnonzero(~even)


def _hamiltonian(pair, n_max):
    n = np.arange(n_max, dtype=float)
    a = sp.diags(np.sqrt(n[1:]), 1, format="csr")
    x = a + a.T
    diagonal = sp.diags(np.add.outer(pair.omega * n, pair.Omega * n).ravel(), format="csr")
    return (diagonal + 0.5 * pair.g * sp.kron(x, x, format="csr")).tocsr()


def build_hamiltonian(pair: OscillatorPair, cfg: FockConfig) -> sp.csr_matrix:
    """Sparse matrix of the coupled Hamiltonian in the truncated product basis."""
    return _hamiltonian(pair, cfg.n_max)


def write_triplets(matrix, fh, header=None):
    """Write nonzeros as ``row col value`` lines with 17 significant digits.

    ``header`` lines are written first, each prefixed with ``#``.
    """
    coo = sp.coo_matrix(matrix)
    order = np.lexsort((coo.col, coo.row))
    if header:
        for line in header:
            fh.write(f"# {line}\n")
    for r, c, v in zip(coo.row[order], coo.col[order], coo.data[order]):
        fh.write(f"{r} {c} {v:.17g}\n")


def read_triplets(fh, shape):
    rows, cols, vals = [], [], []
    for line in fh:
        if not line.strip() or line.startswith("#"):
            continue
        r, c, v = line.split()
        rows.append(int(r))
        cols.append(int(c))
        vals.append(float(v))
    return sp.csr_matrix((vals, (rows, cols)), shape=shape)


def dump_hamiltonian(pair: OscillatorPair, cfg: FockConfig, fh):
    header = [
        f"omega={pair.omega!r} Omega={pair.Omega!r} g={pair.g!r} n_max={cfg.n_max}",
        "basis index = n_a * n_max + n_b; format: row col value",
    ]
    write_triplets(build_hamiltonian(pair, cfg), fh, header)


def _block_eigh(H, idx, subset=None):
    block = H[idx][:, idx].toarray()
    if subset is None:
        return scipy.linalg.eigh(block)
    return scipy.linalg.eigh(block, subset_by_index=subset)


def spectrum(pair: OscillatorPair, cfg: FockConfig, k=6) -> np.ndarray:
    """Lowest ``k`` eigenvalues of the truncated Hamiltonian."""
    H = build_hamiltonian(pair, cfg)
    values = []
    for idx in _parity_blocks(cfg.n_max):
        m = min(k, len(idx))
        values.append(_block_eigh(H, idx, subset=[0, m - 1])[0])
    return np.sort(np.concatenate(values))[:k]


@dataclass(frozen=True, eq=False)
class FockState:
    """Pure state vector or thermal density matrix on the truncated basis.

    ``reference`` is the same state at the certification truncation and
    ``shift`` the largest change of the certified observables (energy and all
    second moments) between the two.
    """

    kind: str
    data: np.ndarray
    pair: OscillatorPair
    beta: float
    n_max: int
    energy: float
    reference: FockState | None = None
    shift: float = math.nan
    convergence_tol: float = 1e-8

    def __post_init__(self):
        if self.kind == "pure":
            norm = float(np.vdot(self.data, self.data).real)
            if abs(norm - 1.0) > 1e-12:
                raise ValueError(f"state vector norm is {norm!r}")
        elif self.kind == "thermal":
            trace = float(np.trace(self.data))
            if abs(trace - 1.0) > 1e-12:
                raise ValueError(f"density matrix trace is {trace!r}")
            if np.max(np.abs(self.data - self.data.T.conj())) > 1e-12:
                raise ValueError("density matrix is not Hermitian")
        else:
            raise ValueError(f"unknown kind {self.kind!r}")

    @property
    def dim(self) -> int:
        return self.n_max ** 2

    def density_matrix(self) -> np.ndarray:
        if self.kind == "pure":
            return np.outer(self.data, self.data.conj())
        return self.data

    def min_eigenvalue(self) -> float:
        """Smallest eigenvalue of the density matrix (PSD check)."""
        return float(np.linalg.eigvalsh(self.density_matrix())[0])

    def expect(self, op) -> complex:
        """<op> for a sparse operator on this truncation."""
        if self.kind == "pure":
            return complex(np.vdot(self.data, op @ self.data))
        coo = sp.coo_matrix(op)
        return complex(np.sum(coo.data * self.data[coo.col, coo.row]))


def _observables(state):
    return np.concatenate([[state.energy], second_moments(state)[np.triu_indices(4)]])


def _certify(primary, reference, tol):
    shift = float(np.max(np.abs(_observables(primary) - _observables(reference))))
    if not shift < tol:
        raise ConvergenceError(
            f"observables moved by {shift:.3g} between n_max={primary.n_max} and "
            f"n_max={reference.n_max} (tolerance {tol:.3g})",
            estimates=(primary, reference),
        )
    return shift


def _ground(pair, n_max):
    H = _hamiltonian(pair, n_max)
    best = None
    for idx in _parity_blocks(n_max):
        w, v = _block_eigh(H, idx, subset=[0, 0])
        if best is None or w[0] < best[0]:
            best = (w[0], idx, v[:, 0])
    energy, idx, vec = best
    psi = np.zeros(n_max * n_max)
    psi[idx] = vec
    psi /= np.linalg.norm(psi)
    # fix the global sign so that <0,0|psi> > 0
    if psi[0] < 0:
        psi = -psi
    return FockState("pure", psi, pair, math.inf, n_max, float(energy))


def _gibbs(pair, beta, n_max):
    H = _hamiltonian(pair, n_max)
    blocks = [(idx, *_block_eigh(H, idx)) for idx in _parity_blocks(n_max)]
    e0 = min(w[0] for _, w, _ in blocks)
    weights = [np.exp(-beta * (w - e0)) for _, w, _ in blocks]
    z = sum(float(np.sum(p)) for p in weights)
    rho = np.zeros((n_max * n_max, n_max * n_max))
    energy = 0.0
    for (idx, w, v), p in zip(blocks, weights):
        p = p / z
        keep = p > WEIGHT_CUTOFF
        vk = v[:, keep]
        rho[np.ix_(idx, idx)] = (vk * p[keep]) @ vk.T
        energy += float(np.dot(p, w))
    rho /= np.trace(rho)
    rho = 0.5 * (rho + rho.T)
    return FockState("thermal", rho, pair, beta, n_max, energy)


def ground_state(pair: OscillatorPair, cfg: FockConfig | None = None) -> FockState:
    """Lowest eigenvector, certified against the reference truncation."""
    _check_refusal(pair)
    if cfg is None:
        cfg = default_config(pair)
    primary = _ground(pair, cfg.n_max)
    reference = _ground(pair, cfg.reference_n_max)
    shift = _certify(primary, reference, cfg.convergence_tol)
    return FockState(primary.kind, primary.data, pair, primary.beta, primary.n_max,
                     primary.energy, reference, shift, cfg.convergence_tol)


def thermal_state(pair: OscillatorPair, temp: Temperature,
                  cfg: FockConfig | None = None) -> FockState:
    """Gibbs state from the full spectrum of the truncated Hamiltonian.

    ``beta = inf`` is replaced by beta * omega_minus = 50, estimated from the
    lowest oracle gap so that no closed form enters.
    """
    _check_refusal(pair)
    if cfg is None:
        cfg = default_config(pair)
    beta = temp.beta
    if math.isinf(beta):
        levels = spectrum(pair, cfg, k=2)
        beta = GROUND_BETA_OMEGA / (levels[1] - levels[0])
    primary = _gibbs(pair, beta, cfg.n_max)
    reference = _gibbs(pair, beta, cfg.reference_n_max)
    shift = _certify(primary, reference, cfg.convergence_tol)
    return FockState(primary.kind, primary.data, pair, beta, primary.n_max,
                     primary.energy, reference, shift, cfg.convergence_tol)


def second_moments(state: FockState) -> np.ndarray:
    """Symmetrised covariance of (x_a, x_b, p_a, p_b) with x = (a + a^dag)/2."""
    ops = _quadratures(state.n_max)
    means = np.array([state.expect(op).real for op in ops])
    cov = np.empty((4, 4))
    for i in range(4):
        for j in range(i, 4):
            anti = ops[i] @ ops[j] + ops[j] @ ops[i]
            cov[i, j] = cov[j, i] = 0.5 * state.expect(anti).real - means[i] * means[j]
    return cov


def oracle_duan(state: FockState) -> float:
    """Var(x_a + x_b) + Var(p_a - p_b) from operator expectation values."""
    ops = _quadratures(state.n_max)
    u = ops[0] + ops[1]
    v = ops[2] - ops[3]
    total = 0.0
    for op in (u, v):
        mean = state.expect(op).real
        total += state.expect(op @ op).real - mean * mean
    return total


def _trace_norm_pt(state):
    n = state.n_max
    if state.kind == "pure":
        # ||rho^T_b||_1 = (sum of Schmidt coefficients)^2
        schmidt = np.linalg.svd(state.data.reshape(n, n), compute_uv=False)
        return float(np.sum(schmidt)) ** 2
    pt = state.data.reshape(n, n, n, n).transpose(0, 3, 2, 1).reshape(n * n, n * n)
    total = 0.0
    for idx in _parity_blocks(n):
        total += float(np.sum(np.abs(np.linalg.eigvalsh(pt[np.ix_(idx, idx)]))))
    return total


def partial_transpose(state: FockState) -> np.ndarray:
    """Density matrix transposed on mode b."""
    n = state.n_max
    rho = state.density_matrix()
    return rho.reshape(n, n, n, n).transpose(0, 3, 2, 1).reshape(n * n, n * n)


def _log_negativity(state):
    return max(0.0, math.log2(_trace_norm_pt(state)))


def oracle_log_negativity(state: FockState) -> float:
    """log2 of the trace norm of the partial transpose, certified on the reference."""
    value = _log_negativity(state)
    if state.reference is not None:
        tol = state.convergence_tol
        ref = _log_negativity(state.reference)
        if not abs(value - ref) < tol:
            raise ConvergenceError(
                f"log-negativity moved from {value!r} to {ref!r} between n_max={state.n_max} "
                f"and n_max={state.reference.n_max}",
                estimates=(value, ref),
            )
    return value


def dressed_operators(transform: SymplecticTransform, n_max: int):
    """Sparse c and d built from Bogoliubov coefficients on (a, a^dag, b, b^dag)."""
    A, B = _ladder_ops(n_max)
    basis = (A, A.T.tocsr(), B, B.T.tocsr())
    c = sum(coef * op for coef, op in zip(transform.c, basis))
    d = sum(coef * op for coef, op in zip(transform.d, basis))
    return c.tocsr(), d.tocsr()


def mode_occupation(state: FockState, transform: SymplecticTransform) -> tuple[float, float]:
    """(<c^dag c>, <d^dag d>) in the given state."""
    c, d = dressed_operators(transform, state.n_max)
    return (state.expect(c.T @ c).real, state.expect(d.T @ d).real)
