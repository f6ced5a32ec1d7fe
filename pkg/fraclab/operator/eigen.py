"""
Smallest eigenpairs of A φ = λ M φ by block inverse iteration with
Rayleigh-Ritz steps and M-orthogonal deflation of converged vectors.
"""

import csv
import io
import logging
from dataclasses import dataclass
from typing import List, Sequence

import numpy as np
from scipy.linalg import cho_factor, cho_solve, eigh

from fraclab.error import EigenSolverError
from fraclab.geometry import GridFunction
from fraclab.operator.assembly import StiffnessForm

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class EigenOptions:
    tol: float = 1e-10
    max_iter: int = 2000
    shift: float = 0.0
    padding: int = 4
    seed: int = 0


@dataclass(frozen=True)
class EigenPair:
    """Eigenvalue, M-normalized eigenfunction and relative residual."""
    index: int
    eigenvalue: float
    eigenfunction: GridFunction
    residual: float


def _relative_residuals(A, M, X, vals) -> np.ndarray:
    AX = A @ X
    R = AX - (M @ X) * vals
    return np.linalg.norm(R, axis=0) / np.maximum(np.linalg.norm(AX, axis=0), 1e-300)


def _m_orthonormalize(X: np.ndarray, M: np.ndarray) -> np.ndarray:
    G = X.T @ M @ X
    w, V = eigh(0.5 * (G + G.T))
    keep = w > 1e-14 * w.max()
    return X @ (V[:, keep] / np.sqrt(w[keep]))


def _orient(vec: np.ndarray) -> np.ndarray:
    total = vec.sum()
    if abs(total) > 1e-8 * np.abs(vec).sum():
        return vec if total > 0 else -vec
    return vec if vec[np.argmax(np.abs(vec))] > 0 else -vec


def eigenpairs(form: StiffnessForm, count: int, options: EigenOptions = EigenOptions()) -> List[EigenPair]:
    """
    The ``count`` smallest generalized eigenpairs of (A, M), ascending.

    Eigenfunctions are M-normalized and oriented so their nodal sum is
    positive.

    Raises:
        ValueError: If count is not in [1, number of interior nodes).
        EigenSolverError: If the residuals do not reach ``options.tol``.
    """
    A, M = form.A, form.M
    n = form.size
    if not 1 <= count < n:
        raise ValueError(f"count must lie in [1, {n}), got {count}")
    rng = np.random.default_rng(options.seed)
    factor = cho_factor(A - options.shift * M)
    block = min(n - 1, count + options.padding)
    locked = np.zeros((n, 0))
    locked_vals: List[float] = []
    X = _m_orthonormalize(rng.standard_normal((n, block)), M)
    residuals = np.full(block, np.inf)

    for it in range(options.max_iter):
        Y = cho_solve(factor, M @ X)
        if locked.shape[1]:
            Y -= locked @ (locked.T @ (M @ Y))
        Y = _m_orthonormalize(Y, M)
        vals, vecs = eigh(Y.T @ A @ Y, Y.T @ M @ Y)
        X = Y @ vecs
        residuals = _relative_residuals(A, M, X, vals)
        needed = count - locked.shape[1]
        done = 0
        while done < min(needed, len(vals)) and residuals[done] <= options.tol:
            done += 1
        if done:
            locked = np.hstack([locked, X[:, :done]])
            locked_vals.extend(vals[:done].tolist())
            logger.debug(f"Inverse iteration {it}: locked {locked.shape[1]}/{count}, lambda={vals[:done]}")
        if locked.shape[1] >= count:
            break
        fresh = rng.standard_normal((n, done))
        X = np.hstack([X[:, done:], fresh]) if done else X
    else:
        logger.error(f"Inverse iteration stalled with residuals {residuals[:count]}")
        raise EigenSolverError(
            f"inverse iteration did not converge in {options.max_iter} steps",
            residuals=residuals[: count - locked.shape[1]].tolist(),
        )

    order = np.argsort(locked_vals)[:count]
    vals = np.asarray(locked_vals)[order]
    vecs = locked[:, order]
    final = _relative_residuals(A, M, vecs, vals)
    pairs = []
    for i in range(count):
        vec = _orient(vecs[:, i])
        vec = vec / np.sqrt(vec @ M @ vec)
        pairs.append(EigenPair(i + 1, float(vals[i]), GridFunction.from_interior(form.mesh, vec), float(final[i])))
    logger.info(f"Computed {count} eigenpairs, lambda_1={vals[0]:.6g}")
    return pairs


def eigenpairs_csv(pairs: Sequence[EigenPair]) -> str:
    """CSV with columns index, lambda, residual."""
    buf = io.StringIO()
    writer = csv.writer(buf)
    writer.writerow(["index", "lambda", "residual"])
    for p in pairs:
        writer.writerow([p.index, repr(p.eigenvalue), repr(p.residual)])
    return buf.getvalue()
