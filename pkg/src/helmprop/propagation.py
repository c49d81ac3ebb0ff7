"""Truncated-SVD factorization of H and the per-step field advancement.

The flattened operator is decomposed as ``U S V^T``; because H is symmetric,
each singular triplet is an eigenpair up to sign, and the signed eigenvalue
is recovered as ``lambda_q = sigma_q * sign(u_q . v_q)``.  The one-step
propagator ``exp(i dz sqrt(H))`` is applied in the truncated basis: the
right tensor (phase-multiplied rows of V) projects the field onto the
retained modes, the left tensor (columns of U) reassembles it.

The square root uses the principal branch with a non-negative imaginary
part, so negative (evanescent) eigenvalues yield decaying factors
``exp(-dz sqrt(|lambda|))`` — never growth.
"""

from dataclasses import dataclass

import numpy as np

from .fields import Field, Grid
from .validation import check_grids_match, check_positive

__all__ = [
    "PropagatorFactors",
    "signed_spectrum",
    "factorize",
    "step",
    "perturbative_phase",
]


@dataclass(frozen=True, eq=False)
class PropagatorFactors:
    """Truncated factors of ``exp(i dz sqrt(H))`` for one step length.

    ``left[i, j, q]`` and ``right[i, j, q]`` are the q-th retained left and
    right singular vectors restored to grid shape; the per-mode phase
    ``exp(i dz sqrt(lambda_q))`` is folded into ``right``.
    """

    grid: Grid
    n_singular: int
    left: np.ndarray
    right: np.ndarray
    singular_values: np.ndarray
    signed_eigenvalues: np.ndarray
    step_length: float

    def __post_init__(self):
        n = self.grid.n_points
        k = int(self.n_singular)
        if not 1 <= k <= n * n:
            raise ValueError(
                f"n_singular must lie in [1, {n * n}], got {self.n_singular}"
            )
        object.__setattr__(self, "n_singular", k)
        object.__setattr__(
            self, "step_length", check_positive("step_length", self.step_length)
        )
        left = np.asarray(self.left, dtype=np.float64)
        right = np.asarray(self.right, dtype=np.complex128)
        sigmas = np.asarray(self.singular_values, dtype=np.float64)
        lams = np.asarray(self.signed_eigenvalues, dtype=np.float64)
        if left.shape != (n, n, k) or right.shape != (n, n, k):
            raise ValueError("left/right tensors must have shape (N, N, n_singular)")
        if sigmas.shape != (k,) or lams.shape != (k,):
            raise ValueError("spectra must have shape (n_singular,)")
        if np.any(sigmas < 0.0) or np.any(np.diff(sigmas) > 0.0):
            raise ValueError("singular values must be non-negative and descending")
        if not np.allclose(np.abs(lams), sigmas, rtol=1e-12, atol=0.0):
            raise ValueError("each |signed eigenvalue| must equal its singular value")
        for name, arr in (
            ("left", left),
            ("right", right),
            ("singular_values", sigmas),
            ("signed_eigenvalues", lams),
        ):
            arr = arr.copy()
            arr.setflags(write=False)
            object.__setattr__(self, name, arr)


def signed_spectrum(u_column, sigma, v_row):
    """Recover the signed eigenvalue ``sigma * sign(u . v)`` of one triplet.

    For a symmetric matrix the left and right singular vectors of a triplet
    are equal up to the eigenvalue's sign; their dot product exposes it.
    A zero dot product (numerically zero sigma) defaults to +1.
    """
    u = np.asarray(u_column, dtype=np.float64)
    v = np.asarray(v_row, dtype=np.float64)
    if u.shape != v.shape:
        raise ValueError("u_column and v_row must have the same length")
    if sigma < 0.0:
        raise ValueError(f"sigma must be non-negative, got {sigma}")
    for name, vec in (("u_column", u), ("v_row", v)):
        norm = float(np.linalg.norm(vec))
        if abs(norm - 1.0) > 1e-8:
            raise ValueError(f"{name} must be unit-normalized, |{name}| = {norm}")
    sign = 1.0 if float(np.dot(u, v)) >= 0.0 else -1.0
    return float(sigma) * sign


def factorize(op, n_singular, step_length):
    """Factorize an operator into truncated propagation tensors.

    Computes the full SVD of ``op.entries``, keeps the ``n_singular``
    largest triplets, recovers their signed eigenvalues, and folds the phase
    factors ``exp(i dz sqrt(lambda_q))`` into the right tensor.
    """
    n = op.grid.n_points
    dim = n * n
    if not 1 <= int(n_singular) <= dim:
        raise ValueError(f"n_singular must lie in [1, {dim}], got {n_singular}")
    k = int(n_singular)
    step_length = check_positive("step_length", step_length)

    u, sigmas, vh = np.linalg.svd(op.entries)
    lams = np.array(
        [signed_spectrum(u[:, q], sigmas[q], vh[q]) for q in range(k)]
    )
    phases = np.exp(1j * step_length * np.sqrt(lams.astype(np.complex128)))

    left = u[:, :k].reshape((n, n, k), order="F")
    right = vh[:k].T.reshape((n, n, k), order="F") * phases
    return PropagatorFactors(
        grid=op.grid,
        n_singular=k,
        left=left,
        right=right,
        singular_values=sigmas[:k],
        signed_eigenvalues=lams,
        step_length=step_length,
    )


def step(factors, field):
    """Advance a field by one step length in the truncated singular basis.

    ``c_q = sum_ij right[i, j, q] E[i, j]`` projects onto the retained
    modes; ``out[i, j] = sum_q left[i, j, q] c_q`` reassembles the advanced
    field.  The output is complex even for real input.
    """
    check_grids_match(factors, field)
    coefficients = np.tensordot(field.values, factors.right, axes=([0, 1], [0, 1]))
    advanced = np.tensordot(factors.left, coefficients, axes=([2], [0]))
    return Field(factors.grid, advanced)


def perturbative_phase(field, delta_n, k0, step_length):
    """Apply the thin-medium phase ``exp(i dz k0 delta_n)`` pointwise.

    ``delta_n`` is a refractive-index difference map (not squared); the
    elementwise amplitude is unchanged.
    """
    k0 = check_positive("k0", k0)
    step_length = check_positive("step_length", step_length)
    delta_n = np.asarray(delta_n, dtype=np.float64)
    if delta_n.shape != field.values.shape:
        raise ValueError(
            f"delta_n shape {delta_n.shape} does not match field "
            f"{field.values.shape}"
        )
    return Field(
        field.grid, field.values * np.exp(1j * step_length * k0 * delta_n)
    )
