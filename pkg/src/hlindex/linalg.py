"""Dense eigenvalue and determinant routines.

Real symmetric matrices go through Householder tridiagonalization followed by
implicit-shift QL on the tridiagonal form (eigenvalues only). Hermitian
matrices are mapped to the real symmetric embedding ``[[Re, -Im], [Im, Re]]``,
whose spectrum is the Hermitian spectrum with every value doubled.

Spectra are returned as 1-d float arrays sorted in descending order.
"""

from __future__ import annotations

import math

import numpy as np

EPS = np.finfo(float).eps
MAX_SWEEPS = 60


class ConvergenceError(RuntimeError):
    pass


def tridiagonalize(a: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Reduce a real symmetric matrix to tridiagonal form.

    Returns ``(d, e)`` with the diagonal ``d`` and the subdiagonal in
    ``e[:n-1]``; ``e[n-1]`` is zero.
    """
    A = np.array(a, dtype=float, copy=True)
    n = A.shape[0]
    e = np.zeros(n)
    for k in range(n - 2):
        x = A[k + 1 :, k].copy()
        alpha = math.sqrt(float(x @ x))
        if alpha == 0.0:
            continue
        if x[0] > 0:
            alpha = -alpha
        v = x
        v[0] -= alpha
        v /= math.sqrt(float(v @ v))
        S = A[k + 1 :, k + 1 :]
        p = S @ v
        w = p - float(v @ p) * v
        S -= 2.0 * (np.outer(v, w) + np.outer(w, v))
        e[k] = alpha
    if n >= 2:
        e[n - 2] = A[n - 1, n - 2]
    return np.diag(A).copy(), e


def tridiagonal_eigenvalues(d: np.ndarray, e: np.ndarray) -> np.ndarray:
    """Implicit-shift QL on a symmetric tridiagonal matrix; values unsorted."""
    d = [float(x) for x in d]
    e = [float(x) for x in e]
    n = len(d)
    for l in range(n):
        sweeps = 0
        while True:
            m = l
            while m < n - 1:
                if abs(e[m]) <= EPS * (abs(d[m]) + abs(d[m + 1])):
                    break
                m += 1
            if m == l:
                break
            sweeps += 1
            if sweeps > MAX_SWEEPS:
                raise ConvergenceError(f"QL did not converge for eigenvalue {l} after {MAX_SWEEPS} sweeps")
            g = (d[l + 1] - d[l]) / (2.0 * e[l])
            r = math.hypot(g, 1.0)
            g = d[m] - d[l] + e[l] / (g + math.copysign(r, g))
            s = c = 1.0
            p = 0.0
            deflated = False
            for i in range(m - 1, l - 1, -1):
                f = s * e[i]
                b = c * e[i]
                r = math.hypot(f, g)
                e[i + 1] = r
                if r == 0.0:
                    d[i + 1] -= p
                    e[m] = 0.0
                    deflated = True
                    break
                s = f / r
                c = g / r
                g = d[i + 1] - p
                r = (d[i] - g) * s + 2.0 * c * b
                p = s * r
                d[i + 1] = g + p
                g = c * r - b
            if deflated:
                continue
            d[l] -= p
            e[l] = g
            e[m] = 0.0
    return np.array(d)


def _as_symmetric(M) -> np.ndarray:
    A = np.asarray(M, dtype=float)
    if A.ndim != 2 or A.shape[0] != A.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {A.shape}")
    if not np.all(np.isfinite(A)):
        raise ValueError("matrix has non-finite entries")
    return (A + A.T) / 2.0


def symmetric_spectrum(M) -> np.ndarray:
    A = _as_symmetric(M)
    if A.shape[0] == 0:
        return np.zeros(0)
    d, e = tridiagonalize(A)
    return np.sort(tridiagonal_eigenvalues(d, e))[::-1]


def radius_bound(M) -> float:
    """Max absolute row sum, an upper bound on the spectral radius."""
    M = np.asarray(M)
    return float(np.max(np.sum(np.abs(M), axis=1))) if M.size else 0.0


def hermitian_spectrum(H) -> np.ndarray:
    H = np.asarray(H, dtype=complex)
    if H.ndim != 2 or H.shape[0] != H.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {H.shape}")
    scale = 1.0 + radius_bound(H)
    if np.max(np.abs(H - H.conj().T), initial=0.0) > 1e-12 * scale:
        raise ValueError("matrix is not Hermitian")
    if not np.any(H.imag):
        return symmetric_spectrum(H.real)
    H = (H + H.conj().T) / 2.0
    re, im = H.real, H.imag
    doubled = symmetric_spectrum(np.block([[re, -im], [im, re]]))
    gap = np.max(np.abs(doubled[0::2] - doubled[1::2]), initial=0.0)
    if gap > 1e-9 * scale:
        raise ConvergenceError(f"real embedding eigenvalues failed to pair up (gap {gap:.3g})")
    return doubled[0::2].copy()


def complex_determinant(M) -> complex:
    """Determinant by row-pivoted Gaussian elimination."""
    A = np.array(M, dtype=complex, copy=True)
    n = A.shape[0]
    det = 1.0 + 0.0j
    for k in range(n):
        piv = k + int(np.argmax(np.abs(A[k:, k])))
        if A[piv, k] == 0:
            return 0j
        if piv != k:
            A[[k, piv]] = A[[piv, k]]
            det = -det
        det *= A[k, k]
        A[k + 1 :, k:] -= np.outer(A[k + 1 :, k] / A[k, k], A[k, k:])
    return complex(det)


def max_discrepancy(S, T) -> float:
    """Largest elementwise gap between two spectra after descending sort."""
    S = np.sort(np.asarray(S, dtype=float))[::-1]
    T = np.sort(np.asarray(T, dtype=float))[::-1]
    if S.shape != T.shape:
        return math.inf
    return float(np.max(np.abs(S - T), initial=0.0))


def multiset_close(S, T, tol: float) -> bool:
    return max_discrepancy(S, T) <= tol
