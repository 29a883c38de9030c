"""Small numerical kernels: adaptive Gauss-Legendre quadrature, dense linear
solves, and a damped Newton iteration with a finite-difference Jacobian."""

from __future__ import annotations

from typing import Callable, Optional

import numpy as np

_GL_ORDER = 10
_GL_NODES, _GL_WEIGHTS = np.polynomial.legendre.leggauss(_GL_ORDER)
_GL_NODES_LO, _GL_WEIGHTS_LO = np.polynomial.legendre.leggauss(_GL_ORDER // 2)


class QuadratureError(ArithmeticError):
    def __init__(self, message: str, estimate: float):
        super().__init__(message)
        self.estimate = estimate


class SingularMatrixError(ArithmeticError):
    def __init__(self, pivot: int):
        super().__init__(f"matrix is singular to working precision at pivot {pivot}")
        self.pivot = pivot


class NewtonError(ArithmeticError):
    def __init__(self, message: str, x: np.ndarray, residual: float, trace=()):
        super().__init__(f"{message} (|F|={residual:.3e})")
        self.x = x
        self.residual = residual
        self.trace = list(trace)


_ROUNDOFF = 50.0 * np.finfo(float).eps


def _panel(f, a, b):
    """Panel value, error estimate and the roundoff floor of that estimate."""
    half, mid = 0.5 * (b - a), 0.5 * (a + b)
    y = f(mid + half * _GL_NODES)
    hi = half * np.dot(_GL_WEIGHTS, y)
    lo = half * np.dot(_GL_WEIGHTS_LO, f(mid + half * _GL_NODES_LO))
    return hi, abs(hi - lo), _ROUNDOFF * half * np.dot(_GL_WEIGHTS, np.abs(y))


def quadrature(f: Callable, a: float, b: float, tol: float = 1e-12, max_depth: int = 40) -> float:
    """Integrate ``f`` over ``[a, b]`` by adaptive bisection of Gauss-Legendre panels.

    ``f`` must accept a numpy array of abscissae. Each panel is compared with
    a half-order rule; panels whose difference exceeds their share of ``tol``
    are bisected.

    Raises:
        QuadratureError: when a panel still fails after ``max_depth`` bisections;
            the exception carries the best estimate.
    """
    if b < a:
        raise ValueError("quadrature requires a <= b")
    if a == b:
        return 0.0
    f_vec = _vectorize(f)
    total = 0.0
    failed = False
    stack = [(a, b, 0)]
    width = b - a
    while stack:
        lo, hi, depth = stack.pop()
        value, err, floor = _panel(f_vec, lo, hi)
        share = tol * (hi - lo) / width
        # below the roundoff floor further bisection cannot help
        if err <= max(share, floor):
            total += value
        elif depth >= max_depth:
            total += value
            failed = True
        else:
            mid = 0.5 * (lo + hi)
            stack.append((mid, hi, depth + 1))
            stack.append((lo, mid, depth + 1))
    if failed:
        raise QuadratureError("quadrature did not converge", total)
    return total


def _vectorize(f):
    scalar = [False]

    def g(x):
        if not scalar[0]:
            try:
                y = np.asarray(f(x), dtype=float)
                if y.shape == np.shape(x):
                    return y
            except (TypeError, ValueError):
                pass
            scalar[0] = True
        return np.array([float(f(xi)) for xi in x])
    return g


def solve_linear(A, b) -> np.ndarray:
    """Gaussian elimination with partial pivoting.

    Raises:
        SingularMatrixError: naming the pivot column where elimination broke down.
    """
    M = np.array(A, dtype=float)
    x = np.array(b, dtype=float).reshape(-1)
    n = len(x)
    if M.shape != (n, n):
        raise ValueError(f"shape mismatch: A is {M.shape}, b has {n} entries")
    scale = np.max(np.abs(M)) if M.size else 0.0
    for k in range(n):
        p = k + int(np.argmax(np.abs(M[k:, k])))
        if abs(M[p, k]) <= 1e-14 * scale or scale == 0.0:
            raise SingularMatrixError(k)
        if p != k:
            M[[k, p]] = M[[p, k]]
            x[[k, p]] = x[[p, k]]
        factors = M[k + 1:, k] / M[k, k]
        M[k + 1:, k:] -= np.outer(factors, M[k, k:])
        x[k + 1:] -= factors * x[k]
    for k in range(n - 1, -1, -1):
        x[k] = (x[k] - M[k, k + 1:] @ x[k + 1:]) / M[k, k]
    return x


def fd_jacobian(F: Callable, x: np.ndarray, fx: Optional[np.ndarray] = None,
                rel_step: float = 1e-7) -> np.ndarray:
    """Forward-difference Jacobian with componentwise relative steps."""
    x = np.asarray(x, dtype=float)
    if fx is None:
        fx = np.atleast_1d(F(x))
    J = np.empty((len(fx), len(x)))
    for j in range(len(x)):
        h = rel_step * max(abs(x[j]), 1.0)
        xp = x.copy()
        xp[j] += h
        J[:, j] = (np.atleast_1d(F(xp)) - fx) / h
    return J


def find_root_nd(F: Callable, x0, tol: float = 1e-12, max_iter: int = 60,
                 max_halvings: int = 30) -> np.ndarray:
    """Damped Newton iteration for ``F(x) = 0``.

    The Jacobian is rebuilt by forward differences every iteration and the
    step is halved up to ``max_halvings`` times until ``|F|`` decreases.
    Returns ``x`` with ``|F(x)|_inf <= tol``.

    Raises:
        NewtonError: on stagnation or when ``max_iter`` is exhausted; carries the
            last iterate, its residual and the residual history.
    """
    x = np.atleast_1d(np.asarray(x0, dtype=float)).copy()
    fx = np.atleast_1d(np.asarray(F(x), dtype=float))
    norm = float(np.max(np.abs(fx)))
    trace = [norm]
    for _ in range(max_iter):
        if norm <= tol:
            return x
        J = fd_jacobian(F, x, fx)
        try:
            step = solve_linear(J, -fx)
        except SingularMatrixError as exc:
            raise NewtonError(f"singular Jacobian at pivot {exc.pivot}", x, norm, trace) from exc
        lam = 1.0
        for _ in range(max_halvings + 1):
            trial = x + lam * step
            ft = np.atleast_1d(np.asarray(F(trial), dtype=float))
            nt = float(np.max(np.abs(ft)))
            if np.isfinite(nt) and nt < norm:
                break
            lam *= 0.5
        else:
            raise NewtonError("line search failed", x, norm, trace)
        x, fx, norm = trial, ft, nt
        trace.append(norm)
    if norm <= tol:
        return x
    raise NewtonError("Newton did not converge", x, norm, trace)
