"""Independent reference implementations the tests check against.

Everything here is written the slow, obvious way (explicit loops,
exhaustive path enumeration, textbook formulas) so that expected values
never share a code path with the implementations under test.
"""

from __future__ import annotations

import math

import numpy as np


def dtw_brute_force(a: np.ndarray, b: np.ndarray) -> float:
    """Minimum-cost monotone alignment found by enumerating every path.

    Exponential in the frame counts; callers keep both sides at six
    frames or fewer.
    """
    a = np.asarray(a, dtype=np.float64)
    b = np.asarray(b, dtype=np.float64)
    n, m = a.shape[0], b.shape[0]
    # Local Euclidean distances, computed with explicit loops.
    dist = [[0.0] * m for _ in range(n)]
    for i in range(n):
        for j in range(m):
            acc = 0.0
            for k in range(a.shape[1]):
                diff = float(a[i, k]) - float(b[j, k])
                acc += diff * diff
            dist[i][j] = math.sqrt(acc)

    best = [math.inf]

    def walk(i: int, j: int, acc: float) -> None:
        acc += dist[i][j]
        if acc >= best[0]:
            return
        if i == n - 1 and j == m - 1:
            best[0] = acc
            return
        if i + 1 < n and j + 1 < m:
            walk(i + 1, j + 1, acc)
        if i + 1 < n:
            walk(i + 1, j, acc)
        if j + 1 < m:
            walk(i, j + 1, acc)

    walk(0, 0, 0.0)
    return best[0]


def _solve_gauss(mat: list[list[float]], rhs: list[float]) -> list[float]:
    """Gaussian elimination with partial pivoting, no numpy."""
    k = len(rhs)
    aug = [row[:] + [rhs[i]] for i, row in enumerate(mat)]
    for col in range(k):
        pivot = max(range(col, k), key=lambda r: abs(aug[r][col]))
        if abs(aug[pivot][col]) < 1e-300:
            raise ZeroDivisionError("singular system")
        aug[col], aug[pivot] = aug[pivot], aug[col]
        for r in range(k):
            if r == col:
                continue
            f = aug[r][col] / aug[col][col]
            for c in range(col, k + 1):
                aug[r][c] -= f * aug[col][c]
    return [aug[r][k] / aug[r][r] for r in range(k)]


def _invert(mat: list[list[float]]) -> list[list[float]]:
    k = len(mat)
    cols = []
    for j in range(k):
        e = [1.0 if i == j else 0.0 for i in range(k)]
        cols.append(_solve_gauss(mat, e))
    return [[cols[j][i] for j in range(k)] for i in range(k)]


class NewtonLogistic:
    """Loop-based Newton-Raphson logistic regression with an intercept.

    Gradient and Hessian are accumulated one observation at a time;
    convergence is declared when the gradient max-norm drops below tol.
    """

    def __init__(self, x: np.ndarray, y: np.ndarray, tol: float = 1e-8, max_iter: int = 100):
        self.x = np.asarray(x, dtype=np.float64)
        self.y = np.asarray(y, dtype=np.float64)
        n, p = self.x.shape
        k = p + 1
        beta = [0.0] * k
        converged = False
        iterations = 0
        for _ in range(max_iter):
            iterations += 1
            grad = [0.0] * k
            hess = [[0.0] * k for _ in range(k)]
            for i in range(n):
                row = [1.0] + [float(self.x[i, j]) for j in range(p)]
                z = sum(b * v for b, v in zip(beta, row))
                mu = 1.0 / (1.0 + math.exp(-z)) if z > -700 else 0.0
                w = mu * (1.0 - mu)
                resid = float(self.y[i]) - mu
                for a in range(k):
                    grad[a] += resid * row[a]
                    for b in range(k):
                        hess[a][b] += w * row[a] * row[b]
            if max(abs(g) for g in grad) < tol:
                converged = True
                break
            step = _solve_gauss(hess, grad)
            beta = [b + s for b, s in zip(beta, step)]
        # One more gradient/Hessian pass at the final beta for the
        # convergence check and the covariance estimate.
        grad = [0.0] * k
        hess = [[0.0] * k for _ in range(k)]
        for i in range(n):
            row = [1.0] + [float(self.x[i, j]) for j in range(p)]
            z = sum(b * v for b, v in zip(beta, row))
            mu = 1.0 / (1.0 + math.exp(-z)) if z > -700 else 0.0
            w = mu * (1.0 - mu)
            for a in range(k):
                grad[a] += (float(self.y[i]) - mu) * row[a]
                for b in range(k):
                    hess[a][b] += w * row[a] * row[b]
        if max(abs(g) for g in grad) < tol:
            converged = True
        self.beta = beta
        self.converged = converged
        self.iterations = iterations
        cov = _invert(hess)
        self.std_err = [math.sqrt(max(cov[a][a], 0.0)) for a in range(k)]
        self.z = [
            beta[a] / self.std_err[a] if self.std_err[a] > 0 else math.inf
            for a in range(k)
        ]
        self.p_two_sided = [math.erfc(abs(zv) / math.sqrt(2.0)) for zv in self.z]

    def predicted_mean(self) -> float:
        n, p = self.x.shape
        total = 0.0
        for i in range(n):
            row = [1.0] + [float(self.x[i, j]) for j in range(p)]
            z = sum(b * v for b, v in zip(self.beta, row))
            total += 1.0 / (1.0 + math.exp(-z))
        return total / n


def vif_reference(columns: np.ndarray) -> list[float]:
    """VIF per column via explicit OLS of each column on the others."""
    x = np.asarray(columns, dtype=np.float64)
    n, p = x.shape
    if p == 1:
        return [1.0]
    out = []
    for j in range(p):
        target = x[:, j]
        others = np.column_stack([np.ones(n), np.delete(x, j, axis=1)])
        coef, *_ = np.linalg.lstsq(others, target, rcond=None)
        resid = target - others @ coef
        ss_res = float(resid @ resid)
        ss_tot = float(((target - target.mean()) ** 2).sum())
        # VIF = 1 / (1 - R^2) which reduces to ss_tot / ss_res.
        if ss_tot == 0.0 or ss_res <= 1e-12 * ss_tot:
            out.append(math.inf)
        else:
            out.append(ss_tot / ss_res)
    return out
