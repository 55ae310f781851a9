# This source code is licensed under the MIT License
# found in the LICENSE file in the root directory of this source tree.

import logging
import math
from dataclasses import dataclass

import numpy as np
from scipy import optimize

logger = logging.getLogger("omegafull")

_LOWER = 1e-12
_UPPER = 50.0
_XTOL = 1e-12


def _upper_bracket(beta: float) -> float:
    # the root sits near 1/β when β is small
    return max(_UPPER, 2.0 / beta)


def _check_beta(beta: float) -> None:
    if not 0.0 < beta < 1.0:
        raise ValueError(f"β must lie in (0, 1), got {beta}")


def temme_x(beta: float) -> float:
    """Positive root of βx = 1 - e^(-x)."""
    _check_beta(beta)
    return optimize.bisect(
        lambda x: beta * x + math.expm1(-x),
        _LOWER,
        _upper_bracket(beta),
        xtol=_XTOL,
        maxiter=500,
    )


def _temme_a(beta, x):
    return -np.log(x) + beta * np.log(np.expm1(x)) - (1 - beta) + (1 - beta) * np.log(1 / beta - 1)


def temme_M(beta: float) -> float:
    """M[β] = e^(a-β) (β/(1-β))^(1-β); M[1] = 1/e."""
    if beta == 1.0:
        return 1 / math.e
    _check_beta(beta)
    x = temme_x(beta)
    a = float(_temme_a(beta, x))
    return math.exp(a - beta) * (beta / (1 - beta)) ** (1 - beta)


def _temme_x_grid(beta: np.ndarray) -> np.ndarray:
    """Vectorised bisection with the same bracket and tolerance as `temme_x`."""
    low = np.full_like(beta, _LOWER)
    high = np.maximum(_UPPER, 2.0 / beta)
    while np.max(high - low) > _XTOL:
        mid = 0.5 * (low + high)
        negative = beta * mid + np.expm1(-mid) < 0
        low = np.where(negative, mid, low)
        high = np.where(negative, high, mid)
    return 0.5 * (low + high)


def _temme_M_grid(beta: np.ndarray) -> np.ndarray:
    result = np.full_like(beta, 1 / math.e)
    inner = beta < 1.0 - 1e-12
    b = beta[inner]
    x = _temme_x_grid(b)
    result[inner] = np.exp(_temme_a(b, x) - b) * (b / (1 - b)) ** (1 - b)
    return result


def _h_grid(beta: np.ndarray, gamma: np.ndarray) -> np.ndarray:
    return (1 - beta) ** (beta - 1) * _temme_M_grid(gamma / beta) ** beta * gamma ** (1 - beta)


def _check_point(beta: float, gamma: float) -> None:
    if not (0.0 < gamma <= beta < 1.0):
        raise ValueError(f"need 0 < γ <= β < 1, got β={beta}, γ={gamma}")


def h(beta: float, gamma: float) -> float:
    """(1-β)^(β-1) · M[γ/β]^β · γ^(1-β)."""
    _check_point(beta, gamma)
    return (1 - beta) ** (beta - 1) * temme_M(min(gamma / beta, 1.0)) ** beta * gamma ** (1 - beta)


@dataclass(frozen=True)
class AsymptoticPoint:
    beta: float
    gamma: float
    x: float
    a: float
    M: float
    h: float


def asymptotic_point(beta: float, gamma: float) -> AsymptoticPoint:
    _check_point(beta, gamma)
    ratio = min(gamma / beta, 1.0)
    if ratio < 1.0:
        x = temme_x(ratio)
        a = float(_temme_a(ratio, x))
    else:
        x, a = 0.0, 0.0
    return AsymptoticPoint(beta, gamma, x, a, temme_M(ratio), h(beta, gamma))


def _best_on_grid(betas: np.ndarray, gammas: np.ndarray):
    beta, gamma = np.meshgrid(betas, gammas, indexing="ij")
    valid = (gamma > 0) & (gamma <= beta) & (beta > 0) & (beta < 1)
    values = np.full(beta.shape, -np.inf)
    values[valid] = _h_grid(beta[valid], gamma[valid])
    i, j = np.unravel_index(np.argmax(values), values.shape)
    return float(beta[i, j]), float(gamma[i, j]), float(values[i, j])


def maximize_h(grid_step: float = 1e-3, refine_iters: int = 3) -> AsymptoticPoint:
    """Grid search over 0 < γ <= β < 1, then rounds of 10x finer local grids
    and a bounded polish with scipy.optimize."""
    if not 0 < grid_step < 0.5:
        raise ValueError(f"grid step must lie in (0, 0.5), got {grid_step}")
    axis = np.arange(grid_step, 1.0, grid_step)
    beta, gamma, value = _best_on_grid(axis, axis)
    logger.debug(f"grid maximum h={value:.6f} at β={beta:.4f}, γ={gamma:.4f}")
    step = grid_step
    for _ in range(refine_iters):
        fine = step / 10
        betas = np.clip(np.arange(beta - step, beta + step + fine / 2, fine), fine, 1 - fine)
        gammas = np.clip(np.arange(gamma - step, gamma + step + fine / 2, fine), fine, 1 - fine)
        beta, gamma, value = _best_on_grid(betas, gammas)
        step = fine

    def negative(point):
        b, g = point
        if not (0 < g <= b < 1):
            return 0.0
        return -h(b, g)

    bounds = [(beta - step, min(beta + step, 1 - 1e-9)), (max(gamma - step, 1e-9), gamma + step)]
    polished = optimize.minimize(negative, x0=[beta, gamma], method="L-BFGS-B", bounds=bounds)
    if polished.success and -polished.fun > value and 0 < polished.x[1] <= polished.x[0] < 1:
        beta, gamma = float(polished.x[0]), float(polished.x[1])
    point = asymptotic_point(beta, gamma)
    logger.info(f"h maximum {point.h:.4f} at β={point.beta:.4f}, γ={point.gamma:.4f}")
    return point
