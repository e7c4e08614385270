"""Circularity and radial-deviation indexes of sampled XY trajectories.

Deviations are signed, outward positive. G is the band width of the deviations about the
least-squares circle, which allows it to be evaluated without a minimum-zone search.
"""
import logging

import numpy as np
import numpy.typing as npt
from scipy.optimize import least_squares

from config import LOGGER_NAME
from models.metrics import CircleFit, CircularityReport
from services.exceptions import DegenerateFitError

logger = logging.getLogger(LOGGER_NAME)

FloatArray = npt.NDArray[np.float64]

CONDITION_LIMIT = 1e-12
REFINE_MAX_EVALUATIONS = 200


def _as_points(points: npt.ArrayLike) -> FloatArray:
    array = np.asarray(points, dtype=np.float64)
    if array.ndim != 2 or array.shape[1] != 2:
        raise DegenerateFitError(f"Expected an (n, 2) array of points, got shape {array.shape}.")
    if array.shape[0] < 3:
        raise DegenerateFitError()
    if not np.all(np.isfinite(array)):
        raise DegenerateFitError("Points contain non-finite coordinates.")
    return array


def _radial_residuals(params: FloatArray, xy: FloatArray) -> FloatArray:
    cx, cy, r = params
    return np.hypot(xy[:, 0] - cx, xy[:, 1] - cy) - r


def _algebraic_seed(xy: FloatArray) -> FloatArray:
    # Solve x^2 + y^2 + D x + E y + F = 0 on mean-centered data.
    origin = xy.mean(axis=0)
    local = xy - origin
    design = np.column_stack([local, np.ones(len(local))])
    rhs = -(local**2).sum(axis=1)
    solution, _, rank, singular = np.linalg.lstsq(design, rhs, rcond=None)
    if rank < 3 or singular[-1] <= CONDITION_LIMIT * singular[0]:
        raise DegenerateFitError()
    d, e, f = solution
    cx, cy = -0.5 * d, -0.5 * e
    r_squared = cx * cx + cy * cy - f
    if r_squared <= 0:
        raise DegenerateFitError()
    return np.array([cx + origin[0], cy + origin[1], np.sqrt(r_squared)])


def fit_circle(points: npt.ArrayLike) -> CircleFit:
    """Least-squares circle: algebraic seed refined by geometric Levenberg-Marquardt."""
    xy = _as_points(points)
    seed = _algebraic_seed(xy)
    best = seed
    best_cost = float(np.sum(_radial_residuals(seed, xy) ** 2))

    if len(xy) > 3:
        scale = max(float(seed[2]), 1e-12)
        refined = least_squares(
            _radial_residuals, seed, args=(xy,), method='lm',
            xtol=1e-12 / scale, ftol=1e-15, max_nfev=REFINE_MAX_EVALUATIONS,
        )
        refined_cost = float(np.sum(_radial_residuals(refined.x, xy) ** 2))
        if refined_cost <= best_cost and refined.x[2] > 0:
            best, best_cost = refined.x, refined_cost

    rms = float(np.sqrt(best_cost / len(xy)))
    logger.debug(f"Circle fit: center ({best[0]:.6g}, {best[1]:.6g}) m, radius {best[2]:.6g} m, rms {rms:.3e} m")
    return CircleFit(center=(float(best[0]), float(best[1])), radius=float(best[2]), rms_residual=rms)


def radial_deviation(points: npt.ArrayLike, nominal_center: tuple[float, float],
                     nominal_radius: float) -> tuple[float, float, FloatArray]:
    if nominal_radius <= 0:
        raise ValueError("nominal radius must be positive")
    xy = np.asarray(points, dtype=np.float64)
    series = np.hypot(xy[:, 0] - nominal_center[0], xy[:, 1] - nominal_center[1]) - nominal_radius
    return float(series.max()), float(series.min()), series


def circularity_g(points: npt.ArrayLike) -> float:
    fit = fit_circle(points)
    f_max, f_min, _ = radial_deviation(points, fit.center, fit.radius)
    return f_max - f_min


def circularity_report(points: npt.ArrayLike, nominal_center: tuple[float, float] | None = None,
                       nominal_radius: float | None = None) -> CircularityReport:
    """G about the fitted circle, F indexes about the nominal circle.

    The nominal circle falls back to the fitted one for whatever is not supplied.
    """
    fit = fit_circle(points)
    fit_max, fit_min, _ = radial_deviation(points, fit.center, fit.radius)

    center = nominal_center if nominal_center is not None else fit.center
    radius = nominal_radius if nominal_radius is not None else fit.radius
    f_max, f_min, series = radial_deviation(points, center, radius)

    return CircularityReport(
        g=fit_max - fit_min,
        f_max=f_max,
        f_min=f_min,
        deviations=tuple(float(value) for value in series),
        center=center,
        radius=radius,
        center_from_fit=nominal_center is None,
        radius_from_fit=nominal_radius is None,
    )
