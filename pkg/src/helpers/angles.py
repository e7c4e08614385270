import math

import numpy as np
import numpy.typing as npt

TWO_PI = 2.0 * math.pi
HALF_PI = 0.5 * math.pi

FloatArray = npt.NDArray[np.float64]


def normalize_angle(alpha: float) -> float:
    wrapped = math.fmod(alpha, TWO_PI)
    if wrapped < 0.0:
        wrapped += TWO_PI
    return 0.0 if wrapped >= TWO_PI else wrapped


def unit_radial(alpha: float) -> tuple[float, float]:
    """Radial unit vector at angular position alpha, P(alpha) = C + r * (sin alpha, cos alpha)."""
    return math.sin(alpha), math.cos(alpha)


def axis_directions_between(alpha_a: float, alpha_b: float) -> list[float]:
    """Multiples of 90 degrees lying inside the closed interval spanned by the two angles."""
    low, high = min(alpha_a, alpha_b), max(alpha_a, alpha_b)
    first = math.ceil(low / HALF_PI - 1e-12)
    last = math.floor(high / HALF_PI + 1e-12)
    return [k * HALF_PI for k in range(first, last + 1)]


def generate_angle_grid(alpha_start: float, alpha_end: float, resolution: float) -> FloatArray:
    count = max(2, int(math.ceil(abs(alpha_end - alpha_start) / resolution)) + 1)
    return np.linspace(alpha_start, alpha_end, count)
