from decimal import Decimal

MM_MIN_PER_M_S = Decimal(60000)
MM_PER_M = Decimal(1000)
MS_PER_S = Decimal(1000)


def _scale(value: float, factor: Decimal, inverse: bool = False) -> float:
    # Decimal arithmetic on the shortest repr keeps file <-> SI conversions bit-exact.
    exact = Decimal(repr(value))
    return float(exact / factor if inverse else exact * factor)


def mm_min_to_m_s(value: float) -> float:
    return _scale(value, MM_MIN_PER_M_S, inverse=True)


def m_s_to_mm_min(value: float) -> float:
    return _scale(value, MM_MIN_PER_M_S)


def mm_to_m(value: float) -> float:
    return _scale(value, MM_PER_M, inverse=True)


def m_to_mm(value: float) -> float:
    return _scale(value, MM_PER_M)


def ms_to_s(value: float) -> float:
    return _scale(value, MS_PER_S, inverse=True)


def s_to_ms(value: float) -> float:
    return _scale(value, MS_PER_S)
