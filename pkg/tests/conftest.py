import math
from pathlib import Path

import numpy as np
import pytest

from helpers.angles import TWO_PI
from models.machine import MachineParameters
from models.toolpath import ArcBlock, Direction
from services.machine_loader import load_machine

ROOT = Path(__file__).resolve().parent.parent
MIKRON_FILE = ROOT / 'machines' / 'mikron_ucp710.json'


@pytest.fixture(scope='session')
def mikron() -> MachineParameters:
    return load_machine(MIKRON_FILE)


@pytest.fixture
def rng() -> np.random.Generator:
    return np.random.default_rng(20070412)


def full_circle(radius_mm: float, feed_m_min: float, direction: Direction = Direction.CCW,
                start_deg: float = 0.0) -> ArcBlock:
    alpha_start = math.radians(start_deg)
    return ArcBlock(
        center=(0.0, 0.0),
        r=radius_mm / 1000.0,
        alpha_start=alpha_start,
        alpha_end=alpha_start + direction.sign * TWO_PI,
        direction=direction,
        v_prog=feed_m_min / 60.0,
    )
