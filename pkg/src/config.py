import os
import logging
from dataclasses import dataclass

from dotenv import load_dotenv

dotenv_path: str = os.path.join(os.path.dirname(__file__), '..', '.env')
load_dotenv(dotenv_path)

LOGGER_NAME = 'arcsim'


class Config:
    DEBUG = os.environ.get('DEBUG', None) is not None
    LOG_LEVEL = os.environ.get('ARCSIM_LOG_LEVEL', 'DEBUG' if DEBUG else 'INFO')
    SAMPLE_MS = os.environ.get('ARCSIM_SAMPLE_MS', '1.0')
    TRACE_FILE = os.environ.get('ARCSIM_TRACE_FILE', 'trace.csv')
    SUMMARY_FILE = os.environ.get('ARCSIM_SUMMARY_FILE', 'summary.json')


@dataclass(frozen=True)
class RuntimeSettings:
    log_level: int
    sample_step_s: float
    trace_file: str
    summary_file: str


def create_config(config_class: type[Config] = Config) -> RuntimeSettings:
    log_level: int = logging.getLevelNamesMapping().get(config_class.LOG_LEVEL.upper(), logging.INFO)
    logging.basicConfig(format='%(levelname)s %(name)s: %(message)s')
    logging.getLogger(LOGGER_NAME).setLevel(log_level)

    try:
        sample_ms = float(config_class.SAMPLE_MS)
    except (TypeError, ValueError):
        raise ValueError(f"ARCSIM_SAMPLE_MS must be a number, got {config_class.SAMPLE_MS!r}") from None
    if sample_ms <= 0:
        raise ValueError(f"ARCSIM_SAMPLE_MS must be positive, got {sample_ms:g}")

    return RuntimeSettings(
        log_level=log_level,
        sample_step_s=sample_ms / 1000.0,
        trace_file=config_class.TRACE_FILE,
        summary_file=config_class.SUMMARY_FILE,
    )
