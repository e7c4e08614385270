import logging
from abc import ABC, abstractmethod
from pathlib import Path

from config import LOGGER_NAME
from models.toolpath import Toolpath
from services.exceptions import ToolpathError
from services.gcode_parser import parse_gcode
from services.toolpath_generator import GeneratorParams, generate_test_path
from services.toolpath_store import load_toolpath

logger = logging.getLogger(LOGGER_NAME)

GCODE_SUFFIXES = {'.nc', '.ngc', '.gcode', '.mpf', '.tap'}


class ToolpathSource(ABC):
    @abstractmethod
    def load(self) -> Toolpath:
        pass

    @abstractmethod
    def describe(self) -> str:
        pass


class GeneratedToolpathSource(ToolpathSource):
    def __init__(self, params: GeneratorParams) -> None:
        self.params = params

    def load(self) -> Toolpath:
        return generate_test_path(self.params)

    def describe(self) -> str:
        return f"generated {self.params.kind}"


class JsonToolpathSource(ToolpathSource):
    def __init__(self, path: Path) -> None:
        self.path = path

    def load(self) -> Toolpath:
        return load_toolpath(self.path)

    def describe(self) -> str:
        return str(self.path)


class GcodeToolpathSource(ToolpathSource):
    def __init__(self, path: Path, start: tuple[float, float] = (0.0, 0.0)) -> None:
        self.path = path
        self.start = start

    def load(self) -> Toolpath:
        try:
            text = self.path.read_text()
        except OSError as err:
            logger.error(f"Cannot read G-code file {self.path}: {err}")
            raise ToolpathError(f"Cannot read G-code file {self.path}: {err.strerror}") from err
        return parse_gcode(text, self.start)

    def describe(self) -> str:
        return str(self.path)


def file_source(path: Path, start: tuple[float, float] = (0.0, 0.0)) -> ToolpathSource:
    if path.suffix.lower() in GCODE_SUFFIXES:
        return GcodeToolpathSource(path, start)
    return JsonToolpathSource(path)
