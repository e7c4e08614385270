class ArcSimError(Exception):
    def __init__(self, message: str) -> None:
        super().__init__(message)


class MachineConfigError(ArcSimError):
    def __init__(self, message: str, field: str | None = None) -> None:
        self.field = field
        super().__init__(f"{field}: {message}" if field else message)


class ToolpathError(ArcSimError):
    pass


class ZeroLengthArcError(ToolpathError):
    def __init__(self, block_index: int | None = None) -> None:
        self.block_index = block_index
        where = f" (block {block_index})" if block_index is not None else ""
        super().__init__(f"Arc parameters produce a zero-length arc{where}.")


class ContinuityError(ToolpathError):
    def __init__(self, block_index: int, position_gap: float, angle_gap: float) -> None:
        self.block_index = block_index
        self.position_gap = position_gap
        self.angle_gap = angle_gap
        super().__init__(
            f"Path is not tangent-continuous at the junction entering block {block_index}: "
            f"position gap {position_gap:.3e} m, tangent gap {angle_gap:.3e} rad."
        )


class UnsupportedGcodeError(ToolpathError):
    def __init__(self, word: str, line_number: int) -> None:
        self.word = word
        self.line_number = line_number
        super().__init__(f"Unsupported G-code word '{word}' on line {line_number}.")


class InfeasiblePlanError(ArcSimError):
    def __init__(self, reason: str, block_index: int | None = None) -> None:
        self.reason = reason
        self.block_index = block_index
        where = f"Block {block_index}: " if block_index is not None else ""
        super().__init__(f"{where}{reason}")


class DegenerateFitError(ArcSimError):
    def __init__(self, message: str = "Points are collinear or too few to fit a circle.") -> None:
        super().__init__(message)
