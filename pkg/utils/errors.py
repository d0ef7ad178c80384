from typing import Optional


class MetaSketchError(Exception):
    """
    툴킷에서 발생시키는 모든 에러의 공통 부모
    """


class EdgeListParseError(MetaSketchError, ValueError):
    line_no: int

    def __init__(self, line_no: int, line: str, reason: str = 'expected two integer tokens'):
        self.line_no = line_no
        super().__init__(f"line {line_no}: {reason}: {line.rstrip()!r}")


class EmptyGraphError(MetaSketchError, ValueError):
    pass


class GraphArgumentError(MetaSketchError, ValueError):
    pass


class IntegrityError(MetaSketchError, ValueError):
    pass


class SizeCapError(MetaSketchError, ValueError):
    """
    입력 크기가 상한을 넘어서 계산을 거부하는 경우
    """


class ProvenanceError(MetaSketchError, ValueError):
    pass


class SimulationError(MetaSketchError, RuntimeError):
    superstep: int

    def __init__(self, superstep: int, unit: Optional[int], cause: Exception):
        self.superstep = superstep
        self.unit = unit
        super().__init__(
            f"program failed in superstep {superstep} (unit {unit}): {cause!r}")


class MissingArtifactError(MetaSketchError, FileNotFoundError):
    path: str

    def __init__(self, path: str):
        self.path = str(path)
        super().__init__(f"missing upstream artifact: {self.path}")


class ConfigError(MetaSketchError, ValueError):
    """
    RunConfig 검사 실패, 어떤 규칙이 깨졌는지 rule 에 남긴다.
    """
    rule: str

    def __init__(self, rule: str, cause: Exception):
        self.rule = rule
        super().__init__(f"invalid run configuration ({rule}): {cause}")
