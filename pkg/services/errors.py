# services/errors.py
from __future__ import annotations


class AlgebraError(Exception):
    """Erro de domínio. A CLI converte em mensagem + exit 1."""


class InvalidGraphError(AlgebraError):
    pass


class InvalidGeneratorError(AlgebraError):
    pass


class NotFullyCommutativeError(AlgebraError):
    pass


class UnsupportedRankError(AlgebraError):
    pass


class DescriptorError(AlgebraError):
    pass


class GraphMismatchError(AlgebraError):
    pass


class UndefinedMoveError(AlgebraError):
    pass


class InvariantViolationError(AlgebraError):
    pass


class FormatError(AlgebraError):
    pass


class DiagramError(AlgebraError):
    pass


class MalformedDiagramError(DiagramError):
    """Emparelhamento mal formado (nós repetidos, índice fora do intervalo...)."""


class InadmissibleDiagramError(DiagramError):
    def __init__(self, message: str, violations: list[str] | None = None):
        super().__init__(message)
        self.violations = list(violations or [])


class EmptyElementError(AlgebraError):
    """Operação indefinida para a identidade (ex.: n-valor)."""


class InvalidLengthError(AlgebraError):
    """Limite de comprimento negativo."""
