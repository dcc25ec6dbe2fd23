"""Ошибки языка выражений lfac."""
from lfactors.exceptions import LfacError


class DslError(LfacError):
    """Ошибка в тексте выражения; line и column считаются с 1."""

    def __init__(self, message, line=None, column=None):
        super().__init__(message)
        self.message = message
        self.line = line
        self.column = column

    def __str__(self):
        if self.line is None:
            return self.message
        return f"{self.line}:{self.column}: {self.message}"


class DslSyntaxError(DslError):
    """Текст не разбирается грамматикой."""


class DslNameError(DslError):
    """Неизвестная функция или имя."""


class DslTypeError(DslError):
    """Неверное число или вид аргументов."""
