"""
Исключения движка L-факторов.

Все ошибки наследуются от LfacError, команды lfac переводят их в коды выхода.
"""


class LfacError(Exception):
    """Базовое исключение движка."""


class ScalarZeroDivision(LfacError, ZeroDivisionError):
    """Деление на нулевой скаляр."""


class HalfIntegerError(LfacError, ValueError):
    """Сдвиг s -> s + t допустим только для полуцелых t."""


class UnsupportedTensor(LfacError):
    """Тензорное произведение двух неприводимых частей размерности >= 2."""


class UnsupportedPair(LfacError):
    """Пара суперкаспидальных параметров, где sigma - неразветвлённый твист tau^v."""


class SimilitudeViolation(LfacError):
    """Параметр не изоморфен своему двойственному, подкрученному на характер подобия."""


class TypeConstraintViolation(LfacError):
    """Данные не удовлетворяют ограничениям выбранного типа параметра."""


class CentralCharacterMismatch(LfacError):
    """Тета-лифт требует совпадения центральных характеров."""


class CatalogFormatError(LfacError):
    """Файл каталога не прошёл проверку формата."""

    def __init__(self, message, errors=None):
        super().__init__(message)
        self.errors = errors or {}


class ConsistencyError(LfacError):
    """Два независимых способа вычисления дали разные ответы."""
