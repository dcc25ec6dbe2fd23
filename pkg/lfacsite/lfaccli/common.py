import logging

from django.core.management import BaseCommand, CommandError

from lfactors.catalog import load_catalog
from lfactors.exceptions import CatalogFormatError, LfacError

from .evaluator import evaluate
from .exceptions import DslError
from .render import error_data, render_data, render_envelope, render_text

logger = logging.getLogger(__name__)

EXIT_DOMAIN = 1  # ошибка движка или проваленная проверка
EXIT_USAGE = 2  # ошибка использования, выражения или конфигурации


class LfacCommand(BaseCommand):
    """
    Общая основа команд lfac.

    Добавляет флаги --format, --pretty, --catalog и переводит исключения
    движка в CommandError с кодом выхода. В режиме json объект ошибки
    печатается в stdout до выхода.
    """
    requires_system_checks = []  # команды не трогают модели и базу

    def add_arguments(self, parser):
        parser.add_argument("--format", choices=["text", "json"], default="text")  # вид вывода
        parser.add_argument("--pretty", action="store_true", help="Unicode output: ⊗ and ·")
        parser.add_argument("--catalog", metavar="FILE", help="catalog data file for this invocation")

    def handle(self, *args, **options):
        self.fmt = options["format"]
        self.pretty = options["pretty"]
        try:
            self.catalog = load_catalog(options["catalog"]) if options["catalog"] else None
            self.run(**options)
        except (DslError, CatalogFormatError) as exc:
            self.fail(exc, EXIT_USAGE)
        except LfacError as exc:
            self.fail(exc, EXIT_DOMAIN)

    def run(self, **options):
        raise NotImplementedError

    def fail(self, exc, returncode: int):
        logger.debug("%s failed: %s", self.__class__.__module__, exc)
        if self.fmt == "json":
            self.stdout.write(render_data(error_data(exc)))
        raise CommandError(f"{type(exc).__name__}: {exc}", returncode=returncode)

    def value(self, text: str, kind=None):
        """Вычислить выражение-аргумент команды."""
        return evaluate(text, catalog=self.catalog, kind=kind)

    def emit(self, value):
        if self.fmt == "json":
            self.stdout.write(render_envelope(value))
        else:
            self.stdout.write(render_text(value, self.pretty))
