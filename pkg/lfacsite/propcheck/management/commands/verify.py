from django.conf import settings
from django.core.management import CommandError

from lfaccli.common import EXIT_DOMAIN, EXIT_USAGE, LfacCommand
from lfaccli.render import render_reports
from propcheck.checks import SUITES, run_suite


class Command(LfacCommand):
    """
    Прогнать наборы проверок тождеств на засеянных случайных входах.

    Код выхода 0 - все проверки прошли, 1 - есть провал, 2 - ошибка
    конфигурации.
    """
    help = "Run the randomized identity suites"

    def add_arguments(self, parser):
        parser.add_argument("--suite", choices=[*SUITES, "all"], default="all")
        parser.add_argument("--trials", type=int, default=settings.LFAC["DEFAULT_TRIALS"])
        parser.add_argument("--seed", type=int, default=settings.LFAC["DEFAULT_SEED"])
        super().add_arguments(parser)

    def run(self, **options):
        if options["trials"] < 1:
            raise CommandError("--trials must be at least 1", returncode=EXIT_USAGE)
        reports = run_suite(options["suite"], options["trials"], options["seed"], self.catalog)
        self.stdout.write(render_reports(reports, self.fmt))
        failed = [report.identity for report in reports if not report.passed]
        if failed:
            raise CommandError(f"failed suites: {', '.join(failed)}", returncode=EXIT_DOMAIN)
