from lfaccli.common import LfacCommand


class Command(LfacCommand):
    """
    Вычислить выражение lfac и напечатать значение.

    Пример: lfac eval "tensor(sp(1), sp(1))"
    """
    help = "Evaluate an lfac expression"

    def add_arguments(self, parser):
        parser.add_argument("expr", help="expression in the lfac language")
        super().add_arguments(parser)

    def run(self, **options):
        self.emit(self.value(options["expr"]))
