from lfaccli.common import LfacCommand
from lfaccli.evaluator import BUILTINS
from lfaccli.exceptions import DslTypeError


class Command(LfacCommand):
    """
    L-фактор параметра.

    WD-представление или его часть - L(rho, s); параметр GSp(4) -
    спинорный L-фактор; параметр GL(2) - стандартный.
    """
    help = "Print the L-factor of a parameter"

    def add_arguments(self, parser):
        parser.add_argument("expr", help="WD representation, gl2.* or gsp4.* parameter")
        super().add_arguments(parser)

    def run(self, **options):
        value = self.value(options["expr"])
        func = BUILTINS["L"]
        try:
            bound, _ = func.bind([value], {})
        except DslTypeError as exc:
            raise DslTypeError(exc.message, 1, 1) from None
        self.emit(func.func(*bound, catalog=self.catalog))
