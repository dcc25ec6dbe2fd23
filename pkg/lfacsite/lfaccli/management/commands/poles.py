from lfaccli.common import LfacCommand
from lfactors.catalog import Gl2Param, Gsp4Param
from lfactors.poles import exceptional_poles, subregular_poles


class Command(LfacCommand):
    """
    Классификация полюсов.

    --exceptional PI SIGMA - исключительные полюса L(pi x sigma, s),
    --subregular PI - субрегулярные полюса L(pi, s).
    """
    help = "Classify exceptional or subregular poles"

    def add_arguments(self, parser):
        group = parser.add_mutually_exclusive_group(required=True)
        group.add_argument("--exceptional", nargs=2, metavar=("PI", "SIGMA"))
        group.add_argument("--subregular", metavar="PI")
        super().add_arguments(parser)

    def run(self, **options):
        if options["exceptional"]:
            pi_text, sigma_text = options["exceptional"]
            report = exceptional_poles(self.value(pi_text, Gsp4Param), self.value(sigma_text, Gl2Param))
        else:
            report = subregular_poles(self.value(options["subregular"], Gsp4Param))
        self.emit(report)
