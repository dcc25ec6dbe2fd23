from lfaccli.common import LfacCommand
from lfaccli.render import render_components
from lfactors.catalog import Gl2Param, Gsp4Param
from lfactors.poles import nov_split, ps_split


class Command(LfacCommand):
    """
    Разложения L-факторов.

    --nov PI SIGMA: L(pi x sigma) = L_reg * L_ex.
    --ps PI: L(pi) = L_ex * L_sub * L_Kir.
    """
    help = "Split an L-factor into its regular and exceptional parts"

    def add_arguments(self, parser):
        group = parser.add_mutually_exclusive_group(required=True)
        group.add_argument("--nov", nargs=2, metavar=("PI", "SIGMA"))
        group.add_argument("--ps", metavar="PI")
        super().add_arguments(parser)

    def run(self, **options):
        if options["nov"]:
            pi_text, sigma_text = options["nov"]
            regular, exceptional = nov_split(self.value(pi_text, Gsp4Param), self.value(sigma_text, Gl2Param))
            components = {"L_reg": regular, "L_ex": exceptional}
        else:
            exceptional, subregular, kirillov = ps_split(self.value(options["ps"], Gsp4Param))
            components = {"L_ex": exceptional, "L_sub": subregular, "L_Kir": kirillov}
        self.stdout.write(render_components("split", components, self.fmt, self.pretty))
