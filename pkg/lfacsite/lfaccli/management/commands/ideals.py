from lfaccli.common import LfacCommand
from lfaccli.render import render_components
from lfactors.catalog import Gsp4Param
from lfactors.poles import ideals_JK


class Command(LfacCommand):
    """Образующие идеалов J и K для pi x St."""
    help = "Print the generators of the ideals J and K"

    def add_arguments(self, parser):
        parser.add_argument("pi", metavar="PI")
        super().add_arguments(parser)

    def run(self, **options):
        j_ideal, k_ideal = ideals_JK(self.value(options["pi"], Gsp4Param))
        self.stdout.write(render_components("ideals", {"J": j_ideal, "K": k_ideal}, self.fmt, self.pretty))
