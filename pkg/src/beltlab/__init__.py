"""Exact-arithmetic lab for bipartite belt dynamics of cluster-algebra quivers."""

from beltlab.belt import BeltState, Trace, detect_period, evolve, inverse_step, is_recurrent, step
from beltlab.dynkin import DynkinSpec, belt_coloring, box_product, build_diagram, coxeter_number, product_of
from beltlab.labelling import Classification, LabellingProblem, classify
from beltlab.quiver import Quiver, Seed, mutate_many, mutate_quiver, mutate_seed
from beltlab.recurrence import CharPoly, RationalSequence, combine, minimal_order, toeplitz_det

__version__ = "0.1.0"

__all__ = [
    "BeltState",
    "CharPoly",
    "Classification",
    "DynkinSpec",
    "LabellingProblem",
    "Quiver",
    "RationalSequence",
    "Seed",
    "Trace",
    "belt_coloring",
    "box_product",
    "build_diagram",
    "classify",
    "combine",
    "coxeter_number",
    "detect_period",
    "evolve",
    "inverse_step",
    "is_recurrent",
    "minimal_order",
    "mutate_many",
    "mutate_quiver",
    "mutate_seed",
    "product_of",
    "step",
    "toeplitz_det",
]
