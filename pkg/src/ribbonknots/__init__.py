"""Folded ribbon knots over polygonal knot diagrams.

Build the width-``w`` folded ribbon of a diagram, decide whether a width is
allowed, compute maximal width, ribbonlength and the ribbon linking number,
and search vertex placements for small ribbonlength.
"""

from .bounds import (FoldPattern, ngon_ribbonlength_bound, regular_ngon_diagram,
                     three_stick_bounds, triangle_metrics, triangle_width_bound)
from .diagram import (Crossing, FoldingInfo, FoldType, KnotDiagram,
                      diagram_length, fold_angle, load_diagram, reverse_orientation,
                      save_diagram, validate_diagram)
from .errors import (AllowedSetError, DegenerateFoldError, InfeasibleError,
                     NoFoldLineError, RibbonError, WidthError)
from .invariants import (geometric_linking_number, invariant_report,
                         link_equivalent, ribbon_linking_number,
                         topological_type, topologically_equivalent,
                         diagram_equivalent)
from .ribbon import (build_ribbon, fold_line, is_allowed, max_width,
                     overlap_constraints, ribbonlength, ribbonlength_at)
from .samples import load_sample, sample_names

__version__ = "0.1.0"
