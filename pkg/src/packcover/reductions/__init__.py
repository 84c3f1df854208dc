"""Executable instance transformations between the four problem families.

Each construction returns the target instance together with a certificate
holding enough bookkeeping to transport solutions across the reduction and
to normalize packings back into canonical form.
"""

from .amplifiers import (
    Amplifier,
    AmplifierFragment,
    amplifier_to_tp_fragment,
    build_amplifier,
    check_minority_property,
)
from .coloring import (
    ColoringCertificate,
    cover_to_coloring,
    coloring_to_allele,
    coloring_to_cover,
)
from .cutgrid import (
    CutCertificate,
    cut_solution_to_cover,
    cut_to_allele,
    enumerate_feasible_groups_in_gadget,
    gadget_potential_sums,
)
from .gadgets import (
    EquationGadget,
    GadgetValidationError,
    coverage_table,
    synth_equation_gadget,
)
from .labelcover import (
    LabelCoverCertificate,
    labelcover_to_allele,
    tp_to_labelcover,
)
from .lin2tp import (
    Lin2TpCertificate,
    lin2_solution_to_packing,
    lin2_to_tp,
    normalize_packing,
    packing_to_assignment,
)
from .mpcmap import MetricPresentation, is_to_mpc

__all__ = [
    "Amplifier",
    "AmplifierFragment",
    "ColoringCertificate",
    "CutCertificate",
    "EquationGadget",
    "GadgetValidationError",
    "LabelCoverCertificate",
    "Lin2TpCertificate",
    "MetricPresentation",
    "amplifier_to_tp_fragment",
    "build_amplifier",
    "check_minority_property",
    "coloring_to_allele",
    "coloring_to_cover",
    "cover_to_coloring",
    "coverage_table",
    "cut_solution_to_cover",
    "cut_to_allele",
    "enumerate_feasible_groups_in_gadget",
    "gadget_potential_sums",
    "is_to_mpc",
    "labelcover_to_allele",
    "lin2_solution_to_packing",
    "lin2_to_tp",
    "normalize_packing",
    "packing_to_assignment",
    "synth_equation_gadget",
    "tp_to_labelcover",
]
