"""Exact computations around loop groups: representation rings, alcoves,
formal group laws, genera and Tate-style localization."""

__version__ = "0.1.0"

from .errors import (
    ComputationError,
    FoldingLimitError,
    InputError,
    LoopKError,
    NotAUnitError,
    NotDivisibleError,
    StabilizationError,
    WindowError,
)
from .laurent import LaurentPoly, lp_arith, lp_exact_divide
from .qseries import QLaurentSeries, qs_invert, qs_mul
from .smith import SmithForm, smith_normal_form
from .render import parse_poly, parse_series, render_poly, render_series
from .affine_weyl import (
    AlcovePoint,
    ParabolicIndex,
    PosetC,
    RootDatum,
    affine_fold,
    alcove_face,
    apply_word,
    build_root_datum,
    parabolic_poset,
    root_datum,
    weyl_group,
)
from .rep_rings import ParabolicRing, induction, invariance_check, restrict, sym_power, weyl_act
from .verlinde import (
    FusionRing,
    GradedPresentation,
    LocalizedPolyModule,
    colimit_cokernel,
    conjecture_check,
    directed_colimit_mult,
    fusion_ring_su2,
    poset_colimit,
    colimit_class,
    rank_report,
    verlinde_rank,
    stabilize,
)
from .fgl import (
    FormalGroupLaw,
    LineVariable,
    LoopNormalModel,
    SymmetricLoopRep,
    additive_fgl,
    custom_fgl,
    epsilon_unit,
    euler_normal_product,
    fgl_k_series,
    fgl_sum,
    loop_truncate,
    multiplicative_fgl,
    sigma_class,
    spin_pairable,
)
from .genus import (
    ChernData,
    DensitySeries,
    characteristic_number,
    density_from_orientation,
    euler_characteristic,
    tft_invariant,
    witten_genus,
)
from .tate import TateModule, khat_orbit, tate_base_change
