"""Godsil-McKay style switchings for gain graphs over finite groups and the unit quaternions."""
from .catalog import EXAMPLES
from .errors import (
    GainGraphError,
    GroupMismatchError,
    InfiniteGroupError,
    NotHermitianError,
    NumericalError,
    ParseError,
    PlanError,
    ShapeError,
    UnsupportedFeatureError,
)
from .gain_graph import GainGraph, Partition, SwitchingWitness, switching_isomorphic
from .gg_matrix import GAMatrix, build_qalpha, build_qn
from .group_algebra import ClassFunction, GAElement
from .groups import Group, GroupElement, conjugacy_classes, find_minus_identity
from .quaternions import Quaternion, QuatMatrix, complex_adjoint, pi_h_matrix, right_spectrum
from .representations import Representation, builtin, direct_sum, irreducible_system, regular
from .spectra import (
    CharPoly,
    Spectrum,
    char_poly,
    g_cospectral,
    hermitian_eigs,
    pi_cospectral,
    represented_adjacency,
    right_cospectral,
)
from .switching import (
    CellPlan,
    CentralMultiply,
    GMCheck,
    Skip,
    Swap,
    apply_quat_switch,
    apply_switch,
    check_g_gm,
    check_pi_gm,
    check_quat_gm,
    psi_sum,
    psi_sum_h,
    verify_conjugation,
)

__version__ = "0.1.0"
