"""Chern numbers, complex cobordism arithmetic and realizations by good varieties."""

from .chern import (
    ChernNumberTable,
    ChernVector,
    add,
    chern_number,
    cp_chern,
    curve_chern,
    from_table,
    milnor_hypersurface_chern,
    milnor_number,
    product,
    scale,
    to_table,
)
from .errors import (
    DimensionMismatch,
    GoodvarError,
    InvalidFan,
    NonIntegral,
    Singular,
    StrictModeGap,
)
from .expr import evaluate_text, parse_class_expr
from .numbertheory import choose_torus_rank, eta, gcd_generator_check, kummer_carries, scan_gcd_exceptions
from .partitions import Partition, e_to_m_matrix, m_to_e_matrix, newton_polynomial, partitions
from .realization import GoodProduct, Realization, realize, torus_rank, verify_realization
from .ring import ClassCoordinates, build_generator_system, compose, decompose, is_decomposable
from .toric import Fan, blow_up, projective_space_fan, toric_chern_vector, validate_fan
from .varieties import GoodVariety, chern_of

__version__ = "0.1.0"
