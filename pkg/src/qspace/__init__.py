"""Label-free second quantization: occupation-number kets, Bose/Fermi inner
products, ladder operators and few-body observables, with a labeled
tensor-product oracle for cross-checking."""

from .fock import (
    BOSE,
    FERMI,
    BasisKet,
    QSpaceError,
    StateVector,
    Statistics,
    StatisticsMismatch,
    add,
    all_kets,
    canonicalize,
    ket_state,
    occupation,
    scale,
    vacuum,
)
from .kernels import determinant, permanent
from .ladder import (
    LadderOp,
    LadderString,
    OperatorExpr,
    annihilate,
    apply_annihilate,
    apply_create,
    apply_expr,
    check_car,
    check_ccr,
    create,
)
from .observables import (
    DOWN,
    UP,
    Direction,
    build_one_body,
    build_two_body,
    correlation_coeffs,
    correlation_operator,
    expectation,
    one_body_from_spectral,
    sigma_n,
    sigma_z,
)
from .products import inner, is_similar, ket_inner, norm, normalize

__version__ = "0.1.0"
