"""Exact arithmetic for the intersection cohomology of the Satake
compactification of A_g: formal parameter enumeration, symplectic Weyl
characters, Grothendieck-ring bookkeeping, table regeneration, and the
Euler-characteristic and Tate-ness computations for fiber powers of the
universal abelian variety."""

from ._kernels import backend_name
from .arthur import ArthurParam, enumerate_all_nontrivial, enumerate_parameters, min_degree
from .catalog import Block, Catalog, Constituent, dim_cusp_forms, epsilon_half, siegel_catalog
from .gkring import (
    ExpVec,
    GKElem,
    GradedGK,
    HalfInt,
    Letter,
    MotiveSymbol,
    gk_add,
    gk_mul,
    mod_tate,
    truncate_weight,
)
from .ihtab import bar_constituents, golden_diff, hodge_bidegrees, holomorphic_query, ih, table_rows
from .spchar import (
    CharPoly,
    decompose,
    ec_mult_poly,
    ec_mult_poly_signed,
    rpi_decomposition,
    wedge_local_system,
    weyl_character,
    weyl_dim,
)
from .spin import contribution, recognize, spin_multiset, std_exponents, u_sign
from .strata import (
    EcFact,
    Rank1Stratum,
    c_of_g,
    ec_identity_check,
    ec_interior_mod_tate,
    is_tate_compactified,
    is_tate_interior,
    nontate_witness,
    stratum_ec_rank1,
    torus_euler_signed,
)

__version__ = "0.1.0"
