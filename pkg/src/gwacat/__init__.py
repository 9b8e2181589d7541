"""gwacat: an exact-arithmetic workbench for generalized Weyl algebras
H(R, phi, z) over finite coefficient rings, with executable category-O
equivalence functors."""

from .algebra import (
    GwaElement,
    GwaInstance,
    build_instance,
    gwa_multiply,
    validate_instance,
    yx_power_identity,
)
from .applications import (
    corollary_classical_check,
    corollary_quantized_check,
    corollary_simple_dim_check,
    corollary_weyl_check,
    full_corpus,
    make_classical,
    make_quantized,
    make_weyl,
    module_corpus,
    qint,
    shipped_instances,
)
from .backend import BACKEND
from .errors import (
    CornerNotStable,
    EquivalenceFailure,
    GwacatError,
    InvalidParameters,
    NonUnit,
    NotComaximal,
    NotPrimitiveRoot,
    PrecisionInsufficient,
    TruncationNotStable,
    UnsupportedRing,
)
from .functors import (
    frobenius_restriction_check,
    functor_F,
    functor_G,
    roundtrip_FG,
    roundtrip_GF,
    torsion_equals_eM,
    twisted_instance,
)
from .idempotents import (
    IdempotentData,
    compute_idempotent,
    corner_unit,
    crt_idempotent,
    hensel_lift_idempotent,
    iso_f_roundtrip,
    one_minus_e_divisibility,
    orbit_orthogonality_check,
)
from .modules import (
    IsoWitness,
    MatrixModule,
    NoIsoFound,
    SubmoduleBasis,
    direct_sum,
    module_from_json,
    module_iso_check,
    simple_check,
    validate_module,
    verma_quotient,
    z_torsion,
)
from .polys import Automorphism, BezoutWitness, Poly, PolyRing, bezout_witness, unit_inverse
from .scalars import Scalar, ScalarRing, geometric_sum

__version__ = "0.1.0"
