"""Dense simulation and verification of block-encodings of matrix functions.

Matrices are block-encoded as explicit unitaries, combined with products,
tensor products and linear combinations, inverted by polynomial
transformation, and assembled into encodings of contour-quadrature
approximations ``r sum_k w_k (y_k I + z_k A)^-1`` of ``f(A)``.
"""

from .blockenc import BlockEncoding, embed, encoded_block, from_matrix, rescale, trivial, verify
from .combinators import (
    diagonal,
    extend,
    linear_combination,
    linear_combination_tensor,
    product,
    tensor,
    unextend_inverse,
)
from .errors import BlockFuncError, ConfigError, PreconditionError
from .inversion import inv_poly, invert_hermitian, lincomb_of_inverses
from .matfunc import (
    CircleContour,
    QuadratureScheme,
    ScalarFunction,
    VerificationReport,
    build_FM_encoding,
    build_fM_encoding,
    get_function,
)
from .stateprep import StatePreparationPair, build_sqrt_pair

__version__ = "0.1.0"
