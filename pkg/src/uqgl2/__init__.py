"""Coloured R-matrices of multiparameter U_q gl(2) and their verification."""
from .errors import UqError
from .linalg import SquareMatrix, embed_pair, flip_matrix, inverse, kron, residual_norm
from .reps import (Branch, GaugeChoice, GaugeMode, Gen, HighestWeightRep, admissible_roots,
                   classify_branch, coproduct_image, products_ab, rep_matrices)
from .rings import LaurentPoly, QValue, q_integer, root_of_unity
from .rmatrix import (Method, RMatrixResult, Variant, build_r_closed_m2, build_r_closed_m3,
                      build_r_series, build_r_series_exact, ratio_normalize, variant)
from .verify import (CheckReport, HlavatyMap, check_colored_ybe, check_hopf_axioms,
                     check_intertwiner, check_variants, check_ybe, hlavaty_identify)

__version__ = "0.1.0"
