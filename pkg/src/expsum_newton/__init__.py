"""L-functions of one-variable exponential sums over F_p and their Newton polygons."""

from .cyclotomic import CyclotomicNumber, galois_conjugate, norm_to_rational, ord_p
from .diagonal import cycle_data, diagonal_polygon, nonconvergence_witness
from .expsums import (
    LPolynomial,
    PolyInput,
    exp_sum,
    l_polynomial,
    newton_polygon,
    twist_by_constant,
    zeta_numerator,
)
from .finitefield import ExtFieldSpec, enumerate_field, eval_poly, find_irreducible, trace
from .polygon import (
    NewtonPolygon,
    hodge_polygon,
    join_segments,
    lies_on_or_above,
    lower_convex_hull,
    padic_newton_polygon,
    scale,
)
from .predictor import (
    f_n_t,
    h_poly,
    hk_congruence_check,
    k_poly,
    m_n,
    m_set,
    predict,
    residue_matrix,
    strata,
    t_n,
    w_membership,
)

__version__ = "0.1.0"
