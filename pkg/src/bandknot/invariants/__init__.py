from .laurent import LaurentPoly, LaurentPoly2
from .homfly import (HOMFLY_CROSSING_CAP, TooManyCrossings, homfly,
                     jones_derivative_at_minus_one, jones_from_homfly)
from .qpoly import Q_CROSSING_CAP, TooManyCrossingsQ, q_polynomial
from .rings import (NotPowerOfSqrt3, NotPowerOfSqrt5, jones_abs_at_omega,
                    q_abs_at_phibar)
from .goeritz import determinant, goeritz, signature
from .snf import h1_structure, smith_normal_form
from .aggregate import InvariantSet, arf_from_det, invariant_set
