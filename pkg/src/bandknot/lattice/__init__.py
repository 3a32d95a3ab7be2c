from .polygon import (LatticePolygon, NotClosed, NotUnitStep, OddLength,
                      PolygonError, SelfIntersecting, unit_square,
                      validate_polygon)
from .bfacf import BfacfChain, bfacf_step, shrink
