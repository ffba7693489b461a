"""Numerical laboratory for integration operators, Blaschke products and slit domains
on the unit disk."""
from .geometry import DiskPoint, PseudoDisk, mobius, rho
from .functions import ClosedForm, PowerSeries, h1_norm, l1_tail
from .blaschke import BlaschkeProduct, ZeroSequence, critical_points, read_zero_csv
from .operators import apply_M, apply_S, apply_T, radial_variation
from .slits import CombDomain, SpiralDomain
from .quadrature import QuadratureConfig

__version__ = "0.1.0"

__all__ = [
    "BlaschkeProduct", "ClosedForm", "CombDomain", "DiskPoint", "PowerSeries", "PseudoDisk",
    "QuadratureConfig", "SpiralDomain", "ZeroSequence", "apply_M", "apply_S", "apply_T",
    "critical_points", "h1_norm", "l1_tail", "mobius", "radial_variation", "read_zero_csv", "rho",
]
