"""
Quantum thermodynamics of an oscillator coupled to a heat bath.

Ohmic, single relaxation time and QED baths share one susceptibility form;
the free energy follows from the Stieltjes J-function and the other
thermodynamic functions from it.
"""

from .errors import *
from .model import *
from .stieltjes import j_evaluate, j_regional, log_gamma
from .baths import canonicalize, roots, susceptibility
from .thermo import free_energy_exact, free_energy_quadrature, series_point, thermo_point, zero_point
