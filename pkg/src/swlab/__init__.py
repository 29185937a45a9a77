"""swlab: a numerical laboratory for 3d gauge-theoretic spectral experiments.

Modules:
    clifford        exact rank-2 Clifford/spinor fiber algebra
    torus_spectra   twisted Dirac spectra on the flat 2-torus, gap constants
    grid            discretized fields on flat 3-tori / periodic cylinders
    csd             Chern-Simons-Dirac functional, gradient, Hessian, flow
    spectral_flow   eigenvalue tracking, spectral flow, Maslov machinery
    neck            glued cylindrical-end model operators and neck sweeps
    cli             reproducible experiment driver
"""

__version__ = "0.1.0"
