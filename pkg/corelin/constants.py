"""Project-wide numerical tolerances."""

NORM_TOL = 1e-12
ORTHO_TOL = 1e-10
FIDELITY_TOL = 1e-9
RESIDUAL_TOL = 1e-8
RENORMALIZE_WINDOW = 1e-6
