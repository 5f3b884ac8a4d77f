"""Python front end for the L-contact verification library."""

try:
    from ._lcontact import (  # installed layout
        conformal_report,
        curvature,
        futuretube,
        lemma_check,
        mc_check,
        mc_residual,
        parse_fiber,
        torsion,
        tube_rho,
    )
except ImportError:  # build-tree layout: extension next to the test runner
    from _lcontact import (
        conformal_report,
        curvature,
        futuretube,
        lemma_check,
        mc_check,
        mc_residual,
        parse_fiber,
        torsion,
        tube_rho,
    )

__all__ = [
    "conformal_report",
    "curvature",
    "futuretube",
    "lemma_check",
    "mc_check",
    "mc_residual",
    "parse_fiber",
    "torsion",
    "tube_rho",
]
