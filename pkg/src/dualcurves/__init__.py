"""Dual numbers, dual Lorentzian 3-space, dual space curves and their
timelike-spacelike Mannheim partners."""

from .curve import (CurveJet, DualExpr, ExprCurve, FrameKind, FrenetData, NaturalCurve,
                    OffsetCurve, dual_arc_length, frenet, frenet_unit_speed, screw_dual_part)
from .dual import EPS, ONE, ZERO, DualScalar, lift
from .errors import *  # noqa: F401,F403
from .lorentz import (AngleKind, CausalCharacter, DualAngle, DualVec3, angle_between,
                      causal_character, cross, det, inner, norm, normalize, on_unit_sphere)
from .mannheim import (Grid, MannheimPair, MannheimSample, MannheimTorsion, PairReport,
                       curvature_centers, helix_pair, natural_pair, offset_from_timelike,
                       partner_from_spacelike, phi_between, sample_pair, solve_lambda, verify_pair)

__version__ = "0.1.0"
