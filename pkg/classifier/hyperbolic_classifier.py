"""Hyperbolic classifier: a^2 + b phi < 0, normalized to b = 1 and a > 0."""

import logging
import math
from typing import Optional

from classifier.base_classifier import BaseClassifier
from classifier.families import Family
from classifier.signature import Signature
from integration.orbit import AXIS_CUSP, SINGULAR_CIRCLE

logger = logging.getLogger(__name__)

REGIME_CUSP = "cusps below -a/phi(0)"
REGIME_CYLINDER = "cylinder at -a/phi(0)"
REGIME_ANNULUS = "annulus between -a/phi(0) and 1/a"
REGIME_BEYOND = "beyond 1/a"

SINGULAR_RADIUS_TOL = 1e-9


class HyperbolicClassifier(BaseClassifier):
    """Family rules for hyperbolic data.

    Seeds on theta = 3pi/2 split into four regimes by their radius; the family
    itself is read off the orbit, which resolves the regime beyond 1/a where
    the threshold x_infinity separates cusped and complete surfaces.
    """

    def family_of(self, signature: Signature) -> Family:
        if signature.constant:
            return Family.H2_CYLINDER
        if signature.periodic:
            return Family.H4_NODOID_COMPLETE
        if signature.count(AXIS_CUSP) == 2:
            return Family.H1_CUSP_POSITIVE_K if signature.monotone else Family.H42_CUSP_SPHERE_LIKE
        if signature.count(SINGULAR_CIRCLE) == 2:
            return Family.H3_ANNULUS_NEGATIVE_K
        raise self.unclassified(signature)

    def regime(self, x0: float) -> Optional[str]:
        """Which interval of the seed line x0 belongs to, or None on the singular radius."""
        singular = 1.0 / self.p.a
        if math.isclose(x0, singular, rel_tol=SINGULAR_RADIUS_TOL):
            return None
        cylinder = -self.p.a / self.phi(0.0)
        if math.isclose(x0, cylinder, rel_tol=1e-12):
            return REGIME_CYLINDER
        if x0 < cylinder:
            return REGIME_CUSP
        if x0 < singular:
            return REGIME_ANNULUS
        return REGIME_BEYOND
