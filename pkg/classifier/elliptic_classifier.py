"""Elliptic classifier: a^2 + b phi > 0, normalized so that a > 0 and phi > 0."""

from classifier.base_classifier import BaseClassifier
from classifier.families import Family
from classifier.signature import Signature
from integration.orbit import AXIS_CUSP, AXIS_ORTHOGONAL, SINGULAR_CIRCLE, Orbit
from radial.continuation import radial_orbit
from radial.solver import UP


class EllipticClassifier(BaseClassifier):
    """Family rules for elliptic data.

    Complete surfaces are the cylinder, the sphere, unduloids and nodoids.
    The non-complete ones are told apart by height monotonicity, the sign
    pattern of K and the kind of their two ends.
    """

    def radial_orbit(self) -> Orbit:
        return radial_orbit(self.p, self.phi, UP, settings=self.settings)

    def family_of(self, signature: Signature) -> Family:
        if signature.constant:
            return Family.CYLINDER
        if signature.complete and signature.count(AXIS_ORTHOGONAL) == 2:
            return Family.SPHERE
        if signature.periodic:
            return Family.UNDULOID if signature.monotone else Family.NODOID
        if not signature.complete and signature.matching_ends:
            if not signature.monotone:
                return Family.E17_NON_MONOTONE
            if len(signature.gauss.pattern) > 1:
                return Family.E18_K_SIGN_CHANGE
            if signature.start_kind == AXIS_CUSP:
                return Family.E15_CUSP_MONOTONE
            if signature.start_kind == SINGULAR_CIRCLE:
                return Family.E16_ANNULUS_MONOTONE
        raise self.unclassified(signature)
