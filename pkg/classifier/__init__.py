from classifier.base_classifier import BaseClassifier
from classifier.classify import (
    SweepResult,
    classifier_for,
    classify,
    classify_sweep,
    hyperbolic_classify,
    orbit_for_seed,
)
from classifier.elliptic_classifier import EllipticClassifier
from classifier.families import Family, OrbitClass
from classifier.hyperbolic_classifier import HyperbolicClassifier
from classifier.seed import Seed, parse_seed
from classifier.signature import (
    first_integral_drift,
    gauss_sign_profile,
    height_monotonicity,
    read_signature,
)
from classifier.thresholds import (
    Thresholds,
    estimate_x1_infinity,
    find_x1_infinity,
    find_x_infinity,
    find_x_plus,
    thresholds,
)
