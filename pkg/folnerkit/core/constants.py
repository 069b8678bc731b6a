"""Constants for folnerkit: model identifiers, Følner rules and certificate tolerances."""

from typing import Dict

# Group model identifiers accepted in configuration
GROUP_MODELS: Dict[str, str] = {
    "zd": "Integer lattice Z^d (suffix ':d', e.g. 'zd:2')",
    "heis3": "Discrete Heisenberg group H3(Z)",
    "lamplighter": "Lamplighter group Z/2 wr Z",
}

# Built-in Følner rules per model
FOLNER_RULES: Dict[str, str] = {
    "zd": "box",
    "heis3": "heis-box",
    "lamplighter": "lamp-box",
}

# Tolerances used by the certificates
CERTIFICATE_TOLERANCES: Dict[str, float] = {
    "gibbs_identity": 1e-10,
    "canonical_relative": 1e-9,
    "bound_ordering": 1e-6,
}

# Two-sided 95% Wilson interval
CONFIDENCE_LEVEL = 0.95
