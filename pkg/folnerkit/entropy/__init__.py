"""Entropy: partition entropy, Katok covering numbers, SMB traces, Hamming counts, h_top."""

from folnerkit.entropy.hamming import (
    HammingBoundCheck,
    eta_bound,
    hamming_ball_count,
    hamming_bound_report,
)
from folnerkit.entropy.katok import (
    katok_covering_number,
    katok_entropy_curve,
    katok_lower_estimate,
    smb_trace,
)
from folnerkit.entropy.partition import (
    local_exponent,
    partition_entropy,
    relative_entropy_product,
    symbol_entropy,
)
from folnerkit.entropy.topological import topological_entropy_curve

__all__ = [
    "HammingBoundCheck",
    "eta_bound",
    "hamming_ball_count",
    "hamming_bound_report",
    "katok_covering_number",
    "katok_entropy_curve",
    "katok_lower_estimate",
    "local_exponent",
    "partition_entropy",
    "relative_entropy_product",
    "smb_trace",
    "symbol_entropy",
    "topological_entropy_curve",
]
