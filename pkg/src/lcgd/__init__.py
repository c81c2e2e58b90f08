"""Exact tools for log-concavity of genus distributions.

``seqcore``   sequences, ratio conventions and the relations between them
``chains``    partitioned genus distributions and amalgamation recursions
``embed``     rotation-system enumeration of genus distributions
``explorer``  randomized and exhaustive searches
``io``        JSON formats and the bundled example data
"""

from .seqcore import (
    Frac,
    Seq,
    Verdict,
    Witness,
    combine,
    convolve,
    has_no_internal_zeros,
    is_log_concave,
    is_unimodal,
    offset_seq,
    ratio_dominates,
    synchronized,
)

__version__ = "0.1.0"
