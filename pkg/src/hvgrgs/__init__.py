"""Exact degree statistics of horizontal visibility graphs of random
restricted growth sequences: closed-form edge probabilities, generating
series, uniform sampling, and enumeration oracles that certify every
formula at desk scale."""

from .errors import (
    EmptyWordError,
    GrowthViolationError,
    HvgRgsError,
    InvalidPairError,
    NodeOutOfRangeError,
    NotStandardFormError,
    TooLargeError,
)
from .exactnum import (
    NumberTables,
    bell,
    bernoulli_plus,
    binomial,
    faulhaber_psi,
    faulhaber_psi_bernoulli,
    stirling2,
    theta,
)
from .hvg import VisibilityGraph, strong_graph, weak_graph
from .moments import (
    EdgeProbability,
    PairClass,
    classify_pair,
    edge_prob,
    expected_degree,
    expected_edges,
    oracle_edge_prob,
    strong_edge_prob,
    weak_edge_prob,
    weak_minus_strong_prob,
)
from .rgs import (
    RestrictedGrowthSequence,
    SetPartition,
    StamState,
    enumerate_rgs,
    parse,
    sample_box_count,
    stam_sample,
    stam_trajectory,
)
from .series import (
    QPoly,
    TruncatedSeries,
    mtilde,
    p_k,
    q_k,
    q_k_closed_form,
    q_moment_egf,
    recp_residual,
    sum_p,
    t_k,
)

__version__ = "0.1.0"
