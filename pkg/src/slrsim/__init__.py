"""Stateless linear-path routing and addressing for dense 3D nanonetworks.

Hop-count virtual coordinates from 8 corner anchors, integer-only
width-m line-path retransmission predicates, viewport-selection
heuristics with brute-force and random baselines, a CORONA box-flood
baseline, and a deterministic SINR packet simulator with an experiment
harness.
"""

__version__ = "0.1.0"

from . import coords, netsim, routing, viewport

__all__ = ["coords", "routing", "viewport", "netsim", "__version__"]
