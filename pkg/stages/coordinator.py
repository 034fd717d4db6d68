"""
Coordinator stage - selects pins and builds both polynomial systems.
First stage in the workflow.
"""

import logging
from typing import Any, Dict

from core.bound import theorem_check
from core.system import build_system
from graph.state import CertificationState
from utils import RigidDesignError

logger = logging.getLogger(__name__)


def coordinator_stage(state: CertificationState) -> Dict[str, Any]:
    """
    Build the pinned (d+1 pins) and hyperplane-anchored (d pins) systems
    and evaluate the size inequality at (t, d, n).

    Args:
        state: Current CertificationState

    Returns:
        Partial state with pinned_system, hyperplane_system and bound
    """
    X = state["configuration"]
    t = state["t"]

    try:
        pinned = build_system(X, t)
        hyperplane = build_system(X, t, num_pins=X.dimension_d)
        bound = theorem_check(t, X.dimension_d, X.n) if X.dimension_d >= 1 else None
    except RigidDesignError as e:
        return {"errors": [f"coordinator: {e.diagnostic()}"]}

    message = {
        "role": "coordinator",
        "content": (
            f"n={X.n} d={X.dimension_d} t={t}: pinned k={pinned.k} "
            f"({pinned.num_equations} equations), hyperplane k={hyperplane.k}, "
            f"pins {list(pinned.permutation[:pinned.num_pins])}"
        ),
    }
    return {
        "pinned_system": pinned,
        "hyperplane_system": hyperplane,
        "bound": bound,
        "messages": [message],
    }
