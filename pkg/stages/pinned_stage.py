"""
Pinned stage - rank of the Jacobian of the d+1-pin system at the design,
and flex search along its kernel when the rank is short.
"""

from typing import Any, Dict

from core.rigidity import analyse_system
from graph.state import CertificationState
from utils import RigidDesignError


def pinned_stage(state: CertificationState) -> Dict[str, Any]:
    S = state.get("pinned_system")
    if S is None:
        return {"errors": ["pinned_stage: no pinned system to analyse"]}

    try:
        analysis = analyse_system(S, state.get("rank_tolerance"), search="pinned")
    except RigidDesignError as e:
        return {"errors": [f"pinned_stage: {e.diagnostic()}"]}

    message = {
        "role": "pinned_stage",
        "content": (
            f"rank {analysis.rank.rank}/{analysis.k}, kernel {analysis.rank.kernel_dimension}, "
            f"{analysis.directions_tried} flex attempts, witness: {analysis.witness is not None}"
        ),
    }
    return {"pinned_analysis": analysis, "messages": [message]}
