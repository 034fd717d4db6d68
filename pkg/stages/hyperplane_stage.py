"""
Hyperplane stage - the same analysis with only d pins held fixed.

Fixing d independent points leaves a finite stabiliser, so a kernel
direction here is not a rotation of the whole configuration and may lead
to a flex the d+1-pin system cannot reach.
"""

from typing import Any, Dict

from core.rigidity import analyse_system
from graph.state import CertificationState
from utils import RigidDesignError


def hyperplane_stage(state: CertificationState) -> Dict[str, Any]:
    S = state.get("hyperplane_system")
    if S is None:
        return {"errors": ["hyperplane_stage: no hyperplane system to analyse"]}

    try:
        analysis = analyse_system(S, state.get("rank_tolerance"), search="hyperplane")
    except RigidDesignError as e:
        return {"errors": [f"hyperplane_stage: {e.diagnostic()}"]}

    message = {
        "role": "hyperplane_stage",
        "content": (
            f"rank {analysis.rank.rank}/{analysis.k}, kernel {analysis.rank.kernel_dimension}, "
            f"{analysis.directions_tried} flex attempts, witness: {analysis.witness is not None}"
        ),
    }
    return {"hyperplane_analysis": analysis, "messages": [message]}
