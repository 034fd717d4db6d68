"""
Synthesizer stage - combines both analyses and the bound into the certificate.
Last stage in the workflow.
"""

import logging
from typing import Any, Dict, Optional

from core.design import min_pairwise_distance
from graph.state import CertificationState
from models import BoundReport, RigidityCertificate, RigidityStatus, SystemAnalysis

logger = logging.getLogger(__name__)


def synthesizer_stage(state: CertificationState) -> Dict[str, Any]:
    """
    Decide the status.

    Precedence:
    1. pinned rank short and a singular value near the threshold -> INCONCLUSIVE
    2. a sound witness from the pinned search, then the hyperplane search -> NOT_RIGID_FLEX_FOUND
    3. pinned rank == k and the size inequality consistent -> PINNED_ISOLATED_CERTIFIED
    4. otherwise INCONCLUSIVE

    Args:
        state: CertificationState with both analyses

    Returns:
        Partial state with certificate
    """
    pinned: Optional[SystemAnalysis] = state.get("pinned_analysis")
    hyperplane: Optional[SystemAnalysis] = state.get("hyperplane_analysis")
    if pinned is None or hyperplane is None:
        return {"errors": ["synthesizer: missing analysis data"]}

    X = state["configuration"]
    S = state["pinned_system"]
    bound: Optional[BoundReport] = state.get("bound")
    full_rank = pinned.rank.rank == pinned.k
    witness = pinned.witness or hyperplane.witness

    if not full_rank and pinned.rank.near_boundary:
        status = RigidityStatus.INCONCLUSIVE
        reason = "rank deficiency sits at the tolerance boundary"
        witness = None
    elif witness is not None:
        status = RigidityStatus.NOT_RIGID_FLEX_FOUND
        reason = f"flex found by the {witness.search} search"
    elif full_rank and _bound_contradicted(bound, X):
        status = RigidityStatus.INCONCLUSIVE
        reason = "full-rank pinned root but the size inequality fails"
        logger.warning(
            "pinned Jacobian has full rank for n=%d, t=%d, d=%d, yet %s; reporting INCONCLUSIVE",
            X.n, state["t"], X.dimension_d, "t'(2t'-1)^(k-1) < (n-d-1)!",
        )
    elif full_rank:
        status = RigidityStatus.PINNED_ISOLATED_CERTIFIED
        reason = "pinned Jacobian has full rank"
    else:
        status = RigidityStatus.INCONCLUSIVE
        reason = "rank deficient and no flex found"

    certificate = RigidityCertificate(
        status=status,
        t=state["t"],
        mode=S.mode,
        k=pinned.k,
        jacobian_rank=pinned.rank.rank,
        kernel_dimension=pinned.rank.kernel_dimension,
        rank_tolerance=pinned.rank.tolerance,
        near_boundary=pinned.rank.near_boundary,
        hyperplane_k=hyperplane.k,
        hyperplane_rank=hyperplane.rank.rank,
        hyperplane_kernel_dimension=hyperplane.rank.kernel_dimension,
        permutation=S.permutation,
        bound=bound,
        witness=witness,
    )
    message = {"role": "synthesizer", "content": f"{status.value}: {reason}"}
    return {"certificate": certificate, "messages": [message]}


def _bound_contradicted(bound: Optional[BoundReport], X) -> bool:
    # Block permutations give (n-d-1)! distinct roots only when the points are distinct.
    if bound is None or bound.holds:
        return False
    return min_pairwise_distance(X) > 0
