"""
State definition for the certification LangGraph workflow.
This state flows through every stage in the graph.
"""

from operator import add
from typing import Dict, List, Optional, TypedDict

from typing_extensions import Annotated

from models import BoundReport, PointConfiguration, PolynomialSystem, RigidityCertificate, SystemAnalysis


class CertificationState(TypedDict):
    """
    State that flows through the stage graph.
    Each stage reads from the shared state and returns the keys it fills.

    Flow:
    1. Caller provides a verified design and its strength
    2. Coordinator selects pins and builds the pinned and hyperplane systems
    3. Pinned stage + hyperplane stage run in parallel
    4. Synthesizer combines both analyses into the certificate
    """

    # ===== INPUT =====
    configuration: PointConfiguration
    """Configuration under test, in input order"""

    t: int
    """Design strength"""

    rank_tolerance: Optional[float]
    """FLOAT rank threshold override (None uses settings.RANK_TOLERANCE)"""

    # ===== COORDINATOR OUTPUT =====
    pinned_system: Optional[PolynomialSystem]
    """System with d+1 spanning pins"""

    hyperplane_system: Optional[PolynomialSystem]
    """System with d pins spanning a hyperplane"""

    bound: Optional[BoundReport]
    """Size inequality at (t, d, n); None on S^0"""

    # ===== STAGE OUTPUTS =====
    pinned_analysis: Optional[SystemAnalysis]
    hyperplane_analysis: Optional[SystemAnalysis]

    # ===== SYNTHESIZER OUTPUT =====
    certificate: Optional[RigidityCertificate]

    # ===== METADATA =====
    messages: Annotated[List[Dict[str, str]], add]
    """Stage execution log"""

    errors: Annotated[List[str], add]
    """Errors raised inside stages"""
