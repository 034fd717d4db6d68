"""
LangGraph workflow definition for rigidity certification.
Defines how the stages are connected and execute.
"""

from langgraph.graph import END, StateGraph

from .state import CertificationState


def create_workflow():
    """
    Create and compile the certification workflow.

    Workflow structure:

        Design + strength
              |
        Coordinator (pins, systems, bound)
              |
        +-----------------+
        |                 |
    Pinned stage    Hyperplane stage
        |                 |
        +--------+--------+
                 |
            Synthesizer
                 |
            Certificate

    Returns:
        Compiled LangGraph workflow
    """
    from stages.coordinator import coordinator_stage
    from stages.hyperplane_stage import hyperplane_stage
    from stages.pinned_stage import pinned_stage
    from stages.synthesizer import synthesizer_stage

    workflow = StateGraph(CertificationState)

    workflow.add_node("coordinator", coordinator_stage)
    workflow.add_node("pinned_stage", pinned_stage)
    workflow.add_node("hyperplane_stage", hyperplane_stage)
    workflow.add_node("synthesizer", synthesizer_stage)

    workflow.set_entry_point("coordinator")

    # Coordinator -> both analyses in parallel
    workflow.add_edge("coordinator", "pinned_stage")
    workflow.add_edge("coordinator", "hyperplane_stage")

    # Both analyses -> synthesizer
    workflow.add_edge("pinned_stage", "synthesizer")
    workflow.add_edge("hyperplane_stage", "synthesizer")

    workflow.add_edge("synthesizer", END)

    return workflow.compile()
