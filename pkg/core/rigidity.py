"""
Isolated-root certification and flex search.

A nonsingular pinned root (Jacobian rank = number of unknowns) is
isolated, which is the condition rigidity forces. A flex is a nearby
design, found by Gauss-Newton projection from a step along a Jacobian
kernel direction, that no orthogonal map carries the input onto; it
refutes rigidity outright.
"""

import logging
import math
from fractions import Fraction
from typing import Any, Dict, List, Optional, Sequence

import numpy as np
from pydantic import ValidationError

from config import settings
from models import (
    Assignment,
    FlexResult,
    FlexWitness,
    PointConfiguration,
    PolynomialSystem,
    RankResult,
    RigidityCertificate,
    ScalarMode,
    SystemAnalysis,
)
from utils import LayoutMismatchError, NotADesignError, PreconditionError, RigidDesignError
from .design import configuration_to_dict, min_pairwise_distance, orbit_distance, verify_design
from .system import as_float, build_system, design_assignment, evaluate, jacobian

logger = logging.getLogger(__name__)


# ===== RANK =====

def matrix_rank(
    M: Any,
    mode: ScalarMode = ScalarMode.FLOAT,
    tolerance: float = None,
    columns: int = None,
) -> RankResult:
    """
    Rank and kernel basis of a matrix.

    EXACT: fraction-free (Bareiss) elimination on the rows scaled to
    integers; the kernel basis is exact, one primitive integer vector per
    free column. FLOAT: singular values above tolerance * largest count
    toward the rank; the kernel basis is the trailing right singular vectors.

    Args:
        M: Matrix as a sequence of rows or a 2-D array
        mode: EXACT or FLOAT
        tolerance: Relative singular value threshold (default settings.RANK_TOLERANCE)
        columns: Column count, needed only when M has no rows

    Returns:
        RankResult
    """
    mode = ScalarMode(mode)
    if isinstance(M, np.ndarray):
        rows = M.tolist()
        columns = M.shape[1] if M.ndim == 2 else columns
    else:
        rows = [list(row) for row in M]
    if columns is None:
        columns = len(rows[0]) if rows else 0
    if any(len(row) != columns for row in rows):
        raise LayoutMismatchError("rows have inconsistent lengths", "matrix")

    if mode.is_exact:
        return _rank_exact(rows, columns)
    return _rank_float(rows, columns, settings.RANK_TOLERANCE if tolerance is None else tolerance)


def _rank_exact(rows: List[List[Any]], columns: int) -> RankResult:
    matrix = []
    for row in rows:
        values = [Fraction(x) for x in row]
        scale = math.lcm(*(v.denominator for v in values)) if values else 1
        matrix.append([int(v * scale) for v in values])

    pivots: List[int] = []
    r = 0
    previous = 1
    for c in range(columns):
        if r == len(matrix):
            break
        pivot_row = next((i for i in range(r, len(matrix)) if matrix[i][c] != 0), None)
        if pivot_row is None:
            continue
        matrix[r], matrix[pivot_row] = matrix[pivot_row], matrix[r]
        pivot = matrix[r][c]
        for i in range(r + 1, len(matrix)):
            below = matrix[i][c]
            for j in range(c + 1, columns):
                matrix[i][j] = (matrix[i][j] * pivot - below * matrix[r][j]) // previous
            matrix[i][c] = 0
        previous = pivot
        pivots.append(c)
        r += 1

    kernel = []
    for free in (c for c in range(columns) if c not in pivots):
        solution = [Fraction(0)] * columns
        solution[free] = Fraction(1)
        for row_index in range(len(pivots) - 1, -1, -1):
            c = pivots[row_index]
            row = matrix[row_index]
            s = sum((row[j] * solution[j] for j in range(c + 1, columns)), Fraction(0))
            solution[c] = -s / row[c]
        kernel.append(_primitive(solution))

    return RankResult(rank=len(pivots), columns=columns, kernel=tuple(kernel), mode=ScalarMode.EXACT)


def _primitive(vector: Sequence[Fraction]) -> tuple:
    scale = math.lcm(*(v.denominator for v in vector))
    integers = [int(v * scale) for v in vector]
    divisor = math.gcd(*integers) or 1
    return tuple(Fraction(v // divisor) for v in integers)


def _rank_float(rows: List[List[Any]], columns: int, tolerance: float) -> RankResult:
    A = np.array(rows, dtype=float).reshape(len(rows), columns)
    if A.size == 0:
        return RankResult(
            rank=0, columns=columns, kernel=tuple(tuple(row) for row in np.eye(columns).tolist()),
            mode=ScalarMode.FLOAT, tolerance=tolerance,
        )

    _, s, Vt = np.linalg.svd(A, full_matrices=True)
    largest = float(s[0]) if s.size else 0.0
    threshold = tolerance * largest
    rank = int(np.sum(s > threshold)) if largest > 0 else 0

    near_boundary = False
    if largest > 0:
        factor = settings.NEAR_BOUNDARY_FACTOR
        near_boundary = bool(np.any((s >= threshold / factor) & (s <= threshold * factor)))

    return RankResult(
        rank=rank,
        columns=columns,
        kernel=tuple(tuple(row) for row in Vt[rank:].tolist()),
        mode=ScalarMode.FLOAT,
        tolerance=tolerance,
        singular_values=tuple(float(v) for v in s),
        near_boundary=near_boundary,
    )


# ===== FLEX SEARCH =====

def flex_search(
    X: PointConfiguration,
    t: int,
    direction: Sequence[float],
    steps: Sequence[float] = None,
    max_iterations: int = None,
    num_pins: int = None,
) -> FlexResult:
    """
    Look for a nearby design along a direction in the unknowns.

    The direction is expressed in the variable layout of
    build_system(X, t, num_pins); pinned points never move.

    Args:
        X: Configuration
        t: Strength
        direction: Unit vector of length k
        steps: Perturbation sizes tried in order (default settings.FLEX_STEPS)
        max_iterations: Gauss-Newton iterations per step (default settings.FLEX_MAX_ITERATIONS)
        num_pins: Pins to hold fixed (default d+1)

    Returns:
        FlexResult of the first successful step, else of the last one tried
    """
    return project_flex(build_system(X, t, num_pins), direction, steps, max_iterations)


def project_flex(
    S: PolynomialSystem,
    direction: Sequence[float],
    steps: Sequence[float] = None,
    max_iterations: int = None,
) -> FlexResult:
    """
    Perturb the design assignment of S by h * direction for each h, then
    project back onto the solution set with undamped Gauss-Newton.

    A step succeeds when the projection converges, lands at least
    FLEX_MIN_DISPLACEMENT away from the design, and moves no point by half
    the minimum pairwise distance or more.
    """
    steps = settings.FLEX_STEPS if steps is None else tuple(steps)
    max_iterations = settings.FLEX_MAX_ITERATIONS if max_iterations is None else max_iterations

    FS = as_float(S)
    origin = design_assignment(FS).as_array()
    d = np.asarray(direction, dtype=float).reshape(-1)
    if d.shape != origin.shape:
        raise LayoutMismatchError(f"direction has {d.size} entries, system has {S.k} variables", "direction")
    norm = float(np.linalg.norm(d))
    if norm == 0.0:
        raise PreconditionError("direction must be non-zero", "direction")
    if abs(norm - 1.0) > 1e-9:
        raise PreconditionError(f"direction must have unit norm, got {norm!r}", "direction")

    radius = min_pairwise_distance(S.configuration, distinct_only=True) / 2
    result = None
    for h in steps:
        result = _gauss_newton(FS, origin, origin + h * d, h, max_iterations, radius)
        logger.debug(
            "flex step %g: converged=%s displacement=%.3e residual=%.3e",
            h, result.converged, result.displacement, result.residual_norm,
        )
        if result.succeeded:
            break
    return result


def _gauss_newton(
    FS: PolynomialSystem,
    origin: np.ndarray,
    start: np.ndarray,
    step: float,
    max_iterations: int,
    radius: float,
) -> FlexResult:
    def residual(x: np.ndarray) -> np.ndarray:
        return np.array(evaluate(FS, Assignment(values=x.tolist(), mode=ScalarMode.FLOAT)), dtype=float)

    x = start.copy()
    r = residual(x)
    norm = float(np.linalg.norm(r))
    iterations = 0
    converged = False
    while True:
        if norm <= settings.FLEX_RESIDUAL_TOLERANCE:
            converged = True
            break
        if iterations >= max_iterations:
            break
        J = np.array(jacobian(FS, Assignment(values=x.tolist(), mode=ScalarMode.FLOAT)), dtype=float)
        delta, *_ = np.linalg.lstsq(J, -r, rcond=None)
        candidate = x + delta
        candidate_r = residual(candidate)
        candidate_norm = float(np.linalg.norm(candidate_r))
        iterations += 1
        if not math.isfinite(candidate_norm) or candidate_norm > settings.FLEX_DIVERGENCE_NORM:
            break
        x, r, norm = candidate, candidate_r, candidate_norm

    offset = x - origin
    displacement = float(np.linalg.norm(offset))
    moved = np.linalg.norm(offset.reshape(-1, FS.width), axis=1) if offset.size else np.zeros(0)
    within_separation = bool(np.all(moved < radius))
    return FlexResult(
        converged=converged,
        assignment=tuple(x.tolist()),
        residual_norm=norm,
        displacement=displacement,
        iterations=iterations,
        step=step,
        within_separation=within_separation,
        succeeded=converged and within_separation and displacement >= settings.FLEX_MIN_DISPLACEMENT,
    )


# ===== ANALYSIS =====

def analyse_system(S: PolynomialSystem, rank_tolerance: float = None, search: str = "pinned") -> SystemAnalysis:
    """
    Jacobian rank at the design assignment; when the rank is short, flex
    search along each kernel basis vector, positive sign first. The first
    sound witness wins.
    """
    J = jacobian(S, design_assignment(S))
    rank = matrix_rank(J, S.mode, rank_tolerance, columns=S.k)
    analysis = SystemAnalysis(search=search, k=S.k, rank=rank)
    if rank.rank == S.k:
        return analysis

    tried = 0
    last = None
    for index, vector in enumerate(rank.kernel[: settings.MAX_FLEX_DIRECTIONS]):
        direction = np.array([float(v) for v in vector])
        direction /= np.linalg.norm(direction)
        for sign in (1, -1):
            tried += 1
            last = project_flex(S, sign * direction)
            if not last.succeeded:
                continue
            witness = build_witness(S, last, search, index, sign)
            if witness is not None:
                logger.info("%s flex found along kernel direction %d (%+d)", search, index, sign)
                return analysis.model_copy(update={"directions_tried": tried, "flex": last, "witness": witness})

    return analysis.model_copy(update={"directions_tried": tried, "flex": last})


def build_witness(
    S: PolynomialSystem,
    result: FlexResult,
    search: str,
    direction_index: int,
    sign: int,
) -> Optional[FlexWitness]:
    """
    Turn a successful projection into a witness, or None when it fails any
    acceptance check: design residual, exact anchors, deviation, point
    separation, and distance from the orthogonal orbit of the input.
    """
    inverse = [0] * S.n
    for new, old in enumerate(S.permutation):
        inverse[old] = new
    original = S.configuration.reordered(inverse)

    pins = [tuple(float(x) for x in point) for point in S.configuration.points[: S.num_pins]]
    moved = [tuple(result.assignment[i:i + S.width]) for i in range(0, S.k, S.width)]
    ordered = pins + moved
    try:
        candidate = PointConfiguration(
            dimension_d=S.d,
            mode=ScalarMode.FLOAT,
            points=[ordered[inverse[i]] for i in range(S.n)],
            labels=original.labels,
        )
    except ValidationError as e:
        logger.debug("flex candidate rejected: %s", e.errors()[0]["msg"])
        return None

    report = verify_design(candidate, S.t, tolerance=settings.WITNESS_RESIDUAL_TOLERANCE)
    reference = original.as_array()
    max_deviation = float(np.max(np.abs(candidate.as_array() - reference)))
    distance = orbit_distance(original, candidate)
    anchors = tuple(sorted(S.permutation[: S.num_pins]))
    anchored = all(candidate.points[a] == tuple(reference[a].tolist()) for a in anchors)

    if not (
        report.is_design
        and anchored
        and result.within_separation
        and max_deviation >= settings.FLEX_MIN_DISPLACEMENT
        and distance > settings.WITNESS_ORBIT_SEPARATION
    ):
        logger.debug(
            "flex candidate rejected: design=%s anchored=%s deviation=%.3e orbit distance=%.3e",
            report.is_design, anchored, max_deviation, distance,
        )
        return None

    return FlexWitness(
        configuration=candidate,
        anchors=anchors,
        search=search,
        direction_index=direction_index,
        sign=sign,
        step=result.step,
        design_residual=float(report.max_abs_residual),
        max_deviation=max_deviation,
        orbit_distance=distance,
    )


# ===== CERTIFICATION =====

def certify(X: PointConfiguration, t: int, rank_tolerance: float = None) -> RigidityCertificate:
    """
    Certify the isolated pinned root or refute rigidity with a flex.

    Runs the certification workflow: pin selection, the pinned (d+1 pins)
    and hyperplane-anchored (d pins) analyses in parallel, then the verdict.

    Args:
        X: A t-design (exactly, or within the design tolerance)
        t: Strength
        rank_tolerance: FLOAT rank threshold override

    Returns:
        RigidityCertificate
    """
    if X.n < X.ambient_dim:
        raise PreconditionError(f"need at least d+1 = {X.ambient_dim} points, got {X.n}", "points")
    report = verify_design(X, t)
    if not report.is_design:
        raise NotADesignError(
            f"configuration is not a {t}-design (max residual {report.max_abs_residual}); refusing to certify",
            "t",
        )

    from graph.workflow import create_workflow

    app = create_workflow()
    final = app.invoke({
        "configuration": X,
        "t": t,
        "rank_tolerance": rank_tolerance,
        "pinned_system": None,
        "hyperplane_system": None,
        "bound": None,
        "pinned_analysis": None,
        "hyperplane_analysis": None,
        "certificate": None,
        "messages": [],
        "errors": [],
    })

    for message in final.get("messages", []):
        logger.debug("[%s] %s", message["role"], message["content"])
    if final.get("errors"):
        raise RigidDesignError("; ".join(final["errors"]), "configuration")
    return final["certificate"]


def certificate_to_dict(certificate: RigidityCertificate) -> Dict[str, Any]:
    """JSON form; the witness configuration uses the configuration file format."""
    payload: Dict[str, Any] = {
        "status": certificate.status.value,
        "t": certificate.t,
        "mode": certificate.mode.value,
        "k": certificate.k,
        "jacobian_rank": certificate.jacobian_rank,
        "kernel_dimension": certificate.kernel_dimension,
        "rank_tolerance": certificate.rank_tolerance,
        "near_boundary": certificate.near_boundary,
        "hyperplane": {
            "k": certificate.hyperplane_k,
            "jacobian_rank": certificate.hyperplane_rank,
            "kernel_dimension": certificate.hyperplane_kernel_dimension,
        },
        "permutation": list(certificate.permutation),
        "bound": certificate.bound.to_dict() if certificate.bound else None,
        "witness": None,
    }
    witness = certificate.witness
    if witness is not None:
        payload["witness"] = {
            "search": witness.search,
            "anchors": list(witness.anchors),
            "direction_index": witness.direction_index,
            "sign": witness.sign,
            "step": witness.step,
            "design_residual": witness.design_residual,
            "max_deviation": witness.max_deviation,
            "orbit_distance": witness.orbit_distance,
            "configuration": configuration_to_dict(witness.configuration),
        }
    return payload
