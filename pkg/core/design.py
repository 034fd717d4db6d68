"""
Point configurations on S^d: verification of the t-design property via
Weyl sums, classical generators, orthogonal alignment, and the JSON
configuration format.
"""

import logging
import math
from fractions import Fraction
from pathlib import Path
from typing import Any, Dict, Sequence, Union

import numpy as np
from pydantic import ValidationError
from scipy.linalg import orthogonal_procrustes

from config import settings
from families import get_family
from models import DesignReport, DesignVerdict, Monomial, PointConfiguration, ScalarMode
from utils import (
    ConfigurationFormatError,
    DimensionMismatchError,
    Scalar,
    UnsupportedParameterError,
    dump_json,
    format_scalar,
    parse_json_document,
    parse_scalar,
)
from .moments import enumerate_monomials, sphere_moment

logger = logging.getLogger(__name__)


def weyl_residual(X: PointConfiguration, alpha: Union[Monomial, Sequence[int]]) -> Scalar:
    """
    Mean of x^alpha over the configuration minus its mean over the sphere.

    Args:
        X: Point configuration
        alpha: Monomial (or exponent tuple) of length d+1

    Returns:
        Fraction in EXACT mode, float in FLOAT mode
    """
    monomial = alpha if isinstance(alpha, Monomial) else Monomial(exponents=tuple(alpha))
    if monomial.dimension != X.ambient_dim:
        raise DimensionMismatchError(
            f"monomial has {monomial.dimension} exponents, configuration lives in R^{X.ambient_dim}",
            "alpha",
        )

    moment = sphere_moment(monomial, X.ambient_dim)
    values = [monomial.evaluate(point) for point in X.points]
    if X.mode.is_exact:
        return sum(values, Fraction(0)) / X.n - moment
    return math.fsum(values) / X.n - float(moment)


def verify_design(X: PointConfiguration, t: int, tolerance: float = None) -> DesignReport:
    """
    Check the t-design property on every monomial of degree 1..t.

    EXACT configurations need every residual to vanish exactly; FLOAT
    configurations need max |residual| <= tolerance.

    Args:
        X: Point configuration
        t: Strength to test
        tolerance: FLOAT tolerance (default settings.DESIGN_TOLERANCE)

    Returns:
        DesignReport with per-monomial residuals and the verdict
    """
    if t < 1:
        raise UnsupportedParameterError(f"strength must be at least 1, got {t}", "t")

    residuals: Dict[str, Scalar] = {}
    for monomial in enumerate_monomials(X.ambient_dim, t)[1:]:
        residuals[monomial.key] = weyl_residual(X, monomial)

    zero = Fraction(0) if X.mode.is_exact else 0.0
    max_abs = max((abs(value) for value in residuals.values()), default=zero)

    if X.mode.is_exact:
        used_tolerance = None
        is_design = max_abs == 0
    else:
        used_tolerance = settings.DESIGN_TOLERANCE if tolerance is None else tolerance
        is_design = max_abs <= used_tolerance

    verdict = DesignVerdict.IS_DESIGN if is_design else DesignVerdict.NOT_DESIGN
    logger.info("verify t=%d on %d points: %s (max residual %s)", t, X.n, verdict.value, max_abs)
    return DesignReport(
        t=t,
        mode=X.mode,
        residuals=residuals,
        max_abs_residual=max_abs,
        verdict=verdict,
        tolerance=used_tolerance,
    )


def generate(family: str, **params: int) -> PointConfiguration:
    """
    Generate a classical configuration.

    Args:
        family: 'polygon', 'simplex', 'cross-polytope', 'hypercube' or 'icosahedron'
        **params: n for polygons, d for the dimensional families

    Returns:
        The configuration (cross-polytope EXACT, all others FLOAT)
    """
    return get_family(family).generate(**params)


def _aligned_arrays(X: PointConfiguration, Y: PointConfiguration):
    if X.n != Y.n or X.dimension_d != Y.dimension_d:
        raise DimensionMismatchError(
            f"cannot align {X.n} points on S^{X.dimension_d} with {Y.n} points on S^{Y.dimension_d}",
            "points",
        )
    A = X.as_array()
    B = Y.as_array()
    if X.labels is not None and Y.labels is not None and set(X.labels) == set(Y.labels):
        position = {label: i for i, label in enumerate(Y.labels)}
        B = B[[position[label] for label in X.labels]]
    return A, B


def orbit_distance(X: PointConfiguration, Y: PointConfiguration) -> float:
    """
    Root-mean-square point mismatch after the best orthogonal alignment.

    Points correspond by label when both configurations carry the same
    labels, otherwise by index.

    Args:
        X: Reference configuration
        Y: Configuration to compare

    Returns:
        min over orthogonal R of sqrt(mean_i ||R v_i - w_i||^2)
    """
    A, B = _aligned_arrays(X, Y)
    R, _ = orthogonal_procrustes(A, B)
    mismatch = A @ R - B
    return float(math.sqrt(np.sum(mismatch * mismatch) / X.n))


def min_pairwise_distance(X: PointConfiguration, distinct_only: bool = False) -> float:
    """
    Smallest distance between two points; infinity for a single point.
    With distinct_only, coincident points are ignored.
    """
    A = X.as_array()
    if X.n < 2:
        return math.inf
    differences = A[:, None, :] - A[None, :, :]
    distances = np.sqrt(np.sum(differences * differences, axis=-1))
    distances[np.diag_indices(X.n)] = np.inf
    if distinct_only:
        distances[distances == 0.0] = np.inf
    return float(distances.min())


def convert_mode(X: PointConfiguration, mode: ScalarMode) -> PointConfiguration:
    """
    Convert a configuration between scalar modes.

    EXACT -> FLOAT rounds every rational to the nearest double.
    FLOAT -> EXACT snaps every entry to the nearest rational with bounded
    denominator and requires the result to be exactly unit length.
    """
    mode = ScalarMode(mode)
    if mode is X.mode:
        return X

    if mode is ScalarMode.FLOAT:
        points = [tuple(float(x) for x in point) for point in X.points]
    else:
        points = []
        for i, point in enumerate(X.points):
            snapped = tuple(Fraction(x).limit_denominator(settings.EXACT_DENOMINATOR_LIMIT) for x in point)
            if sum(x * x for x in snapped) != 1:
                raise ConfigurationFormatError(
                    "has no exact rational unit representative; keep this configuration in float mode",
                    f"points[{i}]",
                )
            points.append(snapped)

    return PointConfiguration(dimension_d=X.dimension_d, mode=mode, points=points, labels=X.labels)


def configuration_from_dict(payload: Dict[str, Any], source: str = "configuration") -> PointConfiguration:
    """
    Build a configuration from the JSON document format.

    Fields: "dimension_d" (integer), "mode" ("exact" | "float"), "points"
    (array of arrays; "p/q" strings in exact mode, numbers in float mode),
    optional "labels".
    """
    for field in ("dimension_d", "mode", "points"):
        if field not in payload:
            raise ConfigurationFormatError(f"missing required field in {source}", field)

    dimension_d = payload["dimension_d"]
    if isinstance(dimension_d, bool) or not isinstance(dimension_d, int) or dimension_d < 0:
        raise ConfigurationFormatError(f"must be a non-negative integer, got {dimension_d!r}", "dimension_d")

    try:
        mode = ScalarMode(payload["mode"])
    except ValueError:
        raise ConfigurationFormatError(f"must be 'exact' or 'float', got {payload['mode']!r}", "mode")

    points = payload["points"]
    if not isinstance(points, list) or not points:
        raise ConfigurationFormatError("must be a non-empty array of coordinate arrays", "points")

    parsed = []
    for i, point in enumerate(points):
        if not isinstance(point, list):
            raise ConfigurationFormatError("must be an array of coordinates", f"points[{i}]")
        if len(point) != dimension_d + 1:
            raise DimensionMismatchError(
                f"has {len(point)} coordinates, dimension_d={dimension_d} needs {dimension_d + 1}",
                f"points[{i}]",
            )
        parsed.append(tuple(
            parse_scalar(value, mode.is_exact, field=f"points[{i}][{j}]")
            for j, value in enumerate(point)
        ))

    labels = payload.get("labels")
    if labels is not None and not isinstance(labels, list):
        raise ConfigurationFormatError("must be an array of strings", "labels")

    try:
        return PointConfiguration(dimension_d=dimension_d, mode=mode, points=parsed, labels=labels)
    except ValidationError as e:
        error = e.errors()[0]
        field = ".".join(str(part) for part in error["loc"]) or "points"
        raise ConfigurationFormatError(error["msg"], field)


def configuration_to_dict(X: PointConfiguration) -> Dict[str, Any]:
    """Inverse of configuration_from_dict."""
    payload: Dict[str, Any] = {
        "dimension_d": X.dimension_d,
        "mode": X.mode.value,
        "points": [
            [str(format_scalar(x)) if X.mode.is_exact else float(x) for x in point]
            for point in X.points
        ],
    }
    if X.labels is not None:
        payload["labels"] = list(X.labels)
    return payload


def read_configuration(path: Union[str, Path]) -> PointConfiguration:
    """Load a configuration file."""
    path = Path(path)
    try:
        text = path.read_text()
    except OSError as e:
        raise ConfigurationFormatError(f"cannot read file: {e.strerror}", str(path))
    return configuration_from_dict(parse_json_document(text, str(path)), str(path))


def write_configuration(X: PointConfiguration, path: Union[str, Path]) -> None:
    """Save a configuration file."""
    try:
        Path(path).write_text(dump_json(configuration_to_dict(X)) + "\n")
    except OSError as e:
        raise ConfigurationFormatError(f"cannot write file: {e.strerror}", str(path))
    logger.info("wrote %d points to %s", X.n, path)
