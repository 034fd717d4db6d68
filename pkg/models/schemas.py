"""
Pydantic models for type safety and data validation.
These schemas define the structure of data flowing between the moments,
design, system, rigidity and bound modules.
"""

import math
from enum import Enum
from typing import Any, Dict, List, Optional, Sequence, Tuple

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, model_validator

from config import settings
from utils import DimensionMismatchError, Scalar, format_scalar, parse_scalar


class ScalarMode(str, Enum):
    """Arithmetic used for coordinates and coefficients."""
    EXACT = "exact"
    FLOAT = "float"

    @property
    def is_exact(self) -> bool:
        return self is ScalarMode.EXACT


class Monomial(BaseModel):
    """Exponent multi-index over the d+1 ambient coordinates."""
    model_config = ConfigDict(frozen=True)

    exponents: Tuple[int, ...] = Field(..., description="Non-negative exponent per coordinate")

    @model_validator(mode="after")
    def _check_exponents(self) -> "Monomial":
        if not self.exponents:
            raise ValueError("a monomial needs at least one coordinate")
        if any(e < 0 for e in self.exponents):
            raise ValueError(f"exponents must be non-negative, got {self.exponents}")
        return self

    @classmethod
    def of(cls, *exponents: int) -> "Monomial":
        return cls(exponents=tuple(exponents))

    @property
    def degree(self) -> int:
        return sum(self.exponents)

    @property
    def dimension(self) -> int:
        return len(self.exponents)

    @property
    def key(self) -> str:
        """Exponent tuple rendered as comma-separated integers (JSON key)."""
        return ",".join(str(e) for e in self.exponents)

    @property
    def sort_key(self) -> Tuple[int, Tuple[int, ...]]:
        """Graded lexicographic key."""
        return self.degree, self.exponents

    def evaluate(self, point: Sequence[Scalar]) -> Scalar:
        """Product of coordinate powers at a point."""
        if len(point) != len(self.exponents):
            raise DimensionMismatchError(
                f"point has {len(point)} coordinates, monomial has {len(self.exponents)}",
                "alpha",
            )
        result = point[0] ** 0
        for x, e in zip(point, self.exponents):
            if e:
                result *= x ** e
        return result

    def derivative(self, j: int) -> Tuple[int, Optional["Monomial"]]:
        """
        Partial derivative with respect to coordinate j.

        Returns:
            (coefficient, lowered monomial); (0, None) when x_j is absent
        """
        e = self.exponents[j]
        if e == 0:
            return 0, None
        lowered = list(self.exponents)
        lowered[j] -= 1
        return e, Monomial(exponents=tuple(lowered))


class PointConfiguration(BaseModel):
    """
    n unit points on S^d, stored as vectors in R^{d+1}.

    EXACT configurations hold Fractions and must have squared norm exactly 1;
    FLOAT configurations hold floats within UNIT_NORM_TOLERANCE of 1.
    """
    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    dimension_d: int = Field(..., ge=0, description="Sphere dimension d (points live in R^{d+1})")
    mode: ScalarMode = Field(ScalarMode.FLOAT, description="Scalar arithmetic of the coordinates")
    points: Tuple[Tuple[Any, ...], ...] = Field(..., description="Coordinate vectors")
    labels: Optional[Tuple[str, ...]] = Field(None, description="Optional per-point identifiers")

    @model_validator(mode="before")
    @classmethod
    def _coerce_points(cls, data: Any) -> Any:
        if not isinstance(data, dict) or "points" not in data:
            return data
        mode = ScalarMode(data.get("mode", ScalarMode.FLOAT))
        points = tuple(
            tuple(
                parse_scalar(value, mode.is_exact, field=f"points[{i}][{j}]")
                for j, value in enumerate(point)
            )
            for i, point in enumerate(data["points"])
        )
        labels = data.get("labels")
        if labels is not None:
            labels = tuple(str(label) for label in labels)
        return {**data, "mode": mode, "points": points, "labels": labels}

    @model_validator(mode="after")
    def _check_invariants(self) -> "PointConfiguration":
        if not self.points:
            raise ValueError("a configuration needs at least one point")

        width = self.dimension_d + 1
        for i, point in enumerate(self.points):
            if len(point) != width:
                raise ValueError(f"points[{i}] has {len(point)} coordinates, expected {width}")
            if self.mode.is_exact:
                squared = sum(x * x for x in point)
                if squared != 1:
                    raise ValueError(f"points[{i}] has squared norm {squared}, expected exactly 1")
            else:
                squared = math.fsum(x * x for x in point)
                if abs(squared - 1.0) > settings.UNIT_NORM_TOLERANCE:
                    raise ValueError(f"points[{i}] has squared norm {squared!r}, expected 1")

        if self.labels is not None:
            if len(self.labels) != len(self.points):
                raise ValueError(f"{len(self.labels)} labels for {len(self.points)} points")
            if len(set(self.labels)) != len(self.labels):
                raise ValueError("labels must be unique")
        return self

    @property
    def n(self) -> int:
        return len(self.points)

    @property
    def ambient_dim(self) -> int:
        return self.dimension_d + 1

    def as_array(self) -> np.ndarray:
        """Float copy of the coordinates, shape (n, d+1)."""
        return np.array([[float(x) for x in point] for point in self.points], dtype=float)

    def reordered(self, permutation: Sequence[int]) -> "PointConfiguration":
        """New configuration whose point i is this configuration's point permutation[i]."""
        labels = None
        if self.labels is not None:
            labels = tuple(self.labels[i] for i in permutation)
        return PointConfiguration(
            dimension_d=self.dimension_d,
            mode=self.mode,
            points=tuple(self.points[i] for i in permutation),
            labels=labels,
        )


class DesignVerdict(str, Enum):
    IS_DESIGN = "IS_DESIGN"
    NOT_DESIGN = "NOT_DESIGN"


class DesignReport(BaseModel):
    """Weyl residuals of a configuration for every monomial of degree 1..t."""
    model_config = ConfigDict(arbitrary_types_allowed=True)

    t: int = Field(..., ge=1, description="Tested strength")
    mode: ScalarMode
    residuals: Dict[str, Any] = Field(default_factory=dict, description="Monomial key -> normalized residual")
    max_abs_residual: Any = Field(..., description="Largest absolute residual")
    verdict: DesignVerdict
    tolerance: Optional[float] = Field(None, description="Tolerance used (FLOAT mode only)")

    def residual(self, monomial: Monomial) -> Scalar:
        return self.residuals[monomial.key]

    @property
    def is_design(self) -> bool:
        return self.verdict is DesignVerdict.IS_DESIGN

    def to_dict(self) -> Dict[str, Any]:
        return {
            "t": self.t,
            "mode": self.mode.value,
            "verdict": self.verdict.value,
            "max_abs_residual": format_scalar(self.max_abs_residual),
            "tolerance": self.tolerance,
            "residuals": {key: format_scalar(value) for key, value in self.residuals.items()},
        }


class PolynomialSystem(BaseModel):
    """
    Pinned polynomial system of a configuration.

    Unknowns are the coordinates of the points after the first num_pins;
    equations are one sphere equation per unknown point followed by one
    design equation per monomial of degree 1..t in graded lex order.
    """
    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    t: int = Field(..., ge=1)
    num_pins: int = Field(..., ge=0, description="Number of leading points held constant")
    configuration: PointConfiguration = Field(..., description="Pin-ordered configuration")
    permutation: Tuple[int, ...] = Field(..., description="New index -> original index")
    monomials: Tuple[Monomial, ...] = Field(..., description="Design monomials, degree 1..t")
    moments: Tuple[Any, ...] = Field(..., description="Normalized sphere moment per monomial")
    design_constants: Tuple[Any, ...] = Field(
        ..., description="Constant term per design equation: pinned sum minus n times the moment"
    )

    @property
    def d(self) -> int:
        return self.configuration.dimension_d

    @property
    def n(self) -> int:
        return self.configuration.n

    @property
    def mode(self) -> ScalarMode:
        return self.configuration.mode

    @property
    def width(self) -> int:
        return self.d + 1

    @property
    def pinned(self) -> Tuple[Tuple[Any, ...], ...]:
        return self.configuration.points[: self.num_pins]

    @property
    def num_variable_points(self) -> int:
        return self.n - self.num_pins

    @property
    def k(self) -> int:
        return self.width * self.num_variable_points

    @property
    def variable_names(self) -> List[str]:
        return [
            f"x_{i + 1}_{j + 1}"
            for i in range(self.num_pins, self.n)
            for j in range(self.width)
        ]

    @property
    def num_sphere_equations(self) -> int:
        return self.num_variable_points

    @property
    def num_design_equations(self) -> int:
        return len(self.monomials)

    @property
    def num_equations(self) -> int:
        return self.num_sphere_equations + self.num_design_equations

    @property
    def degree(self) -> int:
        """t' = max(t, 2), the bound on every equation's total degree."""
        return max(self.t, 2)

    @property
    def equation_degrees(self) -> List[int]:
        return [2] * self.num_sphere_equations + [m.degree for m in self.monomials]


class Assignment(BaseModel):
    """Values for every unknown x_{i,j}, flattened point by point."""
    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    values: Tuple[Any, ...]
    mode: ScalarMode

    @model_validator(mode="before")
    @classmethod
    def _coerce_values(cls, data: Any) -> Any:
        if not isinstance(data, dict) or "values" not in data:
            return data
        mode = ScalarMode(data.get("mode", ScalarMode.FLOAT))
        values = tuple(
            parse_scalar(value, mode.is_exact, field=f"values[{i}]")
            for i, value in enumerate(data["values"])
        )
        return {**data, "mode": mode, "values": values}

    def blocks(self, width: int) -> List[Tuple[Any, ...]]:
        """Split into per-point coordinate blocks."""
        return [tuple(self.values[i:i + width]) for i in range(0, len(self.values), width)]

    def as_array(self) -> np.ndarray:
        return np.array([float(v) for v in self.values], dtype=float)


class RankResult(BaseModel):
    """Rank and kernel basis of a matrix."""
    model_config = ConfigDict(arbitrary_types_allowed=True)

    rank: int = Field(..., ge=0)
    columns: int = Field(..., ge=0)
    kernel: Tuple[Tuple[Any, ...], ...] = Field(default_factory=tuple)
    mode: ScalarMode
    tolerance: Optional[float] = None
    singular_values: Tuple[float, ...] = Field(default_factory=tuple)
    near_boundary: bool = Field(False, description="A singular value sits within the boundary factor of the threshold")

    @property
    def kernel_dimension(self) -> int:
        return len(self.kernel)


class FlexResult(BaseModel):
    """Outcome of one Gauss-Newton projection from a perturbed start."""

    converged: bool
    assignment: Tuple[float, ...]
    residual_norm: float
    displacement: float = Field(..., description="Euclidean distance from the design assignment")
    iterations: int
    step: float = Field(..., description="Perturbation size h of this attempt")
    within_separation: bool = Field(True, description="Every point stayed within half the minimum pairwise distance")
    succeeded: bool = False

    @model_validator(mode="after")
    def _check_convergence(self) -> "FlexResult":
        if self.converged and self.residual_norm > settings.FLEX_RESIDUAL_TOLERANCE:
            raise ValueError(f"converged with residual norm {self.residual_norm!r}")
        return self

    def to_dict(self) -> Dict[str, Any]:
        return {
            "converged": self.converged,
            "succeeded": self.succeeded,
            "step": self.step,
            "iterations": self.iterations,
            "residual_norm": self.residual_norm,
            "displacement": self.displacement,
            "within_separation": self.within_separation,
            "assignment": list(self.assignment),
        }


class FlexWitness(BaseModel):
    """A nearby design that refutes rigidity."""
    model_config = ConfigDict(arbitrary_types_allowed=True)

    configuration: PointConfiguration = Field(..., description="Witness in the input's point order")
    anchors: Tuple[int, ...] = Field(..., description="Original indices of the points held fixed")
    search: str = Field(..., description="'pinned' or 'hyperplane'")
    direction_index: int
    sign: int
    step: float
    design_residual: float
    max_deviation: float
    orbit_distance: float


class SystemAnalysis(BaseModel):
    """Jacobian rank at the design assignment and the outcome of the flex search."""
    model_config = ConfigDict(arbitrary_types_allowed=True)

    search: str = Field(..., description="'pinned' (d+1 pins) or 'hyperplane' (d pins)")
    k: int
    rank: RankResult
    directions_tried: int = 0
    flex: Optional[FlexResult] = Field(None, description="Last projection attempted")
    witness: Optional[FlexWitness] = None


class BoundReport(BaseModel):
    """Both sides of t'(2t'-1)^(k-1) >= (n-d-1)! as exact integers."""

    t: int = Field(..., ge=1)
    d: int = Field(..., ge=1)
    n: int = Field(..., ge=1)
    t_prime: int
    k: int
    lhs: int
    rhs: int
    holds: bool

    @model_validator(mode="after")
    def _check_holds(self) -> "BoundReport":
        if self.holds != (self.lhs >= self.rhs):
            raise ValueError("holds must equal lhs >= rhs")
        return self

    def to_dict(self) -> Dict[str, Any]:
        return {
            "t": self.t,
            "d": self.d,
            "n": self.n,
            "t_prime": self.t_prime,
            "k": self.k,
            "lhs": str(self.lhs),
            "rhs": str(self.rhs),
            "lhs_digits": len(str(self.lhs)),
            "rhs_digits": len(str(self.rhs)),
            "holds": self.holds,
        }


class RigidityStatus(str, Enum):
    PINNED_ISOLATED_CERTIFIED = "PINNED_ISOLATED_CERTIFIED"
    NOT_RIGID_FLEX_FOUND = "NOT_RIGID_FLEX_FOUND"
    INCONCLUSIVE = "INCONCLUSIVE"


class RigidityCertificate(BaseModel):
    """Jacobian rank data of the pinned system plus a three-valued verdict."""
    model_config = ConfigDict(arbitrary_types_allowed=True)

    status: RigidityStatus
    t: int
    mode: ScalarMode
    k: int
    jacobian_rank: int
    kernel_dimension: int
    rank_tolerance: Optional[float] = None
    near_boundary: bool = False
    hyperplane_k: int
    hyperplane_rank: int
    hyperplane_kernel_dimension: int
    permutation: Tuple[int, ...]
    bound: Optional[BoundReport] = None
    witness: Optional[FlexWitness] = None

    @model_validator(mode="after")
    def _check_status(self) -> "RigidityCertificate":
        if self.status is RigidityStatus.PINNED_ISOLATED_CERTIFIED and self.jacobian_rank != self.k:
            raise ValueError("a certified root needs jacobian_rank == k")
        if (self.status is RigidityStatus.NOT_RIGID_FLEX_FOUND) != (self.witness is not None):
            raise ValueError("a witness is present exactly when the status is NOT_RIGID_FLEX_FOUND")
        return self


class RunConfiguration(BaseModel):
    """Validated command-line arguments of one CLI invocation."""

    subcommand: str
    input_path: Optional[str] = None
    output_path: Optional[str] = None
    export_path: Optional[str] = None
    family: Optional[str] = None
    t: Optional[int] = Field(None, ge=1)
    d: Optional[int] = Field(None, ge=0)
    n: Optional[int] = Field(None, ge=1)
    t_range: Optional[Tuple[int, int]] = None
    d_range: Optional[Tuple[int, int]] = None
    tolerance: Optional[float] = Field(None, gt=0)
    rank_tolerance: Optional[float] = Field(None, gt=0)
    mode_override: Optional[ScalarMode] = None
    seed: int = settings.DEFAULT_SEED
    direction: str = "auto"
    anchors: str = Field("full", pattern="^(full|hyperplane)$")
