"""
The pinned polynomial system of a configuration.

Unknowns x_{i,j} are the coordinates of every point after the pins.
Equations, in order:
    f_i = sum_j x_{i,j}^2 - 1                          one per unknown point
    g_s = c_s + sum_i P_s(x_{i,1}, ..., x_{i,d+1})     one per monomial P_s, degree 1..t
with c_s = sum over pins of P_s - n * (normalized sphere moment of P_s).
A configuration is a t-design exactly when its own coordinates are a root.
"""

import logging
import math
from fractions import Fraction
from functools import lru_cache
from tokenize import TokenError
from typing import Any, List, Optional, Sequence, Tuple

import numpy as np
import sympy
from pydantic import BaseModel, ConfigDict
from sympy.parsing.sympy_parser import convert_xor, parse_expr, standard_transformations

from config import settings
from models import Assignment, Monomial, PointConfiguration, PolynomialSystem, ScalarMode
from utils import (
    ConfigurationFormatError,
    LayoutMismatchError,
    PreconditionError,
    Scalar,
    UnsupportedParameterError,
    format_scalar,
)
from .design import convert_mode, verify_design
from .moments import enumerate_monomials, sphere_moment

logger = logging.getLogger(__name__)

_TRANSFORMATIONS = standard_transformations + (convert_xor,)


# ===== PIN SELECTION =====

def select_pins(X: PointConfiguration, num_pins: int = None) -> Tuple[PointConfiguration, Tuple[int, ...]]:
    """
    Move a maximal independent subset of the points to the front.

    EXACT configurations take, scanning in input order, each point that
    raises the rank. FLOAT configurations take the point with the largest
    residual after projecting out the current span, ties going to the lower
    index. When span(X) has rank below num_pins the pins are topped up with
    the earliest remaining points; all other points keep their input order.

    Args:
        X: Configuration with at least d+1 points
        num_pins: Pins to place (default d+1; d gives hyperplane anchors)

    Returns:
        (reordered configuration, permutation mapping new index -> original index)
    """
    width = X.ambient_dim
    count = width if num_pins is None else num_pins
    if count < 0 or count > width:
        raise UnsupportedParameterError(f"num_pins must lie in 0..{width}, got {count}", "num_pins")
    if X.n < width:
        raise PreconditionError(f"need at least d+1 = {width} points, got {X.n}", "points")

    if X.mode.is_exact:
        chosen = _independent_exact(X.points, count)
    else:
        chosen = _independent_float(X.as_array(), count)

    pins = list(chosen)
    for i in range(X.n):
        if len(pins) >= count:
            break
        if i not in pins:
            pins.append(i)

    permutation = tuple(pins + [i for i in range(X.n) if i not in pins])
    logger.debug("pins %s selected from %d points", permutation[:count], X.n)
    return X.reordered(permutation), permutation


def _independent_exact(points: Sequence[Sequence[Fraction]], count: int) -> List[int]:
    basis: List[Tuple[List[Fraction], int]] = []
    chosen: List[int] = []
    for i, point in enumerate(points):
        if len(chosen) == count:
            break
        v = list(point)
        for row, col in basis:
            if v[col]:
                factor = v[col] / row[col]
                v = [a - factor * b for a, b in zip(v, row)]
        pivot = next((j for j, value in enumerate(v) if value), None)
        if pivot is not None:
            basis.append((v, pivot))
            chosen.append(i)
    return chosen


def _independent_float(A: np.ndarray, count: int) -> List[int]:
    chosen: List[int] = []
    residual = A.copy()
    while len(chosen) < count:
        norms = np.linalg.norm(residual, axis=1)
        norms[chosen] = -1.0
        best = float(norms.max())
        if best <= settings.PIN_RANK_TOLERANCE:
            break
        index = int(np.flatnonzero(norms >= best - 1e-12 * max(best, 1.0))[0])
        q = residual[index] / norms[index]
        residual = residual - np.outer(residual @ q, q)
        chosen.append(index)
    return chosen


# ===== CONSTRUCTION =====

def build_system(X: PointConfiguration, t: int, num_pins: int = None) -> PolynomialSystem:
    """
    Build the pinned system of X at strength t.

    Pins are chosen by select_pins. The constant monomial is left out of
    the design equations since its equation vanishes identically.

    Args:
        X: Configuration (a t-design, though any configuration is accepted)
        t: Strength
        num_pins: Pins to hold fixed (default d+1)

    Returns:
        Immutable PolynomialSystem
    """
    if t < 1:
        raise UnsupportedParameterError(f"strength must be at least 1, got {t}", "t")

    report = verify_design(X, t)
    if not report.is_design:
        logger.warning(
            "building a system from a configuration that is not a %d-design (max residual %s)",
            t, report.max_abs_residual,
        )

    ordered, permutation = select_pins(X, num_pins)
    count = X.ambient_dim if num_pins is None else num_pins
    monomials = tuple(enumerate_monomials(X.ambient_dim, t)[1:])
    exact_moments = [sphere_moment(m, X.ambient_dim) for m in monomials]
    pins = ordered.points[:count]

    if X.mode.is_exact:
        moments = tuple(exact_moments)
        constants = tuple(
            sum((m.evaluate(p) for p in pins), Fraction(0)) - X.n * moment
            for m, moment in zip(monomials, exact_moments)
        )
    else:
        moments = tuple(float(moment) for moment in exact_moments)
        constants = tuple(
            math.fsum(m.evaluate(p) for p in pins) - float(X.n * moment)
            for m, moment in zip(monomials, exact_moments)
        )

    system = PolynomialSystem(
        t=t,
        num_pins=count,
        configuration=ordered,
        permutation=permutation,
        monomials=monomials,
        moments=moments,
        design_constants=constants,
    )
    logger.info(
        "system: %d variables, %d sphere + %d design equations, degree %d",
        system.k, system.num_sphere_equations, system.num_design_equations, system.degree,
    )
    return system


def as_float(S: PolynomialSystem) -> PolynomialSystem:
    """The same system with float coordinates and coefficients."""
    if not S.mode.is_exact:
        return S
    return S.model_copy(update={
        "configuration": convert_mode(S.configuration, ScalarMode.FLOAT),
        "moments": tuple(float(m) for m in S.moments),
        "design_constants": tuple(float(c) for c in S.design_constants),
    })


def design_assignment(S: PolynomialSystem) -> Assignment:
    """The assignment read from the system's own configuration."""
    values = [x for point in S.configuration.points[S.num_pins:] for x in point]
    return Assignment(values=values, mode=S.mode)


def permute_blocks(S: PolynomialSystem, A: Assignment, tau: Sequence[int]) -> Assignment:
    """
    Apply a bijection of the unknown points: new block i is old block tau[i].
    """
    _check_layout(S, A)
    if sorted(tau) != list(range(S.num_variable_points)):
        raise PreconditionError(f"tau must permute 0..{S.num_variable_points - 1}", "tau")
    blocks = A.blocks(S.width)
    return Assignment(values=[x for i in tau for x in blocks[i]], mode=A.mode)


# ===== EVALUATION =====

def _check_layout(S: PolynomialSystem, A: Assignment) -> None:
    if len(A.values) != S.k:
        raise LayoutMismatchError(f"assignment has {len(A.values)} values, system has {S.k} variables", "assignment")
    if A.mode is not S.mode:
        raise LayoutMismatchError(f"assignment is {A.mode.value}, system is {S.mode.value}", "mode")


def _total(values, exact: bool) -> Scalar:
    if exact:
        return sum(values, Fraction(0))
    return math.fsum(values)


@lru_cache(maxsize=None)
def _partials(monomial: Monomial) -> Tuple[Tuple[int, Optional[Monomial]], ...]:
    return tuple(monomial.derivative(j) for j in range(monomial.dimension))


def evaluate(S: PolynomialSystem, A: Assignment) -> List[Scalar]:
    """
    Residual vector: every f (by point), then every g (graded lex).

    FLOAT sums are correctly rounded, so design residuals do not depend on
    the order of the unknown points.
    """
    _check_layout(S, A)
    exact = S.mode.is_exact
    blocks = A.blocks(S.width)

    sphere = [_total((x * x for x in block), exact) - 1 for block in blocks]
    design = [
        constant + _total((m.evaluate(block) for block in blocks), exact)
        for m, constant in zip(S.monomials, S.design_constants)
    ]
    return sphere + design


def jacobian(S: PolynomialSystem, A: Assignment) -> List[List[Scalar]]:
    """
    Analytic Jacobian, rows in evaluate order, one column per variable.

    df_i/dx_{i,j} = 2 x_{i,j} (zero outside block i);
    dg_s/dx_{i,j} = dP_s/dx_j at point i.
    """
    _check_layout(S, A)
    zero = Fraction(0) if S.mode.is_exact else 0.0
    width = S.width
    blocks = A.blocks(width)

    rows: List[List[Scalar]] = []
    for b, block in enumerate(blocks):
        row = [zero] * S.k
        for j, x in enumerate(block):
            row[b * width + j] = 2 * x
        rows.append(row)

    for monomial in S.monomials:
        row = [zero] * S.k
        for j, (coefficient, lowered) in enumerate(_partials(monomial)):
            if not coefficient:
                continue
            for b, block in enumerate(blocks):
                row[b * width + j] = coefficient * lowered.evaluate(block)
        rows.append(row)
    return rows


# ===== TEXT EXCHANGE =====

def _format_coefficient(value: Scalar) -> str:
    if isinstance(value, Fraction):
        return str(format_scalar(value))
    return repr(float(value))


def _polynomial_line(terms: List[str], constant: Scalar) -> str:
    parts = list(terms)
    if constant != 0 or not parts:
        parts.append(_format_coefficient(constant))
    return " + ".join(parts)


def export_system(S: PolynomialSystem) -> str:
    """
    Plain-text form for external solvers.

    First line "vars: x_i_j ..." in layout order, then one expanded
    polynomial per line (sphere equations first).
    """
    names = S.variable_names
    width = S.width
    name_blocks = [names[i:i + width] for i in range(0, len(names), width)]
    one = Fraction(1) if S.mode.is_exact else 1.0

    lines = ["vars: " + " ".join(names)]
    for block in name_blocks:
        lines.append(_polynomial_line([f"{name}^2" for name in block], -one))

    for monomial, constant in zip(S.monomials, S.design_constants):
        terms = [
            "*".join(name if e == 1 else f"{name}^{e}" for name, e in zip(block, monomial.exponents) if e)
            for block in name_blocks
        ]
        lines.append(_polynomial_line(terms, constant))

    return "\n".join(lines) + "\n"


class ImportedSystem(BaseModel):
    """Polynomials read back from exported text, as sparse term lists."""
    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    variables: Tuple[str, ...]
    polynomials: Tuple[Tuple[Tuple[Tuple[int, ...], Any], ...], ...]
    mode: ScalarMode

    def evaluate(self, A: Assignment) -> List[Scalar]:
        if len(A.values) != len(self.variables):
            raise LayoutMismatchError(
                f"assignment has {len(A.values)} values, system has {len(self.variables)} variables",
                "assignment",
            )
        exact = self.mode.is_exact
        values = [Fraction(v) if exact else float(v) for v in A.values]
        results = []
        for terms in self.polynomials:
            contributions = []
            for exponents, coefficient in terms:
                term = coefficient
                for v, e in zip(values, exponents):
                    if e:
                        term = term * v ** e
                contributions.append(term)
            results.append(_total(contributions, exact))
        return results


def import_system(text: str, mode: ScalarMode = None) -> ImportedSystem:
    """
    Parse the export format back into polynomials.

    Args:
        text: Output of export_system
        mode: Coefficient arithmetic; inferred (EXACT unless a decimal appears) when omitted

    Returns:
        ImportedSystem
    """
    lines = [line.strip() for line in text.splitlines() if line.strip()]
    if not lines or not lines[0].startswith("vars:"):
        raise ConfigurationFormatError("first line must start with 'vars:'", "line 1")

    names = lines[0][len("vars:"):].split()
    symbols = [sympy.Symbol(name) for name in names]
    local_dict = dict(zip(names, symbols))

    parsed: List[List[Tuple[Tuple[int, ...], Any]]] = []
    saw_decimal = False
    for lineno, line in enumerate(lines[1:], start=2):
        try:
            expr = parse_expr(line, local_dict=local_dict, transformations=_TRANSFORMATIONS)
        except (SyntaxError, TokenError, TypeError) as e:
            raise ConfigurationFormatError(f"cannot parse polynomial: {e}", f"line {lineno}")

        unknown = {str(s) for s in expr.free_symbols} - set(names)
        if unknown:
            raise ConfigurationFormatError(f"unknown variable {sorted(unknown)[0]}", f"line {lineno}")

        if symbols:
            terms = sympy.Poly(expr, *symbols).terms()
        else:
            terms = [((), sympy.sympify(expr))]
        saw_decimal = saw_decimal or any(c.is_Float for _, c in terms)
        parsed.append(terms)

    if mode is None:
        mode = ScalarMode.FLOAT if saw_decimal else ScalarMode.EXACT
    mode = ScalarMode(mode)

    polynomials = []
    for lineno, terms in enumerate(parsed, start=2):
        converted = []
        for exponents, coefficient in terms:
            if mode.is_exact:
                if not coefficient.is_Rational:
                    raise ConfigurationFormatError(f"coefficient {coefficient} is not rational", f"line {lineno}")
                value = Fraction(int(coefficient.p), int(coefficient.q))
            else:
                value = float(coefficient)
            converted.append((tuple(int(e) for e in exponents), value))
        polynomials.append(tuple(converted))

    return ImportedSystem(variables=tuple(names), polynomials=tuple(polynomials), mode=mode)
