"""Pairwise-comparison matrices and priority-vector computation.

Judgments live on the nine-point fundamental scale (1..9 and their
reciprocals) and are stored as exact rationals so a constructed matrix is
reciprocal by construction; values are converted to floating point only
inside the eigensolver.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping, Sequence

import numpy as np

from .errors import (
    DiagonalNotOneError,
    IncompleteMatrixError,
    LabelMismatchError,
    NoConvergenceError,
    NonSquareError,
    OffScaleJudgmentError,
    OrderOutOfRangeError,
    ReciprocityViolationError,
)

MIN_ORDER = 2
MAX_ORDER = 10  # bounded by the random-index table

#: Admissible judgment intensities: the integers 1..9 and their reciprocals.
SAATY_SCALE: tuple[Fraction, ...] = tuple(Fraction(k) for k in range(1, 10)) + tuple(
    Fraction(1, k) for k in range(2, 10)
)
_SCALE_SET = frozenset(SAATY_SCALE)

#: Verbal anchors for the integer intensities (surfaced by CLI help and the UI).
SCALE_LABELS: Mapping[int, str] = {
    1: "Equal Importance",
    2: "Weak or Slight",
    3: "Moderate Importance",
    4: "Moderate Plus",
    5: "Strong Importance",
    6: "Strong Plus",
    7: "Very Strong",
    8: "Very, Very Strong",
    9: "Extreme Importance",
}

#: Saaty random-index values, indexed by matrix order 0..10.
RANDOM_INDEX = (0.0, 0.0, 0.0, 0.58, 0.90, 1.12, 1.24, 1.32, 1.41, 1.45, 1.49)

CONSISTENCY_THRESHOLD = 0.1

_POWER_TOLERANCE = 1e-12
_POWER_MAX_ITER = 10_000
_RECIPROCITY_TOLERANCE = 1e-9


def as_fraction(value) -> Fraction:
    """Coerce a judgment value to an exact rational.

    Accepts Fraction, int, float, and strings such as ``"3"``, ``"1/3"`` or
    ``"0.5"``. Floats are rationalized so that reciprocals rounded by an
    external producer map back to small fractions. Raises ValueError for
    unparsable input.
    """
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise ValueError(f"not a judgment value: {value!r}")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, float):
        try:
            return Fraction(value).limit_denominator(10**9)
        except (ValueError, OverflowError) as exc:
            raise ValueError(f"not a judgment value: {value!r}") from exc
    if isinstance(value, str):
        try:
            return Fraction(value.strip())
        except (ValueError, ZeroDivisionError) as exc:
            raise ValueError(f"not a judgment value: {value!r}") from exc
    raise ValueError(f"not a judgment value: {value!r}")


def snap_to_scale(value: Fraction) -> tuple[Fraction, bool]:
    """Return the nearest fundamental-scale value and whether it was exact.

    Distance ties are broken toward the smaller scale value.
    """
    if value in _SCALE_SET:
        return value, True
    nearest = min(sorted(SAATY_SCALE), key=lambda s: abs(s - value))
    return nearest, False


def parse_judgment(value, strict: bool = True) -> tuple[Fraction, Fraction | None]:
    """Parse an elicited judgment, snapping decimals onto the scale.

    Returns ``(judgment, original)`` where ``original`` is the pre-snap value
    when snapping changed it, else None. With ``strict`` (the elicitation
    path), non-scale fractions and integers are rejected; only float/decimal
    input is snapped, since decimal notation cannot express thirds exactly.
    """
    frac = as_fraction(value)
    if frac <= 0:
        raise OffScaleJudgmentError(f"judgment must be positive, got {frac}")
    if frac in _SCALE_SET:
        return frac, None
    if not strict:
        if frac < Fraction(1, 9) or frac > 9:
            raise OffScaleJudgmentError(f"judgment {frac} outside [1/9, 9]")
        return frac, None
    is_decimal = isinstance(value, float) or (
        isinstance(value, str) and "/" not in value
    )
    if not is_decimal:
        raise OffScaleJudgmentError(
            f"judgment {frac} is not on the 1-9 fundamental scale"
        )
    snapped, _ = snap_to_scale(frac)
    return snapped, frac


@dataclass(frozen=True)
class ComparisonMatrix:
    """Positive reciprocal matrix of pairwise judgments with item labels."""

    labels: tuple[str, ...]
    entries: tuple[tuple[Fraction, ...], ...]

    @property
    def n(self) -> int:
        return len(self.labels)

    def entry(self, a: str, b: str) -> Fraction:
        i, j = self.labels.index(a), self.labels.index(b)
        return self.entries[i][j]

    def to_floats(self) -> np.ndarray:
        return np.array([[float(v) for v in row] for row in self.entries])


@dataclass(frozen=True)
class PriorityResult:
    """Normalized priority vector with its consistency diagnostics."""

    priorities: tuple[float, ...]
    lambda_max: float
    consistency_index: float
    consistency_ratio: float
    consistent: bool


def _check_scale(value: Fraction, strict: bool) -> None:
    if value <= 0:
        raise OffScaleJudgmentError(f"judgment must be positive, got {value}")
    if strict:
        if value not in _SCALE_SET:
            raise OffScaleJudgmentError(
                f"judgment {value} is not on the 1-9 fundamental scale"
            )
        return
    # Relaxed bound for imported matrices; 1e-9 slack absorbs float dust.
    v = float(value)
    if v < 1.0 / 9.0 - 1e-9 or v > 9.0 + 1e-8:
        raise OffScaleJudgmentError(f"judgment {value} outside [1/9, 9]")


def validate_matrix(
    raw: Sequence[Sequence], labels: Sequence[str], strict_scale: bool = False
) -> ComparisonMatrix:
    """Validate a raw grid of judgments into a ComparisonMatrix.

    The grid may carry only the upper triangle (missing cells as None); the
    diagonal is then filled with 1 and the lower triangle with exact
    reciprocals. When both triangles are supplied they must agree within
    1e-9 relative error. ``strict_scale`` restricts entries to the
    fundamental scale; otherwise any value in [1/9, 9] is accepted.
    """
    rows = [list(r) for r in raw]
    n = len(rows)
    if any(len(r) != n for r in rows):
        raise NonSquareError(f"matrix is not square: {n} rows, row lengths {[len(r) for r in rows]}")
    if n < MIN_ORDER or n > MAX_ORDER:
        raise OrderOutOfRangeError(
            f"matrix order {n} outside [{MIN_ORDER}, {MAX_ORDER}]"
            + ("; split the comparison into smaller groups" if n > MAX_ORDER else "")
        )
    labels = tuple(str(x) for x in labels)
    if len(labels) != n:
        raise LabelMismatchError(f"{len(labels)} labels for a matrix of order {n}")
    if len(set(labels)) != n:
        raise LabelMismatchError("matrix labels must be unique")

    for i in range(n):
        v = rows[i][i]
        if v is not None:
            f = as_fraction(v)
            if abs(float(f) - 1.0) > 1e-9:
                raise DiagonalNotOneError(f"diagonal entry [{i}][{i}] is {f}, expected 1")

    entries: list[list[Fraction | None]] = [[None] * n for _ in range(n)]
    missing: list[tuple[str, str]] = []
    for i in range(n):
        entries[i][i] = Fraction(1)
        for j in range(i + 1, n):
            upper, lower = rows[i][j], rows[j][i]
            if upper is None and lower is None:
                missing.append((labels[i], labels[j]))
                continue
            if upper is not None:
                u = as_fraction(upper)
                if u == 0:
                    raise OffScaleJudgmentError(f"judgment for ({labels[i]}, {labels[j]}) is 0")
                if lower is not None:
                    l = as_fraction(lower)
                    if l <= 0 or abs(float(l * u) - 1.0) > _RECIPROCITY_TOLERANCE:
                        raise ReciprocityViolationError(
                            f"entry ({labels[j]}, {labels[i]}) = {l} is not the reciprocal "
                            f"of ({labels[i]}, {labels[j]}) = {u}"
                        )
            else:
                l = as_fraction(lower)
                if l == 0:
                    raise OffScaleJudgmentError(f"judgment for ({labels[j]}, {labels[i]}) is 0")
                u = 1 / l
            _check_scale(u, strict_scale)
            entries[i][j] = u
            entries[j][i] = 1 / u
    if missing:
        raise IncompleteMatrixError(
            "matrix incomplete; missing judgments: "
            + ", ".join(f"({a}, {b})" for a, b in missing),
            missing=tuple(missing),
        )
    return ComparisonMatrix(labels, tuple(tuple(row) for row in entries))


def matrix_from_pairs(
    labels: Sequence[str],
    judgments: Mapping[tuple[str, str], Fraction],
    strict_scale: bool = False,
) -> ComparisonMatrix:
    """Build a matrix from per-pair judgments keyed by (item, item) labels."""
    labels = tuple(labels)
    index = {lab: i for i, lab in enumerate(labels)}
    raw: list[list] = [[None] * len(labels) for _ in labels]
    for (a, b), value in judgments.items():
        if a not in index or b not in index:
            unknown = a if a not in index else b
            raise LabelMismatchError(f"judgment references unknown item '{unknown}'")
        if a == b:
            raise LabelMismatchError(f"judgment compares '{a}' with itself")
        raw[index[a]][index[b]] = value
    return validate_matrix(raw, labels, strict_scale)


def missing_pairs(
    labels: Sequence[str], judgments: Mapping[tuple[str, str], Fraction]
) -> list[tuple[str, str]]:
    """Upper-triangle pairs not yet covered by a judgment in either direction."""
    labels = list(labels)
    have = set(judgments)
    out = []
    for i, a in enumerate(labels):
        for b in labels[i + 1 :]:
            if (a, b) not in have and (b, a) not in have:
                out.append((a, b))
    return out


def principal_eigen(m: ComparisonMatrix) -> PriorityResult:
    """Derive priorities as the L1-normalized principal eigenvector.

    Power iteration from the uniform vector, normalizing each step, stopping
    when successive vectors differ by less than 1e-12 in max-norm. The
    principal eigenvalue is estimated as the mean of the componentwise
    Rayleigh ratios.
    """
    a = m.to_floats()
    n = m.n
    w = np.full(n, 1.0 / n)
    for _ in range(_POWER_MAX_ITER):
        nxt = a @ w
        nxt /= nxt.sum()
        if np.max(np.abs(nxt - w)) < _POWER_TOLERANCE:
            w = nxt
            break
        w = nxt
    else:
        raise NoConvergenceError(
            f"power iteration did not converge within {_POWER_MAX_ITER} iterations"
        )
    lambda_max = float(np.mean((a @ w) / w))
    if n == 2:
        ci = 0.0  # a 2x2 reciprocal matrix is always perfectly consistent
    else:
        ci = (lambda_max - n) / (n - 1)
        if -1e-9 < ci < 0.0:
            ci = 0.0
    cr = 0.0 if n <= 2 else ci / RANDOM_INDEX[n]
    return PriorityResult(
        priorities=tuple(float(x) for x in w),
        lambda_max=lambda_max,
        consistency_index=ci,
        consistency_ratio=cr,
        consistent=cr <= CONSISTENCY_THRESHOLD,
    )


def column_average_priorities(m: ComparisonMatrix) -> tuple[float, ...]:
    """Approximate priorities by averaging over normalized columns."""
    a = m.to_floats()
    avg = (a / a.sum(axis=0)).mean(axis=1)
    avg /= avg.sum()
    return tuple(float(x) for x in avg)


def most_inconsistent_triad(
    m: ComparisonMatrix,
) -> tuple[tuple[str, str, str], float] | None:
    """Locate the judgment triad that most violates transitivity.

    Scans ordered triples (i, j, k) and returns the labels maximizing the
    relative error |a_ij * a_jk - a_ik| / a_ik, with the error value. None
    for matrices of order 2, which cannot be inconsistent.
    """
    n = m.n
    if n < 3:
        return None
    a = m.to_floats()
    best: tuple[int, int, int] | None = None
    best_err = -1.0
    for i in range(n):
        for j in range(n):
            if j == i:
                continue
            for k in range(n):
                if k == i or k == j:
                    continue
                err = abs(a[i, j] * a[j, k] - a[i, k]) / a[i, k]
                if err > best_err:
                    best_err = err
                    best = (i, j, k)
    assert best is not None
    i, j, k = best
    return (m.labels[i], m.labels[j], m.labels[k]), best_err
