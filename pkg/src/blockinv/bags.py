"""Inverse certificates ("bags") for generalized distance matrices.

A bag packages a square matrix D with parameters (lambda, alpha, beta, L)
that witness an explicit inverse formula:

    D^-1 = -L + (1/lambda) * beta alpha^T        (when lambda != 0)

The witness comes in a left flavor and a right flavor, four exact conditions
each (see `verify_bag`).  Directed cycles admit a closed-form bag built from
their arc weights alone; any invertible matrix whose inverse has nonzero
total entry sum admits a forced-parameter bag computed from the inverse.
Bags are the unit of composition: block bags glue along cut vertices into a
bag for the whole graph (see `compose`).
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .linalg import (
    RMatrix,
    SingularMatrixError,
    as_rational,
    identity,
    inverse_exact,
    matvec,
    outer_product,
    vec_sum,
    vecmat,
)

__all__ = [
    "LambdaZeroError",
    "NotExpressibleError",
    "FirstWeightZeroError",
    "ZeroRowSumInverseError",
    "Bag",
    "BagVerdict",
    "verify_bag",
    "verify_left",
    "verify_right",
    "bag_inverse",
    "is_laplacian_like",
    "first_weight",
    "second_weight",
    "cycle_distance_matrix",
    "cycle_shift_matrix",
    "cycle_bag",
    "cycle_det",
    "cycle_cof",
    "generic_bag",
    "MatrixClassification",
    "classify",
    "bag_to_json",
    "bag_from_json",
]


class LambdaZeroError(ArithmeticError):
    """The bag's lambda is zero, so the inverse formula does not apply."""


class NotExpressibleError(ValueError):
    """Neither the left nor the right conditions hold for the bag."""


class FirstWeightZeroError(ArithmeticError):
    """The cycle's total weight is zero; the closed-form bag needs it nonzero."""


class ZeroRowSumInverseError(ArithmeticError):
    """The inverse's total entry sum is zero; no forced-parameter bag exists."""


@dataclass(frozen=True)
class Bag:
    """Certificate tuple (D, lambda, alpha, beta, L).

    `dist` is D, `lap` is the Laplacian-like part L; `alpha` and `beta` are
    stored as plain tuples aligned with `dist`'s row order.  Immutable; the
    constructor only checks shapes, not the certificate conditions (that is
    `verify_bag`'s job).
    """

    dist: RMatrix
    lam: Fraction
    alpha: tuple[Fraction, ...]
    beta: tuple[Fraction, ...]
    lap: RMatrix

    def __post_init__(self):
        object.__setattr__(self, "lam", as_rational(self.lam))
        object.__setattr__(
            self, "alpha", tuple(as_rational(x) for x in self.alpha)
        )
        object.__setattr__(self, "beta", tuple(as_rational(x) for x in self.beta))
        n = self.dist.order
        if self.lap.shape != (n, n):
            raise ValueError("L must match D's shape")
        if len(self.alpha) != n or len(self.beta) != n:
            raise ValueError("alpha and beta must have length n")

    @property
    def order(self) -> int:
        return self.dist.order

    @property
    def labels(self) -> tuple[str, ...] | None:
        return self.dist.labels


@dataclass(frozen=True)
class BagVerdict:
    """Outcome of checking the eight certificate conditions.

    `failures` lists (condition name, worst violating value) pairs; the
    value is the largest absolute deviation from the required identity, as
    an exact rational.
    """

    left_ok: bool
    right_ok: bool
    failures: tuple[tuple[str, Fraction], ...]

    @property
    def expressible(self) -> bool:
        return self.left_ok or self.right_ok


def _worst(entries) -> Fraction:
    worst = Fraction(0)
    for x in entries:
        if abs(x) > worst:
            worst = abs(x)
    return worst


def verify_bag(bag: Bag) -> BagVerdict:
    """Check all eight certificate conditions exactly.

    Left: alpha^T j = 1;  L j = 0;  alpha^T D = lambda j^T;  L D + I = beta j^T.
    Right: j^T beta = 1;  j^T L = 0;  D beta = lambda j;  D L + I = j alpha^T.
    """
    d, lap = bag.dist, bag.lap
    lam, alpha, beta = bag.lam, bag.alpha, bag.beta
    n = bag.order
    ident = identity(n)
    failures: list[tuple[str, Fraction]] = []

    def check(name: str, deviation: Fraction) -> bool:
        if deviation != 0:
            failures.append((name, deviation))
            return False
        return True

    left_ok = True
    left_ok &= check("alpha_sum", abs(vec_sum(alpha) - 1))
    left_ok &= check("lap_row_sums", _worst(vec_sum(row) for row in lap.rows))
    left_ok &= check("alpha_dot_dist", _worst(x - lam for x in vecmat(alpha, d)))
    left_prod = lap @ d + ident
    left_ok &= check(
        "lap_dist_identity",
        _worst(
            left_prod[i, j] - beta[i] for i in range(n) for j in range(n)
        ),
    )

    right_ok = True
    right_ok &= check("beta_sum", abs(vec_sum(beta) - 1))
    right_ok &= check(
        "lap_col_sums", _worst(vec_sum(lap.column(j)) for j in range(n))
    )
    right_ok &= check("dist_dot_beta", _worst(x - lam for x in matvec(d, beta)))
    right_prod = d @ lap + ident
    right_ok &= check(
        "dist_lap_identity",
        _worst(
            right_prod[i, j] - alpha[j] for i in range(n) for j in range(n)
        ),
    )
    return BagVerdict(bool(left_ok), bool(right_ok), tuple(failures))


def verify_left(bag: Bag) -> BagVerdict:
    """Full verdict; callers interested in the left flavor read `.left_ok`."""
    return verify_bag(bag)


def verify_right(bag: Bag) -> BagVerdict:
    """Full verdict; callers interested in the right flavor read `.right_ok`."""
    return verify_bag(bag)


def bag_inverse(bag: Bag) -> RMatrix:
    """Evaluate the certificate's inverse formula -L + (1/lambda) beta alpha^T.

    Requires lambda != 0 and at least one side of the certificate to hold;
    under those conditions the result is D^-1 (either side suffices).
    """
    if bag.lam == 0:
        raise LambdaZeroError("lambda is zero; the inverse formula needs lambda != 0")
    verdict = verify_bag(bag)
    if not verdict.expressible:
        raise NotExpressibleError(
            f"bag satisfies neither side: {[name for name, _ in verdict.failures]}"
        )
    correction = outer_product(bag.beta, bag.alpha).scale(1 / bag.lam)
    result = -bag.lap + correction
    return result.with_labels(bag.labels)


def is_laplacian_like(m: RMatrix) -> bool:
    """True iff every row sum and every column sum is zero."""
    n = m.order
    if any(vec_sum(row) != 0 for row in m.rows):
        return False
    return all(vec_sum(m.column(j)) == 0 for j in range(n))


# -- directed cycles: closed forms ---------------------------------------------


def first_weight(weights: Sequence[Fraction]) -> Fraction:
    """Total arc weight of the cycle."""
    return vec_sum(weights)


def second_weight(weights: Sequence[Fraction]) -> Fraction:
    """Sum of products of weight pairs, i.e. e_2(w_0, ..., w_{n-1})."""
    ws = [as_rational(w) for w in weights]
    total = sum(ws, Fraction(0))
    squares = sum((w * w for w in ws), Fraction(0))
    return (total * total - squares) / 2


def cycle_distance_matrix(
    weights: Sequence[Fraction], labels: Sequence[str] | None = None
) -> RMatrix:
    """Forward-path sums around a directed cycle with the given arc weights.

    Entry (i, j) is the sum of the weights from vertex i forward to vertex j.
    For positive weights these are the shortest-path distances of the cycle;
    for arbitrary rationals they are taken as the definition.
    """
    ws = [as_rational(w) for w in weights]
    n = len(ws)
    if n < 2:
        raise ValueError("a directed cycle needs at least two arcs")
    prefix = [Fraction(0)]
    for w in ws:
        prefix.append(prefix[-1] + w)
    total = prefix[-1]
    rows = [
        [
            Fraction(0) if i == j else (prefix[j] - prefix[i] if i < j
                                        else total - prefix[i] + prefix[j])
            for j in range(n)
        ]
        for i in range(n)
    ]
    return RMatrix(rows, labels)


def cycle_shift_matrix(n: int) -> RMatrix:
    """Cyclic permutation matrix P with P[i, i+1 mod n] = 1."""
    zero, one = Fraction(0), Fraction(1)
    return RMatrix(
        [[one if j == (i + 1) % n else zero for j in range(n)] for i in range(n)]
    )


def cycle_bag(
    weights: Sequence[Fraction], labels: Sequence[str] | None = None
) -> Bag:
    """Closed-form certificate for a weighted directed cycle.

    With w the first weight and w2 the second weight:
    lambda = w2 / w, alpha_i = w_{i-1} / w (indices mod n), beta_i = w_i / w,
    L = (I - P) / w.  Both certificate sides hold whenever w != 0, no matter
    the signs of the individual weights.
    """
    ws = [as_rational(w) for w in weights]
    n = len(ws)
    if n < 2:
        raise ValueError("a directed cycle needs at least two arcs")
    w = first_weight(ws)
    if w == 0:
        raise FirstWeightZeroError("cycle first weight is zero")
    lam = second_weight(ws) / w
    alpha = tuple(ws[(i - 1) % n] / w for i in range(n))
    beta = tuple(x / w for x in ws)
    lap = (identity(n) - cycle_shift_matrix(n)).scale(1 / w)
    return Bag(
        dist=cycle_distance_matrix(ws, labels),
        lam=lam,
        alpha=alpha,
        beta=beta,
        lap=lap.with_labels(labels),
    )


def cycle_det(weights: Sequence[Fraction]) -> Fraction:
    """Closed-form determinant of the cycle matrix: (-1)^(n-1) w^(n-2) w2.

    Holds unconditionally, including w = 0 (for n = 2 read w^0 as 1).
    """
    ws = [as_rational(w) for w in weights]
    n = len(ws)
    if n < 2:
        raise ValueError("a directed cycle needs at least two arcs")
    w = first_weight(ws)
    sign = 1 if (n - 1) % 2 == 0 else -1
    return sign * w ** (n - 2) * second_weight(ws)


def cycle_cof(weights: Sequence[Fraction]) -> Fraction:
    """Closed-form cofactor sum of the cycle matrix: (-1)^(n-1) w^(n-1).

    Returned unconditionally; the elimination oracle validates it even in
    degenerate (lambda = 0) cases.
    """
    ws = [as_rational(w) for w in weights]
    n = len(ws)
    if n < 2:
        raise ValueError("a directed cycle needs at least two arcs")
    w = first_weight(ws)
    sign = 1 if (n - 1) % 2 == 0 else -1
    return sign * w ** (n - 1)


# -- forced parameters for arbitrary invertible matrices -------------------------


def generic_bag(d: RMatrix) -> Bag:
    """Forced-parameter certificate for an invertible matrix.

    Let s = j^T D^-1 j (the total entry sum of the inverse).  When s != 0:
    lambda = 1/s, alpha^T = lambda j^T D^-1, beta = lambda D^-1 j,
    L = -D^-1 + (1/lambda) beta alpha^T.  These are the only parameters that
    can satisfy both certificate sides with lambda != 0, and they always do.
    """
    inv = inverse_exact(d)
    n = inv.order
    row_sums = [vec_sum(row) for row in inv.rows]
    col_sums = [vec_sum(inv.column(j)) for j in range(n)]
    s = vec_sum(row_sums)
    if s == 0:
        raise ZeroRowSumInverseError("inverse has zero total entry sum")
    lam = 1 / s
    alpha = tuple(lam * c for c in col_sums)
    beta = tuple(lam * r for r in row_sums)
    lap = -inv + outer_product(beta, alpha).scale(1 / lam)
    return Bag(dist=d, lam=lam, alpha=alpha, beta=beta, lap=lap.with_labels(d.labels))


@dataclass(frozen=True)
class MatrixClassification:
    """Membership flags for the three matrix classes this package tracks.

    `invertible`: the matrix has an inverse at all.  `left_expressible` /
    `right_expressible`: an inverse certificate of that flavor with
    lambda != 0 and unit-normalized opposite vector exists.  The two flags
    coincide for every matrix (the left conditions force
    j^T D^-1 j = 1/lambda and vice versa) but are surfaced separately.
    """

    invertible: bool
    left_expressible: bool
    right_expressible: bool


def classify(d: RMatrix) -> MatrixClassification:
    """Decide the class flags via the forced-parameter construction."""
    try:
        inv = inverse_exact(d)
    except SingularMatrixError:
        return MatrixClassification(False, False, False)
    s = sum((x for row in inv.rows for x in row), Fraction(0))
    expressible = s != 0
    return MatrixClassification(True, expressible, expressible)


# -- JSON ------------------------------------------------------------------------


def bag_to_json(bag: Bag) -> str:
    """Serialize with canonical rational strings; exact round-trip."""
    obj = {
        "lambda": str(bag.lam),
        "alpha": [str(x) for x in bag.alpha],
        "beta": [str(x) for x in bag.beta],
        "L": [[str(x) for x in row] for row in bag.lap.rows],
        "D": [[str(x) for x in row] for row in bag.dist.rows],
        "labels": list(bag.labels) if bag.labels else None,
    }
    return json.dumps(obj, indent=2) + "\n"


def bag_from_json(text: str) -> Bag:
    obj = json.loads(text)
    labels = obj.get("labels")
    return Bag(
        dist=RMatrix(obj["D"], labels),
        lam=as_rational(obj["lambda"]),
        alpha=tuple(as_rational(x) for x in obj["alpha"]),
        beta=tuple(as_rational(x) for x in obj["beta"]),
        lap=RMatrix(obj["L"], labels),
    )
