"""Fitting ideals of the differential module and the height machinery.

Includes the F_t condition globally and off the irrelevant maximal ideal,
the Euler-relation expansion of the corner minor (an exact identity used
as a hard self-check), and the last-rows minor comparison probe: whenever
the full minor ideal equals the one built from the last rows alone, its
height must drop below the quotient dimension.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field

from .groebner import IdealHandle


def minors(matrix, size, rows=None, cols=None):
    """All size x size minors of a PolyMatrix (Laplace expansion)."""
    return matrix.minors(size, rows=rows, cols=cols)


def fitting_ideal(algebra, i, budget=None):
    """The i-th Fitting ideal of the differential module, i.e. the ideal of
    (n - i)-minors of the Jacobian presentation, with generators reduced
    modulo the defining ideal.  F_i = (1) once n - i <= 0 and (0) when the
    requested minors outsize the matrix."""
    pres = algebra.jacobian_presentation(budget)
    n = algebra.arity
    size = n - i
    if size <= 0:
        return IdealHandle(algebra.context, [algebra.context.one])
    if size > min(pres.theta.nrows, pres.theta.ncols):
        return IdealHandle(algebra.context, [])
    gens = [algebra.reduce(m, budget) for m in pres.theta.minors(size)]
    return IdealHandle(algebra.context, gens)


@dataclass(frozen=True)
class FittingRow:
    index: int                  # the i of F_i
    ideal: IdealHandle
    height: float               # height in R, +inf for the unit ideal
    height_off_irrelevant: float  # after saturating by the irrelevant ideal

    def bound(self, t, rank):
        return self.index - rank + t + 1


@dataclass(frozen=True)
class FittingProfile:
    rank: int
    rows: tuple

    def row(self, i):
        for r in self.rows:
            if r.index == i:
                return r
        raise KeyError(f"no Fitting row for i={i}")


@dataclass(frozen=True)
class FtVerdict:
    t: int
    holds: bool
    failing_index: int | None = None
    required: int | None = None
    actual: float | None = None
    off_irrelevant: bool = False

    def witness(self):
        if self.holds:
            return None
        return {"i": self.failing_index, "required_height": self.required,
                "actual_height": self.actual}


def fitting_profile(algebra, budget=None):
    """Heights of F_i for i in [rank, n-1], plus the heights after removing
    the components supported on the irrelevant maximal ideal."""
    n, e = algebra.arity, algebra.dimension
    ctx = algebra.context
    irrelevant = IdealHandle(ctx, list(ctx.gens()))
    rows = []
    for i in range(e, n):
        fi = fitting_ideal(algebra, i, budget)
        height = algebra.height_of(fi, budget)
        if height == float("inf"):
            off = float("inf")
        else:
            sat = (algebra.defining_ideal + fi).saturation_by_ideal(
                irrelevant, budget)
            if sat.is_unit(budget):
                off = float("inf")
            else:
                off = (algebra.dimension
                       - sat.krull_dimension(budget).dimension)
        rows.append(FittingRow(i, fi, height, off))
    if rows:
        heights = [r.height for r in rows]
        assert heights == sorted(heights), "Fitting heights must increase"
    return FittingProfile(rank=e, rows=tuple(rows))


def ft_condition(algebra, t, profile=None, budget=None):
    """True iff ht F_i >= i - e + t + 1 for every i in [e, n-1]."""
    profile = profile or fitting_profile(algebra, budget)
    for row in profile.rows:
        bound = row.bound(t, profile.rank)
        if row.height < bound:
            return FtVerdict(t, False, failing_index=row.index,
                             required=bound, actual=row.height)
    return FtVerdict(t, True)


def ft_condition_off_irrelevant(algebra, t, profile=None, budget=None):
    """The F_t inequality checked away from the irrelevant maximal ideal:
    each row passes if its global height meets the bound or if the Fitting
    ideal becomes the unit ideal after saturating by the irrelevant ideal
    (every failing prime then contains it)."""
    profile = profile or fitting_profile(algebra, budget)
    for row in profile.rows:
        bound = row.bound(t, profile.rank)
        if row.height >= bound:
            continue
        if row.height_off_irrelevant == float("inf"):
            continue
        return FtVerdict(t, False, failing_index=row.index, required=bound,
                         actual=row.height, off_irrelevant=True)
    return FtVerdict(t, True, off_irrelevant=True)


# ---------------------------------------------------------------------------

def euler_minor_identity(algebra, budget=None):
    """Residual of the Euler-relation expansion of the corner minor.

    With t = n - 2d + 1 and theta the Jacobian presentation, the weighted
    Euler relations turn the Laplace expansion of the minor on the last t
    rows (first t columns) into a combination of one-row-swapped minors:

        w_n x_n D[2d..n]  =  (-1)^t  sum_i w_i x_i D[i, 2d..n-1]

    over rows listed in sequence order.  The returned polynomial is the
    difference of the two sides reduced modulo the defining ideal and must
    be identically zero; the sign convention is fixed by our own expansion.
    """
    n, d = algebra.arity, algebra.dimension
    if not (d >= 2 and n >= 2 * d):
        raise ValueError("identity needs dimension >= 2 and n >= 2*dim")
    t = n - 2 * d + 1
    ctx = algebra.context
    theta = algebra.jacobian_presentation(budget).theta
    cols = tuple(range(t))
    last_rows = tuple(range(2 * d - 1, n))
    lhs = ctx.gen(n - 1) * theta.minor(last_rows, cols) * ctx.weights[n - 1]
    rhs = ctx.zero
    middle = tuple(range(2 * d - 1, n - 1))
    for i in range(n - 1):
        det = theta.signed_row_sequence_minor((i,) + middle, cols)
        if det.is_zero:
            continue
        rhs = rhs + ctx.gen(i) * det * ctx.weights[i]
    if t % 2:
        rhs = -rhs
    return algebra.reduce(lhs - rhs, budget)


@dataclass(frozen=True)
class RowOpTrial:
    matrix: tuple
    ideals_equal: bool
    height_full: float
    implication_holds: bool


@dataclass(frozen=True)
class LastRowsProbe:
    t: int
    ideals_equal: bool
    height_full: float
    height_last_rows: float
    implication_holds: bool
    row_op_trials: tuple = field(default_factory=tuple)


def last_rows_probe(algebra, rowops=0, seed=0, budget=None):
    """Compare the ideal of t x t minors of the Jacobian presentation with
    the one generated by its last t rows, t = n - 2d + 1.

    The probe asserts the implication "equal ideals => height < d" via its
    contrapositive and can repeat after random invertible integer row
    operations (entries in [-3, 3]).
    """
    n, d = algebra.arity, algebra.dimension
    if not (d >= 2 and n >= 2 * d):
        raise ValueError("probe needs dimension >= 2 and n >= 2*dim")
    t = n - 2 * d + 1
    theta = algebra.jacobian_presentation(budget).theta

    def compare(matrix):
        full = IdealHandle(algebra.context,
                           [algebra.reduce(m, budget)
                            for m in matrix.minors(t)])
        last = IdealHandle(algebra.context,
                           [algebra.reduce(m, budget)
                            for m in matrix.minors(
                                t, rows=range(n - t, n))])
        equal = (algebra.defining_ideal + full).equals(
            algebra.defining_ideal + last, budget)
        height = algebra.height_of(full, budget)
        ok = (not equal) or (height < d)
        return equal, height, ok, last

    equal, height_full, ok, last = compare(theta)
    height_last = algebra.height_of(last, budget)
    trials = []
    rng = random.Random(seed)
    for _ in range(rowops):
        u = _random_invertible(rng, n)
        eq_u, h_u, ok_u, _ = compare(theta.scaled_rows(u))
        trials.append(RowOpTrial(tuple(map(tuple, u)), eq_u, h_u, ok_u))
    return LastRowsProbe(t=t, ideals_equal=equal, height_full=height_full,
                         height_last_rows=height_last,
                         implication_holds=ok and all(tr.implication_holds
                                                      for tr in trials),
                         row_op_trials=tuple(trials))


def _random_invertible(rng, n):
    while True:
        u = [[rng.randint(-3, 3) for _ in range(n)] for _ in range(n)]
        if _int_det(u) != 0:
            return u


def _int_det(rows):
    from fractions import Fraction
    m = [[Fraction(x) for x in row] for row in rows]
    det = Fraction(1)
    n = len(m)
    for col in range(n):
        pivot = next((r for r in range(col, n) if m[r][col]), None)
        if pivot is None:
            return 0
        if pivot != col:
            m[col], m[pivot] = m[pivot], m[col]
            det = -det
        det *= m[col][col]
        inv = 1 / m[col][col]
        for r in range(col + 1, n):
            factor = m[r][col] * inv
            if factor:
                m[r] = [a - factor * b for a, b in zip(m[r], m[col])]
    return det
