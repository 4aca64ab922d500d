"""Validated graded complete intersections and their differential modules.

A GradedAlgebra is a quotient of a weighted polynomial ring over Q by a
homogeneous regular sequence with every relation inside the square of the
irrelevant maximal ideal.  Validation is total: every violated hypothesis
can be reported, not just the first one found.
"""

from __future__ import annotations

from typing import NamedTuple

from .errors import (DimensionTooSmallError, InhomogeneousRelationError,
                     LinearTermError, NotRegularSequenceError,
                     RelationDegreeError, ValidationError)
from .groebner import IdealHandle, height_in_quotient, is_nonzerodivisor
from .matrix import PolyMatrix


class ValidationIssue(NamedTuple):
    code: str
    message: str


class NonzerodivisorCheck(NamedTuple):
    ok: bool
    note: str | None


class IrrelevantLocalData(NamedTuple):
    edim: int
    dim: int
    at_most_2d: bool       # edim <= 2*dim at the irrelevant maximal ideal
    at_most_2d_minus_1: bool


class DifferentialPresentation(NamedTuple):
    """Presentation of the differential module by the transposed Jacobian.

    `theta` has entries reduced modulo the defining ideal, `ambient_theta`
    keeps the raw polynomial entries for the smoothness test; the module
    has `generators` = n generators and rank equal to the quotient
    dimension whenever the rank hypotheses (reduced, equidimensional) hold.
    """
    theta: PolyMatrix
    ambient_theta: PolyMatrix
    rank: int
    generators: int


def validation_issues(context, relations, budget=None):
    """All hypothesis violations for the would-be algebra, in a fixed order."""
    issues = []
    for idx, f in enumerate(relations):
        label = f"relation {idx + 1} ({f})"
        homogeneous, degree = f.weighted_degree_info()
        if f.is_zero:
            issues.append(ValidationIssue(
                "degree", f"{label}: zero relation is not allowed"))
            continue
        if not homogeneous:
            issues.append(ValidationIssue(
                "inhomogeneous", f"{label}: not homogeneous for weights "
                f"{context.weights}"))
            continue
        if degree < 2:
            issues.append(ValidationIssue(
                "degree", f"{label}: weighted degree {degree} < 2"))
        if f.min_total_degree is not None and f.min_total_degree < 2:
            issues.append(ValidationIssue(
                "linear-term", f"{label}: has a term of total degree < 2, "
                "so it escapes the square of the maximal ideal"))
    n = context.arity
    c = len(relations)
    if not any(i.code in ("inhomogeneous", "degree") for i in issues):
        defining = IdealHandle(context, relations)
        dim = defining.krull_dimension(budget).dimension
        if dim != n - c:
            issues.append(ValidationIssue(
                "not-regular-sequence",
                f"relations are not a regular sequence: dim P/I = {dim}, "
                f"expected {n - c}"))
    if n - c < 1:
        issues.append(ValidationIssue(
            "dimension", f"quotient dimension would be {n - c} < 1"))
    return issues


class GradedAlgebra:
    """A validated graded complete intersection R = Q[X]/(f_1..f_c)."""

    __slots__ = ("context", "relations", "defining_ideal", "dimension",
                 "codimension", "standard_graded", "relation_degrees",
                 "_presentation", "_reduced", "_budget")

    def __init__(self, *_a, **_k):
        raise TypeError("use GradedAlgebra.validate(context, relations)")

    @classmethod
    def validate(cls, context, relations, budget=None):
        relations = tuple(relations)
        issues = validation_issues(context, relations, budget)
        if issues:
            raise _error_for(issues[0], issues)
        self = object.__new__(cls)
        self.context = context
        self.relations = relations
        self.defining_ideal = IdealHandle(context, relations)
        self.codimension = len(relations)
        self.dimension = context.arity - len(relations)
        self.standard_graded = context.is_standard_graded
        self.relation_degrees = tuple(f.weighted_degree_info()[1]
                                      for f in relations)
        self._presentation = None
        self._reduced = None
        self._budget = budget
        return self

    @property
    def arity(self):
        return self.context.arity

    def reduce(self, p, budget=None):
        """Normal form modulo the defining ideal (degrevlex)."""
        return self.defining_ideal.normal_form(p, budget=budget or self._budget)

    # -- differential module -----------------------------------------------------

    def jacobian_presentation(self, budget=None):
        if self._presentation is not None:
            return self._presentation
        ctx = self.context
        ambient_rows = []
        reduced_rows = []
        for i in range(ctx.arity):
            ambient_rows.append(tuple(f.derivative(i) for f in self.relations))
            reduced_rows.append(tuple(self.reduce(p, budget)
                                      for p in ambient_rows[-1]))
        for row in reduced_rows:
            for p in row:
                if not p.is_zero and p.is_constant:
                    raise ArithmeticError(
                        "constant Jacobian entry contradicts relations in m^2")
        degrees = tuple(self.relation_degrees)
        pres = DifferentialPresentation(
            theta=PolyMatrix(ctx, reduced_rows, column_degrees=degrees),
            ambient_theta=PolyMatrix(ctx, ambient_rows, column_degrees=degrees),
            rank=self.dimension,
            generators=ctx.arity)
        self._presentation = pres
        return pres

    def euler_residuals(self):
        """For each relation f of weighted degree D the ambient polynomial
        sum_i w_i * X_i * df/dX_i - D*f; each residual must be zero."""
        ctx = self.context
        out = []
        for f, deg in zip(self.relations, self.relation_degrees):
            acc = ctx.zero
            for i in range(ctx.arity):
                acc = acc + ctx.gen(i) * f.derivative(i) * ctx.weights[i]
            residual = acc - f * deg
            if not residual.is_zero:
                raise ArithmeticError(
                    f"nonzero Euler residual for {f}: {residual}")
            out.append(residual)
        return tuple(out)

    def is_reduced(self, budget=None):
        """Generic smoothness: the singular locus I + I_c(Theta) must have
        height >= c + 1 in the ambient ring; with the complete-intersection
        hypothesis this characterises reducedness in characteristic zero."""
        if self._reduced is not None:
            return self._reduced
        budget = budget or self._budget
        c = self.codimension
        if c == 0:
            self._reduced = True
            return True
        pres = self.jacobian_presentation(budget)
        sing = self.defining_ideal + IdealHandle(
            self.context, pres.ambient_theta.minors(c))
        if sing.is_unit(budget):
            height = float("inf")
        else:
            height = self.arity - sing.krull_dimension(budget).dimension
        self._reduced = height >= c + 1
        return self._reduced

    def irrelevant_local_data(self):
        """Embedding dimension and dimension at the irrelevant maximal ideal,
        with the two inequality verdicts the pipeline reports."""
        n, d = self.arity, self.dimension
        return IrrelevantLocalData(edim=n, dim=d,
                                   at_most_2d=(n <= 2 * d),
                                   at_most_2d_minus_1=(n <= 2 * d - 1))

    # -- delegated ideal theory ----------------------------------------------------

    def height_of(self, handle, budget=None):
        """Height in R of an ideal given by ambient generators."""
        return height_in_quotient(self.defining_ideal, handle,
                                  quotient_dim=self.dimension,
                                  budget=budget or self._budget)

    def nonzerodivisor_check(self, g, budget=None):
        budget = budget or self._budget
        if g.is_zero or self.defining_ideal.contains(g, budget):
            return NonzerodivisorCheck(False, "zero element of the quotient")
        return NonzerodivisorCheck(
            is_nonzerodivisor(self.defining_ideal, g, budget), None)

    def __repr__(self):
        rels = ", ".join(str(f) for f in self.relations) or "0"
        return f"GradedAlgebra({'/'.join([repr(self.context), '(' + rels + ')'])})"


def _error_for(first, issues):
    classes = {
        "inhomogeneous": InhomogeneousRelationError,
        "degree": RelationDegreeError,
        "linear-term": LinearTermError,
        "dimension": DimensionTooSmallError,
        "not-regular-sequence": NotRegularSequenceError,
    }
    cls = classes.get(first.code, ValidationError)
    err = cls(first.message)
    err.issues = tuple(issues)
    return err


def validate(context, relations, budget=None):
    return GradedAlgebra.validate(context, relations, budget)
