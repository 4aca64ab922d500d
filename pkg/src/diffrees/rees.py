"""Symmetric and Rees algebras of the differential module.

The symmetric algebra is presented over the base ring extended by one
T-variable per module generator; the Rees algebra is the quotient by the
torsion, computed as a saturation with respect to a test element that is
regular on the base ring and lands in the top Fitting ideal (so the module
becomes free once it is inverted).
"""

from __future__ import annotations

import random
from dataclasses import dataclass

from .errors import NotReducedError, TestElementSearchError
from .groebner import IdealHandle
from .poly import Polynomial, VariableContext


@dataclass(frozen=True)
class SymmetricPresentation:
    """Defining data of the symmetric algebra over the extended ring."""

    algebra: object
    extended_context: VariableContext
    ideal: IdealHandle              # lifted relations + linear forms
    lifted_relations: tuple
    linear_forms: tuple
    is_complete_intersection: bool
    height: int

    @property
    def generator_count(self):
        return len(self.lifted_relations) + len(self.linear_forms)


@dataclass(frozen=True)
class ReesPresentation:
    symmetric: SymmetricPresentation
    ideal: IdealHandle              # the saturated (Rees) ideal
    test_element: Polynomial        # in the base ring
    torsion_generators: tuple       # basis elements of the Rees ideal
    #   that do not lie in the symmetric-algebra ideal


def extended_context(algebra):
    """Base variables followed by T-variables, one per module generator.

    T_i carries the weight of X_i, which keeps each linear form
    sum_i (df_j/dX_i) T_i homogeneous of the degree of f_j; under standard
    grading every T-weight is 1.
    """
    ctx = algebra.context
    t_names = ctx.fresh_names("T", ctx.arity)
    return VariableContext(ctx.names + t_names, ctx.weights + ctx.weights)


def lift_to_extended(p, big):
    """Reinterpret a base-ring polynomial in the extended ring."""
    pad = (0,) * (big.arity - p.context.arity)
    return Polynomial.from_terms(big, ((e + pad, c) for e, c in p.terms))


def symmetric_presentation(algebra, budget=None):
    """Present the symmetric algebra and report whether its defining ideal
    is a complete intersection (height equals the generator count)."""
    ctx = algebra.context
    big = extended_context(algebra)
    n = ctx.arity
    theta = algebra.jacobian_presentation(budget).ambient_theta
    lifted = tuple(lift_to_extended(f, big) for f in algebra.relations)
    forms = []
    for j in range(theta.ncols):
        acc = big.zero
        for i in range(n):
            entry = theta.entry(i, j)
            if entry.is_zero:
                continue
            acc = acc + lift_to_extended(entry, big) * big.gen(n + i)
        forms.append(acc)
    handle = IdealHandle(big, lifted + tuple(forms))
    count = len(handle.generators)
    if count == 0:
        height = 0
    else:
        dim = handle.krull_dimension(budget).dimension
        height = big.arity - dim
    return SymmetricPresentation(
        algebra=algebra, extended_context=big, ideal=handle,
        lifted_relations=lifted, linear_forms=tuple(forms),
        is_complete_intersection=height == count, height=height)


def find_test_element(algebra, seed=0, retries=64, budget=None):
    """Random small-integer combination of the maximal minors of the
    Jacobian presentation that is a nonzerodivisor on the base ring.

    The draw is seeded, so runs are reproducible; exhausting the retry
    bound signals either a non-reduced input or an unlucky seed.
    """
    if not algebra.is_reduced(budget):
        raise NotReducedError(
            "torsion is only defined over a reduced base; refusing")
    c = algebra.codimension
    theta = algebra.jacobian_presentation(budget).theta
    candidates = ([algebra.context.one] if c == 0
                  else [algebra.reduce(m, budget) for m in theta.minors(c)])
    rng = random.Random(seed)
    for _ in range(retries):
        coeffs = [rng.randint(-3, 3) for _ in candidates]
        g = algebra.context.zero
        for co, m in zip(coeffs, candidates):
            if co and not m.is_zero:
                g = g + m * co
        if g.is_zero:
            continue
        check = algebra.nonzerodivisor_check(g, budget)
        if check.ok:
            return g
    raise TestElementSearchError(
        f"no nonzerodivisor test element found in {retries} draws; "
        "try another --seed")


def rees_ideal(algebra, seed=0, budget=None, symmetric=None):
    """Saturate the symmetric-algebra ideal by a test element; the extra
    basis elements generate the torsion."""
    sym = symmetric or symmetric_presentation(algebra, budget)
    g = find_test_element(algebra, seed=seed, budget=budget)
    lifted_g = lift_to_extended(g, sym.extended_context)
    saturated = sym.ideal.saturation(lifted_g, budget)
    torsion = tuple(h for h in saturated.groebner_basis(budget=budget)
                    if not sym.ideal.contains(h, budget))
    return ReesPresentation(symmetric=sym, ideal=saturated, test_element=g,
                            torsion_generators=torsion)


def is_linear_type(rees, budget=None):
    """True iff the symmetric algebra is already torsion-free."""
    return rees.ideal.equals(rees.symmetric.ideal, budget)


@dataclass(frozen=True)
class SpreadRecord:
    value: int
    rank: int
    lower: int                  # rank
    upper: int                  # dim R + rank - 1
    generator_bound: int        # mu = number of module generators
    bounds_ok: bool
    rees_dimension: int
    rees_dimension_expected: int


def analytic_spread(rees, budget=None):
    """Dimension of the special fiber (the Rees algebra modulo the base
    variables), with the inequality checks it must satisfy."""
    algebra = rees.symmetric.algebra
    big = rees.symmetric.extended_context
    n = algebra.arity
    d = algebra.dimension
    e = d
    fiber = rees.ideal + IdealHandle(big, [big.gen(i) for i in range(n)])
    value = fiber.krull_dimension(budget).dimension
    rdim = rees.ideal.krull_dimension(budget).dimension
    lower, upper = e, d + e - 1
    ok = (lower <= value <= upper) and value <= n and rdim == d + e
    return SpreadRecord(value=value, rank=e, lower=lower, upper=upper,
                        generator_bound=n, bounds_ok=ok,
                        rees_dimension=rdim, rees_dimension_expected=d + e)
