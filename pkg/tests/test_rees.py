import pytest

from diffrees.algebra import GradedAlgebra
from diffrees.errors import NotReducedError
from diffrees.fitting import ft_condition
from diffrees.groebner import IdealHandle
from diffrees.poly import VariableContext, parse_polynomial
from diffrees.rees import (analytic_spread, extended_context,
                           find_test_element, is_linear_type, rees_ideal,
                           symmetric_presentation)
from diffrees.resolution import depth_and_cm

from conftest import P


def test_symmetric_presentation_quadric_cone(quadric_cone):
    sym = symmetric_presentation(quadric_cone)
    big = sym.extended_context
    assert big.names == ("X", "Y", "Z", "T1", "T2", "T3")
    assert [str(g) for g in sym.ideal.generators] == [
        "X*Y - Z^2", "Y*T1 + X*T2 - 2*Z*T3"]
    assert sym.is_complete_intersection
    assert sym.height == 2


def test_symmetric_presentation_cross(coordinate_cross):
    sym = symmetric_presentation(coordinate_cross)
    assert [str(g) for g in sym.ideal.generators] == [
        "X*Y", "Y*T1 + X*T2"]


def test_symmetric_presentation_free_module():
    ctx = VariableContext(("X", "Y"))
    free = GradedAlgebra.validate(ctx, [])
    sym = symmetric_presentation(free)
    assert sym.ideal.is_zero_ideal()
    assert sym.is_complete_intersection


def test_find_test_element_deterministic(quadric_cone):
    g1 = find_test_element(quadric_cone, seed=0)
    g2 = find_test_element(quadric_cone, seed=0)
    assert g1 == g2
    assert quadric_cone.nonzerodivisor_check(g1).ok


def test_find_test_element_cross(coordinate_cross):
    g = find_test_element(coordinate_cross, seed=0)
    assert coordinate_cross.nonzerodivisor_check(g).ok


def test_find_test_element_refuses_nonreduced():
    ctx = VariableContext(("X", "Y"))
    nonreduced = GradedAlgebra.validate(ctx, [P(ctx, "X^2")])
    with pytest.raises(NotReducedError):
        find_test_element(nonreduced)


def test_rees_ideal_quadric_cone(quadric_cone):
    rp = rees_ideal(quadric_cone)
    assert is_linear_type(rp)
    assert rp.torsion_generators == ()
    assert rp.ideal.equals(rp.symmetric.ideal)


def test_rees_ideal_cross_exact(coordinate_cross):
    rp = rees_ideal(coordinate_cross)
    big = rp.symmetric.extended_context
    expected = IdealHandle(big, [parse_polynomial(big, s) for s in
                                 ("X*Y", "X*T2", "Y*T1", "T1*T2")])
    assert rp.ideal.equals(expected)
    assert not is_linear_type(rp)
    witnesses = {str(t) for t in rp.torsion_generators}
    assert "X*T2" in witnesses


def test_rees_ideal_free_module():
    ctx = VariableContext(("X", "Y"))
    free = GradedAlgebra.validate(ctx, [])
    rp = rees_ideal(free)
    assert rp.ideal.is_zero_ideal()
    assert is_linear_type(rp)


def test_torsion_is_intrinsic(coordinate_cross):
    # different accepted test elements give the same Rees ideal
    first = rees_ideal(coordinate_cross, seed=0)
    second = rees_ideal(coordinate_cross, seed=1)
    if first.test_element == second.test_element:
        second = rees_ideal(coordinate_cross, seed=2)
    assert first.ideal.equals(second.ideal)


def test_linear_type_iff_f1_on_fixtures(quadric_cone, coordinate_cross,
                                        curve_cone, surface_cone):
    for algebra in (quadric_cone, coordinate_cross, curve_cone,
                    surface_cone):
        rp = rees_ideal(algebra)
        assert is_linear_type(rp) == ft_condition(algebra, 1).holds


def test_f0_implies_symmetric_ci(quadric_cone, coordinate_cross,
                                 curve_cone, surface_cone):
    for algebra in (quadric_cone, coordinate_cross, curve_cone,
                    surface_cone):
        if ft_condition(algebra, 0).holds:
            assert symmetric_presentation(algebra).is_complete_intersection


def test_analytic_spread_quadric_cone(quadric_cone):
    sp = analytic_spread(rees_ideal(quadric_cone))
    assert sp.value == 3
    assert (sp.lower, sp.upper) == (2, 3)
    assert sp.bounds_ok
    assert sp.rees_dimension == 4 == sp.rees_dimension_expected


def test_analytic_spread_cross(coordinate_cross):
    sp = analytic_spread(rees_ideal(coordinate_cross))
    assert sp.value == 1
    assert (sp.lower, sp.upper) == (1, 1)
    assert sp.bounds_ok


def test_analytic_spread_free_module():
    ctx = VariableContext(("X", "Y"))
    free = GradedAlgebra.validate(ctx, [])
    sp = analytic_spread(rees_ideal(free))
    assert sp.value == 2 == free.dimension
    assert sp.bounds_ok


def test_rees_dimension_is_d_plus_e(curve_cone, surface_cone):
    for algebra in (curve_cone, surface_cone):
        sp = analytic_spread(rees_ideal(algebra))
        assert sp.rees_dimension == 2 * algebra.dimension


def test_extended_context_avoids_collisions():
    ctx = VariableContext(("T1", "X"))
    algebra = GradedAlgebra.validate(ctx, [P(ctx, "T1*X")])
    big = extended_context(algebra)
    assert len(set(big.names)) == 4
    assert big.names[:2] == ("T1", "X")


def test_surface_cone_full_chain(surface_cone):
    rp = rees_ideal(surface_cone)
    assert is_linear_type(rp)
    rep = depth_and_cm(rp.ideal)
    assert rep.cohen_macaulay
    assert rep.dimension == 6 and rep.depth == 6
    assert rep.projective_dimension == 2
