from fractions import Fraction

from k3pencil.identities import (
    all_identity_checks,
    mandelstam_surface_check,
    pencil_parameter_map_check,
    q_surface_check,
    quartic_family_check,
    remarkable_identity_check,
    symmetry_group_check,
)


def test_all_checks_pass_with_zero_residuals():
    for c in all_identity_checks():
        assert c.ok, c.id
        if c.residual is not None:
            assert c.residual.is_zero()


def test_remarkable_identity_spot_value():
    c = remarkable_identity_check()
    assert c.details["spot_value"] == "151/30"


def test_single_variable_building_block():
    # 1/(((1+x)/(1-x))^2 - 1) = (1-x)^2 / (4x)
    x = Fraction(3, 7)
    X = (1 + x) / (1 - x)
    assert 1 / (X * X - 1) == (1 - x) ** 2 / (4 * x)


def test_mandelstam_at_ones():
    c = mandelstam_surface_check()
    assert c.ok
    # both sides at (1,1,1): (1-1)^2 terms vanish, leaving 4 = F - 2
    assert c.details["lhs_at_111_times_xyz"] == "4"


def test_pencil_map():
    assert pencil_parameter_map_check().ok


def test_q_surface_exclusions():
    c = q_surface_check()
    assert c.ok
    assert c.details["denominator_at_(1,1)"] == "0"
    assert c.details["z2_at_(2,1)"] == "1"


def test_quartic_family_and_reciprocal():
    c = quartic_family_check()
    assert c.ok and c.details["reciprocal_matches"]


def test_symmetry_group_counts_48():
    c = symmetry_group_check()
    assert c.ok and c.details["group_order"] == 48
