"""Candidate verification and multiplicity solving on construction models."""
from __future__ import annotations

from fractions import Fraction

from hypothesis import given, settings
from hypothesis import strategies as st

from reflector.catalog import default_catalog, definite_part
from reflector.reflcheck import (
    check_candidate,
    singular_filter,
    solve_candidates,
    solve_family,
)

CAT = default_catalog()


def _definite(expr):
    _, lat = definite_part(expr, CAT)
    return lat


CHECK_ROWS = [
    ("2U+D4", 2, 1, 0, 72),
    ("2U+D4", 2, 0, 1, 24),
    ("2U+D4", 2, 1, 1, 96),
    ("2U+D8", 2, 1, 0, 124),
    ("2U+D8", 2, 0, 1, 4),
    ("2U+D8v(2)", 2, 1, 0, 28),
    ("2U+A2", 3, 1, 0, 45),
    ("2U+A2", 3, 0, 1, 9),
    ("2U+E6", 3, 1, 0, 120),
    ("2U+E6v(3)", 3, 1, 0, 12),
    ("2U+E6v(3)", 3, 0, 1, 12),
    ("2U+A4", 5, 1, 0, 62),
    ("2U+A4v(5)", 5, 0, 1, 2),
    ("2U+A6", 7, 1, 0, 75),
    ("2U+T4", 5, 1, 5, 30),
    ("2U+L7", 7, 1, 7, 28),
    ("2U+E8+D4", 2, 1, 8, 144),
    ("2U+E6+A2", 3, 1, 9, 90),
    ("2U+E6v(3)+2A2", 3, 1, 1, 12),
    ("2U+T8", 5, 1, 45, 120),
    ("2U+2L7", 7, 1, 7, 20),
    ("2U+L11", 11, 1, 11, 24),
    ("2U+L23", 23, 1, 23, 12),
]


def test_candidate_rows_pass_all_identities():
    for expr, p, c1, cp, k in CHECK_ROWS:
        rep = check_candidate(_definite(expr), p, c1, cp, k)
        assert rep.passed, (expr, k, rep.checks)
        assert rep.checks["matrix_identity"] is True
        assert rep.checks["counting_identity"] is True
        assert rep.checks["singular_bound"] is True


def test_derived_quantities_on_the_rank_ten_triple():
    """The rank 10 model with rescaled E6 and two A2 blocks at weight 12."""
    rep = check_candidate(_definite("2U+E6v(3)+2A2"), 3, 1, 1, 12)
    assert rep.passed
    assert rep.count_short == 12
    assert rep.count_long == 84
    assert rep.c == 4
    assert rep.span_short == 4
    assert rep.rank == 10


def test_derived_quantities_on_the_glued_octad():
    rep = check_candidate(_definite("2U+T8"), 5, 1, 45, 120)
    assert rep.passed
    assert rep.count_short == 126
    assert rep.count_long == 2
    assert rep.c == 18


def test_wrong_weight_fails():
    rep = check_candidate(_definite("2U+D4"), 2, 1, 1, 97)
    assert not rep.passed


def test_wrong_multiplicity_fails():
    rep = check_candidate(_definite("2U+T4"), 5, 1, 4, 30)
    assert not rep.passed


@settings(max_examples=25, deadline=None)
@given(st.integers(1, 6))
def test_check_is_invariant_under_ray_scaling(t):
    """All identities are linear in (c1, cp, k), so scaling preserves passing."""
    rep = check_candidate(_definite("2U+T4"), 5, t, 5 * t, 30 * t)
    assert rep.passed
    bad = check_candidate(_definite("2U+T4"), 5, t, 5 * t, 30 * t + 1)
    assert not bad.passed


SOLVE_RAYS = [
    ("2U+2E8+D4", 2, (1, 8, 24)),
    ("2U+2E8+A2", 3, (1, 27, 48)),
    ("2U+L7", 7, (1, 7, 28)),
    ("2U+L11", 11, (1, 11, 24)),
    ("2U+L19", 19, (1, 19, 16)),
    ("2U+L23", 23, (1, 23, 12)),
    ("2U+2L7", 7, (1, 7, 20)),
    ("2U+2L11", 11, (1, 11, 12)),
    ("2U+T8", 5, (1, 45, 120)),
]


def test_solver_finds_unique_rays():
    for expr, p, (c1, cp, k) in SOLVE_RAYS:
        res = solve_candidates(_definite(expr), p)
        assert res.status == "ray", expr
        assert (res.c1, res.cp, res.k) == (c1, cp, k), expr


def test_solver_ray_formulas_scale_with_the_prime():
    """One short plus one long orbit forces cp = p c1 and a linear weight in p."""
    for p, expr in ((7, "2U+L7"), (11, "2U+L11"), (19, "2U+L19"), (23, "2U+L23")):
        res = solve_candidates(_definite(expr), p)
        assert res.cp == p * res.c1
        assert res.k == (35 - p) * res.c1
    for p, expr in ((7, "2U+2L7"), (11, "2U+2L11")):
        res = solve_candidates(_definite(expr), p)
        assert res.cp == p * res.c1
        assert res.k == (34 - 2 * p) * res.c1


SOLVE_EMPTY = [
    ("2U+E8+T4", 5, "component equations admit only the zero solution"),
    ("2U+A4+T4", 5, "component equations admit only the zero solution"),
    ("2U+E8+L7", 7, "component equations admit only the zero solution"),
    ("2U+E8+L11", 11, "component equations admit only the zero solution"),
    ("2U+E8+A4", 5, "forced weight 0 is not a positive integer"),
    ("2U+2L19", 19, "forced weight -4 is not a positive integer"),
]


def test_solver_reports_empty_systems():
    for expr, p, reason in SOLVE_EMPTY:
        res = solve_candidates(_definite(expr), p)
        assert res.status == "none", expr
        assert res.reason == reason, expr


def test_solver_underdetermined_single_component():
    """One component gives one equation in (c1, cp), leaving a weight functional."""
    res = solve_candidates(_definite("2U+D4"), 2)
    assert res.status == "underdetermined"
    assert res.k_coeffs == (Fraction(72), Fraction(24))
    res3 = solve_candidates(_definite("2U+A2"), 3)
    assert res3.status == "underdetermined"
    assert res3.k_coeffs == (Fraction(45), Fraction(9))


FAMILY_CUTOFFS = [
    ((2, 2, 1, 2), (35, -1), 23),
    ((2, 2, 2, 4), (34, -2), 11),
    ((3, 3, 2, 4), (45, -3), 11),
    ((18, 2, 7, 8), (165, -9), 11),
]


def test_symbolic_families_and_singular_cutoffs():
    """Weight k(P) = a + bP stays above the singular bound only up to the cutoff."""
    for (h1, h2, n1, rank), (k0, k1), cutoff in FAMILY_CUTOFFS:
        fam = solve_family(h1, h2, n1, rank)
        assert (fam.k.const, fam.k.coeff) == (Fraction(k0), Fraction(k1))
        assert fam.cp.const == 0
        assert singular_filter(fam) == cutoff


def test_family_specializations_match_concrete_solver():
    fam = solve_family(2, 2, 1, 2)
    for p, expr in ((7, "2U+L7"), (19, "2U+L19"), (23, "2U+L23")):
        res = solve_candidates(_definite(expr), p)
        assert res.k == fam.k.const + fam.k.coeff * p
        assert res.cp == fam.cp.const + fam.cp.coeff * p
