import pytest

from monoinv.errors import (
    AnchorOutsideCarrier,
    CarrierMismatch,
    NotAbsolutelyContinuous,
    PreconditionFailed,
    VersionAmbiguous,
    ZeroMeasure,
)
from monoinv.exactnum import rat
from monoinv.intervals import REAL_LINE, fin, open_iv
from monoinv.laws import GenConfig, gen_monotone
from monoinv.measure import (
    PiecewiseMeasure,
    associated_measure,
    density,
    distribution_function,
    gen_inverse_abs_cont,
    inverse_rule_check,
    is_abs_cont_wrt,
    lebesgue_decompose,
    lebesgue_on,
    lebesgue_restricted,
    measure_of_open,
    pushforward,
    step_of_slopes,
)
from monoinv.monotone import (
    LEFT,
    RIGHT,
    PiecewiseMonotone,
    equal_up_to_shift,
    evaluate,
    from_knot_data,
    generalized_inverse,
    inverse_domain,
    mass_interval,
    refine_grid,
    structural_values,
    structural_xs,
)


def probe_points(g):
    return refine_grid(structural_xs(g))


def measure_matches_limits(g, m):
    """Defining identity: the mass of every open (x, y) inside the carrier
    is G_l(y) - G_r(x)."""
    pts = [p for p in probe_points(g) if g.domain.contains(p)]
    for i, x in enumerate(pts):
        for y in pts[i + 1:]:
            want = evaluate(g, y, LEFT) - evaluate(g, x, RIGHT)
            assert measure_of_open(m, x, y) == want
    return True


def pushforward_oracle(m, t, lo, hi):
    """Mass the image measure must give to (lo, hi): the mass of the exact
    preimage, computed by solving each affine piece of t independently."""
    from monoinv.monotone import first_x_with_left_ge, last_x_with_right_le

    a = last_x_with_right_le(t, fin(lo))
    b = first_x_with_left_ge(t, fin(hi))
    if not a < b:
        return fin(rat(0))
    return measure_of_open(m, a, b)


# ---------------------------------------------------------------------------
# associated measure


def test_associated_measure_fixa(fixa, fixa_measure):
    m = associated_measure(fixa)
    assert m == fixa_measure
    assert not m.atoms
    assert measure_matches_limits(fixa, m)


def test_associated_measure_dirac(fixc):
    m = associated_measure(fixc)
    assert not m.pieces
    assert [(a.x, a.mass) for a in m.atoms] == [(rat(0), rat(1))]


def test_associated_measure_of_fixa_inverse(fixa):
    q = generalized_inverse(fixa)
    m = associated_measure(q)
    assert [(a.x, a.mass) for a in m.atoms] == [(rat(1, 2), rat(1))]
    assert [(p.interval, p.density) for p in m.pieces] == [(open_iv(0, 1), rat(1))]
    assert measure_matches_limits(q, m)


def test_associated_measure_random_matches_limits():
    for seed in range(25):
        g = gen_monotone(GenConfig(seed=seed, max_knots=5))
        measure_matches_limits(g, associated_measure(g))


# ---------------------------------------------------------------------------
# distribution function


def test_distribution_function_of_lebesgue_is_identity():
    m = PiecewiseMeasure(REAL_LINE, (), ((REAL_LINE, 1),))
    g = distribution_function(m, 0)
    assert not g.breaks
    assert g.slopes == (rat(1),)
    assert evaluate(g, 0, RIGHT) == fin(rat(0))
    assert evaluate(g, 7, RIGHT) == fin(rat(7))


def test_distribution_function_of_atom():
    m = PiecewiseMeasure(REAL_LINE, ((0, 1),), ())
    g = distribution_function(m, -1)
    assert evaluate(g, -1, RIGHT) == fin(rat(0))
    assert evaluate(g, 0, LEFT) == fin(rat(0))
    assert evaluate(g, 0, RIGHT) == fin(rat(1))


def test_distribution_function_round_trip_fixd(fixd_measure, fixd):
    g = distribution_function(fixd_measure, rat(1, 2))
    assert equal_up_to_shift(g, fixd)
    assert associated_measure(g) == fixd_measure


def test_distribution_function_round_trip_random():
    for seed in range(25):
        g = gen_monotone(GenConfig(seed=seed, max_knots=6))
        m = associated_measure(g)
        from monoinv.monotone import _probe_point

        z = _probe_point(g.domain)
        back = distribution_function(m, z)
        assert equal_up_to_shift(back, g)
        assert associated_measure(back) == m


def test_distribution_function_errors(fixd_measure):
    with pytest.raises(ZeroMeasure):
        distribution_function(PiecewiseMeasure(open_iv(0, 1), (), ()), rat(1, 2))
    with pytest.raises(AnchorOutsideCarrier):
        distribution_function(
            PiecewiseMeasure(open_iv(0, 1), (), ((open_iv(0, 1), 1),)), 5)


def test_anchor_shift_invariance(fixd_measure):
    g1 = distribution_function(fixd_measure, 0)
    g2 = distribution_function(fixd_measure, rat(3, 4))
    assert equal_up_to_shift(g1, g2)
    assert associated_measure(g1) == associated_measure(g2)


def test_distribution_function_with_atom_at_anchor():
    m = PiecewiseMeasure(REAL_LINE, ((0, 1),), ((open_iv(0, 1), 1),))
    f = distribution_function(m, 0)
    # the right version vanishes at the anchor; the atom shows up on the left
    assert evaluate(f, 0, RIGHT) == fin(rat(0))
    assert evaluate(f, 0, LEFT) == fin(rat(-1))
    assert associated_measure(f) == m


# ---------------------------------------------------------------------------
# decomposition and density


def test_lebesgue_decompose_fixd(fixd_measure):
    abs_part, sing = lebesgue_decompose(fixd_measure)
    assert [(p.interval, p.density) for p in abs_part.pieces] == [(open_iv(0, 1), rat(1, 2))]
    assert not abs_part.atoms
    assert [(a.x, a.mass) for a in sing.atoms] == [(rat(1, 2), rat(1, 2))]
    assert not sing.pieces


def test_lebesgue_decompose_pure_cases(fixb_measure, fixc_measure):
    a, s = lebesgue_decompose(fixb_measure)
    assert a == fixb_measure and s.is_zero
    a, s = lebesgue_decompose(fixc_measure)
    assert s == fixc_measure and a.is_zero


def test_lebesgue_decompose_additive_and_disjoint():
    for seed in range(20):
        g = gen_monotone(GenConfig(seed=seed, max_knots=6))
        m = associated_measure(g)
        abs_part, sing = lebesgue_decompose(m)
        assert not abs_part.atoms and not sing.pieces
        pts = [p for p in probe_points(g) if g.domain.contains(p)]
        for x, y in zip(pts, pts[1:]):
            assert (measure_of_open(m, x, y)
                    == measure_of_open(abs_part, x, y) + measure_of_open(sing, x, y))


def test_inverse_mass_interval_length_is_total_mass():
    from monoinv.monotone import inverse_mass_interval

    for seed in range(20):
        g = gen_monotone(GenConfig(seed=seed, max_knots=6))
        m = associated_measure(g)
        iv = inverse_mass_interval(g)
        total = measure_of_open(m, g.domain.lo, g.domain.hi)
        assert iv.hi - iv.lo == total


def test_lebesgue_restricted_rejects_unknown_mode(fixb):
    with pytest.raises(ValueError):
        lebesgue_restricted(fixb, which="something_else")


def test_density_fixa(fixa, fixa_measure):
    d = density(fixa_measure)
    assert d.knots == (rat(0), rat(1, 2), rat(3, 2), rat(2))
    assert d.values == (rat(0), rat(1), rat(0), rat(1), rat(0))
    assert d == step_of_slopes(fixa)


def test_density_errors(fixc_measure):
    with pytest.raises(NotAbsolutelyContinuous):
        density(fixc_measure)


def test_density_of_lebesgue_constant_one():
    d = density(PiecewiseMeasure(REAL_LINE, (), ((REAL_LINE, 1),)))
    assert d.knots == () and d.values == (rat(1),)


# ---------------------------------------------------------------------------
# pushforward


def test_pushforward_uniform_through_fixa_inverse(fixa, fixa_measure):
    q = generalized_inverse(fixa)
    lam_q = lebesgue_restricted(fixa)
    assert lam_q.carrier == open_iv(0, 1)
    got = pushforward(lam_q, q)
    assert got == fixa_measure


def test_pushforward_uniform_through_fixd_inverse(fixd, fixd_measure):
    q = generalized_inverse(fixd)
    got = pushforward(lebesgue_restricted(fixd), q)
    assert got == fixd_measure
    # flat (1/4,3/4) collapses into the atom at 1/2
    assert [(a.x, a.mass) for a in got.atoms] == [(rat(1, 2), rat(1, 2))]


def test_pushforward_identity_map(fixb_measure):
    ident = PiecewiseMonotone(open_iv(0, 1), (), (1,), (rat(1, 2), rat(1, 2)))
    assert pushforward(fixb_measure, ident) == PiecewiseMeasure(
        REAL_LINE, (), ((open_iv(0, 1), 1),))


def test_pushforward_atom_on_jump_is_ambiguous(fixd):
    m = PiecewiseMeasure(REAL_LINE, ((rat(1, 2), 1),), ())
    with pytest.raises(VersionAmbiguous):
        pushforward(m, fixd)


def test_pushforward_to_inverse_domain_boundary_rejected():
    # mass on an infinite flat would land on the boundary of the image carrier
    t = from_knot_data(REAL_LINE, [0], [0], [0, 1], rat(1), 1)
    atom_on_flat = PiecewiseMeasure(REAL_LINE, ((-1, 1),), ())
    with pytest.raises(CarrierMismatch):
        pushforward(atom_on_flat, t)


def test_pushforward_against_probe_oracle():
    done = 0
    for seed in range(30):
        t = gen_monotone(GenConfig(seed=seed, max_knots=5, value_bound=10))
        m = lebesgue_on(mass_interval(t), t.domain)
        if m.is_zero:
            continue
        got = pushforward(m, t)
        vals = refine_grid(structural_values(t))
        for i, lo in enumerate(vals):
            for hi in vals[i + 1:]:
                want = pushforward_oracle(m, t, lo, hi)
                assert measure_of_open(got, lo, hi) == want
        done += 1
    assert done >= 20


# ---------------------------------------------------------------------------
# restricted Lebesgue measures


def test_lebesgue_restricted_fixa(fixa):
    lam = lebesgue_restricted(fixa)
    assert lam.carrier == open_iv(0, 1)
    assert [(p.interval, p.density) for p in lam.pieces] == [(open_iv(0, 1), rat(1))]


def test_lebesgue_restricted_dirac(fixc):
    # the inverse sweeps (0,1); its mass interval carries the whole unit mass
    lam = lebesgue_restricted(fixc)
    assert lam.carrier == open_iv(0, 1)
    assert [(p.interval, p.density) for p in lam.pieces] == [(open_iv(0, 1), rat(1))]


def test_lebesgue_restricted_identity_is_lebesgue():
    g = PiecewiseMonotone(REAL_LINE, (), (1,), (0, 0))
    lam = lebesgue_restricted(g)
    assert lam == PiecewiseMeasure(REAL_LINE, (), ((REAL_LINE, 1),))


# ---------------------------------------------------------------------------
# absolute continuity predicate


def test_abs_cont_gap_counterexample(fixa, fixa_measure):
    lam = lebesgue_on(open_iv(0, 2), REAL_LINE)
    assert not is_abs_cont_wrt(lam, fixa_measure)  # the gap (1/2,3/2) is null for the measure
    assert is_abs_cont_wrt(fixa_measure, lam)


def test_abs_cont_abs_part_of_fixd(fixd_measure):
    abs_part, _ = lebesgue_decompose(fixd_measure)
    lam = lebesgue_on(open_iv(0, 1), REAL_LINE)
    assert is_abs_cont_wrt(abs_part, lam)


def test_abs_cont_atom_vs_lebesgue(fixc_measure):
    lam = lebesgue_on(REAL_LINE, REAL_LINE)
    assert not is_abs_cont_wrt(fixc_measure, lam)
    assert is_abs_cont_wrt(lam, lam)


def test_abs_cont_requires_common_carrier(fixb_measure, fixc_measure):
    with pytest.raises(CarrierMismatch):
        is_abs_cont_wrt(fixb_measure, fixc_measure)


def test_abs_cont_point_gaps_are_null():
    a = lebesgue_on(open_iv(0, 2), REAL_LINE)
    b = PiecewiseMeasure(REAL_LINE, (), ((open_iv(0, 1), 1), (open_iv(1, 2), 2)))
    assert is_abs_cont_wrt(a, b)


# ---------------------------------------------------------------------------
# absolute continuity of the generalized inverse


def test_gen_inverse_abs_cont_fixa(fixa):
    assert not gen_inverse_abs_cont(fixa, open_iv(0, 1))


def test_gen_inverse_abs_cont_fixd(fixd):
    assert gen_inverse_abs_cont(fixd, open_iv(0, 1))


def test_gen_inverse_abs_cont_dirac(fixc):
    # singleton image: every characterization holds trivially
    assert gen_inverse_abs_cont(fixc, open_iv(0, 1))


def test_gen_inverse_abs_cont_subintervals(fixa):
    # away from the flat's level the inverse is fine
    assert gen_inverse_abs_cont(fixa, open_iv(0, rat(1, 2)))
    assert not gen_inverse_abs_cont(fixa, open_iv(rat(1, 4), rat(3, 4)))


def test_gen_inverse_abs_cont_requires_subinterval(fixd):
    with pytest.raises(PreconditionFailed):
        gen_inverse_abs_cont(fixd, open_iv(-5, 5))


# ---------------------------------------------------------------------------
# inverse-function rule


def test_inverse_rule_identity(fixb):
    rep = inverse_rule_check(fixb)
    assert rep.passed
    assert [(r.g_slope, r.inverse_slope) for r in rep.segments] == [(rat(1), rat(1))]


def test_inverse_rule_fixd(fixd):
    rep = inverse_rule_check(fixd)
    assert rep.passed
    assert [(r.g_slope, r.inverse_slope) for r in rep.segments] == [
        (rat(1, 2), rat(2)),
        (rat(1, 2), rat(2)),
    ]


def test_inverse_rule_two_slopes():
    g = from_knot_data(REAL_LINE, [0, 1, 2], [0, 0, 0], [0, 1, 3, 0], -1, 0)
    rep = inverse_rule_check(g)
    assert rep.passed
    assert [(r.g_slope, r.inverse_slope, r.reciprocal) for r in rep.segments] == [
        (rat(1), rat(1), rat(1)),
        (rat(3), rat(1, 3), rat(3)),
    ]


def test_inverse_rule_precondition(fixa):
    with pytest.raises(PreconditionFailed):
        inverse_rule_check(fixa)


def test_inverse_rule_random():
    done = 0
    for seed in range(40):
        g = gen_monotone(GenConfig(seed=seed, max_knots=6))
        if not gen_inverse_abs_cont(g, inverse_domain(g)):
            continue
        assert inverse_rule_check(g).passed
        done += 1
    assert done >= 10
