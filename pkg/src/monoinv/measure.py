"""Locally finite Borel measures on an open interval, exactly.

A measure here is a finite list of atoms plus a finite list of
constant-density pieces.  This class is closed under the correspondence
with non-decreasing functions, under Lebesgue decomposition (the singular
part is purely atomic by construction) and under pushforward along
piecewise-affine monotone maps, so equality of measures is a structural
comparison of canonical forms.
"""

from __future__ import annotations

from dataclasses import dataclass

from monoinv import monotone as mono
from monoinv.errors import (
    AnchorOutsideCarrier,
    CarrierMismatch,
    InternalInconsistency,
    NotAbsolutelyContinuous,
    NotLocallyFinite,
    PreconditionFailed,
    VersionAmbiguous,
    ZeroMeasure,
)
from monoinv.exactnum import ONE, ZERO, rat
from monoinv.intervals import (
    POS_INF,
    ExtendedReal,
    Interval,
    fin,
    open_iv,
    require_open_nonempty,
)
from monoinv.monotone import (
    LEFT,
    RIGHT,
    Breakpoint,
    PiecewiseMonotone,
    evaluate,
    inverse_domain,
    inverse_mass_interval,
    preimage_interior,
    segments,
)


def _q(x):
    return rat(x) if isinstance(x, int) else x


@dataclass(frozen=True)
class Atom:
    x: object
    mass: object

    def __post_init__(self):
        object.__setattr__(self, "x", _q(self.x))
        object.__setattr__(self, "mass", _q(self.mass))
        if self.mass <= 0:
            raise ValueError("atom mass must be positive")


@dataclass(frozen=True)
class UniformPiece:
    interval: Interval
    density: object

    def __post_init__(self):
        object.__setattr__(self, "density", _q(self.density))
        require_open_nonempty(self.interval, "uniform piece")
        if self.density <= 0:
            raise ValueError("piece density must be positive")

    @property
    def length(self) -> ExtendedReal:
        return self.interval.hi - self.interval.lo


@dataclass(frozen=True)
class PiecewiseMeasure:
    """Atoms + piecewise-uniform parts on an open carrier interval.

    Canonical form: atoms sorted and merged by location, pieces sorted,
    disjoint, with adjacent equal-density pieces merged across their
    (null) shared endpoint.  The zero measure is the empty lists.
    """

    carrier: Interval
    atoms: tuple = ()
    pieces: tuple = ()

    def __post_init__(self):
        require_open_nonempty(self.carrier, "carrier")
        atoms = [a if isinstance(a, Atom) else Atom(*a) for a in self.atoms]
        pieces = [p if isinstance(p, UniformPiece) else UniformPiece(*p) for p in self.pieces]

        merged = {}
        for a in atoms:
            if not self.carrier.contains(a.x):
                raise CarrierMismatch(f"atom at {a.x} outside carrier {self.carrier}")
            merged[a.x] = merged.get(a.x, ZERO) + a.mass
        atoms = [Atom(x, m) for x, m in sorted(merged.items())]

        pieces.sort(key=lambda p: (p.interval.lo, p.interval.hi))
        for p in pieces:
            if not self.carrier.contains_interval(p.interval):
                raise CarrierMismatch(f"piece {p.interval} outside carrier {self.carrier}")
        for p, q in zip(pieces, pieces[1:]):
            if q.interval.lo < p.interval.hi:
                raise ValueError("uniform pieces must be pairwise disjoint")
        out = []
        for p in pieces:
            if out and out[-1].interval.hi == p.interval.lo and out[-1].density == p.density:
                out[-1] = UniformPiece(
                    Interval(out[-1].interval.lo, p.interval.hi), p.density)
            else:
                out.append(p)

        object.__setattr__(self, "atoms", tuple(atoms))
        object.__setattr__(self, "pieces", tuple(out))

    @property
    def is_zero(self):
        return not self.atoms and not self.pieces


@dataclass(frozen=True)
class StepFunction:
    """An a.e. class of piecewise-constant nonnegative functions.

    No values are stored at the knots; adjacent cells with equal value are
    merged, so equality of step functions is equality of a.e. classes.
    """

    carrier: Interval
    knots: tuple = ()
    values: tuple = (ZERO,)

    def __post_init__(self):
        require_open_nonempty(self.carrier, "carrier")
        knots = tuple(_q(k) for k in self.knots)
        values = tuple(_q(v) for v in self.values)
        if len(values) != len(knots) + 1:
            raise ValueError("need one value per cell")
        for v in values:
            if v < 0:
                raise ValueError("step values must be nonnegative")
        for a, b in zip(knots, knots[1:]):
            if not a < b:
                raise ValueError("knots must be strictly increasing")
        if knots and not (self.carrier.contains(knots[0]) and self.carrier.contains(knots[-1])):
            raise ValueError("knots must be interior to the carrier")
        ks, vs = [], [values[0]]
        for k, v in zip(knots, values[1:]):
            if v == vs[-1]:
                continue
            ks.append(k)
            vs.append(v)
        object.__setattr__(self, "knots", tuple(ks))
        object.__setattr__(self, "values", tuple(vs))

    def cells(self):
        """(lo, hi, value) triples covering the carrier."""
        bounds = [self.carrier.lo] + [fin(k) for k in self.knots] + [self.carrier.hi]
        return [(a, b, v) for a, b, v in zip(bounds, bounds[1:], self.values)]

    def value_at(self, t):
        """Value of the cell containing t; t must not sit on a knot."""
        t = _q(t)
        if not self.carrier.contains(t):
            raise ValueError(f"{t} outside carrier")
        if t in self.knots:
            raise ValueError(f"{t} is a knot; the class has no value there")
        i = 0
        while i < len(self.knots) and self.knots[i] < t:
            i += 1
        return self.values[i]


# ---------------------------------------------------------------------------
# measure <-> distribution function


def associated_measure(g: PiecewiseMonotone) -> PiecewiseMeasure:
    """Atoms from the jumps of g, uniform pieces from its rising slopes."""
    atoms = [(b.x, b.right - b.left) for b in mono.jumps(g)]
    pieces = [(open_iv(s.a, s.b), s.slope) for s in segments(g) if s.slope > 0]
    return PiecewiseMeasure(g.domain, tuple(atoms), tuple(pieces))


def measure_of_open(m: PiecewiseMeasure, lo, hi) -> ExtendedReal:
    """Exact mass of an open interval (lo, hi)."""
    iv = open_iv(lo if isinstance(lo, ExtendedReal) else fin(_q(lo)),
                 hi if isinstance(hi, ExtendedReal) else fin(_q(hi)))
    if iv.is_empty:
        return fin(ZERO)
    total = fin(ZERO)
    for a in m.atoms:
        x = fin(a.x)
        if iv.lo < x < iv.hi:
            total = total + fin(a.mass)
    for p in m.pieces:
        lo2 = max(iv.lo, p.interval.lo)
        hi2 = min(iv.hi, p.interval.hi)
        if lo2 < hi2:
            length = hi2 - lo2
            if length.is_finite:
                total = total + fin(p.density * length.finite)
            else:
                return POS_INF
    return total


def distribution_function(m: PiecewiseMeasure, z) -> PiecewiseMonotone:
    """The right-continuous distribution function anchored to 0 at z.

    Changing z shifts the result by a constant; the associated measure of
    the result is m again.
    """
    z = _q(z)
    if m.is_zero:
        raise ZeroMeasure("the zero measure corresponds to the excluded constant class")
    if not m.carrier.contains(z):
        raise AnchorOutsideCarrier(f"anchor {z} outside carrier {m.carrier}")

    pts = set(a.x for a in m.atoms)
    for p in m.pieces:
        for end in (p.interval.lo, p.interval.hi):
            if end.is_finite and m.carrier.contains(end.finite):
                pts.add(end.finite)
    pts = sorted(pts)
    mass_at = {a.x: a.mass for a in m.atoms}

    if not pts:
        # a single piece spanning the whole carrier
        d = m.pieces[0].density if m.pieces else ZERO
        return PiecewiseMonotone(m.carrier, (), (d,), (z, ZERO))

    # every finite interior piece endpoint is in pts, so a piece meeting a
    # cell covers it; cells and pieces are both sorted, walk them in lockstep
    bounds = [m.carrier.lo] + [fin(x) for x in pts] + [m.carrier.hi]
    slopes = []
    pi = 0
    for a, b in zip(bounds, bounds[1:]):
        while pi < len(m.pieces) and m.pieces[pi].interval.hi <= a:
            pi += 1
        if (pi < len(m.pieces)
                and m.pieces[pi].interval.lo <= a and b <= m.pieces[pi].interval.hi):
            slopes.append(m.pieces[pi].density)
        else:
            slopes.append(ZERO)

    # right-continuous values, provisional anchor at the first knot
    right = [ZERO]
    left = [-mass_at.get(pts[0], ZERO)]
    for i in range(1, len(pts)):
        l = right[i - 1] + slopes[i] * (pts[i] - pts[i - 1])
        left.append(l)
        right.append(l + mass_at.get(pts[i], ZERO))

    # shift so that the right version vanishes at z
    i = 0
    while i < len(pts) and pts[i] <= z:
        i += 1
    if i == 0:
        gz = left[0] - slopes[0] * (pts[0] - z)
    else:
        gz = right[i - 1] + slopes[i] * (z - pts[i - 1])
    breaks = tuple(
        Breakpoint(x, l - gz, r - gz) for x, l, r in zip(pts, left, right)
    )
    return PiecewiseMonotone(m.carrier, breaks, tuple(slopes), None)


# ---------------------------------------------------------------------------
# decomposition, density, absolute continuity


def lebesgue_decompose(m: PiecewiseMeasure) -> tuple[PiecewiseMeasure, PiecewiseMeasure]:
    """Unique split into an absolutely continuous and a purely atomic part."""
    return (
        PiecewiseMeasure(m.carrier, (), m.pieces),
        PiecewiseMeasure(m.carrier, m.atoms, ()),
    )


def density(m: PiecewiseMeasure) -> StepFunction:
    """The Radon-Nikodym derivative w.r.t. Lebesgue measure, as a step class."""
    if m.atoms:
        raise NotAbsolutelyContinuous("the measure has atoms")
    knots, values = [], [ZERO]
    for p in m.pieces:
        lo, hi = p.interval.lo, p.interval.hi
        if lo.is_finite and m.carrier.contains(lo.finite):
            if knots and knots[-1] == lo.finite:
                values[-1] = p.density  # piece starts where the previous one ended
            else:
                knots.append(lo.finite)
                values.append(p.density)
        else:
            values[-1] = p.density
        if hi.is_finite and m.carrier.contains(hi.finite):
            knots.append(hi.finite)
            values.append(ZERO)
    return StepFunction(m.carrier, tuple(knots), tuple(values))


def lebesgue_on(iv: Interval, carrier: Interval) -> PiecewiseMeasure:
    """Lebesgue measure restricted to an open interval, carried on carrier."""
    if iv.is_empty:
        return PiecewiseMeasure(carrier, (), ())
    return PiecewiseMeasure(carrier, (), ((iv, ONE),))


def lebesgue_restricted(g: PiecewiseMonotone, which: str = "mass_of_inverse") -> PiecewiseMeasure:
    """Lebesgue measure on the mass interval of the generalized inverse of g,
    carried on the inverse's regular domain."""
    if which != "mass_of_inverse":
        raise ValueError(f"unknown mode {which!r}")
    return lebesgue_on(inverse_mass_interval(g), inverse_domain(g))


def _coverage(pieces) -> list[Interval]:
    """Union of open intervals, closing single-point gaps (which are null)."""
    ivs = sorted((p.interval for p in pieces), key=lambda i: (i.lo, i.hi))
    out = []
    for iv in ivs:
        if out and iv.lo <= out[-1].hi:
            if iv.hi > out[-1].hi:
                out[-1] = Interval(out[-1].lo, iv.hi)
        else:
            out.append(iv)
    return out


def _covered(iv: Interval, coverage: list[Interval]) -> bool:
    return any(c.lo <= iv.lo and iv.hi <= c.hi for c in coverage)


def is_abs_cont_wrt(a: PiecewiseMeasure, b: PiecewiseMeasure) -> bool:
    """Exact decision of a << b on the representable class.

    Atoms of a must coincide with atoms of b; pieces of a must be covered,
    up to Lebesgue-null sets, by the pieces of b.
    """
    if a.carrier != b.carrier:
        raise CarrierMismatch("absolute continuity needs a common carrier")
    b_atoms = {atom.x for atom in b.atoms}
    for atom in a.atoms:
        if atom.x not in b_atoms:
            return False
    cover = _coverage(b.pieces)
    return all(_covered(p.interval, cover) for p in a.pieces)


# ---------------------------------------------------------------------------
# pushforward


def pushforward(m: PiecewiseMeasure, t: PiecewiseMonotone) -> PiecewiseMeasure:
    """Image measure of m under the real restriction of t.

    Atoms move to their image point (masses add on collision); a uniform
    piece maps segment by segment: through a rising piece of slope s the
    density divides by s, through a flat it collapses to an atom at the
    flat's value.
    """
    if not t.domain.contains_interval(m.carrier):
        raise CarrierMismatch("carrier of the measure must lie inside the domain of the map")
    jump_xs = {b.x for b in mono.jumps(t)}

    out_atoms = {}

    def add_atom(x, mass):
        out_atoms[x] = out_atoms.get(x, ZERO) + mass

    for a in m.atoms:
        if a.x in jump_xs:
            raise VersionAmbiguous(
                f"atom at {a.x} sits on a jump of the map; the image depends on the version")
        add_atom(evaluate(t, a.x, RIGHT).finite, a.mass)

    out_pieces = []
    for p in m.pieces:
        for seg in segments(t):
            lo = max(p.interval.lo, seg.a)
            hi = min(p.interval.hi, seg.b)
            if not lo < hi:
                continue
            if seg.slope == 0:
                length = hi - lo
                if not length.is_finite:
                    raise NotLocallyFinite(
                        "a flat of infinite length carries infinite mass to one point")
                add_atom(seg.u.finite, p.density * length.finite)
            else:
                u = evaluate(t, lo.finite, RIGHT) if lo.is_finite else seg.u
                v = evaluate(t, hi.finite, LEFT) if hi.is_finite else seg.v
                out_pieces.append((open_iv(u, v), p.density / seg.slope))

    atoms = tuple(sorted(out_atoms.items()))
    return PiecewiseMeasure(inverse_domain(t), atoms, tuple(out_pieces))


# ---------------------------------------------------------------------------
# absolute continuity of the generalized inverse, and the inverse rule


def step_of_slopes(g: PiecewiseMonotone) -> StepFunction:
    """The slopes of g as a step class on its regular domain: the density of
    the absolutely continuous part of the associated measure."""
    return StepFunction(g.domain, g.knot_xs, g.slopes)


def inverse_slope_step(g: PiecewiseMonotone) -> StepFunction:
    """Slopes of the generalized inverse of g, as a step class on the
    inverse's regular domain (the density of the inverse's abs. cont. part)."""
    dom, segs, _ = mono._inverse_tokens(g)
    knots = []
    values = [segs[0][2]]
    for prev, cur in zip(segs, segs[1:]):
        knots.append(prev[1].finite)
        values.append(cur[2])
    return StepFunction(dom, tuple(knots), tuple(values))


def gen_inverse_abs_cont(g: PiecewiseMonotone, iv: Interval) -> bool:
    """Is the generalized inverse of g absolutely continuous on the open
    interval iv?

    Decided by three independent characterizations which a theorem makes
    equivalent: (1) the inverse has no jump inside iv, (2) g has no flat of
    positive length inside M = int(G^{-1}(iv)), (3) Lebesgue measure
    restricted to M is absolutely continuous w.r.t. the associated measure.
    Disagreement raises InternalInconsistency.
    """
    require_open_nonempty(iv, "interval")
    if not inverse_domain(g).contains_interval(iv):
        raise PreconditionFailed("interval must lie inside the inverse's regular domain")

    r1 = not any(iv.contains(value) for _, value in mono.flats(g))

    m_int = preimage_interior(g, iv)
    r2 = True
    for seg in segments(g):
        if seg.slope != 0:
            continue
        lo = max(seg.a, m_int.lo)
        hi = min(seg.b, m_int.hi)
        if lo < hi:
            r2 = False
            break

    r3 = is_abs_cont_wrt(lebesgue_on(m_int, g.domain), associated_measure(g))

    if not (r1 == r2 == r3):
        raise InternalInconsistency(
            f"absolute-continuity characterizations disagree: {r1}, {r2}, {r3}")
    return r1


@dataclass(frozen=True)
class RuleSegment:
    interval: Interval
    g_slope: object
    inverse_slope: object
    reciprocal: object
    equal: bool


@dataclass(frozen=True)
class InverseRuleReport:
    mass_interval: Interval
    segments: tuple
    passed: bool


def inverse_rule_check(g: PiecewiseMonotone) -> InverseRuleReport:
    """Verify g's slopes against the reciprocal of the inverse's slopes.

    On every rising piece of the mass interval, the density of g must equal
    1 / (h' o G) exactly, h' being the density of the generalized inverse.
    Requires the inverse to be absolutely continuous on its whole domain.
    """
    if not gen_inverse_abs_cont(g, inverse_domain(g)):
        raise PreconditionFailed("the generalized inverse is not absolutely continuous")
    m_int = mono.mass_interval(g)
    if m_int.is_empty:
        return InverseRuleReport(m_int, (), True)
    hstep = inverse_slope_step(g)
    rows = []
    ok = True
    for seg in segments(g):
        lo = max(seg.a, m_int.lo)
        hi = min(seg.b, m_int.hi)
        if not lo < hi:
            continue
        # under the precondition every such piece rises
        t_probe = mono._probe_point(open_iv(seg.u, seg.v))
        hprime = hstep.value_at(t_probe)
        recip = 1 / hprime
        equal = recip == seg.slope
        ok = ok and equal
        rows.append(RuleSegment(open_iv(lo, hi), seg.slope, hprime, recip, equal))
    return InverseRuleReport(m_int, tuple(rows), ok)
