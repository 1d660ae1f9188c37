from fractions import Fraction

import pytest

from semilin.errors import PairingMismatch, PreconditionError, UnboundedFiber
from semilin.family import (AffineFn, Band, Family, Graph, bounded_params,
                            endpoint_family, fiber, match_endpoints,
                            param_domain, uniform_length_bound)
from semilin.intervals import Interval, endpoints, metrics, points
from semilin.rat import NEG_INF, POS_INF, is_finite

from conftest import iu, random_bounded_family, random_family, sup_width

F = Fraction
op = Interval.open
fn = AffineFn


def growing_band():
    # 0 < x < t over t in (0,1)
    return Family((Band(op(0, 1), fn(0, 0), fn(1, 0)),))


def punctured_line_family():
    # the line minus {-t, t}, over t > 0
    dom = Interval(F(0), POS_INF)
    return Family((
        Band(dom, NEG_INF, fn(-1, 0)),
        Band(dom, fn(-1, 0), fn(1, 0)),
        Band(dom, fn(1, 0), POS_INF),
    ))


def drifting_pair_family():
    # two unit intervals drifting apart, over t > 0
    dom = Interval(F(0), POS_INF)
    return Family((
        Band(dom, fn(-1, -1), fn(-1, 0)),
        Band(dom, fn(1, 0), fn(1, 1)),
    ))


def ulb_oracle(family):
    """Independent uniform-bound computation from fiber samples.

    Refines the axis at domain ends and boundary crossings computed from
    scratch, reads component lengths off two fiber evaluations per piece,
    and extrapolates the affine lengths to the piece limits.
    """
    criticals = set()
    entries = []
    for c in family.cells:
        for e in (c.domain.lo, c.domain.hi):
            if is_finite(e):
                criticals.add(e)
        if isinstance(c, Graph):
            entries.append(c.value)
        else:
            for b in (c.lower, c.upper):
                if isinstance(b, AffineFn):
                    entries.append(b)
    for i in range(len(entries)):
        for j in range(i + 1, len(entries)):
            f, g = entries[i], entries[j]
            if f.slope != g.slope:
                criticals.add((g.intercept - f.intercept) / (f.slope - g.slope))
    region = bounded_params(family)
    best = F(0)

    def push(value):
        nonlocal best
        if value > best:
            best = value

    for comp in region.parts:
        cuts = sorted({t for t in criticals if comp.lo < t < comp.hi})
        marks = [comp.lo] + cuts + [comp.hi]
        for t in [comp.lo, comp.hi] + cuts:
            if is_finite(t) and region.contains(t):
                push(metrics(fiber(family, t)).max_component_length)
        for a, b in zip(marks, marks[1:]):
            if a == b:
                continue
            if is_finite(a) and is_finite(b):
                t1 = a + (b - a) / 3
                t2 = a + 2 * (b - a) / 3
            elif is_finite(a):
                t1, t2 = a + 1, a + 2
            elif is_finite(b):
                t1, t2 = b - 2, b - 1
            else:
                t1, t2 = F(0), F(1)
            f1, f2 = fiber(family, t1), fiber(family, t2)
            assert len(f1.parts) == len(f2.parts)
            for p1, p2 in zip(f1.parts, f2.parts):
                slope = (p2.length - p1.length) / (t2 - t1)
                if is_finite(a):
                    push(slope * (a - t1) + p1.length)
                elif slope < 0:
                    push(POS_INF)
                if is_finite(b):
                    push(slope * (b - t1) + p1.length)
                elif slope > 0:
                    push(POS_INF)
                if not is_finite(a) and not is_finite(b) and slope == 0:
                    push(p1.length)
    return best


class TestCellValidation:
    def test_band_collapse_rejected(self):
        with pytest.raises(ValueError):
            Band(op(0, 1), fn(1, 0), fn(0, 0))
        with pytest.raises(ValueError):
            Band(op(-1, 1), fn(-1, 0), fn(1, 0))  # crosses at t = 0

    def test_closed_side_needs_finite_boundary(self):
        with pytest.raises(ValueError):
            Band(op(0, 1), NEG_INF, fn(0, 1), lower_closed=True)

    def test_graph_needs_affine_value(self):
        with pytest.raises(ValueError):
            Graph(op(0, 1), POS_INF)


class TestFiber:
    def test_growing_band(self):
        assert fiber(growing_band(), F(1, 2)) == iu("(0,1/2)")

    def test_punctured_line(self):
        assert fiber(punctured_line_family(), 3) == iu("(-inf,-3) (-3,3) (3,inf)")

    def test_empty_family(self):
        assert fiber(Family(), 5) == iu("")

    def test_outside_domain(self):
        assert fiber(growing_band(), 7) == iu("")


class TestBoundedParams:
    def test_growing_band(self):
        assert bounded_params(growing_band()) == iu("(0,1)")

    def test_punctured_family_has_none(self):
        assert bounded_params(punctured_line_family()) == iu("")

    def test_graph_cell_full_domain(self):
        fam = Family((Graph(op(0, 5), fn(2, 1)),))
        assert bounded_params(fam) == param_domain(fam) == iu("(0,5)")

    def test_sampling_consistency(self, rng):
        # symbolic answer matches per-fiber boundedness at >= 100 samples
        checked = 0
        while checked < 120:
            fam = random_family(rng)
            domain = param_domain(fam)
            region = bounded_params(fam)
            for _ in range(8):
                t = F(rng.randint(-150, 150), rng.choice([1, 2, 3]))
                if not domain.contains(t):
                    continue
                assert region.contains(t) == fiber(fam, t).is_bounded
                checked += 1


class TestEndpointFamily:
    def test_growing_band_left(self):
        got = endpoint_family(growing_band(), "left")
        assert got.cells == (Graph(op(0, 1), fn(0, 0)),)

    def test_disjoint_bands(self):
        fam = Family((Band(op(2, 3), fn(1, 0), fn(1, 1)),
                      Band(op(2, 3), fn(0, 0), fn(0, 1))))
        got = endpoint_family(fam, "left")
        assert got.cells == (Graph(op(2, 3), fn(0, 0)),
                             Graph(op(2, 3), fn(1, 0)))

    def test_overlapping_bands_split_at_crossing(self):
        fam = Family((Band(op(F(-1, 2), F(1, 2)), fn(1, 0), fn(1, 1)),
                      Band(op(F(-1, 2), F(1, 2)), fn(0, 0), fn(0, 1))))
        got = endpoint_family(fam, "left")
        assert got.cells == (
            Graph(Interval(F(0), F(1, 2), True, False), fn(0, 0)),
            Graph(op(F(-1, 2), F(0)), fn(1, 0)),
        )

    def test_unbounded_fiber_rejected(self):
        with pytest.raises(UnboundedFiber):
            endpoint_family(punctured_line_family(), "left")

    def test_roundtrip_on_random_families(self, rng):
        for _ in range(40):
            fam = random_bounded_family(rng)
            for side in ("left", "right"):
                ef = endpoint_family(fam, side)
                for _ in range(10):
                    t = F(rng.randint(-120, 120), rng.choice([1, 2, 3, 7]))
                    want = points(endpoints(fiber(fam, t), side))
                    assert fiber(ef, t) == want


class TestUniformBound:
    def test_growing_band(self):
        assert uniform_length_bound(growing_band()) == 1

    def test_drifting_pair(self):
        fam = drifting_pair_family()
        assert uniform_length_bound(fam) == 1
        assert metrics(fiber(fam, 5)).diameter == 12  # diameter still grows

    def test_widening_band(self):
        fam = Family((Band(Interval(F(0), POS_INF), fn(-1, 0), fn(1, 0)),))
        assert uniform_length_bound(fam) == POS_INF

    def test_no_bounded_fibers(self):
        assert uniform_length_bound(punctured_line_family()) == 0

    def test_against_oracle(self, rng):
        for _ in range(60):
            fam = random_bounded_family(rng)
            assert uniform_length_bound(fam) == ulb_oracle(fam)

    def test_chaining_bound(self, rng):
        for _ in range(60):
            fam = random_bounded_family(rng)
            bound = uniform_length_bound(fam)
            chain = sum((sup_width(c) for c in fam.cells
                         if isinstance(c, Band)), F(0))
            assert is_finite(bound) and bound <= chain


class TestMatchEndpoints:
    def test_two_intervals(self):
        fam = Family((Band(op(0, 10), fn(0, 0), fn(0, 1)),
                      Band(op(0, 10), fn(0, 2), fn(0, 4))))
        assert uniform_length_bound(fam) == 2
        assert match_endpoints(fam, 5) == [(0, 1), (2, 4)]

    def test_single_interval(self):
        fam = growing_band()
        assert match_endpoints(fam, F(1, 2)) == [(0, F(1, 2))]

    def test_point_component_pairs_with_itself(self):
        fam = Family((Band(op(0, 10), fn(0, 0), fn(0, 1)),
                      Graph(op(0, 10), fn(0, 5))))
        assert match_endpoints(fam, 3) == [(0, 1), (5, 5)]

    def test_unbounded_fiber_rejected(self):
        with pytest.raises(PreconditionError):
            match_endpoints(punctured_line_family(), 1)

    def test_touching_open_components_detected(self):
        fam = Family((Band(op(0, 10), fn(0, 0), fn(1, 0)),
                      Band(op(0, 10), fn(1, 0), fn(1, 1))))
        with pytest.raises(PairingMismatch):
            match_endpoints(fam, 4)

    def test_isolation_oracle_respects_the_bound(self, rng):
        # shift-isolation on individual fibers never exceeds the uniform bound
        from semilin.errors import NoIsolatingShift
        from semilin.intervals import isolate_interval
        hits = 0
        for _ in range(80):
            fam = random_bounded_family(rng)
            bound = uniform_length_bound(fam)
            for _ in range(6):
                t = F(rng.randint(-120, 120), rng.choice([1, 2]))
                fib = fiber(fam, t)
                if len(fib.parts) < 2 or not fib.is_bounded:
                    continue
                try:
                    got = isolate_interval(fib)
                except NoIsolatingShift:
                    continue
                assert got.single.length <= bound
                hits += 1
        assert hits > 30

    def test_matches_components_on_random_fibers(self, rng):
        checked = 0
        while checked < 60:
            fam = random_bounded_family(rng)
            t = F(rng.randint(-120, 120), rng.choice([1, 2, 3, 7]))
            fib = fiber(fam, t)
            if fib.is_empty:
                continue
            if any(a.hi == b.lo for a, b in zip(fib.parts, fib.parts[1:])):
                continue  # the matching formula cannot see touching comps
            pairs = match_endpoints(fam, t)
            assert pairs == [(p.lo, p.hi) for p in fib.parts]
            checked += 1
