"""Definable families of one-dimensional fibers over a parameter axis.

A family is a finite list of cylindrical cells: bands between affine
boundaries and graphs of affine functions, over interval domains in the
parameter t.  Fiber structure is piecewise constant in t, so endpoint
families and the uniform component-length bound are computed exactly by
refining the axis at boundary crossings and domain endpoints.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Tuple, Union

from . import intervals as iv
from .errors import PairingMismatch, PreconditionError, UnboundedFiber
from .intervals import Interval, IntervalUnion
from .rat import Ext, NEG_INF, POS_INF, Rat, as_rat, is_finite


@dataclass(frozen=True)
class AffineFn:
    """t -> slope*t + intercept."""

    slope: Rat
    intercept: Rat

    def __post_init__(self):
        object.__setattr__(self, "slope", as_rat(self.slope))
        object.__setattr__(self, "intercept", as_rat(self.intercept))

    def __call__(self, t: Rat) -> Rat:
        return self.slope * t + self.intercept

    def key(self):
        return (self.slope, self.intercept)


Boundary = Union[AffineFn, float]  # float only for the infinities


def _as_boundary(v) -> Boundary:
    if isinstance(v, AffineFn):
        return v
    if isinstance(v, float) and (v == NEG_INF or v == POS_INF):
        return v
    raise ValueError(f"not a boundary: {v!r}")


def _bval(b: Boundary, t: Rat) -> Ext:
    return b(t) if isinstance(b, AffineFn) else b


@dataclass(frozen=True)
class Band:
    """Fiber slice lower(t) < x < upper(t) with per-side closure flags."""

    domain: Interval
    lower: Boundary
    upper: Boundary
    lower_closed: bool = False
    upper_closed: bool = False

    def __post_init__(self):
        object.__setattr__(self, "lower", _as_boundary(self.lower))
        object.__setattr__(self, "upper", _as_boundary(self.upper))
        if self.lower == POS_INF or self.upper == NEG_INF:
            raise ValueError("band boundaries out of order")
        if self.lower_closed and not isinstance(self.lower, AffineFn):
            raise ValueError("closed side needs a finite boundary")
        if self.upper_closed and not isinstance(self.upper, AffineFn):
            raise ValueError("closed side needs a finite boundary")
        self._check_width()

    def _check_width(self):
        # lower < upper must hold on the open interior of the domain
        if not isinstance(self.lower, AffineFn) or not isinstance(self.upper, AffineFn):
            return
        d = self.domain
        if d.is_point:
            return
        ds = self.upper.slope - self.lower.slope
        dc = self.upper.intercept - self.lower.intercept
        if ds == 0:
            if dc <= 0:
                raise ValueError("band collapses on its domain")
            return
        root = -dc / ds
        if d.lo < root < d.hi:
            raise ValueError("band boundaries cross inside the domain")
        sample = _sample_interior(d)
        if ds * sample + dc <= 0:
            raise ValueError("band boundaries out of order on the domain")


@dataclass(frozen=True)
class Graph:
    """A single point value(t) in each fiber over the domain."""

    domain: Interval
    value: AffineFn

    def __post_init__(self):
        if not isinstance(self.value, AffineFn):
            raise ValueError("graph value must be an affine function")


FiberCell = Union[Band, Graph]


@dataclass(frozen=True)
class Family:
    """Finite list of cylindrical cells; fibers normalize on evaluation."""

    cells: Tuple[FiberCell, ...] = ()


def _sample_interior(d: Interval) -> Rat:
    lo_fin, hi_fin = is_finite(d.lo), is_finite(d.hi)
    if lo_fin and hi_fin:
        return (d.lo + d.hi) / 2
    if lo_fin:
        return d.lo + 1
    if hi_fin:
        return d.hi - 1
    return Fraction(0)


def param_domain(family: Family) -> IntervalUnion:
    """Union of the cells' parameter domains."""
    return iv.normalize(c.domain for c in family.cells)


def fiber(family: Family, t) -> IntervalUnion:
    """Evaluate the fiber at t, normalized."""
    t = as_rat(t)
    parts: List[Interval] = []
    for c in family.cells:
        if not c.domain.contains(t):
            continue
        if isinstance(c, Graph):
            parts.append(Interval.point(c.value(t)))
            continue
        lo, hi = _bval(c.lower, t), _bval(c.upper, t)
        if lo > hi:
            continue
        if lo == hi:
            if c.lower_closed and c.upper_closed:
                parts.append(Interval.point(lo))
            continue
        parts.append(Interval(lo, hi, c.lower_closed, c.upper_closed))
    return iv.normalize(parts)


def bounded_params(family: Family) -> IntervalUnion:
    """Parameters in the family's domain whose fiber is bounded.

    A fiber is unbounded exactly when some active band has an infinite
    boundary, so the answer is a difference of domain unions.
    """
    ray_domains = [c.domain for c in family.cells
                   if isinstance(c, Band)
                   and not (isinstance(c.lower, AffineFn)
                            and isinstance(c.upper, AffineFn))]
    return iv.difference(param_domain(family), iv.normalize(ray_domains))


def _criticals(family: Family) -> List[Rat]:
    out = set()
    entries: List[Tuple[AffineFn, Interval]] = []
    for c in family.cells:
        for e in (c.domain.lo, c.domain.hi):
            if is_finite(e):
                out.add(e)
        if isinstance(c, Graph):
            entries.append((c.value, c.domain))
        else:
            if isinstance(c.lower, AffineFn):
                entries.append((c.lower, c.domain))
            if isinstance(c.upper, AffineFn):
                entries.append((c.upper, c.domain))
    for i in range(len(entries)):
        for j in range(i + 1, len(entries)):
            f, df = entries[i]
            g, dg = entries[j]
            if f.slope == g.slope:
                continue
            t = (g.intercept - f.intercept) / (f.slope - g.slope)
            if df.contains(t) and dg.contains(t):
                out.add(t)
    return sorted(out)


def _pieces(region: IntervalUnion, criticals: List[Rat]) -> List[Interval]:
    pieces: List[Interval] = []
    for comp in region.parts:
        if comp.is_point:
            pieces.append(comp)
            continue
        cuts = [t for t in criticals if comp.lo < t < comp.hi]
        if comp.lo_closed:
            pieces.append(Interval.point(comp.lo))
        edges = [comp.lo] + cuts + [comp.hi]
        for a, b in zip(edges, edges[1:]):
            pieces.append(Interval(a, b))
        for t in cuts:
            pieces.append(Interval.point(t))
        if comp.hi_closed:
            pieces.append(Interval.point(comp.hi))
    return pieces


@dataclass(frozen=True)
class _SymComp:
    lo: AffineFn
    hi: AffineFn
    lo_closed: bool
    hi_closed: bool


def _symbolic_components(family: Family, t: Rat) -> List[_SymComp]:
    """Merged fiber components at t, with their boundary functions.

    Valid across any parameter piece that contains t and crosses no
    boundary coincidence or domain endpoint.
    """
    raw: List[_SymComp] = []
    for c in family.cells:
        if not c.domain.contains(t):
            continue
        if isinstance(c, Graph):
            raw.append(_SymComp(c.value, c.value, True, True))
            continue
        if not (isinstance(c.lower, AffineFn) and isinstance(c.upper, AffineFn)):
            raise UnboundedFiber(f"fiber at {t} is unbounded")
        lo, hi = c.lower(t), c.upper(t)
        if lo > hi:
            continue
        if lo == hi and not (c.lower_closed and c.upper_closed):
            continue
        raw.append(_SymComp(c.lower, c.upper, c.lower_closed, c.upper_closed))
    raw.sort(key=lambda s: (s.lo(t), not s.lo_closed) + s.lo.key())
    merged: List[_SymComp] = []
    for item in raw:
        if merged:
            a = merged[-1]
            a_hi, b_lo = a.hi(t), item.lo(t)
            if b_lo < a_hi or (b_lo == a_hi and (a.hi_closed or item.lo_closed)):
                hi_a, hi_b = a.hi(t), item.hi(t)
                if (hi_b, item.hi_closed) > (hi_a, a.hi_closed):
                    pick, closed = item.hi, item.hi_closed
                elif (hi_b, item.hi_closed) < (hi_a, a.hi_closed):
                    pick, closed = a.hi, a.hi_closed
                else:
                    pick = min(a.hi, item.hi, key=AffineFn.key)
                    closed = a.hi_closed
                merged[-1] = _SymComp(a.lo, pick, a.lo_closed, closed)
                continue
        merged.append(item)
    return merged


def endpoint_family(family: Family, side: str) -> Family:
    """The family of left (resp. right) fiber endpoints, as graph cells.

    Requires every fiber on the domain to be bounded.
    """
    if side not in ("left", "right"):
        raise ValueError("side must be 'left' or 'right'")
    domain = param_domain(family)
    if bounded_params(family) != domain:
        raise UnboundedFiber("endpoint family needs all fibers bounded")
    by_fn: Dict[AffineFn, List[Interval]] = {}
    for piece in _pieces(domain, _criticals(family)):
        t = piece.lo if piece.is_point else _sample_interior(piece)
        for comp in _symbolic_components(family, t):
            fn = comp.lo if side == "left" else comp.hi
            by_fn.setdefault(fn, []).append(piece)
    cells = []
    for fn in sorted(by_fn, key=AffineFn.key):
        for part in iv.normalize(by_fn[fn]).parts:
            cells.append(Graph(part, fn))
    return Family(tuple(cells))


def _affine_sup(slope: Rat, intercept: Rat, piece: Interval) -> Ext:
    if piece.is_point:
        return slope * piece.lo + intercept
    vals: List[Ext] = []
    if is_finite(piece.lo):
        vals.append(slope * piece.lo + intercept)
    elif slope < 0:
        return POS_INF
    if is_finite(piece.hi):
        vals.append(slope * piece.hi + intercept)
    elif slope > 0:
        return POS_INF
    if slope == 0:
        vals.append(intercept)
    return max(vals)


def uniform_length_bound(family: Family) -> Ext:
    """Exact supremum of component lengths over the bounded fibers.

    The supremum is taken at refinement critical points and domain
    limits; it is infinite when the bounded fibers have components of
    unbounded length.
    """
    region = bounded_params(family)
    best: Ext = Fraction(0)
    for piece in _pieces(region, _criticals(family)):
        t = piece.lo if piece.is_point else _sample_interior(piece)
        for comp in _symbolic_components(family, t):
            sup = _affine_sup(comp.hi.slope - comp.lo.slope,
                              comp.hi.intercept - comp.lo.intercept, piece)
            if sup > best:
                best = sup
    return best


def match_endpoints(family: Family, t, bound=None) -> List[Tuple[Rat, Rat]]:
    """Pair each left fiber endpoint a with min of the right endpoints in
    [a, a+K], K the uniform length bound; cross-checked against the true
    component list."""
    t = as_rat(t)
    fib = fiber(family, t)
    if not fib.is_bounded:
        raise PreconditionError("match_endpoints needs a bounded fiber")
    k = as_rat(bound) if bound is not None else uniform_length_bound(family)
    if not is_finite(k):
        raise PreconditionError("no finite uniform length bound")
    rights = iv.endpoints(fib, "right")
    pairs: List[Tuple[Rat, Rat]] = []
    for a in iv.endpoints(fib, "left"):
        window = [b for b in rights if a <= b <= a + k]
        if not window:
            raise PairingMismatch(f"no right endpoint within {k} of {a}")
        pairs.append((a, min(window)))
    truth = [(p.lo, p.hi) for p in fib.parts]
    if pairs != truth:
        raise PairingMismatch(
            "formula pairing disagrees with the component list "
            "(adjacent open components share an endpoint)")
    return pairs
