"""Points, hyperplanes and incidence in AG(r, q^2) and PG(r, q^2).

Conventions:

* affine points are length-r tuples of encodings, projective points are
  length-(r+1) tuples normalized so the first nonzero coordinate is 1;
* the hyperplane at infinity has form (1, 0, ..., 0) (equation X_0 = 0);
* the distinguished infinity point is (0, ..., 0, 1);
* hyperplane forms are normalized like points, and a plane avoids the
  distinguished infinity point exactly when its X_r coefficient is
  nonzero, in which case it carries the affine view
  x_r = m_1 x_1 + ... + m_{r-1} x_{r-1} + d.

Spectra are computed exhaustively.  Planes with an affine view are
counted by accumulating, for every point of the multiset and every slope
vector m, the unique intercept d putting the plane through the point;
planes through the infinity point are evaluated directly.  Every
spectrum is checked on the spot against the double-counting identity
sum_H |H ^ S| = |S| * (q^(2r) - 1)/(q^2 - 1).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Iterable, Iterator

import numpy as np

from . import _kernels
from .errors import BudgetExceeded, InvalidParameter
from .field import FieldTower

DEFAULT_BUDGET = 10 ** 9


def num_points(Q: int, r: int, mode: str) -> int:
    if mode == "affine":
        return Q ** r
    return (Q ** (r + 1) - 1) // (Q - 1)


def num_hyperplanes(Q: int, r: int, mode: str) -> int:
    if mode == "affine":
        return (Q ** (r + 1) - 1) // (Q - 1) - 1
    return (Q ** (r + 1) - 1) // (Q - 1)


def hyperplanes_through_point(Q: int, r: int) -> int:
    """Projective hyperplanes through any fixed point of PG(r, Q)."""
    return (Q ** r - 1) // (Q - 1)


def normalize_projective(tower: FieldTower, coords: Iterable[int]) -> tuple[int, ...]:
    coords = tuple(int(c) for c in coords)
    lead = next((c for c in coords if c != 0), None)
    if lead is None:
        raise InvalidParameter("projective coordinates cannot all be zero")
    if lead == 1:
        return coords
    inv = int(tower.inv_table[lead])
    mul = tower.mul_table
    return tuple(int(mul[inv, c]) for c in coords)


def infinity_point(r: int) -> tuple[int, ...]:
    return (0,) * r + (1,)


def _normalized_tuples(Q: int, length: int) -> Iterator[tuple[int, ...]]:
    """All first-nonzero-is-1 tuples of a given length, in lexicographic order."""
    for lead in range(length - 1, -1, -1):
        head = (0,) * lead + (1,)
        for suffix in itertools.product(range(Q), repeat=length - 1 - lead):
            yield head + suffix


def enumerate_points(tower: FieldTower, r: int, mode: str) -> Iterator[tuple[int, ...]]:
    """Points of AG/PG(r, q^2) in lexicographic encoding order."""
    if r < 2:
        raise InvalidParameter("ambient dimension r must be >= 2")
    Q = tower.order
    if mode == "affine":
        yield from itertools.product(range(Q), repeat=r)
    elif mode == "projective":
        yield from _normalized_tuples(Q, r + 1)
    else:
        raise InvalidParameter(f"unknown mode {mode!r}")


class Hyperplane:
    """A hyperplane of PG(r, q^2), held as a normalized coefficient form."""

    __slots__ = ("tower", "form")

    def __init__(self, tower: FieldTower, form: Iterable[int]):
        self.tower = tower
        self.form = normalize_projective(tower, form)

    @property
    def r(self) -> int:
        return len(self.form) - 1

    @property
    def is_infinity(self) -> bool:
        return self.form[0] == 1 and all(c == 0 for c in self.form[1:])

    @property
    def through_infinity_point(self) -> bool:
        return self.form[-1] == 0

    @property
    def affine_view(self) -> tuple[tuple[int, ...], int] | None:
        """(m, d) with the plane written as x_r = m.x + d, if it has one."""
        if self.form[-1] == 0:
            return None
        t = self.tower
        scale = int(t.neg_table[t.inv_table[self.form[-1]]])  # -1/a_r
        mul = t.mul_table
        m = tuple(int(mul[scale, c]) for c in self.form[1:-1])
        d = int(mul[scale, self.form[0]])
        return m, d

    def contains(self, point: tuple[int, ...]) -> bool:
        return incidence(self.tower, point, self)

    def __eq__(self, other):
        return (
            isinstance(other, Hyperplane)
            and other.tower is self.tower
            and other.form == self.form
        )

    def __hash__(self):
        return hash(self.form)

    def __repr__(self):
        return f"Hyperplane{self.form}"


def form_from_view(tower: FieldTower, m: tuple[int, ...], d: int) -> tuple[int, ...]:
    """Normalized form of the plane x_r = m.x + d."""
    neg = tower.neg_table
    raw = (int(neg[d]),) + tuple(int(neg[c]) for c in m) + (1,)
    return normalize_projective(tower, raw)


def enumerate_hyperplanes(tower: FieldTower, r: int, mode: str) -> Iterator[Hyperplane]:
    """Hyperplane stream: lexicographic on normalized forms.

    In projective mode the hyperplane at infinity is emitted first and
    then skipped at its lexicographic slot; affine mode omits it.
    """
    if r < 2:
        raise InvalidParameter("ambient dimension r must be >= 2")
    Q = tower.order
    pi_inf = (1,) + (0,) * r
    if mode == "projective":
        yield Hyperplane(tower, pi_inf)
    elif mode != "affine":
        raise InvalidParameter(f"unknown mode {mode!r}")
    for form in _normalized_tuples(Q, r + 1):
        if form == pi_inf:
            continue
        yield Hyperplane(tower, form)


def incidence(tower: FieldTower, point: tuple[int, ...], hyperplane) -> bool:
    """Point-on-hyperplane test; affine points are projectivized first."""
    form = hyperplane.form if isinstance(hyperplane, Hyperplane) else tuple(hyperplane)
    if len(point) == len(form) - 1:
        point = (1,) + tuple(point)
    if len(point) != len(form):
        raise InvalidParameter("point and hyperplane have different ambients")
    add, mul = tower.add_table, tower.mul_table
    acc = 0
    for c, x in zip(form, point):
        if c and x:
            acc = int(add[acc, mul[c, x]])
    return acc == 0


class PointMultiset:
    """A multiset of projective points with positive multiplicities."""

    def __init__(self, tower: FieldTower, r: int, support: dict[tuple[int, ...], int]):
        if r < 2:
            raise InvalidParameter("ambient dimension r must be >= 2")
        self.tower = tower
        self.r = r
        clean: dict[tuple[int, ...], int] = {}
        for pt, mult in support.items():
            if mult < 1:
                raise InvalidParameter("multiplicities must be >= 1")
            if len(pt) != r + 1:
                raise InvalidParameter("support points must have r+1 coordinates")
            clean[normalize_projective(tower, pt)] = int(mult)
        self.support = clean

    @classmethod
    def from_affine(
        cls, tower: FieldTower, r: int, points: Iterable[tuple[int, ...]]
    ) -> "PointMultiset":
        support = {(1,) + tuple(int(c) for c in p): 1 for p in points}
        return cls(tower, r, support)

    @property
    def size(self) -> int:
        return sum(self.support.values())

    def sorted_items(self) -> list[tuple[tuple[int, ...], int]]:
        return sorted(self.support.items())

    @property
    def infinity_multiplicity(self) -> int:
        return sum(m for pt, m in self.support.items() if pt[0] == 0)

    @property
    def p_infinity_multiplicity(self) -> int:
        return self.support.get(infinity_point(self.r), 0)

    @property
    def is_affine(self) -> bool:
        return self.infinity_multiplicity == 0

    def with_point(self, point: tuple[int, ...], mult: int) -> "PointMultiset":
        """A copy with extra multiplicity on one projective point."""
        support = dict(self.support)
        key = normalize_projective(self.tower, point)
        support[key] = support.get(key, 0) + mult
        return PointMultiset(self.tower, self.r, support)

    def affine_arrays(self) -> tuple[np.ndarray, np.ndarray]:
        """(n, r) coordinates and (n,) multiplicities of the affine part."""
        pts = []
        mult = []
        for pt, m in self.sorted_items():
            if pt[0] != 0:
                pts.append(pt[1:])
                mult.append(m)
        if not pts:
            return np.zeros((0, self.r), dtype=np.int16), np.zeros(0, dtype=np.int64)
        return np.array(pts, dtype=np.int16), np.array(mult, dtype=np.int64)

    def projective_arrays(self) -> tuple[np.ndarray, np.ndarray]:
        items = self.sorted_items()
        pts = np.array([pt for pt, _ in items], dtype=np.int16)
        mult = np.array([m for _, m in items], dtype=np.int64)
        return pts, mult

    def __len__(self):
        return len(self.support)

    def __contains__(self, point):
        if len(point) == self.r:
            point = (1,) + tuple(point)
        return normalize_projective(self.tower, point) in self.support

    def __repr__(self):
        return f"PointMultiset({len(self.support)} points, size {self.size}, r={self.r})"


@dataclass(frozen=True)
class Spectrum:
    """Histogram of hyperplane intersection sizes."""

    mode: str
    histogram: dict[int, int]

    @property
    def total(self) -> int:
        return sum(self.histogram.values())

    @property
    def characters(self) -> tuple[int, ...]:
        return tuple(sorted(s for s, c in self.histogram.items() if c))

    def min_size(self) -> int:
        return min(s for s, c in self.histogram.items() if c)

    def as_json_dict(self) -> dict:
        return {
            "mode": self.mode,
            "histogram": {str(s): c for s, c in sorted(self.histogram.items()) if c},
        }


def _pinf_forms(tower: FieldTower, r: int) -> np.ndarray:
    """Forms of affine hyperplanes through the infinity point, lex order."""
    Q = tower.order
    forms = [
        f + (0,)
        for f in _normalized_tuples(Q, r)
        if f != (1,) + (0,) * (r - 1)  # that one is the infinity hyperplane
    ]
    if not forms:
        return np.zeros((0, r + 1), dtype=np.int16)
    return np.array(forms, dtype=np.int16)


def spectrum(S: PointMultiset, mode: str = "affine", budget: int = DEFAULT_BUDGET) -> Spectrum:
    """Exhaustive intersection-size histogram of S with all hyperplanes."""
    if mode not in ("affine", "projective"):
        raise InvalidParameter(f"unknown mode {mode!r}")
    t = S.tower
    Q = t.order
    r = S.r
    total = S.size
    hist: dict[int, int] = {}

    generic_infinity = any(
        pt[0] == 0 and pt != infinity_point(r) for pt in S.support
    )
    if generic_infinity:
        # Points at infinity other than (0,...,0,1): evaluate every form.
        pts, mult = S.projective_arrays()
        nforms = num_hyperplanes(Q, r, "projective")
        ops = nforms * len(pts) * (r + 1)
        if ops > budget:
            raise BudgetExceeded("generic spectrum", ops, budget)
        forms = np.array(list(_normalized_tuples(Q, r + 1)), dtype=np.int16)
        counts = _kernels.form_counts(pts, mult, forms, t.mul_table, t.add_table)
        for c in counts:
            hist[int(c)] = hist.get(int(c), 0) + 1
        pi_inf_count = S.infinity_multiplicity
    else:
        pts, mult = S.affine_arrays()
        j = S.p_infinity_multiplicity
        ops = Q ** (r - 1) * max(len(pts), 1) * r
        if ops > budget:
            raise BudgetExceeded("affine-view spectrum", ops, budget)
        if len(pts):
            view_hist = _kernels.affine_view_hist(
                pts, mult, Q, t.mul_table, t.add_table, t.neg_table
            )
        else:
            view_hist = np.zeros(1, dtype=np.int64)
            view_hist[0] = Q ** r
        for s, c in enumerate(view_hist.tolist()):
            if c:
                hist[s] = hist.get(s, 0) + int(c)
        pforms = _pinf_forms(t, r)
        if len(pts):
            ppts = np.hstack([np.ones((len(pts), 1), dtype=np.int16), pts])
            pcounts = _kernels.form_counts(ppts, mult, pforms, t.mul_table, t.add_table)
        else:
            pcounts = np.zeros(len(pforms), dtype=np.int64)
        for c in pcounts.tolist():
            s = int(c) + j  # these planes all pass through the infinity point
            hist[s] = hist.get(s, 0) + 1
        pi_inf_count = j
        hist[pi_inf_count] = hist.get(pi_inf_count, 0) + 1

    # double-counting identity over the projective spectrum
    lhs = sum(s * c for s, c in hist.items())
    rhs = total * hyperplanes_through_point(Q, r)
    if lhs != rhs:
        raise AssertionError(
            f"double-counting identity failed: sum s*N = {lhs}, expected {rhs}"
        )
    if sum(hist.values()) != num_hyperplanes(Q, r, "projective"):
        raise AssertionError("spectrum does not cover every hyperplane")

    if mode == "affine":
        hist = dict(hist)
        hist[pi_inf_count] -= 1
        if hist[pi_inf_count] == 0:
            del hist[pi_inf_count]
    return Spectrum(mode, {s: c for s, c in sorted(hist.items())})


@dataclass
class MinimalityReport:
    """Result of the exhaustive minimal-blocking-set check."""

    t: int
    is_intersection_set: bool
    is_minimal: bool
    witnesses: dict[tuple[int, ...], tuple[int, ...]] = field(repr=False, default_factory=dict)

    def as_json_dict(self) -> dict:
        return {
            "t": self.t,
            "is_intersection_set": self.is_intersection_set,
            "is_minimal": self.is_minimal,
            "witnesses": {
                ",".join(map(str, pt)): list(form)
                for pt, form in sorted(self.witnesses.items())
            },
        }


def minimality_report(S: PointMultiset, budget: int = DEFAULT_BUDGET) -> MinimalityReport:
    """Minimum affine character t, and whether every point lies on a t-plane.

    Witness search order: planes through the infinity point in lex form
    order first, then planes x_r = m.x + d ordered by (m, d); each point
    keeps its first witness.
    """
    if not S.support:
        raise InvalidParameter("empty multiset")
    if not S.is_affine:
        raise InvalidParameter("minimality is defined for affine point sets")
    if any(m != 1 for m in S.support.values()):
        raise InvalidParameter("minimality is defined for sets (multiplicity 1)")
    t_ = S.tower
    Q = t_.order
    r = S.r
    pts, mult = S.affine_arrays()
    n = len(pts)

    ops = 3 * Q ** (r - 1) * n * r
    if ops > budget:
        raise BudgetExceeded("minimality report", ops, budget)

    view_hist = _kernels.affine_view_hist(pts, mult, Q, t_.mul_table, t_.add_table, t_.neg_table)
    pforms = _pinf_forms(t_, r)
    ppts = np.hstack([np.ones((n, 1), dtype=np.int16), pts])
    pcounts = _kernels.form_counts(ppts, mult, pforms, t_.mul_table, t_.add_table)

    t_min = min(
        min((s for s, c in enumerate(view_hist.tolist()) if c), default=0),
        min((int(c) for c in pcounts.tolist()), default=Q ** r),
    )

    witnesses: dict[tuple[int, ...], tuple[int, ...]] = {}
    covered = np.zeros(n, dtype=bool)
    point_list = [tuple(int(c) for c in row) for row in pts.tolist()]

    if t_min > 0:
        for f_idx in np.nonzero(pcounts == t_min)[0].tolist():
            form = tuple(int(c) for c in pforms[f_idx].tolist())
            vals = np.zeros(n, dtype=np.intp)
            for i in range(r + 1):
                c = int(form[i])
                if c:
                    vals = t_.add_table[
                        vals, t_.mul_table[c, ppts[:, i].astype(np.intp)].astype(np.intp)
                    ].astype(np.intp)
            for p_idx in np.nonzero((vals == 0) & ~covered)[0].tolist():
                covered[p_idx] = True
                witnesses[point_list[p_idx]] = form
        for m in itertools.product(range(Q), repeat=r - 1):
            m_arr = np.array(m, dtype=np.int16)
            dvals = _kernels.affine_dvals(pts, m_arr, t_.mul_table, t_.add_table, t_.neg_table)
            per_d = np.bincount(dvals.astype(np.intp), minlength=Q)
            hit = (per_d[dvals.astype(np.intp)] == t_min) & ~covered
            for p_idx in np.nonzero(hit)[0].tolist():
                covered[p_idx] = True
                witnesses[point_list[p_idx]] = form_from_view(t_, m, int(dvals[p_idx]))

    return MinimalityReport(
        t=t_min,
        is_intersection_set=t_min > 0,
        is_minimal=bool(covered.all()) and t_min > 0,
        witnesses=witnesses,
    )
