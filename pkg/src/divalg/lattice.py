"""Exact rational polyhedra and lattice-point machinery.

Everything here runs on arbitrary-precision integers and `fractions.Fraction`;
no floating point is used anywhere.  Polyhedra are half-space descriptions
with integer normals, cones are primitive ray generators, and all decision
procedures (emptiness, boundedness, feasibility) go through Fourier-Motzkin
elimination, which is exact and entirely adequate at the dimensions (<= 6)
this package targets.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction

from .errors import (
    DimensionMismatch,
    EmptyPolyhedron,
    NotPointed,
    UnboundedPolyhedron,
)

IntVector = tuple  # lattice vectors are plain tuples of ints


# ---------------------------------------------------------------------------
# small vector helpers


def dot(u, v):
    return sum(a * b for a, b in zip(u, v))


def vadd(u, v):
    return tuple(a + b for a, b in zip(u, v))


def vsub(u, v):
    return tuple(a - b for a, b in zip(u, v))


def vneg(u):
    return tuple(-a for a in u)


def vscale(c, u):
    return tuple(c * a for a in u)


def gcd_all(values):
    g = 0
    for v in values:
        g = math.gcd(g, abs(v) if isinstance(v, int) else 0)
    return g


def make_primitive(v):
    """Divide an integer vector by the gcd of its entries (zero vector passes through)."""
    g = gcd_all(v)
    if g <= 1:
        return tuple(v)
    return tuple(a // g for a in v)


def integerize(v):
    """Scale a rational vector to the shortest parallel primitive integer vector."""
    fracs = [Fraction(a) for a in v]
    den = math.lcm(*(f.denominator for f in fracs)) if fracs else 1
    ints = tuple(int(f * den) for f in fracs)
    return make_primitive(ints)


# ---------------------------------------------------------------------------
# exact linear algebra over Fraction


def mat_rank(rows):
    """Rank of a list of rational row vectors."""
    work = [list(map(Fraction, r)) for r in rows]
    ncols = len(work[0]) if work else 0
    rank = 0
    col = 0
    while rank < len(work) and col < ncols:
        piv = next((i for i in range(rank, len(work)) if work[i][col] != 0), None)
        if piv is None:
            col += 1
            continue
        work[rank], work[piv] = work[piv], work[rank]
        prow = work[rank]
        inv = 1 / prow[col]
        work[rank] = [x * inv for x in prow]
        for i in range(len(work)):
            if i != rank and work[i][col] != 0:
                f = work[i][col]
                work[i] = [a - f * b for a, b in zip(work[i], work[rank])]
        rank += 1
        col += 1
    return rank


def nullspace(rows, dim):
    """Primitive integer basis of {x : <row, x> = 0 for every row}."""
    work = [list(map(Fraction, r)) for r in rows]
    pivots = []  # (row index, column)
    rank = 0
    for col in range(dim):
        piv = next((i for i in range(rank, len(work)) if work[i][col] != 0), None)
        if piv is None:
            continue
        work[rank], work[piv] = work[piv], work[rank]
        inv = 1 / work[rank][col]
        work[rank] = [x * inv for x in work[rank]]
        for i in range(len(work)):
            if i != rank and work[i][col] != 0:
                f = work[i][col]
                work[i] = [a - f * b for a, b in zip(work[i], work[rank])]
        pivots.append((rank, col))
        rank += 1
    pivot_cols = {c for _, c in pivots}
    basis = []
    for free in range(dim):
        if free in pivot_cols:
            continue
        vec = [Fraction(0)] * dim
        vec[free] = Fraction(1)
        for r, c in pivots:
            vec[c] = -work[r][free]
        basis.append(integerize(vec))
    return basis


def solve_unique(rows, rhs):
    """Solve a square rational system; returns None unless the solution is unique."""
    n = len(rows)
    work = [list(map(Fraction, r)) + [Fraction(b)] for r, b in zip(rows, rhs)]
    for col in range(n):
        piv = next((i for i in range(col, n) if work[i][col] != 0), None)
        if piv is None:
            return None
        work[col], work[piv] = work[piv], work[col]
        inv = 1 / work[col][col]
        work[col] = [x * inv for x in work[col]]
        for i in range(n):
            if i != col and work[i][col] != 0:
                f = work[i][col]
                work[i] = [a - f * b for a, b in zip(work[i], work[col])]
    return tuple(work[i][n] for i in range(n))


# ---------------------------------------------------------------------------
# Fourier-Motzkin elimination on systems of rows (coeffs, rhs), <coeffs, x> >= rhs


def _normalize_row(coeffs, rhs):
    fracs = [Fraction(c) for c in coeffs]
    rhs = Fraction(rhs)
    den = math.lcm(*(f.denominator for f in fracs), rhs.denominator) if fracs else 1
    ints = [int(f * den) for f in fracs]
    rhs = rhs * den
    g = gcd_all(ints)
    if g > 1:
        ints = [c // g for c in ints]
        rhs = rhs / g
    return tuple(ints), rhs


def _eliminate(rows, k):
    """One Fourier-Motzkin step removing variable k."""
    pos, neg, rest = [], [], []
    for coeffs, rhs in rows:
        c = coeffs[k]
        if c > 0:
            pos.append((coeffs, rhs))
        elif c < 0:
            neg.append((coeffs, rhs))
        else:
            rest.append((coeffs, rhs))
    out = set(rest)
    for (pc, pr) in pos:
        for (nc, nr) in neg:
            a = -nc[k]
            b = pc[k]
            coeffs = tuple(a * x + b * y for x, y in zip(pc, nc))
            out.add(_normalize_row(coeffs, a * pr + b * nr))
    return sorted(out)


def _eliminate_all_but(rows, dim, keep):
    for k in range(dim):
        if k not in keep:
            rows = _eliminate(rows, k)
    return rows


_EMPTY = object()


def _axis_bounds(rows, dim, axis):
    """Exact (lo, hi) bounds of one coordinate; None marks an unbounded side."""
    reduced = _eliminate_all_but(rows, dim, {axis})
    lo = hi = None
    for coeffs, rhs in reduced:
        c = coeffs[axis]
        if c == 0:
            if rhs > 0:
                return _EMPTY
        elif c > 0:
            cand = Fraction(rhs, c)
            lo = cand if lo is None else max(lo, cand)
        else:
            cand = Fraction(rhs, c)
            hi = cand if hi is None else min(hi, cand)
    return lo, hi


def _feasible_point(rows, dim):
    """A rational point satisfying every row, or None if the system is infeasible."""
    systems = [None] * (dim + 1)
    systems[dim] = sorted({_normalize_row(c, r) for c, r in rows})
    for k in range(dim - 1, -1, -1):
        systems[k] = _eliminate(systems[k + 1], k)
    if any(rhs > 0 for coeffs, rhs in systems[0]):
        return None
    point = []
    for k in range(dim):
        lo = hi = None
        for coeffs, rhs in systems[k + 1]:
            c = coeffs[k]
            if c == 0:
                continue
            partial = rhs - sum(coeffs[j] * point[j] for j in range(k))
            if c > 0:
                cand = Fraction(partial, c)
                lo = cand if lo is None else max(lo, cand)
            else:
                cand = Fraction(partial, c)
                hi = cand if hi is None else min(hi, cand)
        if lo is None and hi is None:
            point.append(Fraction(0))
        elif lo is None:
            point.append(min(hi, Fraction(0)))
        elif hi is None:
            point.append(max(lo, Fraction(0)))
        else:
            point.append((lo + hi) / 2)
    return tuple(point)


# ---------------------------------------------------------------------------
# polyhedra


@dataclass(frozen=True)
class HalfSpace:
    """The set <normal, x> >= -offset, with a primitive integer normal."""

    normal: tuple
    offset: Fraction

    def __post_init__(self):
        normal = tuple(int(a) for a in self.normal)
        if not normal or all(a == 0 for a in normal):
            raise ValueError("half-space normal must be a nonzero integer vector")
        offset = Fraction(self.offset)
        g = gcd_all(normal)
        if g > 1:
            normal = tuple(a // g for a in normal)
            offset = offset / g
        object.__setattr__(self, "normal", normal)
        object.__setattr__(self, "offset", offset)

    @property
    def dim(self):
        return len(self.normal)

    def contains(self, point):
        return dot(self.normal, point) >= -self.offset

    def row(self):
        # internal (coeffs, rhs) form: <normal, x> >= -offset
        return self.normal, -self.offset


@dataclass(frozen=True)
class RationalPolyhedron:
    """Intersection of half-spaces in a fixed ambient dimension."""

    dim: int
    constraints: tuple

    def __post_init__(self):
        if self.dim < 1:
            raise ValueError("ambient dimension must be positive")
        constraints = tuple(self.constraints)
        for hs in constraints:
            if hs.dim != self.dim:
                raise DimensionMismatch(
                    f"constraint dimension {hs.dim} != ambient {self.dim}"
                )
        object.__setattr__(self, "constraints", constraints)

    def rows(self):
        return [hs.row() for hs in self.constraints]

    def contains(self, point):
        return all(hs.contains(point) for hs in self.constraints)

    def is_empty(self):
        return _feasible_point(self.rows(), self.dim) is None

    def is_bounded(self):
        if self.is_empty():
            return True
        rows = [(c, 0) for c, _ in self.rows()]
        for axis in range(self.dim):
            bounds = _axis_bounds(rows, self.dim, axis)
            if bounds is _EMPTY:
                return True
            lo, hi = bounds
            if lo is None or hi is None:
                return False
            if lo != 0 or hi != 0:
                return False
        return True


def polyhedron_from_inequalities(pairs):
    """Build a polyhedron from (normal, rhs) pairs meaning <normal, x> >= rhs."""
    pairs = list(pairs)
    if not pairs:
        raise ValueError("need at least one inequality")
    dim = len(pairs[0][0])
    return RationalPolyhedron(
        dim,
        tuple(HalfSpace(tuple(n), -Fraction(r)) for n, r in pairs),
    )


def dilate(P: RationalPolyhedron, m) -> RationalPolyhedron:
    """Scale a polyhedron by a nonnegative rational factor (offsets scale, normals stay)."""
    m = Fraction(m)
    if m < 0:
        raise ValueError("dilation factor must be nonnegative")
    return RationalPolyhedron(
        P.dim,
        tuple(HalfSpace(hs.normal, hs.offset * m) for hs in P.constraints),
    )


def lattice_points(P: RationalPolyhedron, method="boxscan"):
    """All integer points of a bounded polyhedron, sorted lexicographically.

    The default enumerates an exact bounding box and filters by the
    constraints.  ``method="project"`` recursively projects out the last
    coordinate instead; both must agree, and the tests check that they do.
    """
    rows = [_normalize_row(c, r) for c, r in P.rows()]
    if _feasible_point(rows, P.dim) is None:
        return []
    if not P.is_bounded():
        raise UnboundedPolyhedron("polyhedron has a recession direction")
    if method == "boxscan":
        ranges = []
        for axis in range(P.dim):
            bounds = _axis_bounds(rows, P.dim, axis)
            if bounds is _EMPTY:
                return []
            lo, hi = bounds
            ranges.append(range(math.ceil(lo), math.floor(hi) + 1))
        pts = [
            pt
            for pt in itertools.product(*ranges)
            if all(dot(c, pt) >= rhs for c, rhs in rows)
        ]
        return sorted(pts)
    if method == "project":
        return sorted(_project_enumerate(rows, P.dim))
    raise ValueError(f"unknown enumeration method {method!r}")


def _project_enumerate(rows, dim):
    if dim == 1:
        bounds = _axis_bounds(rows, 1, 0)
        if bounds is _EMPTY:
            return []
        lo, hi = bounds
        return [(v,) for v in range(math.ceil(lo), math.floor(hi) + 1)]
    axis = dim - 1
    bounds = _axis_bounds(rows, dim, axis)
    if bounds is _EMPTY:
        return []
    lo, hi = bounds
    out = []
    for v in range(math.ceil(lo), math.floor(hi) + 1):
        sub = []
        infeasible = False
        for coeffs, rhs in rows:
            new_rhs = rhs - coeffs[axis] * v
            head = coeffs[:axis]
            if all(c == 0 for c in head):
                if new_rhs > 0:
                    infeasible = True
                    break
                continue
            sub.append(_normalize_row(head, new_rhs))
        if infeasible:
            continue
        for stem in _project_enumerate(sorted(set(sub)), dim - 1):
            out.append(stem + (v,))
    return out


def vertices(P: RationalPolyhedron):
    """Vertices of a polyhedron as rational tuples (desk-scale subset enumeration)."""
    rows = P.rows()
    found = set()
    for subset in itertools.combinations(rows, P.dim):
        point = solve_unique([c for c, _ in subset], [r for _, r in subset])
        if point is None:
            continue
        if all(dot(c, point) >= r for c, r in rows):
            found.add(point)
    return sorted(found)


# ---------------------------------------------------------------------------
# cones


@dataclass(frozen=True)
class Cone:
    """A rational polyhedral cone given by primitive ray generators."""

    dim: int
    generators: tuple

    def __post_init__(self):
        if self.dim < 1:
            raise ValueError("ambient dimension must be positive")
        gens = []
        for g in self.generators:
            if len(g) != self.dim:
                raise DimensionMismatch("generator dimension mismatch")
            g = make_primitive(tuple(int(a) for a in g))
            if any(a != 0 for a in g):
                gens.append(g)
        object.__setattr__(self, "generators", tuple(sorted(set(gens))))

    def is_zero(self):
        return not self.generators


def recession_cone(P: RationalPolyhedron) -> Cone:
    """Cone of unbounded directions of a nonempty polyhedron, in ray form."""
    if P.is_empty():
        raise EmptyPolyhedron("recession cone of an empty polyhedron")
    normals = [c for c, _ in P.rows()]
    rays, lineality = _rays_from_halfspaces(normals, P.dim)
    gens = list(rays)
    for b in lineality:
        gens.append(b)
        gens.append(vneg(b))
    return Cone(P.dim, tuple(gens))


def _rays_from_halfspaces(normals, dim):
    """Extreme rays (plus a lineality basis) of {x : <n, x> >= 0 for n in normals}."""
    lineality = nullspace(normals, dim)
    rows = list(normals)
    for b in lineality:
        rows.append(b)
        rows.append(vneg(b))
    rays = set()
    for subset in itertools.combinations(rows, dim - 1):
        null = nullspace(list(subset), dim)
        if len(null) != 1:
            continue
        d = null[0]
        if all(dot(n, d) >= 0 for n in rows):
            rays.add(d)
        nd = vneg(d)
        if all(dot(n, nd) >= 0 for n in rows):
            rays.add(nd)
    return sorted(rays), lineality


def cone_inequalities(C: Cone):
    """H-description of a cone: (facet normals, equation normals)."""
    if C.is_zero():
        eqs = tuple(
            tuple(1 if j == i else 0 for j in range(C.dim)) for i in range(C.dim)
        )
        return (), eqs
    gens = list(C.generators)
    eqs = tuple(nullspace(gens, C.dim))
    span_dim = C.dim - len(eqs)
    facets = set()
    for subset in itertools.combinations(gens, span_dim - 1):
        rows = list(subset) + list(eqs)
        null = nullspace(rows, C.dim)
        if len(null) != 1:
            continue
        h = null[0]
        if all(dot(h, g) >= 0 for g in gens):
            facets.add(h)
        nh = vneg(h)
        if all(dot(nh, g) >= 0 for g in gens):
            facets.add(nh)
    return tuple(sorted(facets)), eqs


def cone_member(point, ineqs, eqs):
    return all(dot(h, point) >= 0 for h in ineqs) and all(
        dot(e, point) == 0 for e in eqs
    )


def cone_contains(outer: Cone, inner: Cone) -> bool:
    """True iff every generator of ``inner`` satisfies ``outer``'s facet system."""
    if outer.dim != inner.dim:
        raise DimensionMismatch("cones live in different ambient dimensions")
    ineqs, eqs = cone_inequalities(outer)
    return all(cone_member(g, ineqs, eqs) for g in inner.generators)


def pointed_grading(C: Cone):
    """An integer functional strictly positive on the cone, or None if not pointed."""
    if C.is_zero():
        return tuple(1 if i == 0 else 0 for i in range(C.dim))
    if all(g[0] > 0 for g in C.generators):
        return tuple(1 if i == 0 else 0 for i in range(C.dim))
    rows = [(g, 1) for g in C.generators]
    w = _feasible_point(rows, C.dim)
    if w is None:
        return None
    den = math.lcm(*(f.denominator for f in w))
    return tuple(int(f * den) for f in w)


def is_pointed(C: Cone) -> bool:
    return pointed_grading(C) is not None


@dataclass(frozen=True)
class HilbertBasisResult:
    """Minimal generating set of the semigroup of lattice points of a pointed cone."""

    elements: tuple
    max_degree: int


def hilbert_basis(C: Cone) -> HilbertBasisResult:
    """Minimal semigroup generators via graded enumeration plus irreducibility filtering.

    The grading functional is strictly positive on the cone (first coordinate
    when possible).  Every irreducible element lies below the sum of the
    generator degrees: writing a lattice point over at most dim(C) independent
    rays and subtracting integral ray multiples lands in that box, so
    enumerating up to the bound and stripping reducible points is exact.
    """
    w = pointed_grading(C)
    if w is None:
        raise NotPointed("Hilbert basis requires a pointed cone")
    if C.is_zero():
        return HilbertBasisResult((), 0)
    ineqs, eqs = cone_inequalities(C)
    bound = sum(dot(w, g) for g in C.generators)
    pairs = [(h, 0) for h in ineqs]
    for e in eqs:
        pairs.append((e, 0))
        pairs.append((vneg(e), 0))
    pairs.append((vneg(w), -bound))
    box = polyhedron_from_inequalities(pairs)
    candidates = [p for p in lattice_points(box) if any(a != 0 for a in p)]
    candidates.sort(key=lambda p: (dot(w, p), p))
    basis = []
    for p in candidates:
        reducible = False
        for b in basis:
            q = vsub(p, b)
            if any(a != 0 for a in q) and cone_member(q, ineqs, eqs):
                reducible = True
                break
        if not reducible:
            basis.append(p)
    elements = tuple(sorted(basis))
    max_degree = max((e[0] for e in elements), default=0)
    return HilbertBasisResult(elements, max_degree)
