import itertools
from fractions import Fraction

import pytest

from divalg.errors import (
    DimensionMismatch,
    EmptyPolyhedron,
    NotPointed,
    UnboundedPolyhedron,
)
from divalg.lattice import (
    Cone,
    HalfSpace,
    RationalPolyhedron,
    cone_contains,
    cone_inequalities,
    dilate,
    dot,
    hilbert_basis,
    lattice_points,
    polyhedron_from_inequalities,
    recession_cone,
    vertices,
)


def brute_points(P, lo=-30, hi=30):
    # independent oracle: plain box scan with inline constraint checks
    rows = [(hs.normal, -hs.offset) for hs in P.constraints]
    out = []
    for pt in itertools.product(range(lo, hi + 1), repeat=P.dim):
        if all(sum(c * x for c, x in zip(coeffs, pt)) >= rhs for coeffs, rhs in rows):
            out.append(pt)
    return sorted(out)


def unit_square():
    return polyhedron_from_inequalities(
        [((1, 0), 0), ((0, 1), 0), ((-1, 0), -1), ((0, -1), -1)]
    )


def simplex2(scale=1):
    return polyhedron_from_inequalities(
        [((1, 0), 0), ((0, 1), 0), ((-1, -1), -scale)]
    )


def skewed_triangle():
    return polyhedron_from_inequalities(
        [((1, 0), -1), ((-2, 1), -4), ((1, -3), -8)]
    )


def rational_segment():
    # the segment [0, 3/2]
    return RationalPolyhedron(
        1, (HalfSpace((1,), Fraction(0)), HalfSpace((-1,), Fraction(3, 2)))
    )


class TestLatticePoints:
    def test_unit_square(self):
        pts = lattice_points(unit_square())
        assert pts == [(0, 0), (0, 1), (1, 0), (1, 1)]

    def test_dilated_square_counts(self):
        assert len(lattice_points(dilate(unit_square(), 2))) == 9
        assert len(lattice_points(dilate(unit_square(), 3))) == 16

    def test_simplex_count_matches_oracle(self):
        P = simplex2(5)
        pts = lattice_points(P)
        assert len(pts) == 21  # (m+1)(m+2)/2 with m = 5
        assert pts == brute_points(P)

    def test_unbounded_raises(self):
        P = polyhedron_from_inequalities([((1,), 1)])
        with pytest.raises(UnboundedPolyhedron):
            lattice_points(P)

    def test_empty_is_empty_list(self):
        P = polyhedron_from_inequalities([((1,), 2), ((-1,), 0)])
        assert P.is_empty()
        assert lattice_points(P) == []

    @pytest.mark.parametrize(
        "factory",
        [unit_square, lambda: simplex2(4), skewed_triangle, rational_segment],
    )
    def test_projection_path_matches_boxscan(self, factory):
        P = factory()
        assert lattice_points(P, method="project") == lattice_points(P)
        assert lattice_points(P) == brute_points(P)


class TestDilate:
    def test_rational_segment_doubles(self):
        seg = rational_segment()
        doubled = dilate(seg, 2)
        assert lattice_points(doubled) == [(0,), (1,), (2,), (3,)]

    def test_zero_dilation_collapses(self):
        assert lattice_points(dilate(unit_square(), 0)) == [(0, 0)]

    def test_negative_factor_rejected(self):
        with pytest.raises(ValueError):
            dilate(unit_square(), -1)

    def test_normals_unchanged(self):
        P = dilate(skewed_triangle(), Fraction(7, 2))
        assert [hs.normal for hs in P.constraints] == [
            hs.normal for hs in skewed_triangle().constraints
        ]


class TestRecessionCone:
    def test_bounded_gives_zero_cone(self):
        assert recession_cone(unit_square()).generators == ()

    def test_wedge(self):
        P = polyhedron_from_inequalities([((0, 1), 0), ((-1, 1), 0)])
        cone = recession_cone(P)
        assert cone.generators == ((-1, 0), (1, 1))
        # every generator satisfies the homogenized constraints
        for g in cone.generators:
            assert g[1] >= 0 and -g[0] + g[1] >= 0

    def test_halfline(self):
        P = polyhedron_from_inequalities([((1,), 1)])
        assert recession_cone(P).generators == ((1,),)

    def test_empty_raises(self):
        P = polyhedron_from_inequalities([((1,), 2), ((-1,), 0)])
        with pytest.raises(EmptyPolyhedron):
            recession_cone(P)

    @pytest.mark.parametrize("m", [1, 2, 5, Fraction(5, 2)])
    def test_invariant_under_dilation(self, m):
        for factory in (unit_square, skewed_triangle):
            P = factory()
            assert recession_cone(dilate(P, m)) == recession_cone(P)


def semigroup_member(point, cone):
    ineqs, eqs = cone_inequalities(cone)
    return all(dot(h, point) >= 0 for h in ineqs) and all(
        dot(e, point) == 0 for e in eqs
    )


def brute_hilbert(cone, degree_cap):
    # oracle: enumerate semigroup points up to a first-coordinate cap, then
    # strip every point that splits as a sum of two nonzero semigroup points
    ineqs, eqs = cone_inequalities(cone)
    box = polyhedron_from_inequalities(
        [(h, 0) for h in ineqs]
        + [(e, 0) for e in eqs]
        + [(tuple(-x for x in e), 0) for e in eqs]
        + [((-1,) + (0,) * (cone.dim - 1), -degree_cap)]
    )
    pts = [p for p in lattice_points(box) if any(p)]
    basis = []
    for p in pts:
        reducible = any(
            q != p
            and any(a - b for a, b in zip(p, q))
            and semigroup_member(tuple(a - b for a, b in zip(p, q)), cone)
            for q in pts
        )
        if not reducible:
            basis.append(p)
    return sorted(basis)


class TestHilbertBasis:
    def test_smooth_cone(self):
        result = hilbert_basis(Cone(2, ((1, 0), (0, 1))))
        assert result.elements == ((0, 1), (1, 0))
        assert result.max_degree == 1

    def test_width_two_cone(self):
        result = hilbert_basis(Cone(2, ((1, 0), (1, 2))))
        assert result.elements == ((1, 0), (1, 1), (1, 2))

    def test_width_three_cone(self):
        result = hilbert_basis(Cone(2, ((1, 0), (1, 3))))
        assert result.elements == ((1, 0), (1, 1), (1, 2), (1, 3))

    def test_rational_segment_cone(self):
        result = hilbert_basis(Cone(2, ((1, 0), (2, 3))))
        assert result.elements == ((1, 0), (1, 1), (2, 3))
        assert result.max_degree == 2

    @pytest.mark.parametrize(
        "gens", [((1, 0), (1, 2)), ((1, 0), (2, 3)), ((1, 0), (1, 3))]
    )
    def test_matches_pairwise_subtraction_oracle(self, gens):
        cone = Cone(2, gens)
        result = hilbert_basis(cone)
        cap = 2 * max(result.max_degree, 1)
        oracle = brute_hilbert(cone, cap)
        assert [e for e in result.elements if e[0] <= cap] == oracle

    @pytest.mark.parametrize("gens", [((1, 0), (1, 2)), ((1, 0), (2, 3))])
    def test_irreducibility_and_coverage(self, gens):
        cone = Cone(2, gens)
        result = hilbert_basis(cone)
        elements = set(result.elements)
        # no element is the sum of two nonzero semigroup elements
        for e in elements:
            for f in elements:
                diff = tuple(a - b for a, b in zip(e, f))
                if any(diff):
                    assert not semigroup_member(diff, cone), (e, f)
        # every point of degree <= 2 * max_degree decomposes over the basis
        cap = 2 * result.max_degree
        ineqs, eqs = cone_inequalities(cone)
        box = polyhedron_from_inequalities(
            [(h, 0) for h in ineqs] + [((-1, 0), -cap)]
        )
        basis = sorted(elements)

        def decomposes(p):
            if not any(p):
                return True
            for b in basis:
                q = tuple(a - x for a, x in zip(p, b))
                if all(
                    dot(h, q) >= 0 for h in ineqs
                ) and decomposes(q):
                    return True
            return False

        for p in lattice_points(box):
            assert decomposes(p)

    def test_not_pointed_raises(self):
        with pytest.raises(NotPointed):
            hilbert_basis(Cone(2, ((1, 0), (-1, 0), (0, 1))))


class TestConeContains:
    def test_reflexive(self):
        c = Cone(2, ((1, 0), (1, 2)))
        assert cone_contains(c, c)

    def test_interior_ray(self):
        assert cone_contains(Cone(2, ((1, 0), (0, 1))), Cone(2, ((1, 1),)))

    def test_outside_ray(self):
        assert not cone_contains(Cone(2, ((1, 0), (1, 2))), Cone(2, ((0, 1),)))

    def test_dimension_mismatch(self):
        with pytest.raises(DimensionMismatch):
            cone_contains(Cone(2, ((1, 0),)), Cone(3, ((1, 0, 0),)))


class TestPolyhedronInvariants:
    @pytest.mark.parametrize("factory", [unit_square, lambda: simplex2(1)])
    def test_superadditivity(self, factory):
        P = factory()
        cache = {m: set(lattice_points(dilate(P, m))) for m in range(1, 13)}
        for a in range(1, 7):
            for b in range(1, 7):
                sums = {
                    tuple(x + y for x, y in zip(u, v))
                    for u in cache[a]
                    for v in cache[b]
                }
                assert sums <= cache[a + b]

    @pytest.mark.parametrize(
        "factory,n",
        [
            (unit_square, 2),
            (lambda: simplex2(1), 2),
            # lattice triangle with vertices (0,0), (3,0), (0,2)
            (
                lambda: polyhedron_from_inequalities(
                    [((1, 0), 0), ((0, 1), 0), ((-2, -3), -6)]
                ),
                2,
            ),
        ],
    )
    def test_ehrhart_polynomiality(self, factory, n):
        P = factory()
        counts = {m: len(lattice_points(dilate(P, m))) for m in range(1, n + 7)}
        # fit the degree-n polynomial exactly on m = 1..n+1 (local solver)
        size = n + 1
        matrix = [[Fraction(m) ** k for k in range(size)] for m in range(1, size + 1)]
        rhs = [Fraction(counts[m]) for m in range(1, size + 1)]
        for col in range(size):
            piv = next(i for i in range(col, size) if matrix[i][col] != 0)
            matrix[col], matrix[piv] = matrix[piv], matrix[col]
            rhs[col], rhs[piv] = rhs[piv], rhs[col]
            inv = 1 / matrix[col][col]
            matrix[col] = [x * inv for x in matrix[col]]
            rhs[col] *= inv
            for i in range(size):
                if i != col and matrix[i][col] != 0:
                    f = matrix[i][col]
                    matrix[i] = [a - f * b for a, b in zip(matrix[i], matrix[col])]
                    rhs[i] -= f * rhs[col]
        coeffs = rhs
        for m in range(n + 2, n + 7):
            value = sum(c * Fraction(m) ** k for k, c in enumerate(coeffs))
            assert value == counts[m]

    def test_cube_ehrhart(self):
        cube = polyhedron_from_inequalities(
            [
                ((1, 0, 0), 0),
                ((0, 1, 0), 0),
                ((0, 0, 1), 0),
                ((-1, 0, 0), -1),
                ((0, -1, 0), -1),
                ((0, 0, -1), -1),
            ]
        )
        for m in range(1, 7):
            assert len(lattice_points(dilate(cube, m))) == (m + 1) ** 3

    def test_vertices_of_square(self):
        verts = vertices(unit_square())
        assert verts == [
            (Fraction(0), Fraction(0)),
            (Fraction(0), Fraction(1)),
            (Fraction(1), Fraction(0)),
            (Fraction(1), Fraction(1)),
        ]

    def test_bounded_and_empty_queries(self):
        assert unit_square().is_bounded()
        assert not polyhedron_from_inequalities([((1,), 0)]).is_bounded()
        assert not unit_square().is_empty()


class TestHalfSpace:
    def test_normalizes_to_primitive(self):
        hs = HalfSpace((2, 4), Fraction(3))
        assert hs.normal == (1, 2)
        assert hs.offset == Fraction(3, 2)

    def test_zero_normal_rejected(self):
        with pytest.raises(ValueError):
            HalfSpace((0, 0), Fraction(1))

    def test_dimension_mismatch_rejected(self):
        with pytest.raises(DimensionMismatch):
            RationalPolyhedron(2, (HalfSpace((1,), Fraction(0)),))
