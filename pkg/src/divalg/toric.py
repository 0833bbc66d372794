"""Section rings and divisorial modules on complete simplicial toric varieties.

A variety is a fan (primitive rays plus simplicial maximal cones); a divisor
is a coefficient per ray.  Degree-m slices are the lattice points of the
section polytope {u : <u, v_ray> >= -a_ray - m*b_ray}, multiplication is
lattice-point addition, and finite generation questions reduce to exact
polyhedral computations (Hilbert bases, recession cones, reachability scans).
"""

from __future__ import annotations

import functools
import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction

from .errors import (
    NoSections,
    NotAmple,
    NotASubmodule,
    NotCartier,
    NotComplete,
)
from .graded import FGCertificate, GeneratorSet, GradedAlgebra, GradedModule
from .lattice import (
    Cone,
    RationalPolyhedron,
    cone_contains,
    dot,
    hilbert_basis,
    integerize,
    lattice_points,
    make_primitive,
    mat_rank,
    nullspace,
    polyhedron_from_inequalities,
    recession_cone,
    solve_unique,
    vadd,
    vertices,
)


@dataclass(frozen=True)
class Fan:
    """A simplicial fan: primitive rays and maximal cones as ray-index tuples."""

    ambient_dim: int
    rays: tuple
    max_cones: tuple

    def __post_init__(self):
        rays = tuple(tuple(int(a) for a in r) for r in self.rays)
        for r in rays:
            if len(r) != self.ambient_dim:
                raise ValueError("ray dimension mismatch")
            if all(a == 0 for a in r):
                raise ValueError("zero ray")
            if make_primitive(r) != r:
                raise ValueError(f"ray {r} is not primitive")
        if len(set(rays)) != len(rays):
            raise ValueError("rays must be pairwise distinct")
        cones = []
        for cone in self.max_cones:
            idx = tuple(sorted(int(i) for i in cone))
            if len(set(idx)) != len(idx):
                raise ValueError("repeated ray in a maximal cone")
            if any(i < 0 or i >= len(rays) for i in idx):
                raise ValueError("cone references an unknown ray")
            if mat_rank([rays[i] for i in idx]) != len(idx):
                raise ValueError(f"cone {idx} is not simplicial")
            cones.append(idx)
        if not cones:
            raise ValueError("fan needs at least one maximal cone")
        object.__setattr__(self, "rays", rays)
        object.__setattr__(self, "max_cones", tuple(cones))

    @property
    def is_complete(self):
        return _fan_is_complete(self)


def _cone_coordinates(fan, cone, point):
    """Barycentric coordinates of a point in a full-dimensional simplicial cone."""
    n = fan.ambient_dim
    rows = [[fan.rays[j][i] for j in cone] for i in range(n)]
    return solve_unique(rows, list(point))


@functools.lru_cache(maxsize=None)
def _fan_is_complete(fan: Fan) -> bool:
    n = fan.ambient_dim
    if any(len(c) != n for c in fan.max_cones):
        return False
    if n == 1:
        return set(fan.rays) == {(1,), (-1,)}
    # facet pairing: every ridge of a maximal cone is shared by exactly two
    ridge_count = {}
    for cone in fan.max_cones:
        for ridge in itertools.combinations(cone, n - 1):
            ridge_count[ridge] = ridge_count.get(ridge, 0) + 1
    if any(count != 2 for count in ridge_count.values()):
        return False
    # sampling: a handful of fixed directions must all be covered
    samples = set()
    for i in range(n):
        e = tuple(1 if j == i else 0 for j in range(n))
        samples.add(e)
        samples.add(tuple(-a for a in e))
    for signs in itertools.product((1, -1), repeat=n):
        samples.add(signs)
    samples.add(tuple(range(1, n + 1)))
    samples.add(tuple(-i for i in range(1, n + 1)))
    for x in samples:
        covered = False
        for cone in fan.max_cones:
            coords = _cone_coordinates(fan, cone, x)
            if coords is not None and all(c >= 0 for c in coords):
                covered = True
                break
        if not covered:
            return False
    return True


def _det(rows):
    n = len(rows)
    work = [list(map(Fraction, r)) for r in rows]
    det = Fraction(1)
    for col in range(n):
        piv = next((i for i in range(col, n) if work[i][col] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != col:
            work[col], work[piv] = work[piv], work[col]
            det = -det
        det *= work[col][col]
        inv = 1 / work[col][col]
        work[col] = [x * inv for x in work[col]]
        for i in range(col + 1, n):
            if work[i][col] != 0:
                f = work[i][col]
                work[i] = [a - f * b for a, b in zip(work[i], work[col])]
    return det


@dataclass(frozen=True)
class ToricVariety:
    fan: Fan
    smooth: bool = field(init=False)

    def __post_init__(self):
        smooth = all(
            len(cone) == self.fan.ambient_dim
            and abs(_det([self.fan.rays[i] for i in cone])) == 1
            for cone in self.fan.max_cones
        )
        object.__setattr__(self, "smooth", smooth)

    @property
    def dim(self):
        return self.fan.ambient_dim

    def require_complete(self):
        if not self.fan.is_complete:
            raise NotComplete("operation requires a complete fan")


@dataclass(frozen=True)
class CartierDivisor:
    """A torus-invariant divisor: one coefficient per ray of the fan.

    Integer-coefficient divisors on non-smooth fans are checked for
    Cartier-ness at construction (per-cone linear functionals must be
    integral).  Divisors produced by arithmetic or by Fix/Mov skip the check;
    rational coefficients are allowed and flag the divisor as a Q-divisor.
    """

    variety: ToricVariety
    coeffs: tuple
    unchecked: bool = field(default=False, compare=False, repr=False)

    def __post_init__(self):
        coeffs = tuple(Fraction(c) for c in self.coeffs)
        if len(coeffs) != len(self.variety.fan.rays):
            raise ValueError("need exactly one coefficient per ray")
        object.__setattr__(self, "coeffs", coeffs)
        if (
            not self.unchecked
            and not self.variety.smooth
            and self.is_integral
            and not self.is_cartier
        ):
            raise NotCartier("no integral per-cone linear functional exists")

    @property
    def is_integral(self):
        return all(c.denominator == 1 for c in self.coeffs)

    @property
    def is_effective(self):
        return all(c >= 0 for c in self.coeffs)

    @property
    def is_zero(self):
        return all(c == 0 for c in self.coeffs)

    @property
    def support(self):
        return tuple(i for i, c in enumerate(self.coeffs) if c != 0)

    def cone_functionals(self):
        """Per-maximal-cone solutions m_sigma of <m, v_ray> = -a_ray, or None."""
        fan = self.variety.fan
        out = {}
        for cone in fan.max_cones:
            if len(cone) != fan.ambient_dim:
                return None
            sol = solve_unique(
                [fan.rays[i] for i in cone], [-self.coeffs[i] for i in cone]
            )
            if sol is None:
                return None
            out[cone] = sol
        return out

    @property
    def is_cartier(self):
        data = self.cone_functionals()
        if data is None:
            return False
        return all(all(x.denominator == 1 for x in m) for m in data.values())

    @property
    def is_ample(self):
        """Cartier with strictly convex support function (complete simplicial fan)."""
        fan = self.variety.fan
        data = self.cone_functionals()
        if data is None or not self.is_cartier:
            return False
        for cone, m in data.items():
            for i, ray in enumerate(fan.rays):
                if i in cone:
                    continue
                if dot(m, ray) <= -self.coeffs[i]:
                    return False
        return True

    @property
    def is_basepoint_free(self):
        fan = self.variety.fan
        data = self.cone_functionals()
        if data is None:
            return False
        for cone, m in data.items():
            if any(x.denominator != 1 for x in m):
                return False
            if any(dot(m, ray) < -self.coeffs[i] for i, ray in enumerate(fan.rays)):
                return False
        return True

    def __add__(self, other):
        self._same_variety(other)
        return CartierDivisor(
            self.variety,
            tuple(a + b for a, b in zip(self.coeffs, other.coeffs)),
            unchecked=True,
        )

    def __sub__(self, other):
        self._same_variety(other)
        return CartierDivisor(
            self.variety,
            tuple(a - b for a, b in zip(self.coeffs, other.coeffs)),
            unchecked=True,
        )

    def __neg__(self):
        return CartierDivisor(
            self.variety, tuple(-a for a in self.coeffs), unchecked=True
        )

    def __rmul__(self, scalar):
        scalar = Fraction(scalar)
        return CartierDivisor(
            self.variety, tuple(scalar * a for a in self.coeffs), unchecked=True
        )

    def _same_variety(self, other):
        if self.variety != other.variety:
            raise ValueError("divisors live on different varieties")


def ray_divisor(X: ToricVariety, index: int) -> CartierDivisor:
    """The prime torus-invariant divisor attached to one ray."""
    coeffs = tuple(1 if i == index else 0 for i in range(len(X.fan.rays)))
    return CartierDivisor(X, coeffs)


def zero_divisor(X: ToricVariety) -> CartierDivisor:
    return CartierDivisor(X, (0,) * len(X.fan.rays))


# ---------------------------------------------------------------------------
# section polytopes and dimensions


def section_polytope(D: CartierDivisor) -> RationalPolyhedron:
    """P_D = {u : <u, v_ray> >= -a_ray}; its lattice points index the sections."""
    fan = D.variety.fan
    pairs = [(ray, -D.coeffs[i]) for i, ray in enumerate(fan.rays)]
    return polyhedron_from_inequalities(pairs)


@dataclass(frozen=True)
class SectionPolytopeFamily:
    """The polytopes P_{D + m L} for a fixed base divisor D and scaling divisor L."""

    base: CartierDivisor
    scaling: CartierDivisor

    def __post_init__(self):
        if self.base.variety != self.scaling.variety:
            raise ValueError("family divisors live on different varieties")

    def member(self, m) -> RationalPolyhedron:
        return section_polytope(self.base + Fraction(m) * self.scaling)


def h0(X: ToricVariety, D: CartierDivisor) -> int:
    """Exact dimension of the section space of D."""
    X.require_complete()
    if D.variety != X:
        raise ValueError("divisor lives on a different variety")
    return len(lattice_points(section_polytope(D)))


# ---------------------------------------------------------------------------
# divisorial algebras and modules


def divisorial_algebra(X: ToricVariety, L: CartierDivisor) -> GradedAlgebra:
    """The section ring of L: slice m is the lattice points of P_{mL}, product is addition."""
    X.require_complete()
    family = SectionPolytopeFamily(zero_divisor(X), L)

    def basis(m):
        return lattice_points(family.member(m))

    def multiply(a_deg, u, b_deg, v):
        return {vadd(u, v): Fraction(1)}

    unit = (0,) * X.dim
    return GradedAlgebra(basis, multiply, unit, name=f"R({_divisor_name(L)})")


def divisorial_module(
    X: ToricVariety, D: CartierDivisor, L: CartierDivisor, p: int
) -> GradedModule:
    """The graded module with slice m = sections of D + mL for m >= p."""
    X.require_complete()
    family = SectionPolytopeFamily(D, L)

    def basis(m):
        return lattice_points(family.member(m))

    def act(a_deg, u, b_deg, w):
        return {vadd(u, w): Fraction(1)}

    return GradedModule(
        p, basis, act, name=f"M^{p}_{_divisor_name(D)}({_divisor_name(L)})"
    )


def _divisor_name(D):
    return "(" + ",".join(str(c) for c in D.coeffs) + ")"


# ---------------------------------------------------------------------------
# exact finite-generation decisions


def _algebra_cone(X, L) -> Cone:
    """The cone over {1} x P_L in R^{1+n}, in ray-generator form."""
    pairs = []
    for i, ray in enumerate(X.fan.rays):
        row = integerize((L.coeffs[i],) + tuple(Fraction(a) for a in ray))
        pairs.append((row, 0))
    pairs.append((tuple([1] + [0] * X.dim), 0))
    return recession_cone(polyhedron_from_inequalities(pairs))


def exact_fg_algebra(X: ToricVariety, L: CartierDivisor) -> FGCertificate:
    """Exact generator set for the section ring, via the Hilbert basis of its cone."""
    X.require_complete()
    cone = _algebra_cone(X, L)
    result = hilbert_basis(cone)
    gens = GeneratorSet(tuple((e[0], e[1:]) for e in result.elements))
    return FGCertificate(
        "exact", generators=gens, stabilization_degree=result.max_degree
    )


def _module_polyhedron(X, D, L, p) -> RationalPolyhedron:
    pairs = []
    for i, ray in enumerate(X.fan.rays):
        coeffs = (L.coeffs[i],) + tuple(Fraction(a) for a in ray)
        den = math.lcm(*(Fraction(c).denominator for c in coeffs), 1)
        row = tuple(int(Fraction(c) * den) for c in coeffs)
        pairs.append((row, -D.coeffs[i] * den))
    pairs.append((tuple([1] + [0] * X.dim), p))
    return polyhedron_from_inequalities(pairs)


def exact_fg_module(
    X: ToricVariety, D: CartierDivisor, L: CartierDivisor, p: int
) -> FGCertificate:
    """Exact module generators by reachability, or a non-fg witness.

    The module lattice {(m, u) : m >= p, u in P_{D+mL}} sits over the algebra
    cone; it is finitely generated exactly when its recession cone lies inside
    the algebra cone, and then every generator appears below an explicit
    degree bound (vertex degrees plus the sum of ray degrees).
    """
    X.require_complete()
    Q = _module_polyhedron(X, D, L, p)
    if Q.is_empty():
        return FGCertificate("exact", generators=GeneratorSet(), stabilization_degree=0)
    algebra_cone = _algebra_cone(X, L)
    rec = recession_cone(Q)
    if not cone_contains(algebra_cone, rec):
        ineq_violator = next(
            g
            for g in rec.generators
            if not cone_contains(algebra_cone, Cone(rec.dim, (g,)))
        )
        return FGCertificate(
            "non-fg-witness",
            witness={"recession_direction": ineq_violator},
        )
    verts = vertices(Q)
    vertex_degree = max(math.ceil(v[0]) for v in verts)
    bound = vertex_degree + sum(g[0] for g in algebra_cone.generators)
    family = SectionPolytopeFamily(D, L)
    alg_family = SectionPolytopeFamily(zero_divisor(X), L)
    slices = {
        m: lattice_points(family.member(m)) for m in range(p, bound + 1)
    }
    entries = []
    for m in range(p, bound + 1):
        reachable = set()
        for a in range(1, m - p + 1):
            alg_pts = lattice_points(alg_family.member(a))
            for u in alg_pts:
                for w in slices[m - a]:
                    reachable.add(vadd(u, w))
        entries.extend((m, u) for u in slices[m] if u not in reachable)
    gens = GeneratorSet(tuple(entries))
    return FGCertificate(
        "exact", generators=gens, stabilization_degree=gens.max_degree(default=0)
    )


# ---------------------------------------------------------------------------
# Fix / Mov


def fix_mov(X: ToricVariety, D: CartierDivisor):
    """Fixed and movable parts of |D|, from lattice points of the section polytope."""
    X.require_complete()
    if not D.is_integral:
        raise ValueError("Fix/Mov requires an integral divisor")
    pts = lattice_points(section_polytope(D))
    if not pts:
        raise NoSections("divisor has no sections")
    fan = X.fan
    fix_coeffs = tuple(
        min(dot(u, ray) + D.coeffs[i] for u in pts) for i, ray in enumerate(fan.rays)
    )
    fixed = CartierDivisor(X, fix_coeffs, unchecked=True)
    movable = D - fixed
    return fixed, movable


@dataclass(frozen=True)
class FixStabilityReport:
    scaling_steps: int  # J
    fixed_part: CartierDivisor  # E = Fix(J L)
    movable_part: CartierDivisor  # F = Mov(J L)
    per_degree: tuple  # (m, fix equals m*E, mov equals m*F)
    movable_basepoint_free: bool
    first_failure: int | None

    @property
    def stable(self):
        return self.first_failure is None and self.movable_basepoint_free


def fix_stability_check(
    X: ToricVariety, L: CartierDivisor, J: int, m_max: int
) -> FixStabilityReport:
    """Verify Fix(mJL) = m Fix(JL) and Mov(mJL) = m Mov(JL) for m up to m_max."""
    X.require_complete()
    if not X.smooth:
        raise ValueError("fix stability check is stated on smooth fans")
    if all(h0(X, n * L) == 0 for n in range(1, J + 1)):
        raise NoSections("no multiple of L up to J has sections")
    E, F = fix_mov(X, J * L)
    rows = []
    first_failure = None
    for m in range(1, m_max + 1):
        fix_m, mov_m = fix_mov(X, (m * J) * L)
        fix_ok = fix_m == m * E
        mov_ok = mov_m == m * F
        rows.append((m, fix_ok, mov_ok))
        if first_failure is None and not (fix_ok and mov_ok):
            first_failure = m
    return FixStabilityReport(
        scaling_steps=J,
        fixed_part=E,
        movable_part=F,
        per_degree=tuple(rows),
        movable_basepoint_free=F.is_basepoint_free,
        first_failure=first_failure,
    )


@dataclass(frozen=True)
class SuppFixReport:
    target_support: tuple  # ray indices of Supp E
    per_degree: tuple  # (m, support of Fix(m(JL + rF) + G))
    threshold: int | None  # least m from which the support equals the target

    @property
    def stabilizes(self):
        return self.threshold is not None


def supp_fix_with_ample(
    X: ToricVariety,
    L: CartierDivisor,
    J: int,
    r: int,
    G: CartierDivisor,
    m_range,
) -> SuppFixReport:
    """Track Supp Fix(m(JL + rF) + G) against Supp E for m in the given range."""
    X.require_complete()
    if r < 0:
        raise ValueError("r must be nonnegative")
    if not G.is_ample:
        raise NotAmple("auxiliary divisor must be ample")
    E, F = fix_mov(X, J * L)
    base = J * L + r * F
    target = E.support
    rows = []
    for m in m_range:
        fixed, _ = fix_mov(X, m * base + G)
        rows.append((m, fixed.support))
    threshold = None
    for m, supp in rows:
        if supp == target:
            if threshold is None:
                threshold = m
        else:
            threshold = None
    return SuppFixReport(target_support=target, per_degree=tuple(rows), threshold=threshold)


# ---------------------------------------------------------------------------
# restriction: kernels, images, quotient algebras


def restriction_kernel(
    X: ToricVariety, L: CartierDivisor, C: CartierDivisor, p: int
) -> GradedModule:
    """Sections of mL vanishing to the prescribed orders along C's rays."""
    if not (C.is_integral and C.is_effective):
        raise ValueError("vanishing orders must be a nonnegative integral divisor")
    return divisorial_module(X, -C, L, p)


def restriction_image(M: GradedModule, K: GradedModule) -> GradedModule:
    """Quotient of M by a degreewise sub-basis K (the restricted module)."""

    def basis(m):
        mb = M.slice(m).basis
        kb = K.slice(m).basis
        ks = set(kb)
        if not ks <= set(mb):
            raise NotASubmodule(f"kernel labels escape the module in degree {m}")
        return tuple(l for l in mb if l not in ks)

    def act(a_deg, a_label, b_deg, b_label):
        out = M.act(a_deg, a_label, b_deg, b_label)
        killed = set(K.slice(a_deg + b_deg).basis)
        return {l: c for l, c in out.items() if l not in killed}

    return GradedModule(M.offset, basis, act, name=f"{M.name} mod {K.name}")


def restriction_algebra_image(R: GradedAlgebra, K: GradedModule) -> GradedAlgebra:
    """Quotient algebra of R by a degreewise sub-basis ideal K."""

    def basis(m):
        rb = R.slice(m).basis
        kb = set(K.slice(m).basis)
        if not kb <= set(rb):
            raise NotASubmodule(f"kernel labels escape the algebra in degree {m}")
        return tuple(l for l in rb if l not in kb)

    def multiply(a_deg, a_label, b_deg, b_label):
        out = R.multiply(a_deg, a_label, b_deg, b_label)
        killed = set(K.slice(a_deg + b_deg).basis)
        return {l: c for l, c in out.items() if l not in killed}

    return GradedAlgebra(
        basis, multiply, R.unit_label, R.base_ring_tag, name=f"{R.name}|"
    )


def restricted_algebra(
    X: ToricVariety, L: CartierDivisor, C: CartierDivisor
) -> GradedAlgebra:
    """The image of the section ring under restriction to the subscheme cut by C."""
    return restriction_algebra_image(
        divisorial_algebra(X, L), restriction_kernel(X, L, C, 0)
    )


# ---------------------------------------------------------------------------
# stock varieties


def projective_space(n: int) -> ToricVariety:
    rays = [tuple(1 if j == i else 0 for j in range(n)) for i in range(n)]
    rays.append((-1,) * n)
    cones = list(itertools.combinations(range(n + 1), n))
    return ToricVariety(Fan(n, tuple(rays), tuple(cones)))


def p1_x_p1() -> ToricVariety:
    rays = ((1, 0), (-1, 0), (0, 1), (0, -1))
    cones = ((0, 2), (1, 2), (1, 3), (0, 3))
    return ToricVariety(Fan(2, rays, cones))


def blown_up_p2() -> ToricVariety:
    """The blow-up of the projective plane at a torus-fixed point; ray 3 is exceptional."""
    rays = ((1, 0), (0, 1), (-1, -1), (1, 1))
    cones = ((0, 3), (1, 3), (1, 2), (0, 2))
    return ToricVariety(Fan(2, rays, cones))


def weighted_p112() -> ToricVariety:
    """A complete simplicial but non-smooth surface (P(1,1,2))."""
    rays = ((1, 0), (0, 1), (-1, -2))
    cones = ((0, 1), (1, 2), (0, 2))
    return ToricVariety(Fan(2, rays, cones))
