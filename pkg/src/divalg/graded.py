"""Backend-agnostic graded algebras and modules with explicit degree slices.

Slices are finite-dimensional vector spaces over the rationals, presented by
ordered basis labels.  Multiplication and module action are oracles returning
exact linear combinations.  Generator discovery works degree by degree: the
subspace spanned by products of lower degrees is computed exactly and extended
by a complement basis, so a bounded search never claims more than "no new
generators up to the bound".
"""

from __future__ import annotations

import math
import threading
from dataclasses import dataclass, field
from fractions import Fraction

from .errors import InsufficientRange


def label_key(label):
    """Total order on heterogeneous basis labels, for deterministic output."""
    if isinstance(label, tuple):
        return (0, label)
    if isinstance(label, str):
        return (1, label)
    if isinstance(label, int):
        return (2, label)
    return (3, repr(label))


@dataclass(frozen=True)
class DegreeSlice:
    degree: int
    basis: tuple

    def __post_init__(self):
        basis = tuple(self.basis)
        if len(set(basis)) != len(basis):
            raise ValueError(f"duplicate basis labels in degree {self.degree}")
        object.__setattr__(self, "basis", basis)

    @property
    def dimension(self):
        return len(self.basis)


class GradedAlgebra:
    """A nonnegatively graded algebra given by slice and multiplication oracles.

    ``slice_basis(m)`` returns the ordered basis labels of the degree-m piece;
    ``multiply(a, la, b, lb)`` returns a ``{label: Fraction}`` combination in
    degree a+b.  Slice access is cached and safe for concurrent readers.
    """

    def __init__(self, slice_basis, multiply, unit_label, base_ring_tag="QQ", name=""):
        self._slice_basis = slice_basis
        self._multiply = multiply
        self.unit_label = unit_label
        self.base_ring_tag = base_ring_tag
        self.name = name
        self._cache = {}
        self._lock = threading.Lock()

    def slice(self, m: int) -> DegreeSlice:
        with self._lock:
            if m in self._cache:
                return self._cache[m]
        if m < 0:
            result = DegreeSlice(m, ())
        else:
            result = DegreeSlice(m, tuple(self._slice_basis(m)))
            if m == 0 and self.unit_label not in result.basis:
                raise ValueError("degree-0 slice does not contain the unit label")
        with self._lock:
            self._cache[m] = result
        return result

    def multiply(self, a_deg, a_label, b_deg, b_label):
        return self._multiply(a_deg, a_label, b_deg, b_label)


class GradedModule:
    """A Z-graded module with zero slices below a fixed offset."""

    def __init__(self, offset, slice_basis, act, name=""):
        self.offset = offset
        self._slice_basis = slice_basis
        self._act = act
        self.name = name
        self._cache = {}
        self._lock = threading.Lock()

    def slice(self, m: int) -> DegreeSlice:
        with self._lock:
            if m in self._cache:
                return self._cache[m]
        if m < self.offset:
            result = DegreeSlice(m, ())
        else:
            result = DegreeSlice(m, tuple(self._slice_basis(m)))
        with self._lock:
            self._cache[m] = result
        return result

    def act(self, alg_deg, alg_label, mod_deg, mod_label):
        return self._act(alg_deg, alg_label, mod_deg, mod_label)


@dataclass(frozen=True)
class GeneratorSet:
    """Homogeneous generators as (degree, basis label) pairs."""

    entries: tuple = ()

    def __post_init__(self):
        ordered = tuple(
            sorted(set(self.entries), key=lambda e: (e[0], label_key(e[1])))
        )
        object.__setattr__(self, "entries", ordered)

    def __len__(self):
        return len(self.entries)

    def __iter__(self):
        return iter(self.entries)

    def degrees(self):
        return tuple(d for d, _ in self.entries)

    def labels_at(self, degree):
        return tuple(l for d, l in self.entries if d == degree)

    def union(self, other):
        return GeneratorSet(self.entries + tuple(other))

    def max_degree(self, default=0):
        return max((d for d, _ in self.entries), default=default)


@dataclass(frozen=True)
class FGCertificate:
    """Machine-checkable finite-generation verdict.

    ``kind`` is one of ``exact``, ``bounded-search``, ``non-fg-witness``,
    ``inconclusive``.  Only backend-exact decisions may carry ``exact``;
    a bounded search records its probe bound and claims nothing beyond it.
    """

    kind: str
    generators: GeneratorSet = field(default_factory=GeneratorSet)
    stabilization_degree: int = 0
    bound: int | None = None
    witness: object = None

    KINDS = ("exact", "bounded-search", "non-fg-witness", "inconclusive")

    def __post_init__(self):
        if self.kind not in self.KINDS:
            raise ValueError(f"unknown certificate kind {self.kind!r}")


# ---------------------------------------------------------------------------
# truncation / decomposition / reindexing


def truncate(R: GradedAlgebra, I: int) -> GradedAlgebra:
    """Subalgebra keeping only degrees divisible by I, degrees unchanged."""
    if I < 1:
        raise ValueError("truncation period must be a positive integer")
    if I == 1:
        return R

    def basis(m):
        return R.slice(m).basis if m % I == 0 else ()

    return GradedAlgebra(
        basis, R.multiply, R.unit_label, R.base_ring_tag, name=f"{R.name}^[{I}]"
    )


def decompose(M: GradedModule, I: int):
    """Split a module into I congruence-class components over the truncated algebra."""
    if I < 1:
        raise ValueError("decomposition period must be a positive integer")
    components = []
    for i in range(I):
        offset_i = M.offset + ((i - M.offset) % I)

        def basis(m, _i=i):
            return M.slice(m).basis if m % I == _i else ()

        components.append(
            GradedModule(offset_i, basis, M.act, name=f"{M.name}[{i} mod {I}]")
        )
    return tuple(components)


def reindex_component(N_i: GradedModule, I: int, i: int, p: int) -> GradedModule:
    """Reindex a congruence component: new slice n is the old slice n*I + i.

    The new offset is the smallest q with q*I + i >= p.
    """
    if not 0 <= i < I:
        raise ValueError("residue must satisfy 0 <= i < I")
    q = -((i - p) // I)

    def basis(n):
        return N_i.slice(n * I + i).basis

    def act(a_deg, a_label, b_deg, b_label):
        return N_i.act(a_deg * I, a_label, b_deg * I + i, b_label)

    return GradedModule(q, basis, act, name=f"{N_i.name} reindexed")


def compress_truncation(R: GradedAlgebra, I: int) -> GradedAlgebra:
    """The truncated algebra with degrees divided by I (degree m holds old degree m*I)."""
    if I < 1:
        raise ValueError("truncation period must be a positive integer")

    def basis(m):
        return R.slice(m * I).basis

    def multiply(a_deg, a_label, b_deg, b_label):
        return R.multiply(a_deg * I, a_label, b_deg * I, b_label)

    return GradedAlgebra(
        basis, multiply, R.unit_label, R.base_ring_tag, name=f"{R.name}/deg{I}"
    )


def change_offset(M: GradedModule, q: int) -> GradedModule:
    """Move the offset; lowering it materializes the new slices from the oracle now."""
    if q == M.offset:
        return M
    if q < M.offset:
        for m in range(q, M.offset):
            M._slice_basis(m)  # raises OracleRangeExceeded if unsupported
    return GradedModule(q, M._slice_basis, M._act, name=M.name)


# ---------------------------------------------------------------------------
# exact span computations


class _Echelon:
    """Sparse exact row echelon over Fraction, pivoting on earliest basis labels."""

    def __init__(self, basis):
        self._pos = {label: k for k, label in enumerate(basis)}
        self.rows = {}  # pivot label -> {label: Fraction} with pivot coeff 1

    def _min_label(self, row):
        return min(row, key=lambda l: self._pos[l])

    def add(self, row):
        row = {l: Fraction(c) for l, c in row.items() if c != 0}
        while row:
            lead = self._min_label(row)
            piv = self.rows.get(lead)
            if piv is None:
                coeff = row[lead]
                self.rows[lead] = {l: c / coeff for l, c in row.items()}
                return True
            factor = row[lead]
            for l, c in piv.items():
                val = row.get(l, Fraction(0)) - factor * c
                if val:
                    row[l] = val
                else:
                    row.pop(l, None)
        return False

    def reduced_rows(self):
        # full back-substitution, canonical for the subspace
        out = {}
        for lead in sorted(self.rows, key=lambda l: self._pos[l], reverse=True):
            row = dict(self.rows[lead])
            for other, done in out.items():
                if other in row and other != lead:
                    factor = row.pop(other)
                    for l, c in done.items():
                        if l == other:
                            continue
                        val = row.get(l, Fraction(0)) - factor * c
                        if val:
                            row[l] = val
                        else:
                            row.pop(l, None)
            out[lead] = row
        return out


def _span_pivots(basis, rows):
    """Labels of the pivot columns of the span of ``rows`` inside ``basis``."""
    if all(len(r) <= 1 for r in rows):
        return {l for r in rows for l, c in r.items() if c != 0}
    ech = _Echelon(basis)
    for r in rows:
        ech.add(r)
    return set(ech.rows)


def _span_fingerprint(basis, rows):
    """Canonical identifier of the span of ``rows`` (reduced echelon rows)."""
    ech = _Echelon(basis)
    for r in rows:
        ech.add(r)
    reduced = ech.reduced_rows()
    pos = {label: k for k, label in enumerate(basis)}
    return tuple(
        (lead, tuple(sorted(row.items(), key=lambda kv: pos[kv[0]])))
        for lead, row in sorted(reduced.items(), key=lambda kv: pos[kv[0]])
    )


def _product_rows_algebra(R, m):
    rows = []
    for a in range(1, m // 2 + 1):
        b = m - a
        left = R.slice(a).basis
        right = R.slice(b).basis
        if not left or not right:
            continue
        for u in left:
            for v in right:
                rows.append(R.multiply(a, u, b, v))
    return rows


def _product_rows_module(M, R, m):
    rows = []
    for a in range(1, m - M.offset + 1):
        left = R.slice(a).basis
        right = M.slice(m - a).basis
        if not left or not right:
            continue
        for u in left:
            for w in right:
                rows.append(M.act(a, u, m - a, w))
    return rows


def find_algebra_generators(R: GradedAlgebra, bound: int, seed=None):
    """Degreewise generator discovery up to ``bound``.

    Returns (generators, new-generator counts per degree, certificate).  With
    ``seed`` given, seeded elements count as already available, so a complete
    seed reports zero new generators.
    """
    if bound < 1:
        raise ValueError("bound must be >= 1")
    seed_at = {}
    if seed is not None:
        for d, l in seed:
            seed_at.setdefault(d, []).append(l)
    entries = []
    counts = {}
    for m in range(1, bound + 1):
        target = R.slice(m).basis
        if not target:
            counts[m] = 0
            continue
        rows = _product_rows_algebra(R, m)
        for l in seed_at.get(m, ()):
            if l not in target:
                raise ValueError(f"seed label {l!r} not in degree-{m} slice")
            rows.append({l: Fraction(1)})
        covered = _span_pivots(target, rows)
        new = [l for l in target if l not in covered]
        counts[m] = len(new)
        entries.extend((m, l) for l in new)
    gens = GeneratorSet(tuple(entries))
    cert = FGCertificate(
        "bounded-search",
        generators=gens,
        stabilization_degree=gens.max_degree(default=0),
        bound=bound,
    )
    return gens, counts, cert


def find_module_generators(M: GradedModule, R: GradedAlgebra, bound: int, seed=None):
    """Module analogue of :func:`find_algebra_generators`, starting at the offset."""
    if bound < M.offset:
        raise ValueError("bound must be >= the module offset")
    seed_at = {}
    if seed is not None:
        for d, l in seed:
            seed_at.setdefault(d, []).append(l)
    entries = []
    for m in range(M.offset, bound + 1):
        target = M.slice(m).basis
        if not target:
            continue
        rows = _product_rows_module(M, R, m)
        for l in seed_at.get(m, ()):
            if l not in target:
                raise ValueError(f"seed label {l!r} not in degree-{m} slice")
            rows.append({l: Fraction(1)})
        covered = _span_pivots(target, rows)
        entries.extend((m, l) for l in target if l not in covered)
    gens = GeneratorSet(tuple(entries))
    cert = FGCertificate(
        "bounded-search",
        generators=gens,
        stabilization_degree=gens.max_degree(default=0),
        bound=bound,
    )
    return gens, cert


def generated_slice_spans(M: GradedModule, R: GradedAlgebra, generators, bound: int):
    """Degreewise canonical spans of the submodule generated by ``generators``.

    Returns {degree: fingerprint}; two generating sets generate the same
    submodule up to ``bound`` iff the fingerprints agree degree by degree.
    """
    gen_at = {}
    for d, l in generators:
        gen_at.setdefault(d, []).append(l)
    span_basis = {}
    fingerprints = {}
    for m in range(M.offset, bound + 1):
        basis = M.slice(m).basis
        rows = [{l: Fraction(1)} for l in gen_at.get(m, ())]
        for a in range(1, m - M.offset + 1):
            left = R.slice(a).basis
            prev = span_basis.get(m - a, ())
            if not left or not prev:
                continue
            for u in left:
                for vec in prev:
                    out = {}
                    for lbl, c in vec.items():
                        for l2, c2 in M.act(a, u, m - a, lbl).items():
                            val = out.get(l2, Fraction(0)) + c * c2
                            if val:
                                out[l2] = val
                            else:
                                out.pop(l2, None)
                    if out:
                        rows.append(out)
        ech = _Echelon(basis)
        for r in rows:
            ech.add(r)
        reduced = ech.reduced_rows()
        span_basis[m] = tuple(reduced.values())
        pos = {label: k for k, label in enumerate(basis)}
        fingerprints[m] = tuple(
            (lead, tuple(sorted(row.items(), key=lambda kv: pos[kv[0]])))
            for lead, row in sorted(reduced.items(), key=lambda kv: pos[kv[0]])
        )
    return fingerprints


# ---------------------------------------------------------------------------
# counting arguments and growth


@dataclass(frozen=True)
class CountingCheck:
    holds: bool
    first_failure: int | None = None


@dataclass(frozen=True)
class NonFgWitness:
    """Per-probe refutations: no generating set with degrees <= e can exist.

    Each probe records (e, failing degree m, available cap, required dimension):
    the cap sums dim(degree d) * dim(algebra degree m-d) over d <= e, which
    dominates the degree-m slice of any submodule generated in degrees <= e.
    """

    probes: tuple
    algebra_growth: int | None = None
    module_growth: int | None = None


def _table_dim(table, d, *, negative_is_zero=True):
    if d in table:
        return table[d]
    if d < 0 and negative_is_zero:
        return 0
    raise InsufficientRange(f"dimension table has no entry for degree {d}")


def counting_bound_check(gen_degrees, h_alg, h_mod, degrees) -> CountingCheck:
    """Check sum_i h_alg(m - n_i) >= h_mod(m) for every m in ``degrees``."""
    gen_degrees = tuple(gen_degrees)
    for m in degrees:
        required = _table_dim(h_mod, m, negative_is_zero=False)
        available = sum(_table_dim(h_alg, m - n) for n in gen_degrees)
        if available < required:
            return CountingCheck(False, m)
    return CountingCheck(True, None)


def counting_refutation(h_alg, h_mod, degrees, max_gen_degree) -> NonFgWitness | None:
    """Refute finite generation by degree caps, or return None.

    A module generated in degrees <= e is also generated by full spanning sets
    of its slices up to e, so its degree-m dimension is at most
    cap_e(m) = sum_{d <= e} h_mod(d) * h_alg(m - d).  If every e up to
    ``max_gen_degree`` has a degree in range beating its cap, no finite
    generating set with degrees <= ``max_gen_degree`` exists.
    """
    degrees = sorted(degrees)
    mod_degrees = sorted(h_mod)
    if max_gen_degree < mod_degrees[0]:
        raise ValueError("probe bound lies below the module's first tabulated degree")
    probes = []
    for e in range(mod_degrees[0], max_gen_degree + 1):
        low = [d for d in mod_degrees if d <= e]
        failure = None
        for m in degrees:
            required = _table_dim(h_mod, m, negative_is_zero=False)
            cap = sum(h_mod[d] * _table_dim(h_alg, m - d) for d in low)
            if required > cap:
                failure = (e, m, cap, required)
                break
        if failure is None:
            return None
        probes.append(failure)
    try:
        alg_growth = growth_degree(h_alg, sorted(h_alg)).exponent
        mod_growth = growth_degree(h_mod, sorted(h_mod)).exponent
    except InsufficientRange:
        alg_growth = mod_growth = None
    return NonFgWitness(tuple(probes), alg_growth, mod_growth)


@dataclass(frozen=True)
class GrowthEstimate:
    """Estimated polynomial growth exponent (successive-ratio fit, exact rationals)."""

    exponent: int
    at_degree: int
    is_estimate: bool = True


def growth_degree(h, degrees) -> GrowthEstimate:
    """Smallest integer d with h(m)/m^d bounded above and below on the tail.

    Estimated from the exact difference ratio at the top of the sampled range:
    for h(m) ~ c*m^k the quantity (h(m) - h(m-1)) * (m-1) / h(m-1) tends to k.
    """
    degrees = sorted(degrees)
    if len(degrees) < 8:
        raise InsufficientRange("growth estimation needs at least 8 sample degrees")
    for m in reversed(degrees):
        if m - 1 in h and h[m - 1] > 0 and m in h:
            est = Fraction(h[m] - h[m - 1], h[m - 1]) * (m - 1)
            exponent = math.floor(est + Fraction(1, 2))
            return GrowthEstimate(exponent, m)
    return GrowthEstimate(0, degrees[-1])
