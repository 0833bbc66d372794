"""Tabulated Hilbert data: dimension tables, optional structure constants.

A table documents degree -> dimension data (and optionally explicit bases and
product/action constants) for algebras and modules that have no polyhedral
backend.  Dimension-only tables support counting arguments; certifying finite
generation from them is impossible, only refuting it.
"""

from __future__ import annotations

import configparser
import io
import re
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path

from .errors import (
    InsufficientRange,
    MissingStructure,
    OracleFailure,
    OracleRangeExceeded,
    SchemaError,
)
from .graded import (
    GradedAlgebra,
    GradedModule,
    NonFgWitness,
    counting_refutation,
)
from .lattice import lattice_points, polyhedron_from_inequalities, dilate

_LABEL_RE = re.compile(r"^[A-Za-z0-9_.+-]+$")


@dataclass(frozen=True)
class TableStructure:
    unit: str | None
    basis: tuple  # ((degree, (labels...)), ...)
    products: tuple  # (((a, la, b, lb), ((label, Fraction), ...)), ...)
    actions: tuple  # same shape as products

    def basis_map(self):
        return {d: labels for d, labels in self.basis}

    def product_map(self):
        return {key: dict(val) for key, val in self.products}

    def action_map(self):
        return {key: dict(val) for key, val in self.actions}


@dataclass(frozen=True)
class HilbertTable:
    label: str
    entries: tuple  # ((degree, dimension), ...) sorted by degree
    provenance: str = ""
    structure: TableStructure | None = None

    def __post_init__(self):
        entries = tuple(sorted((int(d), int(v)) for d, v in self.entries))
        if any(v < 0 for _, v in entries):
            raise SchemaError(self.label, "dimensions must be nonnegative")
        if len({d for d, _ in entries}) != len(entries):
            raise SchemaError(self.label, "duplicate degree entries")
        object.__setattr__(self, "entries", entries)

    def dims(self):
        return dict(self.entries)

    def degrees(self):
        return tuple(d for d, _ in self.entries)

    def min_degree(self):
        return self.entries[0][0]

    def max_degree(self):
        return self.entries[-1][0]

    # -- structure-backed views ------------------------------------------

    def as_algebra(self) -> GradedAlgebra:
        if self.structure is None or not self.structure.products:
            raise MissingStructure(
                f"table {self.label!r} carries no multiplication structure"
            )
        if self.structure.unit is None:
            raise MissingStructure(f"table {self.label!r} declares no unit label")
        basis_map = self.structure.basis_map()
        products = self.structure.product_map()
        dims = self.dims()

        def basis(m):
            if m in basis_map:
                return basis_map[m]
            if m not in dims:
                raise OracleRangeExceeded(f"degree {m} outside table {self.label!r}")
            if dims[m] == 0:
                return ()
            raise MissingStructure(f"no basis labels for degree {m}")

        def multiply(a_deg, a_label, b_deg, b_label):
            key = (a_deg, a_label, b_deg, b_label)
            alt = (b_deg, b_label, a_deg, a_label)
            if key in products:
                return dict(products[key])
            if alt in products:
                return dict(products[alt])
            raise OracleFailure(f"missing product {key} in table {self.label!r}")

        return GradedAlgebra(
            basis, multiply, self.structure.unit, name=self.label
        )

    def as_module(self, offset=None) -> GradedModule:
        if self.structure is None or not self.structure.actions:
            raise MissingStructure(
                f"table {self.label!r} carries no action structure"
            )
        basis_map = self.structure.basis_map()
        actions = self.structure.action_map()
        dims = self.dims()
        if offset is None:
            offset = self.min_degree()

        def basis(m):
            if m in basis_map:
                return basis_map[m]
            if m not in dims:
                raise OracleRangeExceeded(f"degree {m} outside table {self.label!r}")
            if dims[m] == 0:
                return ()
            raise MissingStructure(f"no basis labels for degree {m}")

        def act(a_deg, a_label, b_deg, b_label):
            key = (a_deg, a_label, b_deg, b_label)
            if key in actions:
                return dict(actions[key])
            raise OracleFailure(f"missing action {key} in table {self.label!r}")

        return GradedModule(offset, basis, act, name=self.label)


# ---------------------------------------------------------------------------
# the table document format


def _parser():
    parser = configparser.ConfigParser(
        delimiters=("=",), comment_prefixes=("#",), interpolation=None, strict=True
    )
    parser.optionxform = str
    return parser


def _parse_fraction(text, location):
    try:
        return Fraction(text.strip())
    except (ValueError, ZeroDivisionError) as exc:
        raise SchemaError(location, f"bad rational {text!r}") from exc


def _parse_combination(value, location):
    terms = []
    for term in value.split():
        pieces = term.rsplit(":", 1)
        if len(pieces) != 2 or not _LABEL_RE.match(pieces[0]):
            raise SchemaError(location, f"bad combination term {term!r}")
        terms.append((pieces[0], _parse_fraction(pieces[1], location)))
    return tuple(terms)


def _parse_operand(text, location):
    pieces = text.strip().split(":")
    if len(pieces) != 2 or not _LABEL_RE.match(pieces[1]):
        raise SchemaError(location, f"bad operand {text!r} (want degree:label)")
    try:
        deg = int(pieces[0])
    except ValueError as exc:
        raise SchemaError(location, f"bad degree in {text!r}") from exc
    return deg, pieces[1]


def _parse_pair_section(parser, section):
    out = []
    if not parser.has_section(section):
        return tuple(out)
    for key, value in parser.items(section):
        location = f"{section}:{key}"
        operands = key.split("*")
        if len(operands) != 2:
            raise SchemaError(location, "product key must be 'a:la * b:lb'")
        a_deg, a_label = _parse_operand(operands[0], location)
        b_deg, b_label = _parse_operand(operands[1], location)
        combo = _parse_combination(value, location)
        out.append(((a_deg, a_label, b_deg, b_label), combo))
    return tuple(sorted(out))


def load_table(document: str) -> HilbertTable:
    """Parse a table document (see the README for the grammar)."""
    parser = _parser()
    try:
        parser.read_string(document)
    except configparser.Error as exc:
        raise SchemaError("table", f"unparseable document: {exc}") from exc
    if not parser.has_section("table"):
        raise SchemaError("table", "missing [table] section")
    label = parser.get("table", "label", fallback="").strip()
    if not label:
        raise SchemaError("table:label", "table needs a label")
    provenance = parser.get("table", "provenance", fallback="").strip()
    unit = parser.get("table", "unit", fallback=None)
    if unit is not None:
        unit = unit.strip()
    if not parser.has_section("table.entries"):
        raise SchemaError("table.entries", "missing [table.entries] section")
    entries = []
    for key, value in parser.items("table.entries"):
        location = f"table.entries:{key}"
        try:
            degree = int(key)
            dim = int(value)
        except ValueError as exc:
            raise SchemaError(location, "degree and dimension must be integers") from exc
        if dim < 0:
            raise SchemaError(location, "dimensions must be nonnegative")
        entries.append((degree, dim))

    basis = []
    if parser.has_section("table.basis"):
        for key, value in parser.items("table.basis"):
            location = f"table.basis:{key}"
            try:
                degree = int(key)
            except ValueError as exc:
                raise SchemaError(location, "basis keys are degrees") from exc
            labels = tuple(value.split())
            for l in labels:
                if not _LABEL_RE.match(l):
                    raise SchemaError(location, f"bad label {l!r}")
            basis.append((degree, labels))
    products = _parse_pair_section(parser, "table.products")
    actions = _parse_pair_section(parser, "table.action")

    structure = None
    if basis or products or actions or unit is not None:
        structure = TableStructure(
            unit=unit,
            basis=tuple(sorted(basis)),
            products=products,
            actions=actions,
        )
        dims = dict(entries)
        for degree, labels in structure.basis:
            if degree not in dims:
                raise SchemaError(
                    f"table.basis:{degree}", "basis degree missing from entries"
                )
            if len(labels) != dims[degree]:
                raise SchemaError(
                    f"table.basis:{degree}",
                    f"{len(labels)} labels but dimension {dims[degree]}",
                )
    return HilbertTable(
        label=label, entries=tuple(entries), provenance=provenance, structure=structure
    )


def read_table(path) -> HilbertTable:
    return load_table(Path(path).read_text(encoding="utf-8"))


def table_to_text(table: HilbertTable) -> str:
    """Serialize a table back to the document format (deterministic)."""
    out = io.StringIO()
    out.write("[table]\n")
    out.write(f"label = {table.label}\n")
    if table.provenance:
        out.write(f"provenance = {table.provenance}\n")
    if table.structure is not None and table.structure.unit is not None:
        out.write(f"unit = {table.structure.unit}\n")
    out.write("\n[table.entries]\n")
    for degree, dim in table.entries:
        out.write(f"{degree} = {dim}\n")
    if table.structure is not None:
        if table.structure.basis:
            out.write("\n[table.basis]\n")
            for degree, labels in table.structure.basis:
                out.write(f"{degree} = {' '.join(labels)}\n")
        for name, pairs in (
            ("table.products", table.structure.products),
            ("table.action", table.structure.actions),
        ):
            if pairs:
                out.write(f"\n[{name}]\n")
                for (a, la, b, lb), combo in pairs:
                    rhs = " ".join(f"{l}:{c}" for l, c in combo)
                    out.write(f"{a}:{la} * {b}:{lb} = {rhs}\n")
    return out.getvalue()


# ---------------------------------------------------------------------------
# the constant-algebra / polynomial-module negative example


def example26_dataset(n: int, degrees: int):
    """Synthetic stand-in for the exceptional-divisor counterexample.

    The algebra is one-dimensional in every degree; the module grows like the
    lattice-point count of dilates of an (n-1)-simplex, i.e. like m^(n-1).
    The exact fibre dimensions are not derivable from first principles; the
    provenance field flags the tables as synthetic stand-ins with the same
    asymptotics.
    """
    if n < 2:
        raise ValueError("ambient dimension must be at least 2")
    if degrees < 1:
        raise ValueError("need at least one degree")
    alg = HilbertTable(
        label=f"constant-algebra-n{n}",
        entries=tuple((m, 1) for m in range(degrees)),
        provenance="synthetic stand-in: exceptional divisor algebra (constant)",
    )
    simplex = polyhedron_from_inequalities(
        [
            *[
                (tuple(1 if j == i else 0 for j in range(n - 1)), 0)
                for i in range(n - 1)
            ],
            ((-1,) * (n - 1), -1),
        ]
    )
    mod_entries = []
    for m in range(degrees):
        count = len(lattice_points(dilate(simplex, m), method="project"))
        mod_entries.append((m, count))
    mod = HilbertTable(
        label=f"simplex-growth-module-n{n}",
        entries=tuple(mod_entries),
        provenance=(
            "synthetic stand-in: big-divisor restriction module, "
            f"growth m^{n - 1}"
        ),
    )
    return alg, mod


@dataclass(frozen=True)
class NonFgVerdict:
    fired: bool
    probe_bound: int
    max_generator_degree: int
    witness: NonFgWitness | None = None


def nonfg_witness(
    alg: HilbertTable, mod: HilbertTable, probe_bound: int
) -> NonFgVerdict:
    """Counting refutation of finite generation from dimension tables.

    A module generated in degrees <= e has degree-m dimension at most
    cap_e(m) = sum_{d <= e} mod(d) * alg(m - d).  The probe sweeps every
    cutoff e that is still refutable inside the tabulated window (its cap at
    the top degree stays below the dimension observed there) and fires only
    when each such cutoff is beaten by some degree in range.  On a finitely
    generated table the cap dominates from the stabilization degree on, so
    the sweep stops short and nothing fires.
    """
    alg_dims = alg.dims()
    mod_dims = mod.dims()
    missing = [
        d
        for d in range(0, probe_bound + 1)
        if d not in alg_dims or d not in mod_dims
    ]
    if missing:
        raise InsufficientRange(
            f"tables do not cover degrees {missing[:5]} up to the probe bound"
        )
    top = probe_bound

    def cap(e, m):
        return sum(
            mod_dims[d] * alg_dims.get(m - d, 0) for d in range(0, e + 1)
        )

    max_gen_degree = -1
    for e in range(0, probe_bound + 1):
        if cap(e, top) < mod_dims[top]:
            max_gen_degree = e
        else:
            break
    first_nonzero = next((d for d, v in sorted(mod_dims.items()) if v > 0), None)
    if first_nonzero is None or max_gen_degree < first_nonzero:
        # nothing refutable beyond vacuous cutoffs: inconclusive, never a witness
        return NonFgVerdict(
            fired=False, probe_bound=probe_bound, max_generator_degree=max_gen_degree
        )
    witness = counting_refutation(
        alg_dims, mod_dims, range(0, probe_bound + 1), max_gen_degree
    )
    return NonFgVerdict(
        fired=witness is not None,
        probe_bound=probe_bound,
        max_generator_degree=max_gen_degree,
        witness=witness,
    )


# ---------------------------------------------------------------------------
# exports from live backends


def table_from_algebra(R, max_degree, label, provenance="") -> HilbertTable:
    entries = tuple((m, R.slice(m).dimension) for m in range(0, max_degree + 1))
    return HilbertTable(label=label, entries=entries, provenance=provenance)


def table_from_module(M, max_degree, label, provenance="") -> HilbertTable:
    entries = tuple(
        (m, M.slice(m).dimension) for m in range(M.offset, max_degree + 1)
    )
    return HilbertTable(label=label, entries=entries, provenance=provenance)
