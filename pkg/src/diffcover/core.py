"""Residue arithmetic and the shared array model for difference designs.

One rectangular array type carries the three design kinds used throughout:
difference matrices (DM), holey difference matrices (HDM) and difference
covering arrays (DCA), all over the cyclic group Z_n.  Entries are stored
as canonical residues in [0, n); piecewise construction formulas are
evaluated in ordinary integers and reduced once on entry.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from enum import Enum
from typing import Iterable


class DesignError(Exception):
    """Base class for domain errors raised by this package."""


class ParseError(DesignError):
    """Malformed array file: bad header, row shape, or out-of-range entry."""


class NotNormalized(DesignError):
    """Array lacks the all-zero last row/column required by the operation."""


class Kind(str, Enum):
    DM = "DM"
    HDM = "HDM"
    DCA = "DCA"


class Form(str, Enum):
    FULL = "full"
    REDUCED = "reduced"


@dataclass(frozen=True)
class Residue:
    """Canonical representative of an integer modulo a fixed positive n.

    All arithmetic reduces back into [0, n); mixing two residues requires
    equal moduli.
    """

    value: int
    modulus: int

    def __post_init__(self) -> None:
        if self.modulus < 1:
            raise ValueError(f"modulus must be positive, got {self.modulus}")
        object.__setattr__(self, "value", self.value % self.modulus)

    def _coerce(self, other: Residue | int) -> int:
        if isinstance(other, Residue):
            if other.modulus != self.modulus:
                raise ValueError(f"modulus mismatch: {self.modulus} vs {other.modulus}")
            return other.value
        return int(other)

    def __add__(self, other: Residue | int) -> Residue:
        return Residue(self.value + self._coerce(other), self.modulus)

    __radd__ = __add__

    def __sub__(self, other: Residue | int) -> Residue:
        return Residue(self.value - self._coerce(other), self.modulus)

    def __rsub__(self, other: Residue | int) -> Residue:
        return Residue(self._coerce(other) - self.value, self.modulus)

    def __mul__(self, other: Residue | int) -> Residue:
        return Residue(self.value * self._coerce(other), self.modulus)

    __rmul__ = __mul__

    def __neg__(self) -> Residue:
        return Residue(-self.value, self.modulus)

    def __int__(self) -> int:
        return self.value


@dataclass(frozen=True)
class ResidueArray:
    """Rectangular array of residues mod ``order`` with design metadata.

    ``hole`` is 0 for DM/DCA; for an HDM it is the order h of the hole
    subgroup H = {0, u, 2u, ...} with u = order/h.  ``form`` is reduced
    only for DCAs (the all-zero last row and column stripped).
    """

    kind: Kind
    order: int
    hole: int
    form: Form
    entries: tuple[tuple[int, ...], ...]

    def __post_init__(self) -> None:
        if self.order < 1:
            raise ValueError(f"order must be positive, got {self.order}")
        if not self.entries:
            raise ValueError("array must have at least one row")
        width = len(self.entries[0])
        if width < 1:
            raise ValueError("array must have at least one column")
        for row in self.entries:
            if len(row) != width:
                raise ValueError("ragged rows")
            for v in row:
                if not 0 <= v < self.order:
                    raise ValueError(f"entry {v} outside [0, {self.order})")
        if self.kind is Kind.HDM:
            if not 1 <= self.hole < self.order:
                raise ValueError(f"HDM hole must satisfy 1 <= h < n, got {self.hole}")
            if self.order % self.hole:
                raise ValueError(f"hole {self.hole} does not divide order {self.order}")
            if self.form is not Form.FULL:
                raise ValueError("HDM arrays are always in full form")
        else:
            if self.hole != 0:
                raise ValueError(f"{self.kind.value} arrays carry no hole")
        if self.form is Form.REDUCED and self.kind is not Kind.DCA:
            raise ValueError("reduced form applies to DCA arrays only")

    @classmethod
    def from_rows(
        cls,
        kind: Kind,
        order: int,
        rows: Iterable[Iterable[int]],
        hole: int = 0,
        form: Form = Form.FULL,
    ) -> ResidueArray:
        return cls(kind, order, hole, form, tuple(tuple(r) for r in rows))

    @property
    def rows(self) -> int:
        return len(self.entries)

    @property
    def columns(self) -> int:
        return len(self.entries[0])

    def column(self, j: int) -> tuple[int, ...]:
        if not 0 <= j < self.columns:
            raise IndexError(f"column {j} outside [0, {self.columns})")
        return tuple(row[j] for row in self.entries)

    @property
    def is_normalized(self) -> bool:
        """True when the last row and last column are all zero."""
        return all(v == 0 for v in self.entries[-1]) and all(
            row[-1] == 0 for row in self.entries
        )


@dataclass(frozen=True)
class DiffMultiset:
    """Multiset of differences between two columns, as residue counts."""

    modulus: int
    counts: dict[int, int]

    @property
    def total(self) -> int:
        return sum(self.counts.values())

    def __getitem__(self, d: int) -> int:
        return self.counts.get(d % self.modulus, 0)


def diff_multiset(
    a: ResidueArray, j: int, jp: int, rows: range | None = None
) -> DiffMultiset:
    """Count the differences column(j) - column(jp) mod n over ``rows``.

    ``rows`` defaults to all rows; it must lie within the array.
    """
    if j == jp:
        raise ValueError(f"need two distinct columns, got {j} twice")
    k = a.columns
    if not 0 <= j < k or not 0 <= jp < k:
        raise IndexError(f"column pair ({j}, {jp}) outside [0, {k})")
    if rows is None:
        rows = range(a.rows)
    if rows and (rows[0] < 0 or rows[-1] >= a.rows):
        raise IndexError(f"row range {rows} outside [0, {a.rows})")
    n = a.order
    counts: dict[int, int] = {}
    entries = a.entries
    for i in rows:
        row = entries[i]
        d = (row[j] - row[jp]) % n
        counts[d] = counts.get(d, 0) + 1
    return DiffMultiset(n, counts)


def to_reduced(a: ResidueArray) -> ResidueArray:
    """Strip the all-zero last row and column of a normalized full DCA."""
    if a.kind is not Kind.DCA or a.form is not Form.FULL:
        raise ValueError("to_reduced expects a full-form DCA")
    if not a.is_normalized:
        raise NotNormalized("last row and last column must be all zero")
    entries = tuple(row[:-1] for row in a.entries[:-1])
    return ResidueArray(Kind.DCA, a.order, 0, Form.REDUCED, entries)


def to_full(a: ResidueArray) -> ResidueArray:
    """Append an all-zero column and an all-zero row to a reduced DCA."""
    if a.form is not Form.REDUCED:
        raise ValueError("to_full expects a reduced-form DCA")
    entries = tuple(row + (0,) for row in a.entries) + (
        tuple(0 for _ in range(a.columns + 1)),
    )
    return ResidueArray(Kind.DCA, a.order, 0, Form.FULL, entries)


_HEADER_KEYS = ("kind", "k", "n", "h", "form", "lambda")


def write_array(a: ResidueArray, fmt: str = "text") -> str:
    """Serialize an array; ``fmt`` is "text" or "json".

    Output is canonical, so identical arrays serialize to identical bytes
    and read/write round trips are exact.
    """
    lam = a.rows // a.order if a.kind is Kind.DM and a.rows % a.order == 0 else None
    if fmt == "json":
        obj: dict[str, object] = {
            "kind": a.kind.value,
            "k": a.columns,
            "n": a.order,
            "h": a.hole,
            "form": a.form.value,
        }
        if lam is not None:
            obj["lambda"] = lam
        obj["entries"] = [list(row) for row in a.entries]
        return json.dumps(obj) + "\n"
    if fmt != "text":
        raise ValueError(f"unknown format {fmt!r}")
    header = f"kind={a.kind.value} k={a.columns} n={a.order} h={a.hole} form={a.form.value}"
    if lam is not None:
        header += f" lambda={lam}"
    lines = [header]
    lines.extend(" ".join(str(v) for v in row) for row in a.entries)
    return "\n".join(lines) + "\n"


def _parse_header(line: str) -> dict[str, str]:
    fields: dict[str, str] = {}
    for token in line.split():
        key, sep, value = token.partition("=")
        if not sep or key not in _HEADER_KEYS or key in fields:
            raise ParseError(f"bad header token {token!r}")
        fields[key] = value
    missing = [k for k in ("kind", "k", "n", "h", "form") if k not in fields]
    if missing:
        raise ParseError(f"header missing {', '.join(missing)}")
    return fields


def _expected_rows(kind: Kind, form: Form, n: int, h: int, rows: int, lam: int | None) -> None:
    if kind is Kind.DCA:
        want = n + 1 if form is Form.FULL else n
        if rows != want:
            raise ParseError(f"{form.value} DCA over Z_{n} needs {want} rows, got {rows}")
    elif kind is Kind.HDM:
        if rows % (n - h):
            raise ParseError(f"HDM over Z_{n} with hole {h} needs a multiple of {n - h} rows, got {rows}")
    else:
        if rows % n:
            raise ParseError(f"DM over Z_{n} needs a multiple of {n} rows, got {rows}")
        if lam is not None and rows != lam * n:
            raise ParseError(f"lambda={lam} inconsistent with {rows} rows over Z_{n}")


def _read_json(text: str) -> ResidueArray:
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"bad JSON: {exc}") from exc
    if not isinstance(obj, dict):
        raise ParseError("JSON array file must be an object")
    try:
        kind = Kind(obj["kind"])
        form = Form(obj["form"])
        k, n, h = int(obj["k"]), int(obj["n"]), int(obj["h"])
        entries = [[int(v) for v in row] for row in obj["entries"]]
    except (KeyError, ValueError, TypeError) as exc:
        raise ParseError(f"bad JSON fields: {exc}") from exc
    lam = int(obj["lambda"]) if "lambda" in obj else None
    if any(len(row) != k for row in entries):
        raise ParseError(f"rows must have {k} entries")
    if not entries:
        raise ParseError("no entry rows")
    _expected_rows(kind, form, n, h, len(entries), lam)
    try:
        return ResidueArray.from_rows(kind, n, entries, hole=h, form=form)
    except ValueError as exc:
        raise ParseError(str(exc)) from exc


def read_array(text: str) -> ResidueArray:
    """Parse an array from its text or JSON serialization.

    Text files may carry ``#`` comments; the first content line is the
    header.  Row counts must match the declared kind and form.
    """
    if text.lstrip().startswith("{"):
        return _read_json(text)
    lines = []
    for raw in text.splitlines():
        content = raw.split("#", 1)[0].strip()
        if content:
            lines.append(content)
    if not lines:
        raise ParseError("empty file")
    fields = _parse_header(lines[0])
    try:
        kind = Kind(fields["kind"])
        form = Form(fields["form"])
        k, n, h = int(fields["k"]), int(fields["n"]), int(fields["h"])
        lam = int(fields["lambda"]) if "lambda" in fields else None
    except ValueError as exc:
        raise ParseError(f"bad header value: {exc}") from exc
    entries = []
    for line in lines[1:]:
        try:
            row = [int(tok) for tok in line.split()]
        except ValueError as exc:
            raise ParseError(f"bad entry in row {len(entries)}: {exc}") from exc
        if len(row) != k:
            raise ParseError(f"row {len(entries)} has {len(row)} entries, expected {k}")
        for v in row:
            if not 0 <= v < n:
                raise ParseError(f"entry {v} outside [0, {n})")
        entries.append(row)
    if not entries:
        raise ParseError("no entry rows")
    _expected_rows(kind, form, n, h, len(entries), lam)
    try:
        return ResidueArray.from_rows(kind, n, entries, hole=h, form=form)
    except ValueError as exc:
        raise ParseError(str(exc)) from exc
