"""Constructions of cyclic DCAs: three direct parametric families, the
searched small-order tables, prime-field difference matrices, and the
composition combinators (hole insertion and two product forms).

Every family builds a reduced 2m x 3 array whose full form is a cyclic
DCA(4, 2m+1; 2m) with zero occurring twice per column and every off-pair
difference multiset equal to the nonzero residues with n/2 doubled.
Constructors validate their parameters; the verifiers in
:mod:`diffcover.verify` independently certify every output.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd, isqrt

from . import tables
from .core import DesignError, Form, Kind, ResidueArray, to_full
from .verify import OddOrderStrict, verify_dca, verify_dm, verify_hdm


class BadParams(DesignError):
    """Family parameters violate a gcd, congruence, or range condition."""


class BadIndex(BadParams):
    """Family index outside the admissible residue classes."""


class UnknownOrder(DesignError):
    """No stored table for this order."""


class NotPrime(DesignError):
    pass


class TooManyColumns(DesignError):
    pass


class IngredientInvalid(DesignError):
    """A combinator input failed its verifier or shape requirements."""


class MismatchedK(DesignError):
    """Combinator inputs have different column counts."""


class NoMethod(DesignError):
    """No implemented family covers the requested order."""


@dataclass(frozen=True)
class OddFamilyParams:
    """Parameters (m odd, f even) of the doubled-odd-order family."""

    m: int
    f: int
    i: int | None = None

    def __post_init__(self) -> None:
        m, f = self.m, self.f
        n = 2 * m
        if m < 2:
            raise BadParams(f"m must be at least 2, got {m}")
        if gcd(f, n) != 2:
            raise BadParams(f"gcd(f, 2m) = gcd({f}, {n}) = {gcd(f, n)}, expected 2")
        if gcd(f + 2, n) != 2:
            raise BadParams(f"gcd(f+2, 2m) = gcd({f + 2}, {n}) = {gcd(f + 2, n)}, expected 2")
        if (f * f + f + 1 - m) % n:
            raise BadParams(f"f^2+f+1 = {f * f + f + 1} is not {m} mod {n}")
        if not m + 3 <= f <= n - 4:
            raise BadParams(f"f = {f} outside [m+3, 2m-4] = [{m + 3}, {n - 4}]")
        # Consequences of the assumptions; failures would be internal bugs.
        assert gcd(f, m) == 1 and gcd(f + 1, m) == 1 and gcd(f - 1, m) == 1
        assert gcd(2 * f + 1, m) == 1 and (m * f) % n == 0


@dataclass(frozen=True)
class FourMFamilyParams:
    """Parameters (m = 2 mod 4, f even) of the quadrupled-order family."""

    m: int
    f: int
    k: int | None = None

    def __post_init__(self) -> None:
        m, f = self.m, self.f
        n = 4 * m
        if m % 4 != 2:
            raise BadParams(f"m must be 2 mod 4, got {m}")
        if gcd(f, n) != 2:
            raise BadParams(f"gcd(f, 4m) = gcd({f}, {n}) = {gcd(f, n)}, expected 2")
        if gcd(f - 1, n) != 1:
            raise BadParams(f"gcd(f-1, 4m) = gcd({f - 1}, {n}) = {gcd(f - 1, n)}, expected 1")
        if (f * f + f - 2 - 2 * m) % n:
            raise BadParams(f"f^2+f-2 = {f * f + f - 2} is not {2 * m} mod {n}")
        assert gcd(2 * m + 2 - f, n) == 4 and gcd(2 * m - f + 1, n) == 1
        assert gcd(2 * m - 2 * f + 2, n) == 2 and (m * f - 2 * m) % n == 0


@dataclass(frozen=True)
class SixMuFamilyParams:
    """Parameter (odd mu >= 1) of the order 6*mu+4 family."""

    mu: int

    def __post_init__(self) -> None:
        if self.mu < 1 or self.mu % 2 == 0:
            raise BadParams(f"mu must be an odd positive integer, got {self.mu}")


def _reduced_dca(order: int, rows: list[tuple[int, int, int]]) -> ResidueArray:
    return ResidueArray.from_rows(Kind.DCA, order, rows, form=Form.REDUCED)


def _interval_pieces(n: int, bounds: list[tuple[int, int]]) -> list[int]:
    """Map residue -> interval index; the intervals must partition [0, n)."""
    piece = [-1] * n
    for idx, (lo, hi) in enumerate(bounds):
        lo %= n
        hi %= n
        if lo > hi:
            raise BadParams(f"interval {idx} is empty after reduction: [{lo}, {hi}]")
        for x in range(lo, hi + 1):
            if piece[x] != -1:
                raise BadParams(f"intervals overlap at {x}")
            piece[x] = idx
    if any(p == -1 for p in piece):
        raise BadParams("intervals do not cover the residues")
    return piece


def construct_odd(m: int, f: int) -> ResidueArray:
    """Reduced cyclic DCA(4, 2m+1; 2m) for odd m, driven by an even
    multiplier f with gcd(f, 2m) = gcd(f+2, 2m) = 2, f^2+f+1 = m mod 2m
    and m+3 <= f <= 2m-4.

    Row a carries (a, b(a), c(a)) where b jumps by f and c by -(f+1) on
    each of four intervals of the first column.
    """
    OddFamilyParams(m, f)
    n = 2 * m
    piece = _interval_pieces(
        n, [(0, m + f), (m + f + 1, m - 1), (m, m - f - 1), (m - f, n - 1)]
    )
    rows = []
    for a in range(n):
        idx = piece[a]
        b = (a * f + m) if idx < 2 else ((a + 1) * f + m - 1)
        if idx == 0:
            c = -(a - 1) * (f + 1) - 2
        elif idx == 1:
            c = -(a - 1) * (f + 1) + m - 2
        elif idx == 2:
            c = -a * (f + 1) + m
        else:
            c = -a * (f + 1)
        rows.append((a, b % n, c % n))
    return _reduced_dca(n, rows)


def params_odd(i: int) -> OddFamilyParams:
    """Parameters of the infinite subfamily indexed by i >= 0, i != 2 mod 3:
    m = 2(2i^2+7i+6)+1 and f = m+3+2i."""
    if i < 0 or i % 3 == 2:
        raise BadIndex(f"index must be non-negative and not 2 mod 3, got {i}")
    m = 2 * (2 * i * i + 7 * i + 6) + 1
    return OddFamilyParams(m, m + 3 + 2 * i, i)


def construct_4m_general(m: int, f: int) -> ResidueArray:
    """Reduced cyclic DCA(4, 4m+1; 4m) for m = 2 mod 4 and even f with
    gcd(f, 4m) = 2, gcd(f-1, 4m) = 1 and f^2+f-2 = 2m mod 4m."""
    FourMFamilyParams(m, f)
    n = 4 * m
    t = 2 * m - f + 2
    rows = []
    for a in range(n):
        idx = a // m
        b = (a + 1) * f - 1 if idx < 2 else a * f
        if idx == 0:
            c = (a + 1) * t - 1
        elif idx == 1:
            c = a * t - m
        elif idx == 2:
            c = (a + 1) * t + m - 1
        else:
            c = a * t
        rows.append((a, b % n, c % n))
    return _reduced_dca(n, rows)


def construct_4m(k: int) -> ResidueArray:
    """Subfamily of order 16k+8 with m = 4k+2 and f = 2m-2, defined for
    k >= 0 with k != 1 mod 3."""
    if k < 0 or k % 3 == 1:
        raise BadIndex(f"index must be non-negative and not 1 mod 3, got {k}")
    m = 4 * k + 2
    return construct_4m_general(m, 2 * m - 2)


_SIX_MU_A_OFFSETS = (4, 2, 4, 3, 1, 3)  # 3*alpha + offset (+3*mu on even pieces)


def construct_6mu(mu: int) -> ResidueArray:
    """Reduced cyclic DCA(4, 6mu+5; 6mu+4) for odd mu >= 1.

    Unlike the other families the first column is itself a non-identity
    permutation of the residues; rows are indexed by alpha over six
    intervals.
    """
    SixMuFamilyParams(mu)
    n = 6 * mu + 4
    bounds = [
        (0, mu - 1),
        (mu, 2 * mu),
        (2 * mu + 1, 3 * mu + 1),
        (3 * mu + 2, 4 * mu + 2),
        (4 * mu + 3, 5 * mu + 2),
        (5 * mu + 3, 6 * mu + 3),
    ]
    rows = []
    for idx, (lo, hi) in enumerate(bounds):
        high_piece = idx in (0, 2, 3, 5)
        for alpha in range(lo, hi + 1):
            a = 3 * alpha + _SIX_MU_A_OFFSETS[idx] + (3 * mu if high_piece else 0)
            b = 3 * alpha * (mu + 1) + (2 * mu + 2 if idx < 3 else 2 * mu + 1)
            c = alpha * (3 * mu + 4) + 5 * mu + 4
            rows.append((a % n, b % n, c % n))
    arr = _reduced_dca(n, rows)
    assert sorted(arr.column(0)) == list(range(n))
    return arr


def construct_from_table(order: int) -> ResidueArray:
    """Reduced DCA(4, order+1; order) from the stored tables (order 6 and
    the eight computer-searched orders 24..54)."""
    if order == 6:
        cols = tables.BASE_6_COLUMNS
    elif order in tables.SEARCHED_THIRD_COLUMNS:
        cols = (
            tuple(range(order)),
            tables.odd_even_column(order),
            tables.SEARCHED_THIRD_COLUMNS[order],
        )
    else:
        raise UnknownOrder(f"no stored table for order {order}")
    return _reduced_dca(order, list(zip(*cols)))


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    if p % 2 == 0:
        return p == 2
    d = 3
    while d * d <= p:
        if p % d == 0:
            return False
        d += 2
    return True


def dm_prime(p: int, k: int) -> ResidueArray:
    """Cyclic DM(p, k; 1) over Z_p, p prime, p >= k: the multiplication
    table q(i, j) = i*(j+1) for j < k-1 with an all-zero last column, rows
    rotated so the zero row comes last."""
    if not _is_prime(p):
        raise NotPrime(f"{p} is not prime")
    if k > p:
        raise TooManyColumns(f"k = {k} exceeds p = {p}")
    if k < 1:
        raise ValueError(f"k must be positive, got {k}")
    rows = []
    for i in list(range(1, p)) + [0]:
        rows.append(tuple((i * (j + 1)) % p for j in range(k - 1)) + (0,))
    return ResidueArray.from_rows(Kind.DM, p, rows)


def _require(condition: bool, message: str) -> None:
    if not condition:
        raise IngredientInvalid(message)


def insert_hole(hdm: ResidueArray, dca_hole: ResidueArray) -> ResidueArray:
    """Fill the hole of an HDM(k, n; h) with a strict DCA(k, h+1; h) whose
    entries are embedded into the hole subgroup by multiplying by u = n/h,
    yielding a full strict DCA(k, n+1; n)."""
    _require(hdm.kind is Kind.HDM, "first ingredient must be an HDM")
    _require(dca_hole.kind is Kind.DCA, "second ingredient must be a DCA")
    full_hole = to_full(dca_hole) if dca_hole.form is Form.REDUCED else dca_hole
    if hdm.columns != full_hole.columns:
        raise MismatchedK(f"column counts differ: {hdm.columns} vs {full_hole.columns}")
    _require(verify_hdm(hdm).passed, "HDM ingredient fails verification")
    n, h = hdm.order, hdm.hole
    _require(dca_hole.order == h, f"hole DCA order {dca_hole.order} != hole size {h}")
    try:
        _require(verify_dca(dca_hole, strict=True).passed, "hole DCA fails strict verification")
    except OddOrderStrict as exc:
        raise IngredientInvalid(str(exc)) from exc
    _require(full_hole.is_normalized, "hole DCA must have zero last row and column")
    u = n // h
    embedded = tuple(tuple((v * u) % n for v in row) for row in full_hole.entries)
    out = ResidueArray(Kind.DCA, n, 0, Form.FULL, hdm.entries + embedded)
    assert verify_dca(out, strict=True).passed, "hole insertion produced an invalid DCA"
    return out


def hdm_product(hdm: ResidueArray, dm: ResidueArray) -> ResidueArray:
    """Product of an HDM(k, n; h) with a DM(n', k; 1): entries
    a(i,j) + n*b(i',j) over Z_{n n'}, giving an HDM(k, n n'; h n')."""
    _require(hdm.kind is Kind.HDM, "first ingredient must be an HDM")
    _require(dm.kind is Kind.DM, "second ingredient must be a DM")
    if hdm.columns != dm.columns:
        raise MismatchedK(f"column counts differ: {hdm.columns} vs {dm.columns}")
    _require(verify_hdm(hdm).passed, "HDM ingredient fails verification")
    dm_report = verify_dm(dm)
    _require(dm_report.passed, "DM ingredient fails verification")
    _require(dm_report.meta["lambda"] == 1, "DM ingredient must have lambda = 1")
    n = hdm.order
    big = n * dm.order
    rows = []
    for arow in hdm.entries:
        for brow in dm.entries:
            rows.append(tuple((a + n * b) % big for a, b in zip(arow, brow)))
    out = ResidueArray.from_rows(Kind.HDM, big, rows, hole=hdm.hole * dm.order)
    # The product formula is not trusted: every output is re-certified.
    assert verify_hdm(out).passed, "product produced an invalid HDM"
    return out


def dca_product(dm_a: ResidueArray, dm_b: ResidueArray, dca_b: ResidueArray) -> ResidueArray:
    """Product of DM(n, k; 1), DM(n', k; 1) and a strict DCA(k, n'+1; n'):
    rows x with x mod n != n-1 carry a(x mod n, j) + n*b(x div n, j), the
    remaining rows carry n*c(x div n, j), giving a full strict
    DCA(k, n n'+1; n n').  All three ingredients must be normalized."""
    for name, arr, kind in (("first", dm_a, Kind.DM), ("second", dm_b, Kind.DM), ("third", dca_b, Kind.DCA)):
        _require(arr.kind is kind, f"{name} ingredient has kind {arr.kind.value}, expected {kind.value}")
    full_c_width = dca_b.columns + 1 if dca_b.form is Form.REDUCED else dca_b.columns
    if not dm_a.columns == dm_b.columns == full_c_width:
        raise MismatchedK(
            f"column counts differ: {dm_a.columns}, {dm_b.columns}, {full_c_width}"
        )
    for name, arr in (("first", dm_a), ("second", dm_b)):
        report = verify_dm(arr)
        _require(report.passed, f"{name} DM ingredient fails verification")
        _require(report.meta["lambda"] == 1, f"{name} DM ingredient must have lambda = 1")
        _require(arr.is_normalized, f"{name} DM ingredient must have zero last row and column")
    try:
        _require(verify_dca(dca_b, strict=True).passed, "DCA ingredient fails strict verification")
    except OddOrderStrict as exc:
        raise IngredientInvalid(str(exc)) from exc
    full_c = to_full(dca_b) if dca_b.form is Form.REDUCED else dca_b
    _require(full_c.is_normalized, "DCA ingredient must have zero last row and column")
    _require(full_c.order == dm_b.order, "DCA ingredient order must match the second DM")
    n, np_ = dm_a.order, dm_b.order
    big = n * np_
    k = dm_a.columns
    rows = []
    for x in range(big):
        i, ip = x % n, x // n
        if i != n - 1:
            rows.append(tuple((dm_a.entries[i][j] + n * dm_b.entries[ip][j]) % big for j in range(k)))
        else:
            rows.append(tuple((n * full_c.entries[ip][j]) % big for j in range(k)))
    rows.append(tuple((n * full_c.entries[np_][j]) % big for j in range(k)))
    out = ResidueArray.from_rows(Kind.DCA, big, rows)
    assert verify_dca(out, strict=True).passed, "product produced an invalid DCA"
    return out


def _invert_odd_index(order: int) -> int | None:
    """Solve 2(2i^2+7i+6)+1 = order/2 for an admissible integer i."""
    m2 = order // 2
    if m2 % 2 == 0 or (m2 - 1) % 2:
        return None
    k = (m2 - 1) // 2
    disc = 8 * k + 1
    s = isqrt(disc)
    if s * s != disc or (s - 7) % 4:
        return None
    i = (s - 7) // 4
    if i < 0 or i % 3 == 2:
        return None
    return i


def construct_auto(order: int) -> tuple[ResidueArray, str]:
    """Construct a reduced strict DCA of the given even order by the first
    applicable method: stored table, odd-f family, four-m family, six-mu
    family.  Returns the array and a method tag."""
    if order % 2 or order < 6:
        raise ValueError(f"order must be even and at least 6, got {order}")
    if order in tables.TABLE_ORDERS:
        return construct_from_table(order), "table"
    i = _invert_odd_index(order)
    if i is not None:
        params = params_odd(i)
        return construct_odd(params.m, params.f), f"odd-f i={i}"
    if order % 16 == 8:
        k = (order - 8) // 16
        if k % 3 != 1:
            return construct_4m(k), f"four-m k={k}"
    if order % 12 == 10:
        mu = (order - 4) // 6
        return construct_6mu(mu), f"six-mu mu={mu}"
    raise NoMethod(f"no implemented family covers order {order}")


def construct_by_method(order: int, method: str = "auto") -> tuple[ResidueArray, str]:
    """Construct by a named method: auto, table, odd-f, four-m or six-mu."""
    if order % 2 or order < 6:
        raise ValueError(f"order must be even and at least 6, got {order}")
    if method == "auto":
        return construct_auto(order)
    if method == "table":
        return construct_from_table(order), "table"
    if method == "odd-f":
        i = _invert_odd_index(order)
        if i is None:
            raise NoMethod(f"odd-f family does not cover order {order}")
        params = params_odd(i)
        return construct_odd(params.m, params.f), f"odd-f i={i}"
    if method == "four-m":
        if order % 16 != 8 or ((order - 8) // 16) % 3 == 1:
            raise NoMethod(f"four-m family does not cover order {order}")
        k = (order - 8) // 16
        return construct_4m(k), f"four-m k={k}"
    if method == "six-mu":
        if order % 12 != 10:
            raise NoMethod(f"six-mu family does not cover order {order}")
        mu = (order - 4) // 6
        return construct_6mu(mu), f"six-mu mu={mu}"
    raise ValueError(f"unknown method {method!r}")


def methods_for_order(order: int) -> tuple[str, ...]:
    """All direct methods applicable to an even order (without building)."""
    out = []
    if order in tables.TABLE_ORDERS:
        out.append("table")
    if _invert_odd_index(order) is not None:
        out.append("odd-f")
    if order % 16 == 8 and ((order - 8) // 16) % 3 != 1:
        out.append("four-m")
    if order % 12 == 10:
        out.append("six-mu")
    return tuple(out)


@dataclass(frozen=True)
class SpectrumEntry:
    """Spectrum row: which internal methods construct the order, and how
    the published record resolves it otherwise."""

    order: int
    constructible_by: tuple[str, ...]
    status: str  # "internal", "covered-externally" or "open"
    source: str

    def to_obj(self) -> dict[str, object]:
        return {
            "order": self.order,
            "constructible_by": list(self.constructible_by),
            "status": self.status,
            "source": self.source,
        }


def spectrum_report(lo: int, hi: int) -> list[SpectrumEntry]:
    """Spectrum table for even orders lo..hi (bounds even, lo >= 6)."""
    if lo % 2 or hi % 2:
        raise ValueError(f"bounds must be even, got {lo}..{hi}")
    if not 6 <= lo <= hi:
        raise ValueError(f"need 6 <= min <= max, got {lo}..{hi}")
    out = []
    for order in range(lo, hi + 1, 2):
        methods = methods_for_order(order)
        if methods:
            status, source = "internal", methods[0]
        elif order in tables.OPEN_ORDERS:
            status, source = "open", "open"
        else:
            label = tables.external_source(order)
            if label is None:
                # Not in any transcribed list; the published record still
                # covers every even order except 146.
                label = "unlisted"
            status, source = "covered-externally", label
        out.append(SpectrumEntry(order, methods, status, source))
    return out
