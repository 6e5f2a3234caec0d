"""Prime-knot tables: ingestion, exact multiplicity counts, and the
asymptotic multiplicity model.

A catalog is an immutable, validated list of prime-knot records loaded
from CSV (``name,crossings,genus,alternating,torus,alexander`` with the
Alexander coefficients space-separated, lowest degree first).  The unknot
is never a catalog row; it is the semigroup identity.

Multiplicity counts come in two modes.  Exact counts N_{n,g} enumerate
catalog rows with given crossing number and genus.  The asymptotic model
is C_g n^{6g-4} with C_g = C^g/(6g)! and C between 400 and 2^20/3^6; the
upper value is the default since the convergence threshold beta_plus is
derived from it.
"""

from __future__ import annotations

import csv
import math
from dataclasses import dataclass, field
from math import factorial
from pathlib import Path
from typing import Literal, Optional, Union

from .errors import CatalogError

__all__ = [
    "KnotRecord",
    "Catalog",
    "MultiplicityModel",
    "DEFAULT_C",
    "LOWER_C",
    "load_catalog",
    "builtin_catalog",
    "builtin_catalog_path",
    "count_exact",
    "count_asymptotic",
    "count_weight",
    "weights_with_counts",
]

#: Upper and lower admissible values of the asymptotic constant C.
DEFAULT_C = 2**20 / 3**6
LOWER_C = 400.0

_FIELDS = ("name", "crossings", "genus", "alternating", "torus", "alexander")


@dataclass(frozen=True)
class KnotRecord:
    """One prime knot: its classical invariants and Alexander coefficients."""

    name: str
    crossing_number: int
    genus: int
    alternating: bool
    torus: bool
    alexander_coeffs: tuple[int, ...]
    wirtinger: Optional[str] = None

    def validate(self) -> None:
        if self.crossing_number < 3:
            raise CatalogError(
                f"record {self.name}: prime knots need crossing number >= 3, "
                f"got {self.crossing_number}"
            )
        if self.genus < 1:
            raise CatalogError(
                f"record {self.name}: prime knots need genus >= 1, got {self.genus}"
            )
        coeffs = self.alexander_coeffs
        if not coeffs:
            raise CatalogError(f"record {self.name}: empty Alexander coefficients")
        if abs(sum(coeffs)) != 1:
            raise CatalogError(
                f"record {self.name}: Alexander polynomial must evaluate to +-1 "
                f"at t=1, got {sum(coeffs)}"
            )
        if list(coeffs) != list(reversed(coeffs)):
            raise CatalogError(
                f"record {self.name}: Alexander coefficients must be palindromic, "
                f"got {list(coeffs)}"
            )

    @property
    def weight(self) -> int:
        """Cr(K) + g(K), the exponent weight of this prime knot."""
        return self.crossing_number + self.genus

    @property
    def top_coefficient(self) -> int:
        """|leading Alexander coefficient| (a multiplicative invariant)."""
        return abs(self.alexander_coeffs[-1])


@dataclass(frozen=True)
class Catalog:
    """An immutable ordered table of prime knots with a name index."""

    records: tuple[KnotRecord, ...]
    index: dict[str, KnotRecord] = field(default_factory=dict, compare=False)

    def __post_init__(self):
        idx = {}
        for rec in self.records:
            if rec.name in idx:
                raise CatalogError(f"duplicate record name {rec.name}")
            idx[rec.name] = rec
        object.__setattr__(self, "index", idx)

    def __len__(self) -> int:
        return len(self.records)

    def __iter__(self):
        return iter(self.records)

    def __contains__(self, name: str) -> bool:
        return name in self.index

    def get(self, name: str) -> KnotRecord:
        try:
            return self.index[name]
        except KeyError:
            raise CatalogError(f"unknown prime knot {name!r}") from None

    def filtered(self, mode: Literal["all", "alternating", "torus-free"]) -> "Catalog":
        if mode == "all":
            return self
        if mode == "alternating":
            keep = tuple(r for r in self.records if r.alternating)
        elif mode == "torus-free":
            keep = tuple(r for r in self.records if not r.torus)
        else:
            raise CatalogError(f"unknown filter {mode!r}")
        return Catalog(records=keep)


@dataclass(frozen=True)
class MultiplicityModel:
    """Asymptotic multiplicity model N_{n,g} ~ (C^g/(6g)!) n^{6g-4}."""

    mode: Literal["exact", "asymptotic"] = "asymptotic"
    C: float = DEFAULT_C
    g_max: int = 64
    n_max: int = 10_000

    def __post_init__(self):
        if self.mode == "asymptotic" and not LOWER_C <= self.C <= DEFAULT_C:
            raise CatalogError(
                f"asymptotic constant C must lie in [{LOWER_C}, {DEFAULT_C}], "
                f"got {self.C}"
            )


def _parse_bool(text: str, line_no: int, col: str) -> bool:
    t = text.strip().lower()
    if t in ("1", "true", "yes"):
        return True
    if t in ("0", "false", "no"):
        return False
    raise CatalogError(f"line {line_no}: bad boolean {text!r} in column {col}")


def load_catalog(
    path: Union[str, Path],
    filter: Literal["all", "alternating", "torus-free"] = "all",
) -> Catalog:
    """Load and validate a knot table from CSV.

    Parse errors carry the 1-based line number; invariant violations carry
    the record name.
    """
    path = Path(path)
    if not path.exists():
        raise CatalogError(f"catalog file not found: {path}")
    records = []
    with path.open(newline="") as handle:
        reader = csv.reader(handle)
        try:
            header = next(reader)
        except StopIteration:
            raise CatalogError("empty catalog file") from None
        if tuple(h.strip() for h in header) != _FIELDS:
            raise CatalogError(
                f"line 1: expected header {','.join(_FIELDS)}, got {','.join(header)}"
            )
        for line_no, row in enumerate(reader, start=2):
            if not row or all(not cell.strip() for cell in row):
                continue
            if len(row) != len(_FIELDS):
                raise CatalogError(
                    f"line {line_no}: expected {len(_FIELDS)} columns, got {len(row)}"
                )
            name = row[0].strip()
            try:
                crossings = int(row[1])
                genus = int(row[2])
            except ValueError as exc:
                raise CatalogError(f"line {line_no}: {exc}") from None
            alternating = _parse_bool(row[3], line_no, "alternating")
            torus = _parse_bool(row[4], line_no, "torus")
            try:
                coeffs = tuple(int(tok) for tok in row[5].split())
            except ValueError as exc:
                raise CatalogError(
                    f"line {line_no}: bad alexander coefficients: {exc}"
                ) from None
            rec = KnotRecord(
                name=name,
                crossing_number=crossings,
                genus=genus,
                alternating=alternating,
                torus=torus,
                alexander_coeffs=coeffs,
            )
            rec.validate()
            records.append(rec)
    return Catalog(records=tuple(records)).filtered(filter)


def builtin_catalog_path() -> Path:
    """Path of the bundled prime-knot table (all knots through 8 crossings)."""
    return Path(__file__).parent / "data" / "knots.csv"


def builtin_catalog(
    filter: Literal["all", "alternating", "torus-free"] = "all",
) -> Catalog:
    """The bundled table of the 35 prime knots with at most 8 crossings."""
    return load_catalog(builtin_catalog_path(), filter=filter)


def count_exact(cat: Catalog, n: int, g: int) -> int:
    """N_{n,g}: number of catalog rows with crossing number n and genus g."""
    return sum(1 for r in cat if r.crossing_number == n and r.genus == g)


def count_asymptotic(model: MultiplicityModel, n: int, g: int) -> float:
    """The model value (C^g/(6g)!) n^{6g-4}; zero for g <= 0 (no unknot row)."""
    if model.mode != "asymptotic":
        raise CatalogError("count_asymptotic needs a model with mode='asymptotic'")
    if g <= 0 or n <= 0:
        return 0.0
    try:
        return model.C**g / factorial(6 * g) * float(n) ** (6 * g - 4)
    except OverflowError:
        # n^(6g-4) alone can exceed float range even when the (6g)! in
        # the denominator would pull the value back; settle it in logs
        log_value = (
            g * math.log(model.C)
            - math.lgamma(6 * g + 1)
            + (6 * g - 4) * math.log(n)
        )
        return math.exp(log_value) if log_value <= 700.0 else math.inf


def count_weight(cat_or_model: Union[Catalog, MultiplicityModel], n: int) -> float:
    """Number (exact) or model count of prime knots with Cr + g = n.

    Exact mode counts catalog rows; asymptotic mode evaluates the
    truncated sum over genus of (C^g/(6g)!) (n-g+1)^{6g-4}, the model's
    count of weight-n knots with the crossing number n-g shifted by one
    to keep the power-law argument positive through g = n.
    """
    if isinstance(cat_or_model, Catalog):
        return float(sum(1 for r in cat_or_model if r.weight == n))
    model = cat_or_model
    total = 0.0
    for g in range(1, min(n, model.g_max) + 1):
        total += count_asymptotic(model, n - g + 1, g)
    return total


def weights_with_counts(
    cat: Catalog,
) -> list[tuple[int, int]]:
    """Sorted (weight, multiplicity) pairs over the catalog's prime knots."""
    counts: dict[int, int] = {}
    for rec in cat:
        counts[rec.weight] = counts.get(rec.weight, 0) + 1
    return sorted(counts.items())
