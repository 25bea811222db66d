"""BPS invariant tables of the local plane and the series built from them.

The table maps (genus, degree) to an integer count n_{g,d}, with the vanishing
constraint n_{g,d} = 0 for g > g(d) = (d-1)(d-2)/2.  Two derived series:

* genus_series(d):  sum_g n_{g,d} (-1)^g (y^(1/2) - y^(-1/2))^(2g), a
  palindromic Laurent polynomial.
* local_series(d):  sum over divisors kappa of d of
  -genus_series(d/kappa)(y^kappa) / (kappa (y^(kappa/2) - y^(-kappa/2))^2),
  the all-multiple-cover local series, a rational function.

Tables are treated as untrusted input; loading validates the genus bound.
"""

from __future__ import annotations

import json
from fractions import Fraction
from importlib import resources

from .errors import InputError, MissingGVError
from .exactalg import HalfLaurent, RatFun, sqrt_diff

BUNDLED_GV = "gv_local_p2_d6.json"
BUNDLED_REDUCED = "reduced_poincare_d10.json"


def genus_bound(d: int) -> int:
    return (d - 1) * (d - 2) // 2


class GVTable:
    """Mapping (g, d) -> integer invariant, with the genus-vanishing bound."""

    def __init__(self, entries: dict[tuple[int, int], int] | None = None):
        self._e: dict[tuple[int, int], int] = {}
        if entries:
            for (g, d), n in entries.items():
                self.set(g, d, n)

    def set(self, g: int, d: int, n: int):
        if d < 1 or g < 0:
            raise InputError(f"bad table index (g={g}, d={d})")
        if n and g > genus_bound(d):
            raise InputError(
                f"n_(g={g}, d={d}) = {n} violates vanishing beyond genus {genus_bound(d)}")
        if n:
            self._e[(g, d)] = int(n)

    def get(self, g: int, d: int) -> int:
        return self._e.get((g, d), 0)

    def has_degree(self, d: int) -> bool:
        return any(dd == d for (_, dd) in self._e)

    def degrees(self) -> list[int]:
        return sorted({d for (_, d) in self._e})

    def max_degree(self) -> int:
        return max((d for (_, d) in self._e), default=0)

    def row(self, d: int) -> dict[int, int]:
        return {g: n for (g, dd), n in self._e.items() if dd == d}

    def require_degree(self, d: int):
        if not self.has_degree(d):
            raise MissingGVError(f"no invariants for degree {d}")

    def __eq__(self, other):
        if not isinstance(other, GVTable):
            return NotImplemented
        return self._e == other._e

    def __repr__(self):
        return f"GVTable({len(self._e)} entries through degree {self.max_degree()})"

    # -- serialization -----------------------------------------------------

    @staticmethod
    def from_json_dict(doc: dict) -> "GVTable":
        if not isinstance(doc, dict) or doc.get("surface") != "P2":
            raise InputError('expected an object with "surface": "P2"')
        entries = doc.get("entries")
        if not isinstance(entries, list):
            raise InputError('expected an "entries" array')
        table = GVTable()
        for i, row in enumerate(entries):
            try:
                d = int(row["d"])
                g = int(row["g"])
                n = int(str(row["n"]))
            except (KeyError, TypeError, ValueError) as exc:
                raise InputError(f"bad entry #{i}: {row!r}") from exc
            table.set(g, d, n)
        return table

    def to_json_dict(self) -> dict:
        entries = [{"d": d, "g": g, "n": str(n)}
                   for (g, d), n in sorted(self._e.items(), key=lambda kv: (kv[0][1], kv[0][0]))]
        return {"surface": "P2", "entries": entries}


def load_gv_file(path) -> GVTable:
    try:
        with open(path, encoding="utf-8") as fh:
            doc = json.load(fh)
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise InputError(f"{path}: invalid JSON at line {exc.lineno}: {exc.msg}") from exc
    return GVTable.from_json_dict(doc)


def bundled_gv_table() -> GVTable:
    text = resources.files("sheafpoly.data").joinpath(BUNDLED_GV).read_text("utf-8")
    return GVTable.from_json_dict(json.loads(text))


def load_reduced_file(path) -> dict[int, tuple[int, ...]]:
    """Read reduced-polynomial rows [{"d": int, "coeffs": [str, ...]}, ...]."""
    try:
        with open(path, encoding="utf-8") as fh:
            doc = json.load(fh)
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise InputError(f"{path}: invalid JSON at line {exc.lineno}: {exc.msg}") from exc
    return reduced_rows_from_json(doc)


def reduced_rows_from_json(doc) -> dict[int, tuple[int, ...]]:
    if isinstance(doc, dict) and "rows" in doc:
        doc = doc["rows"]
    if not isinstance(doc, list):
        raise InputError("expected an array of reduced-polynomial rows")
    rows: dict[int, tuple[int, ...]] = {}
    for i, row in enumerate(doc):
        try:
            d = int(row["d"])
            coeffs = tuple(int(str(c)) for c in row["coeffs"])
        except (KeyError, TypeError, ValueError) as exc:
            raise InputError(f"bad reduced row #{i}: {row!r}") from exc
        if d < 1 or len(coeffs) != (d - 1) * (d - 2) + 1:
            raise InputError(f"reduced row d={d} must have (d-1)(d-2)+1 coefficients")
        rows[d] = coeffs
    return rows


def reduced_rows_to_json(rows: dict[int, tuple[int, ...]]) -> list[dict]:
    return [{"d": d, "coeffs": [str(c) for c in rows[d]]} for d in sorted(rows)]


def bundled_reduced_rows() -> dict[int, tuple[int, ...]]:
    text = resources.files("sheafpoly.data").joinpath(BUNDLED_REDUCED).read_text("utf-8")
    return reduced_rows_from_json(json.loads(text))


# -- derived series ---------------------------------------------------------

def genus_series(d: int, gv: GVTable) -> HalfLaurent:
    """Genus-weighted invariant sum for one degree; palindromic Laurent."""
    gv.require_degree(d)
    s2 = sqrt_diff(1) * sqrt_diff(1)
    acc = HalfLaurent.zero()
    for g, n in sorted(gv.row(d).items()):
        term = (s2 ** g).scale(n if g % 2 == 0 else -n)
        acc = acc + term
    return acc


def local_series(d: int, gv: GVTable) -> RatFun:
    """All-multiple-cover local series for one degree."""
    acc = RatFun(HalfLaurent.zero())
    for kappa in range(1, d + 1):
        if d % kappa:
            continue
        f = genus_series(d // kappa, gv).substitute_power(kappa)
        den = (sqrt_diff(kappa) * sqrt_diff(kappa)).scale(kappa)
        acc = acc + RatFun(-f, den)
    return acc
