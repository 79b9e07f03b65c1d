"""Named test varieties with frozen expected osculating profiles.

Expected profiles are regression values, reproduced with an independent
rank oracle at two seeds and with plan (seed=42, S=5, B=1000); they are not
external ground truth.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

from .geometry import Parametrization
from .verify import Fiber

ORACLE = "derived: rank oracle, seeds 1 and 2; regression at seed 42"


class UnknownEntryError(KeyError):
    pass


@dataclass(frozen=True)
class CatalogEntry:
    name: str
    parametrization: Parametrization
    expected_profile: tuple[int, ...]
    provenance: str = ORACLE
    fiber: Fiber | None = None
    fiber_order: int | None = None
    notes: str = ""

    @property
    def max_order(self) -> int:
        return len(self.expected_profile) - 1


def _powers(var: str, d: int, scale: str = "") -> list[str]:
    out = []
    for i in range(d + 1):
        mono = "1" if i == 0 else var if i == 1 else f"{var}^{i}"
        if scale:
            mono = scale if i == 0 else f"{scale}*{mono}"
        out.append(mono)
    return out


_RULING = Fiber.from_strings(["u0", "v0"], ["s"], ["u0", "v0 + s"])


def rnc(degree: int = 5) -> CatalogEntry:
    if not 1 <= degree <= 8:
        raise ValueError("rnc degree must be in 1..8")
    P = Parametrization.from_strings(f"rnc{degree}", ["u"], _powers("u", degree))
    return CatalogEntry(
        P.name, P, tuple(range(degree + 1)) + (degree,),
        notes=f"rational normal curve of degree {degree} in P^{degree}; h_m = min(m, {degree})")


def rnc_in_hyperplane(degree: int = 4, ambient: int = 5) -> CatalogEntry:
    if not 1 <= degree < ambient:
        raise ValueError("need 1 <= degree < ambient")
    coords = _powers("u", degree) + ["0"] * (ambient - degree)
    P = Parametrization.from_strings(f"rnc{degree}_in_P{ambient}", ["u"], coords)
    return CatalogEntry(
        P.name, P, tuple(range(degree + 1)) + (degree,),
        notes="rational normal curve padded with zero coordinates; spans a proper subspace")


def veronese2() -> CatalogEntry:
    P = Parametrization.from_strings("veronese2", ["u", "v"], ["1", "u", "v", "u^2", "u*v", "v^2"])
    return CatalogEntry(P.name, P, (0, 2, 5), notes="quadratic Veronese surface in P^5, chart x=1")


def veronese3() -> CatalogEntry:
    coords = ["1", "u", "v", "u^2", "u*v", "v^2", "u^3", "u^2*v", "u*v^2", "v^3"]
    P = Parametrization.from_strings("veronese3", ["u", "v"], coords)
    return CatalogEntry(P.name, P, (0, 2, 5, 9), notes="cubic Veronese surface in P^9, chart x=1")


def segre11() -> CatalogEntry:
    P = Parametrization.from_strings("segre11", ["u", "v"], ["1", "u", "v", "u*v"])
    return CatalogEntry(P.name, P, (0, 2, 3), notes="P^1 x P^1 in P^3 (smooth quadric)")


def cone_rnc(degree: int = 4) -> CatalogEntry:
    if not 2 <= degree <= 7:
        raise ValueError("cone_rnc degree must be in 2..7")
    coords = _powers("u", degree, scale="v") + ["1"]
    P = Parametrization.from_strings(f"cone_rnc{degree}", ["u", "v"], coords)
    expected = (0,) + tuple(range(2, degree + 2))
    return CatalogEntry(
        P.name, P, expected, fiber=_RULING, fiber_order=2,
        notes=f"cone over the degree-{degree} rational normal curve with vertex e_{degree + 1}; "
              "osculating spaces are constant along the rulings u = const")


def cone_rnc3_in_P5() -> CatalogEntry:
    coords = ["v", "u*v", "u^2*v", "u^3*v", "1", "0"]
    P = Parametrization.from_strings("cone_rnc3_in_P5", ["u", "v"], coords)
    return CatalogEntry(
        P.name, P, (0, 2, 3, 4, 4), fiber=_RULING, fiber_order=2,
        notes="cone over the twisted cubic, inside a hyperplane of P^5")


def togliatti() -> CatalogEntry:
    coords = ["u^2*v", "u^2", "u*v^2", "v^2", "u", "v"]
    P = Parametrization.from_strings("togliatti", ["u", "v"], coords)
    return CatalogEntry(
        P.name, P, (0, 2, 4, 5, 5),
        notes="chart z=1 of the cubics x^2y, x^2z, xy^2, y^2z, xz^2, yz^2; "
              "second osculating spaces are hyperplanes (h_2 = 4 < 5)")


_BUILDERS: dict[str, Callable[..., CatalogEntry]] = {
    "cone_rnc": cone_rnc,
    "cone_rnc3_in_P5": cone_rnc3_in_P5,
    "rnc": rnc,
    "rnc_in_hyperplane": rnc_in_hyperplane,
    "segre11": segre11,
    "togliatti": togliatti,
    "veronese2": veronese2,
    "veronese3": veronese3,
}


def names() -> list[str]:
    return sorted(_BUILDERS)


def get(name: str, **params) -> CatalogEntry:
    try:
        builder = _BUILDERS[name]
    except KeyError:
        raise UnknownEntryError(f"unknown catalog entry {name!r}; known: {', '.join(names())}") from None
    return builder(**params)


def default_entries() -> list[CatalogEntry]:
    """One instance of every entry, with the default parameters."""
    return [get(name) for name in names()]
