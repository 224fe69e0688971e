"""Built-in semi-Fano surfaces and the A_n family."""
from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction

from .potential import BulkSpec, pair_root
from .toric import Facet, InteriorPoint, PolytopeSpec

__all__ = [
    "CatalogEntry",
    "Segment",
    "UnknownSurface",
    "an_spec",
    "catalog_lookup",
    "surface_names",
]


class UnknownSurface(KeyError):
    def __str__(self):
        return f"unknown surface {self.args[0]!r}; try list-surfaces"


F = Fraction


def _f(c0, c1, c2, alpha=None):
    slot, sign = (None, 1) if alpha is None else alpha
    return (F(str(c0)), c1, c2, slot, sign)


def _spec(name, rows, chains, closed=True):
    facets = tuple(
        Facet(c0, c1, c2, slot, sign, f"l{i + 1}") for i, (c0, c1, c2, slot, sign) in enumerate(rows)
    )
    return PolytopeSpec(name, facets, tuple(tuple(c) for c in chains), closed)


def _pt(a, b):
    return InteriorPoint(F(str(a)), F(str(b)))


@dataclass(frozen=True)
class Segment:
    """Straight segment of fibers with a solvable critical system."""

    label: str
    start: InteriorPoint
    end: InteriorPoint
    pin: str | None = None

    def point(self, t) -> InteriorPoint:
        t = F(t)
        return InteriorPoint(
            self.start.u1 + t * (self.end.u1 - self.start.u1),
            self.start.u2 + t * (self.end.u2 - self.start.u2),
        )


@dataclass(frozen=True)
class CatalogEntry:
    name: str
    spec: PolytopeSpec
    monotone_point: InteriorPoint | None
    # half planes c0 + c1*u1 + c2*u2 >= 0 where the smoothing keeps disk counts
    region: tuple = ()
    bulk: dict = field(default_factory=dict)
    bulk_text: str = ""
    expected_count: int | None = None
    zero_bulk_count: str | None = None
    segments: tuple[Segment, ...] = ()
    printed: tuple = ()
    families: int | None = None
    notes: tuple[str, ...] = ()

    def bulk_spec(self) -> BulkSpec:
        return BulkSpec.divisor(self.spec.nfacets, self.bulk, description=self.bulk_text)

    def zero_bulk(self) -> BulkSpec:
        return BulkSpec.zero(self.spec.nfacets)

    def in_region(self, u) -> bool:
        u = InteriorPoint.parse(u)
        return all(c0 + c1 * u.u1 + c2 * u.u2 >= 0 for c0, c1, c2 in self.region)

    def region_text(self) -> list[str]:
        out = []
        for c0, c1, c2 in self.region:
            f = Facet(c0, c1, c2)
            out.append(f"{f.describe()} >= 0")
        return out

    def printed_poly(self) -> dict:
        """Printed deformed potential as ``{(e1, e2): coeff}``; repeated
        monomials in the printed form are summed."""
        out: dict = {}
        for e1, e2, c in self.printed:
            out[(e1, e2)] = out.get((e1, e2), 0) + c
        return out

    def printed_duplicates(self) -> list[tuple[int, int]]:
        seen, dup = set(), []
        for e1, e2, _ in self.printed:
            if (e1, e2) in seen:
                dup.append((e1, e2))
            seen.add((e1, e2))
        return dup


def _region(*rows):
    return tuple((F(str(c0)), c1, c2) for c0, c1, c2 in rows)


_ENTRIES: dict[str, CatalogEntry] = {}


def _add(entry: CatalogEntry):
    _ENTRIES[entry.name] = entry


_add(CatalogEntry(
    name="X2",
    spec=_spec("X2", [
        _f(0, 1, 0), _f(0, 0, 1), _f(6, -1, -1), _f(4, 0, -1, (0, -1)), _f(2, 1, -1),
    ], [[3]]),
    monotone_point=_pt(2, 2),
    region=_region((3, 0, -1)),
    bulk={4: pair_root(3)},
    bulk_text="e^{a4}+e^{-a4}=3",
    expected_count=5,
    zero_bulk_count="3",
    segments=(Segment("u1=2, 2<=u2<=3", _pt(2, 2), _pt(2, 3), pin="y2=1"),),
    printed=((1, 0, 1), (0, 1, 1), (-1, -1, 1), (0, -1, 3), (1, -1, 1)),
    families=6,
))

# same surface with the outer facets moved; no monotone fiber
_add(CatalogEntry(
    name="X2b",
    spec=_spec("X2b", [
        _f(0, 1, 0), _f(0, 0, 1), _f(8, -1, -1), _f(5, 0, -1, (0, -1)), _f(2, 1, -1),
    ], [[3]]),
    monotone_point=None,
    segments=(Segment("u1=3, 2.5<=u2<=3", _pt(3, 2.5), _pt(3, 3), pin="y2=1"),),
    families=6,
))

_add(CatalogEntry(
    name="X3",
    spec=_spec("X3", [
        _f(0.5, 1, 0, (0, -1)), _f(0, 0, 1), _f(7, -1, -1), _f(5, 0, -1, (1, -1)),
        _f(3, 1, -1, (2, -1)), _f(1, 2, -1),
    ], [[0], [3, 4]]),
    monotone_point=_pt(2, 2.5),
    region=_region((0, 1, 0), (4.8, 0, -1)),
    bulk={1: 2, 3: 2, 2: -2, 4: -2},
    bulk_text="e^{a1}=e^{a3}=2, e^{a2}=e^{a4}=-2",
    expected_count=6,
    zero_bulk_count="<6",
    segments=(
        Segment("-u1+u2=0.5, 2.5<=u2<=4.8", _pt(2, 2.5), _pt(4.3, 4.8)),
        Segment("u1=2, 0.5<=u2<=2.5", _pt(2, 0.5), _pt(2, 2.5)),
    ),
    printed=((1, 0, 1), (0, 1, -2), (-1, -1, 2), (0, -1, -1), (1, -1, -2), (2, -1, 1)),
    families=11,
    notes=("the printed monotone form lists e^{a3} y1^-1 where the assembly gives "
           "e^{a3} y1^-1 y2^-1 and drops the decorated classes on y2^-1 and y1 y2^-1",
           "the printed segment -u1+u2=0.5 leaves the polygon through 7-u1-u2 >= 0 at u2=3.75; "
           "its upper end 4.8 is kept as printed",),
))

_add(CatalogEntry(
    name="X4",
    spec=_spec("X4", [
        _f(0.5, 1, 0, (0, -1)), _f(0, 0, 1), _f(3.5, -1, 0), _f(4, 0, -1),
        _f(2.5, 1, -1, (1, -1)), _f(1, 2, -1),
    ], [[0], [4]]),
    monotone_point=_pt(1.5, 2),
    region=_region((0, 1, 0), (2, 1, -1)),
    bulk={1: pair_root(3), 5: pair_root(5)},
    bulk_text="e^{a1}+e^{-a1}=3, e^{a5}+e^{-a5}=5",
    expected_count=6,
    zero_bulk_count="<6",
    segments=(
        Segment("-u1+u2=0.5, 0<=u1<=1.5", _pt(0, 0.5), _pt(1.5, 2)),
        Segment("u1=1.5, 2<=u2<=3.5", _pt(1.5, 2), _pt(1.5, 3.5)),
    ),
    printed=((1, 0, 3), (0, 1, 1), (-1, 0, 1), (0, -1, 1), (1, -1, 5), (0, -1, 1), (2, -1, 1)),
    families=8,
    notes=("the printed deformed potential repeats the y2^-1 term",),
))

_add(CatalogEntry(
    name="X5",
    spec=_spec("X5", [
        _f(0, 1, 0), _f(0, 0, 1), _f(2, -1, 0), _f(3, -1, -1), _f(2, 0, -1, (0, -1)), _f(1, 1, -1),
    ], [[4]]),
    monotone_point=_pt(1, 1),
    region=_region((1.5, 0, -1)),
    bulk={1: 2, 5: pair_root(3)},
    bulk_text="e^{a1}=2, e^{a5}+e^{-a5}=3",
    expected_count=6,
    zero_bulk_count="<6",
    segments=(Segment("u1=1, 1<=u2<=1.5", _pt(1, 1), _pt(1, 1.5)),),
    printed=((1, 0, 2), (0, 1, 1), (-1, 0, 1), (-1, -1, 1), (0, -1, 3), (1, -1, 1)),
    families=7,
))

_add(CatalogEntry(
    name="X6",
    spec=_spec("X6", [
        _f(0.5, 1, 0, (0, -1)), _f(0, 0, 1), _f(8.5, -1, 0), _f(13, -1, -1),
        _f(9, 0, -1, (1, -1)), _f(5, 1, -1, (2, -1)), _f(1, 2, -1),
    ], [[0], [4, 5]]),
    monotone_point=_pt(4, 4.5),
    region=_region((0, 1, 0), (8, 0, -1)),
    bulk={1: pair_root(3), 3: 3, 5: 2, 6: -2},
    bulk_text="e^{a1}+e^{-a1}=3, e^{a3}=3, e^{a5}=2, e^{a6}=-2",
    expected_count=7,
    segments=(
        Segment("u1=4, 4.5<=u2<=8", _pt(4, 4.5), _pt(4, 8)),
        Segment("-u1+u2=0.5, 0<=u1<=4", _pt(0, 0.5), _pt(4, 4.5)),
    ),
    printed=((1, 0, 3), (0, 1, 1), (-1, 0, 3), (-1, -1, 1), (0, -1, 0.5), (1, -1, -2.5), (2, -1, 1)),
    families=12,
))

_add(CatalogEntry(
    name="X7",
    spec=_spec("X7", [
        _f(0.5, 1, 0, (0, -1)), _f(0, 0, 1), _f(1.5, -1, 1), _f(3.5, -1, 0), _f(4, 0, -1),
        _f(2.5, 1, -1, (1, -1)), _f(1, 2, -1),
    ], [[0], [5]]),
    monotone_point=_pt(1.5, 2),
    region=_region((0, 1, 0), (2, 1, -1)),
    bulk={1: pair_root(3), 3: 2, 6: pair_root(4)},
    bulk_text="e^{a1}+e^{-a1}=3, e^{a3}=2, e^{a6}+e^{-a6}=4",
    expected_count=7,
    segments=(
        Segment("u1=1.5, 2<=u2<=3.5", _pt(1.5, 2), _pt(1.5, 3.5)),
        Segment("-u1+u2=0.5, 0<=u1<=1.5", _pt(0, 0.5), _pt(1.5, 2)),
    ),
    printed=((1, 0, 3), (0, 1, 1), (-1, 1, 2), (-1, 0, 1), (0, -1, 1), (1, -1, 4), (2, -1, 1)),
    families=9,
    notes=("the surface text speaks of two A2 points while the facet data carries two A1 chains",),
))

_add(CatalogEntry(
    name="X8",
    spec=_spec("X8", [
        _f(0.5, 1, 0, (0, -1)), _f(0, 0, 1), _f(5.5, -1, 0, (1, -1)), _f(11, -2, -1),
        _f(8.5, -1, -1, (2, -1)), _f(6, 0, -1, (3, -1)), _f(3.5, 1, -1, (4, -1)), _f(1, 2, -1),
    ], [[0], [2], [4, 5, 6]]),
    monotone_point=_pt(2.5, 3),
    region=_region((0, 1, 0), (5, -1, 0), (5.8, 0, -1)),
    bulk={1: 2, 6: 2, 3: -2, 5: -2, 4: 3},
    bulk_text="e^{a1}=e^{a6}=2, e^{a3}=e^{a5}=-2, e^{a4}=3",
    expected_count=8,
    segments=(
        Segment("u1=2.5, 3<=u2<=5.8", _pt(2.5, 3), _pt(2.5, 5.8)),
        Segment("-u1+u2=0.5, 0<=u1<=2.5", _pt(0, 0.5), _pt(2.5, 3)),
        Segment("u1+u2=5.5, 2.5<=u1<=5", _pt(2.5, 3), _pt(5, 0.5)),
    ),
    printed=((1, 0, 2.5), (0, 1, 1), (-1, 0, -3.5), (-2, -1, 3), (-1, -1, -0.5),
             (0, -1, -4), (1, -1, 0.5), (2, -1, 1)),
    families=21,
))

_add(CatalogEntry(
    name="X9",
    spec=_spec("X9", [
        _f(0.5, 1, 0, (0, -1)), _f(0, 0, 1), _f(4, -1, 1), _f(8.5, -1, 0, (1, -1)),
        _f(13, -1, -1), _f(9, 0, -1, (2, -1)), _f(5, 1, -1, (3, -1)), _f(1, 2, -1),
    ], [[0], [3], [5, 6]]),
    monotone_point=_pt(4, 4.5),
    region=_region((0, 1, 0), (8, -1, 0), (8, 0, -1)),
    bulk={1: pair_root(3, 4), 2: 4, 4: pair_root(4), 6: 2, 7: -2},
    bulk_text="e^{a1}+e^{-a1+a2}=3, e^{a2}=4, e^{a4}+e^{-a4}=4, e^{a6}=2, e^{a7}=-2",
    expected_count=8,
    segments=(
        Segment("u1=4, 4.5<=u2<=8", _pt(4, 4.5), _pt(4, 8)),
        Segment("-u1+u2=0.5, 0<=u1<=4", _pt(0, 0.5), _pt(4, 4.5)),
        Segment("u2=4.5, 4<=u1<=8", _pt(4, 4.5), _pt(8, 4.5)),
    ),
    printed=((1, 0, 3), (0, 1, 4), (-1, 1, 1), (-1, 0, 4), (-1, -1, 1), (0, -1, 0.5),
             (1, -1, -2.5), (2, -1, 1)),
    families=14,
    notes=("the surface text speaks of two A2 points while the facet data carries A1, A1, A2 chains",),
))

_add(CatalogEntry(
    name="X10",
    spec=_spec("X10", [
        _f(0.5, 1, 0, (0, -1)), _f(0, 0, 1), _f(1.5, -1, 1, (1, -1)), _f(3, -2, 1),
        _f(3.5, -1, 0, (2, -1)), _f(4, 0, -1), _f(2.5, 1, -1, (3, -1)), _f(1, 2, -1),
    ], [[0], [2], [4], [6]]),
    monotone_point=_pt(1.5, 2),
    region=_region((0, 1, 0), (3, -1, 0), (1, -1, 1), (2, 1, -1)),
    bulk={1: pair_root(3), 3: pair_root(4), 5: pair_root(5), 7: pair_root(6)},
    bulk_text="e^{a1}+e^{-a1}=3, e^{a3}+e^{-a3}=4, e^{a5}+e^{-a5}=5, e^{a7}+e^{-a7}=6",
    expected_count=8,
    segments=(
        Segment("0.5+u1-u2=0, 0<=u1<=3", _pt(0, 0.5), _pt(3, 3.5)),
        Segment("u1=1.5, 0.5<=u2<=3.5", _pt(1.5, 0.5), _pt(1.5, 3.5)),
    ),
    printed=((1, 0, 3), (0, 1, 1), (-1, 1, 4), (-2, 1, 1), (-1, 0, 5), (0, -1, 1),
             (1, -1, 6), (2, -1, 1)),
    families=12,
))


APPENDIX_SURFACES = ("X2", "X3", "X4", "X5", "X6", "X7", "X8", "X9", "X10")


def an_spec(n: int) -> PolytopeSpec:
    """Open polygon of the A_n resolution: ``l0 = u1`` and
    ``l_k = k u2 - (k-1) u1 - alpha_k`` for ``k = 1..n+1``."""
    if n < 1:
        raise ValueError("n must be >= 1")
    rows = [_f(0, 1, 0)]
    for k in range(1, n + 1):
        rows.append(_f(0, -(k - 1), k, (k - 1, -1)))
    rows.append(_f(0, -n, n + 1))
    facets = tuple(
        Facet(c0, c1, c2, slot, sign, f"l{i}") for i, (c0, c1, c2, slot, sign) in enumerate(rows)
    )
    return PolytopeSpec(f"An({n})", facets, (tuple(range(1, n + 1)),), closed=False)


_AN = re.compile(r"^A(?:n)?\(?(\d+)\)?$")


def catalog_lookup(name: str) -> CatalogEntry:
    key = name.strip()
    if key in _ENTRIES:
        return _ENTRIES[key]
    m = _AN.match(key)
    if m:
        n = int(m.group(1))
        if n >= 1:
            return CatalogEntry(
                name=f"An({n})",
                spec=an_spec(n),
                monotone_point=_pt(1, 1),
                region=((F(0), 1, 0),),
            )
    raise UnknownSurface(name)


def surface_names() -> list[str]:
    return list(_ENTRIES)
