"""Moment-polytope data: facets, -2 chains, energies and boundary exponents."""
from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path

from .novikov import as_exponent

__all__ = [
    "ChainRelationViolated",
    "Facet",
    "InteriorPoint",
    "MalformedDocument",
    "NonInteriorPoint",
    "NonPrimitiveNormal",
    "PolytopeSpec",
    "boundary_exponents",
    "facet_energy",
    "load_spec",
    "parse_spec",
]


class MalformedDocument(ValueError):
    pass


class NonPrimitiveNormal(ValueError):
    pass


class ChainRelationViolated(ValueError):
    def __init__(self, index: int, message: str):
        super().__init__(message)
        self.index = index


class NonInteriorPoint(ValueError):
    pass


@dataclass(frozen=True)
class Facet:
    """Affine function ``c0 + c1*u1 + c2*u2 + sign*alpha[slot]``."""

    c0: Fraction
    c1: int
    c2: int
    alpha_slot: int | None = None
    alpha_sign: int = 1
    label: str = ""

    @property
    def normal(self) -> tuple[int, int]:
        return (self.c1, self.c2)

    def constant(self, alpha=()) -> Fraction:
        c = self.c0
        if self.alpha_slot is not None and self.alpha_slot < len(alpha):
            c += self.alpha_sign * as_exponent(alpha[self.alpha_slot])
        return c

    def value(self, u, alpha=()) -> Fraction:
        u1, u2 = (as_exponent(x) for x in u)
        return self.constant(alpha) + self.c1 * u1 + self.c2 * u2

    def describe(self) -> str:
        parts = []
        if self.c0:
            parts.append(str(self.c0))
        if self.alpha_slot is not None:
            parts.append(("-" if self.alpha_sign < 0 else "+") + f"alpha{self.alpha_slot + 1}")
        for k, name in ((self.c1, "u1"), (self.c2, "u2")):
            if k:
                mag = "" if abs(k) == 1 else str(abs(k))
                parts.append(("-" if k < 0 else "+") + mag + name)
        s = "".join(p if p[0] in "+-" else "+" + p for p in parts).lstrip("+")
        return s or "0"


@dataclass(frozen=True)
class InteriorPoint:
    u1: Fraction
    u2: Fraction

    @classmethod
    def parse(cls, text) -> InteriorPoint:
        if isinstance(text, InteriorPoint):
            return text
        if isinstance(text, str):
            parts = [p for p in text.replace(" ", "").split(",") if p]
        else:
            parts = list(text)
        if len(parts) != 2:
            raise ValueError(f"expected two coordinates, got {text!r}")
        return cls(as_exponent(parts[0]), as_exponent(parts[1]))

    def __iter__(self):
        return iter((self.u1, self.u2))

    def __str__(self):
        return f"({self.u1},{self.u2})"


@dataclass(frozen=True)
class PolytopeSpec:
    """Facets in cyclic boundary order plus marked -2 chains.

    ``closed=False`` marks an open polygon (first and last facets are not
    adjacent).
    """

    name: str
    facets: tuple[Facet, ...]
    chains: tuple[tuple[int, ...], ...] = ()
    closed: bool = True
    meta: dict = field(default_factory=dict, compare=False)

    def __post_init__(self):
        validate(self)

    @property
    def nfacets(self) -> int:
        return len(self.facets)

    @property
    def alpha_arity(self) -> int:
        slots = [f.alpha_slot for f in self.facets if f.alpha_slot is not None]
        return max(slots) + 1 if slots else 0

    def neighbours(self, i: int) -> list[int]:
        n = self.nfacets
        out = []
        if self.closed or i > 0:
            out.append((i - 1) % n)
        if self.closed or i < n - 1:
            out.append((i + 1) % n)
        return out

    def adjacent(self, i: int, j: int) -> bool:
        return i != j and j in self.neighbours(i)

    def intersection(self, i: int, j: int) -> int:
        """``D_i . D_j`` for distinct facets, or the self-intersection."""
        if i == j:
            k = self.self_intersection(i)
            if k is None:
                raise ValueError(f"self-intersection of facet {i} is undefined")
            return k
        return 1 if self.adjacent(i, j) else 0

    def self_intersection(self, i: int) -> int | None:
        """From ``v_{i-1} + v_{i+1} = -(D^2) v_i``; None if not determined."""
        nb = self.neighbours(i)
        if len(nb) != 2:
            return None
        a, b = (self.facets[j].normal for j in nb)
        v = self.facets[i].normal
        s = (a[0] + b[0], a[1] + b[1])
        # s must be an integer multiple of v
        if v[0] * s[1] - v[1] * s[0] != 0:
            return None
        k = s[0] // v[0] if v[0] else s[1] // v[1]
        return -k

    def chain_of(self, i: int):
        """``(chain_index, 1-based position)`` of facet ``i`` or None."""
        for ci, chain in enumerate(self.chains):
            if i in chain:
                return ci, chain.index(i) + 1
        return None

    def divisor_area(self, i: int, alpha=()) -> Fraction:
        """Symplectic area of ``D_i``: the lattice length of edge ``i``."""
        k = self.self_intersection(i)
        if k is None:
            raise ValueError(f"facet {i} has no well-defined edge length")
        a, b = self.neighbours(i)
        f = self.facets
        return f[a].constant(alpha) + f[b].constant(alpha) + k * f[i].constant(alpha)

    def check_interior(self, u, alpha=()) -> None:
        for i, f in enumerate(self.facets):
            if f.value(u, alpha) <= 0:
                raise NonInteriorPoint(
                    f"facet {i} ({f.label or f.describe()}) is {f.value(u, alpha)} at u={tuple(map(str, u))}"
                )

    def is_interior(self, u, alpha=()) -> bool:
        try:
            self.check_interior(u, alpha)
        except NonInteriorPoint:
            return False
        return True

    def to_document(self) -> dict:
        facets = []
        for f in self.facets:
            d = {"label": f.label, "c0": str(f.c0), "c1": f.c1, "c2": f.c2}
            if f.alpha_slot is not None:
                d["alpha"] = {"slot": f.alpha_slot, "sign": f.alpha_sign}
            facets.append(d)
        doc = {"name": self.name, "facets": facets, "chains": [list(c) for c in self.chains]}
        if not self.closed:
            doc["closed"] = False
        return doc


def validate(spec: PolytopeSpec) -> None:
    n = spec.nfacets
    if n < 2:
        raise MalformedDocument("a polygon needs at least two facets")
    for i, f in enumerate(spec.facets):
        if math.gcd(f.c1, f.c2) != 1:
            raise NonPrimitiveNormal(f"facet {i} normal ({f.c1},{f.c2}) is not primitive")
    seen = set()
    for chain in spec.chains:
        if not chain:
            raise MalformedDocument("empty chain")
        for j in chain:
            if not 0 <= j < n:
                raise MalformedDocument(f"chain index {j} out of range")
            if j in seen:
                raise MalformedDocument(f"facet {j} appears in two chains")
            seen.add(j)
        for a, b in zip(chain, chain[1:]):
            if not spec.adjacent(a, b) or (b - a) % n != 1:
                raise MalformedDocument(f"chain {list(chain)} is not cyclically consecutive")
        for j in chain:
            if spec.self_intersection(j) != -2:
                nb = spec.neighbours(j)
                raise ChainRelationViolated(
                    j,
                    f"facet {j}: neighbour normals {[spec.facets[k].normal for k in nb]} "
                    f"do not sum to 2*{spec.facets[j].normal}",
                )


def facet_energy(f: Facet, u, alpha=()) -> Fraction:
    """``l(u)`` including the alpha shift; must be positive."""
    val = f.value(u, alpha)
    if val <= 0:
        raise NonInteriorPoint(f"{f.label or f.describe()} = {val} at u={tuple(map(str, u))}")
    return val


def boundary_exponents(f: Facet) -> tuple[int, int]:
    return (f.c1, f.c2)


def _int(x, what):
    if isinstance(x, bool) or not isinstance(x, int):
        raise MalformedDocument(f"{what} must be an integer, got {x!r}")
    return x


def parse_spec(document) -> PolytopeSpec:
    """Build a validated spec from a dict or JSON text."""
    if isinstance(document, (str, bytes)):
        try:
            document = json.loads(document)
        except json.JSONDecodeError as exc:
            raise MalformedDocument(f"invalid JSON: {exc}") from exc
    if not isinstance(document, dict):
        raise MalformedDocument("document must be a mapping")
    try:
        name = str(document["name"])
        raw_facets = document["facets"]
    except KeyError as exc:
        raise MalformedDocument(f"missing field {exc}") from exc
    if not isinstance(raw_facets, list):
        raise MalformedDocument("facets must be a list")
    facets = []
    for i, d in enumerate(raw_facets):
        if not isinstance(d, dict):
            raise MalformedDocument(f"facet {i} must be a mapping")
        try:
            c0 = Fraction(str(d["c0"]))
            c1 = _int(d["c1"], f"facet {i} c1")
            c2 = _int(d["c2"], f"facet {i} c2")
        except (KeyError, ValueError, ZeroDivisionError) as exc:
            if isinstance(exc, MalformedDocument):
                raise
            raise MalformedDocument(f"facet {i}: {exc}") from exc
        slot, sign = None, 1
        if d.get("alpha") is not None:
            a = d["alpha"]
            try:
                slot = _int(a["slot"], f"facet {i} alpha slot")
                sign = _int(a.get("sign", 1), f"facet {i} alpha sign")
            except (KeyError, TypeError) as exc:
                raise MalformedDocument(f"facet {i} alpha: {exc}") from exc
            if sign not in (1, -1) or slot < 0:
                raise MalformedDocument(f"facet {i}: alpha sign must be +-1 and slot >= 0")
        facets.append(Facet(c0, c1, c2, slot, sign, str(d.get("label", f"l{i + 1}"))))
    chains = document.get("chains", [])
    if not isinstance(chains, list) or not all(isinstance(c, list) for c in chains):
        raise MalformedDocument("chains must be a list of lists")
    chains = tuple(tuple(_int(j, "chain index") for j in c) for c in chains)
    closed = document.get("closed", True)
    if not isinstance(closed, bool):
        raise MalformedDocument("closed must be a boolean")
    meta = {k: v for k, v in document.items() if k not in ("name", "facets", "chains", "closed")}
    return PolytopeSpec(name, tuple(facets), chains, closed, meta)


def load_spec(path) -> PolytopeSpec:
    return parse_spec(Path(path).read_text())
