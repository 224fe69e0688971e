"""Assembly of bulk-deformed disk potentials from polytope and chain data.

Every Maslov-2 class is a meridian ``beta_j`` decorated by an admissible
tuple along the chain containing facet ``j``. Its term is
``e^{b.beta} y^{d beta} T^{omega(beta)}`` where the bulk exponent of facet
``i`` is ``D_i . beta`` and the energy is ``l_j(u)`` plus the areas of the
chain divisors it wraps.
"""
from __future__ import annotations

import cmath
from dataclasses import dataclass, field, replace
from fractions import Fraction
from math import comb

from .chains import enumerate_admissible, end_coefficient_polynomial
from .laurent import LaurentPoly
from .novikov import NovikovSeries, as_exponent
from .toric import InteriorPoint, NonInteriorPoint, PolytopeSpec

__all__ = [
    "AssembledPotential",
    "BulkArityMismatch",
    "BulkKindMismatch",
    "BulkSpec",
    "ClassTerm",
    "assemble_resolution",
    "assemble_smoothing",
    "chain_leading_potential",
    "disk_classes",
    "ks_images",
    "milnor_potential",
    "parse_bulk",
    "pair_root",
]


class BulkArityMismatch(ValueError):
    pass


class BulkKindMismatch(ValueError):
    pass


def pair_root(s: complex, c: complex = 1) -> complex:
    """Root of ``x + c/x = s`` with the ``+`` branch of the square root."""
    s = complex(s)
    return (s + cmath.sqrt(s * s - 4 * c)) / 2


@dataclass(frozen=True)
class BulkSpec:
    """Values of the multiplicative bulk symbols ``e^{a}``.

    ``kind`` is ``"divisor"`` (one symbol per facet), ``"chain_end"``
    (``e^v`` on ``D_1``, ``e^w`` on ``D_n``) or ``"fiber"`` (A1 only).
    A value of ``None`` keeps the symbol; ``1`` switches it off.
    """

    kind: str
    values: tuple
    description: str = ""

    @classmethod
    def divisor(cls, nfacets: int, values: dict | None = None, default=1, description: str = ""):
        vals = [default] * nfacets
        for i, v in (values or {}).items():
            if not 1 <= i <= nfacets:
                raise BulkArityMismatch(f"facet a{i} outside 1..{nfacets}")
            vals[i - 1] = v
        return cls("divisor", tuple(vals), description)

    @classmethod
    def symbolic(cls, nfacets: int):
        return cls.divisor(nfacets, default=None, description="symbolic")

    @classmethod
    def zero(cls, nfacets: int):
        return cls.divisor(nfacets, description="zero")

    @classmethod
    def chain_end(cls, v=None, w=None):
        return cls("chain_end", (v, w), "chain ends")

    @classmethod
    def fiber(cls, v=None, w=None):
        return cls("fiber", (v, w), "fiber spheres")

    @property
    def symbol_names(self) -> tuple[str, ...]:
        if self.kind == "divisor":
            names = [f"a{i + 1}" for i in range(len(self.values))]
        else:
            names = ["v", "w"]
        return tuple(n for n, v in zip(names, self.values) if v is None)

    def __str__(self):
        if self.description:
            return self.description
        return ",".join(f"{n}={v}" for n, v in zip(self.symbol_names, self.values))


def parse_bulk(text: str | None, nfacets: int) -> BulkSpec:
    """Parse ``"a4=sym,a1=2,a5=pair:3"``.

    ``sym`` keeps the symbol, a number sets ``e^{a}``, ``pair:s`` solves
    ``e^{a} + e^{-a} = s``. Unlisted facets get zero bulk. ``"sym"`` alone
    makes every facet symbolic.
    """
    text = (text or "").strip()
    if text in ("", "none", "zero", "0"):
        return BulkSpec.zero(nfacets)
    if text in ("sym", "symbolic"):
        return BulkSpec.symbolic(nfacets)
    values = {}
    for item in text.split(","):
        item = item.strip()
        if not item:
            continue
        try:
            name, val = item.split("=", 1)
            name = name.strip()
            if not name.startswith("a"):
                raise ValueError
            idx = int(name[1:])
        except ValueError:
            raise ValueError(f"bad bulk item {item!r}; expected aK=value") from None
        val = val.strip()
        if val == "sym":
            values[idx] = None
        elif val.startswith("pair:"):
            values[idx] = pair_root(complex(val[5:].replace("i", "j")))
        else:
            values[idx] = complex(val.replace("i", "j"))
    return BulkSpec.divisor(nfacets, values, description=text)


@dataclass(frozen=True)
class ClassTerm:
    """One disk class contributing to a potential."""

    facet: int
    decoration: tuple[int, ...]
    chain: tuple[int, ...]
    fiber: tuple[int, int]
    bulk: tuple[int, ...]
    energy: Fraction

    def wraps(self) -> list[tuple[int, int]]:
        """``(facet, multiplicity)`` for the chain divisors in the class."""
        return [(d, s) for d, s in zip(self.chain, self.decoration) if s]


@dataclass
class AssembledPotential:
    poly: LaurentPoly
    bulk_names: tuple[str, ...] = ()
    classes: tuple[ClassTerm, ...] = ()
    meta: dict = field(default_factory=dict)
    tail: LaurentPoly | None = None

    @property
    def full(self) -> LaurentPoly:
        return self.poly if self.tail is None else self.poly + self.tail

    def with_tail(self, tail: LaurentPoly) -> AssembledPotential:
        """Attach higher-energy terms supplied by the caller."""
        tail = tail.map_coefficients(NovikovSeries.coerce)
        return replace(self, tail=tail if self.tail is None else self.tail + tail)

    def min_energy(self) -> Fraction:
        return self.full.valuation()

    def energies(self) -> list[Fraction]:
        return sorted({e for _, c in self.full for e in c.exponents()})

    def is_monotone(self) -> bool:
        return len(self.energies()) <= 1

    def normalized(self) -> LaurentPoly:
        """Divide by ``T^lam`` where ``lam`` is the smallest energy."""
        return self.full.shift_T(-self.min_energy())

    def leading(self) -> LaurentPoly:
        """Complex polynomial of the lowest-energy stratum."""
        return self.full.leading_part()[1]

    def render(self) -> str:
        return self.full.render(self.bulk_names)

    def to_json(self) -> dict:
        return {
            "meta": {k: str(v) for k, v in self.meta.items()},
            "bulk_symbols": list(self.bulk_names),
            "terms": self.full.to_json(self.bulk_names),
        }


def _alpha_vector(spec: PolytopeSpec, alpha) -> tuple[Fraction, ...]:
    if alpha is None:
        alpha = ()
    elif isinstance(alpha, (int, Fraction, str, float)):
        alpha = [alpha] * spec.alpha_arity
    alpha = tuple(as_exponent(a) for a in alpha)
    if len(alpha) > spec.alpha_arity:
        raise ValueError(f"{spec.name} has {spec.alpha_arity} alpha slots, got {len(alpha)}")
    return alpha + (Fraction(0),) * (spec.alpha_arity - len(alpha))


def disk_classes(spec: PolytopeSpec, alpha=()) -> list[ClassTerm]:
    """All Maslov-2 classes with ``energy`` set to the u-free part
    ``c0_j + sign*alpha + sum s*area``; add ``v_j . u`` for the full energy."""
    alpha = _alpha_vector(spec, alpha)
    nf = spec.nfacets
    areas = {d: spec.divisor_area(d, alpha) for chain in spec.chains for d in chain}
    out = []
    for j, f in enumerate(spec.facets):
        loc = spec.chain_of(j)
        if loc is None:
            chain, decorations = (), [()]
        else:
            ci, pos = loc
            chain = spec.chains[ci]
            decorations = [t.entries for t in enumerate_admissible(len(chain), pos)]
        for s in decorations:
            bulk = [int(i == j) for i in range(nf)]
            energy = f.constant(alpha)
            for d, k in zip(chain, s):
                if not k:
                    continue
                energy += k * areas[d]
                for i in range(nf):
                    if i == d or spec.adjacent(i, d):
                        bulk[i] += k * spec.intersection(i, d)
            out.append(ClassTerm(j, tuple(s), tuple(chain), (f.c1, f.c2), tuple(bulk), energy))
    return out


def _bulk_values(spec: PolytopeSpec, bulk: BulkSpec | None) -> BulkSpec:
    if bulk is None:
        return BulkSpec.symbolic(spec.nfacets)
    if bulk.kind != "divisor":
        raise BulkKindMismatch(f"assembly takes divisor bulk, got {bulk.kind}")
    if len(bulk.values) != spec.nfacets:
        raise BulkArityMismatch(f"{spec.name} has {spec.nfacets} facets, bulk has {len(bulk.values)}")
    return bulk


def assemble_resolution(spec: PolytopeSpec, u, bulk: BulkSpec | None = None, alpha=()) -> AssembledPotential:
    """Potential of the fiber at ``u`` on the resolution with parameters ``alpha``."""
    u = InteriorPoint.parse(u)
    bulk = _bulk_values(spec, bulk)
    alpha = _alpha_vector(spec, alpha)
    spec.check_interior(u, alpha)
    classes = []
    terms = []
    for c in disk_classes(spec, alpha):
        energy = c.energy + c.fiber[0] * u.u1 + c.fiber[1] * u.u2
        if energy <= 0:
            raise NonInteriorPoint(f"class on facet {c.facet} has energy {energy}")
        c = replace(c, energy=energy)
        classes.append(c)
        terms.append(((c.fiber, c.bulk), NovikovSeries.monomial(1, energy)))
    poly = LaurentPoly(terms, spec.nfacets).substitute_bulk(bulk.values)
    meta = {"surface": spec.name, "u": u, "alpha": list(map(str, alpha)), "bulk": str(bulk)}
    return AssembledPotential(poly, bulk.symbol_names, tuple(classes), meta)


def assemble_smoothing(spec: PolytopeSpec, u, bulk: BulkSpec | None = None) -> AssembledPotential:
    """The alpha -> 0 limit: all alpha slots zero, coefficients merge."""
    return assemble_resolution(spec, u, bulk, ())


def milnor_potential(n: int, u) -> AssembledPotential:
    """``sum_k C(n+1,k) y1^{1-k} y2^k T^{(1-k)u1 + k u2}`` on the A_n fiber."""
    if n < 1:
        raise ValueError("n must be >= 1")
    u = InteriorPoint.parse(u)
    terms = []
    for k in range(n + 2):
        energy = (1 - k) * u.u1 + k * u.u2
        if energy <= 0:
            raise NonInteriorPoint(f"l_{k}(u) = {energy} is not positive")
        terms.append((((1 - k, k), ()), NovikovSeries.monomial(comb(n + 1, k), energy)))
    return AssembledPotential(LaurentPoly(terms, 0), (), (), {"surface": f"An({n})", "u": u})


def chain_leading_potential(n: int, bulk: BulkSpec | None = None) -> LaurentPoly:
    """Lowest-energy potential of the A_n fiber with two bulk symbols.

    ``n >= 2``: ``y1 + sum P_k(X,Y) y1^{1-k} y2^k + y1^{-n} y2^{n+1}`` with
    ``X = e^v`` on ``D_1`` and ``Y = e^w`` on ``D_n``.
    ``n = 1``: ``X y1 + (1 + XY) y2 + Y y1^{-1} y2^2`` for the fiber spheres.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    if bulk is None:
        bulk = BulkSpec.fiber() if n == 1 else BulkSpec.chain_end()
    if n == 1 and bulk.kind != "fiber":
        raise BulkKindMismatch("the A1 chain takes fiber-sphere bulk")
    if n >= 2 and bulk.kind != "chain_end":
        raise BulkKindMismatch("chains of length >= 2 take chain-end bulk")
    if n == 1:
        terms = [
            (((1, 0), (1, 0)), 1),
            (((0, 1), (0, 0)), 1),
            (((0, 1), (1, 1)), 1),
            (((-1, 2), (0, 1)), 1),
        ]
    else:
        terms = [(((1, 0), (0, 0)), 1), (((-n, n + 1), (0, 0)), 1)]
        for k in range(1, n + 1):
            for (d, _), c in end_coefficient_polynomial(n, k):
                terms.append((((1 - k, k), d), c))
    return LaurentPoly(terms, 2).substitute_bulk(bulk.values)


def ks_images(spec: PolytopeSpec, bulk: BulkSpec | None = None) -> list[LaurentPoly]:
    """Derivative of the u-free potential in each bulk parameter ``a_i``.

    The u-free potential replaces ``y_i`` by ``y_i T^{-u_i}``, leaving
    ``T^{c0_j + areas}`` on each class; entry ``i`` is
    ``sum (D_i . beta) e^{b.beta} y^{d beta} T^{omega}``.
    """
    bulk = _bulk_values(spec, bulk)
    terms = [((c.fiber, c.bulk), NovikovSeries.monomial(1, c.energy)) for c in disk_classes(spec)]
    full = LaurentPoly(terms, spec.nfacets)
    return [full.bulk_log_derivative(i).substitute_bulk(bulk.values) for i in range(spec.nfacets)]
