"""Critical-point reports for catalog surfaces and the appendix check table."""
from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction

from .catalog import APPENDIX_SURFACES, CatalogEntry, catalog_lookup
from .lifting import OrderNotReached, SingularJacobian, newton_lift, residual_valuation
from .novikov import _exp_str, as_exponent
from .potential import BulkSpec, assemble_smoothing, parse_bulk
from .solver import CriticalPoint, DegenerateSystem, gradient, is_nondegenerate, solve_complex_system
from .toric import InteriorPoint, PolytopeSpec

__all__ = [
    "AppendixRow",
    "CriticalReport",
    "classify",
    "verify_appendix",
]


@dataclass
class CriticalReport:
    surface: str
    u: InteriorPoint
    bulk: str
    lam: Fraction | None
    points: list[CriticalPoint] = field(default_factory=list)
    degenerate: bool = False
    order: Fraction | None = None
    seed: int | None = None
    notes: list[str] = field(default_factory=list)

    @property
    def nondegenerate_count(self) -> int:
        return sum(1 for p in self.points if p.nondegenerate)

    @property
    def total_multiplicity(self) -> int:
        return sum(p.multiplicity for p in self.points)

    @property
    def residual_valuations(self) -> list:
        return [p.residual_valuation for p in self.points]

    def render(self) -> str:
        lines = [f"{self.surface} at u={self.u}  bulk: {self.bulk}"]
        if self.lam is not None:
            lines.append(f"leading energy T^{{{_exp_str(self.lam)}}}")
        if self.degenerate:
            lines.append("leading critical locus is positive-dimensional (degenerate)")
        for i, p in enumerate(self.points, 1):
            lines.append(f"  [{i}] {p}")
            if p.lifted is not None:
                for name, s in zip(("y1", "y2"), p.lifted):
                    lines.append(f"      {name} = {s}")
                lines.append(f"      residual valuation >= {_exp_str(p.residual_valuation)}")
        lines.append(
            f"{len(self.points)} points, {self.nondegenerate_count} nondegenerate, "
            f"total multiplicity {self.total_multiplicity}"
        )
        lines.extend(f"note: {n}" for n in self.notes)
        return "\n".join(lines)

    def to_json(self) -> dict:
        return {
            "surface": self.surface,
            "u": [str(self.u.u1), str(self.u.u2)],
            "bulk": self.bulk,
            "leading_energy": None if self.lam is None else _exp_str(self.lam),
            "degenerate": self.degenerate,
            "order": None if self.order is None else _exp_str(self.order),
            "seed": self.seed,
            "points": [p.to_json() for p in self.points],
            "nondegenerate_count": self.nondegenerate_count,
            "notes": self.notes,
        }


def _resolve(surface) -> tuple[str, PolytopeSpec, CatalogEntry | None]:
    if isinstance(surface, CatalogEntry):
        return surface.name, surface.spec, surface
    if isinstance(surface, PolytopeSpec):
        return surface.name, surface, None
    entry = catalog_lookup(surface)
    return entry.name, entry.spec, entry


def classify(surface, u=None, bulk=None, order=None, seed=None) -> CriticalReport:
    """Solve the leading critical system of the smoothing potential, grade
    each root by its log-Hessian, and lift simple roots to ``order``.

    ``bulk`` is a :class:`BulkSpec`, a bulk string, or None for the catalog
    choice (zero bulk for specs outside the catalog).
    """
    name, spec, entry = _resolve(surface)
    if u is None:
        if entry is None or entry.monotone_point is None:
            raise ValueError(f"{name} has no default point; pass u")
        u = entry.monotone_point
    u = InteriorPoint.parse(u)
    if bulk is None:
        bulk = entry.bulk_spec() if entry is not None else BulkSpec.zero(spec.nfacets)
    elif isinstance(bulk, str):
        bulk = parse_bulk(bulk, spec.nfacets)
    pot = assemble_smoothing(spec, u, bulk)
    if pot.bulk_names:
        raise ValueError(f"bulk symbols {', '.join(pot.bulk_names)} need numeric values")
    lam, lead = pot.full.leading_part()
    order = None if order is None else as_exponent(order)
    report = CriticalReport(name, u, str(bulk) or "zero", lam, order=order, seed=seed)
    try:
        points = solve_complex_system(*gradient(lead), seed=seed)
    except DegenerateSystem as exc:
        report.degenerate = True
        report.notes.append(str(exc))
        return report
    for pt in points:
        ok, det = is_nondegenerate(lead, pt.y)
        pt.hessian_log_det = det
        pt.nondegenerate = ok and pt.multiplicity == 1
    report.points = points
    if order is not None:
        norm = pot.normalized()
        system = (norm.log_derivative(1), norm.log_derivative(2))
        for pt in points:
            if not pt.nondegenerate:
                continue
            try:
                pt.lifted = newton_lift(system, pt.y, order)
            except (SingularJacobian, OrderNotReached) as exc:
                report.notes.append(f"lift of {pt} failed: {exc}")
                continue
            pt.residual_valuation = residual_valuation(system, pt.lifted)
    return report


@dataclass
class AppendixRow:
    case: str
    expected: str
    observed: str
    ok: bool

    def __str__(self):
        mark = "ok " if self.ok else "BAD"
        return f"{mark} {self.case:<16} expected {self.expected:<22} observed {self.observed}"


def _check_bulk(name: str) -> AppendixRow:
    entry = catalog_lookup(name)
    rep = classify(entry)
    n, nd = len(rep.points), rep.nondegenerate_count
    ok = not rep.degenerate and n == entry.expected_count and nd == n
    return AppendixRow(
        f"{name} bulk", f"{entry.expected_count} nondegenerate", f"{n} points, {nd} nondegenerate", ok
    )


def _check_zero(name: str) -> AppendixRow:
    entry = catalog_lookup(name)
    rep = classify(entry, bulk=entry.zero_bulk())
    n, nd = len(rep.points), rep.nondegenerate_count
    want = entry.zero_bulk_count
    if want.startswith("<"):
        ok = 0 < nd < int(want[1:])
        expected = f"0 < nondegenerate {want}"
    else:
        ok = n == nd == int(want)
        expected = f"{want} nondegenerate"
    return AppendixRow(f"{name} zero bulk", expected, f"{n} points, {nd} nondegenerate", ok)


def appendix_cases() -> list[tuple]:
    cases = [(_check_bulk, name) for name in APPENDIX_SURFACES]
    cases += [
        (_check_zero, name) for name in APPENDIX_SURFACES
        if catalog_lookup(name).zero_bulk_count is not None
    ]
    return cases


def verify_appendix(workers: int = 4) -> list[AppendixRow]:
    """Every printed count; rows come back in case order for any pool size."""
    cases = appendix_cases()
    if workers <= 1:
        return [f(name) for f, name in cases]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(lambda c: c[0](c[1]), cases))
