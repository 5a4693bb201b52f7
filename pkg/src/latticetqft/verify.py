"""Three-way verification of the counting identities and Pachner fuzzing.

Each report compares the character-theoretic side, the homomorphism-count
side, and optionally the contracted state sum, all in exact arithmetic.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from . import surface
from .algebra import group_algebra, parse_algebra_spec
from .errors import BadSpec, WorkCapExceeded
from .grouptheory import (
    DEFAULT_ORDER_CAP,
    DEFAULT_WORK_CAP,
    FiniteGroup,
    irrep_data,
    parse_group_spec,
)
from .surface import Triangulation
from .tqft import invariant_direct, mednykh_lhs, mednykh_rhs

# three-way comparison is on by default only below these sizes
DIRECT_MAX_ORDER = 8
DIRECT_MAX_ABS_CHI = 1


def parse_surface_spec(spec: str) -> Triangulation:
    """genus:<g> | crosscaps:<k> | path of a .tri file."""
    spec = spec.strip()
    if spec.startswith("genus:"):
        try:
            return surface.orientable_genus_surface(int(spec[len("genus:"):]))
        except ValueError:
            raise BadSpec(f"bad genus in {spec!r}") from None
    if spec.startswith("crosscaps:"):
        try:
            return surface.nonorientable_surface(int(spec[len("crosscaps:"):]))
        except ValueError:
            raise BadSpec(f"bad crosscap count in {spec!r}") from None
    if spec.endswith(".tri"):
        with open(spec, encoding="utf-8") as fh:
            return surface.parse(fh.read())
    raise BadSpec(f"unrecognized surface spec {spec!r}")


def format_rational(x: Optional[Fraction]) -> Optional[str]:
    return None if x is None else f"{x.numerator}/{x.denominator}"


@dataclass(frozen=True)
class VerificationReport:
    group_spec: str
    surface_spec: str
    chi: int
    orientable: bool
    lhs: Optional[Fraction]
    rhs: Optional[Fraction]
    direct: Optional[Fraction]
    status: str                  # "Pass" | "Fail" | "Skipped"
    reason: str = ""

    def to_json_dict(self) -> dict:
        out = {
            "group_spec": self.group_spec,
            "surface_spec": self.surface_spec,
            "chi": self.chi,
            "orientable": self.orientable,
            "lhs": format_rational(self.lhs),
            "rhs": format_rational(self.rhs),
            "direct": format_rational(self.direct),
            "status": self.status,
        }
        if self.reason:
            out["reason"] = self.reason
        return out


def verify_mednykh(group: FiniteGroup, tri: Triangulation,
                   with_direct: Optional[bool] = None,
                   group_spec: str = "", surface_spec: str = "",
                   max_work: int = DEFAULT_WORK_CAP) -> VerificationReport:
    """Compare the irreducible-dimension sum with the homomorphism count,
    optionally also with the contracted group-algebra state sum.

    with_direct=None enables the contraction for small instances (order <= 8,
    |chi| <= 1).  Cap violations produce a Skipped report, never an error.
    """
    chi = tri.euler_characteristic
    orientable = tri.is_orientable
    if with_direct is None:
        with_direct = group.order <= DIRECT_MAX_ORDER and abs(chi) <= DIRECT_MAX_ABS_CHI
    lhs = mednykh_lhs(irrep_data(group), chi, orientable)
    rhs = direct = None
    reason = ""
    try:
        rhs = mednykh_rhs(group, tri, max_work)
        if with_direct:
            direct = invariant_direct(group_algebra(group), tri)
    except WorkCapExceeded as exc:
        reason = str(exc)
    if reason:
        status = "Skipped"
    else:
        values = [v for v in (lhs, rhs, direct) if v is not None]
        status = "Pass" if all(v == values[0] for v in values) else "Fail"
    return VerificationReport(group_spec, surface_spec, chi, orientable,
                              lhs, rhs, direct, status, reason)


def verify_grid(group_specs: Sequence[str], surface_specs: Sequence[str],
                with_direct: Optional[bool] = None, threads: int = 1,
                max_work: int = DEFAULT_WORK_CAP,
                max_order: int = DEFAULT_ORDER_CAP) -> list[VerificationReport]:
    """All (group, surface) combinations, reports in input product order."""
    jobs = [(g, s) for g in group_specs for s in surface_specs]

    def run(job):
        gspec, sspec = job
        group = parse_group_spec(gspec, max_order)
        tri = parse_surface_spec(sspec)
        return verify_mednykh(group, tri, with_direct, gspec, sspec, max_work)

    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            return list(pool.map(run, jobs))
    return [run(job) for job in jobs]


def render_table(reports: Sequence[VerificationReport]) -> str:
    headers = ("group", "surface", "chi", "orient", "lhs", "rhs", "direct", "status")
    rows = [headers]
    for r in reports:
        rows.append((
            r.group_spec or "-", r.surface_spec or "-", str(r.chi),
            "yes" if r.orientable else "no",
            str(r.lhs) if r.lhs is not None else "-",
            str(r.rhs) if r.rhs is not None else "-",
            str(r.direct) if r.direct is not None else "-",
            r.status + (f" ({r.reason})" if r.reason else ""),
        ))
    widths = [max(len(row[i]) for row in rows) for i in range(len(headers))]
    lines = ["  ".join(cell.ljust(w) for cell, w in zip(row, widths)).rstrip()
             for row in rows]
    return "\n".join(lines)


@dataclass(frozen=True)
class FuzzResult:
    passed: bool
    value: Fraction              # invariant of the starting triangulation
    walks: int
    steps: int
    seed: int
    counterexample: Optional[str] = None    # .tri text reproducing a mismatch
    detail: str = ""

    def to_json_dict(self) -> dict:
        out = {
            "status": "Pass" if self.passed else "Fail",
            "value": format_rational(self.value),
            "walks": self.walks,
            "steps": self.steps,
            "seed": self.seed,
        }
        if not self.passed:
            out["detail"] = self.detail
            out["counterexample"] = self.counterexample
        return out


def pachner_fuzz(algebra_spec: str, surface_spec: str, walks: int, steps: int,
                 seed: int) -> FuzzResult:
    """Check that the state sum is constant along random Pachner walks.

    Walk i uses PRNG seed `seed + i`; the invariant is recomputed after every
    move.  A mismatch reports the serialized offending triangulation.
    """
    algebra = parse_algebra_spec(algebra_spec)
    base_tri = parse_surface_spec(surface_spec)
    base = invariant_direct(algebra, base_tri)
    for walk in range(walks):
        for step, tri in enumerate(surface.iter_pachner_walk(base_tri, steps, seed + walk)):
            value = invariant_direct(algebra, tri)
            if value != base:
                return FuzzResult(
                    False, base, walks, steps, seed,
                    counterexample=tri.serialize(),
                    detail=(f"walk {walk} step {step}: got {value}, expected {base}"))
    return FuzzResult(True, base, walks, steps, seed)
