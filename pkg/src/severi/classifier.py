"""Invariants of double covers and their position relative to the Severi lines.

For a double cover of a minimal surface ``Y0`` branched over ``R = 2L`` and
resolved canonically, with ``n`` further blow-downs to the minimal model::

    K^2 = 2 K_Y^2 + 2 K_Y.R + R^2/2 - 2 sum (m_i - 1)^2 + n
    chi = 2 chi(O_Y) + K_Y.R/4 + R^2/8 - sum m_i (m_i - 1)/2

When ``Y0`` is an isotrivial elliptic surface these combine into the gap
ledger::

    K^2 - 4 chi = 2(q-2) F.R + sum (n_j - 1) F_j.R + 2 sum (m_i - 1) + n

All comparisons are done on integers.
"""
from __future__ import annotations

import enum
import warnings
from dataclasses import dataclass, field
from fractions import Fraction

from severi.algebra import as_integer
from severi.lattice import EllipticTarget, elliptic_canonical_dot
from severi.resolution import ResolutionReport


class TargetKind(str, enum.Enum):
    ABELIAN = "Abelian"
    ELLIPTIC = "Elliptic"
    GENERAL_TYPE = "GeneralType"


class NineHalves(str, enum.Enum):
    BELOW = "BelowNineHalves"
    AT_OR_ABOVE = "AtOrAboveNineHalves"


class LineRegime(str, enum.Enum):
    FIRST = "FirstSeveriLine"
    SECOND = "SecondSeveriLine"
    ABOVE_SECOND = "AboveSecondLine"
    INCONSISTENT = "Inconsistent"


class AlbaneseMap(str, enum.Enum):
    ISOMORPHISM = "Isomorphism"
    DEGREE_TWO_ISOGENY = "DegreeTwoIsogeny"
    UNDETERMINED = "Undetermined"


class GeneralTypeBranch(str, enum.Enum):
    SEVERI_LINE = "severi-line"  # K_Y^2 >= 4 chi_Y + 4(q-2)
    NINE_HALVES = "nine-halves"  # K_Y^2 >= 9/2 chi_Y


@dataclass(frozen=True)
class TargetY0:
    kind: TargetKind
    q: int
    kY2: int = 0
    chiY: int = 0
    elliptic: EllipticTarget | None = None

    def __post_init__(self):
        kind = TargetKind(self.kind)
        object.__setattr__(self, "kind", kind)
        if self.q < 2:
            raise ValueError(f"q must be >= 2, got {self.q}")
        if kind is TargetKind.ABELIAN:
            if (self.q, self.kY2, self.chiY) != (2, 0, 0):
                raise ValueError("an Abelian target has q = 2 and K^2 = chi = 0")
            if self.elliptic is not None:
                raise ValueError("an Abelian target carries no elliptic data")
        elif kind is TargetKind.ELLIPTIC:
            if self.kY2 or self.chiY:
                raise ValueError("an elliptic target has K^2 = chi = 0")
            if self.q < 3:
                raise ValueError("an elliptic target of maximal Albanese dimension has q >= 3")
            ell = self.elliptic if self.elliptic is not None else EllipticTarget(self.q)
            if ell.q != self.q:
                raise ValueError("elliptic data has a different q")
            object.__setattr__(self, "elliptic", ell)
        elif self.elliptic is not None:
            raise ValueError("a general type target carries no elliptic data")


@dataclass(frozen=True)
class CoverSpec:
    target: TargetY0
    KYdotR: int
    R2: int
    FdotR: int | None = None
    resolution: ResolutionReport = field(default_factory=ResolutionReport.smooth)
    ample_branch: bool = True

    @property
    def n_blowdowns(self) -> int:
        return self.resolution.n_blowdowns

    @property
    def q(self) -> int:
        return self.target.q


@dataclass(frozen=True)
class Invariants:
    K2: int
    chi: int
    q: int


def cover_invariants(spec: CoverSpec) -> Invariants:
    if spec.R2 % 2:
        raise ValueError(f"R^2 = {spec.R2} is odd; a branch divisor R = 2L has even square")
    t, res = spec.target, spec.resolution
    K2 = 2 * t.kY2 + 2 * spec.KYdotR + spec.R2 // 2 - 2 * res.sum_sq + res.n_blowdowns
    chi = as_integer(
        2 * t.chiY + Fraction(spec.KYdotR, 4) + Fraction(spec.R2, 8) - Fraction(res.sum_tri, 2),
        "chi(O_X)",
    )
    if not spec.ample_branch:
        warnings.warn("branch divisor not declared ample; q(X) = q(Y0) is assumed anyway",
                      stacklevel=2)
    return Invariants(K2, chi, t.q)


def severi_gap(inv: Invariants) -> int:
    """``K^2 - 4 chi - 4(q-2)``, zero on the first Severi line."""
    return inv.K2 - 4 * inv.chi - 4 * (inv.q - 2)


def regime_check(inv: Invariants) -> NineHalves:
    return NineHalves.BELOW if 2 * inv.K2 < 9 * inv.chi else NineHalves.AT_OR_ABOVE


def admissibility_issues(spec: CoverSpec) -> tuple[str, ...]:
    """Geometric side conditions a formal spec must meet to come from a surface.

    A point with ``m_i > 1`` forces ``F.R >= 4``; a multiple fibre ``n_j F_j``
    forces ``F.R = n_j F_j.R`` with ``F_j.R = 2 F_j.L >= 2``.
    """
    t, res = spec.target, spec.resolution
    issues = []
    if t.kind is TargetKind.ABELIAN:
        if spec.KYdotR != 0:
            issues.append(f"K_Y is trivial on an Abelian surface but K_Y.R = {spec.KYdotR}")
        return tuple(issues)
    if t.kind is not TargetKind.ELLIPTIC:
        return ()
    F = spec.FdotR
    expected = elliptic_canonical_dot(t.elliptic, F)
    if spec.KYdotR != expected:
        issues.append(f"K_Y.R = {spec.KYdotR} but the canonical class formula gives {expected}")
    if not res.negligible and F < 4:
        issues.append(f"a singular point with m_i > 1 forces F.R >= 4, got {F}")
    for n, x in t.elliptic.multiple_fibres:
        if F < 2 * n:
            issues.append(f"a multiple fibre of multiplicity {n} forces F.R >= {2 * n}, got {F}")
        if n * x != F:
            issues.append(f"F = {n} F_j numerically, so F_j.R must be {Fraction(F, n)}, got {x}")
        elif x % 2:
            issues.append(f"F_j.R = {x} must be even since R = 2L")
    return tuple(issues)


@dataclass(frozen=True)
class GapLedger:
    q: int
    term_genus: int
    term_multifibre: int
    term_sing: int
    term_blowdown: int
    gap: int
    regime: LineRegime
    issues: tuple[str, ...] = ()

    @property
    def severi_gap(self) -> int:
        return self.gap - 4 * (self.q - 2)

    @property
    def consistent(self) -> bool:
        return self.regime is not LineRegime.INCONSISTENT


def _first_line_conditions(spec: CoverSpec) -> bool:
    t = spec.target
    no_multiple = t.elliptic is None or not t.elliptic.multiple_fibres
    F_ok = t.kind is TargetKind.ABELIAN or spec.FdotR == 2
    return F_ok and no_multiple and spec.resolution.negligible and spec.n_blowdowns == 0


def _ledger(spec: CoverSpec, term_genus: int, term_multifibre: int) -> GapLedger:
    q, res = spec.q, spec.resolution
    term_sing = 2 * res.sum_lin
    gap = term_genus + term_multifibre + term_sing + res.n_blowdowns
    issues = list(admissibility_issues(spec))
    inv = cover_invariants(spec)
    if severi_gap(inv) + 4 * (q - 2) != gap:
        issues.append(f"ledger gap {gap} disagrees with K^2 - 4chi = {inv.K2 - 4 * inv.chi}")
    first, second = 4 * (q - 2), 8 * (q - 2)
    if issues:
        regime = LineRegime.INCONSISTENT
    elif gap == first and _first_line_conditions(spec):
        regime = LineRegime.FIRST
    elif (gap == second and spec.KYdotR == second and res.negligible
          and res.n_blowdowns == 0 and second > first):
        regime = LineRegime.SECOND
    elif gap > second:
        regime = LineRegime.ABOVE_SECOND
    else:
        regime = LineRegime.INCONSISTENT
        issues.append(f"gap {gap} lies strictly between {first} and {second}" if first < gap < second
                      else f"gap {gap} is not attainable with these conditions")
    return GapLedger(q, term_genus, term_multifibre, term_sing, res.n_blowdowns, gap, regime,
                     tuple(issues))


def elliptic_gap_ledger(spec: CoverSpec) -> GapLedger:
    t = spec.target
    if t.kind is not TargetKind.ELLIPTIC:
        raise ValueError("the elliptic ledger needs an elliptic target")
    F = spec.FdotR
    if F is None:
        raise ValueError("F.R is required for an elliptic target")
    if F <= 0:
        raise ValueError("F.R must be positive, otherwise X would be elliptic")
    if F % 2:
        raise ValueError(f"F.R = {F} is odd, but R = 2L")
    term_genus = 2 * (t.q - 2) * F
    term_multifibre = sum((n - 1) * x for n, x in t.elliptic.multiple_fibres)
    return _ledger(spec, term_genus, term_multifibre)


def abelian_gap_ledger(spec: CoverSpec) -> GapLedger:
    """Ledger for ``q = 2``, where both Severi lines collapse to ``K^2 = 4 chi``."""
    if spec.target.kind is not TargetKind.ABELIAN:
        raise ValueError("the Abelian ledger needs an Abelian target")
    return _ledger(spec, 0, 0)


def gap_ledger(spec: CoverSpec) -> GapLedger:
    kind = spec.target.kind
    if kind is TargetKind.ELLIPTIC:
        return elliptic_gap_ledger(spec)
    if kind is TargetKind.ABELIAN:
        return abelian_gap_ledger(spec)
    raise ValueError("no gap ledger for a general type target; use general_type_bound_check")


@dataclass(frozen=True)
class GeneralTypeReport:
    branch: GeneralTypeBranch
    gap: int  # K^2 - 4 chi
    bound: int
    strict: bool
    satisfied: bool
    equality: bool
    hypothesis_holds: bool
    below_nine_halves: bool


def general_type_bound_check(spec: CoverSpec, branch: GeneralTypeBranch | str | None) -> GeneralTypeReport:
    """Evaluate the lower bound on ``K^2 - 4 chi`` for the declared branch.

    ``severi-line``: ``K^2 - 4chi >= 8(q-2)``. ``nine-halves``:
    ``K^2 - 4chi > 64 max(q-3, 1)``. ``hypothesis_holds`` records whether
    the invariants of ``Y0`` actually lie in the declared branch.
    """
    t = spec.target
    if t.kind is not TargetKind.GENERAL_TYPE:
        raise ValueError("bound check needs a general type target")
    if branch is None:
        raise ValueError("declare a branch: 'severi-line' or 'nine-halves'")
    branch = GeneralTypeBranch(branch)
    inv = cover_invariants(spec)
    gap = inv.K2 - 4 * inv.chi
    q = t.q
    if branch is GeneralTypeBranch.SEVERI_LINE:
        bound, strict = 8 * (q - 2), False
        holds = t.kY2 >= 4 * t.chiY + 4 * (q - 2)
    else:
        bound, strict = 64 * max(q - 3, 1), True
        holds = 2 * t.kY2 >= 9 * t.chiY
    satisfied = gap > bound if strict else gap >= bound
    return GeneralTypeReport(branch, gap, bound, strict, satisfied, gap == bound, holds,
                             regime_check(inv) is NineHalves.BELOW)


def albanese_rule(ramified: bool, q_equal: bool) -> AlbaneseMap:
    if q_equal and ramified:
        return AlbaneseMap.ISOMORPHISM
    if q_equal:
        return AlbaneseMap.DEGREE_TWO_ISOGENY
    return AlbaneseMap.UNDETERMINED


def etale_base_change(q: int, d: int) -> int:
    """Irregularity after an etale degree-``d`` base change of the elliptic fibration."""
    if q < 2 or d < 1:
        raise ValueError("need q >= 2 and d >= 1")
    return 2 + d * (q - 2)


def scale_invariants(inv: Invariants, d: int) -> Invariants:
    """Invariants of the degree-``d`` etale cover: ``K^2`` and ``chi`` scale, ``q-2`` scales."""
    return Invariants(d * inv.K2, d * inv.chi, etale_base_change(inv.q, d))
