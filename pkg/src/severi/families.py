"""Generators for the worked examples and their closed-form invariants.

``ex3.1``       double cover of ``C x E`` branched on ``2C + 2dE``
``ex3.2``       the same with ``4C + 2dE``
``ex3.3``       a non-product quotient ``(C x E)/G``, ``G = Z/2``
``ex3.4``       double cover of an Abelian surface with one ordinary quadruple point
``rem4.1-AxB``  the product of a genus 2 curve and a genus ``g_B`` curve
``rem4.1-BxB``  double cover of ``B x B`` branched on a curve in ``|2B_1 + 2B_2|``
"""
from __future__ import annotations

from dataclasses import dataclass

from severi.algebra import AbGroup
from severi.classifier import CoverSpec, Invariants, TargetKind, TargetY0
from severi.equivariant import GAction
from severi.lattice import (C_CLASS, E_CLASS, EllipticTarget, ProductSurface,
                            canonical_class, elliptic_canonical_dot, pairing)
from severi.resolution import SingNode, resolve

FAMILIES = ("ex3.1", "ex3.2", "ex3.3", "ex3.4", "rem4.1-AxB", "rem4.1-BxB")
SWEEP_FAMILIES = ("ex3.1", "ex3.2", "ex3.3")


class UnknownFamilyError(KeyError):
    pass


class ParameterError(ValueError):
    pass


@dataclass(frozen=True)
class ExampleData:
    name: str
    params: tuple[tuple[str, int], ...]
    spec: CoverSpec | None
    expected: Invariants
    action: GAction | None = None
    realizability: str = "known"


def _product_cover(q: int, d: int, c_coeff: int) -> CoverSpec:
    S = ProductSurface(genus_C=q - 1)
    R = c_coeff * C_CLASS + 2 * d * E_CLASS
    KR = pairing(S, canonical_class(S), R)
    target = TargetY0(TargetKind.ELLIPTIC, q)
    return CoverSpec(target, KYdotR=KR, R2=pairing(S, R, R), FdotR=pairing(S, R, E_CLASS))


def _check_qd(q: int, d: int, require_below: bool):
    if q < 3:
        raise ParameterError(f"q must be >= 3, got {q}")
    if d < 1:
        raise ParameterError(f"d must be positive, got {d}")
    if require_below and d <= 7 * (q - 2):
        raise ParameterError(f"K^2 < 9/2 chi needs d > 7(q-2) = {7 * (q - 2)}, got d = {d}")


def _ex31(q: int, d: int, require_below: bool) -> ExampleData:
    _check_qd(q, d, require_below)
    return ExampleData("ex3.1", (("q", q), ("d", d)), _product_cover(q, d, 2),
                       Invariants(8 * (q - 2) + 4 * d, q - 2 + d, q))


def _ex32(q: int, d: int, require_below: bool) -> ExampleData:
    _check_qd(q, d, require_below)
    return ExampleData("ex3.2", (("q", q), ("d", d)), _product_cover(q, d, 4),
                       Invariants(16 * (q - 2) + 8 * d, 2 * (q - 2) + 2 * d, q))


def example_33_action() -> GAction:
    """``G = Z/2`` inside ``E[2]``, with ``Hom(C, E) = 0``."""
    E2 = AbGroup(0, (2, 2))
    return GAction(G=AbGroup(0, (2,)), E_points=E2, embed_in_E=(E2((1, 0)),), hom_action=((),))


def _ex33(q: int, d: int, require_below: bool) -> ExampleData:
    _check_qd(q, d, require_below)
    # pull back to the etale double cover C x E: R pulls back to 4C + 4dE there
    cover = _product_cover(2 * (q - 2) + 2, 2 * d, 4)
    F = cover.FdotR
    ell = EllipticTarget(q)
    spec = CoverSpec(TargetY0(TargetKind.ELLIPTIC, q, elliptic=ell),
                     KYdotR=elliptic_canonical_dot(ell, F), R2=cover.R2 // 2, FdotR=F)
    # a non-product quotient at q = 3 is not known to exist
    real = "unknown" if q == 3 else "known"
    return ExampleData("ex3.3", (("q", q), ("d", d)), spec,
                       Invariants(16 * (q - 2) + 8 * d, 2 * (q - 2) + 2 * d, q),
                       action=example_33_action(), realizability=real)


def _ex34(R2: int) -> ExampleData:
    if R2 < 16 or R2 % 8:
        raise ParameterError(f"R^2 must be a multiple of 8 and at least 16, got {R2}")
    res = resolve([SingNode(4)])
    spec = CoverSpec(TargetY0(TargetKind.ABELIAN, 2), KYdotR=0, R2=R2, resolution=res)
    return ExampleData("ex3.4", (("R2", R2),), spec, Invariants(R2 // 2 - 2, R2 // 8 - 1, 2))


def _axb(gB: int) -> ExampleData:
    if gB < 2:
        raise ParameterError(f"g(B) must be >= 2, got {gB}")
    return ExampleData("rem4.1-AxB", (("gB", gB),), None, Invariants(8 * (gB - 1), gB - 1, gB + 2))


def _bxb() -> ExampleData:
    # g(B) = 2: K_Y = 2B_1 + 2B_2, K_Y^2 = 8, chi = 1, R ~num K_Y
    target = TargetY0(TargetKind.GENERAL_TYPE, q=4, kY2=8, chiY=1)
    spec = CoverSpec(target, KYdotR=8, R2=8)
    return ExampleData("rem4.1-BxB", (), spec, Invariants(36, 5, 4))


def generate_example(name: str, q: int | None = None, d: int | None = None,
                     R2: int | None = None, gB: int | None = None,
                     require_below_nine_halves: bool = False) -> ExampleData:
    if name not in FAMILIES:
        raise UnknownFamilyError(name)
    if name in SWEEP_FAMILIES:
        q = 3 if q is None else q
        d = 7 * (q - 2) + 1 if d is None else d
        return {"ex3.1": _ex31, "ex3.2": _ex32, "ex3.3": _ex33}[name](q, d, require_below_nine_halves)
    if name == "ex3.4":
        return _ex34(16 if R2 is None else R2)
    if name == "rem4.1-AxB":
        return _axb(2 if gB is None else gB)
    return _bxb()
