"""Picard group of ``C x E`` as triples ``(deg L_C, (deg L_E, sum L_E), f)``.

A triple stands for ``alpha(L_C, L_E) + s(f)``. ``Pic(C)`` is tracked by
degree only; ``Pic(E)`` is tracked exactly by degree and Abel-Jacobi sum.

Divisors with a support (needed by the shear and the normal form) are
:class:`FormalDivisor` objects: a number of vertical fibres ``E_c`` plus a
multiset of horizontal curves ``Gamma_{f+e}``. The fibre ``C_e`` is the
horizontal curve with ``f = 0``.
"""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from typing import Iterable

from severi.algebra import AbElement, divide_by_two
from severi.lattice import NumClass, ProductSurface


class InconsistentInputError(ValueError):
    pass


@dataclass(frozen=True)
class PicTriple:
    degC: int
    degE: int
    sumE: AbElement
    homf: AbElement

    @property
    def picE(self) -> tuple[int, AbElement]:
        return (self.degE, self.sumE)

    @classmethod
    def zero(cls, S: ProductSurface) -> "PicTriple":
        return cls(0, 0, S.E_points.zero(), S.hom_group.zero())

    def __add__(self, other: "PicTriple") -> "PicTriple":
        return PicTriple(self.degC + other.degC, self.degE + other.degE,
                         self.sumE + other.sumE, self.homf + other.homf)

    def __neg__(self) -> "PicTriple":
        return PicTriple(-self.degC, -self.degE, -self.sumE, -self.homf)

    def __sub__(self, other: "PicTriple") -> "PicTriple":
        return self + (-other)

    def __mul__(self, k: int) -> "PicTriple":
        return PicTriple(k * self.degC, k * self.degE, k * self.sumE, k * self.homf)

    __rmul__ = __mul__


@dataclass(frozen=True)
class GraphDivisor:
    """``Gamma_{base + translate}``; ``base`` sends ``c0`` to the origin."""

    base: AbElement
    translate: AbElement

    @property
    def is_fibre(self) -> bool:
        return self.base.is_zero()

    def __str__(self) -> str:
        if self.is_fibre:
            return f"C_{self.translate}"
        return f"Gamma_{{{self.base}+{self.translate}}}"


def _key(t: GraphDivisor):
    return (t.base.coords, t.translate.coords)


@dataclass(frozen=True)
class FormalDivisor:
    surface: ProductSurface
    vertical: int = 0
    horizontal: tuple[tuple[GraphDivisor, int], ...] = ()

    def __post_init__(self):
        acc: Counter = Counter()
        for t, m in self.horizontal:
            if t.base.group != self.surface.hom_group or t.translate.group != self.surface.E_points:
                raise ValueError(f"{t} does not live on this surface")
            acc[t] += m
        terms = tuple(sorted(((t, m) for t, m in acc.items() if m), key=lambda tm: _key(tm[0])))
        object.__setattr__(self, "horizontal", terms)

    def _same(self, other: "FormalDivisor"):
        if other.surface != self.surface:
            raise ValueError("divisors live on different surfaces")

    def __add__(self, other: "FormalDivisor") -> "FormalDivisor":
        self._same(other)
        return FormalDivisor(self.surface, self.vertical + other.vertical,
                             self.horizontal + other.horizontal)

    def __neg__(self) -> "FormalDivisor":
        return FormalDivisor(self.surface, -self.vertical,
                             tuple((t, -m) for t, m in self.horizontal))

    def __sub__(self, other: "FormalDivisor") -> "FormalDivisor":
        return self + (-other)

    def __mul__(self, k: int) -> "FormalDivisor":
        return FormalDivisor(self.surface, k * self.vertical,
                             tuple((t, k * m) for t, m in self.horizontal))

    __rmul__ = __mul__

    @property
    def dot_E(self) -> int:
        return sum(m for _, m in self.horizontal)

    def is_effective(self) -> bool:
        return self.vertical >= 0 and all(m > 0 for _, m in self.horizontal)

    def __str__(self) -> str:
        parts = [f"{m}*{t}" if m != 1 else str(t) for t, m in self.horizontal]
        if self.vertical:
            parts.append(f"{self.vertical}*E")
        return " + ".join(parts) or "0"


def fibre_E(S: ProductSurface, count: int = 1) -> FormalDivisor:
    return FormalDivisor(S, vertical=count)


def fibre_C(S: ProductSurface, e: AbElement | None = None) -> FormalDivisor:
    e = S.E_points.zero() if e is None else e
    return FormalDivisor(S, horizontal=((GraphDivisor(S.hom_group.zero(), e), 1),))


def graph(S: ProductSurface, f: AbElement, e: AbElement | None = None) -> FormalDivisor:
    e = S.E_points.zero() if e is None else e
    return FormalDivisor(S, horizontal=((GraphDivisor(f, e), 1),))


def beta(D: FormalDivisor) -> AbElement:
    """The Hom component: fibres contribute nothing, ``Gamma_{f+e}`` gives ``f``."""
    out = D.surface.hom_group.zero()
    for t, m in D.horizontal:
        out = out + m * t.base
    return out


def translate(D: FormalDivisor, e: AbElement) -> FormalDivisor:
    """Push ``D`` forward along ``(c, x) -> (c, x + e)``."""
    return FormalDivisor(D.surface, D.vertical,
                         tuple((GraphDivisor(t.base, t.translate + e), m) for t, m in D.horizontal))


def class_of(D: FormalDivisor) -> PicTriple:
    # Gamma_{f+e} = s(f) + C_e + pi_C^*(f^*0), so it carries deg f on the C side
    S = D.surface
    out = PicTriple(D.vertical, 0, S.E_points.zero(), S.hom_group.zero())
    for t, m in D.horizontal:
        out = out + m * PicTriple(S.deg(t.base), 1, t.translate, t.base)
    return out


def num_class(D: FormalDivisor) -> NumClass:
    a = sum(m for t, m in D.horizontal if t.is_fibre)
    graphs = [(t.base.coords, m) for t, m in D.horizontal if not t.is_fibre]
    return NumClass(a=a, b=D.vertical, graphs=graphs)


def triple_num_class(S: ProductSurface, T: PicTriple) -> NumClass:
    """Numerical class of a triple: ``degE*C + degC*E + (Gamma_f - C - deg(f)*E)``."""
    a, b = T.degE, T.degC
    if T.homf.is_zero():
        return NumClass(a=a, b=b)
    return NumClass(a=a - 1, b=b - S.deg(T.homf), graphs={T.homf.coords: 1})


def section_s(S: ProductSurface, f: AbElement) -> PicTriple:
    """``s(f) = Gamma_f - C_0 - sum a_c E_c``; the fibre sum has total degree ``deg f``."""
    D = graph(S, f) - fibre_C(S) - fibre_E(S, S.deg(f))
    return class_of(D)


def is_two_divisible(D: PicTriple) -> PicTriple | None:
    if D.degC % 2 or D.degE % 2:
        return None
    half_e = divide_by_two(D.sumE)
    half_f = divide_by_two(D.homf)
    if half_e is None or half_f is None:
        return None
    return PicTriple(D.degC // 2, D.degE // 2, half_e, half_f)


def shear(D: FormalDivisor, f: AbElement) -> FormalDivisor:
    """Apply ``(c, e) -> (c, e - f(c))``: ``Gamma_{g+e}`` goes to ``Gamma_{(g-f)+e}``."""
    return FormalDivisor(D.surface, D.vertical,
                         tuple((GraphDivisor(t.base - f, t.translate), m) for t, m in D.horizontal))


@dataclass(frozen=True)
class NormalForm:
    """``Gamma_{g+e1} + Gamma_{g+e2} + sum_{i=1}^{2d} E_i``."""

    g: AbElement
    e1: AbElement
    e2: AbElement
    d: int

    @property
    def n_fibres(self) -> int:
        return 2 * self.d

    def expand(self, S: ProductSurface) -> FormalDivisor:
        return graph(S, self.g, self.e1) + graph(S, self.g, self.e2) + fibre_E(S, self.n_fibres)


def normal_form(R: FormalDivisor) -> NormalForm:
    """Rewrite a 2-divisible effective ``R`` with ``R.E = 2`` up to linear equivalence.

    ``e1, e2`` are the points of ``R`` over ``c0`` (sorted), ``g`` is half of
    ``beta(R)``, and the vertical part is whatever degree is left on the
    ``C`` side.
    """
    S = R.surface
    if not R.is_effective():
        raise ValueError("normal form needs an effective divisor")
    if R.dot_E != 2:
        raise ValueError(f"R.E must be 2, got {R.dot_E}")
    T = class_of(R)
    g = divide_by_two(T.homf)
    if g is None:
        raise InconsistentInputError(f"beta(R) = {T.homf} is not divisible by 2")
    if is_two_divisible(T) is None:
        raise InconsistentInputError("R is not divisible by 2 in the Picard group")
    points = sorted((t.translate for t, m in R.horizontal for _ in range(m)), key=lambda e: e.coords)
    e1, e2 = points
    n_fibres = T.degC - 2 * S.deg(g)
    if n_fibres <= 0:
        raise InconsistentInputError(f"vertical part has degree {n_fibres}; it must be positive")
    return NormalForm(g, e1, e2, n_fibres // 2)


def formal_sum(terms: Iterable[FormalDivisor], S: ProductSurface) -> FormalDivisor:
    out = FormalDivisor(S)
    for t in terms:
        out = out + t
    return out
