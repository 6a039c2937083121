"""Numerical divisor classes on ``C x E`` and on isotrivial elliptic surfaces.

A class is ``a*C + b*E + sum(m_f * Gamma_f)`` where ``C`` is a fibre of the
projection to ``E``, ``E`` a fibre of the projection to ``C`` and
``Gamma_f`` the graph of ``f`` in ``Hom_{c0}(C, E)``. The intersection
rules are

    C.C = E.E = 0,  C.E = 1,  Gamma_f.E = 1,
    Gamma_f.C = deg f,  Gamma_f.Gamma_g = deg(f - g).
"""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from typing import Mapping, Sequence

from severi.algebra import AbElement, AbGroup, QuadForm


class SurfaceMismatchError(ValueError):
    pass


@dataclass(frozen=True)
class ProductSurface:
    """``C x E`` with ``g(C) >= 2``; ``deg_form`` measures ``deg f`` on Hom."""

    genus_C: int
    deg_form: QuadForm = field(default_factory=lambda: QuadForm(()))
    E_points: AbGroup = field(default_factory=AbGroup)

    def __post_init__(self):
        if self.genus_C < 2:
            raise ValueError(f"base curve must have genus >= 2, got {self.genus_C}")
        if self.deg_form.dim and not self.deg_form.definite:
            raise ValueError("degree form must be declared positive definite")

    @property
    def rank(self) -> int:
        return self.deg_form.dim

    @property
    def hom_group(self) -> AbGroup:
        return AbGroup(self.rank)

    @property
    def q(self) -> int:
        return self.genus_C + 1

    def hom(self, coords: Sequence[int]) -> AbElement:
        return self.hom_group(coords)

    def deg(self, f: AbElement | Sequence[int]) -> int:
        return self.deg_form(_coords(f))


def _coords(f) -> tuple[int, ...]:
    return f.coords if isinstance(f, AbElement) else tuple(int(x) for x in f)


def _merge(graphs) -> tuple[tuple[tuple[int, ...], int], ...]:
    acc: Counter = Counter()
    items = graphs.items() if isinstance(graphs, Mapping) else graphs
    for f, m in items:
        acc[_coords(f)] += m
    return tuple(sorted((k, v) for k, v in acc.items() if v))


@dataclass(frozen=True)
class NumClass:
    """``a*C + b*E + sum(m * Gamma_f)``; graph parts are kept unreduced.

    ``graphs`` accepts a mapping ``f -> multiplicity`` or an iterable of
    ``(f, multiplicity)`` pairs; ``f`` is an :class:`AbElement` or a
    coordinate tuple.
    """

    a: int = 0
    b: int = 0
    graphs: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "graphs", _merge(self.graphs))

    def __add__(self, other: "NumClass") -> "NumClass":
        return NumClass(self.a + other.a, self.b + other.b, self.graphs + other.graphs)

    def __neg__(self) -> "NumClass":
        return NumClass(-self.a, -self.b, tuple((f, -m) for f, m in self.graphs))

    def __sub__(self, other: "NumClass") -> "NumClass":
        return self + (-other)

    def __mul__(self, k: int) -> "NumClass":
        return NumClass(k * self.a, k * self.b, tuple((f, k * m) for f, m in self.graphs))

    __rmul__ = __mul__

    @property
    def n_graphs(self) -> int:
        return sum(m for _, m in self.graphs)

    def hom_part(self) -> tuple[int, ...] | None:
        """Weighted sum of graph coordinates, or None without graphs."""
        if not self.graphs:
            return None
        r = len(self.graphs[0][0])
        return tuple(sum(m * f[i] for f, m in self.graphs) for i in range(r))


C_CLASS = NumClass(a=1)
E_CLASS = NumClass(b=1)


def graph_class(f) -> NumClass:
    return NumClass(graphs={_coords(f): 1})


def _check_on(S: ProductSurface, D: NumClass):
    for f, _ in D.graphs:
        if len(f) != S.rank:
            raise SurfaceMismatchError(
                f"graph coordinates of length {len(f)} do not live on a surface with Hom rank {S.rank}")


def pairing(S: ProductSurface, D1: NumClass, D2: NumClass) -> int:
    _check_on(S, D1)
    _check_on(S, D2)
    total = D1.a * D2.b + D1.b * D2.a
    for f, m in D1.graphs:
        total += m * (D2.b + D2.a * S.deg(f))
    for g, m in D2.graphs:
        total += m * (D1.b + D1.a * S.deg(g))
    for f, m in D1.graphs:
        for g, n in D2.graphs:
            total += m * n * S.deg(tuple(x - y for x, y in zip(f, g)))
    return total


def probes(S: ProductSurface) -> list[NumClass]:
    """C, E and the graphs of 0, each basis vector and each pairwise sum."""
    out = [C_CLASS, E_CLASS, graph_class((0,) * S.rank)]
    basis = [tuple(int(i == j) for j in range(S.rank)) for i in range(S.rank)]
    out += [graph_class(v) for v in basis]
    for i in range(S.rank):
        for j in range(i + 1, S.rank):
            out.append(graph_class(tuple(x + y for x, y in zip(basis[i], basis[j]))))
    return out


def num_equal(S: ProductSurface, D1: NumClass, D2: NumClass) -> bool:
    """Numerical equality: same Hom part and same pairing against every probe."""
    h1 = D1.hom_part() or (0,) * S.rank
    h2 = D2.hom_part() or (0,) * S.rank
    if h1 != h2:
        return False
    return all(pairing(S, D1, P) == pairing(S, D2, P) for P in probes(S))


def canonical_class(S: ProductSurface) -> NumClass:
    return NumClass(a=0, b=2 * S.genus_C - 2)


@dataclass(frozen=True)
class EllipticTarget:
    """Numerical data of an isotrivial elliptic surface over a curve of genus ``q - 1``.

    ``multiple_fibres`` holds pairs ``(n_j, F_j.R)`` with ``F_j`` the reduced
    multiple fibre.
    """

    q: int
    multiple_fibres: tuple[tuple[int, int], ...] = ()

    def __post_init__(self):
        if self.q < 2:
            raise ValueError(f"irregularity must be >= 2, got {self.q}")
        fibres = tuple((int(n), int(x)) for n, x in self.multiple_fibres)
        for n, _ in fibres:
            if n < 2:
                raise ValueError(f"multiple fibre multiplicity must be >= 2, got {n}")
        object.__setattr__(self, "multiple_fibres", fibres)


def elliptic_canonical_dot(T: EllipticTarget, FdotR: int) -> int:
    """``K.R`` for ``K ~num 2(q-2)F + sum (n_j - 1) F_j``."""
    if FdotR < 0:
        raise ValueError("F.R must be non-negative")
    return 2 * (T.q - 2) * FdotR + sum((n - 1) * x for n, x in T.multiple_fibres)

