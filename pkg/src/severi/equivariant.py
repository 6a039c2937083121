"""A finite group ``G`` acting diagonally on ``C x E`` and the product test.

``G`` sits inside the points of ``E`` (it acts by translation there) and
acts on ``Hom_{c0}(C, E)`` through one integer matrix per generator of its
invariant-factor decomposition. The quotient ``(C x E)/G`` is a product
exactly when some ``G``-fixed line bundle has degree 1 on the elliptic
fibre. After shearing by ``f = beta(L)`` the conjugated action reads
``(c, e) -> (gc, e + g - e_g)`` with ``e_g = f(g c0)``, so a fixed ``f``
whose twist satisfies ``e_g = g`` for every ``g`` certifies a product.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence

from severi.algebra import AbElement, AbGroup, integer_kernel
from severi.lattice import ProductSurface

EXACT_KERNEL_MAX_RANK = 8

Matrix = tuple[tuple[int, ...], ...]


class InvalidActionError(ValueError):
    pass


class InvalidTwistError(InvalidActionError):
    pass


def _matmul(a: Matrix, b: Matrix) -> Matrix:
    n = len(a)
    return tuple(tuple(sum(a[i][k] * b[k][j] for k in range(n)) for j in range(n)) for i in range(n))


def _identity(n: int) -> Matrix:
    return tuple(tuple(int(i == j) for j in range(n)) for i in range(n))


def _matpow(a: Matrix, k: int) -> Matrix:
    out = _identity(len(a))
    for _ in range(k):
        out = _matmul(out, a)
    return out


def _apply(a: Matrix, v: Sequence[int]) -> tuple[int, ...]:
    return tuple(sum(row[j] * v[j] for j in range(len(v))) for row in a)


@dataclass(frozen=True)
class GAction:
    G: AbGroup
    E_points: AbGroup
    embed_in_E: tuple[AbElement, ...]
    hom_action: tuple[Matrix, ...]
    rank: int | None = None  # inferred from the matrices; required when G is trivial

    def __post_init__(self):
        G = self.G
        if not G.is_finite:
            raise InvalidActionError("G must be finite")
        if len(self.embed_in_E) != G.ngens or len(self.hom_action) != G.ngens:
            raise InvalidActionError(f"need one image and one matrix per generator of {G}")
        mats = tuple(tuple(tuple(int(x) for x in row) for row in m) for m in self.hom_action)
        ranks = {len(m) for m in mats}
        if len(ranks) > 1 or any(len(row) != len(m) for m in mats for row in m):
            raise InvalidActionError("hom action matrices must be square of a common size")
        inferred = ranks.pop() if ranks else None
        if self.rank is not None and inferred is not None and self.rank != inferred:
            raise InvalidActionError(f"declared Hom rank {self.rank} but matrices have size {inferred}")
        rank = self.rank if self.rank is not None else (inferred or 0)
        if rank < 0:
            raise InvalidActionError("Hom rank must be non-negative")
        object.__setattr__(self, "hom_action", mats)
        object.__setattr__(self, "rank", rank)
        for img, n in zip(self.embed_in_E, G.torsion):
            if img.group != self.E_points:
                raise InvalidActionError(f"image {img} is not a point of {self.E_points}")
            if not (n * img).is_zero():
                raise InvalidActionError(f"image {img} of a generator of order {n} does not have order dividing {n}")
        for g in G.elements():
            if not g.is_zero() and self.embed(g).is_zero():
                raise InvalidActionError(f"embedding of G into E is not injective: {g} maps to 0")
        ident = _identity(rank)
        for m, n in zip(mats, G.torsion):
            if _matpow(m, n) != ident:
                raise InvalidActionError(f"generator matrix {m} does not satisfy M^{n} = I")
        for i, a in enumerate(mats):
            for b in mats[i + 1:]:
                if _matmul(a, b) != _matmul(b, a):
                    raise InvalidActionError("generator matrices do not commute")

    @property
    def hom_group(self) -> AbGroup:
        return AbGroup(self.rank)

    def embed(self, g: AbElement) -> AbElement:
        out = self.E_points.zero()
        for c, img in zip(g.coords, self.embed_in_E):
            out = out + c * img
        return out

    def matrix(self, g: AbElement) -> Matrix:
        out = _identity(self.rank)
        for c, m in zip(g.coords, self.hom_action):
            out = _matmul(out, _matpow(m, c))
        return out


def act_on_hom(A: GAction, g: AbElement, f: AbElement) -> AbElement:
    if g.group != A.G:
        raise ValueError(f"{g} is not an element of {A.G}")
    return A.hom_group(_apply(A.matrix(g), f.coords))


def orbit_sum(A: GAction, f: AbElement) -> AbElement:
    out = A.hom_group.zero()
    for g in A.G.elements():
        out = out + act_on_hom(A, g, f)
    return out


def validate_orbit_sum(A: GAction) -> None:
    """Reject actions where the orbit sum of a basis vector is not ``|G| f``."""
    n = A.G.order()
    for f in A.hom_group.gens():
        if orbit_sum(A, f) != n * f:
            raise InvalidActionError(f"orbit sum of {f} is {orbit_sum(A, f)}, expected {n * f}")


def is_fixed(A: GAction, f: AbElement) -> bool:
    return all(_apply(m, f.coords) == f.coords for m in A.hom_action)


def fixed_hom_elements(A: GAction, bound: int | None = None) -> list[AbElement]:
    """Basis of the fixed sublattice, or ``[0]`` when it is trivial.

    Above :data:`EXACT_KERNEL_MAX_RANK` the fixed vectors inside the box of
    radius ``bound`` are listed instead.
    """
    H = A.hom_group
    if A.rank <= EXACT_KERNEL_MAX_RANK:
        rows = [tuple(m[i][j] - int(i == j) for j in range(A.rank))
                for m in A.hom_action for i in range(A.rank)]
        basis = [H(v) for v in integer_kernel(rows, A.rank)]
    else:
        if bound is None:
            raise ValueError(f"Hom rank {A.rank} needs a coordinate bound for box enumeration")
        basis = [f for f in H.box(bound) if not f.is_zero() and is_fixed(A, f)]
    return basis or [H.zero()]


def twist_from_generators(A: GAction, values: Sequence[AbElement]) -> dict[tuple[int, ...], AbElement]:
    """Extend ``e`` given on generators of ``G`` to a full table ``g -> e_g``."""
    if len(values) != A.G.ngens:
        raise InvalidTwistError(f"need {A.G.ngens} twist values, got {len(values)}")
    for v, n in zip(values, A.G.torsion):
        if v.group != A.E_points:
            raise InvalidTwistError(f"twist value {v} is not a point of {A.E_points}")
        if not (n * v).is_zero():
            raise InvalidTwistError(f"twist value {v} on a generator of order {n} is inconsistent")
    table = {}
    for g in A.G.elements():
        e = A.E_points.zero()
        for c, v in zip(g.coords, values):
            e = e + c * v
        table[g.coords] = e
    return table


def validate_twist(A: GAction, twist: Mapping[tuple[int, ...], AbElement]) -> None:
    """Check ``e_{g+h} = e_g + e_h`` over all pairs.

    ``G`` acts on ``E`` by translations, which fix every degree-0 class, so
    the consistency law for the twist is plain additivity.
    """
    elems = list(A.G.elements())
    missing = [g.coords for g in elems if g.coords not in twist]
    if missing:
        raise InvalidTwistError(f"twist is missing values for {missing}")
    for g in elems:
        for h in elems:
            if twist[(g + h).coords] != twist[g.coords] + twist[h.coords]:
                raise InvalidTwistError(f"twist violates e_(g+h) = e_g + e_h at g={g}, h={h}")


class Verdict(str, enum.Enum):
    PRODUCT = "Product"
    NOT_PRODUCT = "NotProduct"
    UNKNOWN = "Unknown"


@dataclass(frozen=True)
class Witness:
    f: AbElement
    twist: tuple[tuple[tuple[int, ...], AbElement], ...]

    def table(self) -> dict[tuple[int, ...], AbElement]:
        return dict(self.twist)


@dataclass(frozen=True)
class TrivialityVerdict:
    verdict: Verdict
    witness: Witness | None = None
    obstruction: str | None = None


def verify_witness(A: GAction, w: Witness) -> bool:
    table = w.table()
    try:
        validate_twist(A, table)
    except InvalidTwistError:
        return False
    if not is_fixed(A, w.f):
        return False
    return all(table[g.coords] == A.embed(g) for g in A.G.elements())


def translation_moves_degree_one_classes(A: GAction, radius: int = 2) -> bool:
    """Brute force: every nonzero ``g`` moves every class ``(1, p)`` on ``E``."""
    E = A.E_points
    pts = list(E.elements()) if E.is_finite else list(E.box(radius))
    for g in A.G.elements():
        if g.is_zero():
            continue
        t = A.embed(g)
        if any((1, p + t) == (1, p) for p in pts):
            return False
    return True


def check_product_triviality(
    S: ProductSurface,
    A: GAction,
    candidates: Iterable[tuple[AbElement, Mapping[tuple[int, ...], AbElement]]] = (),
) -> TrivialityVerdict:
    """Decide whether ``(C x E)/G`` is a product, with a witness or an obstruction.

    ``candidates`` pairs a Hom element ``f`` with its twist table
    ``g -> f(g c0)``; the twist cannot be derived from the modeled data.
    """
    if S.rank != A.rank or S.E_points != A.E_points:
        raise ValueError("action data does not match the surface")
    validate_orbit_sum(A)
    H = A.hom_group
    if A.G.order() == 1:
        w = Witness(H.zero(), ((A.G.zero().coords, A.E_points.zero()),))
        return TrivialityVerdict(Verdict.PRODUCT, witness=w)

    rejected = []
    for f, twist in candidates:
        validate_twist(A, twist)
        if f.is_zero() and any(not e.is_zero() for e in twist.values()):
            raise InvalidTwistError("the zero morphism has e_g = 0 for every g")
        w = Witness(f, tuple(sorted(twist.items())))
        if not is_fixed(A, f):
            rejected.append(f"{f} is not fixed by G")
        elif verify_witness(A, w):
            return TrivialityVerdict(Verdict.PRODUCT, witness=w)
        else:
            rejected.append(f"twist of {f} differs from the embedding of G")

    fixed = fixed_hom_elements(A)
    if all(f.is_zero() for f in fixed):
        # only f = 0 is fixed, and its twist is identically 0
        if not translation_moves_degree_one_classes(A):
            raise AssertionError("a nonzero translation fixed a degree-1 class on E")
        why = ("only the zero morphism is G-fixed; a fixed class of degree 1 on the "
               "fibre would restrict to a translation-invariant degree-1 class on E")
        return TrivialityVerdict(Verdict.NOT_PRODUCT, obstruction=why)

    note = "; ".join(rejected) if rejected else "no candidate twist supplied"
    return TrivialityVerdict(
        Verdict.UNKNOWN,
        obstruction=f"fixed Hom sublattice has rank {len(fixed)}; {note}; deciding needs Pic(C) beyond degrees",
    )
