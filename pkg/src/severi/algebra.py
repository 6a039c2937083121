"""Exact integer and rational algebra.

Finitely generated abelian groups in invariant-factor form, their elements,
integral quadratic forms, and an integer kernel routine. Nothing in this
package touches floating point; rationals are :class:`fractions.Fraction`.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Iterator, Sequence

Rat = Fraction


class GroupMismatchError(ValueError):
    pass


class NonIntegralError(ValueError):
    pass


def as_integer(x: Fraction | int, what: str = "value") -> int:
    """Return ``x`` as an ``int`` or raise if it has a nontrivial denominator."""
    x = Fraction(x)
    if x.denominator != 1:
        raise NonIntegralError(f"{what} = {x} is not an integer")
    return x.numerator


def _factorize(n: int) -> dict[int, int]:
    out: dict[int, int] = {}
    p = 2
    while p * p <= n:
        while n % p == 0:
            out[p] = out.get(p, 0) + 1
            n //= p
        p += 1
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def _prime_power_layout(orders: Sequence[int]):
    """Split cyclic orders into prime powers and regroup them.

    Returns the ascending invariant factors and, for each input factor,
    a list of ``(prime_power, slot)`` pairs telling where each of its
    primary components lands.
    """
    per_prime: dict[int, list[tuple[int, int]]] = {}
    for idx, n in enumerate(orders):
        for p, e in _factorize(n).items():
            per_prime.setdefault(p, []).append((e, idx))
    depth = max((len(v) for v in per_prime.values()), default=0)
    # slot 0 is the largest invariant factor
    desc = [1] * depth
    placement: list[list[tuple[int, int]]] = [[] for _ in orders]
    for p in sorted(per_prime):
        ranked = sorted(per_prime[p], key=lambda t: (-t[0], t[1]))
        for slot, (e, idx) in enumerate(ranked):
            desc[slot] *= p**e
            placement[idx].append((p**e, slot))
    asc = list(reversed(desc))
    # re-index slots to ascending order
    placement = [[(pe, depth - 1 - slot) for pe, slot in pl] for pl in placement]
    return asc, placement


def invariant_factors(orders: Sequence[int]) -> tuple[int, ...]:
    """Invariant factors ``n_1 | n_2 | ...`` of a direct sum of cyclic groups."""
    for n in orders:
        if int(n) < 1:
            raise ValueError(f"cyclic order must be positive, got {n}")
    asc, _ = _prime_power_layout([int(n) for n in orders if int(n) > 1])
    return tuple(asc)


@dataclass(frozen=True)
class AbGroup:
    """``Z^free_rank`` plus a torsion part, stored in invariant-factor form.

    Any list of cyclic orders is accepted and normalized, so
    ``AbGroup(0, (2, 3)) == AbGroup(0, (6,))``.
    """

    free_rank: int = 0
    torsion: tuple[int, ...] = ()

    def __post_init__(self):
        if self.free_rank < 0:
            raise ValueError("free rank must be non-negative")
        object.__setattr__(self, "free_rank", int(self.free_rank))
        object.__setattr__(self, "torsion", invariant_factors(self.torsion))

    @property
    def torsion_orders(self) -> tuple[int, ...]:
        return self.torsion

    @property
    def ngens(self) -> int:
        return self.free_rank + len(self.torsion)

    @property
    def is_finite(self) -> bool:
        return self.free_rank == 0

    def order(self) -> int | None:
        if not self.is_finite:
            return None
        out = 1
        for n in self.torsion:
            out *= n
        return out

    def __call__(self, coords: Sequence[int]) -> "AbElement":
        return AbElement(self, tuple(coords))

    def zero(self) -> "AbElement":
        return AbElement(self, (0,) * self.ngens)

    def gens(self) -> list["AbElement"]:
        out = []
        for i in range(self.ngens):
            v = [0] * self.ngens
            v[i] = 1
            out.append(AbElement(self, tuple(v)))
        return out

    def elements(self) -> Iterator["AbElement"]:
        if not self.is_finite:
            raise ValueError("cannot enumerate an infinite group")
        for coords in itertools.product(*(range(n) for n in self.torsion)):
            yield AbElement(self, coords)

    def box(self, radius: int) -> Iterator["AbElement"]:
        """Elements with free coordinates in ``[-radius, radius]``."""
        ranges = [range(-radius, radius + 1)] * self.free_rank
        ranges += [range(n) for n in self.torsion]
        for coords in itertools.product(*ranges):
            yield AbElement(self, coords)

    def from_cyclic(self, orders: Sequence[int], coords: Sequence[int]) -> "AbElement":
        """Map an element of ``Z^r + Z/orders[0] + ...`` into this group.

        ``coords`` lists the free coordinates first, then one residue per
        entry of ``orders``; ``orders`` must present this same group.
        """
        if invariant_factors(orders) != self.torsion:
            raise GroupMismatchError(f"orders {list(orders)} do not present {self}")
        if len(coords) != self.free_rank + len(orders):
            raise ValueError("coordinate count does not match presentation")
        kept = [(n, x) for n, x in zip(orders, coords[self.free_rank:]) if n > 1]
        asc, placement = _prime_power_layout([n for n, _ in kept])
        tors = [0] * len(asc)
        for (n, x), parts in zip(kept, placement):
            for pe, slot in parts:
                big = asc[slot]
                cof = big // pe
                tors[slot] += (x % pe) * cof * pow(cof, -1, pe)
        return AbElement(self, tuple(coords[: self.free_rank]) + tuple(tors))

    def __str__(self) -> str:
        parts = ["Z"] * self.free_rank + [f"Z/{n}" for n in self.torsion]
        return " + ".join(parts) if parts else "0"


@dataclass(frozen=True)
class AbElement:
    group: AbGroup
    coords: tuple[int, ...]

    def __post_init__(self):
        g = self.group
        if len(self.coords) != g.ngens:
            raise ValueError(f"expected {g.ngens} coordinates for {g}, got {len(self.coords)}")
        c = [int(x) for x in self.coords]
        for i, n in enumerate(g.torsion):
            c[g.free_rank + i] %= n
        object.__setattr__(self, "coords", tuple(c))

    def _check(self, other: "AbElement"):
        if not isinstance(other, AbElement) or other.group != self.group:
            raise GroupMismatchError("elements belong to different groups")

    def __add__(self, other: "AbElement") -> "AbElement":
        self._check(other)
        return AbElement(self.group, tuple(a + b for a, b in zip(self.coords, other.coords)))

    def __neg__(self) -> "AbElement":
        return AbElement(self.group, tuple(-a for a in self.coords))

    def __sub__(self, other: "AbElement") -> "AbElement":
        return self + (-other)

    def __mul__(self, k: int) -> "AbElement":
        return AbElement(self.group, tuple(k * a for a in self.coords))

    __rmul__ = __mul__

    @property
    def parent(self) -> AbGroup:
        return self.group

    @property
    def free(self) -> tuple[int, ...]:
        return self.coords[: self.group.free_rank]

    def is_zero(self) -> bool:
        return not any(self.coords)

    def __bool__(self) -> bool:
        return not self.is_zero()

    def order(self) -> int | None:
        if any(self.free):
            return None
        out = 1
        for n, x in zip(self.group.torsion, self.coords[self.group.free_rank:]):
            k = n // gcd(n, x)
            out = out * k // gcd(out, k)
        return out

    def __str__(self) -> str:
        return "[" + ",".join(map(str, self.coords)) + "]"


def ab_add(a: AbElement, b: AbElement) -> AbElement:
    return a + b


def divide_by_two(a: AbElement) -> AbElement | None:
    """A canonical ``x`` with ``2x == a``, or ``None`` when no half exists.

    Coordinates are independent, so the lexicographically smallest
    solution picks the smallest residue in each torsion slot.
    """
    g = a.group
    out = []
    for x in a.free:
        if x % 2:
            return None
        out.append(x // 2)
    for n, x in zip(g.torsion, a.coords[g.free_rank:]):
        if n % 2:
            out.append(x * (n + 1) // 2 % n)
        elif x % 2:
            return None
        else:
            out.append(x // 2)
    return AbElement(g, tuple(out))


def _is_psd(gram: Sequence[Sequence[int]], definite: bool) -> bool:
    n = len(gram)
    a = [[Fraction(x) for x in row] for row in gram]
    for k in range(n):
        piv = a[k][k]
        if piv < 0:
            return False
        if piv == 0:
            if definite or any(a[k][j] != 0 for j in range(k, n)):
                return False
            continue
        for i in range(k + 1, n):
            f = a[i][k] / piv
            for j in range(k, n):
                a[i][j] -= f * a[k][j]
    return True


@dataclass(frozen=True)
class QuadForm:
    """Integral quadratic form ``v -> v^T gram v``."""

    gram: tuple[tuple[int, ...], ...]
    definite: bool = False

    def __post_init__(self):
        gram = tuple(tuple(int(x) for x in row) for row in self.gram)
        n = len(gram)
        if any(len(row) != n for row in gram):
            raise ValueError("gram matrix must be square")
        if any(gram[i][j] != gram[j][i] for i in range(n) for j in range(n)):
            raise ValueError("gram matrix must be symmetric")
        if not _is_psd(gram, self.definite):
            kind = "positive definite" if self.definite else "positive semidefinite"
            raise ValueError(f"gram matrix is not {kind}")
        object.__setattr__(self, "gram", gram)

    @property
    def dim(self) -> int:
        return len(self.gram)

    def bilinear(self, u: Sequence[int], v: Sequence[int]) -> int:
        if len(u) != self.dim or len(v) != self.dim:
            raise ValueError(f"vector length must be {self.dim}")
        return sum(u[i] * self.gram[i][j] * v[j] for i in range(self.dim) for j in range(self.dim))

    def __call__(self, v: Sequence[int]) -> int:
        return self.bilinear(v, v)


def qf_eval(q: QuadForm, v: Sequence[int]) -> int:
    return q(v)


def integer_kernel(rows: Sequence[Sequence[int]], ncols: int) -> list[tuple[int, ...]]:
    """A Z-basis of ``{x in Z^ncols : M x = 0}``.

    Unimodular column operations bring ``M`` to column-echelon form while
    the same operations are applied to an identity block; the identity
    columns sitting under zero columns of ``M`` span the kernel.
    """
    m = [list(map(int, r)) for r in rows]
    if any(len(r) != ncols for r in m):
        raise ValueError("row length mismatch")
    t = [[int(i == j) for j in range(ncols)] for i in range(ncols)]
    cols = [[r[j] for r in m] + [t[i][j] for i in range(ncols)] for j in range(ncols)]
    pivot = 0
    for i in range(len(m)):
        if pivot >= ncols:
            break
        while True:
            nz = [j for j in range(pivot, ncols) if cols[j][i] != 0]
            if not nz:
                break
            j0 = min(nz, key=lambda j: abs(cols[j][i]))
            cols[pivot], cols[j0] = cols[j0], cols[pivot]
            done = True
            for j in range(pivot + 1, ncols):
                if cols[j][i]:
                    q = cols[j][i] // cols[pivot][i]
                    cols[j] = [a - q * b for a, b in zip(cols[j], cols[pivot])]
                    if cols[j][i]:
                        done = False
            if done:
                pivot += 1
                break
    basis = []
    for j in range(pivot, ncols):
        v = cols[j][len(m):]
        # sign normalization for deterministic output
        lead = next((x for x in v if x), 0)
        if lead < 0:
            v = [-x for x in v]
        basis.append(tuple(v))
    return basis
