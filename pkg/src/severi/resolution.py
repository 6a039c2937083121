"""Canonical resolution bookkeeping for singular branch curves.

Each blown-up point has multiplicity ``d`` on the current branch divisor and
contributes ``m = floor(d/2)``. The invariants of the resolved double cover
only see the sums ``sum (m-1)^2``, ``sum m(m-1)`` and ``sum (m-1)``.
A singularity is negligible when every ``d`` is 2 or 3.
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Any, Iterator, Sequence


class ForestError(ValueError):
    pass


@dataclass(frozen=True)
class SingNode:
    d: int
    children: tuple["SingNode", ...] = ()

    def __post_init__(self):
        if not isinstance(self.d, int) or isinstance(self.d, bool) or self.d < 2:
            raise ForestError(f"multiplicity must be an integer >= 2, got {self.d!r}")
        object.__setattr__(self, "children", tuple(self.children))

    @property
    def m(self) -> int:
        return self.d // 2

    def walk(self) -> Iterator["SingNode"]:
        yield self
        for c in self.children:
            yield from c.walk()

    def size(self) -> int:
        return 1 + sum(c.size() for c in self.children)


def iter_nodes(forest: Sequence[SingNode]) -> Iterator[SingNode]:
    """Canonical depth-first (pre-order) blow-up order."""
    for root in forest:
        yield from root.walk()


def proximity_violations(forest: Sequence[SingNode]) -> list[SingNode]:
    """Nodes whose infinitely near children carry more multiplicity than they do."""
    return [n for n in iter_nodes(forest) if sum(c.d for c in n.children) > n.d]


@dataclass(frozen=True)
class ResolutionReport:
    m_list: tuple[int, ...]
    sum_sq: int
    sum_tri: int
    sum_lin: int
    negligible: bool
    n_blowdowns: int = 0

    def __post_init__(self):
        if self.n_blowdowns < 0:
            raise ForestError("number of blow-downs must be non-negative")
        if self.negligible and self.n_blowdowns:
            raise ForestError("negligible singularities leave nothing to blow down (n must be 0)")

    @classmethod
    def smooth(cls) -> "ResolutionReport":
        return cls((), 0, 0, 0, True, 0)


def resolve(forest: Sequence[SingNode], n_blowdowns: int = 0,
            check_proximity: bool = False) -> ResolutionReport:
    forest = list(forest)
    if check_proximity:
        bad = proximity_violations(forest)
        if bad:
            raise ForestError(f"proximity inequality fails at a point of multiplicity {bad[0].d}")
    ms = tuple(n.m for n in iter_nodes(forest))
    sum_sq = sum((m - 1) ** 2 for m in ms)
    sum_tri = sum(m * (m - 1) for m in ms)
    sum_lin = sum(m - 1 for m in ms)
    negligible = all(m == 1 for m in ms)
    return ResolutionReport(ms, sum_sq, sum_tri, sum_lin, negligible, n_blowdowns)


def is_negligible(forest: Sequence[SingNode]) -> bool:
    return all(n.d in (2, 3) for n in iter_nodes(forest))


def node_from_obj(obj: Any) -> SingNode:
    if not isinstance(obj, dict) or "d" not in obj:
        raise ForestError(f"forest node must be an object with a 'd' field, got {obj!r}")
    extra = set(obj) - {"d", "children"}
    if extra:
        raise ForestError(f"unexpected forest node fields: {sorted(extra)}")
    children = obj.get("children", [])
    if not isinstance(children, list):
        raise ForestError("'children' must be a list")
    return SingNode(obj["d"], tuple(node_from_obj(c) for c in children))


def node_to_obj(node: SingNode) -> dict:
    return {"d": node.d, "children": [node_to_obj(c) for c in node.children]}


def forest_from_obj(obj: Any) -> list[SingNode]:
    if not isinstance(obj, list):
        raise ForestError("a forest is a JSON list of nodes")
    return [node_from_obj(o) for o in obj]


def forest_to_obj(forest: Sequence[SingNode]) -> list[dict]:
    return [node_to_obj(n) for n in forest]


def loads_forest(text: str) -> list[SingNode]:
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ForestError(f"invalid JSON: {exc}") from exc
    return forest_from_obj(obj)


def dumps_forest(forest: Sequence[SingNode]) -> str:
    return json.dumps(forest_to_obj(forest), sort_keys=True)
