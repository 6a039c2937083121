"""JSON input documents and report emitters (table, JSON, CSV).

Input parsing raises :class:`ParseError` for malformed documents (wrong
JSON, missing or mistyped fields). Well-formed documents describing
impossible data surface as the ``ValueError`` subclasses raised by the
domain types.
"""
from __future__ import annotations

import csv
import io
import json
from typing import Any, Sequence

from severi.algebra import AbElement, AbGroup, QuadForm
from severi.classifier import (CoverSpec, GapLedger, GeneralTypeReport, Invariants, TargetKind,
                               TargetY0)
from severi.equivariant import GAction, TrivialityVerdict, twist_from_generators
from severi.lattice import EllipticTarget, ProductSurface
from severi.resolution import ForestError, ResolutionReport, SingNode, forest_from_obj, forest_to_obj, resolve

SWEEP_FORMAT_VERSION = 1
SWEEP_HEADER = ("q", "d", "K2", "chi", "gap", "regime", "below_nine_halves")


class ParseError(ValueError):
    pass


def load_json(text: str) -> Any:
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON: {exc}") from exc


def _get(obj: dict, key: str, typ, default=..., where: str = "document"):
    if not isinstance(obj, dict):
        raise ParseError(f"{where} must be a JSON object")
    if key not in obj:
        if default is ...:
            raise ParseError(f"{where} is missing '{key}'")
        return default
    val = obj[key]
    if val is None and default is None:
        return None
    if typ is int and (not isinstance(val, int) or isinstance(val, bool)):
        raise ParseError(f"'{key}' in {where} must be an integer, got {val!r}")
    if typ is not int and val is not None and not isinstance(val, typ):
        raise ParseError(f"'{key}' in {where} must be {typ.__name__}, got {val!r}")
    return val


def _int_list(val, where: str) -> list[int]:
    if not isinstance(val, list) or any(not isinstance(x, int) or isinstance(x, bool) for x in val):
        raise ParseError(f"{where} must be a list of integers")
    return val


# -- forests ---------------------------------------------------------------

def parse_forest_doc(obj: Any) -> tuple[list[SingNode], int]:
    """A bare list of nodes, or ``{"forest": [...], "n_blowdowns": n}``."""
    try:
        if isinstance(obj, list):
            return forest_from_obj(obj), 0
        forest = _get(obj, "forest", list, where="forest document")
        n = _get(obj, "n_blowdowns", int, 0, where="forest document")
        return forest_from_obj(forest), n
    except ForestError as exc:
        raise ParseError(str(exc)) from exc


def resolution_to_obj(rep: ResolutionReport) -> dict:
    return {
        "m_list": list(rep.m_list),
        "sum_sq": rep.sum_sq,
        "sum_tri": rep.sum_tri,
        "sum_lin": rep.sum_lin,
        "negligible": rep.negligible,
        "n_blowdowns": rep.n_blowdowns,
    }


# -- cover specs -----------------------------------------------------------

def parse_cover_spec(obj: Any) -> tuple[CoverSpec, dict]:
    """Build a :class:`CoverSpec`; also returns the raw forest for echoing."""
    t = _get(obj, "target", dict, where="cover spec")
    kind = _get(t, "kind", str, where="target")
    if kind not in {k.value for k in TargetKind}:
        raise ParseError(f"unknown target kind {kind!r}")
    q = _get(t, "q", int, where="target")
    kY2 = _get(t, "kY2", int, 0, where="target")
    chiY = _get(t, "chiY", int, 0, where="target")
    fibres = _get(t, "multiple_fibres", list, [], where="target")
    for fb in fibres:
        if len(_int_list(fb, "each multiple fibre")) != 2:
            raise ParseError("each multiple fibre is a pair [n_j, F_j.R]")
    KYdotR = _get(obj, "KYdotR", int, where="cover spec")
    R2 = _get(obj, "R2", int, where="cover spec")
    FdotR = _get(obj, "FdotR", int, None, where="cover spec")
    ample = _get(obj, "ample_branch", bool, True, where="cover spec")
    res_obj = _get(obj, "resolution", dict, {}, where="cover spec")
    forest_obj = _get(res_obj, "forest", list, [], where="resolution")
    n = _get(res_obj, "n_blowdowns", int, 0, where="resolution")
    try:
        forest = forest_from_obj(forest_obj)
    except ForestError as exc:
        raise ParseError(str(exc)) from exc
    ell = EllipticTarget(q, tuple(map(tuple, fibres))) if kind == TargetKind.ELLIPTIC.value else None
    if ell is None and fibres:
        raise ValueError("multiple fibres only make sense on an elliptic target")
    target = TargetY0(TargetKind(kind), q, kY2, chiY, ell)
    spec = CoverSpec(target, KYdotR, R2, FdotR, resolve(forest, n), ample)
    return spec, {"forest": forest_to_obj(forest), "n_blowdowns": n}


def cover_spec_to_obj(spec: CoverSpec, forest: Sequence[SingNode] = ()) -> dict:
    t = spec.target
    target = {"kind": t.kind.value, "q": t.q, "kY2": t.kY2, "chiY": t.chiY}
    if t.elliptic is not None:
        target["multiple_fibres"] = [list(x) for x in t.elliptic.multiple_fibres]
    out = {
        "target": target,
        "KYdotR": spec.KYdotR,
        "R2": spec.R2,
        "resolution": {"forest": forest_to_obj(forest), "n_blowdowns": spec.n_blowdowns},
        "ample_branch": spec.ample_branch,
    }
    if spec.FdotR is not None:
        out["FdotR"] = spec.FdotR
    return out


def invariants_to_obj(inv: Invariants) -> dict:
    return {"K2": inv.K2, "chi": inv.chi, "q": inv.q}


def ledger_to_obj(ledger: GapLedger) -> dict:
    return {
        "term_genus": ledger.term_genus,
        "term_multifibre": ledger.term_multifibre,
        "term_sing": ledger.term_sing,
        "term_blowdown": ledger.term_blowdown,
        "K2_minus_4chi": ledger.gap,
        "severi_gap": ledger.severi_gap,
        "regime": ledger.regime.value,
        "issues": list(ledger.issues),
    }


def general_type_to_obj(rep: GeneralTypeReport) -> dict:
    return {
        "branch": rep.branch.value,
        "gap": rep.gap,
        "bound": rep.bound,
        "strict": rep.strict,
        "satisfied": rep.satisfied,
        "equality": rep.equality,
        "branch_hypothesis_holds": rep.hypothesis_holds,
        "below_nine_halves": rep.below_nine_halves,
    }


# -- group actions ---------------------------------------------------------

def _group(obj: Any, where: str) -> AbGroup:
    free = _get(obj, "free_rank", int, 0, where=where)
    key = "torsion_orders" if isinstance(obj, dict) and "torsion_orders" in obj else "torsion"
    tors = _int_list(_get(obj, key, list, [], where=where), f"{where}.{key}")
    return AbGroup(free, tuple(tors))


def parse_action_doc(obj: Any) -> tuple[ProductSurface, GAction, list]:
    """Surface, action and candidate ``(f, twist table)`` pairs from an action document.

    Coordinates of points of ``E`` and elements of ``G`` refer to the
    invariant-factor form of those groups.
    """
    genus = _get(obj, "genus_C", int, where="action document")
    gram = _get(obj, "deg_form", list, [], where="action document")
    for row in gram:
        _int_list(row, "deg_form row")
    E = _group(_get(obj, "E_points", dict, where="action document"), "E_points")
    G = _group(_get(obj, "G", dict, where="action document"), "G")
    embed = [_int_list(v, "embed entry") for v in _get(obj, "embed", list, where="action document")]
    mats = _get(obj, "hom_action", list, where="action document")
    for m in mats:
        if not isinstance(m, list):
            raise ParseError("each hom_action entry is a matrix (list of rows)")
        for row in m:
            _int_list(row, "hom_action row")
    S = ProductSurface(genus, QuadForm(tuple(map(tuple, gram)), definite=bool(gram)), E)
    A = GAction(G, E, tuple(E(v) for v in embed), tuple(tuple(map(tuple, m)) for m in mats),
                rank=len(gram))
    cands = []
    for c in _get(obj, "candidates", list, [], where="action document"):
        f = S.hom(_int_list(_get(c, "f", list, where="candidate"), "candidate f"))
        vals = [E(_int_list(v, "twist value")) for v in _get(c, "twist", list, where="candidate")]
        cands.append((f, twist_from_generators(A, vals)))
    return S, A, cands


def _el(x: AbElement) -> list[int]:
    return list(x.coords)


def verdict_to_obj(v: TrivialityVerdict, verified: bool | None) -> dict:
    out: dict = {"verdict": v.verdict.value, "obstruction": v.obstruction, "witness": None}
    if v.witness is not None:
        out["witness"] = {
            "f": _el(v.witness.f),
            "twist": [{"g": list(g), "e_g": _el(e)} for g, e in v.witness.twist],
            "verified": verified,
        }
    return out


# -- emitters --------------------------------------------------------------

def dumps_json(obj: Any) -> str:
    return json.dumps(obj, indent=2, sort_keys=True) + "\n"


def _scalar(v: Any) -> str:
    if v is None:
        return "-"
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, dict):
        return "{" + ", ".join(f"{a}={_scalar(b)}" for a, b in v.items()) + "}"
    if isinstance(v, (list, tuple)):
        return "[" + ", ".join(_scalar(x) for x in v) + "]"
    return str(v)


def render_table(obj: dict, indent: int = 0) -> str:
    """Aligned ``key  value`` lines; nested objects become indented blocks."""
    lines = []
    pad = " " * indent
    flat = [k for k, v in obj.items() if not isinstance(v, dict) or not v]
    width = max((len(k) for k in flat), default=0)
    for k, v in obj.items():
        if isinstance(v, dict) and not v:
            lines.append(f"{pad}{k.ljust(width)}  -")
        elif isinstance(v, dict):
            lines.append(f"{pad}{k}:")
            lines.append(render_table(v, indent + 2).rstrip("\n"))
        elif isinstance(v, list) and v and all(isinstance(x, dict) for x in v):
            lines.append(f"{pad}{k}:")
            for x in v:
                lines.append(f"{pad}  - " + ", ".join(f"{a}={_scalar(b)}" for a, b in x.items()))
        else:
            lines.append(f"{pad}{k.ljust(width)}  {_scalar(v)}")
    return "\n".join(lines) + "\n"


def render_rows_table(header: Sequence[str], rows: Sequence[Sequence[Any]]) -> str:
    cells = [list(header)] + [[_scalar(x) for x in r] for r in rows]
    widths = [max(len(r[i]) for r in cells) for i in range(len(header))]
    out = []
    for j, r in enumerate(cells):
        out.append("  ".join(c.rjust(w) for c, w in zip(r, widths)).rstrip())
        if j == 0:
            out.append("  ".join("-" * w for w in widths))
    return "\n".join(out) + "\n"


def render_csv(header: Sequence[str], rows: Sequence[Sequence[Any]]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    for r in rows:
        w.writerow([_scalar(x) for x in r])
    return buf.getvalue()
