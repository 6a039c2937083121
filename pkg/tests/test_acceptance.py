"""Acceptance checks, one test per criterion.

Each test prints a single ``[criterion N] PASS|FAIL`` line. Run the file
directly (``python tests/test_acceptance.py``) for just the summary.
"""
from __future__ import annotations

import contextlib
import functools
import io
import random
import sys
from itertools import combinations_with_replacement, product

import pytest

from cli_cases import CASES, GOLDEN
from oracles import blowup_cover_invariants
from severi.algebra import AbGroup, QuadForm
from severi.classifier import (CoverSpec, Invariants, LineRegime, NineHalves, TargetKind, TargetY0,
                               admissibility_issues, cover_invariants, elliptic_gap_ledger,
                               etale_base_change, gap_ledger, regime_check, scale_invariants,
                               severi_gap)
from severi.cli import main
from severi.equivariant import GAction, Verdict, check_product_triviality, verify_witness
from severi.families import example_33_action, generate_example
from severi.lattice import EllipticTarget, ProductSurface, elliptic_canonical_dot, pairing, probes
from severi.picard import (NormalForm, beta, class_of, fibre_C, fibre_E, formal_sum, graph, normal_form,
                           num_class, section_s, shear, translate)
from severi.resolution import SingNode, iter_nodes, resolve

SEED = 20240601


_capture = None


@pytest.fixture(autouse=True)
def _uncaptured(capsys):
    global _capture
    _capture = capsys
    yield
    _capture = None


def report(n: int, ok: bool, detail: str) -> None:
    line = f"[criterion {n:2d}] {'PASS' if ok else 'FAIL'}: {detail}"
    with _capture.disabled():
        print("\n" + line)
    assert ok, line


# -- 1, 2: the two product-cover families ----------------------------------

def _sweep(family):
    for q in (3, 4, 5, 6):
        for d in range(7 * (q - 2) + 1, 7 * (q - 2) + 6):
            yield q, d, generate_example(family, q=q, d=d)


def test_criterion_01_first_family():
    bad = []
    for q, d, ex in _sweep("ex3.1"):
        inv = cover_invariants(ex.spec)
        if (inv.K2, inv.chi) != (8 * (q - 2) + 4 * d, q - 2 + d):
            bad.append((q, d, "invariants"))
        if severi_gap(inv) != 0 or inv.K2 - 4 * inv.chi != 4 * (q - 2):
            bad.append((q, d, "gap"))
        if regime_check(inv) is not NineHalves.BELOW:
            bad.append((q, d, "regime"))
    # the iff over the full range, including the boundary d = 7(q-2)
    for q in (3, 4, 5, 6):
        for d in range(1, 7 * (q - 2) + 6):
            below = regime_check(cover_invariants(generate_example("ex3.1", q=q, d=d).spec)) is NineHalves.BELOW
            if below != (d > 7 * (q - 2)):
                bad.append((q, d, "boundary"))
        boundary = cover_invariants(generate_example("ex3.1", q=q, d=7 * (q - 2)).spec)
        if regime_check(boundary) is not NineHalves.AT_OR_ABOVE:
            bad.append((q, 7 * (q - 2), "equality case"))
    report(1, not bad, f"K^2, chi, K^2-4chi = 4(q-2) and the 9/2 boundary for q=3..6; failures={bad[:3]}")


def test_criterion_02_second_family():
    bad = []
    for q, d, ex in _sweep("ex3.2"):
        inv = cover_invariants(ex.spec)
        L = elliptic_gap_ledger(ex.spec)
        if (inv.K2, inv.chi) != (16 * (q - 2) + 8 * d, 2 * (q - 2) + 2 * d):
            bad.append((q, d, "invariants"))
        if inv.K2 - 4 * inv.chi != 8 * (q - 2) or L.gap != 8 * (q - 2):
            bad.append((q, d, "gap"))
        if L.regime is not LineRegime.SECOND or ex.spec.KYdotR != 8 * (q - 2):
            bad.append((q, d, "regime"))
        if not ex.spec.resolution.negligible or ex.spec.n_blowdowns:
            bad.append((q, d, "resolution"))
    report(2, not bad, f"K^2-4chi = 8(q-2) and SecondSeveriLine on the sweep; failures={bad[:3]}")


def test_criterion_03_abelian_quadruple_point():
    bad = []
    for R2 in (16, 24, 32):
        inv = cover_invariants(generate_example("ex3.4", R2=R2).spec)
        if (inv.K2, inv.chi, inv.K2 - 4 * inv.chi) != (R2 // 2 - 2, R2 // 8 - 1, 2):
            bad.append((R2, inv))
    report(3, not bad, f"K^2 = R^2/2-2, chi = R^2/8-1, K^2-4chi = 2 for R^2 in 16,24,32; failures={bad}")


def test_criterion_04_products_and_bxb():
    bad = []
    for gB in range(2, 7):
        inv = generate_example("rem4.1-AxB", gB=gB).expected
        if severi_gap(inv) != -4:
            bad.append(("AxB", gB, severi_gap(inv)))
    ex = generate_example("rem4.1-BxB")
    inv = cover_invariants(ex.spec)
    if (inv.K2, inv.chi, inv.q) != (36, 5, 4) or not inv.K2 - 4 * inv.chi == 16 == 8 * (inv.q - 2):
        bad.append(("BxB", inv))
    report(4, not bad, f"A x B gap -4 for g(B)=2..6; B x B (36, 5, q=4), K^2-4chi=16; failures={bad}")


def test_criterion_05_product_triviality():
    ok = True
    A = example_33_action()
    v = check_product_triviality(ProductSurface(genus_C=3, E_points=A.E_points), A)
    ok &= v.verdict is Verdict.NOT_PRODUCT and A.rank == 0 and A.G.order() == 2
    E = AbGroup(0, (2, 2))
    trivial = GAction(AbGroup(), E, (), (), rank=1)
    S = ProductSurface(genus_C=2, deg_form=QuadForm(((2,),), definite=True), E_points=E)
    w = check_product_triviality(S, trivial)
    ok &= w.verdict is Verdict.PRODUCT and w.witness is not None
    ok &= verify_witness(trivial, w.witness)
    report(5, ok, f"rank 0 with G=Z/2 -> {v.verdict.value}; trivial G -> {w.verdict.value}, witness re-verified")


# -- 6, 11: Picard group model -----------------------------------------------

PIC_S = ProductSurface(genus_C=3, deg_form=QuadForm(((2, 1, 0), (1, 2, 1), (0, 1, 4)), definite=True),
                       E_points=AbGroup(1, (2, 6)))


def _rand_hom(rng, S=PIC_S):
    return S.hom([rng.randint(-6, 6) for _ in range(S.rank)])


def _rand_pt(rng, S=PIC_S):
    return S.E_points([rng.randint(-8, 8)] + [rng.randrange(n) for n in S.E_points.torsion])


def _rand_divisor(rng, S=PIC_S):
    terms = [rng.randint(-3, 3) * graph(S, _rand_hom(rng, S), _rand_pt(rng, S))
             for _ in range(rng.randint(0, 5))]
    return formal_sum(terms, S) + fibre_E(S, rng.randint(-6, 6))


def test_criterion_06_split_and_beta():
    rng = random.Random(SEED)
    fails = 0
    for _ in range(500):
        f = _rand_hom(rng)
        D = graph(PIC_S, f) - fibre_C(PIC_S) - fibre_E(PIC_S, PIC_S.deg(f))
        fails += beta(D) != f or section_s(PIC_S, f).homf != f or class_of(D) != section_s(PIC_S, f)
    for _ in range(500):
        D1, D2, e = _rand_divisor(rng), _rand_divisor(rng), _rand_pt(rng)
        fails += beta(D1 + D2) != beta(D1) + beta(D2)
        fails += beta(translate(D1, e)) != beta(D1)
    report(6, fails == 0, f"beta o s = id on 500 Hom elements; additivity and translation on 500 sums; failures={fails}")


def test_criterion_11_normal_form():
    rng = random.Random(SEED + 11)
    fails = 0
    for _ in range(200):
        g, e1, d = _rand_hom(rng), _rand_pt(rng), rng.randint(1, 12)
        e2 = e1 + 2 * _rand_pt(rng)
        R = NormalForm(g, e1, e2, d).expand(PIC_S)
        nf = normal_form(R)
        fails += (nf.g, nf.d) != (g, d) or {nf.e1, nf.e2} != {e1, e2}
        Rs = shear(R, g)
        fails += not all(t.is_fibre for t, _ in Rs.horizontal)
        others = [_rand_divisor(rng) for _ in range(3)]
        for D in others + [R]:
            fails += pairing(PIC_S, num_class(R), num_class(D)) != pairing(PIC_S, num_class(Rs), num_class(shear(D, g)))
        for P in probes(PIC_S):
            Dp = _divisor_for_probe(P)
            fails += pairing(PIC_S, num_class(Dp), num_class(R)) != pairing(
                PIC_S, num_class(shear(Dp, g)), num_class(Rs))
    report(11, fails == 0, f"200 normal forms recovered, shear sends Gamma_g to fibres and keeps pairings; failures={fails}")


def _divisor_for_probe(P):
    S = PIC_S
    D = fibre_E(S, P.b) + P.a * fibre_C(S)
    for f, m in P.graphs:
        D = D + m * graph(S, S.hom(f))
    return D


# -- 7, 8: enumeration of admissible specs -----------------------------------

D_VALUES = (2, 3, 4, 5)


def _trees(size):
    if size == 1:
        return [SingNode(d) for d in D_VALUES]
    out = []
    for d in D_VALUES:
        for kids in _forests(size - 1):
            out.append(SingNode(d, tuple(kids)))
    return out


def _forests(size):
    """Forests with exactly ``size`` nodes, siblings as multisets."""
    if size == 0:
        return [[]]
    out = []
    for first in range(1, size + 1):
        for t in _trees(first):
            for rest in _forests(size - first):
                if rest and _key(rest[0]) < _key(t):
                    continue
                out.append([t] + rest)
    return out


def _key(node):
    return (node.d, tuple(_key(c) for c in node.children))


FORESTS = [f for k in range(4) for f in _forests(k)]
FIBRES = [()] + [tuple(c) for r in (1, 2)
                 for c in combinations_with_replacement([(n, x) for n in (2, 3) for x in (2, 4, 6)], r)]


def _first_integral_R2(KR, sum_tri, count=2):
    out = []
    for R2 in range(2, 200, 2):
        if (2 * KR + R2 - 4 * sum_tri) % 8 == 0:
            out.append(R2)
            if len(out) == count:
                break
    return out


def _reports():
    """Resolution reports for every enumerated forest and admissible blow-down count."""
    out = []
    for forest in FORESTS:
        neg = resolve(forest).negligible
        out += [resolve(forest, n) for n in ((0,) if neg else (0, 1, 2))]
    return out


@functools.lru_cache(maxsize=None)
def _elliptic_specs():
    reports = _reports()
    specs = []
    for q, F, fibres in product((3, 4), (2, 4, 6), FIBRES):
        ell = EllipticTarget(q, fibres)
        target = TargetY0(TargetKind.ELLIPTIC, q, elliptic=ell)
        KR = elliptic_canonical_dot(ell, F)
        # the side conditions only see q, F.R, the fibres and negligibility: probe once per class
        admissible = {neg: not admissibility_issues(CoverSpec(target, KR, 8, F, r))
                      for neg, r in ((True, resolve([])), (False, resolve([SingNode(4)])))}
        for res in reports:
            if not admissible[res.negligible]:
                continue
            for R2 in _first_integral_R2(KR, res.sum_tri):
                spec = CoverSpec(target, KR, R2, F, res)
                assert not admissibility_issues(spec)
                specs.append(spec)
    return tuple(specs)


def test_criterion_07_gap_exclusion():
    n_specs, bad = 0, []
    for spec in _elliptic_specs():
        n_specs += 1
        L = gap_ledger(spec)
        inv = cover_invariants(spec)
        q = spec.q
        if 4 * (q - 2) < L.gap < 8 * (q - 2) or not L.consistent or L.gap != inv.K2 - 4 * inv.chi:
            bad.append(spec)
    n_ab, bad_ab = 0, []
    A = TargetY0(TargetKind.ABELIAN, 2)
    for res in _reports():
        for R2 in _first_integral_R2(0, res.sum_tri):
            L = gap_ledger(CoverSpec(A, 0, R2, resolution=res))
            n_ab += 1
            if 0 < L.gap < 2 or not L.consistent:
                bad_ab.append(L)
    ok = not bad and not bad_ab and n_specs > 0 and n_ab > 0
    report(7, ok, f"{n_specs} elliptic specs: no gap in (4(q-2), 8(q-2)); {n_ab} Abelian specs: no gap in (0, 2); "
                  f"violations={len(bad) + len(bad_ab)}")


def test_criterion_08_first_line_gate():
    n_specs, disc = 0, 0
    for spec in _elliptic_specs():
        n_specs += 1
        first = gap_ledger(spec).regime is LineRegime.FIRST
        cond = (spec.FdotR == 2 and not spec.target.elliptic.multiple_fibres
                and spec.resolution.negligible and spec.n_blowdowns == 0)
        disc += first != cond
    report(8, disc == 0 and n_specs > 0, f"FirstSeveriLine iff F.R=2, no multiple fibres, negligible, n=0 over {n_specs} specs; discrepancies={disc}")


# -- 9, 10 ------------------------------------------------------------------

def _on_line(inv: Invariants, k: int) -> bool:
    return inv.K2 == 4 * inv.chi + k * (inv.q - 2)


def test_criterion_09_etale_base_change():
    bad = []
    for q in range(2, 7):
        for d in range(1, 11):
            if etale_base_change(q, d) - 2 != d * (q - 2):
                bad.append((q, d))
    samples = [cover_invariants(generate_example(f, q=q, d=dd).spec)
               for f in ("ex3.1", "ex3.2") for q in (3, 4, 5, 6) for dd in (1, 9, 30)]
    samples += [generate_example("rem4.1-AxB", gB=g).expected for g in (2, 3, 4)]
    samples += [Invariants(36, 5, 4), Invariants(6, 1, 2)]
    for inv in samples:
        for d in range(1, 11):
            sc = scale_invariants(inv, d)
            if (sc.K2, sc.chi) != (d * inv.K2, d * inv.chi):
                bad.append((inv, d))
            if sc.K2 - 4 * sc.chi != d * (inv.K2 - 4 * inv.chi) or severi_gap(sc) != d * severi_gap(inv):
                bad.append((inv, d, "gap scaling"))
            for k in (4, 8):
                if _on_line(inv, k) != _on_line(sc, k):
                    bad.append((inv, d, k))
    report(9, not bad, f"q~-2 = d(q-2) for q<=6, d<=10; line membership kept under scaling; failures={len(bad)}")


def _random_forest(rng, budget):
    out = []
    while budget > 0 and rng.random() < 0.7:
        size = rng.randint(1, budget)
        budget -= size
        out.append(_random_tree(rng, size))
    return out


def _random_tree(rng, size):
    d = rng.choice([2, 2, 3, 3, 4, 5, 6, 7, 8])
    return SingNode(d, tuple(_random_forest(rng, size - 1)))


def _shuffle(rng, forest):
    out = [SingNode(n.d, tuple(_shuffle(rng, list(n.children)))) for n in forest]
    rng.shuffle(out)
    return out


def test_criterion_10_resolution():
    rng = random.Random(SEED + 10)
    fails = 0
    for _ in range(1000):
        forest = _random_forest(rng, rng.randint(0, 8))
        r = resolve(forest)
        zero = r.sum_sq == r.sum_tri == r.sum_lin == 0
        fails += r.negligible != zero
        fails += r.negligible != all(n.d in (2, 3) for n in iter_nodes(forest))
        r2 = resolve(_shuffle(rng, forest))
        fails += (r2.sum_sq, r2.sum_tri, r2.sum_lin, r2.negligible) != (r.sum_sq, r.sum_tri, r.sum_lin, r.negligible)
        fails += sorted(r2.m_list) != sorted(r.m_list)
    quad = resolve([SingNode(4)])
    smooth_K2, smooth_chi = blowup_cover_invariants(0, 0, 0, 16, [])
    K2, chi = blowup_cover_invariants(0, 0, 0, 16, quad.m_list)
    ex = cover_invariants(generate_example("ex3.4", R2=16).spec)
    quad_ok = (-2 * quad.sum_sq, -quad.sum_tri // 2) == (K2 - smooth_K2, chi - smooth_chi) == (-2, -1)
    quad_ok &= (ex.K2, ex.chi) == (smooth_K2 - 2, smooth_chi - 1)
    report(10, fails == 0 and quad_ok,
           f"1000 random forests: negligible iff zero sums, sibling order irrelevant; quadruple point gives (-2, -1); failures={fails}")


# -- 12 ---------------------------------------------------------------------

def test_criterion_12_cli_golden():
    mismatched = []
    for name, argv in CASES.items():
        buf = io.StringIO()
        with contextlib.redirect_stdout(buf):
            rc = main(argv)
        if rc != 0 or buf.getvalue() != (GOLDEN / name).read_text(encoding="utf-8"):
            mismatched.append(name)
    commands = {argv[0] for argv in CASES.values()}
    families = {argv[1] for argv in CASES.values() if argv[0] == "example"}
    ok = not mismatched and commands == {"example", "classify", "sweep", "check-product", "resolve"}
    ok &= {"ex3.1", "ex3.2", "ex3.3", "ex3.4", "rem4.1-AxB", "rem4.1-BxB"} <= families
    report(12, ok, f"{len(CASES)} CLI outputs byte-match golden files; mismatched={mismatched}")


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-q", "-p", "no:cacheprovider"]))
