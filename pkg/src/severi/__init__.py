"""Exact arithmetic for double covers of surfaces near the Severi lines.

Divisor classes on ``C x E``, canonical resolution of branch singularities,
invariants of double covers and their classification against the lines
``K^2 = 4 chi + 4(q-2)`` and ``K^2 = 4 chi + 8(q-2)``.
"""
from severi.classifier import (CoverSpec, GapLedger, Invariants, LineRegime, NineHalves, TargetKind,
                               TargetY0, cover_invariants, gap_ledger, regime_check, severi_gap)
from severi.families import generate_example
from severi.resolution import SingNode, resolve

__version__ = "0.1.0"

__all__ = [
    "CoverSpec", "GapLedger", "Invariants", "LineRegime", "NineHalves", "TargetKind", "TargetY0",
    "cover_invariants", "gap_ledger", "regime_check", "severi_gap", "generate_example",
    "SingNode", "resolve",
]
