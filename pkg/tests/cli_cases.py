"""CLI invocations frozen as golden files under tests/golden/."""
from pathlib import Path

ROOT = Path(__file__).resolve().parent.parent
SAMPLES = ROOT / "samples"
GOLDEN = Path(__file__).resolve().parent / "golden"


def s(name: str) -> str:
    return str(SAMPLES / name)


CASES = {
    "example_ex3.1.txt": ["example", "ex3.1", "--q", "3", "--d", "8"],
    "example_ex3.1.json": ["example", "ex3.1", "--q", "4", "--d", "15", "--format", "json"],
    "example_ex3.1.csv": ["example", "ex3.1", "--q", "5", "--d", "22", "--format", "csv"],
    "example_ex3.2.json": ["example", "ex3.2", "--q", "3", "--d", "8", "--format", "json"],
    "example_ex3.3.json": ["example", "ex3.3", "--q", "4", "--d", "15", "--format", "json"],
    "example_ex3.3.txt": ["example", "ex3.3"],
    "example_ex3.4.json": ["example", "ex3.4", "--r2", "24", "--format", "json"],
    "example_ex3.4.txt": ["example", "ex3.4"],
    "example_rem4.1-AxB.json": ["example", "rem4.1-AxB", "--genus-b", "4", "--format", "json"],
    "example_rem4.1-BxB.json": ["example", "rem4.1-BxB", "--format", "json"],
    "example_rem4.1-BxB.txt": ["example", "rem4.1-BxB"],
    "classify_first_line.json": ["classify", s("cover_elliptic_first_line.json"), "--format", "json"],
    "classify_second_line.json": ["classify", s("cover_elliptic_second_line.json"), "--format", "json"],
    "classify_singular.txt": ["classify", s("cover_elliptic_singular.json")],
    "classify_abelian.json": ["classify", s("cover_abelian_quadruple.json"), "--format", "json"],
    "classify_general_type.json": ["classify", s("cover_general_type.json"), "--format", "json"],
    "classify_general_type_nine_halves.csv": ["classify", s("cover_general_type.json"),
                                              "--branch", "nine-halves", "--format", "csv"],
    "sweep_ex3.1.csv": ["sweep", "--family", "ex3.1", "--q", "3", "6", "--d", "1", "5", "--d-relative"],
    "sweep_ex3.2.csv": ["sweep", "--family", "ex3.2", "--q", "3", "6", "--d", "1", "5", "--d-relative"],
    "sweep_ex3.3.json": ["sweep", "--family", "ex3.3", "--q", "3", "4", "--d", "0", "2", "--d-relative",
                         "--format", "json"],
    "sweep_ex3.1_low.txt": ["sweep", "--family", "ex3.1", "--q", "3", "3", "--d", "1", "8", "--format", "table"],
    "check_product_nonproduct.json": ["check-product", s("action_nonproduct.json"), "--format", "json"],
    "check_product_trivial.json": ["check-product", s("action_trivial_group.json"), "--format", "json"],
    "check_product_witness.txt": ["check-product", s("action_product_witness.json")],
    "resolve_quadruple.json": ["resolve", s("forest_quadruple.json"), "--format", "json"],
    "resolve_empty.json": ["resolve", s("forest_empty.json"), "--format", "json"],
    "resolve_tree.txt": ["resolve", s("forest_tree.json")],
    "resolve_tree.csv": ["resolve", s("forest_tree.json"), "--format", "csv"],
}
