"""Access to the shipped fixture corpus (reward programs and recorded
completion exchanges)."""

from __future__ import annotations

from importlib.resources import files
from pathlib import Path

_ROOT = files("archie_lab") / "fixtures"

# Benchmark programs validate against their env schema; corpus_* programs are
# translations over richer robot observation spaces and are parse-only.
BENCHMARK_SPECS = {
    "grasp_lift": "GraspLift2D",
    "grasp_slide": "GraspSlide2D",
    "place": "Place2D",
    "push": "NarrowTablePush",
    "point_to_origin_b1": "PointToOrigin",
    "point_to_origin_b10": "PointToOrigin",
}


def spec_names() -> list[str]:
    return sorted(p.name[: -len(".rsp")] for p in (_ROOT / "specs").iterdir()
                  if p.name.endswith(".rsp"))


def load_spec_text(name: str) -> str:
    path = _ROOT / "specs" / f"{name}.rsp"
    return path.read_text()


def llm_fixture_dir() -> Path:
    return Path(str(_ROOT / "llm"))


def spec_dir() -> Path:
    return Path(str(_ROOT / "specs"))
