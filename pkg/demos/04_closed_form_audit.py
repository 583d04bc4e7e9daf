"""Audit the analytic results against the numerical engines.

Every closed form is evaluated exactly as stated and compared with the
grid-based oracle on a fixed point set. The table shows which formulas hold,
which are right up to a constant, and which disagree.
"""

from pathlib import Path

from biphoton_convert.closed_forms import compare_against_oracle
from biphoton_convert.config import parse_config

CONFIGS = Path(__file__).resolve().parent.parent / "configs"

for name in ("fig2.json", "phase_matched.json"):
    report = compare_against_oracle(parse_config(CONFIGS / name))
    print(f"== {name}")
    print(report.to_table())
