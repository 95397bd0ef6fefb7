#!/usr/bin/env python3
"""Writes the residual-resistance chart and the resistance validation set.

The chart is a smooth synthetic surface over speed-length ratio (kt/sqrt(ft))
and prismatic coefficient. The validation set tabulates total still-water
resistance for the hull in data/keller_case.json, computed here with an
independent implementation of the resistance chain and rounded to four
significant figures.

Usage: python3 tools/gen_resistance_tables.py [data_dir]
"""

import csv
import json
import math
import sys
from pathlib import Path

KNOT = 1852.0 / 3600.0
FOOT = 0.3048

SL_AXIS = [round(0.20 + 0.05 * i, 2) for i in range(21)]  # 0.20 .. 1.20
CP_AXIS = [round(0.55 + 0.05 * j, 2) for j in range(6)]  # 0.55 .. 0.80


def residual(sl, cp):
    """C_r: a flat viscous-pressure floor plus a wave-making rise past sl ~ 0.45."""
    base = (0.35 + 1.2 * (cp - 0.55)) * 1e-3
    wave = 6e-3 * (1.0 + 4.0 * (cp - 0.55)) * max(0.0, sl - 0.45) ** 2
    return base + wave


def chart_rows():
    return [(sl, cp, float(f"{residual(sl, cp):.6e}")) for sl in SL_AXIS for cp in CP_AXIS]


def bilinear(rows, sl, cp):
    table = {(r[0], r[1]): r[2] for r in rows}
    i = max(k for k in range(len(SL_AXIS) - 1) if SL_AXIS[k] <= sl)
    j = max(k for k in range(len(CP_AXIS) - 1) if CP_AXIS[k] <= cp)
    s0, s1 = SL_AXIS[i], SL_AXIS[i + 1]
    p0, p1 = CP_AXIS[j], CP_AXIS[j + 1]
    tx = (sl - s0) / (s1 - s0)
    ty = (cp - p0) / (p1 - p0)
    a = table[(s0, p0)] * (1 - ty) + table[(s0, p1)] * ty
    b = table[(s1, p0)] * (1 - ty) + table[(s1, p1)] * ty
    return a * (1 - tx) + b * tx


def total_resistance_kn(ship, water, rows, v_kt):
    v = v_kt * KNOT
    re = v * ship["length_pp_m"] / water["kinematic_viscosity_m2_s"]
    cf = 0.075 / (math.log10(re) - 2.0) ** 2
    cp = ship["block_coeff"] / ship["midship_coeff"]
    sl = v_kt / math.sqrt(ship["length_pp_m"] / FOOT)
    cr = bilinear(rows, sl, cp)
    s = 1.025 * ship["length_pp_m"] * (ship["block_coeff"] * ship["breadth_m"] + 1.7 * ship["draft_m"])
    r = (cf + cr + ship["incremental_coeff"]) * 0.5 * water["density_kg_m3"] * v * v * s
    return r / 1000.0


def main():
    data = Path(sys.argv[1] if len(sys.argv) > 1 else Path(__file__).resolve().parent.parent / "data")
    rows = chart_rows()
    with open(data / "residual_chart.csv", "w", newline="") as f:
        w = csv.writer(f, lineterminator="\n")
        w.writerow(["speed_length_ratio", "prismatic_coeff", "c_r"])
        for sl, cp, cr in rows:
            w.writerow([f"{sl:.2f}", f"{cp:.2f}", f"{cr:.6e}"])

    case = json.loads((data / "keller_case.json").read_text())
    with open(data / "keller_validation.csv", "w", newline="") as f:
        w = csv.writer(f, lineterminator="\n")
        w.writerow(["speed_kt", "resistance_kn"])
        for v in range(10, 21):
            r = total_resistance_kn(case["ship"], case["water"], rows, float(v))
            w.writerow([f"{v:.1f}", f"{float(f'{r:.4g}'):g}"])


if __name__ == "__main__":
    main()
