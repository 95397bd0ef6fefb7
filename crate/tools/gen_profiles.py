#!/usr/bin/env python3
"""Writes the sound-speed profile and the along-track bathymetry profiles.

* ssp_munk.csv: canonical Munk deep-water profile, 0 to 5500 m.
* bathymetry_t2.csv: 200 m flat bottom with a Gaussian seamount beside the
  route centre, 200 NM.
* bathymetry_a2.csv: synthetic shallow-shelf track, 110.09 NM, maximum
  331.2 m, mean about 158 m.
* bathymetry_b2.csv: synthetic shelf-and-basin track, 641.68 NM, maximum
  5042.5 m, mean about 500 m.

Bathymetry is sampled every 0.31 NM. Random relief is drawn from a fixed
seed so the files are reproducible.

Usage: python3 tools/gen_profiles.py [data_dir]
"""

import csv
import math
import sys
from pathlib import Path

import numpy as np

PITCH_NM = 0.31


def munk(z):
    eta = 2.0 * (z - 1300.0) / 1300.0
    return 1500.0 * (1.0 + 0.00737 * (eta - 1.0 + math.exp(-eta)))


def track(total_nm):
    n = int(math.floor(total_nm / PITCH_NM))
    r = [k * PITCH_NM for k in range(n + 1)]
    if r[-1] < total_nm:
        r.append(total_nm)
    return np.array(r)


def smooth_noise(rng, n, width):
    raw = rng.standard_normal(n + 4 * width)
    kernel = np.exp(-0.5 * (np.arange(-2 * width, 2 * width + 1) / width) ** 2)
    out = np.convolve(raw, kernel / kernel.sum(), mode="valid")[:n]
    return (out - out.mean()) / out.std()


def write_profile(path, header, rows, fmt):
    with open(path, "w", newline="") as f:
        w = csv.writer(f, lineterminator="\n")
        w.writerow(header)
        for a, b in rows:
            w.writerow([fmt[0].format(a), fmt[1].format(b)])


def shelf(rng, r, mean, peak, floor):
    """Relief with a given mean, rescaled so the deepest sample equals `peak`."""
    x = smooth_noise(rng, len(r), 12)
    d = mean + (peak - mean) * x / x.max()
    d = np.maximum(d, floor)
    # Restore the mean lost to the floor clip without moving the peak.
    for _ in range(50):
        d = np.minimum(np.maximum(d + (mean - d.mean()), floor), peak)
    d[np.argmax(x)] = peak
    return d


def main():
    data = Path(sys.argv[1] if len(sys.argv) > 1 else Path(__file__).resolve().parent.parent / "data")

    depths = list(range(0, 200, 10)) + list(range(200, 1000, 25)) + list(range(1000, 5501, 100))
    write_profile(data / "ssp_munk.csv", ["depth_m", "speed_ms"], [(z, munk(z)) for z in depths], ("{:.0f}", "{:.3f}"))

    r = track(200.0)
    d = 200.0 - 160.0 * np.exp(-0.5 * ((r - 95.0) / 2.0) ** 2)
    write_profile(data / "bathymetry_t2.csv", ["range_nm", "depth_m"], zip(r, d), ("{:.2f}", "{:.1f}"))

    rng = np.random.default_rng(2023)
    r = track(110.09)
    d = shelf(rng, r, 158.1, 331.2, 45.0)
    write_profile(data / "bathymetry_a2.csv", ["range_nm", "depth_m"], zip(r, d), ("{:.2f}", "{:.1f}"))

    r = track(641.68)
    base = shelf(rng, r, 150.0, 260.0, 60.0)
    basin = 4880.0 * np.exp(-0.5 * ((r - 330.0) / 22.0) ** 4)
    d = np.minimum(base + basin, 5042.5)
    d[np.argmax(d)] = 5042.5
    write_profile(data / "bathymetry_b2.csv", ["range_nm", "depth_m"], zip(r, d), ("{:.2f}", "{:.1f}"))


if __name__ == "__main__":
    main()
