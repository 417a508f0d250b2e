"""Writes benchmark_probes.csv: reference values of F1-F23 at fixed points,
computed with the standalone transcriptions in benchmark_tables.py.
Run with `python3 benchmark_probes.py <out.csv>`."""
import csv
import math
import sys

import benchmark_tables as bt

FIXED = {
    "F14": (bt.f14, [[-32, -32], [1.5, -7.25], [10, 20]]),
    "F15": (bt.f15, [[0.1928, 0.1908, 0.1231, 0.1358], [1, 2, 3, 4], [-0.5, 0.25, 1.5, -2]]),
    "F16": (bt.f16, [[0.08984201, -0.7126564], [1, 1]]),
    "F17": (bt.f17, [[math.pi, 2.275], [0, 0]]),
    "F18": (bt.f18, [[0, -1], [0.5, 1.5]]),
    "F19": (lambda x: bt.hartman(x, bt.H3_A, bt.H3_C, bt.H3_P), [[0.114614, 0.555649, 0.852547], [0.5, 0.5, 0.5]]),
    "F20": (lambda x: bt.hartman(x, bt.H6_A, bt.H6_C, bt.H6_P),
            [[0.20169, 0.150011, 0.476874, 0.275332, 0.311652, 0.6573], [0.5] * 6]),
    "F21": (lambda x: bt.shekel(x, 5), [[4, 4, 4, 4], [1, 2, 3, 4]]),
    "F22": (lambda x: bt.shekel(x, 7), [[4, 4, 4, 4], [1, 2, 3, 4]]),
    "F23": (lambda x: bt.shekel(x, 10), [[4, 4, 4, 4], [1, 2, 3, 4]]),
}


def rows():
    probe = [3 * math.sin(i + 1) for i in range(30)]
    wide = [12 * math.cos(0.7 * (i + 1)) for i in range(30)]
    for k in range(1, 14):
        name = f"F{k}"
        yield name, probe, bt.scalable(probe)[name]
    for name in ("F12", "F13"):
        yield name, wide, bt.scalable(wide)[name]
    yield "F8", [420.9687] * 30, bt.scalable([420.9687] * 30)["F8"]
    yield "F10", [0.0] * 30, bt.scalable([0.0] * 30)["F10"]
    for name, (f, points) in FIXED.items():
        for p in points:
            yield name, [float(v) for v in p], f(p)


if __name__ == "__main__":
    with open(sys.argv[1], "w", newline="") as fh:
        out = csv.writer(fh, lineterminator="\n")
        out.writerow(["function", "point", "value"])
        for name, point, value in rows():
            out.writerow([name, " ".join(repr(v) for v in point), repr(value)])
