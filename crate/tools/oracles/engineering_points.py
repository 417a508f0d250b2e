"""Independent transcription of the four engineering design problems.

Writes engineering_reference_points.csv with the raw objective and every
constraint value at five fixed points per problem.
"""
import csv
import math
import sys

THETA = math.pi / 4


def cb(x):
    x1, x2, x3, x4 = x
    root = math.sqrt(abs(x3 ** 2 - x2 ** 2))
    f = 5.885 * x4 * (x1 + x3) / (x1 + root)
    g = [
        -x4 * x2 * (0.4 * x1 + x3 / 6) + 8.94 * (x1 + root),
        -x4 * x2 ** 2 * (0.2 * x1 + x3 / 12) + 2.2 * (8.94 * (x1 + root)) ** (4 / 3),
        -x4 + 0.0156 * x1 + 0.15,
        -x4 + 0.0156 * x3 + 0.15,
        -x4 + 1.05,
        -x3 + x2,
    ]
    return f, g, []


def pl(x):
    x1, x2, x3, x4 = x
    Q, P, L, M = 10000.0, 1500.0, 240.0, 1.8e6
    F = 0.25 * math.pi * P * x3 ** 2
    L1 = math.sqrt((x4 - x2) ** 2 + x1 ** 2)
    L2 = math.sqrt((x4 * math.sin(THETA) + x1) ** 2 + (x2 - x4 * math.cos(THETA)) ** 2)
    R = abs(-x4 * (x4 * math.sin(THETA) + x1) + x1 * (x2 - x4 * math.cos(THETA))) / L1
    f = 0.25 * math.pi * x3 ** 2 * (L2 - L1)
    g = [Q * L * math.cos(THETA) - R * F, Q * (L - x4) - M, 1.2 * (L2 - L1) - L1, x3 / 2 - x2]
    return f, g, []


def rn(x):
    x1, x2, x3, x4, x5, x6 = x
    k1 = 0.09755988
    k2 = 0.99 * k1
    k3 = 0.0391908
    k4 = 0.9 * k3
    g = [math.sqrt(x5) + math.sqrt(x6) - 4]
    h = [
        x1 + k1 * x2 * x5 - 1,
        x2 - x1 + k2 * x2 * x6,
        x3 + x1 + k3 * x3 * x5 - 1,
        x4 - x3 + x2 - x1 + k4 * x4 * x6,
    ]
    return x4, g, h


def irs(x):
    x1, x2, x3, x4, x5, x6, x7, x8, x9, x10, x11, x12, x13, x14 = x
    f = (63098.88 * x2 * x4 * x12 + 5441.5 * x2 ** 2 * x12
         + 115055.5 * x2 ** 1.664 * x6 + 6172.27 * x2 ** 2 * x6
         + 63098.88 * x1 * x3 * x11 + 5441.5 * x1 ** 2 * x11
         + 115055.5 * x1 ** 1.664 * x5 + 6172.27 * x1 ** 2 * x5
         + 140.53 * x1 * x11 + 281.29 * x3 * x11
         + 70.26 * x1 ** 2 + 281.29 * x1 * x3 + 281.29 * x3 ** 2
         + 14437 * x8 ** 1.8812 * x12 ** 0.3424 * x10 * x1 ** 2 * x7 / (x14 * x9)
         + 20470.2 * x7 ** 2.893 * x11 ** 0.316 * x12)
    g = [
        1.524 / x7 - 1,
        1.524 / x8 - 1,
        0.07789 * x1 - 2 * x9 / x7 - 1,
        7.05305 * x1 ** 2 * x10 / (x9 * x8 * x2 * x14) - 1,
        0.0833 * x14 / x13 - 1,
        47.136 * x2 ** 0.333 * x12 / x10 - 1.333 * x8 * x13 ** 2.1195
        + 62.08 * x13 ** 2.1195 * x8 ** 0.2 / (x12 * x10) - 1,
        0.04771 * x10 * x8 ** 1.8812 * x12 ** 0.3424 - 1,
        0.0488 * x9 * x7 ** 1.893 * x11 ** 0.316 - 1,
        0.0099 * x1 / x3 - 1,
        0.0193 * x2 / x4 - 1,
        0.0298 * x1 / x5 - 1,
        0.056 * x2 / x6 - 1,
        2 / x9 - 1,
        2 / x10 - 1,
        x12 / x11 - 1,
    ]
    return f, g, []


POINTS = {
    "CB": (cb, [
        [37.1179, 33.0350, 37.1276, 1.0000],
        [50.0, 20.0, 60.0, 2.5],
        [10.0, 40.0, 30.0, 1.05],
        [1.0, 1.0, 1.0, 1.05],
        [80.0, 5.0, 95.0, 4.2],
    ]),
    "PL": (pl, [
        [0.05, 2.042, 4.083, 120.0],
        [100.0, 50.0, 10.0, 200.0],
        [0.5, 1.0, 2.0, 400.0],
        [250.0, 250.0, 60.0, 250.0],
        [3.0, 0.5, 1.0, 50.0],
    ]),
    "RN": (rn, [
        [0.771517, 0.516992, 0.204192, 0.388811, 3.036504, 5.096052],
        [0.5, 0.5, 0.5, 0.5, 4.0, 4.0],
        [0.1, 0.9, 0.3, 0.2519, 1.0, 9.0],
        [1e-5, 1e-5, 1e-5, 1e-5, 1e-5, 1e-5],
        [1.0, 1.0, 1.0, 1.0, 16.0, 16.0],
    ]),
    "IRS": (irs, [
        [2.5] * 14,
        [0.001639, 0.001, 0.001, 0.001, 0.001, 0.001, 1.524, 1.524, 5.0, 2.0, 0.001, 0.001, 0.007293, 0.087556],
        [0.01 * (k + 1) + 0.3 * k for k in range(14)],
        [4.9 - 0.3 * k for k in range(14)],
        [1.0, 2.0, 0.5, 1.5, 3.0, 0.25, 2.0, 1.6, 2.2, 2.4, 1.1, 0.9, 0.3, 0.05],
    ]),
}


def main(path):
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(["problem", "point", "kind", "index", "value"])
        for name, (fn, pts) in POINTS.items():
            for p, x in enumerate(pts):
                f, g, h = fn(x)
                for i, v in enumerate(x):
                    w.writerow([name, p, "x", i + 1, repr(float(v))])
                w.writerow([name, p, "f", 0, repr(f)])
                for i, v in enumerate(g):
                    w.writerow([name, p, "g", i + 1, repr(v)])
                for i, v in enumerate(h):
                    w.writerow([name, p, "h", i + 1, repr(v)])
    print("PL F at x3=1:", repr(0.25 * math.pi * 1500 * 1.0))


if __name__ == "__main__":
    main(sys.argv[1])
