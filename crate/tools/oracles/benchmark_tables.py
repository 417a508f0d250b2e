"""Writes benchmark_constants.csv and prints reference values for F14-F23.

The evaluation code here is a standalone transcription used only to
cross-check the Rust implementation.
"""
import csv
import hashlib
import math
import sys

FOX_ROW = [-32, -16, 0, 16, 32]
FOXHOLES = [[FOX_ROW[j % 5] for j in range(25)], [FOX_ROW[j // 5] for j in range(25)]]
KOWALIK_A = [0.1957, 0.1947, 0.1735, 0.16, 0.0844, 0.0627, 0.0456, 0.0342, 0.0323, 0.0235, 0.0246]
KOWALIK_B = [1 / v for v in [0.25, 0.5, 1, 2, 4, 6, 8, 10, 12, 14, 16]]
H3_A = [[3, 10, 30], [0.1, 10, 35], [3, 10, 30], [0.1, 10, 35]]
H3_C = [1, 1.2, 3, 3.2]
H3_P = [[0.3689, 0.117, 0.2673], [0.4699, 0.4387, 0.747], [0.1091, 0.8732, 0.5547], [0.03815, 0.5743, 0.8828]]
H6_A = [[10, 3, 17, 3.5, 1.7, 8], [0.05, 10, 17, 0.1, 8, 14], [3, 3.5, 1.7, 10, 17, 8], [17, 8, 0.05, 10, 0.1, 14]]
H6_C = [1, 1.2, 3, 3.2]
H6_P = [
    [0.1312, 0.1696, 0.5569, 0.0124, 0.8283, 0.5886],
    [0.2329, 0.4135, 0.8307, 0.3736, 0.1004, 0.9991],
    [0.2348, 0.1415, 0.3522, 0.2883, 0.3047, 0.6650],
    [0.4047, 0.8828, 0.8732, 0.5743, 0.1091, 0.0381],
]
SHEKEL_A = [[4, 4, 4, 4], [1, 1, 1, 1], [8, 8, 8, 8], [6, 6, 6, 6], [3, 7, 3, 7],
            [2, 9, 2, 9], [5, 5, 3, 3], [8, 1, 8, 1], [6, 2, 6, 2], [7, 3.6, 7, 3.6]]
SHEKEL_C = [0.1, 0.2, 0.2, 0.4, 0.4, 0.6, 0.3, 0.7, 0.5, 0.5]

TABLES = [
    ("foxholes_a", FOXHOLES),
    ("kowalik_a", [KOWALIK_A]),
    ("kowalik_b", [KOWALIK_B]),
    ("hartman3_a", H3_A),
    ("hartman3_c", [H3_C]),
    ("hartman3_p", H3_P),
    ("hartman6_a", H6_A),
    ("hartman6_c", [H6_C]),
    ("hartman6_p", H6_P),
    ("shekel_a", SHEKEL_A),
    ("shekel_c", [SHEKEL_C]),
]


def write_csv(path):
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(["table", "row", "col", "value"])
        for name, rows in TABLES:
            for i, row in enumerate(rows):
                for j, v in enumerate(row):
                    w.writerow([name, i, j, repr(float(v))])
    with open(path, "rb") as fh:
        print("sha256", hashlib.sha256(fh.read()).hexdigest())


def f14(x):
    s = sum(1 / (j + 1 + sum((x[i] - FOXHOLES[i][j]) ** 6 for i in range(2))) for j in range(25))
    return 1 / (1 / 500 + s)


def f15(x):
    return sum((a - x[0] * (b * b + b * x[1]) / (b * b + b * x[2] + x[3])) ** 2 for a, b in zip(KOWALIK_A, KOWALIK_B))


def f16(x):
    a, b = x
    return 4 * a * a - 2.1 * a ** 4 + a ** 6 / 3 + a * b - 4 * b * b + 4 * b ** 4


def f17(x):
    a, b = x
    return (b - 5.1 / (4 * math.pi ** 2) * a * a + 5 / math.pi * a - 6) ** 2 + 10 * (1 - 1 / (8 * math.pi)) * math.cos(a) + 10


def f18(x):
    a, b = x
    p = 1 + (a + b + 1) ** 2 * (19 - 14 * a + 3 * a * a - 14 * b + 6 * a * b + 3 * b * b)
    q = 30 + (2 * a - 3 * b) ** 2 * (18 - 32 * a + 12 * a * a + 48 * b - 36 * a * b + 27 * b * b)
    return p * q


def hartman(x, A, C, P):
    return -sum(c * math.exp(-sum(a[j] * (x[j] - p[j]) ** 2 for j in range(len(x)))) for a, c, p in zip(A, C, P))


def shekel(x, m):
    return -sum(1 / (sum((x[j] - SHEKEL_A[i][j]) ** 2 for j in range(4)) + SHEKEL_C[i]) for i in range(m))


if __name__ == "__main__":
    if len(sys.argv) > 1:
        write_csv(sys.argv[1])
    probes = {
        "F14": (f14, [[-32, -32], [1.5, -7.25], [10, 20]]),
        "F15": (f15, [[0.1928, 0.1908, 0.1231, 0.1358], [1, 2, 3, 4], [-0.5, 0.25, 1.5, -2]]),
        "F16": (f16, [[0.08984201, -0.7126564], [1, 1]]),
        "F17": (f17, [[math.pi, 2.275], [0, 0]]),
        "F18": (f18, [[0, -1], [0.5, 1.5]]),
        "F19": (lambda x: hartman(x, H3_A, H3_C, H3_P), [[0.114614, 0.555649, 0.852547], [0.5, 0.5, 0.5]]),
        "F20": (lambda x: hartman(x, H6_A, H6_C, H6_P), [[0.20169, 0.150011, 0.476874, 0.275332, 0.311652, 0.6573], [0.5] * 6]),
        "F21": (lambda x: shekel(x, 5), [[4, 4, 4, 4], [1, 2, 3, 4]]),
        "F22": (lambda x: shekel(x, 7), [[4, 4, 4, 4], [1, 2, 3, 4]]),
        "F23": (lambda x: shekel(x, 10), [[4, 4, 4, 4], [1, 2, 3, 4]]),
    }
    for name, (f, points) in probes.items():
        for p in points:
            print(name, p, repr(f(p)))


def u(v, a, k, m):
    if v > a:
        return k * (v - a) ** m
    if v < -a:
        return k * (-v - a) ** m
    return 0.0


def scalable(x):
    n = len(x)
    y = [1 + (v + 1) / 4 for v in x]
    out = {}
    out["F1"] = sum(v * v for v in x)
    out["F2"] = sum(abs(v) for v in x) + math.prod(abs(v) for v in x)
    out["F3"] = sum(sum(x[: i + 1]) ** 2 for i in range(n))
    out["F4"] = max(abs(v) for v in x)
    out["F5"] = sum(100 * (x[i + 1] - x[i] ** 2) ** 2 + (x[i] - 1) ** 2 for i in range(n - 1))
    out["F6"] = sum(math.floor(v + 0.5) ** 2 for v in x)
    out["F7"] = sum((i + 1) * v ** 4 for i, v in enumerate(x))
    out["F8"] = sum(-v * math.sin(math.sqrt(abs(v))) for v in x)
    out["F9"] = sum(v * v - 10 * math.cos(2 * math.pi * v) + 10 for v in x)
    out["F10"] = (-20 * math.exp(-0.2 * math.sqrt(sum(v * v for v in x) / n))
                  - math.exp(sum(math.cos(2 * math.pi * v) for v in x) / n) + 20 + math.e)
    out["F11"] = sum(v * v for v in x) / 4000 - math.prod(math.cos(v / math.sqrt(i + 1)) for i, v in enumerate(x)) + 1
    out["F12"] = (math.pi / n * (10 * math.sin(math.pi * y[0]) ** 2
                                 + sum((y[i] - 1) ** 2 * (1 + 10 * math.sin(math.pi * y[i + 1]) ** 2) for i in range(n - 1))
                                 + (y[-1] - 1) ** 2)
                  + sum(u(v, 10, 100, 4) for v in x))
    out["F13"] = (0.1 * (math.sin(3 * math.pi * x[0]) ** 2
                         + sum((x[i] - 1) ** 2 * (1 + math.sin(3 * math.pi * x[i + 1]) ** 2) for i in range(n - 1))
                         + (x[-1] - 1) ** 2 * (1 + math.sin(2 * math.pi * x[-1]) ** 2))
                  + sum(u(v, 5, 100, 4) for v in x))
    return out


if __name__ == "__main__":
    probe = [3 * math.sin(i + 1) for i in range(30)]
    for k, v in scalable(probe).items():
        print("probe", k, repr(v))
    wide = [12 * math.cos(0.7 * (i + 1)) for i in range(30)]
    for k in ("F12", "F13"):
        print("wide", k, repr(scalable(wide)[k]))
    print("F8 at 420.9687", repr(scalable([420.9687] * 30)["F8"]))
    print("F10 at 0", repr(scalable([0.0] * 30)["F10"]))
