"""Independent evaluation of the closed-form operation examples.

Run with `python3 derived_values.py [out.csv]`. Values are printed and, when
a path is given, written as `name,value` rows; the Rust tests compare
against them to 1e-10 relative.
"""
import csv
import math
import sys
from fractions import Fraction
from itertools import product

ROWS = []


def show(name, value):
    ROWS.append((name, value))
    print(f"{name:32s} {value!r}")


# producer update, exponential branch: x exp(-i / (alpha T)) with alpha = 1
show("producer_decay", 2 * math.exp(-1 * 1 / 500))

# sigmoid inertia weight
w = lambda t, T: 1 / (1 + math.exp(-25 * (t / T - 0.5)))
show("inertia_t0", w(0, 500))
show("inertia_tT", w(500, 500))

# sine-cosine producer, w = 0.5, x = 4, best = 2, r1 = 1, r2 = pi/2, r3 = 1
show("sine_cosine", 0.5 * 4 + 1 * math.sin(math.pi / 2) * abs(1 * 2 - 4))

# danger-aware update, original form, f_i = f_g branch with K = 1
eps = 1e-50
show("edge_original", 1 + 1 * (abs(1 - 3) * (2 - 4) / 2 + eps))

# triangular walk: L = 1, L' = L u1 with u1 = 0.5, u2 = 0.25, r = 0.05
L = 1.0
LP = L * 0.5
alpha = L ** 2 + LP ** 2 - 2 * L * LP * math.cos(2 * math.pi * 0.25)
show("triangular_alpha", alpha)
show("triangular_edge", 2 * L + 0.05 * alpha)

# good nodes, D = 2, p = 7
frac = lambda v: v - math.floor(v)
r = [frac(2 * math.cos(2 * math.pi * j / 7)) for j in (1, 2)]
show("good_nodes_r1", r[0])
show("good_nodes_r2", r[1])

# median-MAD diversity of the 1-D points 0 and 2
show("diversity_two_points", (abs(1 - 0) + abs(1 - 2)) / 2)

# sample std of 1..4
xs = [1, 2, 3, 4]
m = sum(xs) / 4
show("sample_std_1_4", math.sqrt(sum((x - m) ** 2 for x in xs) / 3))

# UAV costs on an obstacle-free map from (20,20,20) to (180,180,20)
show("path_length_diag", math.dist((20, 20, 20), (180, 180, 20)))
show("total_cost_straight", 0.5 * math.dist((20, 20, 20), (180, 180, 20)))
show("height_cost_0_2", math.sqrt(((0 - 1) ** 2 + (2 - 1) ** 2) / 2))

# piston lever force at x3 = 1
show("pl_force_x3_1", 0.25 * math.pi * 1500 * 1)

# Wilcoxon n = 5 all positive, exact enumeration of 2^5 sign vectors
count = sum(1 for signs in product([0, 1], repeat=5)
            if sum(r for r, s in zip(range(1, 6), signs) if s) >= 15)
show("wilcoxon_n5_p", float(min(1, 2 * Fraction(count, 32))))

# Ackley at the origin in double precision
n = 30
a = -20 * math.exp(-0.2 * math.sqrt(0 / n)) - math.exp(sum(math.cos(0) for _ in range(n)) / n) + 20 + math.e
show("ackley_origin", a)

# overall effectiveness
show("oe_14_8_1", (23 - 1) / 23 * 100)

if len(sys.argv) > 1:
    with open(sys.argv[1], "w", newline="") as fh:
        out = csv.writer(fh, lineterminator="\n")
        out.writerow(["name", "value"])
        for name, value in ROWS:
            out.writerow([name, repr(float(value))])
