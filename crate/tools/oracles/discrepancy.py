"""Grid star-discrepancy of the 150-point 2-D good-nodes set.
Run with `python3 discrepancy.py`; the printed value is frozen into a test."""
import math


def good_nodes_vector(dim):
    p = 2 * dim + 3
    while any(p % d == 0 for d in range(2, int(math.isqrt(p)) + 1)):
        p += 1
    return [(2 * math.cos(2 * math.pi * j / p)) % 1.0 for j in range(1, dim + 1)]


def good_nodes(count, dim):
    r = good_nodes_vector(dim)
    return [[(k * rj) % 1.0 for rj in r] for k in range(1, count + 1)]


def star_discrepancy(points, res):
    n = len(points)
    worst = 0.0
    for i in range(1, res + 1):
        a = i / res
        for j in range(1, res + 1):
            b = j / res
            op = sum(1 for x, y in points if x < a and y < b)
            cl = sum(1 for x, y in points if x <= a and y <= b)
            worst = max(worst, abs(op / n - a * b), abs(cl / n - a * b))
    return worst


print(repr(star_discrepancy(good_nodes(150, 2), 64)))
