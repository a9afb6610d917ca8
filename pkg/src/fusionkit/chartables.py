"""Embedded character tables.

Each value is an int or a list of ``(k, n)`` pairs standing for the sum of
roots of unity exp(2 pi i k / n). Classes are listed with their sizes so
tests can cross-check them against conjugacy classes of the Cayley tables.
"""
import cmath

W3 = [(1, 3)]
W3B = [(2, 3)]
ETA = [(1, 7), (2, 7), (4, 7)]       # (-1 + i sqrt 7) / 2
ETA_B = [(3, 7), (5, 7), (6, 7)]

TABLES = {
    "Z2xZ2": {
        "labels": ["1", "a", "b", "ab"],
        "class_sizes": [1, 1, 1, 1],
        "chars": [
            [1, 1, 1, 1],
            [1, 1, -1, -1],
            [1, -1, 1, -1],
            [1, -1, -1, 1],
        ],
    },
    "S3": {
        "labels": ["1", "sgn", "V"],
        "class_sizes": [1, 3, 2],
        "chars": [
            [1, 1, 1],
            [1, -1, 1],
            [2, 0, -1],
        ],
    },
    # classes: e, r^2, {r, r^3}, {s, s r^2}, {s r, s r^3}
    "D4": {
        "labels": ["1", "a", "b", "c", "V"],
        "class_sizes": [1, 1, 2, 2, 2],
        "chars": [
            [1, 1, 1, 1, 1],
            [1, 1, 1, -1, -1],
            [1, 1, -1, 1, -1],
            [1, 1, -1, -1, 1],
            [2, -2, 0, 0, 0],
        ],
    },
    # classes: 1, -1, {+-i}, {+-j}, {+-k}
    "Q8": {
        "labels": ["1", "a", "b", "c", "V"],
        "class_sizes": [1, 1, 2, 2, 2],
        "chars": [
            [1, 1, 1, 1, 1],
            [1, 1, 1, -1, -1],
            [1, 1, -1, 1, -1],
            [1, 1, -1, -1, 1],
            [2, -2, 0, 0, 0],
        ],
    },
    # classes: e, (12)(34), (123), (132)
    "A4": {
        "labels": ["1", "w", "w2", "V"],
        "class_sizes": [1, 3, 4, 4],
        "chars": [
            [1, 1, 1, 1],
            [1, 1, W3, W3B],
            [1, 1, W3B, W3],
            [3, -1, 0, 0],
        ],
    },
    # classes: e, (12), (12)(34), (123), (1234)
    "S4": {
        "labels": ["1", "sgn", "U", "V", "V'"],
        "class_sizes": [1, 6, 3, 8, 6],
        "chars": [
            [1, 1, 1, 1, 1],
            [1, -1, 1, 1, -1],
            [2, 0, 2, -1, 0],
            [3, 1, -1, 0, -1],
            [3, -1, -1, 0, 1],
        ],
    },
    # classes: e, {x, x^2, x^4}, {x^3, x^5, x^6}, y-class, y^2-class
    "Z7xZ3": {
        "labels": ["1", "w", "w2", "V", "V*"],
        "class_sizes": [1, 3, 3, 7, 7],
        "chars": [
            [1, 1, 1, 1, 1],
            [1, 1, 1, W3, W3B],
            [1, 1, 1, W3B, W3],
            [3, ETA, ETA_B, 0, 0],
            [3, ETA_B, ETA, 0, 0],
        ],
    },
}


def cyclic_table(n: int) -> dict:
    return {
        "labels": ["1"] + [f"g{j}" if j > 1 else "g" for j in range(1, n)],
        "class_sizes": [1] * n,
        "chars": [[[(j * k % n, n)] for k in range(n)] for j in range(n)],
    }


def lookup(name: str) -> dict:
    if name in TABLES:
        return TABLES[name]
    if name.startswith("Z") and name[1:].isdigit() and 1 <= int(name[1:]) <= 12:
        return cyclic_table(int(name[1:]))
    raise KeyError(f"no character table for {name!r}")


def value(entry) -> complex:
    if isinstance(entry, int):
        return complex(entry)
    return sum(cmath.exp(2j * cmath.pi * k / n) for k, n in entry)
