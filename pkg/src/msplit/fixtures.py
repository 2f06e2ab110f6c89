"""The five canonical example matroids and the split sets exercised on them."""

from __future__ import annotations

from .matroid import Matroid, from_columns

FIXTURE_COLUMNS = {
    # U_{2,4} over GF(3)
    "F1": (3, "abcd", [(1, 0), (0, 1), (1, 1), (1, 2)]),
    # cycle matroid of K4 over GF(2)
    "F2": (2, ["e1", "e2", "e3", "e4", "e5", "e6"],
           [(1, 0, 0), (0, 1, 0), (0, 0, 1), (1, 1, 0), (0, 1, 1), (1, 0, 1)]),
    # two disjoint triangles over GF(2)
    "F3": (2, "abcdef", [(1, 0, 0, 0), (0, 1, 0, 0), (1, 1, 0, 0),
                         (0, 0, 1, 0), (0, 0, 0, 1), (0, 0, 1, 1)]),
    # a single triangle over GF(3)
    "F4": (3, "abc", [(1, 0), (0, 1), (1, 1)]),
    # five parallel elements over GF(3)
    "F5": (3, "abcde", [(1,), (1,), (2,), (1,), (2,)]),
}

FIXTURE_SPLITS = {
    "F1": [("c", "d"), ("b", "c", "d")],
    "F2": [("e1", "e5"), ("e1", "e4", "e6")],
    "F3": [("a", "d"), ("a",)],
    "F4": [("a",)],
    "F5": [("a", "c")],
}


def fixture(name: str) -> Matroid:
    p, labels, columns = FIXTURE_COLUMNS[name]
    return from_columns(p, columns, list(labels))


def fixtures() -> dict[str, Matroid]:
    return {name: fixture(name) for name in FIXTURE_COLUMNS}
