"""Named parity-check matrices and base matrices used by the golden tests and CLI.

Best-known-code inputs are not pinned by any published source, so the
representatives recorded here are the ones all reported numbers refer to.
"""

from __future__ import annotations

from .gf2 import BinaryMatrix
from .ringpoly import BaseMatrix


def h_633() -> BinaryMatrix:
    """[6, 3, 3] representative; one weight-4 row, column weights <= 3."""
    return BinaryMatrix.from_rows(
        [
            [1, 1, 1, 1, 0, 0],
            [1, 0, 1, 0, 1, 0],
            [1, 0, 0, 1, 0, 1],
        ]
    )


def h_743() -> BinaryMatrix:
    """[7, 4, 3] Hamming code parity check."""
    return BinaryMatrix.from_rows(
        [
            [0, 0, 0, 1, 1, 1, 1],
            [0, 1, 1, 0, 0, 1, 1],
            [1, 0, 1, 0, 1, 0, 1],
        ]
    )


def h_734() -> BinaryMatrix:
    """[7, 3, 4] simplex code parity check (= Hamming generator matrix)."""
    return BinaryMatrix.from_rows(
        [
            [1, 0, 0, 0, 0, 1, 1],
            [0, 1, 0, 0, 1, 0, 1],
            [0, 0, 1, 0, 1, 1, 0],
            [0, 0, 0, 1, 1, 1, 1],
        ]
    )


def qrm4() -> tuple[BinaryMatrix, BinaryMatrix]:
    """Stabilizers of the 15-qubit quantum Reed-Muller code, (H_X, H_Z)."""
    hx = BinaryMatrix.from_rows(
        [
            [1, 0, 1, 0, 1, 0, 1, 0, 1, 0, 1, 0, 1, 0, 1],
            [0, 1, 1, 0, 0, 1, 1, 0, 0, 1, 1, 0, 0, 1, 1],
            [0, 0, 0, 1, 1, 1, 1, 0, 0, 0, 0, 1, 1, 1, 1],
            [0, 0, 0, 0, 0, 0, 0, 1, 1, 1, 1, 1, 1, 1, 1],
        ]
    )
    hz = BinaryMatrix.from_rows(
        [
            [1, 0, 1, 0, 1, 0, 1, 0, 1, 0, 1, 0, 1, 0, 1],
            [0, 1, 1, 0, 0, 1, 1, 0, 0, 1, 1, 0, 0, 1, 1],
            [0, 0, 0, 1, 1, 1, 1, 0, 0, 0, 0, 1, 1, 1, 1],
            [0, 0, 0, 0, 0, 0, 0, 1, 1, 1, 1, 1, 1, 1, 1],
            [0, 0, 1, 0, 0, 0, 1, 0, 0, 0, 1, 0, 0, 0, 1],
            [0, 0, 0, 0, 1, 0, 1, 0, 0, 0, 0, 0, 1, 0, 1],
            [0, 0, 0, 0, 0, 1, 1, 0, 0, 0, 0, 0, 0, 1, 1],
            [0, 0, 0, 0, 0, 0, 0, 0, 0, 1, 1, 0, 0, 1, 1],
            [0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1, 1, 1, 1],
            [0, 0, 0, 0, 0, 0, 0, 0, 1, 0, 1, 0, 1, 0, 1],
        ]
    )
    return hx, hz


def base_b1() -> BaseMatrix:
    """[52, 27, 6] quasi-cyclic base, lift size 13."""
    return BaseMatrix.from_strings(13, [["1", "1", "1", "1"], ["1", "x", "x^3", "x^9"]])


def base_b2() -> BaseMatrix:
    """[124, 33, 24] quasi-cyclic base, lift size 31."""
    return BaseMatrix.from_strings(
        31,
        [
            ["x", "x^2", "x^4", "x^8"],
            ["x^5", "x^10", "x^20", "x^9"],
            ["x^25", "x^19", "x^7", "x^14"],
        ],
    )


def base_b3() -> BaseMatrix:
    """[28, 9, 10] quasi-cyclic base, lift size 7."""
    return BaseMatrix.from_strings(
        7,
        [
            ["1", "1", "1", "1"],
            ["1", "x", "x^2", "x^5"],
            ["1", "x^6", "x^3", "x"],
        ],
    )


def base_b4() -> BaseMatrix:
    """[36, 11, 12] quasi-cyclic base, lift size 9."""
    return BaseMatrix.from_strings(
        9,
        [
            ["1", "1", "1", "1"],
            ["1", "x", "x^6", "x^7"],
            ["1", "x^4", "x^5", "x^2"],
        ],
    )


def base_b5() -> BaseMatrix:
    """[68, 19, 18] quasi-cyclic base, lift size 17."""
    return BaseMatrix.from_strings(
        17,
        [
            ["1", "1", "1", "1"],
            ["1", "x", "x^2", "x^11"],
            ["1", "x^8", "x^12", "x^13"],
        ],
    )


def base_mixed() -> BaseMatrix:
    """[184, 47, 32] base with multi-term entries, lift size 46."""
    return BaseMatrix.from_strings(
        46,
        [
            ["x+x^2", "0", "x^4", "x^8"],
            ["x^5", "x^9", "x^10+x^20", "0"],
            ["0", "x^25+x^19", "0", "x^7+x^14"],
        ],
    )


MATRIX_FIXTURES = {
    "633": h_633,
    "734": h_734,
    "743": h_743,
    "hamming": h_743,
}

BASE_FIXTURES = {
    "b1": base_b1,
    "b2": base_b2,
    "b3": base_b3,
    "b4": base_b4,
    "b5": base_b5,
    "mixed": base_mixed,
}

CSS_FIXTURES = {
    "qrm4": qrm4,
}


def lookup(name: str):
    """Resolve a named fixture to a BinaryMatrix, BaseMatrix, or (H_X, H_Z) pair."""
    for table in (MATRIX_FIXTURES, BASE_FIXTURES, CSS_FIXTURES):
        if name in table:
            return table[name]()
    raise KeyError(f"unknown fixture {name!r}; known: "
                   f"{sorted([*MATRIX_FIXTURES, *BASE_FIXTURES, *CSS_FIXTURES])}")
