"""Bundled worked arrays and the reconstruction search for the 9-participant binary PHF.

The binary PHF(4; 9, 2, 2) is only available as an 8-column printout, so
:func:`example4_candidates` searches the missing column instead of guessing it.
"""

from __future__ import annotations

import itertools
from fractions import Fraction
from importlib import resources
from typing import List, NamedTuple, Tuple

from .anonymity import Scheme, measures
from .io import InputDocument, parse_input
from .phf import PhfArray, occupancy, validate_phf

NAMES = ("example1", "example2", "example3", "example5", "example6")

EXAMPLE4_PRINTED_ROWS: Tuple[Tuple[int, ...], ...] = (
    (1, 1, 1, 1, 2, 2, 2, 2),
    (1, 1, 1, 2, 1, 1, 2, 2),
    (1, 1, 2, 2, 1, 1, 1, 2),
    (1, 2, 2, 2, 2, 1, 1, 1),
)

# Stated targets: (proportional mu, proportional rho, ZS mu, ZS rho).
EXAMPLE4_TARGETS = (Fraction(19, 20), Fraction(3, 4), Fraction(23, 26), Fraction(73, 104))


def example_text(name: str) -> str:
    suffix = ".gen" if name == "example6" else ".phf"
    return resources.files("phfanon.data").joinpath(name + suffix).read_text()


def load_example(name: str) -> InputDocument:
    if name not in NAMES:
        raise KeyError(f"unknown example {name!r}; choose from {', '.join(NAMES)}")
    return parse_input(example_text(name), source=name)


def example_array(name: str) -> PhfArray:
    doc = load_example(name)
    if doc.kind != "phf":
        raise KeyError(f"{name} is not a PHF example")
    return doc.payload


def with_column(rows, column) -> PhfArray:
    return PhfArray(tuple(tuple(row) + (x,) for row, x in zip(rows, column)), 2, 2)


class Example4Candidate(NamedTuple):
    column: Tuple[int, ...]
    array: PhfArray
    balanced_counts: bool
    values: Tuple[Fraction, Fraction, Fraction, Fraction]

    @property
    def matches(self) -> bool:
        return self.balanced_counts and self.values == EXAMPLE4_TARGETS


def example4_candidates() -> List[Example4Candidate]:
    """Every binary ninth column giving a PHF, with the four scheme values it yields.

    Columns duplicating a printed one are skipped since two identical columns
    are never separated.
    """
    printed = set(zip(*EXAMPLE4_PRINTED_ROWS))
    out = []
    for column in itertools.product((1, 2), repeat=4):
        if column in printed:
            continue
        array = with_column(EXAMPLE4_PRINTED_ROWS, column)
        if not validate_phf(array).is_phf:
            continue
        counts_ok = all(sorted(f) == [4, 5] for f in occupancy(array))
        prop = measures(array, Scheme.PROPORTIONAL)
        zs = measures(array, Scheme.ZS)
        out.append(Example4Candidate(column, array, counts_ok, (prop.mu, prop.rho, zs.mu, zs.rho)))
    return out
