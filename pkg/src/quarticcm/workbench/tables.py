"""The twenty cyclic quartic CM-fields with full reflex-norm image, as data."""

from __future__ import annotations

import json
from dataclasses import dataclass
from functools import lru_cache
from importlib import resources
from typing import Optional

from ..field import CMFieldQuartic


@dataclass(frozen=True)
class TableRow:
    D: int
    A: int
    B: int
    n: Optional[int] = None
    chi: Optional[tuple[int, ...]] = None
    i1: Optional[int] = None
    i2: Optional[int] = None
    i3: Optional[int] = None
    table: int = 1

    @property
    def key(self) -> tuple[int, int, int]:
        return (self.D, self.A, self.B)

    @property
    def has_indices(self) -> bool:
        return self.chi is not None

    def __str__(self) -> str:
        return f"[{self.D},{self.A},{self.B}]"


def _load(name: str) -> dict:
    text = resources.files(__package__).joinpath("data", name).read_text()
    return json.loads(text)


@lru_cache(maxsize=None)
def table1() -> tuple[TableRow, ...]:
    out = []
    for r in _load("table1.json")["rows"]:
        chi = tuple(r["chi"]) if r["chi"] is not None else None
        out.append(TableRow(r["D"], r["A"], r["B"], r["n"], chi, r["i1"], r["i2"], r["i3"], 1))
    return tuple(out)


@lru_cache(maxsize=None)
def table2() -> tuple[TableRow, ...]:
    return tuple(TableRow(r["D"], r["A"], r["B"], table=2) for r in _load("table2.json")["rows"])


def all_rows() -> tuple[TableRow, ...]:
    return table1() + table2()


def find_row(D: int, A: int, B: int) -> Optional[TableRow]:
    for r in all_rows():
        if r.key == (D, A, B):
            return r
    return None


@lru_cache(maxsize=None)
def field_of(row: TableRow) -> CMFieldQuartic:
    return CMFieldQuartic(row.A, row.B, row.D)
