"""Sparse exact-integer matrices and the plain-text triple interchange format."""

from __future__ import annotations

from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Sequence, TextIO


@dataclass(frozen=True)
class SparseIntMatrix:
    """An ``nrows x ncols`` integer matrix stored as ``{(row, col): value}``.

    Zero entries are never stored. Labels are optional and carried along
    by row and column slicing.
    """

    nrows: int
    ncols: int
    entries: dict[tuple[int, int], int] = field(default_factory=dict)
    row_labels: tuple | None = None
    col_labels: tuple | None = None

    def __post_init__(self):
        for (i, j), v in self.entries.items():
            if not (0 <= i < self.nrows and 0 <= j < self.ncols):
                raise IndexError(f"entry ({i}, {j}) outside {self.nrows}x{self.ncols}")
            if v == 0:
                raise ValueError("zero entries must not be stored")
            if not isinstance(v, int):
                raise TypeError(f"entries must be int, got {type(v).__name__}")
        if self.row_labels is not None and len(self.row_labels) != self.nrows:
            raise ValueError("row label count differs from nrows")
        if self.col_labels is not None and len(self.col_labels) != self.ncols:
            raise ValueError("column label count differs from ncols")

    @property
    def shape(self) -> tuple[int, int]:
        return (self.nrows, self.ncols)

    @property
    def nnz(self) -> int:
        return len(self.entries)

    @classmethod
    def from_dense(cls, rows: Sequence[Sequence[int]], ncols: int | None = None, **labels) -> "SparseIntMatrix":
        nrows = len(rows)
        if ncols is None:
            ncols = len(rows[0]) if rows else 0
        entries = {(i, j): int(v) for i, row in enumerate(rows) for j, v in enumerate(row) if v}
        return cls(nrows, ncols, entries, **labels)

    @classmethod
    def from_rows(cls, rows: Sequence[dict[int, int]], ncols: int, **labels) -> "SparseIntMatrix":
        entries = {(i, j): v for i, row in enumerate(rows) for j, v in row.items() if v}
        return cls(len(rows), ncols, entries, **labels)

    def rows(self) -> list[dict[int, int]]:
        out: list[dict[int, int]] = [{} for _ in range(self.nrows)]
        for (i, j), v in sorted(self.entries.items()):
            out[i][j] = v
        return out

    def to_dense(self) -> list[list[int]]:
        out = [[0] * self.ncols for _ in range(self.nrows)]
        for (i, j), v in self.entries.items():
            out[i][j] = v
        return out

    def transpose(self) -> "SparseIntMatrix":
        return SparseIntMatrix(
            self.ncols,
            self.nrows,
            {(j, i): v for (i, j), v in self.entries.items()},
            row_labels=self.col_labels,
            col_labels=self.row_labels,
        )

    def __getitem__(self, ij: tuple[int, int]) -> int:
        return self.entries.get(ij, 0)

    def matvec(self, v: Sequence[int]) -> list[int]:
        if len(v) != self.ncols:
            raise ValueError(f"vector of length {len(v)} for {self.ncols} columns")
        out = [0] * self.nrows
        for (i, j), a in self.entries.items():
            out[i] += a * v[j]
        return out

    def annihilates(self, v: Sequence[int]) -> bool:
        return not any(self.matvec(v))

    def __eq__(self, other) -> bool:
        if not isinstance(other, SparseIntMatrix):
            return NotImplemented
        return self.shape == other.shape and self.entries == other.entries

    # triple format ---------------------------------------------------------

    def write(self, out: TextIO | str | Path) -> None:
        """Header ``rows cols`` then one ``i j value`` line per entry (0-based)."""
        if isinstance(out, (str, Path)):
            with open(out, "w") as fh:
                self.write(fh)
            return
        out.write(f"{self.nrows} {self.ncols}\n")
        for (i, j), v in sorted(self.entries.items()):
            out.write(f"{i} {j} {v}\n")

    @classmethod
    def read(cls, src: TextIO | str | Path) -> "SparseIntMatrix":
        if isinstance(src, (str, Path)):
            with open(src) as fh:
                return cls.read(fh)
        lines = [ln for ln in (raw.strip() for raw in src) if ln and not ln.startswith("#")]
        if not lines:
            raise ValueError("empty matrix file")
        try:
            nrows, ncols = (int(x) for x in lines[0].split())
            entries: dict[tuple[int, int], int] = {}
            for ln in lines[1:]:
                i, j, v = ln.split()
                if int(v):
                    entries[(int(i), int(j))] = entries.get((int(i), int(j)), 0) + int(v)
        except ValueError as exc:
            raise ValueError(f"malformed matrix file: {exc}") from exc
        return cls(nrows, ncols, {k: v for k, v in entries.items() if v})


def vstack(blocks: Iterable[SparseIntMatrix]) -> SparseIntMatrix:
    """Stack matrices with equal column counts; row labels are concatenated when all present."""
    blocks = list(blocks)
    if not blocks:
        raise ValueError("nothing to stack")
    ncols = blocks[0].ncols
    entries: dict[tuple[int, int], int] = {}
    offset = 0
    labels: list | None = []
    for b in blocks:
        if b.ncols != ncols:
            raise ValueError("column counts differ")
        for (i, j), v in b.entries.items():
            entries[(i + offset, j)] = v
        offset += b.nrows
        if labels is not None and b.row_labels is not None:
            labels.extend(b.row_labels)
        else:
            labels = None
    return SparseIntMatrix(
        offset,
        ncols,
        entries,
        row_labels=tuple(labels) if labels is not None else None,
        col_labels=blocks[0].col_labels,
    )


def as_rows(a: "SparseIntMatrix | Sequence[Sequence]") -> tuple[list[dict[int, object]], int]:
    """Row dictionaries and column count for either matrix representation."""
    if isinstance(a, SparseIntMatrix):
        return a.rows(), a.ncols
    ncols = len(a[0]) if len(a) else 0
    return [{j: v for j, v in enumerate(row) if v} for row in a], ncols


def sqnorm(v: Sequence[int]) -> int:
    return sum(x * x for x in v)
