"""GF(2) linear algebra on rows packed into Python integers.

Bit i of a row integer is column i. Rows are cheap to XOR and to test,
which is all Gaussian elimination needs.
"""

from __future__ import annotations

__all__ = ["rank", "row_reduce", "nullspace", "in_rowspan"]


def row_reduce(rows: list[int]) -> tuple[list[int], list[int]]:
    """Reduced row echelon form.

    Returns (reduced_rows, pivot_columns), zero rows dropped. Pivots are
    chosen at the lowest set bit, scanning columns in increasing order.
    """
    reduced: list[int] = []
    pivots: list[int] = []
    for row in rows:
        for piv, r in zip(pivots, reduced):
            if (row >> piv) & 1:
                row ^= r
        if row == 0:
            continue
        piv = (row & -row).bit_length() - 1
        # keep earlier rows reduced against the new pivot
        for k in range(len(reduced)):
            if (reduced[k] >> piv) & 1:
                reduced[k] ^= row
        reduced.append(row)
        pivots.append(piv)
    order = sorted(range(len(pivots)), key=lambda k: pivots[k])
    return [reduced[k] for k in order], [pivots[k] for k in order]


def rank(rows: list[int]) -> int:
    return len(row_reduce(rows)[0])


def in_rowspan(target: int, rows: list[int]) -> int | None:
    """Coefficient mask c with XOR of rows[i] over set bits == target, or None.

    Bit i of the mask refers to rows[i] in the order given.
    """
    basis: list[tuple[int, int]] = []  # (row, combo mask)
    for i, row in enumerate(rows):
        combo = 1 << i
        for r, c in basis:
            if row & (r & -r):
                row ^= r
                combo ^= c
        if row:
            basis.append((row, combo))
            basis.sort(key=lambda rc: rc[0] & -rc[0])
    combo_out = 0
    for r, c in basis:
        if target & (r & -r):
            target ^= r
            combo_out ^= c
    return combo_out if target == 0 else None


def nullspace(rows: list[int]) -> list[int]:
    """Basis of {c : XOR of rows[i] over set bits of c == 0}.

    Found by eliminating the rows while tracking the combination that
    produced each one; combinations that reach zero are kernel vectors.
    """
    basis: list[tuple[int, int]] = []
    kernel: list[int] = []
    for i, row in enumerate(rows):
        combo = 1 << i
        for r, c in basis:
            if row & (r & -r):
                row ^= r
                combo ^= c
        if row == 0:
            kernel.append(combo)
        else:
            basis.append((row, combo))
            basis.sort(key=lambda rc: rc[0] & -rc[0])
    return kernel
