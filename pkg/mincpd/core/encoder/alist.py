"""
alist reader and writer for binary parity-check matrices.

Layout (1-based indices, zero padding allowed in the index lists):

    n_cols n_rows
    max_col_degree max_row_degree
    col degrees
    row degrees
    one line per column: row indices of its ones
    one line per row: column indices of its ones

Files that omit the two degree-list lines (and the row lists) are also accepted.
"""
from pathlib import Path
from typing import List, Union

import numpy as np

from ...errors import FileFormatError


def _parse_lines(text: str) -> List[List[int]]:
    try:
        return [[int(token) for token in line.split()] for line in text.splitlines() if line.strip()]
    except ValueError as exc:
        raise FileFormatError(f"alist: non-integer token ({exc})") from exc


def parse_alist(text: str) -> np.ndarray:
    lines = _parse_lines(text)
    if not lines or len(lines[0]) != 2:
        raise FileFormatError("alist: first line must hold n_cols n_rows")
    n_cols, n_rows = lines[0]
    if n_cols < 1 or n_rows < 1:
        raise FileFormatError(f"alist: invalid size {n_cols}x{n_rows}")

    # the reduced format drops lines 3 and 4
    if len(lines) > 3 and len(lines[2]) == n_cols and len(lines[3]) == n_rows:
        start = 4
    else:
        start = 2
    column_lists = lines[start : start + n_cols]
    if len(column_lists) != n_cols:
        raise FileFormatError(f"alist: expected {n_cols} column lines, found {len(column_lists)}")

    matrix = np.zeros((n_rows, n_cols), dtype=np.int8)
    for col, rows in enumerate(column_lists):
        for row in rows:
            if row == 0:
                continue
            if not 1 <= row <= n_rows:
                raise FileFormatError(f"alist: row index {row} out of range in column {col + 1}")
            matrix[row - 1, col] = 1
    return matrix


def read_alist(path: Union[str, Path]) -> np.ndarray:
    """Parity-check matrix (M x N, int8) stored in ``path``."""
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise FileFormatError(f"alist: cannot read {path}: {exc.strerror}") from exc
    return parse_alist(text)


def format_alist(matrix: np.ndarray) -> str:
    matrix = np.asarray(matrix)
    if matrix.ndim != 2 or not np.all(np.isin(matrix, (0, 1))):
        raise FileFormatError("alist: matrix must be a binary 2-D array")
    n_rows, n_cols = matrix.shape
    col_lists = [np.flatnonzero(matrix[:, j]) + 1 for j in range(n_cols)]
    row_lists = [np.flatnonzero(matrix[i]) + 1 for i in range(n_rows)]
    col_degree = max((len(c) for c in col_lists), default=0)
    row_degree = max((len(r) for r in row_lists), default=0)

    def padded(indices, width):
        return " ".join(str(int(i)) for i in list(indices) + [0] * (width - len(indices)))

    lines = [
        f"{n_cols} {n_rows}",
        f"{col_degree} {row_degree}",
        " ".join(str(len(c)) for c in col_lists),
        " ".join(str(len(r)) for r in row_lists),
    ]
    lines += [padded(c, col_degree) for c in col_lists]
    lines += [padded(r, row_degree) for r in row_lists]
    return "\n".join(lines) + "\n"


def write_alist(matrix: np.ndarray, path: Union[str, Path]) -> None:
    Path(path).write_text(format_alist(matrix), encoding="utf-8")
