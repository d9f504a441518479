# Copyright (2025) Bytedance Ltd. and/or its affiliates

# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at

#     https://www.apache.org/licenses/LICENSE-2.0

# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

"""Exact integer matrices and the Smith normal form.

Matrices are immutable and hold Python ints, so there is no overflow. Empty
shapes (0 rows or 0 columns) are valid and stand for maps to or from the
trivial group.
"""

import logging
from dataclasses import dataclass
from typing import Any, Dict, List, Optional, Sequence, Tuple

from sympy import isprime

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class IntMatrix:
    rows: int
    cols: int
    entries: Tuple[int, ...]

    def __post_init__(self):
        if self.rows < 0 or self.cols < 0:
            raise ValueError(f"Negative matrix shape {self.rows}x{self.cols}")
        if len(self.entries) != self.rows * self.cols:
            raise ValueError(
                f"Expected {self.rows * self.cols} entries for a {self.rows}x{self.cols} matrix, "
                f"got {len(self.entries)}"
            )

    # -- construction -----------------------------------------------------

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]], cols: Optional[int] = None) -> "IntMatrix":
        """Build from nested lists. ``cols`` is needed only when ``rows`` is empty."""
        rows = [list(r) for r in rows]
        if cols is None:
            cols = len(rows[0]) if rows else 0
        for i, r in enumerate(rows):
            if len(r) != cols:
                raise ValueError(f"Row {i} has {len(r)} entries, expected {cols}")
        return cls(len(rows), cols, tuple(int(x) for r in rows for x in r))

    @classmethod
    def from_columns(cls, columns: Sequence[Sequence[int]], rows: int) -> "IntMatrix":
        data = [[0] * len(columns) for _ in range(rows)]
        for j, col in enumerate(columns):
            if len(col) != rows:
                raise ValueError(f"Column {j} has {len(col)} entries, expected {rows}")
            for i, x in enumerate(col):
                data[i][j] = int(x)
        return cls.from_rows(data, cols=len(columns))

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "IntMatrix":
        return cls(rows, cols, (0,) * (rows * cols))

    @classmethod
    def identity(cls, n: int) -> "IntMatrix":
        return cls(n, n, tuple(1 if i == j else 0 for i in range(n) for j in range(n)))

    @classmethod
    def diagonal(cls, values: Sequence[int], rows: Optional[int] = None, cols: Optional[int] = None) -> "IntMatrix":
        rows = len(values) if rows is None else rows
        cols = len(values) if cols is None else cols
        data = [[0] * cols for _ in range(rows)]
        for i, v in enumerate(values):
            data[i][i] = int(v)
        return cls.from_rows(data, cols=cols)

    # -- access -----------------------------------------------------------

    def __getitem__(self, index: Tuple[int, int]) -> int:
        i, j = index
        return self.entries[i * self.cols + j]

    def to_rows(self) -> List[List[int]]:
        return [list(self.entries[i * self.cols:(i + 1) * self.cols]) for i in range(self.rows)]

    def row(self, i: int) -> Tuple[int, ...]:
        return self.entries[i * self.cols:(i + 1) * self.cols]

    def column(self, j: int) -> Tuple[int, ...]:
        return tuple(self.entries[i * self.cols + j] for i in range(self.rows))

    def columns(self) -> List[Tuple[int, ...]]:
        return [self.column(j) for j in range(self.cols)]

    @property
    def shape(self) -> Tuple[int, int]:
        return self.rows, self.cols

    def is_zero(self) -> bool:
        return not any(self.entries)

    # -- arithmetic -------------------------------------------------------

    def transpose(self) -> "IntMatrix":
        return IntMatrix(self.cols, self.rows, tuple(self[i, j] for j in range(self.cols) for i in range(self.rows)))

    @property
    def T(self) -> "IntMatrix":
        return self.transpose()

    def __matmul__(self, other: "IntMatrix") -> "IntMatrix":
        if self.cols != other.rows:
            raise ValueError(f"Cannot multiply {self.rows}x{self.cols} by {other.rows}x{other.cols}")
        out = []
        other_cols = other.columns()
        for i in range(self.rows):
            r = self.row(i)
            for col in other_cols:
                out.append(sum(a * b for a, b in zip(r, col) if a and b))
        return IntMatrix(self.rows, other.cols, tuple(out))

    def apply(self, vector: Sequence[int]) -> Tuple[int, ...]:
        """Matrix-vector product."""
        if len(vector) != self.cols:
            raise ValueError(f"Vector of length {len(vector)} does not fit a {self.rows}x{self.cols} matrix")
        return tuple(sum(a * b for a, b in zip(self.row(i), vector) if a and b) for i in range(self.rows))

    def _check_same_shape(self, other: "IntMatrix") -> None:
        if self.shape != other.shape:
            raise ValueError(f"Shape mismatch: {self.shape} vs {other.shape}")

    def __add__(self, other: "IntMatrix") -> "IntMatrix":
        self._check_same_shape(other)
        return IntMatrix(self.rows, self.cols, tuple(a + b for a, b in zip(self.entries, other.entries)))

    def __sub__(self, other: "IntMatrix") -> "IntMatrix":
        self._check_same_shape(other)
        return IntMatrix(self.rows, self.cols, tuple(a - b for a, b in zip(self.entries, other.entries)))

    def __neg__(self) -> "IntMatrix":
        return IntMatrix(self.rows, self.cols, tuple(-a for a in self.entries))

    def scale(self, k: int) -> "IntMatrix":
        return IntMatrix(self.rows, self.cols, tuple(k * a for a in self.entries))

    def select_rows(self, indices: Sequence[int]) -> "IntMatrix":
        return IntMatrix.from_rows([self.row(i) for i in indices], cols=self.cols)

    def select_columns(self, indices: Sequence[int]) -> "IntMatrix":
        return IntMatrix.from_columns([self.column(j) for j in indices], rows=self.rows)

    # -- serialization ----------------------------------------------------

    def to_json(self) -> Dict[str, Any]:
        return {"rows": self.rows, "cols": self.cols, "entries": [str(x) for x in self.entries]}

    @classmethod
    def from_json(cls, data: Dict[str, Any]) -> "IntMatrix":
        try:
            rows = int(data["rows"])
            cols = int(data["cols"])
            entries = tuple(int(x) for x in data["entries"])
        except (KeyError, TypeError) as e:
            raise ValueError(f"Malformed matrix JSON: {e}")
        return cls(rows, cols, entries)

    def __str__(self) -> str:
        if not self.rows or not self.cols:
            return f"<empty {self.rows}x{self.cols}>"
        width = max(len(str(x)) for x in self.entries)
        return "\n".join("[" + " ".join(str(x).rjust(width) for x in self.row(i)) + "]" for i in range(self.rows))


def hstack(blocks: Sequence[IntMatrix], rows: Optional[int] = None) -> IntMatrix:
    """Concatenate side by side; ``rows`` fixes the height when ``blocks`` is empty."""
    if not blocks:
        return IntMatrix.zeros(rows or 0, 0)
    height = blocks[0].rows
    if any(b.rows != height for b in blocks):
        raise ValueError("hstack: row counts differ")
    data = [[x for b in blocks for x in b.row(i)] for i in range(height)]
    return IntMatrix.from_rows(data, cols=sum(b.cols for b in blocks))


def vstack(blocks: Sequence[IntMatrix], cols: Optional[int] = None) -> IntMatrix:
    if not blocks:
        return IntMatrix.zeros(0, cols or 0)
    width = blocks[0].cols
    if any(b.cols != width for b in blocks):
        raise ValueError("vstack: column counts differ")
    return IntMatrix(sum(b.rows for b in blocks), width, tuple(x for b in blocks for x in b.entries))


def block_diag(blocks: Sequence[IntMatrix]) -> IntMatrix:
    rows = sum(b.rows for b in blocks)
    cols = sum(b.cols for b in blocks)
    data = [[0] * cols for _ in range(rows)]
    r0 = c0 = 0
    for b in blocks:
        for i in range(b.rows):
            for j in range(b.cols):
                data[r0 + i][c0 + j] = b[i, j]
        r0 += b.rows
        c0 += b.cols
    return IntMatrix.from_rows(data, cols=cols)


def kron(a: IntMatrix, b: IntMatrix) -> IntMatrix:
    """Kronecker product; row (i, k) is at index i * b.rows + k."""
    rows, cols = a.rows * b.rows, a.cols * b.cols
    data = [[0] * cols for _ in range(rows)]
    for i in range(a.rows):
        for j in range(a.cols):
            x = a[i, j]
            if not x:
                continue
            for k in range(b.rows):
                for l in range(b.cols):
                    data[i * b.rows + k][j * b.cols + l] = x * b[k, l]
    return IntMatrix.from_rows(data, cols=cols)


@dataclass(frozen=True)
class SmithDecomposition:
    """``U @ A @ V == D`` with unimodular U, V; ``u_inv``/``v_inv`` are their inverses."""

    U: IntMatrix
    V: IntMatrix
    D: IntMatrix
    u_inv: IntMatrix
    v_inv: IntMatrix
    rows: int
    cols: int

    @property
    def diagonal(self) -> Tuple[int, ...]:
        return tuple(self.D[i, i] for i in range(min(self.rows, self.cols)))

    @property
    def rank(self) -> int:
        return sum(1 for d in self.diagonal if d)

    @property
    def nonzero_diagonal(self) -> Tuple[int, ...]:
        return tuple(d for d in self.diagonal if d)


class _Reducer:
    """Mutable working state of one Smith reduction.

    Row operations on A are mirrored on U (same row op) and on U^-1 (inverse
    applied as a column op); column operations likewise on V and V^-1.
    """

    def __init__(self, a: IntMatrix):
        self.m, self.n = a.rows, a.cols
        self.a = a.to_rows()
        self.u = IntMatrix.identity(self.m).to_rows()
        self.u_inv = IntMatrix.identity(self.m).to_rows()
        self.v = IntMatrix.identity(self.n).to_rows()
        self.v_inv = IntMatrix.identity(self.n).to_rows()

    def swap_rows(self, i: int, j: int) -> None:
        if i == j:
            return
        for mat in (self.a, self.u):
            mat[i], mat[j] = mat[j], mat[i]
        for r in self.u_inv:
            r[i], r[j] = r[j], r[i]

    def swap_cols(self, i: int, j: int) -> None:
        if i == j:
            return
        for mat in (self.a, self.v):
            for r in mat:
                r[i], r[j] = r[j], r[i]
        self.v_inv[i], self.v_inv[j] = self.v_inv[j], self.v_inv[i]

    def add_row(self, target: int, source: int, c: int) -> None:
        # row_target += c * row_source
        if not c:
            return
        for mat in (self.a, self.u):
            src, dst = mat[source], mat[target]
            for k, x in enumerate(src):
                if x:
                    dst[k] += c * x
        for r in self.u_inv:
            r[source] -= c * r[target]

    def add_col(self, target: int, source: int, c: int) -> None:
        # col_target += c * col_source
        if not c:
            return
        for mat in (self.a, self.v):
            for r in mat:
                if r[source]:
                    r[target] += c * r[source]
        src, dst = self.v_inv[target], self.v_inv[source]
        for k, x in enumerate(src):
            if x:
                dst[k] -= c * x

    def negate_row(self, i: int) -> None:
        for mat in (self.a, self.u):
            mat[i] = [-x for x in mat[i]]
        for r in self.u_inv:
            r[i] = -r[i]

    def min_pivot(self, t: int) -> Optional[Tuple[int, int]]:
        best = None
        for i in range(t, self.m):
            row = self.a[i]
            for j in range(t, self.n):
                x = row[j]
                if x and (best is None or abs(x) < best[0]):
                    best = (abs(x), i, j)
        return None if best is None else (best[1], best[2])

    def min_in_cross(self, t: int) -> Tuple[int, int]:
        # smallest nonzero entry in row t or column t of the active block
        best = (abs(self.a[t][t]), t, t) if self.a[t][t] else None
        for i in range(t + 1, self.m):
            x = self.a[i][t]
            if x and (best is None or abs(x) < best[0]):
                best = (abs(x), i, t)
        for j in range(t + 1, self.n):
            x = self.a[t][j]
            if x and (best is None or abs(x) < best[0]):
                best = (abs(x), t, j)
        return best[1], best[2]

    def clear_cross(self, t: int) -> bool:
        """Reduce column t and row t against the pivot; True when both are cleared."""
        p = self.a[t][t]
        clean = True
        for i in range(t + 1, self.m):
            x = self.a[i][t]
            if x:
                self.add_row(i, t, -_nearest_quotient(x, p))
                if self.a[i][t]:
                    clean = False
        for j in range(t + 1, self.n):
            x = self.a[t][j]
            if x:
                self.add_col(j, t, -_nearest_quotient(x, p))
                if self.a[t][j]:
                    clean = False
        return clean

    def non_divisible_row(self, t: int) -> Optional[int]:
        p = self.a[t][t]
        for i in range(t + 1, self.m):
            row = self.a[i]
            for j in range(t + 1, self.n):
                if row[j] % p:
                    return i
        return None

    def run(self) -> None:
        for t in range(min(self.m, self.n)):
            pos = self.min_pivot(t)
            if pos is None:
                break
            self.swap_rows(t, pos[0])
            self.swap_cols(t, pos[1])
            while True:
                if not self.clear_cross(t):
                    i, j = self.min_in_cross(t)
                    self.swap_rows(t, i)
                    self.swap_cols(t, j)
                    continue
                bad = self.non_divisible_row(t)
                if bad is None:
                    break
                self.add_row(t, bad, 1)
            if self.a[t][t] < 0:
                self.negate_row(t)


def _nearest_quotient(x: int, p: int) -> int:
    # q with |x - q*p| <= |p|/2
    q, r = divmod(x, p)
    if 2 * abs(r) > abs(p):
        q += 1 if (r > 0) == (p > 0) else -1
    return q


def smith(a: IntMatrix) -> SmithDecomposition:
    """Smith normal form ``U A V = D`` with d_1 | d_2 | ... and zeros trailing.

    Pivots are the entries of minimal absolute value (lowest row, then lowest
    column on ties), so the output is deterministic.
    """
    logger.debug("Smith normal form of a %dx%d matrix", a.rows, a.cols)
    work = _Reducer(a)
    work.run()
    return SmithDecomposition(
        U=IntMatrix.from_rows(work.u, cols=a.rows),
        V=IntMatrix.from_rows(work.v, cols=a.cols),
        D=IntMatrix.from_rows(work.a, cols=a.cols),
        u_inv=IntMatrix.from_rows(work.u_inv, cols=a.rows),
        v_inv=IntMatrix.from_rows(work.v_inv, cols=a.cols),
        rows=a.rows,
        cols=a.cols,
    )


def rank(a: IntMatrix) -> int:
    return smith(a).rank


def kernel_basis(a: IntMatrix, decomposition: Optional[SmithDecomposition] = None) -> IntMatrix:
    """Columns form a basis of the integer kernel of ``a`` (the last columns of V)."""
    snf = decomposition or smith(a)
    return snf.V.select_columns(range(snf.rank, a.cols))


def image_basis(a: IntMatrix, decomposition: Optional[SmithDecomposition] = None) -> IntMatrix:
    """Columns form a basis of the lattice spanned by the columns of ``a``."""
    snf = decomposition or smith(a)
    d = snf.diagonal
    cols = [tuple(d[i] * x for x in snf.u_inv.column(i)) for i in range(snf.rank)]
    return IntMatrix.from_columns(cols, rows=a.rows)


def solve(a: IntMatrix, b: Sequence[int], decomposition: Optional[SmithDecomposition] = None) -> Optional[Tuple[int, ...]]:
    """An integer x with ``a @ x == b``, or None when no integer solution exists."""
    if len(b) != a.rows:
        raise ValueError(f"Right-hand side has length {len(b)}, expected {a.rows}")
    snf = decomposition or smith(a)
    c = snf.U.apply(b)
    d = snf.diagonal
    r = snf.rank
    y = [0] * a.cols
    for i in range(r):
        if c[i] % d[i]:
            return None
        y[i] = c[i] // d[i]
    if any(c[i] for i in range(r, a.rows)):
        return None
    return snf.V.apply(y)


def rank_mod_p(a: IntMatrix, p: int) -> int:
    """Rank over the field with p elements."""
    if not isprime(p):
        raise ValueError(f"rank_mod_p requires a prime modulus, got {p}")
    rows = [[x % p for x in r] for r in a.to_rows()]
    rank_ = 0
    for col in range(a.cols):
        pivot = next((i for i in range(rank_, a.rows) if rows[i][col]), None)
        if pivot is None:
            continue
        rows[rank_], rows[pivot] = rows[pivot], rows[rank_]
        inv = pow(rows[rank_][col], -1, p)
        rows[rank_] = [(x * inv) % p for x in rows[rank_]]
        for i in range(a.rows):
            if i != rank_ and rows[i][col]:
                f = rows[i][col]
                rows[i] = [(x - f * y) % p for x, y in zip(rows[i], rows[rank_])]
        rank_ += 1
    return rank_


def determinant(a: IntMatrix) -> int:
    """Exact determinant by fraction-free (Bareiss) elimination."""
    if a.rows != a.cols:
        raise ValueError(f"Determinant of a non-square {a.rows}x{a.cols} matrix")
    n = a.rows
    if n == 0:
        return 1
    m = a.to_rows()
    sign = 1
    prev = 1
    for k in range(n - 1):
        if m[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if m[i][k]), None)
            if swap is None:
                return 0
            m[k], m[swap] = m[swap], m[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
        prev = m[k][k]
    return sign * m[n - 1][n - 1]


def is_unimodular(a: IntMatrix) -> bool:
    return a.rows == a.cols and abs(determinant(a)) == 1
