"""Sparse exact linear algebra over the rationals.

Matrices are column-major dicts of dicts, vectors are index -> value dicts.
Values are Python ints or Fractions; zeros are never stored.  Everything here
is deterministic: echelon forms always pivot on the smallest index.
"""

from __future__ import annotations

from fractions import Fraction


class SpMat:
    """Sparse matrix; data[c][r] = value."""

    __slots__ = ("rows", "cols", "data")

    def __init__(self, rows: int, cols: int, data=None):
        self.rows = rows
        self.cols = cols
        self.data: dict[int, dict[int, object]] = data if data is not None else {}

    def set(self, r: int, c: int, v) -> None:
        if v == 0:
            col = self.data.get(c)
            if col is not None:
                col.pop(r, None)
                if not col:
                    del self.data[c]
            return
        self.data.setdefault(c, {})[r] = v

    def get(self, r: int, c: int):
        return self.data.get(c, {}).get(r, 0)

    def add_to(self, r: int, c: int, v) -> None:
        self.set(r, c, self.get(r, c) + v)

    def col(self, c: int) -> dict[int, object]:
        return self.data.get(c, {})

    def nnz(self) -> int:
        return sum(len(col) for col in self.data.values())

    def is_zero(self) -> bool:
        return not self.data

    def copy(self) -> "SpMat":
        return SpMat(self.rows, self.cols, {c: dict(col) for c, col in self.data.items()})

    def apply(self, vec: dict[int, object]) -> dict[int, object]:
        out: dict[int, object] = {}
        for c, v in vec.items():
            col = self.data.get(c)
            if col is None:
                continue
            for r, a in col.items():
                w = out.get(r, 0) + a * v
                if w == 0:
                    out.pop(r, None)
                else:
                    out[r] = w
        return out

    def __matmul__(self, other: "SpMat") -> "SpMat":
        assert self.cols == other.rows
        out = SpMat(self.rows, other.cols)
        for c, bcol in other.data.items():
            acc: dict[int, object] = {}
            for k, v in bcol.items():
                acol = self.data.get(k)
                if acol is None:
                    continue
                for r, a in acol.items():
                    w = acc.get(r, 0) + a * v
                    if w == 0:
                        acc.pop(r, None)
                    else:
                        acc[r] = w
            if acc:
                out.data[c] = acc
        return out

    def __add__(self, other: "SpMat") -> "SpMat":
        assert (self.rows, self.cols) == (other.rows, other.cols)
        out = self.copy()
        for c, col in other.data.items():
            for r, v in col.items():
                out.add_to(r, c, v)
        return out

    def __sub__(self, other: "SpMat") -> "SpMat":
        return self + other.scale(-1)

    def scale(self, a) -> "SpMat":
        if a == 0:
            return SpMat(self.rows, self.cols)
        return SpMat(
            self.rows,
            self.cols,
            {c: {r: a * v for r, v in col.items()} for c, col in self.data.items()},
        )

    def bracket(self, other: "SpMat") -> "SpMat":
        return (self @ other) - (other @ self)

    def __eq__(self, other) -> bool:
        if not isinstance(other, SpMat):
            return NotImplemented
        if (self.rows, self.cols) != (other.rows, other.cols):
            return False
        return (self - other).is_zero()

    def __hash__(self):
        raise TypeError("SpMat is not hashable")

    def entries(self):
        for c, col in self.data.items():
            for r, v in col.items():
                yield r, c, v

    def to_flat_vec(self) -> dict[int, object]:
        """Vectorize with index r * cols + c (row-major flattening)."""
        return {r * self.cols + c: v for r, c, v in self.entries()}

    @classmethod
    def from_diag(cls, values) -> "SpMat":
        vals = list(values)
        m = cls(len(vals), len(vals))
        for j, v in enumerate(vals):
            m.set(j, j, v)
        return m

    @classmethod
    def identity(cls, n: int) -> "SpMat":
        return cls.from_diag([1] * n)

    def __repr__(self):
        return f"SpMat({self.rows}x{self.cols}, nnz={self.nnz()})"


def vec_add(a: dict[int, object], b: dict[int, object], coeff=1) -> dict[int, object]:
    out = dict(a)
    for k, v in b.items():
        w = out.get(k, 0) + coeff * v
        if w == 0:
            out.pop(k, None)
        else:
            out[k] = w
    return out


def vec_scale(a: dict[int, object], c) -> dict[int, object]:
    if c == 0:
        return {}
    return {k: c * v for k, v in a.items()}


class Echelon:
    """Incremental reduced echelon basis with combination tracking.

    Vectors added successfully get consecutive ordinals; each stored row
    remembers how it is written in terms of the added originals, so any
    vector of the span can be re-expressed in the original basis exactly.
    """

    def __init__(self):
        self.pivots: dict[int, tuple[dict[int, object], dict[int, object]]] = {}
        self.count = 0

    def _reduce(self, vec, comb):
        vec = dict(vec)
        comb = dict(comb)
        while vec:
            p = min(vec)
            row = self.pivots.get(p)
            if row is None:
                return vec, comb, p
            rvec, rcomb = row
            c = vec[p]
            vec = vec_add(vec, rvec, -c)
            comb = vec_add(comb, rcomb, -c)
        return vec, comb, None

    def add(self, vec: dict[int, object]) -> int | None:
        """Insert a vector; returns its ordinal, or None if dependent."""
        ordinal = self.count
        vec, comb, p = self._reduce(vec, {ordinal: 1})
        if p is None:
            return None
        inv = Fraction(1, 1) / vec[p]
        self.pivots[p] = (vec_scale(vec, inv), vec_scale(comb, inv))
        self.count += 1
        return ordinal

    def coords(self, vec: dict[int, object]) -> dict[int, object] | None:
        """Coordinates of vec over the added originals, or None if outside."""
        out: dict[int, object] = {}
        vec = dict(vec)
        while vec:
            p = min(vec)
            row = self.pivots.get(p)
            if row is None:
                return None
            rvec, rcomb = row
            c = vec[p]
            vec = vec_add(vec, rvec, -c)
            out = vec_add(out, rcomb, c)
        return out

    def contains(self, vec: dict[int, object]) -> bool:
        return self.coords(vec) is not None

    @property
    def dim(self) -> int:
        return len(self.pivots)


def nullspace(rows, variables) -> list[dict[int, object]]:
    """Basis of the solution space of the homogeneous system.

    rows: iterable of sparse constraint rows (var -> coeff).
    variables: ordered list of variable ids appearing anywhere.
    Returns one sparse solution vector per free variable.
    """
    order = {v: j for j, v in enumerate(variables)}
    ech = Echelon()
    for row in rows:
        if row:
            ech.add({order[v]: c for v, c in row.items()})
    pivot_cols = set(ech.pivots)
    solutions = []
    for j, var in enumerate(variables):
        if j in pivot_cols:
            continue
        sol = {j: Fraction(1)}
        # back-substitute in decreasing pivot order
        for p in sorted(ech.pivots, reverse=True):
            rvec, _ = ech.pivots[p]
            s = sum((v * sol.get(k, 0) for k, v in rvec.items() if k != p), Fraction(0))
            if s != 0:
                sol[p] = -s
        solutions.append({variables[k]: v for k, v in sol.items() if v != 0})
    return solutions
