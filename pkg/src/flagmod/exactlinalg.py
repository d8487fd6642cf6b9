"""Dense exact linear algebra over ``GF(r)`` and ``QQ``.

Vectors are 1-d numpy arrays (``int64`` residues for prime fields, ``object``
arrays of :class:`~fractions.Fraction` for the rationals); matrices are 2-d
arrays.  Every routine takes the field explicitly.
"""

from __future__ import annotations

import logging
from collections.abc import Callable, Iterable, Sequence

import numpy as np

log = logging.getLogger(__name__)


def as_matrix(rows, field, ncols: int | None = None) -> np.ndarray:
    """Convert a list of rows (or an array) into a field matrix.

    Raises ValueError on ragged input.
    """
    if isinstance(rows, np.ndarray):
        if rows.ndim != 2:
            raise ValueError("expected a 2-d matrix")
        return field.array(rows)
    rows = [list(r) for r in rows]
    if not rows:
        return field.zeros((0, ncols or 0))
    width = len(rows[0])
    if any(len(r) != width for r in rows):
        raise ValueError("ragged matrix: rows have different lengths")
    return field.array(rows).reshape(len(rows), width)


def is_zero(v: np.ndarray) -> bool:
    return not np.any(v)


class SubspaceBasis:
    """A subspace of ``field**ambient_dim`` held in reduced row-echelon form.

    Rows are sorted by pivot column; each row has a 1 in its pivot column and
    0 in every other row's pivot column.  :meth:`add` keeps this invariant,
    which makes reduction a single matrix-vector product.
    """

    def __init__(self, field, ambient_dim: int):
        if ambient_dim < 0:
            raise ValueError("negative ambient dimension")
        self.field = field
        self.ambient_dim = ambient_dim
        self.rows = field.zeros((0, ambient_dim))
        self.pivots: list[int] = []

    @classmethod
    def from_rows(cls, rows, field, ambient_dim: int | None = None) -> SubspaceBasis:
        mat = as_matrix(rows, field, ambient_dim)
        n = mat.shape[1] if ambient_dim is None else ambient_dim
        if mat.shape[1] != n:
            raise ValueError(f"rows have length {mat.shape[1]}, expected {n}")
        out = cls(field, n)
        for r in mat:
            out.add(r)
        return out

    def __len__(self):
        return len(self.pivots)

    @property
    def dim(self) -> int:
        return len(self.pivots)

    def __repr__(self):
        return f"SubspaceBasis(dim={self.dim}, ambient={self.ambient_dim}, field={self.field!r})"

    def copy(self) -> SubspaceBasis:
        out = SubspaceBasis(self.field, self.ambient_dim)
        out.rows = self.rows.copy()
        out.pivots = list(self.pivots)
        return out

    def _check(self, v):
        if v.shape != (self.ambient_dim,):
            raise ValueError(f"vector of shape {v.shape} in ambient dimension {self.ambient_dim}")

    def reduce(self, v: np.ndarray) -> np.ndarray:
        """Residual of ``v`` modulo the subspace (zero iff ``v`` is inside)."""
        self._check(v)
        if not self.pivots:
            return v.copy()
        return self.field.normalize(v - v[self.pivots] @ self.rows)

    def __contains__(self, v) -> bool:
        return is_zero(self.reduce(np.asarray(v)))

    def contains_space(self, other: SubspaceBasis) -> bool:
        return all(r in self for r in other.rows)

    def coordinates(self, v: np.ndarray) -> np.ndarray:
        """Coefficients of ``v`` in terms of :attr:`rows`; ``v`` must lie in the space."""
        if not is_zero(self.reduce(v)):
            raise ValueError("vector is not in the subspace")
        return v[self.pivots].copy()

    def add(self, v: np.ndarray) -> bool:
        """Insert ``v``; return True when the dimension grew."""
        r = self.reduce(v)
        nz = np.flatnonzero(r)
        if nz.size == 0:
            return False
        c = int(nz[0])
        f = self.field
        r = f.normalize(r * f.inv(r[c]))
        if self.pivots:
            col = self.rows[:, c]
            if np.any(col):
                self.rows = f.normalize(self.rows - np.outer(col, r))
        pos = int(np.searchsorted(self.pivots, c))
        self.rows = np.insert(self.rows, pos, r, axis=0)
        self.pivots.insert(pos, c)
        return True

    def __eq__(self, other):
        if not isinstance(other, SubspaceBasis):
            return NotImplemented
        return (
            self.ambient_dim == other.ambient_dim
            and self.pivots == other.pivots
            and np.array_equal(self.rows, other.rows)
        )

    def complement_pivots(self) -> list[int]:
        """Non-pivot coordinates; unit vectors there span a complement."""
        piv = set(self.pivots)
        return [c for c in range(self.ambient_dim) if c not in piv]


def rref(matrix, field) -> SubspaceBasis:
    """Canonical reduced row-echelon form of ``matrix`` (zero rows dropped)."""
    mat = as_matrix(matrix, field)
    return SubspaceBasis.from_rows(mat, field, mat.shape[1])


def rank(matrix, field) -> int:
    return rref(matrix, field).dim


def nullspace(matrix, field) -> np.ndarray:
    """Basis (as rows) of ``{x : matrix @ x = 0}``."""
    mat = as_matrix(matrix, field)
    ncols = mat.shape[1]
    ech = rref(mat, field)
    free = ech.complement_pivots()
    out = field.zeros((len(free), ncols))
    for k, c in enumerate(free):
        out[k, c] = field.one
        for row, p in zip(ech.rows, ech.pivots):
            out[k, p] = field.normalize(-row[c])
    return out


def left_nullspace(matrix, field) -> np.ndarray:
    """Basis (as rows) of ``{y : y @ matrix = 0}``."""
    return nullspace(as_matrix(matrix, field).T.copy(), field)


def subspace_sum(a: SubspaceBasis, b: SubspaceBasis) -> SubspaceBasis:
    if a.ambient_dim != b.ambient_dim:
        raise ValueError("ambient dimension mismatch")
    out = a.copy()
    for r in b.rows:
        out.add(r)
    return out


def intersect(a: SubspaceBasis, b: SubspaceBasis) -> SubspaceBasis:
    """Intersection via the kernel of ``[A; -B]``."""
    if a.ambient_dim != b.ambient_dim:
        raise ValueError("ambient dimension mismatch")
    f = a.field
    out = SubspaceBasis(f, a.ambient_dim)
    if a.dim == 0 or b.dim == 0:
        return out
    stacked = np.concatenate([a.rows, f.normalize(-b.rows)], axis=0)
    for y in left_nullspace(stacked, f):
        out.add(f.normalize(y[: a.dim] @ a.rows))
    return out


Operator = Callable[[np.ndarray], np.ndarray] | np.ndarray


def apply_operator(op: Operator, v: np.ndarray, field) -> np.ndarray:
    if isinstance(op, np.ndarray):
        return field.normalize(op @ v)
    return op(v)


def spin(
    seeds: Iterable[np.ndarray],
    operators: Sequence[Operator],
    field,
    ambient_dim: int,
    verify: bool = True,
    start: SubspaceBasis | None = None,
) -> SubspaceBasis:
    """Smallest subspace containing ``seeds`` and closed under ``operators``.

    Operators are matrices acting on column vectors or callables mapping a
    vector to a vector.  When ``start`` is given it must already be invariant;
    the result is then the closure of ``start + span(seeds)``.
    """
    space = start.copy() if start is not None else SubspaceBasis(field, ambient_dim)
    if space.ambient_dim != ambient_dim:
        raise ValueError("start space has the wrong ambient dimension")
    queue = []
    for s in seeds:
        s = np.asarray(s)
        if s.shape != (ambient_dim,):
            raise ValueError(f"seed of shape {s.shape} in ambient dimension {ambient_dim}")
        if space.add(s):
            queue.append(s)
    while queue:
        v = queue.pop()
        for op in operators:
            w = apply_operator(op, v, field)
            if w.shape != (ambient_dim,):
                raise ValueError("operator changed the ambient dimension")
            if space.add(w):
                queue.append(w)
    if verify:
        for row in space.rows:
            for op in operators:
                if apply_operator(op, row, field) not in space:
                    raise AssertionError("spin closure check failed")
    return space


def express(vectors: Sequence[np.ndarray], target: np.ndarray, field) -> np.ndarray | None:
    """Coefficients ``c`` with ``sum(c[k] * vectors[k]) == target``, or None.

    ``vectors`` must be linearly independent.
    """
    mat = as_matrix(np.array(vectors, dtype=field.dtype).reshape(len(vectors), -1), field)
    aug = np.concatenate([mat.T, target.reshape(-1, 1)], axis=1)
    ech = rref(aug, field)
    n = len(vectors)
    if n in ech.pivots:
        return None
    if ech.pivots != list(range(n)):
        raise ValueError("vectors are linearly dependent")
    return ech.rows[:, n].copy()


def max_bitsize(arr: np.ndarray) -> int:
    """Largest numerator/denominator bit length in a rational array (0 otherwise)."""
    if arr.dtype != object:
        return 0
    best = 0
    for x in arr.reshape(-1):
        best = max(best, abs(x.numerator).bit_length(), x.denominator.bit_length())
    return best


def format_matrix(mat: np.ndarray, field) -> str:
    """Plain row-major text: one row per line, entries separated by spaces."""
    return "\n".join(" ".join(field.to_str(x) for x in row) for row in mat) + "\n"


def parse_matrix(text: str, field) -> np.ndarray:
    rows = [line.split() for line in text.strip().splitlines() if line.strip()]
    return as_matrix(rows, field)
