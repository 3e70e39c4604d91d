"""Dense exact linear maps between tensor products of based spaces.

A map is stored as a matrix over the row-major flattening of its ordered
tensor factors.  Composition, Kronecker product, the symmetric swap and
idempotent splitting are the only primitives; every structural condition
checked elsewhere in the package reduces to exact equality of such maps.

Conventions, fixed package-wide:
  * basis index of e_{i1} (x) ... (x) e_{ik} is the row-major flattening;
  * ``f @ g`` is the composite "g first, then f" (ordinary matrix product);
  * an empty factor list is the base object K of dimension 1, so maps
    from or into K are column or row vectors.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import reduce

from .fields import FieldSpec, Scalar


class ShapeMismatchError(ValueError):
    """Composite or comparison applied to maps whose shapes do not fit."""


class NotIdempotentError(ValueError):
    """split_idempotent applied to a map e with e @ e != e."""


@dataclass(frozen=True)
class ObjectShape:
    """Ordered tensor factors of a based space; () is the base object K."""

    factors: tuple[int, ...] = ()

    def __post_init__(self) -> None:
        if any(not isinstance(d, int) or d < 1 for d in self.factors):
            raise ShapeMismatchError(f"factor dimensions must be positive: {self.factors}")

    @property
    def total(self) -> int:
        n = 1
        for d in self.factors:
            n *= d
        return n

    def flatten(self, multi: tuple[int, ...]) -> int:
        if len(multi) != len(self.factors):
            raise ShapeMismatchError(f"index {multi} does not match shape {self}")
        flat = 0
        for i, d in zip(multi, self.factors):
            if not 0 <= i < d:
                raise ShapeMismatchError(f"index {multi} out of range for shape {self}")
            flat = flat * d + i
        return flat

    def unflatten(self, flat: int) -> tuple[int, ...]:
        if not 0 <= flat < self.total:
            raise ShapeMismatchError(f"flat index {flat} out of range for shape {self}")
        multi = []
        for d in reversed(self.factors):
            multi.append(flat % d)
            flat //= d
        return tuple(reversed(multi))

    def tensor(self, other: "ObjectShape") -> "ObjectShape":
        return ObjectShape(self.factors + other.factors)

    def __str__(self) -> str:
        if not self.factors:
            return "K"
        return "⊗".join(str(d) for d in self.factors)


UNIT_SHAPE = ObjectShape(())


def shape(*dims: int) -> ObjectShape:
    return ObjectShape(tuple(dims))


@dataclass(frozen=True)
class LinMap:
    """An exact linear map: target.total x source.total matrix of scalars."""

    field: FieldSpec
    source: ObjectShape
    target: ObjectShape
    entries: tuple[tuple[Scalar, ...], ...]

    def __post_init__(self) -> None:
        if len(self.entries) != self.target.total:
            raise ShapeMismatchError(
                f"{len(self.entries)} rows for target {self.target} of size {self.target.total}")
        for row in self.entries:
            if len(row) != self.source.total:
                raise ShapeMismatchError(
                    f"{len(row)} columns for source {self.source} of size {self.source.total}")

    @classmethod
    def from_rows(cls, field: FieldSpec, source: ObjectShape, target: ObjectShape, rows) -> "LinMap":
        entries = tuple(tuple(field.coerce(x) for x in row) for row in rows)
        return cls(field, source, target, entries)

    @classmethod
    def from_dict(cls, field: FieldSpec, source: ObjectShape, target: ObjectShape, values) -> "LinMap":
        """Build from a sparse {(row, col): scalar} dict; absent entries are zero."""
        zero = field.zero()
        rows = [[zero] * source.total for _ in range(target.total)]
        for (r, c), v in values.items():
            rows[r][c] = field.coerce(v)
        return cls(field, source, target, tuple(tuple(row) for row in rows))

    def at(self, row: int, col: int) -> Scalar:
        return self.entries[row][col]

    def column(self, col: int) -> tuple[Scalar, ...]:
        return tuple(row[col] for row in self.entries)

    def __matmul__(self, other: "LinMap") -> "LinMap":
        return compose(self, other)

    def tensor(self, *others: "LinMap") -> "LinMap":
        return tensor(self, *others)

    def __add__(self, other: "LinMap") -> "LinMap":
        if self.source.total != other.source.total or self.target.total != other.target.total:
            raise ShapeMismatchError(f"cannot add maps {self.source}->{self.target} "
                                     f"and {other.source}->{other.target}")
        entries = tuple(tuple(a + b for a, b in zip(r1, r2))
                        for r1, r2 in zip(self.entries, other.entries))
        return LinMap(self.field, self.source, self.target, entries)

    def __sub__(self, other: "LinMap") -> "LinMap":
        return self + other.scale(self.field.coerce(-1))

    def scale(self, scalar) -> "LinMap":
        s = self.field.coerce(scalar)
        entries = tuple(tuple(s * x for x in row) for row in self.entries)
        return LinMap(self.field, self.source, self.target, entries)

    def is_zero(self) -> bool:
        return all(not x for row in self.entries for x in row)

    def __str__(self) -> str:
        return f"LinMap {self.source} -> {self.target} over {self.field}"


def identity(field: FieldSpec, shape_or_dim) -> LinMap:
    sh = shape_or_dim if isinstance(shape_or_dim, ObjectShape) else ObjectShape((shape_or_dim,))
    one, zero = field.one(), field.zero()
    n = sh.total
    entries = tuple(tuple(one if r == c else zero for c in range(n)) for r in range(n))
    return LinMap(field, sh, sh, entries)


def zero_map(field: FieldSpec, source: ObjectShape, target: ObjectShape) -> LinMap:
    zero = field.zero()
    entries = tuple(tuple(zero for _ in range(source.total)) for _ in range(target.total))
    return LinMap(field, source, target, entries)


def compose(f: LinMap, g: LinMap) -> LinMap:
    """The composite f after g (g applied first)."""
    if g.target.total != f.source.total:
        raise ShapeMismatchError(
            f"cannot compose: g has target {g.target} (size {g.target.total}) "
            f"but f has source {f.source} (size {f.source.total})")
    zero = f.field.zero()
    g_rows = g.entries
    out = []
    for frow in f.entries:
        acc = [zero] * g.source.total
        for j, fj in enumerate(frow):
            if not fj:
                continue
            grow = g_rows[j]
            for c, gc in enumerate(grow):
                if gc:
                    acc[c] = acc[c] + fj * gc
        out.append(tuple(acc))
    return LinMap(f.field, g.source, f.target, tuple(out))


def tensor(*maps: LinMap) -> LinMap:
    """Kronecker product of maps, consistent with row-major flattening."""

    def _pair(f: LinMap, g: LinMap) -> LinMap:
        zeros = [f.field.zero()] * g.source.total
        out = []
        for frow in f.entries:
            for grow in g.entries:
                row = []
                for fv in frow:
                    if fv:
                        row.extend(fv * gv for gv in grow)
                    else:
                        row.extend(zeros)
                out.append(tuple(row))
        return LinMap(f.field, f.source.tensor(g.source), f.target.tensor(g.target), tuple(out))

    return reduce(_pair, maps)


def braiding(field: FieldSpec, m: int, n: int) -> LinMap:
    """The symmetric swap of an m-dimensional with an n-dimensional factor."""
    values = {}
    one = field.one()
    for i in range(m):
        for j in range(n):
            values[(j * m + i, i * n + j)] = one
    return LinMap.from_dict(field, shape(m, n), shape(n, m), values)


@dataclass(frozen=True)
class Difference:
    """First position (row-major scan) at which two maps disagree."""

    row: int
    col: int
    left: Scalar
    right: Scalar


def equals(f: LinMap, g: LinMap) -> bool:
    """Exact equality: matching source/target sizes and identical entries.

    Factor bookkeeping is ignored: the base object is a strict unit, so a
    map out of 2 (x) 1 and a map out of 2 compare equal when their matrices do.
    """
    if f.source.total != g.source.total or f.target.total != g.target.total:
        return False
    return f.entries == g.entries


def first_difference(f: LinMap, g: LinMap) -> Difference | None:
    if f.source.total != g.source.total or f.target.total != g.target.total:
        raise ShapeMismatchError(
            f"cannot compare {f.source}->{f.target} with {g.source}->{g.target}")
    for r, (row_f, row_g) in enumerate(zip(f.entries, g.entries)):
        for c, (a, b) in enumerate(zip(row_f, row_g)):
            if a != b:
                return Difference(r, c, a, b)
    return None


def set_entry(m: LinMap, row: int, col: int, value) -> LinMap:
    """Copy of m with one entry replaced (mutation helper for fixtures)."""
    v = m.field.coerce(value)
    entries = tuple(
        tuple(v if (r == row and c == col) else x for c, x in enumerate(rw))
        for r, rw in enumerate(m.entries))
    return LinMap(m.field, m.source, m.target, entries)


def set_column(m: LinMap, col: int, values: dict[int, object]) -> LinMap:
    """Copy of m with one column replaced by the given sparse vector."""
    zero = m.field.zero()
    entries = tuple(
        tuple(m.field.coerce(values.get(r, zero)) if c == col else x
              for c, x in enumerate(rw))
        for r, rw in enumerate(m.entries))
    return LinMap(m.field, m.source, m.target, entries)


def _rref(rows: list[list[Scalar]], field: FieldSpec) -> tuple[list[list[Scalar]], list[int]]:
    """Reduced row echelon form, leftmost pivots, leading entries 1."""
    rows = [list(r) for r in rows]
    n_rows = len(rows)
    n_cols = len(rows[0]) if rows else 0
    pivots: list[int] = []
    r = 0
    for c in range(n_cols):
        pivot_row = next((i for i in range(r, n_rows) if rows[i][c]), None)
        if pivot_row is None:
            continue
        rows[r], rows[pivot_row] = rows[pivot_row], rows[r]
        inv = field.one() / rows[r][c]
        rows[r] = [inv * x for x in rows[r]]
        for i in range(n_rows):
            if i != r and rows[i][c]:
                factor = rows[i][c]
                rows[i] = [x - factor * y for x, y in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
        if r == n_rows:
            break
    return rows, pivots


def rank(m: LinMap) -> int:
    if m.source.total == 0 or m.target.total == 0:
        return 0
    _, pivots = _rref([list(r) for r in m.entries], m.field)
    return len(pivots)


@dataclass(frozen=True)
class Splitting:
    """A factorization e = injection @ projection with projection @ injection = id."""

    mid: ObjectShape
    injection: LinMap
    projection: LinMap


def split_idempotent(e: LinMap) -> Splitting:
    """Split an idempotent through its image.

    The injection's columns are the reduced column echelon basis of the
    column space of e (leftmost pivots, leading entries 1); the projection
    is the unique left inverse with injection @ projection = e.
    """
    if e.source.total != e.target.total:
        raise ShapeMismatchError(f"idempotent must be square, got {e.source} -> {e.target}")
    square = e @ e
    diff = first_difference(square, e)
    if diff is not None:
        raise NotIdempotentError(
            f"map is not idempotent: e@e and e differ on basis vector "
            f"{e.source.unflatten(diff.col)} at output {e.target.unflatten(diff.row)} "
            f"({diff.left} vs {diff.right})")
    n = e.target.total
    # reduced column echelon of e = transposed rref of e^T
    transposed = [[e.entries[r][c] for r in range(n)] for c in range(n)]
    reduced, pivot_rows = _rref(transposed, e.field)
    r = len(pivot_rows)
    if r == 0:
        raise NotIdempotentError("cannot split the zero idempotent: the image is the zero space")
    mid = ObjectShape((r,))
    inj_entries = tuple(tuple(reduced[k][row] for k in range(r)) for row in range(n))
    injection = LinMap(e.field, mid, e.target, inj_entries)
    proj_entries = tuple(e.entries[pr] for pr in pivot_rows)
    projection = LinMap(e.field, e.source, mid, proj_entries)
    if not equals(projection @ injection, identity(e.field, mid)):
        raise NotIdempotentError("internal error: projection @ injection != id")
    if not equals(injection @ projection, e):
        raise NotIdempotentError("internal error: injection @ projection != e")
    return Splitting(mid, injection, projection)
