"""Grade domains, relations, min-grade matrices and pseudometrics.

A monotone graded relation ``{A_n}`` over a finite carrier is stored as a
:class:`MinGradeMatrix`: entry ``(i, j)`` is the least grade ``n`` with
``(i, j) in A_n``, or :data:`INF` if the pair is never related.  Bigger
families therefore have pointwise smaller entries.

All arithmetic is exact: natural grades are Python ints, rational grades are
:class:`fractions.Fraction`, and infinity is the singleton :data:`INF`.
"""

from __future__ import annotations

import enum
from fractions import Fraction
from typing import Iterable, Sequence, Union

import numpy as np

from .errors import DomainError, ShapeError


class Infinity:
    """The top grade.  Absorbs addition and compares above every number."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "INF"

    def __str__(self):
        return "inf"

    def __reduce__(self):
        return (Infinity, ())

    def __hash__(self):
        return hash("gradedsim.INF")

    def __eq__(self, other):
        return other is self

    def __lt__(self, other):
        return False

    def __le__(self, other):
        return other is self

    def __gt__(self, other):
        return other is not self

    def __ge__(self, other):
        return True

    def __add__(self, other):
        return self

    __radd__ = __add__

    def __sub__(self, other):
        if other is self:
            raise ArithmeticError("inf - inf is undefined")
        return self


INF = Infinity()

Grade = Union[int, Fraction, Infinity]


def is_finite(g) -> bool:
    return g is not INF


class GradeDomain(enum.Enum):
    """The three grading monoids in scope."""

    NAT = "nat"
    RATIONAL = "rational"
    UNIT = "unit"

    @property
    def zero(self):
        return 0 if self is GradeDomain.NAT else Fraction(0)

    def add(self, a, b):
        """Monoid addition; truncated at 1 on the unit interval."""
        if a is INF or b is INF:
            return INF
        s = a + b
        if self is GradeDomain.UNIT and s > 1:
            return Fraction(1)
        return s

    def contains(self, g) -> bool:
        """True if ``g`` is a finite grade of this domain."""
        if g is INF or isinstance(g, bool):
            return False
        if self is GradeDomain.NAT:
            return isinstance(g, int) and g >= 0
        if not isinstance(g, (int, Fraction)) or g < 0:
            return False
        return self is GradeDomain.RATIONAL or g <= 1

    def coerce(self, g):
        """Validate ``g`` (finite or INF) and return its canonical form."""
        if g is INF:
            return INF
        if not self.contains(g):
            raise DomainError(f"{g!r} is not a grade of domain {self.value!r}")
        return g if self is GradeDomain.NAT else Fraction(g)

    def check_finite(self, g):
        if g is INF:
            raise DomainError("slice grade must be finite")
        return self.coerce(g)


class Relation:
    """A binary relation on ``{0, ..., size-1}`` as a read-only bool matrix."""

    __slots__ = ("bits",)

    def __init__(self, bits):
        arr = np.array(bits, dtype=bool)
        if arr.ndim != 2 or arr.shape[0] != arr.shape[1] or arr.shape[0] < 1:
            raise ShapeError(f"relation matrix must be square and non-empty, got {arr.shape}")
        arr.setflags(write=False)
        self.bits = arr

    @classmethod
    def empty(cls, n: int) -> Relation:
        return cls(np.zeros((n, n), dtype=bool))

    @classmethod
    def full(cls, n: int) -> Relation:
        return cls(np.ones((n, n), dtype=bool))

    @classmethod
    def identity(cls, n: int) -> Relation:
        return cls(np.eye(n, dtype=bool))

    @classmethod
    def from_pairs(cls, n: int, pairs: Iterable[tuple[int, int]]) -> Relation:
        bits = np.zeros((n, n), dtype=bool)
        for i, j in pairs:
            if not (0 <= i < n and 0 <= j < n):
                raise ShapeError(f"pair ({i}, {j}) outside carrier of size {n}")
            bits[i, j] = True
        return cls(bits)

    @property
    def size(self) -> int:
        return self.bits.shape[0]

    def __contains__(self, pair) -> bool:
        i, j = pair
        if not (0 <= i < self.size and 0 <= j < self.size):
            raise ShapeError(f"pair ({i}, {j}) outside carrier of size {self.size}")
        return bool(self.bits[i, j])

    def pairs(self) -> list[tuple[int, int]]:
        return [(int(i), int(j)) for i, j in zip(*np.nonzero(self.bits))]

    def image(self, subset: Iterable[int]) -> frozenset[int]:
        """``R(X) = {y | exists x in X, (x, y) in R}``."""
        idx = list(subset)
        if not idx:
            return frozenset()
        return frozenset(int(j) for j in np.nonzero(self.bits[idx].any(axis=0))[0])

    def converse(self) -> Relation:
        return Relation(self.bits.T)

    def __and__(self, other: Relation) -> Relation:
        _same_carrier(self, other)
        return Relation(self.bits & other.bits)

    def __or__(self, other: Relation) -> Relation:
        _same_carrier(self, other)
        return Relation(self.bits | other.bits)

    def __le__(self, other: Relation) -> bool:
        _same_carrier(self, other)
        return not bool((self.bits & ~other.bits).any())

    def __eq__(self, other):
        if not isinstance(other, Relation):
            return NotImplemented
        return self.bits.shape == other.bits.shape and bool((self.bits == other.bits).all())

    def __hash__(self):
        return hash((self.size, self.bits.tobytes()))

    def __len__(self):
        return int(self.bits.sum())

    def __repr__(self):
        return f"Relation({self.size}, {self.pairs()})"


def _same_carrier(r: Relation, q: Relation):
    if r.size != q.size:
        raise ShapeError(f"carrier mismatch: {r.size} vs {q.size}")


class MinGradeMatrix:
    """Minimal-grade representation of a monotone graded relation."""

    __slots__ = ("domain", "entries")

    def __init__(self, entries: Sequence[Sequence], domain: GradeDomain = GradeDomain.NAT):
        rows = tuple(tuple(domain.coerce(g) for g in row) for row in entries)
        n = len(rows)
        if n < 1 or any(len(row) != n for row in rows):
            raise ShapeError("grade matrix must be square and non-empty")
        self.domain = domain
        self.entries = rows

    @classmethod
    def _trusted(cls, rows, domain):
        # Skips coercion; callers guarantee canonical entries.
        obj = cls.__new__(cls)
        obj.domain = domain
        obj.entries = tuple(tuple(row) for row in rows)
        return obj

    @classmethod
    def constant(cls, n: int, value, domain: GradeDomain = GradeDomain.NAT) -> MinGradeMatrix:
        return cls([[value] * n for _ in range(n)], domain)

    @classmethod
    def zeros(cls, n: int, domain: GradeDomain = GradeDomain.NAT) -> MinGradeMatrix:
        return cls.constant(n, domain.zero, domain)

    @classmethod
    def diagonal(cls, n: int, domain: GradeDomain = GradeDomain.NAT) -> MinGradeMatrix:
        """Zero on the diagonal, INF elsewhere: the identity family."""
        return cls([[domain.zero if i == j else INF for j in range(n)] for i in range(n)], domain)

    @property
    def size(self) -> int:
        return len(self.entries)

    def __getitem__(self, pair):
        i, j = pair
        return self.entries[i][j]

    def finite_values(self) -> list:
        return sorted({g for row in self.entries for g in row if g is not INF})

    def __eq__(self, other):
        if not isinstance(other, MinGradeMatrix):
            return NotImplemented
        return self.domain is other.domain and self.entries == other.entries

    def __hash__(self):
        return hash((self.domain, self.entries))

    def __le__(self, other: MinGradeMatrix) -> bool:
        """Pointwise order on grades (note: reversed w.r.t. family inclusion)."""
        _same_matrix_shape(self, other)
        return all(a <= b for ra, rb in zip(self.entries, other.entries) for a, b in zip(ra, rb))

    def __repr__(self):
        body = "; ".join(" ".join(str(g) for g in row) for row in self.entries)
        return f"MinGradeMatrix[{self.domain.value}]({body})"


def _same_matrix_shape(m: MinGradeMatrix, k: MinGradeMatrix):
    if m.size != k.size:
        raise ShapeError(f"carrier mismatch: {m.size} vs {k.size}")
    if m.domain is not k.domain:
        raise ShapeError(f"domain mismatch: {m.domain.value} vs {k.domain.value}")


class Pseudometric:
    """A 1-bounded pseudometric with exact rational distances."""

    __slots__ = ("d",)

    def __init__(self, d: Sequence[Sequence], check: bool = True):
        rows = tuple(tuple(Fraction(x) for x in row) for row in d)
        n = len(rows)
        if n < 1 or any(len(row) != n for row in rows):
            raise ShapeError("distance matrix must be square and non-empty")
        self.d = rows
        if check:
            problem = pseudometric_violation(rows)
            if problem:
                raise DomainError(problem)

    @classmethod
    def zero(cls, n: int) -> Pseudometric:
        return cls([[0] * n for _ in range(n)])

    @classmethod
    def discrete(cls, n: int) -> Pseudometric:
        return cls([[0 if i == j else 1 for j in range(n)] for i in range(n)])

    @property
    def size(self) -> int:
        return len(self.d)

    def __getitem__(self, pair) -> Fraction:
        i, j = pair
        return self.d[i][j]

    def __eq__(self, other):
        if not isinstance(other, Pseudometric):
            return NotImplemented
        return self.d == other.d

    def __hash__(self):
        return hash(self.d)

    def __repr__(self):
        body = "; ".join(" ".join(str(x) for x in row) for row in self.d)
        return f"Pseudometric({body})"


def pseudometric_violation(d) -> str | None:
    """Name the first violated pseudometric axiom, or None."""
    n = len(d)
    for i in range(n):
        for j in range(n):
            if not 0 <= d[i][j] <= 1:
                return f"distance d({i},{j}) = {d[i][j]} outside [0, 1]"
    for i in range(n):
        if d[i][i] != 0:
            return f"reflexivity: d({i},{i}) = {d[i][i]} != 0"
    for i in range(n):
        for j in range(i + 1, n):
            if d[i][j] != d[j][i]:
                return f"symmetry: d({i},{j}) != d({j},{i})"
    for x in range(n):
        for y in range(n):
            dxy = d[x][y]
            for z in range(n):
                if d[x][z] > dxy + d[y][z]:
                    return f"triangle inequality fails at ({x},{y},{z})"
    return None


def slice(m: MinGradeMatrix, n) -> Relation:
    """The component ``A_n`` of the family encoded by ``m``."""
    n = m.domain.check_finite(n)
    return Relation([[g is not INF and g <= n for g in row] for row in m.entries])


def collapse(m: MinGradeMatrix) -> Relation:
    """Union of all components: the pairs with a finite minimal grade."""
    return Relation([[g is not INF for g in row] for row in m.entries])


def lax_monoidal_closure(m: MinGradeMatrix) -> MinGradeMatrix:
    """Smallest lax monoidal family containing ``m``.

    Min-plus all-pairs shortest paths seeded with ``min(m, zero diagonal)``;
    the result has zero diagonal and satisfies the graded triangle
    inequality ``M(x, z) <= M(x, y) + M(y, z)``.
    """
    n, add = m.size, m.domain.add
    dist = [list(row) for row in m.entries]
    for i in range(n):
        dist[i][i] = m.domain.zero
    for k in range(n):
        dk = dist[k]
        for i in range(n):
            dik = dist[i][k]
            if dik is INF:
                continue
            di = dist[i]
            for j in range(n):
                via = add(dik, dk[j])
                if via < di[j]:
                    di[j] = via
    return MinGradeMatrix._trusted(dist, m.domain)


def is_lax_monoidal(m: MinGradeMatrix) -> bool:
    return lax_monoidal_closure(m) == m


def compose(r: Relation, q: Relation) -> Relation:
    """Relational composition ``{(x, y) | exists z. (x, z) in r, (z, y) in q}``."""
    _same_carrier(r, q)
    return Relation((r.bits.astype(np.int64) @ q.bits.astype(np.int64)) > 0)


def from_family(pairs: Iterable[tuple], domain: GradeDomain = GradeDomain.NAT) -> MinGradeMatrix:
    """Monotone envelope of a finite family of ``(grade, Relation)`` pairs."""
    pairs = list(pairs)
    if not pairs:
        raise ShapeError("from_family needs at least one (grade, relation) pair")
    n = pairs[0][1].size
    entries = [[INF] * n for _ in range(n)]
    for grade, rel in pairs:
        if rel.size != n:
            raise ShapeError(f"carrier mismatch: {rel.size} vs {n}")
        try:
            grade = domain.check_finite(grade)
        except DomainError as exc:
            raise ShapeError(f"grade {grade!r} not in domain {domain.value!r}") from exc
        for i, j in rel.pairs():
            if grade < entries[i][j]:
                entries[i][j] = grade
    return MinGradeMatrix._trusted(entries, domain)
