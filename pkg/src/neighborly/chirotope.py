"""Chirotopes of vector configurations and the oriented-matroid operations on them.

A :class:`Chirotope` of rank ``r`` stores one sign per sorted ``r``-subset of its
ground set, enumerated in lexicographic order.  Elements carry integer labels
that survive deletion and contraction, so constructions can keep referring to
an element by the label it was born with.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property, lru_cache
from itertools import combinations
from math import comb
from typing import Iterable, Sequence

from . import kernels
from .errors import (
    BudgetExceededError,
    DegenerateConfigurationError,
    DimensionError,
    LoopContractionError,
    ParseError,
    RankDeficiencyError,
)
from .linalg import Matrix, format_scalar, integer_row, nullspace_basis, parse_scalar, rank, scalar

SIGN_CHARS = {1: "+", -1: "-", 0: "0"}
CHAR_SIGNS = {"+": 1, "-": -1, "0": 0}

#: Default bound on C(n, r) * n**2 for the Grassmann-Plucker scan.
GP_BUDGET = 10**7


@lru_cache(maxsize=None)
def subset_index(n: int, r: int) -> dict[tuple[int, ...], int]:
    """Map each sorted r-subset of ``range(n)`` to its lexicographic rank."""
    return {s: i for i, s in enumerate(combinations(range(n), r))}


def sort_sign(seq: Sequence) -> int:
    """Sign of the permutation sorting ``seq``; 0 if it has a repeat."""
    n = len(seq)
    if len(set(seq)) < n:
        return 0
    inversions = 0
    for i in range(n):
        a = seq[i]
        for j in range(i + 1, n):
            if a > seq[j]:
                inversions += 1
    return -1 if inversions & 1 else 1


@dataclass(frozen=True)
class VectorConfiguration:
    """Labeled exact-rational vectors, all of the same length."""

    vectors: tuple[tuple[Fraction, ...], ...]
    labels: tuple[int, ...] = ()

    def __post_init__(self):
        vecs = tuple(tuple(scalar(x) for x in v) for v in self.vectors)
        if vecs and any(len(v) != len(vecs[0]) for v in vecs):
            raise DimensionError("vectors of a configuration must share one length")
        labels = tuple(self.labels) or tuple(range(1, len(vecs) + 1))
        if len(labels) != len(vecs):
            raise DimensionError("one label per vector required")
        if len(set(labels)) != len(labels):
            raise DimensionError("labels must be distinct")
        object.__setattr__(self, "vectors", vecs)
        object.__setattr__(self, "labels", labels)

    @property
    def n(self) -> int:
        return len(self.vectors)

    @property
    def dim(self) -> int:
        return len(self.vectors[0]) if self.vectors else 0

    def rank(self) -> int:
        return rank(Matrix(self.vectors, cols=self.dim))

    def vector(self, label: int) -> tuple[Fraction, ...]:
        return self.vectors[self.labels.index(label)]

    def with_vector(self, vec: Sequence, label: int | None = None) -> "VectorConfiguration":
        if label is None:
            label = max(self.labels, default=0) + 1
        return VectorConfiguration(self.vectors + (tuple(vec),), self.labels + (label,))

    def matrix(self) -> Matrix:
        return Matrix(self.vectors, cols=self.dim)

    def to_text(self) -> str:
        lines = [f"{self.n} {self.dim}"]
        lines += [" ".join(format_scalar(x) for x in v) for v in self.vectors]
        return "\n".join(lines) + "\n"

    @classmethod
    def from_text(cls, text: str) -> "VectorConfiguration":
        lines = text.splitlines()
        if not lines or not lines[0].strip():
            raise ParseError("missing header 'n r'", line=1)
        head = lines[0].split()
        try:
            n, r = (int(x) for x in head)
        except ValueError:
            raise ParseError(f"header must be two integers 'n r', got {lines[0]!r}", line=1) from None
        body = lines[1:]
        while body and not body[-1].strip():
            body.pop()
        if len(body) != n:
            raise ParseError(f"expected {n} vector lines, found {len(body)}", line=len(body) + 2)
        vecs = []
        for i, line in enumerate(body, start=2):
            parts = line.split(" ")
            if len(parts) != r:
                raise ParseError(f"expected {r} entries, found {len(parts)}", line=i)
            try:
                vecs.append(tuple(parse_scalar(p) for p in parts))
            except ParseError as exc:
                raise ParseError(str(exc), line=i) from None
        return cls(tuple(vecs))


def gale_dual_configuration(v: VectorConfiguration) -> VectorConfiguration:
    """The Gale transform: element i maps to the i-th coordinates of a kernel basis."""
    basis = nullspace_basis(v.matrix().transpose())
    vecs = tuple(tuple(basis.row(j)[i] for j in range(basis.rows)) for i in range(v.n))
    return VectorConfiguration(vecs, v.labels)


@dataclass(frozen=True)
class SignVector:
    """Signs in {-1, 0, +1} indexed by ground-set labels."""

    labels: tuple[int, ...]
    signs: tuple[int, ...]

    def __getitem__(self, label: int) -> int:
        return self.signs[self.labels.index(label)]

    def __neg__(self) -> "SignVector":
        return SignVector(self.labels, tuple(-s for s in self.signs))

    def zero_set(self) -> frozenset[int]:
        return frozenset(l for l, s in zip(self.labels, self.signs) if s == 0)

    def positive(self) -> frozenset[int]:
        return frozenset(l for l, s in zip(self.labels, self.signs) if s > 0)

    def negative(self) -> frozenset[int]:
        return frozenset(l for l, s in zip(self.labels, self.signs) if s < 0)

    def is_nonnegative(self) -> bool:
        return all(s >= 0 for s in self.signs)

    def __str__(self):
        return "".join(SIGN_CHARS[s] for s in self.signs)


@dataclass(frozen=True)
class Chirotope:
    """Rank-``rank`` sign map on the sorted ``rank``-subsets of ``labels``.

    ``history`` records the minors taken to reach this chirotope, e.g.
    ``("delete 7", "contract 2")``; it is an audit trail and does not take part
    in equality.
    """

    rank: int
    labels: tuple[int, ...]
    signs: tuple[int, ...]
    history: tuple[str, ...] = field(default=(), compare=False)

    def __post_init__(self):
        n = len(self.labels)
        if len(self.signs) != comb(n, self.rank):
            raise DimensionError(f"rank {self.rank} on {n} elements needs {comb(n, self.rank)} signs")
        if not any(self.signs):
            raise DegenerateConfigurationError("chirotope is identically zero")
        if list(self.labels) != sorted(self.labels) or len(set(self.labels)) != n:
            raise DimensionError("labels must be strictly increasing")

    @property
    def n(self) -> int:
        return len(self.labels)

    @cached_property
    def _positions(self) -> dict[int, int]:
        return {l: i for i, l in enumerate(self.labels)}

    def bases(self):
        """Pairs (label tuple, sign) in lexicographic order."""
        for idx, s in zip(combinations(range(self.n), self.rank), self.signs):
            yield tuple(self.labels[i] for i in idx), s

    def sign_of(self, labels: Iterable[int]) -> int:
        """chi of an ordered tuple of labels, extended by alternation."""
        seq = tuple(labels)
        if len(seq) != self.rank:
            raise DimensionError(f"need {self.rank} labels, got {len(seq)}")
        pos = self._positions
        try:
            idx = [pos[l] for l in seq]
        except KeyError as exc:
            raise KeyError(f"label {exc.args[0]} not in ground set") from None
        parity = sort_sign(idx)
        if parity == 0:
            return 0
        return parity * self.signs[subset_index(self.n, self.rank)[tuple(sorted(idx))]]

    def __neg__(self) -> "Chirotope":
        return Chirotope(self.rank, self.labels, tuple(-s for s in self.signs), self.history)

    def sign_string(self) -> str:
        return "".join(SIGN_CHARS[s] for s in self.signs)

    def to_text(self) -> str:
        return f"{self.rank} {self.n}\n{self.sign_string()}\n"

    @classmethod
    def from_text(cls, text: str, labels: Sequence[int] | None = None) -> "Chirotope":
        lines = [l for l in text.splitlines()]
        if not lines:
            raise ParseError("missing header 'r n'", line=1)
        try:
            r, n = (int(x) for x in lines[0].split())
        except ValueError:
            raise ParseError(f"header must be two integers 'r n', got {lines[0]!r}", line=1) from None
        if len(lines) < 2:
            raise ParseError("missing sign string", line=2)
        body = lines[1].strip()
        if any(ch not in CHAR_SIGNS for ch in body):
            bad = next(ch for ch in body if ch not in CHAR_SIGNS)
            raise ParseError(f"invalid sign character {bad!r}", line=2)
        if len(body) != comb(n, r):
            raise ParseError(f"expected {comb(n, r)} signs for rank {r} on {n}, found {len(body)}", line=2)
        if any(l.strip() for l in lines[2:]):
            raise ParseError("unexpected trailing content", line=3)
        labels = tuple(labels) if labels is not None else tuple(range(1, n + 1))
        try:
            return cls(r, labels, tuple(CHAR_SIGNS[ch] for ch in body))
        except DegenerateConfigurationError as exc:
            raise ParseError(str(exc), line=2) from None

    @classmethod
    def from_string(cls, rank: int, signs: str, labels: Sequence[int] | None = None) -> "Chirotope":
        n = _ground_size(rank, len(signs)) if labels is None else len(labels)
        labels = tuple(labels) if labels is not None else tuple(range(1, n + 1))
        return cls(rank, labels, tuple(CHAR_SIGNS[ch] for ch in signs))


def _ground_size(r: int, count: int) -> int:
    n = r
    while comb(n, r) < count:
        n += 1
    if comb(n, r) != count:
        raise DimensionError(f"{count} signs do not fit rank {r}")
    return n


def chirotope_from_configuration(v: VectorConfiguration) -> Chirotope:
    """Signs of all basis determinants of ``v``, rows taken in ascending label order."""
    r = v.dim
    if v.n < r or v.rank() < r:
        raise DegenerateConfigurationError(f"configuration has rank {v.rank()} < {r}")
    order = sorted(range(v.n), key=lambda i: v.labels[i])
    # positive row scaling does not change determinant signs
    rows = [integer_row(v.vectors[i]) for i in order]
    signs = kernels.basis_signs(rows, r)
    return Chirotope(r, tuple(v.labels[i] for i in order), tuple(signs))


def canonicalize(c: Chirotope) -> Chirotope:
    """Representative of ``{c, -c}`` whose first nonzero sign is ``+``."""
    first = next(s for s in c.signs if s)
    return c if first > 0 else -c


def same_oriented_matroid(a: Chirotope, b: Chirotope) -> bool:
    return a.rank == b.rank and a.labels == b.labels and canonicalize(a).signs == canonicalize(b).signs


def is_uniform(c: Chirotope) -> bool:
    return all(c.signs)


def check_gp_relations(c: Chirotope, budget: int = GP_BUDGET) -> bool:
    """Three-term Grassmann-Plucker test.

    For every (r-2)-subset S and a<b<c<d outside S the three products
    chi(Sab)chi(Scd), -chi(Sac)chi(Sbd), chi(Sad)chi(Sbc) must either all
    vanish or contain both signs.
    """
    return gp_violation(c, budget) is None


def gp_violation(c: Chirotope, budget: int = GP_BUDGET):
    """First violating ``(S, (a, b, c, d))`` of the three-term relation, or None."""
    n, r = c.n, c.rank
    cost = comb(n, r) * n * n
    if cost > budget:
        raise BudgetExceededError(f"Grassmann-Plucker scan cost {cost} exceeds budget {budget}")
    if r < 2 or n < r + 2:
        return None
    chi = c.sign_of
    for S in combinations(c.labels, r - 2):
        rest = [l for l in c.labels if l not in S]
        for a, b, cc, d in combinations(rest, 4):
            terms = {
                chi(S + (a, b)) * chi(S + (cc, d)),
                -chi(S + (a, cc)) * chi(S + (b, d)),
                chi(S + (a, d)) * chi(S + (b, cc)),
            }
            if terms <= {0}:
                continue
            if not (1 in terms and -1 in terms):
                return S, (a, b, cc, d)
    return None


def dual(c: Chirotope) -> Chirotope:
    """Dual chirotope, canonicalized.

    chi*(X) = chi(E \\ X) * sign of the permutation (E \\ X ascending, X ascending).
    """
    n, r = c.n, c.rank
    if r == n:
        raise RankDeficiencyError("the dual of a rank-n chirotope has rank 0")
    index = subset_index(n, r)
    full = range(n)
    signs = []
    for X in combinations(full, n - r):
        xs = set(X)
        comp = tuple(i for i in full if i not in xs)
        signs.append(c.signs[index[comp]] * sort_sign(comp + X))
    return canonicalize(Chirotope(n - r, c.labels, tuple(signs), c.history))


def delete(c: Chirotope, e: int) -> Chirotope:
    if e not in c.labels:
        raise KeyError(f"label {e} not in ground set")
    if c.n - 1 < c.rank:
        raise RankDeficiencyError(f"cannot delete from {c.n} elements at rank {c.rank}")
    keep = tuple(l for l in c.labels if l != e)
    signs = tuple(s for basis, s in c.bases() if e not in basis)
    if not any(signs):
        raise RankDeficiencyError(f"{e} is a coloop; deletion drops the rank")
    return Chirotope(c.rank, keep, signs, c.history + (f"delete {e}",))


def contract(c: Chirotope, e: int) -> Chirotope:
    """Contraction: chi/e(S) = chi(S, e) with e in the last slot."""
    if e not in c.labels:
        raise KeyError(f"label {e} not in ground set")
    if not any(s for basis, s in c.bases() if e in basis):
        raise LoopContractionError(f"{e} is a loop")
    keep = tuple(l for l in c.labels if l != e)
    signs = tuple(c.sign_of(S + (e,)) for S in combinations(keep, c.rank - 1))
    return Chirotope(c.rank - 1, keep, signs, c.history + (f"contract {e}",))


def cocircuit_of(c: Chirotope, S: Sequence[int]) -> SignVector:
    """Sign vector ``e -> chi(S, e)`` of the hyperplane spanned by ``S``."""
    S = tuple(S)
    return SignVector(c.labels, tuple(c.sign_of(S + (e,)) if e not in S else 0 for e in c.labels))


def cocircuits(c: Chirotope) -> list[SignVector]:
    """All cocircuits (both signs), in order of first appearance over lex (r-1)-subsets."""
    seen = {}
    for S in combinations(c.labels, c.rank - 1):
        y = cocircuit_of(c, S)
        if not any(y.signs):
            continue
        for z in (y, -y):
            seen.setdefault(z.signs, z)
    return list(seen.values())


def circuits(c: Chirotope) -> list[SignVector]:
    """Circuits of ``c``: the cocircuits of its dual."""
    if c.rank == c.n:
        return []
    return cocircuits(dual(c))
