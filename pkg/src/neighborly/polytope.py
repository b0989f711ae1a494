"""Face lattices of acyclic chirotopes.

Facets are the zero sets of nonnegative cocircuits.  A set of vertices is a face
when it equals the intersection of all facets containing it.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from itertools import combinations, permutations
from typing import Iterable

from .chirotope import Chirotope, SignVector, circuits, cocircuits, contract, delete
from .errors import BudgetExceededError, LoopContractionError, NotAPolytopeError, PreconditionError

#: Default candidate-chain budget for universal flag search.
FLAG_BUDGET = 10**5


@dataclass(frozen=True)
class FaceLattice:
    """Vertices and facets; the full face family is closed under intersection on demand."""

    vertices: frozenset[int]
    facets: tuple[frozenset[int], ...]

    @cached_property
    def faces(self) -> frozenset[frozenset[int]]:
        faces = {self.vertices, frozenset()}
        frontier = set(self.facets)
        faces |= frontier
        while frontier:
            new = set()
            for a in frontier:
                for f in self.facets:
                    g = a & f
                    if g not in faces:
                        new.add(g)
            faces |= new
            frontier = new
        return frozenset(faces)

    def to_text(self) -> str:
        """One face per line, labels ascending; facet lines start with ``F``."""
        facet_set = set(self.facets)
        rows = sorted(tuple(sorted(f)) for f in self.faces)
        lines = []
        for row in rows:
            body = " ".join(map(str, row))
            lines.append(("F " + body) if frozenset(row) in facet_set else body)
        return "\n".join(lines) + "\n"


@dataclass(frozen=True)
class Flag:
    """Ascending chain of proper faces."""

    faces: tuple[frozenset[int], ...] = ()

    def __post_init__(self):
        faces = tuple(frozenset(f) for f in self.faces)
        for a, b in zip(faces, faces[1:]):
            if not a < b:
                raise ValueError("flag faces must be strictly increasing")
        object.__setattr__(self, "faces", faces)

    def __len__(self):
        return len(self.faces)

    def __str__(self):
        return " ".join(",".join(map(str, sorted(f))) for f in self.faces)

    @classmethod
    def parse(cls, text: str) -> "Flag":
        faces = []
        for tok in text.split():
            faces.append(frozenset(int(x) for x in tok.split(",") if x))
        return cls(tuple(faces))


@dataclass
class FlagSearchResult:
    flags: list[Flag]
    truncated: bool = False
    nodes: int = field(default=0)

    def __iter__(self):
        return iter(self.flags)

    def __len__(self):
        return len(self.flags)


def positive_circuit(c: Chirotope) -> SignVector | None:
    """A circuit with no negative entry, if one exists."""
    for x in circuits(c):
        if x.is_nonnegative():
            return x
    return None


def is_acyclic(c: Chirotope) -> bool:
    return positive_circuit(c) is None


def facets(c: Chirotope) -> list[frozenset[int]]:
    """Zero sets of the nonnegative cocircuits, in order of discovery."""
    if not is_acyclic(c):
        raise NotAPolytopeError(f"positive circuit {sorted(positive_circuit(c).positive())}")
    out = []
    seen = set()
    for y in cocircuits(c):
        if y.is_nonnegative():
            z = y.zero_set()
            if z not in seen:
                seen.add(z)
                out.append(z)
    return out


def face_lattice(c: Chirotope) -> FaceLattice:
    return FaceLattice(frozenset(c.labels), tuple(facets(c)))


def smallest_face(facet_list: Iterable[frozenset[int]], vertices: frozenset[int], s) -> frozenset[int]:
    s = frozenset(s)
    out = vertices
    for f in facet_list:
        if s <= f:
            out = out & f
    return out


def is_face(lattice: FaceLattice, s) -> bool:
    s = frozenset(s)
    if not s <= lattice.vertices:
        raise ValueError(f"{sorted(s - lattice.vertices)} are not vertices")
    if not s:
        return True
    return smallest_face(lattice.facets, lattice.vertices, s) == s


def non_vertices(c: Chirotope) -> list[int]:
    lattice = face_lattice(c)
    return [v for v in c.labels if not is_face(lattice, {v})]


def require_polytope(c: Chirotope):
    """Acyclic and every element a vertex; raises NotAPolytopeError otherwise."""
    bad = non_vertices(c)
    if bad:
        raise NotAPolytopeError(f"elements {bad} are not vertices")


def neighborly_violation(c: Chirotope) -> frozenset[int] | None:
    """Smallest-first subset of size <= floor(d/2) that is not a face, or None."""
    d = c.rank - 1
    lattice = face_lattice(c)
    for k in range(1, d // 2 + 1):
        for s in combinations(c.labels, k):
            if not is_face(lattice, s):
                return frozenset(s)
    return None


def is_neighborly(c: Chirotope) -> bool:
    """Every set of at most floor(d/2) elements spans a face; d = rank - 1."""
    return neighborly_violation(c) is None


def face_figure(c: Chirotope, f) -> Chirotope:
    """Quotient by the face ``f``: contract a basis of ``f``, drop the rest."""
    f = frozenset(f)
    if not f:
        return c
    if not is_face(face_lattice(c), f):
        raise PreconditionError(f"{sorted(f)} is not a face")
    out = c
    for e in sorted(f):
        try:
            out = contract(out, e)
        except LoopContractionError:
            out = delete(out, e)
    return out


def find_universal_flags(c: Chirotope, budget: int = FLAG_BUDGET, include_facets: bool = True) -> FlagSearchResult:
    """All universal flags of an even-dimensional neighborly polytope.

    A flag has one face in each odd dimension 1, 3, ..., up to d-1 (facets) when
    ``include_facets`` is set, else up to d-3; each quotient must be neighborly.
    Faces are tried in lexicographic order; ``budget`` caps the number of chain
    nodes visited and the result is marked ``truncated`` when it runs out.
    """
    d = c.rank - 1
    if d % 2:
        raise PreconditionError(f"dimension {d} is odd")
    require_polytope(c)
    if not is_neighborly(c):
        raise PreconditionError("polytope is not neighborly")
    top = d - 1 if include_facets else d - 3
    dims = list(range(1, top + 1, 2))
    lattice = face_lattice(c)
    by_size: dict[int, list[frozenset[int]]] = {}
    for face in lattice.faces:
        by_size.setdefault(len(face), []).append(face)
    for faces in by_size.values():
        faces.sort(key=lambda s: tuple(sorted(s)))
    universal: dict[frozenset[int], bool] = {}

    def ok(face):
        if face not in universal:
            universal[face] = is_neighborly(face_figure(c, face))
        return universal[face]

    result = FlagSearchResult([])

    def extend(chain, level):
        if level == len(dims):
            result.flags.append(Flag(tuple(chain)))
            return
        # simplicial: a j-face has j+1 vertices
        for face in by_size.get(dims[level] + 1, []):
            if chain and not chain[-1] < face:
                continue
            result.nodes += 1
            if result.nodes > budget:
                result.truncated = True
                raise BudgetExceededError
            if ok(face):
                chain.append(face)
                extend(chain, level + 1)
                chain.pop()

    try:
        extend([], 0)
    except BudgetExceededError:
        pass
    return result


def facets_isomorphic(a: Iterable[Iterable[int]], b: Iterable[Iterable[int]]) -> bool:
    """Whether two facet systems agree up to relabeling (brute force on small sets)."""
    a = [frozenset(f) for f in a]
    b = [frozenset(f) for f in b]
    va = sorted(set().union(*a)) if a else []
    vb = sorted(set().union(*b)) if b else []
    if len(a) != len(b) or len(va) != len(vb):
        return False
    if sorted(map(len, a)) != sorted(map(len, b)):
        return False
    target = set(b)

    def degree(fs, v):
        return sum(v in f for f in fs)

    deg_b = {v: degree(b, v) for v in vb}
    for perm in permutations(vb):
        m = dict(zip(va, perm))
        if any(degree(a, v) != deg_b[m[v]] for v in va):
            continue
        if all(frozenset(m[x] for x in f) in target for f in a):
            return True
    return False
