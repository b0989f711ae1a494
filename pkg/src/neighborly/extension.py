"""Lexicographic extensions.

A program ``[a1^s1, ..., ak^sk]`` adds one element ``p``.  Geometrically ``p`` is
``s1*a1 + eps*s2*a2 + ... + eps**(k-1)*sk*ak`` for small ``eps > 0``;
combinatorially ``chi(S, p)`` is ``si * chi(S, ai)`` for the first ``i`` where that
is nonzero.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Iterable, Sequence

from .chirotope import Chirotope, VectorConfiguration, chirotope_from_configuration
from .errors import InternalConsistencyError, ParseError, PreconditionError
from .linalg import Matrix, det, format_scalar, rank

#: Halving steps allowed before lex_extend_geometric gives up.
MAX_HALVINGS = 256


@dataclass(frozen=True)
class LexProgram:
    steps: tuple[tuple[int, int], ...]

    def __post_init__(self):
        steps = tuple((int(e), int(s)) for e, s in self.steps)
        if not steps:
            raise ValueError("a lexicographic program needs at least one step")
        if any(s not in (1, -1) for _, s in steps):
            raise ValueError("program signs must be +1 or -1")
        object.__setattr__(self, "steps", steps)

    @classmethod
    def of(cls, *steps: tuple[int, int]) -> "LexProgram":
        return cls(tuple(steps))

    @classmethod
    def parse(cls, text: str) -> "LexProgram":
        """Parse ``"4+,1-,6+"``."""
        steps = []
        for tok in text.split(","):
            tok = tok.strip()
            if len(tok) < 2 or tok[-1] not in "+-" or not tok[:-1].strip().isdigit():
                raise ParseError(f"bad program token {tok!r}; expected e.g. '4+'")
            steps.append((int(tok[:-1]), 1 if tok[-1] == "+" else -1))
        if not steps:
            raise ParseError("empty program")
        return cls(tuple(steps))

    @property
    def elements(self) -> tuple[int, ...]:
        return tuple(e for e, _ in self.steps)

    def __len__(self):
        return len(self.steps)

    def __str__(self):
        return ",".join(f"{e}{'+' if s > 0 else '-'}" for e, s in self.steps)


@dataclass(frozen=True)
class FiberDescription:
    """Constraints on the new vector ``x`` that keep the extended chirotope fixed."""

    equalities: tuple[tuple[Fraction, ...], ...]
    strict_inequalities: tuple[tuple[tuple[Fraction, ...], int], ...]
    witness: tuple[Fraction, ...]
    dimension: int

    def satisfied_by(self, x: Sequence[Fraction]) -> bool:
        def ev(form):
            return sum((a * b for a, b in zip(form, x)), Fraction(0))

        return all(ev(f) == 0 for f in self.equalities) and all(
            (ev(f) > 0) - (ev(f) < 0) == s for f, s in self.strict_inequalities
        )

    def to_text(self) -> str:
        lines = [f"dimension {self.dimension}", "witness " + " ".join(map(format_scalar, self.witness))]
        lines += ["eq " + " ".join(map(format_scalar, f)) for f in self.equalities]
        lines += [
            ("gt " if s > 0 else "lt ") + " ".join(map(format_scalar, f)) for f, s in self.strict_inequalities
        ]
        return "\n".join(lines) + "\n"


def _check_program(labels: Iterable[int], prog: LexProgram):
    labels = set(labels)
    missing = [e for e in prog.elements if e not in labels]
    if missing:
        raise PreconditionError(f"program elements {missing} not in ground set")


def lex_extend_symbolic(c: Chirotope, prog: LexProgram, label: int | None = None) -> Chirotope:
    """Chirotope of ``c`` extended by the program's new element (label max+1)."""
    if not isinstance(prog, LexProgram) or not prog.steps:
        raise ValueError("empty program")
    _check_program(c.labels, prog)
    p = max(c.labels) + 1 if label is None else label
    if p <= max(c.labels):
        raise ValueError("new label must exceed all existing labels")
    labels = c.labels + (p,)
    r = c.rank
    new_signs = {}
    for S in combinations(c.labels, r - 1):
        val = 0
        for a, s in prog.steps:
            if a in S:
                continue
            x = c.sign_of(S + (a,))
            if x:
                val = s * x
                break
        new_signs[S] = val
    signs = []
    for basis in combinations(labels, r):
        if basis[-1] == p:
            signs.append(new_signs[basis[:-1]])
        else:
            signs.append(c.sign_of(basis))
    return Chirotope(r, labels, tuple(signs), c.history)


def extension_vector(v: VectorConfiguration, prog: LexProgram, eps: Fraction) -> tuple[Fraction, ...]:
    vec = [Fraction(0)] * v.dim
    weight = Fraction(1)
    for a, s in prog.steps:
        av = v.vector(a)
        vec = [x + s * weight * y for x, y in zip(vec, av)]
        weight *= eps
    return tuple(vec)


def certify_epsilon(v: VectorConfiguration, prog: LexProgram, eps, target: Chirotope | None = None) -> bool:
    """Whether ``eps`` realizes the lexicographic extension on ``v``."""
    eps = Fraction(eps)
    if eps <= 0:
        raise ValueError("epsilon must be positive")
    _check_program(v.labels, prog)
    if target is None:
        target = lex_extend_symbolic(chirotope_from_configuration(v), prog)
    ext = v.with_vector(extension_vector(v, prog, eps), target.labels[-1])
    got = chirotope_from_configuration(ext)
    return got.labels == target.labels and got.signs == target.signs


def lex_extend_geometric(v: VectorConfiguration, prog: LexProgram) -> tuple[VectorConfiguration, Fraction]:
    """Adjoin the program's vector with a certified ``eps``, found by halving from 1."""
    _check_program(v.labels, prog)
    target = lex_extend_symbolic(chirotope_from_configuration(v), prog)
    p = target.labels[-1]
    eps = Fraction(1)
    for _ in range(MAX_HALVINGS):
        if certify_epsilon(v, prog, eps, target):
            return v.with_vector(extension_vector(v, prog, eps), p), eps
        eps /= 2
    raise InternalConsistencyError(f"no certified epsilon down to {eps}")


def fiber_polyhedron(v: VectorConfiguration, prog: LexProgram) -> FiberDescription:
    """The set of vectors realizing the extension over the fixed realization ``v``."""
    c = chirotope_from_configuration(v)
    target = lex_extend_symbolic(c, prog)
    ext, _ = lex_extend_geometric(v, prog)
    witness = ext.vectors[-1]
    p = target.labels[-1]
    r = v.dim
    equalities, inequalities = [], []
    for S in combinations(v.labels, r - 1):
        rows = [v.vector(l) for l in S]
        # det(rows S, x) = sum_j x_j * cofactor_j
        form = tuple(
            det(list(rows) + [tuple(Fraction(int(i == j)) for i in range(r))]) for j in range(r)
        )
        s = target.sign_of(S + (p,))
        if s == 0:
            equalities.append(form)
        else:
            inequalities.append((form, s))
    eq_rank = rank(Matrix(equalities, cols=r)) if equalities else 0
    dim = rank(Matrix([v.vector(a) for a in prog.elements], cols=r))
    fiber = FiberDescription(tuple(equalities), tuple(inequalities), witness, r - eq_rank)
    if not fiber.satisfied_by(witness):
        raise InternalConsistencyError("witness violates its own fiber constraints")
    if fiber.dimension != dim:
        raise InternalConsistencyError(
            f"fiber dimension {fiber.dimension} differs from program rank {dim}"
        )
    return fiber
