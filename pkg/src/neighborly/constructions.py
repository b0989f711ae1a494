"""Generators of neighborly polytopes and the checks attached to them.

Every construction carries an explicit realization (a vector configuration) next
to its chirotope, and records its steps in a :class:`ConstructionLog` that can be
replayed bit-for-bit.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations, permutations, product
from typing import Sequence

from .chirotope import (
    Chirotope,
    VectorConfiguration,
    canonicalize,
    chirotope_from_configuration,
    dual,
    gale_dual_configuration,
    is_uniform,
)
from .errors import ConstructionFailedError, GeneralPositionError, ParseError, PreconditionError
from .extension import LexProgram, lex_extend_geometric, lex_extend_symbolic
from .linalg import format_scalar, parse_scalar
from .polytope import Flag, face_figure, face_lattice, is_face, is_neighborly, non_vertices

#: Default node budget for :func:`neighborly_completion`.
COMPLETION_BUDGET = 10**5


def cyclic(d: int, n: int, params: Sequence | None = None) -> VectorConfiguration:
    """Homogenized moment-curve points ``(1, t, ..., t**d)``; params default to 0..n-1."""
    if d < 1 or n < d + 1:
        raise ValueError(f"cyclic polytope needs n >= d+1 >= 2, got d={d}, n={n}")
    ts = [Fraction(t) for t in (range(n) if params is None else params)]
    if len(ts) != n:
        raise ValueError(f"expected {n} parameters, got {len(ts)}")
    if any(a >= b for a, b in zip(ts, ts[1:])):
        raise ValueError("moment curve parameters must be strictly increasing")
    return VectorConfiguration(tuple(tuple(t**k for k in range(d + 1)) for t in ts))


def gale_evenness_facets(d: int, n: int) -> set[frozenset[int]]:
    """Facets of C(d, n) on labels 1..n by Gale's evenness condition (brute force)."""
    out = set()
    for S in combinations(range(1, n + 1), d):
        s = set(S)
        ok = True
        for i in range(1, n + 1):
            for j in range(i + 1, n + 1):
                if i in s or j in s:
                    continue
                between = sum(1 for k in s if i < k < j)
                if between % 2:
                    ok = False
                    break
            if not ok:
                break
        if ok:
            out.add(frozenset(S))
    return out


# -- construction log ---------------------------------------------------------


@dataclass
class ConstructionLog:
    """Replayable record of a construction.

    ``seed`` is one of ``"cyclic d n t1 ... tn"``, ``"polygon m"`` or
    ``"config n r"`` (with ``seed_vectors``).  A polygon seed works on the Gale
    dual of the m-gon and its output is the dual chirotope of the final
    configuration; other seeds output the final configuration's chirotope.
    """

    seed: str
    steps: list[tuple[str, str, tuple[int, ...]]] = field(default_factory=list)
    seed_vectors: VectorConfiguration | None = None

    @property
    def dualized(self) -> bool:
        return self.seed.split()[0] == "polygon"

    def add(self, op: str, arg: str, labels: Sequence[int]):
        self.steps.append((op, arg, tuple(labels)))

    def to_text(self) -> str:
        lines = ["SEED " + self.seed]
        if self.seed.split()[0] == "config":
            lines += [" ".join(format_scalar(x) for x in v) for v in self.seed_vectors.vectors]
        for op, arg, labels in self.steps:
            parts = [op]
            if arg:
                parts.append(arg)
            parts.append("->")
            parts.append(",".join(map(str, labels)))
            lines.append(" ".join(parts))
        return "\n".join(lines) + "\n"

    @classmethod
    def from_text(cls, text: str) -> "ConstructionLog":
        lines = text.splitlines()
        if not lines or not lines[0].startswith("SEED "):
            raise ParseError("log must start with a SEED line", line=1)
        seed = lines[0][5:].strip()
        kind, *args = seed.split()
        pos = 1
        seed_vectors = None
        try:
            if kind == "cyclic":
                d, n = int(args[0]), int(args[1])
                if len(args) != n + 2:
                    raise ParseError(f"cyclic seed needs {n} parameters", line=1)
                cyclic(d, n, [parse_scalar(t) for t in args[2:]])
            elif kind == "polygon":
                if len(args) != 1:
                    raise ParseError("polygon seed takes one size", line=1)
                int(args[0])
            elif kind == "config":
                n, r = int(args[0]), int(args[1])
                body = "\n".join([f"{n} {r}"] + lines[1 : 1 + n])
                try:
                    seed_vectors = VectorConfiguration.from_text(body)
                except ParseError as exc:
                    raise ParseError(str(exc).split(": ", 1)[-1], line=exc.line) from None
                pos = 1 + n
            else:
                raise ParseError(f"unknown seed kind {kind!r}", line=1)
        except (IndexError, ValueError) as exc:
            if isinstance(exc, ParseError):
                raise
            raise ParseError(f"malformed seed {seed!r}", line=1) from None
        log = cls(seed, [], seed_vectors)
        for i, line in enumerate(lines[pos:], start=pos + 1):
            if not line.strip():
                continue
            head, sep, tail = line.partition("->")
            if not sep:
                raise ParseError("step line needs '-> labels'", line=i)
            op, _, arg = head.strip().partition(" ")
            if op not in ("SEW", "GALESEW", "EXT"):
                raise ParseError(f"unknown step {op!r}", line=i)
            try:
                labels = tuple(int(x) for x in tail.split(",") if x.strip())
                if op == "SEW":
                    Flag.parse(arg)
                else:
                    LexProgram.parse(arg)
            except (ParseError, ValueError) as exc:
                raise ParseError(str(exc), line=i) from None
            log.add(op, arg.strip(), labels)
        return log


def _seed_configuration(log: ConstructionLog) -> VectorConfiguration:
    kind, *args = log.seed.split()
    if kind == "cyclic":
        d, n = int(args[0]), int(args[1])
        return cyclic(d, n, [parse_scalar(t) for t in args[2:]])
    if kind == "polygon":
        return gale_dual_configuration(cyclic(2, int(args[0])))
    return log.seed_vectors


def output_chirotope(v: VectorConfiguration, dualized: bool) -> Chirotope:
    c = chirotope_from_configuration(v)
    return canonicalize(dual(c) if dualized else c)


def replay(log: ConstructionLog) -> tuple[VectorConfiguration, Chirotope]:
    """Rebuild the final configuration and output chirotope from ``log``."""
    v = _seed_configuration(log)
    for i, (op, arg, labels) in enumerate(log.steps):
        before = set(v.labels)
        if op == "SEW":
            v = sew(v, Flag.parse(arg))
        elif op == "GALESEW":
            v = gale_sew_geometric(v, LexProgram.parse(arg))
        else:
            v, _ = lex_extend_geometric(v, LexProgram.parse(arg))
        added = tuple(l for l in v.labels if l not in before)
        if labels and added != labels:
            raise ConstructionFailedError(f"step {i + 1} added {added}, log says {labels}")
    return v, output_chirotope(v, log.dualized)


# -- sewing -------------------------------------------------------------------


def sewing_program(labels: Sequence[int], flag: Flag) -> LexProgram:
    """Blocks U_i = F_i minus F_(i-1), then all remaining vertices; block signs alternate from +."""
    steps = []
    prev: frozenset[int] = frozenset()
    sgn = 1
    for face in list(flag.faces) + [frozenset(labels)]:
        steps += [(e, sgn) for e in sorted(face - prev)]
        prev = face
        sgn = -sgn
    return LexProgram(tuple(steps))


def check_universal_flag(c: Chirotope, flag: Flag):
    """Raise PreconditionError unless ``flag`` is a universal flag of ``c``."""
    d = c.rank - 1
    want = list(range(1, d, 2))
    lattice = face_lattice(c)
    sizes = [len(f) - 1 for f in flag.faces]
    if sizes != want:
        raise PreconditionError(f"flag face dimensions {sizes}, expected {want}")
    for f in flag.faces:
        if not is_face(lattice, f):
            raise PreconditionError(f"{sorted(f)} is not a face")
        if not is_neighborly(face_figure(c, f)):
            raise PreconditionError(f"quotient by {sorted(f)} is not neighborly")


def _require_even_neighborly(c: Chirotope):
    d = c.rank - 1
    if d % 2:
        raise PreconditionError(f"dimension {d} is odd")
    bad = non_vertices(c)
    if bad:
        raise PreconditionError(f"elements {bad} are not vertices")
    if not is_neighborly(c):
        raise PreconditionError("polytope is not neighborly")


def sew(v: VectorConfiguration, flag: Flag) -> VectorConfiguration:
    """Sew a new vertex onto the polytope ``v`` through a universal flag."""
    c = chirotope_from_configuration(v)
    _require_even_neighborly(c)
    check_universal_flag(c, flag)
    out, _ = lex_extend_geometric(v, sewing_program(c.labels, flag))
    res = chirotope_from_configuration(out)
    if non_vertices(res) or not is_neighborly(res):
        raise ConstructionFailedError(f"sewing through {flag} did not give a neighborly polytope")
    return out


# -- Gale sewing --------------------------------------------------------------


def gale_q_program(p: int, p_prog: LexProgram) -> LexProgram:
    """``[p-, a1-, ..., a_(r-1)-]`` for ``p_prog = [a1, ..., ar]``."""
    return LexProgram(((p, -1),) + tuple((a, -1) for a in p_prog.elements[:-1]))


def _check_general_position(c_dual: Chirotope, p_prog: LexProgram):
    r = c_dual.rank
    els = p_prog.elements
    if len(els) != r or len(set(els)) != r:
        raise GeneralPositionError(f"program must have {r} distinct elements, got {list(els)}")
    if any(e not in c_dual.labels for e in els):
        raise GeneralPositionError(f"program elements {list(els)} not all in ground set")
    if c_dual.sign_of(els) == 0:
        raise GeneralPositionError(f"program elements {list(els)} are dependent")


def default_p_program(c_dual: Chirotope) -> LexProgram:
    return LexProgram(tuple((e, 1) for e in c_dual.labels[: c_dual.rank]))


def _check_gale_result(before: Chirotope, after: Chirotope):
    poly = dual(after)
    d_before = before.n - before.rank - 1
    if poly.rank - 1 != d_before + 2 or poly.n != before.n + 2:
        raise ConstructionFailedError("Gale sewing changed (n, d) by other than (2, 2)")
    if non_vertices(poly) or not is_neighborly(poly):
        raise ConstructionFailedError("Gale sewing did not give a neighborly polytope")


def gale_sew(c_dual: Chirotope, p_prog: LexProgram, check: bool = True) -> Chirotope:
    """Extend a neighborly polytope's dual by ``p_prog`` then by ``[p-, a1-, ..., a_(r-1)-]``.

    The result is again a dual; its dual is neighborly of dimension two higher.
    """
    if not is_uniform(c_dual):
        raise GeneralPositionError("Gale sewing needs a uniform dual")
    _check_general_position(c_dual, p_prog)
    once = lex_extend_symbolic(c_dual, p_prog)
    twice = lex_extend_symbolic(once, gale_q_program(once.labels[-1], p_prog))
    if check:
        _check_gale_result(c_dual, twice)
    return twice


def gale_sew_geometric(v_dual: VectorConfiguration, p_prog: LexProgram, check: bool = True) -> VectorConfiguration:
    """Realized Gale sewing on a dual configuration."""
    c_dual = chirotope_from_configuration(v_dual)
    if not is_uniform(c_dual):
        raise GeneralPositionError("Gale sewing needs a uniform dual")
    _check_general_position(c_dual, p_prog)
    once, _ = lex_extend_geometric(v_dual, p_prog)
    twice, _ = lex_extend_geometric(once, gale_q_program(once.labels[-1], p_prog))
    if check:
        _check_gale_result(c_dual, chirotope_from_configuration(twice))
    return twice


def gale_sewn_pipeline(
    seed_polygon_size: int, steps: int, p_choices: Sequence[LexProgram | None] | None = None
) -> tuple[Chirotope, ConstructionLog, VectorConfiguration]:
    """Gale sew ``steps`` times starting from the dual of an m-gon.

    Returns the polytope chirotope (dimension 2+2k on m+2k vertices), the log,
    and the final dual configuration.
    """
    m, k = seed_polygon_size, steps
    if m < 4 or k < 1:
        raise ValueError("pipeline needs m >= 4 and k >= 1")
    log = ConstructionLog(f"polygon {m}")
    v = _seed_configuration(log)
    for i in range(k):
        c_dual = chirotope_from_configuration(v)
        prog = p_choices[i] if p_choices and i < len(p_choices) and p_choices[i] is not None else None
        prog = prog or default_p_program(c_dual)
        before = set(v.labels)
        v = gale_sew_geometric(v, prog)
        symbolic = gale_sew(c_dual, prog, check=False)
        if chirotope_from_configuration(v).signs != symbolic.signs:
            raise ConstructionFailedError("realized Gale sewing disagrees with the symbolic rule")
        log.add("GALESEW", str(prog), [l for l in v.labels if l not in before])
    return output_chirotope(v, True), log, v


# -- neighborly completion ----------------------------------------------------


@dataclass
class CompletionResult:
    found: bool
    chirotope: Chirotope | None
    log: ConstructionLog | None
    configuration: VectorConfiguration | None
    nodes: int


def _balanced_so_far(c: Chirotope, half: int) -> bool:
    """No hyperplane spanned by r-1 elements has more than ``half`` elements on one side."""
    for S in combinations(c.labels, c.rank - 1):
        pos = neg = 0
        for e in c.labels:
            if e in S:
                continue
            s = c.sign_of(S + (e,))
            if s > 0:
                pos += 1
            elif s < 0:
                neg += 1
        if pos > half or neg > half:
            return False
    return True


def _candidates(labels: Sequence[int], slots: int):
    """Gale-sewing pairs and general-position triples, lexicographic order."""
    for a, b, c in permutations(labels, 3):
        for sa, sb, sc in product((1, -1), repeat=3):
            p = LexProgram(((a, sa), (b, sb), (c, sc)))
            if slots >= 2:
                yield (p, LexProgram(((0, -1), (a, -1), (b, -1))))
            yield (p,)


def neighborly_completion(
    m3: Chirotope | VectorConfiguration, budget: int = COMPLETION_BUDGET
) -> CompletionResult:
    """Search n lexicographic extensions of a rank-3 uniform matroid on n elements
    whose dual is an even-dimensional neighborly polytope on 2n vertices.

    Depth-first over :func:`_candidates`; a branch is cut when some hyperplane
    already has more than n-1 elements on one side, since the final Gale dual
    of a neighborly (2n-4)-polytope splits every such hyperplane evenly.  A
    not-found result only means the budget ran out.
    """
    v = m3 if isinstance(m3, VectorConfiguration) else None
    c0 = chirotope_from_configuration(v) if v is not None else m3
    if c0.rank != 3 or not is_uniform(c0):
        raise PreconditionError("neighborly completion needs a uniform rank-3 chirotope")
    n = c0.n
    half = n - 1
    nodes = 0
    path: list[LexProgram] = []

    class _Out(Exception):
        pass

    def dfs(c: Chirotope) -> bool:
        nonlocal nodes
        slots = 2 * n - c.n
        if slots == 0:
            poly = dual(c)
            return not non_vertices(poly) and is_neighborly(poly)
        for cand in _candidates(c.labels, slots):
            nodes += 1
            if nodes > budget:
                raise _Out
            cur = c
            progs = []
            ok = True
            for prog in cand:
                if prog.steps[0][0] == 0:
                    prog = LexProgram(((cur.labels[-1], -1),) + prog.steps[1:])
                cur = lex_extend_symbolic(cur, prog)
                progs.append(prog)
                if not is_uniform(cur) or not _balanced_so_far(cur, half):
                    ok = False
                    break
            if not ok:
                continue
            path.extend(progs)
            if dfs(cur):
                return True
            del path[len(path) - len(progs) :]
        return False

    try:
        found = dfs(c0)
    except _Out:
        found = False
    if not found:
        return CompletionResult(False, None, None, None, nodes)
    if v is not None:
        log = ConstructionLog(f"config {v.n} {v.dim}", seed_vectors=v)
        w = v
        for prog in path:
            before = set(w.labels)
            w, _ = lex_extend_geometric(w, prog)
            log.add("EXT", str(prog), [l for l in w.labels if l not in before])
        final = chirotope_from_configuration(w)
    else:
        log, w = None, None
        final = c0
        for prog in path:
            final = lex_extend_symbolic(final, prog)
    return CompletionResult(True, canonicalize(final), log, w, nodes)


# -- realization-space probe ----------------------------------------------------


@dataclass(frozen=True)
class ProbeReport:
    trials: int
    preserved: int
    delta: Fraction
    n: int
    d: int
    dual_rank: int
    expected_dimension: int

    @property
    def fraction(self) -> Fraction:
        return Fraction(self.preserved, self.trials) if self.trials else Fraction(1)

    @property
    def dimension_identity(self) -> bool:
        r = self.dual_rank
        return self.expected_dimension == self.n * r - r * r

    def to_text(self) -> str:
        return (
            f"n {self.n}\nd {self.d}\ndual_rank {self.dual_rank}\n"
            f"expected_dimension {self.expected_dimension}\n"
            f"dimension_identity {'ok' if self.dimension_identity else 'FAILED'}\n"
            f"delta {format_scalar(self.delta)}\ntrials {self.trials}\npreserved {self.preserved}\n"
            f"fraction {format_scalar(self.fraction)}\n"
        )


def realization_space_dimension(n: int, d: int) -> int:
    return (d + 1) * (n - d - 1)


def openness_probe(v: VectorConfiguration, trials: int, delta, seed: int = 0, resolution: int = 10**6) -> ProbeReport:
    """Perturb every coordinate by uniform rational noise in [-delta, delta] and
    count how often the chirotope survives."""
    delta = Fraction(delta)
    c = chirotope_from_configuration(v)
    if not is_uniform(c):
        raise PreconditionError("openness probe needs a uniform chirotope")
    rng = random.Random(seed)
    preserved = 0
    for _ in range(trials):
        vecs = tuple(
            tuple(x + delta * Fraction(rng.randint(-resolution, resolution), resolution) for x in vec)
            for vec in v.vectors
        )
        if chirotope_from_configuration(VectorConfiguration(vecs, v.labels)).signs == c.signs:
            preserved += 1
    n, d = v.n, v.dim - 1
    r = n - d - 1
    report = ProbeReport(trials, preserved, delta, n, d, r, realization_space_dimension(n, d))
    if not report.dimension_identity:
        raise ConstructionFailedError("(d+1)(n-d-1) differs from n*r - r^2")
    return report
