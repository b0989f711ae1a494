"""Regenerates the construction-log corpus and its frozen chirotopes.

Run from the repository root: ``python tests/fixtures/make_corpus.py``.
"""

from pathlib import Path

from neighborly.chirotope import VectorConfiguration, chirotope_from_configuration
from neighborly.constructions import ConstructionLog, cyclic, gale_sewn_pipeline, neighborly_completion, sew
from neighborly.extension import LexProgram
from neighborly.polytope import find_universal_flags

OUT = Path(__file__).parent / "logs"


def save(name, log, chirotope):
    (OUT / f"{name}.log").write_text(log.to_text())
    (OUT / f"{name}.chi").write_text(chirotope.to_text())


def main():
    OUT.mkdir(exist_ok=True)
    for m, k in [(4, 1), (6, 1), (6, 2), (5, 2)]:
        c, log, _ = gale_sewn_pipeline(m, k)
        save(f"galesewn_m{m}_k{k}", log, c)
    c, log, _ = gale_sewn_pipeline(6, 2, [LexProgram.parse("2+,4-,6+"), LexProgram.parse("8-,1+,5+")])
    save("galesewn_m6_k2_custom", log, c)

    v = cyclic(4, 6)
    log = ConstructionLog("cyclic 4 6 0 1 2 3 4 5")
    for _ in range(2):
        flag = find_universal_flags(chirotope_from_configuration(v)).flags[-1]
        before = set(v.labels)
        v = sew(v, flag)
        log.add("SEW", str(flag), [l for l in v.labels if l not in before])
    save("sewn_c46_twice", log, chirotope_from_configuration(v))

    quad = VectorConfiguration(((1, 0, 0), (1, 1, 0), (1, 1, 1), (1, 0, 1)))
    res = neighborly_completion(quad)
    save("completion_quadrilateral", res.log, res.chirotope)


if __name__ == "__main__":
    main()
