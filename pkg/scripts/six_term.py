"""Print the six-term sequence attached to every indecomposable projective of an algebra."""
import argparse
from dataclasses import dataclass

from projmorph.ars import six_term_sequence
from projmorph.fixtures import FIXTURES
from projmorph.modules import projective_module
from projmorph.naming import dims_str, module_name


@dataclass
class SixTermConfig:
    fixture: str = "A3r"


def main(cfg: SixTermConfig) -> int:
    A = FIXTURES[cfg.fixture]()
    ok = True
    for v in range(A.n):
        P = projective_module(A, (v,))
        s = six_term_sequence(P)
        terms = " -> ".join(f"{module_name(M)}{dims_str(M.dims)}" for M in s.terms)
        print(f"{module_name(P)}: 0 -> {terms} -> 0")
        print(f"    Q = {module_name(s.Q)}, exact={s.exact}, Q projective={s.Q_projective}")
        for label, good in s.identifications.items():
            print(f"    {label}: {good}")
        ok &= s.exact and s.Q_projective and all(s.identifications.values())
    return 0 if ok else 1


if __name__ == "__main__":
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("fixture", nargs="?", default="A3r", choices=sorted(FIXTURES))
    raise SystemExit(main(SixTermConfig(ap.parse_args().fixture)))
