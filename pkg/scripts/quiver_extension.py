"""Extend the AR quiver of mod-A to the one of P(A), compare with direct knitting, write DOT files."""
import argparse
from dataclasses import dataclass
from pathlib import Path

from projmorph.arquiver import (export_dot, extend_to_P_quiver, knit_module_quiver, knit_P_quiver_direct,
                                mesh_check, tau_P_orbits, translation_isomorphism)
from projmorph.fixtures import FIXTURES


@dataclass
class ExtensionConfig:
    fixture: str = "A3r"
    out_dir: Path | None = None


def main(cfg: ExtensionConfig) -> int:
    A = FIXTURES[cfg.fixture]()
    G = knit_module_quiver(A)
    E = extend_to_P_quiver(G)
    D = knit_P_quiver_direct(A)
    iso = translation_isomorphism(E, D)
    print(f"mod-A: {len(G)} vertices, {sum(G.arrows.values())} arrows")
    print(f"P(A) extended: {len(E)} vertices, {sum(E.arrows.values())} arrows")
    print(f"P(A) direct:   {len(D)} vertices, {sum(D.arrows.values())} arrows")
    print(f"isomorphic as translation quivers: {iso is not None}")
    print(f"mesh violations: {mesh_check(E)}")
    names = E.names()
    for o in tau_P_orbits(E):
        print("  orbit: " + " <- ".join(names[k] for k in reversed(o.members)))
    if cfg.out_dir:
        cfg.out_dir.mkdir(parents=True, exist_ok=True)
        safe = cfg.fixture.replace("/", "_").replace("^", "")
        (cfg.out_dir / f"{safe}_mod.dot").write_text(export_dot(G))
        (cfg.out_dir / f"{safe}_P.dot").write_text(export_dot(E))
        print(f"DOT written to {cfg.out_dir}")
    return 0 if iso is not None else 1


if __name__ == "__main__":
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("fixture", nargs="?", default="A3r", choices=sorted(FIXTURES))
    ap.add_argument("--out-dir", type=Path)
    a = ap.parse_args()
    raise SystemExit(main(ExtensionConfig(a.fixture, a.out_dir)))
