"""Run the property battery over every built-in algebra and print a summary table."""
import argparse
import time
from dataclasses import dataclass, field

from projmorph.battery import run_battery
from projmorph.fixtures import FIXTURES
from projmorph.modcat import set_seed


@dataclass
class BatteryConfig:
    fixtures: list = field(default_factory=lambda: sorted(FIXTURES))
    verbose: bool = False
    seed: int = 0


def main(cfg: BatteryConfig) -> int:
    set_seed(cfg.seed)
    failed = 0
    for name in cfg.fixtures:
        t0 = time.perf_counter()
        results = run_battery(FIXTURES[name]())
        dt = time.perf_counter() - t0
        print(f"== {name} ({dt:.2f}s)")
        for r in results:
            tag = "PASS" if r.ok else "FAIL"
            print(f"  [{tag}] {r.name}: {r.detail}" + ("  (finding)" if r.finding else ""))
            if cfg.verbose or not r.ok:
                for line in r.lines:
                    print(f"      {line}")
            failed += not r.ok
    return 1 if failed else 0


if __name__ == "__main__":
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("fixtures", nargs="*", choices=[[]] + sorted(FIXTURES), default=[])
    ap.add_argument("-v", "--verbose", action="store_true")
    ap.add_argument("--seed", type=int, default=0)
    a = ap.parse_args()
    raise SystemExit(main(BatteryConfig(a.fixtures or sorted(FIXTURES), a.verbose, a.seed)))
