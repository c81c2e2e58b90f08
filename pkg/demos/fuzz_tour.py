"""Run every property suite briefly, then show a negated run finding violations."""

from __future__ import annotations

import json

from lcgd.explorer import THEOREMS, FuzzSpec, fuzz


def main(trials: int = 1000) -> None:
    for theorem, t in THEOREMS.items():
        r = fuzz(FuzzSpec(theorem, trials=trials))
        print(f"{theorem:>12}: {r.examined} instances, {len(r.violations)} violations  ({t.statement})")

    r = fuzz(FuzzSpec("convo-sync", trials=200, negate=True), max_reported=1)
    print("\nconvo-sync with the premise negated:")
    print(json.dumps(r.violations[0]["minimized"], ensure_ascii=False))
    print(json.dumps(r.violations[0]["verdict"], ensure_ascii=False))


if __name__ == "__main__":
    main()
