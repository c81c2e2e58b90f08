"""Search small sequences for A ~ B, B ~ C but not A ~ C."""

from __future__ import annotations

from lcgd.explorer import search_nontransitivity
from lcgd.io import seq_from_json


def main() -> None:
    for interlocked in (False, True):
        r = search_nontransitivity(max_len=4, max_entry=6, interlocked_only=interlocked)
        label = "interlocked supports" if interlocked else "any supports"
        if not r.violations:
            print(f"{label}: none within bounds ({r.examined} triples)")
            continue
        w = r.violations[0]
        a, b, c = (seq_from_json(w[k]) for k in "ABC")
        print(f"{label}: A={a} B={b} C={c} after {r.examined} triples; A~C fails with {w['A~C']['witness']}")


if __name__ == "__main__":
    main()
