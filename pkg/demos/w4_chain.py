"""Walk through one vertex amalgamation of rooted W4 graphs.

Loads the bundled partials, checks the premises, runs one step of the
recursion in both the printed and the embedding-complete form, and compares
each with direct enumeration of the amalgamated graph.
"""

from __future__ import annotations

from lcgd.chains import abbreviate, amalgamate, check_amalgamand
from lcgd.embed import amalgamate_vertices, partials, rooted_example
from lcgd.io import bundled_double, bundled_single
from lcgd.seqcore import is_log_concave, ratio_dominates


def main() -> None:
    g, h = bundled_single("w4"), bundled_double("w4")
    print(f"G: D={g.D} S={g.S}  D≲S {bool(ratio_dominates(g.D, g.S))}")
    q = abbreviate(h, "vertex")
    print(f"abbreviations: A1={q.A1} A2={q.A2} B1={q.B1} B2={q.B2}")
    print(f"lexicographic premise: {bool(check_amalgamand(h, 'vertex'))}")

    gx, hx = rooted_example("W4"), rooted_example("W4", double=True)
    x = amalgamate_vertices(gx, gx.root_vertices[0], hx, hx.root_vertices[0])
    enumerated = partials(x)
    print(f"enumerated: D={enumerated.D} S={enumerated.S} total {enumerated.total()}")

    for mode in ("vertex", "vertex-complete"):
        r = amalgamate(g, h, mode)
        same = (r.D, r.S) == (enumerated.D, enumerated.S)
        print(
            f"{mode:>15}: D={r.D} S={r.S} Γ={r.gamma} total {r.gamma.total()}"
            f"  log-concave {bool(is_log_concave(r.gamma))}  matches enumeration {same}"
        )


if __name__ == "__main__":
    main()
