"""Run the CSS counterexample screen on a few classic inputs.

Cut/flow pairs of small graphs are graphic by construction, so the screen
rules them out; the Hamming [7,4] pair survives every excluded-minor test
and comes back INCONCLUSIVE.
"""

from __future__ import annotations

from stablulc.embedding import complete_bipartite, complete_graph
from stablulc.gf2 import BitMatrix, BitVector, nullspace, rref
from stablulc.matroid import css_counterexample_screen


def cut_flow_pair(g):
    cut_space, _, _ = rref(g.incidence_matrix())
    return cut_space, nullspace(cut_space)


def main() -> None:
    hamming_checks = BitMatrix(7, (BitVector.from_string("1010101"),
                                   BitVector.from_string("0110011"),
                                   BitVector.from_string("0001111")))
    cases = [
        ("K4 cut/flow", *cut_flow_pair(complete_graph(4))),
        ("K3,3 cut/flow", *cut_flow_pair(complete_bipartite(3, 3))),
        ("Hamming [7,4]", nullspace(hamming_checks), hamming_checks),
    ]
    for name, g_mat, h_mat in cases:
        res = css_counterexample_screen(g_mat, h_mat)
        print(f"{name}: {res.line()} (n={res.n}, d={res.d},"
              f" d*={res.d_dual})")


if __name__ == "__main__":
    main()
