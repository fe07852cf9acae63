"""Cohomology dimensions for every catalog example with trivial and adjoint coefficients.

    python3 scripts/cohomology_survey.py [--max-degree 3]
"""
import argparse
import time

from greenlie.cohomology import complex_for
from greenlie.constructions import build_example
from greenlie.mackey import LieBimodule

EXAMPLES = [
    ("heisenberg", "2", "2"), ("heisenberg", "3", "2"), ("heisenberg", "3", "3"),
    ("sl-transpose", "2"), ("sl-transpose", "3"), ("fixed-point", "sl2"), ("fixed-point", "h5"),
    ("direct-sum", "h3", "2"), ("direct-sum", "h3", "3"), ("derivation", "dual-numbers"),
]


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--max-degree", type=int, default=3)
    args = ap.parse_args()
    print(f"{'example':28} {'module':9} H^n (top, bottom), n = 0..{args.max_degree}")
    for ex in EXAMPLES:
        L = build_example(*ex)
        for M in (LieBimodule.trivial(L, 1), LieBimodule.adjoint(L)):
            t = time.perf_counter()
            cx = complex_for(L, M)
            dims = [cx.cohomology(n, induced=False) for n in range(args.max_degree + 1)]
            row = " ".join(f"({h.dim_top},{h.dim_bottom})" for h in dims)
            print(f"{' '.join(ex):28} {M.name:9} {row}   [{time.perf_counter() - t:.2f}s]")


if __name__ == "__main__":
    main()
