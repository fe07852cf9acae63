"""Does r-compatibility alone of the 1-cochain h decide equivalence of extensions?

For each example, compare the coboundaries of h satisfying only
r_M h_top = h_e r_L with the coboundaries of fully constrained h, inside the
constrained 2-cocycles.  If the two agree there, both searches give the same
equivalence relation on cocycles; δh may still leave the constrained space.
"""
from greenlie.cohomology import complex_for
from greenlie.constructions import build_example
from greenlie.exactq import Subspace, kernel_basis
from greenlie.mackey import LieBimodule

from cohomology_survey import EXAMPLES


def main():
    print(f"{'example':28} {'module':9} dimB2 dim(b'(K_r) ∩ Z2) dim b'(K_r) escapes")
    same = True
    for ex in EXAMPLES:
        L = build_example(*ex)
        for M in (LieBimodule.trivial(L, 1), LieBimodule.adjoint(L)):
            cx = complex_for(L, M)
            K = kernel_basis(dict(cx.constraint_blocks(1))["restriction"]).matrix()
            img = Subspace(cx.pair_len(2), list((cx.pair_coboundary(1) @ K).columns()))
            Z, B = cx.top_cocycles(2), cx.top_coboundaries(2)
            inter = img.dim + Z.dim - (img + Z).dim
            escapes = sum(1 for v in img.basis if v not in Z)
            same &= inter == B.dim
            print(f"{' '.join(ex):28} {M.name:9} {B.dim:5} {inter:16} {img.dim:12} {escapes:7}")
    print("restriction-only search agrees with the full one on Z2:", same)


if __name__ == "__main__":
    main()
