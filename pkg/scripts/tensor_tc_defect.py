"""Where the literal tensor/exterior product of Mackey data breaks t o c = t.

Builds both the literal quotient and the one with c-coinvariants imposed on
the top, for every catalog example, and lists the axioms each one breaks.
"""
from greenlie.constructions import build_example
from greenlie.products import exterior_product, tensor_product

from cohomology_survey import EXAMPLES


def main():
    for ex in EXAMPLES:
        L = build_example(*ex)
        for name, build in (("tensor", tensor_product), ("exterior", exterior_product)):
            lit = build(L, L, strict=False)
            co = build(L, L, coinvariants=True, strict=False)
            print(f"{' '.join(ex):28} p={L.p} {name:8} literal: {str(lit.report.axioms() or 'valid'):32} "
                  f"coinvariants: {str(co.report.axioms() or 'valid')}  dims top {lit.top.dim}->{co.top.dim}")


if __name__ == "__main__":
    main()
