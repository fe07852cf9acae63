"""
Cup products of equivariant cochains through the bracket of the coefficients.

    (f u g)(x_1..x_{m+n}) = sum over (m,n)-shuffles s of
                            sign(s) [f(x_s(1)..x_s(m)), g(x_s(m+1)..x_s(m+n))]

computed level-wise, so M must carry Green-Lie brackets (``M.lie``).
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations

from .cohomology import Cochain, Complex, EquivCochain, complex_for
from .errors import ConstraintViolation, DescentFailure, DimensionMismatch, NoBracketOnM
from .exactq import ZERO, Matrix, solve
from .liecore import LieAlgebra, alt_dim, alt_index, alt_tuples
from .report import Report


@dataclass(frozen=True)
class ShuffleIndex:
    m: int
    n: int
    shuffles: tuple  # ((positions of the first block, positions of the second), sign)

    def __len__(self):
        return len(self.shuffles)


@lru_cache(maxsize=None)
def shuffles(m: int, n: int) -> ShuffleIndex:
    out = []
    for first in combinations(range(m + n), m):
        chosen = set(first)
        second = tuple(i for i in range(m + n) if i not in chosen)
        # inversions: pairs (a in first, b in second) with b < a
        inv = sum(1 for a in first for b in second if b < a)
        out.append(((first, second), -1 if inv % 2 else 1))
    return ShuffleIndex(m, n, tuple(out))


def cup_level(f: tuple, g: tuple, m: int, n: int, dim_l: int, coeff: LieAlgebra) -> tuple:
    """Cup of alternating maps on a Lie algebra of dim ``dim_l`` valued in ``coeff``."""
    dm = coeff.dim
    if len(f) != alt_dim(dim_l, m, dm) or len(g) != alt_dim(dim_l, n, dm):
        raise DimensionMismatch("cochain lengths do not match their degrees")
    idx_m, idx_n = alt_index(dim_l, m), alt_index(dim_l, n)
    # sparse value tables
    fv = {}
    for t, i in idx_m.items():
        v = {k: f[i * dm + k] for k in range(dm) if f[i * dm + k]}
        if v:
            fv[t] = v
    gv = {}
    for t, i in idx_n.items():
        v = {k: g[i * dm + k] for k in range(dm) if g[i * dm + k]}
        if v:
            gv[t] = v
    out = [ZERO] * alt_dim(dim_l, m + n, dm)
    if not fv or not gv:
        return tuple(out)
    sh = shuffles(m, n).shuffles
    for u_i, U in enumerate(alt_tuples(dim_l, m + n)):
        base = u_i * dm
        for (first, second), sign in sh:
            a = fv.get(tuple(U[i] for i in first))
            if a is None:
                continue
            b = gv.get(tuple(U[i] for i in second))
            if b is None:
                continue
            for i, x in a.items():
                for j, y in b.items():
                    for k, c in coeff.bracket_basis(i, j).items():
                        out[base + k] += sign * x * y * c
    return tuple(out)


def _require_bracket(M):
    if M.lie is None:
        raise NoBracketOnM("the coefficient module carries no Lie bracket; use M = L adjoint "
                           "or a module with an explicit bracket structure")
    return M.lie


def cup(f: EquivCochain, g: EquivCochain, L=None, M=None, *, cx: Complex | None = None,
        check=True) -> EquivCochain:
    """Level-wise cup product of two cochain pairs.

    With ``check`` set, a product of two constrained pairs is verified to be
    constrained again.
    """
    cx = cx or complex_for(L, M)
    lie = _require_bracket(cx.M)
    m, n = f.degree, g.degree
    top = cup_level(f.top, g.top, m, n, cx.dl_top, lie.top)
    bottom = cup_level(f.bottom, g.bottom, m, n, cx.dl_bottom, lie.bottom)
    out = EquivCochain(m + n, top, bottom)
    if check and cx.is_constrained(f) and cx.is_constrained(g) and not cx.is_constrained(out):
        raise ConstraintViolation(f"cup of constrained cochains of degrees {m}, {n} is not constrained: "
                                  f"{cx.violated_conditions(out)}")
    return out


def bottom_cup(f: Cochain, g: Cochain, L=None, M=None, *, cx: Complex | None = None) -> Cochain:
    cx = cx or complex_for(L, M)
    lie = _require_bracket(cx.M)
    return Cochain(f.degree + g.degree,
                   cup_level(f.coeffs, g.coeffs, f.degree, g.degree, cx.dl_bottom, lie.bottom))


def _sign(m):
    return -1 if m % 2 else 1


def check_leibniz(f: EquivCochain, g: EquivCochain, L=None, M=None, *, cx: Complex | None = None) -> Report:
    """b(f u g) = b f u g + (-1)^m f u b g on the top component, the bottom
    component of the pair, and for the bottom-level product."""
    cx = cx or complex_for(L, M)
    rep = Report()
    m = f.degree
    lhs = cx.d(cup(f, g, cx=cx, check=False))
    rhs1 = cup(cx.d(f), g, cx=cx, check=False)
    rhs2 = cup(f, cx.d(g), cx=cx, check=False).scale(_sign(m))
    rhs = rhs1 + rhs2
    if lhs.top != rhs.top:
        rep.add("leibniz (1) top", f"degrees ({m}, {g.degree})")
    if lhs.bottom != rhs.bottom:
        rep.add("leibniz (2) pair bottom", f"degrees ({m}, {g.degree})")
    fe, ge = f.restriction(), g.restriction()
    lhs_e = cx.d(bottom_cup(fe, ge, cx=cx))
    rhs_e = bottom_cup(cx.d(fe), ge, cx=cx) + bottom_cup(fe, cx.d(ge), cx=cx).scale(_sign(m))
    if lhs_e != rhs_e:
        rep.add("leibniz (3) bottom", f"degrees ({m}, {g.degree})")
    return rep


def check_pairing_axioms(f: EquivCochain, g: EquivCochain, L=None, M=None, *,
                         cx: Complex | None = None) -> Report:
    """Restriction, conjugation and the two transfer Frobenius identities for cup.

    ``f`` and ``g`` should be constrained cochains; the Frobenius identities
    use their restriction/conjugation compatibility.
    """
    cx = cx or complex_for(L, M)
    rep = Report()
    m, n = f.degree, g.degree
    fe, ge = f.restriction(), g.restriction()
    fg = cup(f, g, cx=cx, check=False)
    if fg.restriction() != bottom_cup(fe, ge, cx=cx):
        rep.add("pairing: restriction", "R(f u g) != R f u R g", (m, n))
    lhs = bottom_cup(cx.conjugate(fe), cx.conjugate(ge), cx=cx)
    if lhs != cx.conjugate(bottom_cup(fe, ge, cx=cx)):
        rep.add("pairing: conjugation", "C f u C g != C (f u g)", (m, n))
    lhs = cup(cx.transfer(fe), g, cx=cx, check=False)
    if lhs != cx.transfer(bottom_cup(fe, ge, cx=cx)):
        rep.add("pairing: transfer left", "T(f_e) u g != T(f_e u R g)", (m, n))
    lhs = cup(f, cx.transfer(ge), cx=cx, check=False)
    if lhs != cx.transfer(bottom_cup(fe, ge, cx=cx)):
        rep.add("pairing: transfer right", "f u T(g_e) != T(R f u g_e)", (m, n))
    return rep


def _coords(frame_vectors, ambient, dim, w, what):
    frame = Matrix.from_columns(frame_vectors, ambient)
    x = solve(frame, w)
    if x is None:
        raise DescentFailure(f"{what}: product of cocycles is not a cocycle")
    return x[:dim]


def graded_cohomology_table(L=None, M=None, max_degree: int = 2, *, cx: Complex | None = None) -> dict:
    """Cohomology dimensions and the induced products H^m x H^n -> H^{m+n}.

    Products are matrices with rows indexed by the target representatives and
    column ``a * dim H^n + b`` for the pair of representatives (a, b).  Graded
    antisymmetry is measured (``antisymmetry_defect``), not enforced.
    """
    cx = cx or complex_for(L, M)
    _require_bracket(cx.M)
    H = {k: cx.cohomology(k) for k in range(max_degree + 1)}
    table = {"dims": {k: {"top": H[k].dim_top, "bottom": H[k].dim_bottom} for k in H}, "products": {}}
    for m in range(max_degree + 1):
        for n in range(max_degree + 1 - m):
            k = m + n
            Hm, Hn, Hk = H[m], H[n], H[k]
            entry = {}
            for level in ("top", "bottom"):
                if level == "top":
                    reps_m = Hm.representatives_top
                    reps_n = Hn.representatives_top
                    b_m, b_n = Hm.coboundaries_top, Hn.coboundaries_top
                    z_m, z_n = Hm.cocycles_top, Hn.cocycles_top
                    z_k, b_k = Hk.cocycles_top, Hk.coboundaries_top
                    frame = [f.vector for f in Hk.representatives_top] + list(b_k.basis)
                    dim_k = Hk.dim_top

                    def prod(a, b, m=m, n=n):
                        return cup(EquivCochain.from_vector(m, a, cx.top_len(m)),
                                   EquivCochain.from_vector(n, b, cx.top_len(n)), cx=cx).vector
                    vm = [f.vector for f in reps_m]
                    vn = [f.vector for f in reps_n]
                else:
                    b_m, b_n = Hm.coboundaries_bottom, Hn.coboundaries_bottom
                    z_m, z_n = Hm.cocycles_bottom, Hn.cocycles_bottom
                    z_k, b_k = Hk.cocycles_bottom, Hk.coboundaries_bottom
                    frame = [g.coeffs for g in Hk.representatives_bottom] + list(b_k.basis)
                    dim_k = Hk.dim_bottom

                    def prod(a, b, m=m, n=n):
                        return bottom_cup(Cochain(m, a), Cochain(n, b), cx=cx).coeffs
                    vm = [g.coeffs for g in Hm.representatives_bottom]
                    vn = [g.coeffs for g in Hn.representatives_bottom]
                # well-definedness on cocycle x coboundary and coboundary x cocycle
                for a in b_m.basis:
                    for b in z_n.basis:
                        if prod(a, b) not in b_k:
                            raise DescentFailure(f"{level}: B^{m} u Z^{n} escapes B^{k}")
                for a in z_m.basis:
                    for b in b_n.basis:
                        if prod(a, b) not in b_k:
                            raise DescentFailure(f"{level}: Z^{m} u B^{n} escapes B^{k}")
                cols = []
                for a in vm:
                    for b in vn:
                        w = prod(a, b)
                        if w not in z_k:
                            raise DescentFailure(f"{level}: Z^{m} u Z^{n} escapes Z^{k}")
                        cols.append(_coords(frame, z_k.ambient_dim, dim_k, w, level))
                mat = Matrix.from_columns(cols, dim_k) if cols else Matrix.zeros(dim_k, len(vm) * len(vn))
                defect = 0
                if m == n:
                    # graded antisymmetry: a u b = -(-1)^{mn} b u a
                    s = _sign(m * n)
                    d = len(vn)
                    for i in range(len(vm)):
                        for j in range(len(vn)):
                            if any(x + s * y for x, y in zip(mat.column(i * d + j), mat.column(j * d + i))):
                                defect += 1
                entry[level] = {"matrix": mat, "antisymmetry_defect": defect}
            table["products"][(m, n)] = entry
    return table
