"""
Singular extensions 0 -> M -> B -> L -> 0 of Green functors of Lie type.

B = M (+) L at both levels, M coordinates first, with bracket

    [(u1, x1), (u2, x2)] = (x1.u2 - x2.u1 + f(x1, x2), [x1, x2])

for a 2-cochain pair f.  B satisfies every axiom exactly when f is a
constrained 2-cocycle, and two cocycles give equivalent extensions exactly
when they differ by a coboundary.
"""
from __future__ import annotations

from dataclasses import dataclass, field

from .cohomology import CONDITIONS, Complex, EquivCochain, complex_for
from .errors import (DimensionMismatch, NotACocycle, PreimageFailure, SectionNotCompatible)
from .exactq import ZERO, Matrix, block_diag, hstack, kernel_basis, rank, solve, vstack
from .liecore import LieAlgebra, alt_index, bracket, vec_from
from .mackey import (GreenLieFunctor, GreenLieMorphism, LieBimodule, validate_green_lie,
                     validate_mackey_morphism, validate_morphism)
from .report import Report


@dataclass(eq=False)
class Extension:
    L: GreenLieFunctor
    M: LieBimodule
    B: GreenLieFunctor
    i: GreenLieMorphism  # M -> B, a Mackey morphism
    j: GreenLieMorphism  # B -> L
    s: GreenLieMorphism | None = None  # L -> B, linear section
    cocycle: EquivCochain | None = None
    provenance: str = ""
    report: Report = field(default_factory=Report)


def _level_algebra(dl, dm, L_alg: LieAlgebra, act, f_coeffs, names, check):
    """M (+) L with the twisted bracket; ``act`` is the left representation."""
    idx = alt_index(dl, 2)
    br = {}
    cols = act.action_columns()
    for x in range(dl):
        for a in range(dm):
            row = dict(cols[x][a])
            if row:
                br[dm + x, a] = row
    for x in range(dl):
        for y in range(x + 1, dl):
            row = {}
            base = idx[x, y] * dm
            for k in range(dm):
                if f_coeffs[base + k]:
                    row[k] = f_coeffs[base + k]
            for k, c in L_alg.bracket_basis(x, y).items():
                row[dm + k] = c
            if row:
                br[dm + x, dm + y] = row
    return LieAlgebra.from_brackets(dm + dl, br, names, check=check)


def _names(M_dim, L_alg):
    return [f"m{k}" for k in range(M_dim)] + list(L_alg.basis_names)


def _assemble(L: GreenLieFunctor, M: LieBimodule, f: EquivCochain, check: bool):
    cx = complex_for(L, M)
    top = _level_algebra(cx.dl_top, cx.dm_top, L.top, M.left_top, f.top, _names(cx.dm_top, L.top), check)
    bottom = _level_algebra(cx.dl_bottom, cx.dm_bottom, L.bottom, M.left_bottom, f.bottom,
                            _names(cx.dm_bottom, L.bottom), check)
    mk = M.mackey
    r = block_diag(mk.r, L.r)
    t = block_diag(mk.t, L.t)
    c = block_diag(mk.c, L.c)
    return cx, (L.p, top, bottom, r, t, c)


def _canonical_maps(cx: Complex):
    def inc(dm, dl):
        return vstack([Matrix.identity(dm), Matrix.zeros(dl, dm)], dm)

    def proj(dm, dl):
        return hstack([Matrix.zeros(dl, dm), Matrix.identity(dl)], dl)

    def sec(dm, dl):
        return vstack([Matrix.zeros(dm, dl), Matrix.identity(dl)], dl)

    a, b = (cx.dm_top, cx.dl_top), (cx.dm_bottom, cx.dl_bottom)
    return (GreenLieMorphism(inc(*a), inc(*b)), GreenLieMorphism(proj(*a), proj(*b)),
            GreenLieMorphism(sec(*a), sec(*b)))


def build_extension(L: GreenLieFunctor, M: LieBimodule, f: EquivCochain, *, provenance="") -> Extension:
    """The extension B_f with its canonical inclusion, projection and section.

    Raises :class:`NotACocycle` listing the violated conditions; the error's
    ``report`` holds the axioms the resulting B breaks.
    """
    if f.degree != 2:
        raise DimensionMismatch("an extension needs a degree-2 cochain")
    cx = complex_for(L, M)
    if len(f.top) != cx.top_len(2) or len(f.bottom) != cx.bottom_len(2):
        raise DimensionMismatch("cochain does not match the functor and module dimensions")
    bad = cx.violated_conditions(f)
    if bad:
        B = build_unchecked(L, M, f)
        numbers = [CONDITIONS[b] for b in bad]
        raise NotACocycle(f"not a 2-cocycle: fails condition(s) {numbers} ({', '.join(bad)}); "
                          f"B violates {B.report.axioms()}", numbers, B.report)
    _, args = _assemble(L, M, f, check=True)
    B = GreenLieFunctor(*args, name="extension")
    i, j, s = _canonical_maps(cx)
    E = Extension(L, M, B, i, j, s, cocycle=f, provenance=provenance or "built from a 2-cocycle")
    E.report = validate_extension(E)
    return E


def build_unchecked(L, M, f: EquivCochain) -> Extension:
    """B_f without validation; ``report`` lists every broken axiom of B."""
    cx, args = _assemble(L, M, f, check=False)
    B = GreenLieFunctor.unchecked(*args, name="extension (unchecked)")
    i, j, s = _canonical_maps(cx)
    E = Extension(L, M, B, i, j, s, cocycle=f, provenance="unchecked")
    E.report = validate_green_lie(B)
    return E


def section_report(E: Extension) -> Report:
    rep = Report()
    s, B, L = E.s, E.B, E.L
    if s is None:
        rep.add("section", "extension carries no section")
        return rep
    checks = [
        ("j o s = id (top)", E.j.f_top @ s.f_top, Matrix.identity(L.top.dim)),
        ("j o s = id (bottom)", E.j.f_bottom @ s.f_bottom, Matrix.identity(L.bottom.dim)),
        ("(a) r_B o s_top = s_bottom o r_L", B.r @ s.f_top, s.f_bottom @ L.r),
        ("(b) t_B o s_bottom = s_top o t_L", B.t @ s.f_bottom, s.f_top @ L.t),
        ("(c) c_B o s_bottom = s_bottom o c_L", B.c @ s.f_bottom, s.f_bottom @ L.c),
    ]
    for axiom, lhs, rhs in checks:
        if lhs != rhs:
            rep.add(axiom, "section condition fails")
    return rep


def validate_extension(E: Extension) -> Report:
    rep = Report()
    rep.extend(validate_green_lie(E.B), prefix="B: ")
    for level, i, j, dm, dl, db in (
            ("top", E.i.f_top, E.j.f_top, E.M.top_dim, E.L.top.dim, E.B.top.dim),
            ("bottom", E.i.f_bottom, E.j.f_bottom, E.M.bottom_dim, E.L.bottom.dim, E.B.bottom.dim)):
        if rank(i) != dm:
            rep.add(f"exactness ({level})", "i is not injective")
        if rank(j) != dl:
            rep.add(f"exactness ({level})", "j is not surjective")
        if not (j @ i).is_zero() or dm + dl != db:
            rep.add(f"exactness ({level})", "ker j != im i")
    rep.extend(validate_morphism(E.B, E.L, E.j), prefix="j: ")
    rep.extend(validate_mackey_morphism(E.M.mackey, E.B.mackey, E.i.f_top, E.i.f_bottom), prefix="i: ")
    if E.s is not None:
        rep.extend(section_report(E))
    return rep


def _preimage(i: Matrix, v):
    x = solve(i, v)
    if x is None:
        raise PreimageFailure("bracket defect of the section is not in the image of M")
    return x


def extract_cocycle(E: Extension) -> EquivCochain:
    """f(x, y) = i^{-1}([s x, s y]_B - s[x, y]_L) at both levels."""
    bad = section_report(E)
    if not bad.ok:
        raise SectionNotCompatible(f"section is not compatible: {bad}")
    out = []
    for Lalg, Balg, s, i, dm in ((E.L.top, E.B.top, E.s.f_top, E.i.f_top, E.M.top_dim),
                                 (E.L.bottom, E.B.bottom, E.s.f_bottom, E.i.f_bottom, E.M.bottom_dim)):
        dl = Lalg.dim
        cols = s.columns()
        coeffs = []
        for x in range(dl):
            for y in range(x + 1, dl):
                lhs = bracket(Balg, cols[x], cols[y])
                rhs = s @ vec_from(Lalg.bracket_basis(x, y), dl)
                coeffs.extend(_preimage(i, [a - b for a, b in zip(lhs, rhs)]))
        out.append(tuple(coeffs))
    f = EquivCochain(2, out[0], out[1])
    cx = complex_for(E.L, E.M)
    bad = cx.violated_conditions(f)
    if bad:
        raise NotACocycle(f"extracted cochain fails {bad}", [CONDITIONS[b] for b in bad])
    return f


def cochain_matrices(h: EquivCochain, cx: Complex):
    """Degree-1 pair as the matrices (M(C_p) x L(C_p), M(e) x L(e))."""
    def mat(coeffs, dm, dl):
        return Matrix.from_entries(dm, dl, {(k, x): coeffs[x * dm + k] for x in range(dl) for k in range(dm)})
    return mat(h.top, cx.dm_top, cx.dl_top), mat(h.bottom, cx.dm_bottom, cx.dl_bottom)


def shift_section(E: Extension, h: EquivCochain) -> Extension:
    """Same extension with section s' = s + i o h."""
    cx = complex_for(E.L, E.M)
    ht, hb = cochain_matrices(h, cx)
    s = GreenLieMorphism(E.s.f_top + E.i.f_top @ ht, E.s.f_bottom + E.i.f_bottom @ hb)
    F = Extension(E.L, E.M, E.B, E.i, E.j, s, cocycle=None, provenance=f"{E.provenance}; shifted section")
    F.report = validate_extension(F)
    return F


def find_equivalence(f: EquivCochain, g: EquivCochain, L, M, *, constraints="all"):
    """A degree-1 pair h with b'h = f - g, or None when [f] != [g].

    ``constraints="all"`` searches the constrained 1-cochains; ``"restriction"``
    only imposes r_M h_top = h_e r_L, to test whether that alone is enough.
    """
    cx = complex_for(L, M)
    target = (f - g).vector
    if constraints == "all":
        K = cx.top_basis(1)
    elif constraints == "restriction":
        blocks = dict(cx.constraint_blocks(1))
        K = kernel_basis(blocks["restriction"]).matrix()
    else:
        raise ValueError("constraints must be 'all' or 'restriction'")
    alpha = solve(cx.pair_coboundary(1) @ K, target)
    if alpha is None:
        return None
    return EquivCochain.from_vector(1, K @ alpha, cx.top_len(1))


def equivalence_map(E_f: Extension, h: EquivCochain) -> GreenLieMorphism:
    """beta(u, x) = (u + h(x), x) at both levels."""
    cx = complex_for(E_f.L, E_f.M)
    ht, hb = cochain_matrices(h, cx)

    def level(H, dm, dl):
        return vstack([hstack([Matrix.identity(dm), H], dm), hstack([Matrix.zeros(dl, dm), Matrix.identity(dl)], dl)],
                      dm + dl)
    return GreenLieMorphism(level(ht, cx.dm_top, cx.dl_top), level(hb, cx.dm_bottom, cx.dl_bottom))


def verify_equivalence(E_f: Extension, E_g: Extension, beta: GreenLieMorphism) -> Report:
    """beta: B_f -> B_g is an isomorphism of Green functors over the identity of M and L."""
    rep = validate_morphism(E_f.B, E_g.B, beta)
    for level, b, i_f, i_g, j_f, j_g in (
            ("top", beta.f_top, E_f.i.f_top, E_g.i.f_top, E_f.j.f_top, E_g.j.f_top),
            ("bottom", beta.f_bottom, E_f.i.f_bottom, E_g.i.f_bottom, E_f.j.f_bottom, E_g.j.f_bottom)):
        if rank(b) != b.rows or b.rows != b.cols:
            rep.add(f"beta invertible ({level})", "beta is not an isomorphism")
        if b @ i_f != i_g:
            rep.add(f"beta o i_f = i_g ({level})", "diagram does not commute on M")
        if j_g @ b != j_f:
            rep.add(f"j_g o beta = j_f ({level})", "diagram does not commute on L")
    return rep


def search_equivalence(E_f: Extension, E_g: Extension):
    """Independent route: solve for beta = [[1, H], [0, 1]] directly.

    Each unknown entry H[k, c] sends x_c to m_k.  Because M brackets to zero
    inside B_g, the homomorphism and r/t/c-commutation conditions are affine
    in these entries.  Only the bracket tables and structure maps of B_f and
    B_g are used.  Returns the morphism or None.
    """
    dmt, dmb = E_f.M.top_dim, E_f.M.bottom_dim
    dlt, dlb = E_f.L.top.dim, E_f.L.bottom.dim
    for Bg, dm in ((E_g.B.top, dmt), (E_g.B.bottom, dmb)):
        for a in range(dm):
            for b in range(dm):
                assert not Bg.bracket_basis(a, b), "M must be abelian inside B"
    n_top = dmt * dlt
    n = n_top + dmb * dlb
    top = (0, dmt, dlt)
    bot = (n_top, dmb, dlb)

    def unk(level, k, c):
        off, dm, _ = level
        return off + c * dm + k

    rows, rhs = [], []

    def emit(const, lin):
        for comp in set(const) | set(lin):
            row = {u: x for u, x in lin.get(comp, {}).items() if x}
            rows.append(row)
            rhs.append(-const.get(comp, ZERO))

    def add(lin, comp, u, x):
        d = lin.setdefault(comp, {})
        d[u] = d.get(u, ZERO) + x

    # beta[a, b]_f = [beta a, beta b]_g on basis pairs
    for level, Bf, Bg in ((top, E_f.B.top, E_g.B.top), (bot, E_f.B.bottom, E_g.B.bottom)):
        _, dm, dl = level
        for p in range(Bf.dim):
            for q in range(p + 1, Bf.dim):
                fpq, gpq = Bf.bracket_basis(p, q), Bg.bracket_basis(p, q)
                const = {k: fpq.get(k, ZERO) - gpq.get(k, ZERO) for k in set(fpq) | set(gpq)}
                lin = {}
                for c in range(dl):
                    coef = fpq.get(dm + c)
                    if coef:
                        for k in range(dm):
                            add(lin, k, unk(level, k, c), coef)
                if p >= dm:
                    for k in range(dm):
                        for comp, v in Bg.bracket_basis(k, q).items():
                            add(lin, comp, unk(level, k, p - dm), -v)
                if q >= dm:
                    for k in range(dm):
                        for comp, v in Bg.bracket_basis(p, k).items():
                            add(lin, comp, unk(level, k, q - dm), -v)
                emit(const, lin)

    # A_g (1 + N_src) = (1 + N_dst) A_f for A in r, t, c
    for A_g, A_f, src, dst in ((E_g.B.r, E_f.B.r, top, bot), (E_g.B.t, E_f.B.t, bot, top),
                               (E_g.B.c, E_f.B.c, bot, bot)):
        _, dm_s, dl_s = src
        _, dm_d, dl_d = dst
        for i in range(A_g.rows):
            for j in range(A_g.cols):
                const = {0: A_g[i, j] - A_f[i, j]}
                lin = {}
                if j >= dm_s:
                    for k in range(dm_s):
                        x = A_g[i, k]
                        if x:
                            add(lin, 0, unk(src, k, j - dm_s), x)
                if i < dm_d:
                    for l in range(dm_d, dm_d + dl_d):
                        x = A_f[l, j]
                        if x:
                            add(lin, 0, unk(dst, i, l - dm_d), -x)
                emit(const, lin)

    A = Matrix(len(rows), n, rows)
    x = solve(A, rhs)
    if x is None:
        return None
    return _beta_from(x, n_top, dmt, dlt, dmb, dlb)


def _beta_from(x, n_top, dmt, dlt, dmb, dlb):
    def level(off, dm, dl):
        H = Matrix.from_entries(dm, dl, {(k, c): x[off + c * dm + k] for c in range(dl) for k in range(dm)})
        return vstack([hstack([Matrix.identity(dm), H], dm),
                       hstack([Matrix.zeros(dl, dm), Matrix.identity(dl)], dl)], dm + dl)
    return GreenLieMorphism(level(0, dmt, dlt), level(n_top, dmb, dlb))


def check_action_identity(E: Extension) -> Report:
    """i(x.u) = [s(x), i(u)]_B on all basis pairs at both levels."""
    rep = Report()
    for level, Balg, act, s, i, dl, dm in (
            ("top", E.B.top, E.M.left_top, E.s.f_top, E.i.f_top, E.L.top.dim, E.M.top_dim),
            ("bottom", E.B.bottom, E.M.left_bottom, E.s.f_bottom, E.i.f_bottom, E.L.bottom.dim, E.M.bottom_dim)):
        scols, icols = s.columns(), i.columns()
        for x in range(dl):
            for u in range(dm):
                lhs = i @ act.action[x].column(u)
                rhs = bracket(Balg, scols[x], icols[u])
                if lhs != rhs:
                    rep.add(f"i(x.u) = [s x, i u] ({level})", "fails", (x, u))
    return rep


def classify_extensions(L, M) -> dict:
    """dim H^2 at both levels, a representative cocycle basis and their extensions.

    Equivalence classes of M-split extensions form a vector space of dimension
    ``dim_top``; over Q there are infinitely many classes once it is positive.
    """
    cx = complex_for(L, M)
    H2 = cx.cohomology(2)
    reps = H2.representatives_top
    return {
        "dim_top": H2.dim_top,
        "dim_bottom": H2.dim_bottom,
        "representatives": reps,
        "extensions": [build_extension(L, M, f, provenance=f"H^2 representative {k}") for k, f in enumerate(reps)],
        "trivial": build_extension(L, M, EquivCochain(2, (ZERO,) * cx.top_len(2), (ZERO,) * cx.bottom_len(2)),
                                   provenance="semidirect product"),
        "summary": (f"M-split extensions up to equivalence form a Q-vector space of dimension {H2.dim_top}"
                    + (" (the trivial extension only)" if H2.dim_top == 0 else "")),
    }
