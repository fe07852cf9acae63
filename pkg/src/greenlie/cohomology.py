"""
The equivariant Chevalley-Eilenberg complex of a Green functor of Lie type L
with coefficients in an L-bimodule M.

A degree-n cochain is a pair (f_top, f_bottom) of alternating n-maps
L(C_p) -> M(C_p) and L(e) -> M(e).  Pairs are flat vectors, top coordinates
first.  The constrained ("equivariant") cochains are the kernel of a stack of
linear conditions:

    conjugation      c_M f_e = f_e (c_L, ..., c_L)
    restriction      r_M f_top = f_e (r_L, ..., r_L)
    transfer-first   f_top(t x, a_2..a_n) = t_M f_e(x, r a_2, ..., r a_n)
    transfer-last    f_top(a_1..a_{n-1}, t x) = t_M f_e(r a_1, ..., x)

In degree 0 the conditions cut the pair space down to {(m, r_M m)}, which is
M(C_p).  The differential acts componentwise.
"""
from __future__ import annotations

from collections import OrderedDict
from dataclasses import dataclass, field
from itertools import combinations

from .errors import ConstraintNotPreserved, ConstraintViolation, DescentFailure, DimensionMismatch
from .exactq import (ZERO, Matrix, Subspace, block_diag, column_space, hstack, kernel_basis,
                     quotient_dim, solve, vstack)
from .liecore import alt_dim, alt_expand, alt_index, alt_tuples, ce_coboundary, pullback_matrix
from .mackey import GreenLieFunctor, LieBimodule

# condition numbers used in diagnostics for degree-2 cocycles
CONDITIONS = {
    "cocycle-top": 1,
    "cocycle-bottom": 2,
    "conjugation": 3,
    "restriction": 4,
    "transfer-first": 5,
    "transfer-last": 6,
}


@dataclass(frozen=True)
class Cochain:
    """An alternating n-map at a single level, as a flat coefficient vector."""
    degree: int
    coeffs: tuple

    def __add__(self, other):
        return Cochain(self.degree, tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    def __sub__(self, other):
        return Cochain(self.degree, tuple(a - b for a, b in zip(self.coeffs, other.coeffs)))

    def scale(self, c):
        return Cochain(self.degree, tuple(c * a for a in self.coeffs))

    def is_zero(self):
        return not any(self.coeffs)


@dataclass(frozen=True)
class EquivCochain:
    degree: int
    top: tuple
    bottom: tuple

    @classmethod
    def from_vector(cls, degree, v, top_len):
        v = tuple(v)
        return cls(degree, v[:top_len], v[top_len:])

    @property
    def vector(self) -> tuple:
        return self.top + self.bottom

    def restriction(self) -> Cochain:
        return Cochain(self.degree, self.bottom)

    def __add__(self, other):
        return EquivCochain(self.degree, tuple(a + b for a, b in zip(self.top, other.top)),
                            tuple(a + b for a, b in zip(self.bottom, other.bottom)))

    def __sub__(self, other):
        return EquivCochain(self.degree, tuple(a - b for a, b in zip(self.top, other.top)),
                            tuple(a - b for a, b in zip(self.bottom, other.bottom)))

    def scale(self, c):
        return EquivCochain(self.degree, tuple(c * a for a in self.top), tuple(c * a for a in self.bottom))

    def is_zero(self):
        return not any(self.top) and not any(self.bottom)


@dataclass(frozen=True)
class CochainSpace:
    degree: int
    top_space: Subspace
    bottom_dim: int
    top_len: int

    @property
    def bottom_space(self) -> Subspace:
        return Subspace.full(self.bottom_dim)


@dataclass
class CohomologyResult:
    degree: int
    dim_top: int
    dim_bottom: int
    representatives_top: list
    representatives_bottom: list
    induced_r: Matrix | None = None
    induced_t: Matrix | None = None
    induced_c: Matrix | None = None
    cocycles_top: Subspace | None = field(default=None, repr=False)
    coboundaries_top: Subspace | None = field(default=None, repr=False)
    cocycles_bottom: Subspace | None = field(default=None, repr=False)
    coboundaries_bottom: Subspace | None = field(default=None, repr=False)


def _cached(method):
    name = method.__name__

    def wrapper(self, n):
        key = (name, n)
        if key not in self._cache:
            self._cache[key] = method(self, n)
        return self._cache[key]

    wrapper.__name__ = name
    wrapper.__doc__ = method.__doc__
    return wrapper


class Complex:
    """All matrices of the complex for a fixed (L, M), computed on demand and cached."""

    def __init__(self, L: GreenLieFunctor, M: LieBimodule):
        if M.mackey.p != L.p:
            from .errors import PrimeMismatch
            raise PrimeMismatch(f"module prime {M.mackey.p} != functor prime {L.p}")
        if M.functor.top.dim != L.top.dim or M.functor.bottom.dim != L.bottom.dim:
            raise DimensionMismatch("bimodule was built over a functor of different dimensions")
        self.L = L
        self.M = M
        self.p = L.p
        self.dl_top, self.dl_bottom = L.top.dim, L.bottom.dim
        self.dm_top, self.dm_bottom = M.top_dim, M.bottom_dim
        self._cache = {}

    # sizes
    def top_len(self, n):
        return alt_dim(self.dl_top, n, self.dm_top)

    def bottom_len(self, n):
        return alt_dim(self.dl_bottom, n, self.dm_bottom)

    def pair_len(self, n):
        return self.top_len(n) + self.bottom_len(n)

    # constraints ---------------------------------------------------------

    def _transfer_block(self, n, first: bool) -> Matrix:
        """Rows f_top(t e_i, e_W) - t_M f_e(e_i, r e_W) (or with t e_i last)."""
        L, M = self.L, self.M
        tl, rl = L.t.column_items(), L.r.column_items()
        tm = M.mackey.t.column_items()
        top_idx = alt_index(self.dl_top, n)
        bot_idx = alt_index(self.dl_bottom, n)
        tl_len = self.top_len(n)
        dmt, dmb = self.dm_top, self.dm_bottom
        entries = {}
        row = 0
        for i in range(self.dl_bottom):
            for W in alt_tuples(self.dl_top, n - 1):
                top_args = [{w: 1} for w in W]
                bot_args = [rl[w] for w in W]
                if first:
                    top_args.insert(0, tl[i])
                    bot_args.insert(0, {i: 1})
                else:
                    top_args.append(tl[i])
                    bot_args.append({i: 1})
                top_exp = alt_expand(top_args)
                bot_exp = alt_expand(bot_args)
                for k in range(dmt):
                    r = row + k
                    for tup, a in top_exp.items():
                        key = (r, top_idx[tup] * dmt + k)
                        entries[key] = entries.get(key, ZERO) + a
                for tup, a in bot_exp.items():
                    base = tl_len + bot_idx[tup] * dmb
                    for k2 in range(dmb):
                        for k, b in tm[k2].items():
                            key = (row + k, base + k2)
                            entries[key] = entries.get(key, ZERO) - a * b
                row += dmt
        return Matrix.from_entries(row, self.pair_len(n), entries)

    @_cached
    def constraint_blocks(self, n):
        """``[(label, matrix)]`` over the pair space of degree n."""
        L, M = self.L, self.M
        tl, bl = self.top_len(n), self.bottom_len(n)
        id_lt, id_lb = Matrix.identity(self.dl_top), Matrix.identity(self.dl_bottom)
        id_mb = Matrix.identity(self.dm_bottom)
        conj = pullback_matrix(n, id_lb, M.mackey.c) - pullback_matrix(n, L.c, id_mb)
        blocks = [("conjugation", hstack([Matrix.zeros(bl, tl), conj], bl))]
        restr_top = pullback_matrix(n, id_lt, M.mackey.r)
        restr_bot = pullback_matrix(n, L.r, id_mb)
        blocks.append(("restriction", hstack([restr_top, -restr_bot], restr_top.rows)))
        if n >= 1:
            blocks.append(("transfer-first", self._transfer_block(n, True)))
            blocks.append(("transfer-last", self._transfer_block(n, False)))
        return blocks

    @_cached
    def constraint_matrix(self, n) -> Matrix:
        return vstack([m for _, m in self.constraint_blocks(n)], self.pair_len(n))

    @_cached
    def top_space(self, n) -> Subspace:
        return kernel_basis(self.constraint_matrix(n))

    @_cached
    def top_basis(self, n) -> Matrix:
        """Basis of the constrained pair space, as columns."""
        return self.top_space(n).matrix()

    def cochain_space(self, n) -> CochainSpace:
        return CochainSpace(n, self.top_space(n), self.bottom_len(n), self.top_len(n))

    def violated_conditions(self, f: EquivCochain) -> list:
        """Labels of the constraint families and cocycle conditions that ``f`` fails."""
        n = f.degree
        v = f.vector
        out = [label for label, m in self.constraint_blocks(n) if any(m @ v)]
        if any(ce_coboundary(self.L.top, self.M.left_top, n) @ f.top):
            out.append("cocycle-top")
        if any(self.bottom_coboundary(n) @ f.bottom):
            out.append("cocycle-bottom")
        return sorted(out, key=CONDITIONS.get)

    def is_constrained(self, f: EquivCochain) -> bool:
        return not any(self.constraint_matrix(f.degree) @ f.vector)

    # differentials -------------------------------------------------------

    @_cached
    def bottom_coboundary(self, n) -> Matrix:
        return ce_coboundary(self.L.bottom, self.M.left_bottom, n)

    @_cached
    def top_level_coboundary(self, n) -> Matrix:
        return ce_coboundary(self.L.top, self.M.left_top, n)

    @_cached
    def pair_coboundary(self, n) -> Matrix:
        """Componentwise differential on the full pair space (unconstrained)."""
        return block_diag(self.top_level_coboundary(n), self.bottom_coboundary(n))

    @_cached
    def constrained_coboundary(self, n) -> Matrix:
        """b'_n restricted to the constrained cochains: columns are images of the basis."""
        return self.pair_coboundary(n) @ self.top_basis(n)

    def coboundary_matrix(self, n, level="top") -> Matrix:
        """The differential b'_n (level 'top', on pairs) or b_n (level 'bottom').

        For the top level in degree 0 the domain is M(C_p) itself, sending m
        to the pair (a -> a.m, x -> x.r(m)).
        """
        if level == "bottom":
            return self.bottom_coboundary(n)
        if level != "top":
            raise ValueError(f"level must be 'top' or 'bottom', got {level!r}")
        if n == 0:
            embed = vstack([Matrix.identity(self.dm_top), self.M.mackey.r], self.dm_top)
            return self.pair_coboundary(0) @ embed
        return self.pair_coboundary(n)

    def check_preservation(self, n):
        """b'_n maps constrained n-cochains to constrained (n+1)-cochains."""
        key = ("preserved", n)
        if key in self._cache:
            return
        image = self.constrained_coboundary(n)
        residual = self.constraint_matrix(n + 1) @ image
        if not residual.is_zero():
            blocks = self.constraint_blocks(n + 1)
            bad = [label for label, m in blocks if not (m @ image).is_zero()]
            raise ConstraintNotPreserved(
                f"b'_{n} leaves the constrained cochains: {', '.join(bad)} fails in degree {n + 1}")
        self._cache[key] = True

    # cohomology ------------------------------------------------------------

    @_cached
    def top_cocycles(self, n) -> Subspace:
        K = self.top_basis(n)
        ker = kernel_basis(self.constrained_coboundary(n))
        return Subspace(self.pair_len(n), [K @ z for z in ker.basis])

    @_cached
    def top_coboundaries(self, n) -> Subspace:
        if n == 0:
            return Subspace.zero(self.pair_len(0))
        self.check_preservation(n - 1)
        return column_space(self.constrained_coboundary(n - 1))

    @_cached
    def bottom_cocycles(self, n) -> Subspace:
        return kernel_basis(self.bottom_coboundary(n))

    @_cached
    def bottom_coboundaries(self, n) -> Subspace:
        if n == 0:
            return Subspace.zero(self.bottom_len(0))
        return column_space(self.bottom_coboundary(n - 1))

    def cohomology(self, n, *, induced=True) -> CohomologyResult:
        if n < 0:
            raise ValueError("degree must be non-negative")
        self.check_preservation(n)
        zt, bt = self.top_cocycles(n), self.top_coboundaries(n)
        zb, bb = self.bottom_cocycles(n), self.bottom_coboundaries(n)
        dim_t, reps_t = quotient_dim(zt, bt)
        dim_b, reps_b = quotient_dim(zb, bb)
        tl = self.top_len(n)
        res = CohomologyResult(
            n, dim_t, dim_b,
            [EquivCochain.from_vector(n, v, tl) for v in reps_t],
            [Cochain(n, tuple(v)) for v in reps_b],
            cocycles_top=zt, coboundaries_top=bt, cocycles_bottom=zb, coboundaries_bottom=bb)
        if induced:
            res.induced_r, res.induced_t, res.induced_c = self._induced(res)
        return res

    # R, T, conjugation on cochains -------------------------------------------

    @_cached
    def restriction_matrix(self, n) -> Matrix:
        tl, bl = self.top_len(n), self.bottom_len(n)
        return hstack([Matrix.zeros(bl, tl), Matrix.identity(bl)], bl)

    @_cached
    def conjugation_matrix(self, n) -> Matrix:
        """theta -> c_M o theta o (c_L^{-1} in every slot) on bottom cochains."""
        return pullback_matrix(n, self.L.mackey.c_inverse(), self.M.mackey.c)

    @_cached
    def transfer_matrix(self, n) -> Matrix:
        """gamma -> (t_M o gamma o r_L, sum_k c_M^k o gamma o c_L^{-k})."""
        L, M = self.L, self.M
        mu = pullback_matrix(n, L.r, M.mackey.t)
        delta = Matrix.zeros(self.bottom_len(n), self.bottom_len(n))
        conj = self.conjugation_matrix(n)
        power = Matrix.identity(self.bottom_len(n))
        for _ in range(self.p):
            delta = delta + power
            power = conj @ power
        T = vstack([mu, delta], self.bottom_len(n))
        residual = self.constraint_matrix(n) @ T
        if not residual.is_zero():
            bad = [label for label, m in self.constraint_blocks(n) if not (m @ T).is_zero()]
            raise ConstraintViolation(f"transfer of a degree-{n} cochain violates: {', '.join(bad)}")
        return T

    def restrict(self, f: EquivCochain) -> Cochain:
        return f.restriction()

    def transfer(self, g: Cochain) -> EquivCochain:
        return EquivCochain.from_vector(g.degree, self.transfer_matrix(g.degree) @ g.coeffs,
                                        self.top_len(g.degree))

    def conjugate(self, g: Cochain) -> Cochain:
        return Cochain(g.degree, self.conjugation_matrix(g.degree) @ g.coeffs)

    def _induced(self, res: CohomologyResult):
        n = res.degree
        reps_t = [f.vector for f in res.representatives_top]
        reps_b = [g.coeffs for g in res.representatives_bottom]
        R, T, C = self.restriction_matrix(n), self.transfer_matrix(n), self.conjugation_matrix(n)

        def descend(name, mat, reps_src, b_src, reps_dst, b_dst, z_dst, dim_dst):
            for v in b_src.basis:
                if (mat @ v) not in b_dst:
                    raise DescentFailure(f"{name} sends a degree-{n} coboundary outside the coboundaries")
            frame = Matrix.from_columns(list(reps_dst) + list(b_dst.basis), b_dst.ambient_dim)
            cols = []
            for v in reps_src:
                w = mat @ v
                if w not in z_dst:
                    raise DescentFailure(f"{name} sends a degree-{n} cocycle outside the cocycles")
                x = solve(frame, w)
                if x is None:
                    raise DescentFailure(f"{name}: image is not expressible in the cohomology basis")
                cols.append(x[:dim_dst])
            return Matrix.from_columns(cols, dim_dst) if cols else Matrix.zeros(dim_dst, 0)

        ind_r = descend("restriction", R, reps_t, res.coboundaries_top, reps_b,
                        res.coboundaries_bottom, res.cocycles_bottom, res.dim_bottom)
        ind_t = descend("transfer", T, reps_b, res.coboundaries_bottom, reps_t,
                        res.coboundaries_top, res.cocycles_top, res.dim_top)
        ind_c = descend("conjugation", C, reps_b, res.coboundaries_bottom, reps_b,
                        res.coboundaries_bottom, res.cocycles_bottom, res.dim_bottom)
        return ind_r, ind_t, ind_c

    # membership helpers -------------------------------------------------------

    def is_top_cocycle(self, f: EquivCochain) -> bool:
        return self.is_constrained(f) and not any(self.pair_coboundary(f.degree) @ f.vector)

    def is_top_coboundary(self, f: EquivCochain) -> bool:
        return f.vector in self.top_coboundaries(f.degree)

    def is_bottom_cocycle(self, g: Cochain) -> bool:
        return not any(self.bottom_coboundary(g.degree) @ g.coeffs)

    def is_bottom_coboundary(self, g: Cochain) -> bool:
        return g.coeffs in self.bottom_coboundaries(g.degree)

    def d(self, f):
        """Apply the differential to an EquivCochain or a bottom Cochain."""
        if isinstance(f, EquivCochain):
            return EquivCochain.from_vector(f.degree + 1, self.pair_coboundary(f.degree) @ f.vector,
                                            self.top_len(f.degree + 1))
        return Cochain(f.degree + 1, self.bottom_coboundary(f.degree) @ f.coeffs)


_COMPLEXES: OrderedDict = OrderedDict()


def complex_for(L: GreenLieFunctor, M: LieBimodule) -> Complex:
    """Shared :class:`Complex` for ``(L, M)``; small LRU keyed on identity."""
    key = (id(L), id(M))
    cx = _COMPLEXES.get(key)
    if cx is not None and cx.L is L and cx.M is M:
        _COMPLEXES.move_to_end(key)
        return cx
    cx = Complex(L, M)
    _COMPLEXES[key] = cx
    while len(_COMPLEXES) > 16:
        _COMPLEXES.popitem(last=False)
    return cx


def cochain_space(L, M, n) -> CochainSpace:
    return complex_for(L, M).cochain_space(n)


def coboundary_matrix(L, M, n, level="top") -> Matrix:
    return complex_for(L, M).coboundary_matrix(n, level)


def cohomology(L, M, n, *, induced=True) -> CohomologyResult:
    return complex_for(L, M).cohomology(n, induced=induced)


def cochain_restriction(f: EquivCochain) -> Cochain:
    return f.restriction()


def cochain_transfer(L, M, gamma: Cochain) -> EquivCochain:
    return complex_for(L, M).transfer(gamma)


def induced_maps_on_H(L, M, n):
    res = cohomology(L, M, n)
    return res.induced_r, res.induced_t, res.induced_c


def zero_cochain(cx: Complex, n: int) -> EquivCochain:
    return EquivCochain(n, (ZERO,) * cx.top_len(n), (ZERO,) * cx.bottom_len(n))


def cochain_from_values(cx: Complex, n: int, top_values: dict, bottom_values: dict) -> EquivCochain:
    """Build a pair from ``{increasing tuple: value vector}`` maps at each level."""
    def flat(values, dl, dm):
        idx = alt_index(dl, n)
        out = [ZERO] * alt_dim(dl, n, dm)
        for t, v in values.items():
            base = idx[tuple(t)] * dm
            for k, x in enumerate(v):
                out[base + k] = x
        return tuple(out)
    return EquivCochain(n, flat(top_values, cx.dl_top, cx.dm_top),
                        flat(bottom_values, cx.dl_bottom, cx.dm_bottom))


def all_slot_transfer_defects(cx: Complex, f: EquivCochain) -> list:
    """Slots s where f_top(.., t x at s, ..) != t_M f_e(r.., x, r..) on some basis input.

    Only the first and last slots are imposed; this measures the rest.
    """
    from .liecore import evaluate
    n = f.degree
    L, M = cx.L, cx.M
    bad = set()
    tcols = [L.t.column(i) for i in range(cx.dl_bottom)]
    rcols = [L.r.column(w) for w in range(cx.dl_top)]
    eye_t = [tuple(1 if k == w else 0 for k in range(cx.dl_top)) for w in range(cx.dl_top)]
    eye_b = [tuple(1 if k == i else 0 for k in range(cx.dl_bottom)) for i in range(cx.dl_bottom)]
    for s in range(n):
        for i in range(cx.dl_bottom):
            for W in combinations(range(cx.dl_top), n - 1):
                top_args = [eye_t[w] for w in W]
                bot_args = [rcols[w] for w in W]
                top_args.insert(s, tcols[i])
                bot_args.insert(s, eye_b[i])
                lhs = evaluate(f.top, cx.dl_top, cx.dm_top, top_args)
                rhs = M.mackey.t @ evaluate(f.bottom, cx.dl_bottom, cx.dm_bottom, bot_args)
                if lhs != rhs:
                    bad.add(s)
    return sorted(bad)
