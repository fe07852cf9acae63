"""
C_p-Mackey functors, C_p-Green functors of Lie type, their bimodules and
morphisms, with complete axiom validators.

A C_p-Mackey functor is two vector spaces (top = value at C_p, bottom =
value at e) and three matrices: restriction ``r`` (bottom x top), transfer
``t`` (top x bottom) and the conjugation ``c`` by a fixed generator
(bottom x bottom).  Conjugation on the top level is the identity and is not
stored.
"""
from __future__ import annotations

from dataclasses import dataclass
from itertools import product

from .errors import DimensionMismatch, InvalidStructure, PrecondViolation
from .exactq import Matrix, unit_vec
from .liecore import (LieAlgebra, Representation, bracket, check_hom, check_lie,
                      check_rep)
from .report import Report


def is_prime(p: int) -> bool:
    return p >= 2 and all(p % q for q in range(2, int(p ** 0.5) + 1))


def _residual_summary(m: Matrix) -> str:
    nz = [(i, j, x) for i in range(m.rows) for j, x in m.row_items(i)]
    head = ", ".join(f"({i},{j})={x}" for i, j, x in sorted(nz)[:6])
    return f"residual has {len(nz)} nonzero entries: {head}"


def _offending_columns(m: Matrix):
    """Input basis vectors on which a matrix identity fails."""
    return sorted({j for i in range(m.rows) for j, _ in m.row_items(i)})


def _norm(c: Matrix, p: int) -> Matrix:
    acc = Matrix.zeros(c.rows, c.cols)
    power = Matrix.identity(c.rows)
    for _ in range(p):
        acc = acc + power
        power = power @ c
    return acc


@dataclass(frozen=True, eq=False)
class CpMackey:
    p: int
    r: Matrix
    t: Matrix
    c: Matrix

    def __post_init__(self):
        if not is_prime(self.p):
            raise PrecondViolation(f"p = {self.p} is not prime")
        top, bottom = self.t.rows, self.c.rows
        if self.r.shape != (bottom, top) or self.t.shape != (top, bottom) or self.c.shape != (bottom, bottom):
            raise DimensionMismatch(f"inconsistent shapes r{self.r.shape} t{self.t.shape} c{self.c.shape}")

    @property
    def top_dim(self):
        return self.t.rows

    @property
    def bottom_dim(self):
        return self.c.rows

    def norm(self) -> Matrix:
        return _norm(self.c, self.p)

    def c_inverse(self) -> Matrix:
        return self.c ** (self.p - 1)

    @classmethod
    def zero(cls, p):
        z = Matrix.zeros(0, 0)
        return cls(p, z, z, z)


def validate_mackey(m: CpMackey) -> Report:
    """The four C_p specialisations of the Mackey functor axioms."""
    rep = Report()
    n = m.bottom_dim
    checks = [
        ("(iii)/(iv) c^p = id", m.c ** m.p, Matrix.identity(n)),
        ("(v) c o r = r", m.c @ m.r, m.r),
        ("(v) t o c = t", m.t @ m.c, m.t),
        ("(vi) r o t = sum c^i", m.r @ m.t, m.norm()),
    ]
    for axiom, lhs, rhs in checks:
        if lhs != rhs:
            rep.add(axiom, _residual_summary(lhs - rhs), _offending_columns(lhs - rhs))
    return rep


class GreenLieFunctor:
    """A C_p-Mackey functor whose two levels are Lie algebras.

    Construction runs :func:`validate_green_lie`; use :meth:`unchecked` to
    build counterexamples.
    """

    def __init__(self, p, top: LieAlgebra, bottom: LieAlgebra, r: Matrix, t: Matrix, c: Matrix,
                 *, name: str = "", check: bool = True):
        self.mackey = CpMackey(p, r, t, c)
        if self.mackey.top_dim != top.dim or self.mackey.bottom_dim != bottom.dim:
            raise DimensionMismatch("Lie algebra dimensions do not match the structure maps")
        self.top = top
        self.bottom = bottom
        self.name = name
        if check:
            report = validate_green_lie(self)
            if not report.ok:
                raise InvalidStructure(f"not a C_p-Green functor of Lie type: {report}", report)

    @classmethod
    def unchecked(cls, p, top, bottom, r, t, c, name=""):
        return cls(p, top, bottom, r, t, c, name=name, check=False)

    p = property(lambda self: self.mackey.p)
    r = property(lambda self: self.mackey.r)
    t = property(lambda self: self.mackey.t)
    c = property(lambda self: self.mackey.c)

    def __repr__(self):
        label = f" {self.name!r}" if self.name else ""
        return f"GreenLieFunctor{label}(p={self.p}, dims top={self.top.dim} bottom={self.bottom.dim})"


def validate_green_lie(g: GreenLieFunctor) -> Report:
    rep = Report()
    rep.extend(validate_mackey(g.mackey))
    rep.extend(check_lie(g.top.structure()), prefix="top: ")
    rep.extend(check_lie(g.bottom.structure()), prefix="bottom: ")
    if not rep.ok:
        # brackets or Mackey data already broken; the remaining checks would only echo that
        if any(f.axiom.startswith(("top:", "bottom:")) for f in rep.findings):
            return rep
    rep.extend(check_hom(g.top, g.bottom, g.r, name="restriction is a Lie homomorphism"))
    rep.extend(check_hom(g.bottom, g.bottom, g.c, name="conjugation is a Lie homomorphism"))
    tcols = g.t.columns()
    rcols = g.r.columns()
    for a, b in product(range(g.bottom.dim), range(g.top.dim)):
        ea = unit_vec(g.bottom.dim, a)
        eb = unit_vec(g.top.dim, b)
        lhs = bracket(g.top, tcols[a], eb)
        rhs = g.t @ bracket(g.bottom, ea, rcols[b])
        if lhs != rhs:
            rep.add("Frobenius [t(a), b] = t[a, r(b)]", f"fails for a=e{a} (bottom), b=e{b} (top)", (a, b))
        lhs = bracket(g.top, eb, tcols[a])
        rhs = g.t @ bracket(g.bottom, rcols[b], ea)
        if lhs != rhs:
            rep.add("Frobenius [b, t(a)] = t[r(b), a]", f"fails for a=e{a} (bottom), b=e{b} (top)", (a, b))
    return rep


class LieBimodule:
    """A module over a Green functor of Lie type.

    Only left actions are stored; the right action is ``u . x = -x . u``.
    ``lie`` optionally equips ``M`` itself with Green-Lie brackets, which the
    cup product needs.
    """

    def __init__(self, functor: GreenLieFunctor, mackey: CpMackey, action_top, action_bottom,
                 *, lie: GreenLieFunctor | None = None, name: str = "", check: bool = True):
        self.functor = functor
        self.mackey = mackey
        self.left_top = Representation(functor.top, mackey.top_dim, action_top)
        self.left_bottom = Representation(functor.bottom, mackey.bottom_dim, action_bottom)
        self.lie = lie
        self.name = name
        if lie is not None and (lie.mackey.top_dim != mackey.top_dim or lie.mackey.bottom_dim != mackey.bottom_dim):
            raise DimensionMismatch("bracket structure on M has the wrong dimensions")
        if check:
            report = validate_bimodule(functor, self)
            if not report.ok:
                raise InvalidStructure(f"not a bimodule: {report}", report)

    @classmethod
    def adjoint(cls, L: GreenLieFunctor):
        top = [L.top.ad(i) for i in range(L.top.dim)]
        bottom = [L.bottom.ad(i) for i in range(L.bottom.dim)]
        return cls(L, L.mackey, top, bottom, lie=L, name="adjoint")

    @classmethod
    def trivial(cls, L: GreenLieFunctor, dim: int = 1, mackey: CpMackey | None = None):
        """Trivial actions on ``mackey`` (default: Q^dim at both levels, r = id, t = p, c = id).

        M is given the zero bracket so that cup products are defined.
        """
        if mackey is None:
            mackey = CpMackey(L.p, Matrix.identity(dim), Matrix.scalar(dim, L.p), Matrix.identity(dim))
        zt = Matrix.zeros(mackey.top_dim, mackey.top_dim)
        zb = Matrix.zeros(mackey.bottom_dim, mackey.bottom_dim)
        lie = GreenLieFunctor(L.p, LieAlgebra.abelian(mackey.top_dim), LieAlgebra.abelian(mackey.bottom_dim),
                              mackey.r, mackey.t, mackey.c, name="abelian")
        return cls(L, mackey, [zt] * L.top.dim, [zb] * L.bottom.dim, lie=lie, name=f"trivial:{mackey.top_dim}")

    @classmethod
    def unchecked(cls, functor, mackey, action_top, action_bottom, lie=None, name=""):
        return cls(functor, mackey, action_top, action_bottom, lie=lie, name=name, check=False)

    @property
    def top_dim(self):
        return self.mackey.top_dim

    @property
    def bottom_dim(self):
        return self.mackey.bottom_dim

    def __repr__(self):
        return f"LieBimodule({self.name or 'M'}, dims top={self.top_dim} bottom={self.bottom_dim})"


def validate_bimodule(L: GreenLieFunctor, M: LieBimodule) -> Report:
    if M.mackey.p != L.p:
        raise PrecondViolation(f"module prime {M.mackey.p} != functor prime {L.p}")
    rep = Report()
    rep.extend(validate_mackey(M.mackey), prefix="module ")
    rep.extend(check_rep(M.left_top), prefix="top: ")
    rep.extend(check_rep(M.left_bottom), prefix="bottom: ")
    mk = M.mackey
    rL, tL, cL = L.r.columns(), L.t.columns(), L.c.columns()
    top_act, bot_act = M.left_top, M.left_bottom
    for a, m in product(range(L.top.dim), range(mk.top_dim)):
        em = unit_vec(mk.top_dim, m)
        lhs = mk.r @ top_act.act(unit_vec(L.top.dim, a), em)
        rhs = bot_act.act(rL[a], mk.r @ em)
        if lhs != rhs:
            rep.add("compatibility r(a.m) = r(a).r(m)", f"fails for a=e{a}, m=e{m}", (a, m))
    for x, u in product(range(L.bottom.dim), range(mk.bottom_dim)):
        eu = unit_vec(mk.bottom_dim, u)
        lhs = mk.c @ bot_act.act(unit_vec(L.bottom.dim, x), eu)
        rhs = bot_act.act(cL[x], mk.c @ eu)
        if lhs != rhs:
            rep.add("compatibility c(x.u) = c(x).c(u)", f"fails for x=e{x}, u=e{u}", (x, u))
    for x, m in product(range(L.bottom.dim), range(mk.top_dim)):
        em = unit_vec(mk.top_dim, m)
        lhs = top_act.act(tL[x], em)
        rhs = mk.t @ bot_act.act(unit_vec(L.bottom.dim, x), mk.r @ em)
        if lhs != rhs:
            rep.add("Frobenius t(x).m = t(x.r(m))", f"fails for x=e{x}, m=e{m}", (x, m))
    for a, u in product(range(L.top.dim), range(mk.bottom_dim)):
        eu = unit_vec(mk.bottom_dim, u)
        lhs = top_act.act(unit_vec(L.top.dim, a), mk.t @ eu)
        rhs = mk.t @ bot_act.act(rL[a], eu)
        if lhs != rhs:
            rep.add("Frobenius a.t(u) = t(r(a).u)", f"fails for a=e{a}, u=e{u}", (a, u))
    return rep


@dataclass(frozen=True, eq=False)
class GreenLieMorphism:
    f_top: Matrix
    f_bottom: Matrix

    def compose(self, other: "GreenLieMorphism") -> "GreenLieMorphism":
        """``self o other``."""
        return GreenLieMorphism(self.f_top @ other.f_top, self.f_bottom @ other.f_bottom)

    @classmethod
    def identity(cls, L: GreenLieFunctor):
        return cls(Matrix.identity(L.top.dim), Matrix.identity(L.bottom.dim))

    @classmethod
    def zero(cls, L1: GreenLieFunctor, L2: GreenLieFunctor):
        return cls(Matrix.zeros(L2.top.dim, L1.top.dim), Matrix.zeros(L2.bottom.dim, L1.bottom.dim))


def validate_mackey_morphism(m1: CpMackey, m2: CpMackey, f_top: Matrix, f_bottom: Matrix) -> Report:
    if f_top.shape != (m2.top_dim, m1.top_dim) or f_bottom.shape != (m2.bottom_dim, m1.bottom_dim):
        raise DimensionMismatch("morphism shapes do not match the functors")
    rep = Report()
    for axiom, lhs, rhs in [
        ("f_top o t = t o f_bottom", f_top @ m1.t, m2.t @ f_bottom),
        ("f_bottom o r = r o f_top", f_bottom @ m1.r, m2.r @ f_top),
        ("f_bottom o c = c o f_bottom", f_bottom @ m1.c, m2.c @ f_bottom),
    ]:
        if lhs != rhs:
            rep.add(axiom, _residual_summary(lhs - rhs), _offending_columns(lhs - rhs))
    return rep


def validate_morphism(L1: GreenLieFunctor, L2: GreenLieFunctor, f: GreenLieMorphism) -> Report:
    rep = validate_mackey_morphism(L1.mackey, L2.mackey, f.f_top, f.f_bottom)
    rep.extend(check_hom(L1.top, L2.top, f.f_top, name="f_top is a Lie homomorphism"))
    rep.extend(check_hom(L1.bottom, L2.bottom, f.f_bottom, name="f_bottom is a Lie homomorphism"))
    return rep
