"""
Tensor and exterior products of two C_p-Green functors of Lie type, as
explicit quotient Mackey functors.

Bottom level: L1(e) (x) L2(e) (for the exterior product, modulo the
symmetric tensors).  Top level: the ambient space

    L1(e) (x) L2(e)  (+)  L1(C_p) (x) L2(C_p)      (bottom block first)

modulo the span of a (x) t(y) - r(a) (x) y and t(x) (x) b - x (x) r(b).
Structure maps: r<a (x) b> = r a (x) r b, r<x (x) y> = sum_i c^i x (x) c^i y,
t(x (x) y) = <x (x) y>, c = c (x) c on the bottom.

Taken literally, this quotient does not always satisfy t o c = t: nothing
identifies <c x (x) c y> with <x (x) y>.  ``coinvariants=True`` adds exactly
those relations.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property

from .errors import InvalidStructure, PrecondViolation, PrimeMismatch, WellDefinednessFailure
from .exactq import ZERO, Matrix, QuotientMap, Subspace
from .mackey import CpMackey, validate_mackey
from .report import Report


@dataclass(frozen=True)
class QuotientSpace:
    ambient_dim: int
    relations: Subspace

    @cached_property
    def map(self) -> QuotientMap:
        return QuotientMap(self.relations)

    @property
    def dim(self):
        return self.ambient_dim - self.relations.dim

    @property
    def representatives(self):
        return self.map.representatives()


@dataclass(eq=False)
class ProductMackey:
    underlying: CpMackey
    top: QuotientSpace
    bottom: QuotientSpace
    factor_dims: tuple  # ((top1, bottom1), (top2, bottom2))
    provenance: str
    report: Report = field(default_factory=Report)

    @property
    def p(self):
        return self.underlying.p

    def bottom_index(self, x, y):
        """Ambient index of x (x) y at the bottom level, and of <x (x) y> at the top."""
        return x * self.factor_dims[1][1] + y

    def top_top_block_index(self, a, b):
        """Ambient index of <a (x) b> at the top level."""
        (_, b1), (t2, b2) = self.factor_dims
        return b1 * b2 + a * t2 + b

    def wedge_bijection(self):
        """Free bottom coordinate -> increasing pair (i, j), for the exterior product."""
        d = self.factor_dims[1][1]
        return {k: tuple(sorted(divmod(col, d))) for k, col in enumerate(self.bottom.map.free)}


def _kron(a: Matrix, b: Matrix) -> Matrix:
    entries = {}
    for i in range(a.rows):
        for j, x in a.row_items(i):
            for k in range(b.rows):
                for l, y in b.row_items(k):
                    entries[i * b.rows + k, j * b.cols + l] = x * y
    return Matrix.from_entries(a.rows * b.rows, a.cols * b.cols, entries)


def _mackey_of(L):
    return L.mackey if hasattr(L, "mackey") else L


def _symmetric_relations(d: int, offset: int, ambient: int):
    """v (x) w + w (x) v and v (x) v inside a d x d block placed at ``offset``."""
    out = []
    for i in range(d):
        for j in range(i, d):
            v = [ZERO] * ambient
            v[offset + i * d + j] += 1
            v[offset + j * d + i] += 1
            out.append(v)
    return out


def _product(L1, L2, *, exterior: bool, coinvariants: bool, strict: bool) -> ProductMackey:
    m1, m2 = _mackey_of(L1), _mackey_of(L2)
    if m1.p != m2.p:
        raise PrimeMismatch(f"primes differ: {m1.p} != {m2.p}")
    p = m1.p
    t1, b1, t2, b2 = m1.top_dim, m1.bottom_dim, m2.top_dim, m2.bottom_dim
    if exterior and (t1, b1) != (t2, b2):
        raise PrecondViolation("the exterior product needs factors of equal dimensions at each level")
    nb = b1 * b2
    amb = nb + t1 * t2

    def top_tt(a, b):
        return nb + a * t2 + b

    rels = []
    # a (x) t(y) - r(a) (x) y
    for a in range(t1):
        ra = m1.r.column(a)
        for y in range(b2):
            v = [ZERO] * amb
            for b, x in m2.t.column_items()[y].items():
                v[top_tt(a, b)] += x
            for x_, u in enumerate(ra):
                if u:
                    v[x_ * b2 + y] -= u
            rels.append(v)
    # t(x) (x) b - x (x) r(b)
    for x in range(b1):
        for b in range(t2):
            v = [ZERO] * amb
            for a, u in m1.t.column_items()[x].items():
                v[top_tt(a, b)] += u
            for y, w in enumerate(m2.r.column(b)):
                if w:
                    v[x * b2 + y] -= w
            rels.append(v)
    generators = list(rels)
    c_bottom = _kron(m1.c, m2.c)
    if coinvariants:
        for k in range(nb):
            v = [ZERO] * amb
            for i, x in c_bottom.column_items()[k].items():
                v[i] += x
            v[k] -= 1
            rels.append(v)
    bottom_rels = []
    if exterior:
        rels += _symmetric_relations(b1, 0, amb)
        rels += _symmetric_relations(t1, nb, amb)
        bottom_rels = _symmetric_relations(b1, 0, nb)
    top_q = QuotientSpace(amb, Subspace(amb, rels))
    bot_q = QuotientSpace(nb, Subspace(nb, bottom_rels))
    Pt, Lt = top_q.map.projection_matrix(), top_q.map.lift_matrix()
    Pb, Lb = bot_q.map.projection_matrix(), bot_q.map.lift_matrix()

    # restriction on the ambient top space
    norm_pairs = Matrix.zeros(nb, nb)
    power = Matrix.identity(nb)
    for _ in range(p):
        norm_pairs = norm_pairs + power
        power = power @ c_bottom
    rr = _kron(m1.r, m2.r)
    r_amb = Matrix.from_columns(norm_pairs.columns() + rr.columns(), nb)
    # well-definedness: r kills every relation, c preserves the bottom relations
    for k, g in enumerate(generators):
        if any(Pb @ (r_amb @ g)):
            raise WellDefinednessFailure(f"restriction does not kill relation generator {k}")
    for v in top_q.relations.basis:
        if any(Pb @ (r_amb @ v)):
            raise WellDefinednessFailure("restriction does not kill the relation subspace")
    for v in bot_q.relations.basis:
        if (c_bottom @ v) not in bot_q.relations:
            raise WellDefinednessFailure("conjugation does not preserve the bottom relations")
    incl = Matrix.from_columns([[1 if i == k else 0 for i in range(amb)] for k in range(nb)], amb)
    for v in bot_q.relations.basis:
        if (incl @ v) not in top_q.relations:
            raise WellDefinednessFailure("transfer does not send bottom relations to top relations")

    r = Pb @ r_amb @ Lt
    t = Pt @ incl @ Lb
    c = Pb @ c_bottom @ Lb
    mk = CpMackey(p, r, t, c)
    kind = "exterior" if exterior else "tensor"
    prov = f"{kind} product" + (" with conjugation coinvariants" if coinvariants else "")
    out = ProductMackey(mk, top_q, bot_q, ((t1, b1), (t2, b2)), prov, validate_mackey(mk))
    if strict and not out.report.ok:
        raise InvalidStructure(f"{prov} is not a Mackey functor: {out.report}", out.report)
    return out


def tensor_product(L1, L2, *, coinvariants=False, strict=True) -> ProductMackey:
    """The tensor product of two Green functors (or plain Mackey functors)."""
    return _product(L1, L2, exterior=False, coinvariants=coinvariants, strict=strict)


def exterior_product(L1, L2, *, coinvariants=False, strict=True) -> ProductMackey:
    """Tensor product modulo v (x) w + w (x) v and v (x) v at both levels."""
    return _product(L1, L2, exterior=True, coinvariants=coinvariants, strict=strict)
