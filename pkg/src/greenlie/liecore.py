"""
Finite-dimensional Lie algebras from structure constants, representations,
and the classical Chevalley-Eilenberg complex.

Alternating n-linear maps V^n -> M are stored as flat coefficient vectors:
the value on the increasing basis tuple number ``T`` (lexicographic order of
``itertools.combinations``) occupies coordinates ``T*dim(M) .. T*dim(M)+dim(M)-1``.
"""
from __future__ import annotations

from functools import lru_cache
from itertools import combinations
from typing import Sequence

from .errors import DimensionMismatch, InvalidStructure
from .exactq import ONE, ZERO, Matrix, Q
from .report import Report


# increasing tuples ------------------------------------------------------

@lru_cache(maxsize=None)
def alt_tuples(dim: int, n: int) -> tuple:
    return tuple(combinations(range(dim), n))


@lru_cache(maxsize=None)
def alt_index(dim: int, n: int) -> dict:
    return {t: i for i, t in enumerate(alt_tuples(dim, n))}


def alt_dim(dim_l: int, n: int, dim_m: int) -> int:
    return len(alt_tuples(dim_l, n)) * dim_m


def sort_sign(idx: Sequence[int]):
    """Sorted tuple and permutation sign, or (None, 0) on a repeated index."""
    idx = list(idx)
    sign = 1
    for i in range(1, len(idx)):
        j = i
        while j > 0 and idx[j - 1] > idx[j]:
            idx[j - 1], idx[j] = idx[j], idx[j - 1]
            sign = -sign
            j -= 1
    for a, b in zip(idx, idx[1:]):
        if a == b:
            return None, 0
    return tuple(idx), sign


def alt_expand(args: Sequence[dict]) -> dict:
    """Expand ``e(v_1,...,v_n)`` multilinearly into increasing basis tuples.

    ``args`` are sparse vectors ``{index: coeff}``.  Returns ``{tuple: coeff}``
    such that ``f(v_1..v_n) = sum coeff * f(e_tuple)`` for any alternating f.
    """
    terms = {(): ONE}
    for v in args:
        new = {}
        for t, c in terms.items():
            for i, a in v.items():
                if i in t:
                    continue
                # insert i into the sorted tuple t
                pos = 0
                while pos < len(t) and t[pos] < i:
                    pos += 1
                s = t[:pos] + (i,) + t[pos:]
                sign = -1 if (len(t) - pos) % 2 else 1
                new[s] = new.get(s, ZERO) + sign * c * a
        terms = {t: c for t, c in new.items() if c}
        if not terms:
            break
    return terms


def sparse(v: Sequence) -> dict:
    return {i: Q(x) for i, x in enumerate(v) if x}


def evaluate(coeffs: Sequence, dim_l: int, dim_m: int, args: Sequence[Sequence]) -> tuple:
    """Value of the alternating map with coefficient vector ``coeffs`` on ``args``."""
    n = len(args)
    idx = alt_index(dim_l, n)
    out = [ZERO] * dim_m
    for t, c in alt_expand([sparse(a) for a in args]).items():
        base = idx[t] * dim_m
        for k in range(dim_m):
            x = coeffs[base + k]
            if x:
                out[k] += c * x
    return tuple(out)


def value_at(coeffs: Sequence, dim_l: int, dim_m: int, basis_idx: Sequence[int]) -> tuple:
    """Value on basis vectors given in any order (sign inserted)."""
    t, sign = sort_sign(basis_idx)
    if t is None:
        return (ZERO,) * dim_m
    base = alt_index(dim_l, len(t))[t] * dim_m
    return tuple(sign * coeffs[base + k] for k in range(dim_m))


def pullback_matrix(n: int, q: Matrix, p: Matrix) -> Matrix:
    """Matrix of ``theta -> p . theta . (q in every slot)``.

    ``q``: Y -> X acts on arguments, ``p``: M1 -> M2 on values; the result maps
    alternating n-maps X -> M1 to alternating n-maps Y -> M2.
    """
    dim_y, dim_x = q.cols, q.rows
    m1, m2 = p.cols, p.rows
    qcols = q.column_items()
    pcols = p.column_items()
    src_idx = alt_index(dim_x, n)
    entries = {}
    for u_i, u in enumerate(alt_tuples(dim_y, n)):
        expansion = alt_expand([qcols[j] for j in u])
        for t, c in expansion.items():
            col0 = src_idx[t] * m1
            for k1 in range(m1):
                for k2, a in pcols[k1].items():
                    key = (u_i * m2 + k2, col0 + k1)
                    entries[key] = entries.get(key, ZERO) + c * a
    return Matrix.from_entries(alt_dim(dim_y, n, m2), alt_dim(dim_x, n, m1), entries)


# Lie algebras -----------------------------------------------------------

class LieAlgebra:
    """Lie algebra with basis ``e_0..e_{d-1}`` and ``[e_i, e_j] = sum_k c[i][j][k] e_k``.

    Construction validates antisymmetry and the Jacobi identity unless
    ``check=False``.
    """

    __slots__ = ("dim", "basis_names", "_br", "_ad")

    def __init__(self, structure, basis_names=None, *, check=True):
        if isinstance(structure, dict):
            raise TypeError("use LieAlgebra.from_brackets for sparse input")
        d = len(structure)
        br = {}
        for i in range(d):
            if len(structure[i]) != d:
                raise DimensionMismatch("structure tensor is not d x d x d")
            for j in range(d):
                if len(structure[i][j]) != d:
                    raise DimensionMismatch("structure tensor is not d x d x d")
                row = {k: Q(x) for k, x in enumerate(structure[i][j]) if x}
                if row:
                    br[i, j] = row
        self._init(d, br, basis_names, check)

    @classmethod
    def from_brackets(cls, dim, brackets: dict, basis_names=None, *, check=True,
                      complete=True):
        """Sparse constructor: ``{(i, j): {k: c}}``.

        With ``complete=True`` the antisymmetric partner ``(j, i)`` is filled
        in and a conflicting explicit entry raises.
        """
        br = {}
        for (i, j), row in brackets.items():
            row = {k: Q(x) for k, x in row.items() if x}
            if not row:
                continue
            if (i, j) in br and br[i, j] != row:
                raise InvalidStructure(f"conflicting brackets for ({i}, {j})")
            br[i, j] = row
            if complete:
                neg = {k: -x for k, x in row.items()}
                if i == j:
                    raise InvalidStructure(f"nonzero self-bracket [e{i}, e{i}]")
                if (j, i) in br and br[j, i] != neg:
                    raise InvalidStructure(f"bracket ({j}, {i}) conflicts with antisymmetry")
                br[j, i] = neg
        self = cls.__new__(cls)
        self._init(dim, br, basis_names, check)
        return self

    @classmethod
    def abelian(cls, dim, basis_names=None):
        return cls.from_brackets(dim, {}, basis_names)

    def _init(self, d, br, basis_names, check):
        self.dim = d
        self.basis_names = tuple(basis_names) if basis_names is not None else tuple(f"e{i}" for i in range(d))
        if len(self.basis_names) != d:
            raise DimensionMismatch("basis_names length differs from dimension")
        self._br = br
        self._ad = None
        if check:
            rep = check_lie(self.structure())
            if not rep.ok:
                raise InvalidStructure(f"not a Lie algebra: {rep}", rep)

    def structure(self):
        d = self.dim
        out = [[[ZERO] * d for _ in range(d)] for _ in range(d)]
        for (i, j), row in self._br.items():
            for k, x in row.items():
                out[i][j][k] = x
        return out

    def bracket_basis(self, i: int, j: int) -> dict:
        return self._br.get((i, j), {})

    def brackets(self):
        """Nonzero ``(i, j, {k: c})`` for ``i < j``."""
        return [(i, j, row) for (i, j), row in sorted(self._br.items()) if i < j]

    def bracket(self, x: Sequence, y: Sequence) -> tuple:
        return bracket(self, x, y)

    def ad(self, i: int) -> Matrix:
        if self._ad is None:
            mats = []
            for a in range(self.dim):
                entries = {}
                for b in range(self.dim):
                    for k, x in self._br.get((a, b), {}).items():
                        entries[k, b] = x
                mats.append(Matrix.from_entries(self.dim, self.dim, entries))
            self._ad = tuple(mats)
        return self._ad[i]

    def is_abelian(self):
        return not self._br

    def __eq__(self, other):
        return isinstance(other, LieAlgebra) and self.dim == other.dim and self._br == other._br

    def __hash__(self):
        return hash((self.dim, tuple(sorted((k, tuple(sorted(v.items()))) for k, v in self._br.items()))))

    def __repr__(self):
        return f"LieAlgebra(dim={self.dim}, basis={list(self.basis_names)})"


def bracket(L: LieAlgebra, x: Sequence, y: Sequence) -> tuple:
    if len(x) != L.dim or len(y) != L.dim:
        raise DimensionMismatch(f"vectors must have length {L.dim}")
    out = [ZERO] * L.dim
    xs = [(i, a) for i, a in enumerate(x) if a]
    ys = [(j, b) for j, b in enumerate(y) if b]
    for i, a in xs:
        for j, b in ys:
            row = L._br.get((i, j))
            if row:
                ab = Q(a) * Q(b)
                for k, c in row.items():
                    out[k] += ab * c
    return tuple(out)


def check_lie(structure) -> Report:
    """Antisymmetry and Jacobi violations of a dense structure tensor."""
    rep = Report()
    d = len(structure)
    c = [[[Q(x) for x in structure[i][j]] for j in range(d)] for i in range(d)]
    for i in range(d):
        for j in range(d):
            for k in range(d):
                if c[i][j][k] != -c[j][i][k]:
                    rep.add("antisymmetry", f"c[{i}][{j}][{k}] = {c[i][j][k]} but c[{j}][{i}][{k}] = {c[j][i][k]}",
                            (i, j, k))
    if not rep.ok:
        return rep
    nz = [[[(k, x) for k, x in enumerate(c[i][j]) if x] for j in range(d)] for i in range(d)]
    for i, j, k in combinations(range(d), 3):
        acc = [ZERO] * d
        for a, b, e in ((i, j, k), (j, k, i), (k, i, j)):
            for m, x in nz[a][b]:
                for l, y in nz[m][e]:
                    acc[l] += x * y
        bad = [l for l in range(d) if acc[l]]
        if bad:
            rep.add("jacobi", f"Jacobiator of (e{i}, e{j}, e{k}) has component(s) {bad}", (i, j, k))
    return rep


def check_hom(L1: LieAlgebra, L2: LieAlgebra, f: Matrix, name="homomorphism") -> Report:
    """Check ``f[x, y] = [f x, f y]`` on basis pairs; ``f`` is ``dim L2 x dim L1``."""
    if f.shape != (L2.dim, L1.dim):
        raise DimensionMismatch(f"map has shape {f.shape}, expected {(L2.dim, L1.dim)}")
    rep = Report()
    cols = f.columns()
    for i, j in combinations(range(L1.dim), 2):
        lhs = f @ vec_from(L1.bracket_basis(i, j), L1.dim)
        rhs = bracket(L2, cols[i], cols[j])
        if lhs != rhs:
            rep.add(name, f"f[e{i}, e{j}] != [f e{i}, f e{j}]", (i, j))
    return rep


def vec_from(d: dict, n: int) -> tuple:
    out = [ZERO] * n
    for k, x in d.items():
        out[k] = x
    return tuple(out)


def commutator(a: Matrix, b: Matrix) -> Matrix:
    return a @ b - b @ a


class Representation:
    """``rho(e_i)`` as a ``module_dim x module_dim`` matrix for each basis element."""

    __slots__ = ("algebra", "module_dim", "action", "_cols")

    def __init__(self, algebra: LieAlgebra, module_dim: int, action: Sequence[Matrix]):
        action = tuple(action)
        if len(action) != algebra.dim:
            raise DimensionMismatch(f"need {algebra.dim} action matrices, got {len(action)}")
        for a in action:
            if a.shape != (module_dim, module_dim):
                raise DimensionMismatch(f"action matrix has shape {a.shape}")
        self.algebra = algebra
        self.module_dim = module_dim
        self.action = action
        self._cols = None

    @classmethod
    def trivial(cls, algebra: LieAlgebra, module_dim: int):
        z = Matrix.zeros(module_dim, module_dim)
        return cls(algebra, module_dim, [z] * algebra.dim)

    @classmethod
    def adjoint(cls, algebra: LieAlgebra):
        return cls(algebra, algebra.dim, [algebra.ad(i) for i in range(algebra.dim)])

    def rho(self, x: Sequence) -> Matrix:
        out = Matrix.zeros(self.module_dim, self.module_dim)
        for i, a in enumerate(x):
            if a:
                out = out + Q(a) * self.action[i]
        return out

    def act(self, x: Sequence, u: Sequence) -> tuple:
        out = [ZERO] * self.module_dim
        for i, a in enumerate(x):
            if a:
                for k, b in enumerate(self.action[i] @ u):
                    out[k] += Q(a) * b
        return tuple(out)

    def action_columns(self):
        """``[i][k] -> {k': coeff}`` sparse columns of every action matrix."""
        if self._cols is None:
            self._cols = tuple(tuple(a.column_items()) for a in self.action)
        return self._cols


def check_rep(rep: Representation) -> Report:
    out = Report()
    L = rep.algebra
    for i, j in combinations(range(L.dim), 2):
        lhs = rep.rho(vec_from(L.bracket_basis(i, j), L.dim))
        rhs = commutator(rep.action[i], rep.action[j])
        if lhs != rhs:
            out.add("representation", f"rho[e{i}, e{j}] != [rho e{i}, rho e{j}]", (i, j))
    return out


def ce_coboundary(L: LieAlgebra, rep: Representation, n: int) -> Matrix:
    """Chevalley-Eilenberg differential from alternating n-maps to (n+1)-maps.

    (b f)(x_1..x_{n+1}) = sum_i (-1)^{i+1} x_i f(..^x_i..)
                        + sum_{i<j} (-1)^{i+j} f([x_i, x_j], ..^x_i..^x_j..)
    """
    if n < 0:
        raise ValueError("degree must be non-negative")
    d, dm = L.dim, rep.module_dim
    src = alt_index(d, n)
    act = rep.action_columns()
    entries = {}

    def add(key, x):
        entries[key] = entries.get(key, ZERO) + x

    for u_i, u in enumerate(alt_tuples(d, n + 1)):
        row0 = u_i * dm
        for s in range(n + 1):
            sign = -1 if s % 2 else 1
            col0 = src[u[:s] + u[s + 1:]] * dm
            for k in range(dm):
                for k2, a in act[u[s]][k].items():
                    add((row0 + k2, col0 + k), sign * a)
        for s, t in combinations(range(n + 1), 2):
            row = L.bracket_basis(u[s], u[t])
            if not row:
                continue
            sign = -1 if (s + t) % 2 else 1
            rest = u[:s] + u[s + 1:t] + u[t + 1:]
            for l, c in row.items():
                tup, psign = sort_sign((l,) + rest)
                if tup is None:
                    continue
                col0 = src[tup] * dm
                coef = sign * psign * c
                for k in range(dm):
                    add((row0 + k, col0 + k), coef)
    return Matrix.from_entries(alt_dim(d, n + 1, dm), alt_dim(d, n, dm), entries)
