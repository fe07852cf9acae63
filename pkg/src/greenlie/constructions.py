"""
Concrete Lie algebras and the standard C_p-Green functors of Lie type built
from them: Heisenberg with a cyclic permutation action, sl_n with
X -> -X^T, general fixed points, p-fold direct sums, and derivations of an
associative algebra with a C_p-action.
"""
from __future__ import annotations

from itertools import product

from .errors import (DimensionMismatch, InvalidStructure, NotAnAutomorphism, NotAssociative,
                     OrderMismatch, PrecondViolation)
from .exactq import ONE, ZERO, Matrix, Q, kernel_basis, rank, solve, unit_vec
from .liecore import LieAlgebra, check_hom
from .mackey import CpMackey, GreenLieFunctor, is_prime


# Lie algebras -------------------------------------------------------------

def heisenberg_algebra(n: int) -> LieAlgebra:
    """h_{2n+1} with basis x_1..x_n, y_1..y_n, z and [x_i, y_i] = z."""
    names = [f"x{i}" for i in range(1, n + 1)] + [f"y{i}" for i in range(1, n + 1)] + ["z"]
    z = 2 * n
    return LieAlgebra.from_brackets(2 * n + 1, {(i, n + i): {z: 1} for i in range(n)}, names)


def _sl_basis(n: int):
    """Basis of sl_n: E_ij (i<j), H_k = E_kk - E_{k+1,k+1}, E_ij (i>j).

    For n = 2 this is (e, h, f).
    """
    upper = [(i, j) for i in range(n) for j in range(n) if i < j]
    lower = [(i, j) for i in range(n) for j in range(n) if i > j]
    mats, names = [], []
    for i, j in upper:
        m = [[ZERO] * n for _ in range(n)]
        m[i][j] = ONE
        mats.append(m)
        names.append(f"E{i+1}{j+1}")
    for k in range(n - 1):
        m = [[ZERO] * n for _ in range(n)]
        m[k][k] = ONE
        m[k + 1][k + 1] = -ONE
        mats.append(m)
        names.append(f"H{k+1}")
    for i, j in lower:
        m = [[ZERO] * n for _ in range(n)]
        m[i][j] = ONE
        mats.append(m)
        names.append(f"E{i+1}{j+1}")
    if n == 2:
        names = ["e", "h", "f"]
    return mats, names, upper, lower


def sl_coordinates(n: int, X) -> tuple:
    """Coordinates of a traceless n x n matrix in the :func:`sl_algebra` basis."""
    _, _, upper, lower = _sl_basis(n)
    if sum(Q(X[i][i]) for i in range(n)) != 0:
        raise PrecondViolation("matrix is not traceless")
    coords = [Q(X[i][j]) for i, j in upper]
    running = ZERO
    for k in range(n - 1):
        running += Q(X[k][k])
        coords.append(running)
    coords += [Q(X[i][j]) for i, j in lower]
    return tuple(coords)


def _matmul(a, b):
    n = len(a)
    return [[sum(a[i][k] * b[k][j] for k in range(n)) for j in range(n)] for i in range(n)]


def sl_algebra(n: int) -> LieAlgebra:
    if n < 2:
        raise PrecondViolation("sl_n needs n >= 2")
    mats, names, _, _ = _sl_basis(n)
    d = len(mats)
    brackets = {}
    for a in range(d):
        for b in range(a + 1, d):
            ab, ba = _matmul(mats[a], mats[b]), _matmul(mats[b], mats[a])
            comm = [[ab[i][j] - ba[i][j] for j in range(n)] for i in range(n)]
            coords = sl_coordinates(n, comm)
            row = {k: x for k, x in enumerate(coords) if x}
            if row:
                brackets[a, b] = row
    return LieAlgebra.from_brackets(d, brackets, names)


def sl_matrix_of(n: int, coords) -> list:
    mats, _, _, _ = _sl_basis(n)
    return [[sum(Q(c) * m[i][j] for c, m in zip(coords, mats)) for j in range(n)] for i in range(n)]


def negative_transpose(n: int) -> Matrix:
    """The automorphism X -> -X^T of sl_n in the :func:`sl_algebra` basis."""
    mats, _, _, _ = _sl_basis(n)
    cols = []
    for m in mats:
        img = [[-m[j][i] for j in range(n)] for i in range(n)]
        cols.append(sl_coordinates(n, img))
    return Matrix.from_columns(cols, len(mats))


def direct_sum_algebra(g: LieAlgebra, p: int) -> LieAlgebra:
    """g^{+p}, basis element ``k*dim(g) + i`` is e_i in copy k."""
    d = g.dim
    brackets = {}
    for k in range(p):
        for i, j, row in g.brackets():
            brackets[k * d + i, k * d + j] = {k * d + l: x for l, x in row.items()}
    names = [f"{nm}_{k}" for k in range(p) for nm in g.basis_names]
    return LieAlgebra.from_brackets(d * p, brackets, names)


# functors -------------------------------------------------------------------

def fixed_point_functor(g: LieAlgebra, action: Matrix, p: int, *, top_basis=None,
                        name="fixed-point") -> GreenLieFunctor:
    """bottom = g, top = g^{C_p}, r = inclusion, t = sum of action powers, c = action."""
    if not is_prime(p):
        raise PrecondViolation(f"p = {p} is not prime")
    d = g.dim
    if action.shape != (d, d):
        raise DimensionMismatch("action must be a dim(g) x dim(g) matrix")
    if action ** p != Matrix.identity(d):
        raise OrderMismatch(f"action^{p} is not the identity")
    if rank(action) != d or not check_hom(g, g, action).ok:
        raise NotAnAutomorphism("action is not a Lie algebra automorphism")
    fixed = kernel_basis(action - Matrix.identity(d))
    if top_basis is None:
        top_basis = fixed.basis
    top_basis = [tuple(Q(x) for x in v) for v in top_basis]
    if len(top_basis) != fixed.dim or any(v not in fixed for v in top_basis):
        raise PrecondViolation("top_basis is not a basis of the fixed subalgebra")
    r = Matrix.from_columns(top_basis, d) if top_basis else Matrix.zeros(d, 0)
    if rank(r) != len(top_basis):
        raise PrecondViolation("top_basis is linearly dependent")
    k = len(top_basis)

    def coords(v):
        x = solve(r, v)
        if x is None:
            raise InvalidStructure("vector escapes the fixed-point subalgebra")
        return x

    brackets = {}
    for a in range(k):
        for b in range(a + 1, k):
            row = {i: x for i, x in enumerate(coords(g.bracket(top_basis[a], top_basis[b]))) if x}
            if row:
                brackets[a, b] = row
    top = LieAlgebra.from_brackets(k, brackets, [f"u{i}" for i in range(k)])
    norm = Matrix.zeros(d, d)
    power = Matrix.identity(d)
    for _ in range(p):
        norm = norm + power
        power = power @ action
    # averaging must land in the invariants; checked, not assumed
    t_cols = [coords(norm.column(j)) for j in range(d)]
    t = Matrix.from_columns(t_cols, k) if d else Matrix.zeros(k, 0)
    return GreenLieFunctor(p, top, g, r, t, action, name=name)


def heisenberg_permutation(n: int, p: int) -> Matrix:
    """sigma: x_i -> x_{i+1 mod p}, y_i -> y_{i+1 mod p} for i <= p, fixing the rest."""
    d = 2 * n + 1
    cols = []
    for idx in range(d):
        if idx < p:
            cols.append(unit_vec(d, (idx + 1) % p))
        elif n <= idx < n + p:
            cols.append(unit_vec(d, n + (idx - n + 1) % p))
        else:
            cols.append(unit_vec(d, idx))
    return Matrix.from_columns(cols, d)


def heisenberg_example(n: int, p: int) -> GreenLieFunctor:
    """h_{2n+1} with C_p cyclically permuting the first p pairs (x_i, y_i).

    Top basis: sum x_j, x_{p+1}..x_n, sum y_j, y_{p+1}..y_n, z.
    """
    if not is_prime(p):
        raise PrecondViolation(f"p = {p} is not prime")
    if p > n:
        raise PrecondViolation(f"need p <= n, got p={p}, n={n}")
    g = heisenberg_algebra(n)
    d = 2 * n + 1
    sx = tuple(ONE if i < p else ZERO for i in range(d))
    sy = tuple(ONE if n <= i < n + p else ZERO for i in range(d))
    basis = [sx] + [unit_vec(d, i) for i in range(p, n)] + [sy] + [unit_vec(d, n + i) for i in range(p, n)]
    basis.append(unit_vec(d, 2 * n))
    return fixed_point_functor(g, heisenberg_permutation(n, p), p, top_basis=basis,
                               name=f"heisenberg({n},{p})")


def sl_transpose_example(n: int) -> GreenLieFunctor:
    """sl_n with C_2 acting by X -> -X^T; top is the skew-symmetric matrices."""
    if n < 2:
        raise PrecondViolation("sl_n needs n >= 2")
    g = sl_algebra(n)
    skew = []
    for i in range(n):
        for j in range(i + 1, n):
            m = [[ZERO] * n for _ in range(n)]
            m[i][j], m[j][i] = ONE, -ONE
            skew.append(sl_coordinates(n, m))
    return fixed_point_functor(g, negative_transpose(n), 2, top_basis=skew, name=f"sl-transpose({n})")


def direct_sum_example(g: LieAlgebra, p: int) -> GreenLieFunctor:
    """top = g, bottom = g^{+p}, r diagonal, c cyclic shift, t componentwise sum."""
    if not is_prime(p):
        raise PrecondViolation(f"p = {p} is not prime")
    d = g.dim
    bottom = direct_sum_algebra(g, p)
    r = Matrix.from_entries(d * p, d, {(k * d + i, i): 1 for k in range(p) for i in range(d)})
    t = Matrix.from_entries(d, d * p, {(i, k * d + i): 1 for k in range(p) for i in range(d)})
    # (x_1, ..., x_p) -> (x_p, x_1, ..., x_{p-1}): copy k moves to copy k+1
    c = Matrix.from_entries(d * p, d * p, {(((k + 1) % p) * d + i, k * d + i): 1
                                           for k in range(p) for i in range(d)})
    return GreenLieFunctor(p, g, bottom, r, t, c, name=f"direct-sum(p={p})")


def trivial_action_functor(g: LieAlgebra, p: int) -> GreenLieFunctor:
    """Fixed points of the trivial action: top = bottom = g, r = id, t = p, c = id."""
    return fixed_point_functor(g, Matrix.identity(g.dim), p, name="trivial-action")


def abelian_functor(dim: int, p: int) -> GreenLieFunctor:
    return trivial_action_functor(LieAlgebra.abelian(dim), p)


def _check_associative(mult, n):
    for i, j, k in product(range(n), repeat=3):
        # (e_i e_j) e_k vs e_i (e_j e_k)
        left = [ZERO] * n
        right = [ZERO] * n
        for l in range(n):
            a = mult[i][j][l]
            if a:
                for m in range(n):
                    left[m] += a * mult[l][k][m]
            b = mult[j][k][l]
            if b:
                for m in range(n):
                    right[m] += b * mult[i][l][m]
        if left != right:
            raise NotAssociative(f"(e{i} e{j}) e{k} != e{i} (e{j} e{k})")


def derivation_algebra(mult) -> tuple:
    """Der(A) for the algebra with ``e_i e_j = sum_k mult[i][j][k] e_k``.

    Returns ``(LieAlgebra, basis)`` where ``basis`` lists each derivation as
    an ``n x n`` Matrix acting on A.
    """
    n = len(mult)
    mult = [[[Q(x) for x in mult[i][j]] for j in range(n)] for i in range(n)]
    _check_associative(mult, n)
    # unknown D[l][i] sits at column l*n + i
    rows = []
    for i, j in product(range(n), repeat=2):
        for out in range(n):
            row = {}
            for k in range(n):
                a = mult[i][j][k]
                if a:
                    row[out * n + k] = row.get(out * n + k, ZERO) + a
            for l in range(n):
                a = mult[l][j][out]
                if a:
                    row[l * n + i] = row.get(l * n + i, ZERO) - a
                b = mult[i][l][out]
                if b:
                    row[l * n + j] = row.get(l * n + j, ZERO) - b
            rows.append([row.get(c, ZERO) for c in range(n * n)])
    system = Matrix.from_rows(rows, n * n) if rows else Matrix.zeros(0, n * n)
    ker = kernel_basis(system)
    mats = [Matrix.from_rows([[v[l * n + i] for i in range(n)] for l in range(n)], n) for v in ker.basis]
    flat = Matrix.from_columns(list(ker.basis), n * n) if ker.dim else Matrix.zeros(n * n, 0)

    def coords(m: Matrix):
        x = solve(flat, [m[l, i] for l in range(n) for i in range(n)])
        if x is None:
            raise InvalidStructure("commutator of derivations is not a derivation")
        return x

    brackets = {}
    for a in range(len(mats)):
        for b in range(a + 1, len(mats)):
            row = {k: x for k, x in enumerate(coords(mats[a] @ mats[b] - mats[b] @ mats[a])) if x}
            if row:
                brackets[a, b] = row
    alg = LieAlgebra.from_brackets(len(mats), brackets, [f"D{k}" for k in range(len(mats))])
    return alg, mats, coords


def derivation_example(assoc_dim: int, mult, action: Matrix, p: int) -> GreenLieFunctor:
    """bottom = Der(A), top = C_p-invariant derivations, c(D) = g D g^{-1}."""
    n = assoc_dim
    if len(mult) != n or any(len(row) != n or any(len(v) != n for v in row) for row in mult):
        raise DimensionMismatch(f"multiplication tensor must be {n} x {n} x {n}")
    if action.shape != (n, n):
        raise DimensionMismatch("action must be dim(A) x dim(A)")
    if action ** p != Matrix.identity(n):
        raise OrderMismatch(f"action^{p} is not the identity")
    mult_q = [[[Q(x) for x in mult[i][j]] for j in range(n)] for i in range(n)]
    cols = action.columns()
    for i, j in product(range(n), repeat=2):
        lhs = action @ tuple(mult_q[i][j])
        rhs = [ZERO] * n
        for a, b in product(range(n), repeat=2):
            w = cols[i][a] * cols[j][b]
            if w:
                for k in range(n):
                    rhs[k] += w * mult_q[a][b][k]
        if lhs != tuple(rhs):
            raise NotAnAutomorphism(f"g(e{i} e{j}) != g(e{i}) g(e{j})")
    alg, mats, coords = derivation_algebra(mult)
    inverse = action ** (p - 1)
    conj = Matrix.from_columns([coords(action @ m @ inverse) for m in mats], alg.dim) if mats \
        else Matrix.zeros(0, 0)
    return fixed_point_functor(alg, conj, p, name="derivation")


def dual_numbers():
    """Q[x]/(x^2) with basis (1, x) and the automorphism x -> -x."""
    mult = [[[1, 0], [0, 1]], [[0, 1], [0, 0]]]
    return mult, Matrix.from_rows([[1, 0], [0, -1]])


def zero_top_abelian(dim: int = 2) -> GreenLieFunctor:
    """Abelian L(e) = Q^dim, L(C_2) = 0, c = -id (so that r o t = 0 = 1 + c)."""
    z = LieAlgebra.abelian(0)
    return GreenLieFunctor(2, z, LieAlgebra.abelian(dim), Matrix.zeros(dim, 0), Matrix.zeros(0, dim),
                           Matrix.scalar(dim, -1), name="zero-top-abelian")


def zero_functor(p: int) -> GreenLieFunctor:
    z = LieAlgebra.abelian(0)
    e = Matrix.zeros(0, 0)
    return GreenLieFunctor(p, z, z, e, e, e, name="zero")


def zero_mackey(p: int) -> CpMackey:
    return CpMackey.zero(p)


# catalog ----------------------------------------------------------------------

def _fixed_point_preset(which: str = "sl2"):
    if which == "sl2":
        return fixed_point_functor(sl_algebra(2), negative_transpose(2), 2, name="fixed-point(sl2)")
    if which == "h5":
        return fixed_point_functor(heisenberg_algebra(2), heisenberg_permutation(2, 2), 2,
                                   name="fixed-point(h5)")
    raise PrecondViolation(f"unknown fixed-point preset {which!r} (use sl2 or h5)")


def _direct_sum_preset(which: str = "h3", p: str | int = 2):
    algebras = {"h3": lambda: heisenberg_algebra(1), "sl2": lambda: sl_algebra(2)}
    if which not in algebras:
        raise PrecondViolation(f"unknown direct-sum algebra {which!r} (use h3 or sl2)")
    return direct_sum_example(algebras[which](), int(p))


def _derivation_preset(which: str = "dual-numbers"):
    if which == "dual-numbers":
        mult, act = dual_numbers()
        return derivation_example(2, mult, act, 2)
    if which == "rationals":
        return derivation_example(1, [[[1]]], Matrix.identity(1), 2)
    raise PrecondViolation(f"unknown derivation preset {which!r} (use dual-numbers or rationals)")


CATALOG = {
    "heisenberg": {
        "signature": "heisenberg(n,p)",
        "parameters": ["n", "p"],
        "provenance": "Heisenberg algebra with a cyclic permutation action",
        "build": lambda n, p: heisenberg_example(int(n), int(p)),
        "defaults": ["2", "2"],
    },
    "sl-transpose": {
        "signature": "sl-transpose(n)",
        "parameters": ["n"],
        "provenance": "sl_n with X -> -X^T, p = 2",
        "build": lambda n: sl_transpose_example(int(n)),
        "defaults": ["2"],
    },
    "fixed-point": {
        "signature": "fixed-point(preset)",
        "parameters": ["preset in {sl2, h5}"],
        "provenance": "fixed points of a C_p-action by automorphisms",
        "build": _fixed_point_preset,
        "defaults": ["sl2"],
    },
    "direct-sum": {
        "signature": "direct-sum(algebra,p)",
        "parameters": ["algebra in {h3, sl2}", "p"],
        "provenance": "g^{+p} with diagonal restriction and cyclic shift",
        "build": _direct_sum_preset,
        "defaults": ["h3", "2"],
    },
    "derivation": {
        "signature": "derivation(preset)",
        "parameters": ["preset in {dual-numbers, rationals}"],
        "provenance": "derivations of an associative algebra with a C_p-action",
        "build": _derivation_preset,
        "defaults": ["dual-numbers"],
    },
}


def list_examples():
    return [{"name": k, "signature": v["signature"], "parameters": v["parameters"],
             "provenance": v["provenance"], "defaults": v["defaults"]} for k, v in CATALOG.items()]


def build_example(name: str, *args) -> GreenLieFunctor:
    if name not in CATALOG:
        raise PrecondViolation(f"unknown example {name!r}; known: {sorted(CATALOG)}")
    entry = CATALOG[name]
    args = list(args) or list(entry["defaults"])
    try:
        return entry["build"](*args)
    except TypeError as exc:
        raise PrecondViolation(f"bad parameters for {entry['signature']}: {exc}") from None
