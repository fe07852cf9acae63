"""Straight-line reference computations, sharing no code with the package.

Everything here works with plain lists of Fractions: cochains are dicts from
increasing index tuples to lists of module coordinates, multilinear maps are
evaluated by expanding every argument in the basis, and ranks come from a
dense Gaussian elimination written out below.
"""
from fractions import Fraction
from itertools import combinations, product


def dense_rank(rows):
    m = [[Fraction(x) for x in r] for r in rows]
    rank, col = 0, 0
    ncols = len(m[0]) if m else 0
    while rank < len(m) and col < ncols:
        piv = next((i for i in range(rank, len(m)) if m[i][col] != 0), None)
        if piv is None:
            col += 1
            continue
        m[rank], m[piv] = m[piv], m[rank]
        for i in range(len(m)):
            if i != rank and m[i][col] != 0:
                f = m[i][col] / m[rank][col]
                m[i] = [a - f * b for a, b in zip(m[i], m[rank])]
        rank += 1
        col += 1
    return rank


def dense_nullspace(rows, ncols):
    """Basis of {v : rows v = 0} as a list of column vectors."""
    m = [[Fraction(x) for x in r] for r in rows]
    pivots = []
    r = 0
    for col in range(ncols):
        piv = next((i for i in range(r, len(m)) if m[i][col] != 0), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        lead = m[r][col]
        m[r] = [a / lead for a in m[r]]
        for i in range(len(m)):
            if i != r and m[i][col] != 0:
                f = m[i][col]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        pivots.append(col)
        r += 1
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        v = [Fraction(0)] * ncols
        v[f] = Fraction(1)
        for i, p in enumerate(pivots):
            v[p] = -m[i][f]
        basis.append(v)
    return basis


def matvec(a, v):
    return [sum(x * y for x, y in zip(row, v)) for row in a]


def matmul(a, b):
    bt = list(zip(*b)) if b else []
    return [[sum(x * y for x, y in zip(row, col)) for col in bt] for row in a]


def perm_sign(idx):
    s = 1
    for i in range(len(idx)):
        for j in range(i + 1, len(idx)):
            if idx[i] > idx[j]:
                s = -s
    return s


# cochains as functions ------------------------------------------------------

def unpack(vec, dim_l, n, dim_m):
    """Flat coefficient list -> {increasing tuple: [module coords]}."""
    out = {}
    for k, t in enumerate(combinations(range(dim_l), n)):
        out[t] = list(vec[k * dim_m:(k + 1) * dim_m])
    return out


def evaluate(f, dim_m, args):
    """f(args) for an alternating map given on increasing tuples."""
    out = [Fraction(0)] * dim_m
    supports = [[(i, x) for i, x in enumerate(a) if x] for a in args]
    for choice in product(*supports):
        idx = tuple(i for i, _ in choice)
        if len(set(idx)) < len(idx):
            continue
        coef = Fraction(1)
        for _, x in choice:
            coef *= x
        val = f[tuple(sorted(idx))]
        s = perm_sign(idx)
        for k in range(dim_m):
            out[k] += s * coef * val[k]
    return out


def basis_vec(d, i):
    return [Fraction(1) if j == i else Fraction(0) for j in range(d)]


def column(mat, j):
    return [row[j] for row in mat]


# Chevalley-Eilenberg, evaluated --------------------------------------------------

def bracket(struct, x, y):
    """struct[(i, j)] = {k: c} for all ordered pairs with nonzero bracket."""
    d = len(x)
    out = [Fraction(0)] * d
    for i, a in enumerate(x):
        if not a:
            continue
        for j, b in enumerate(y):
            if not b:
                continue
            for k, c in struct.get((i, j), {}).items():
                out[k] += a * b * c
    return out


def ce_apply(struct, dim_l, action, dim_m, f, n):
    """(bf) on every increasing (n+1)-tuple, straight from the formula."""
    out = {}
    for u in combinations(range(dim_l), n + 1):
        xs = [basis_vec(dim_l, i) for i in u]
        val = [Fraction(0)] * dim_m
        for i in range(n + 1):
            rest = xs[:i] + xs[i + 1:]
            fv = evaluate(f, dim_m, rest)
            acted = matvec(action[u[i]], fv) if dim_m else []
            for k in range(dim_m):
                val[k] += (-1) ** i * acted[k]
        for i, j in combinations(range(n + 1), 2):
            br = bracket(struct, xs[i], xs[j])
            rest = [br] + xs[:i] + xs[i + 1:j] + xs[j + 1:]
            fv = evaluate(f, dim_m, rest)
            for k in range(dim_m):
                val[k] += (-1) ** (i + j) * fv[k]
        out[u] = val
    return out


def ce_matrix(struct, dim_l, action, dim_m, n):
    """Columns are images of the basis cochains; rows follow the tuple layout."""
    src = list(combinations(range(dim_l), n))
    cols = []
    for t in src:
        for m in range(dim_m):
            f = {s: [Fraction(0)] * dim_m for s in src}
            f[t] = basis_vec(dim_m, m)
            img = ce_apply(struct, dim_l, action, dim_m, f, n)
            cols.append([x for u in combinations(range(dim_l), n + 1) for x in img[u]])
    nrows = len(list(combinations(range(dim_l), n + 1))) * dim_m
    return [[cols[j][i] for j in range(len(cols))] for i in range(nrows)]


def ce_dims(struct, dim_l, action, dim_m, max_n):
    """Classical dim H^n for n = 0..max_n."""
    ranks = [dense_rank(ce_matrix(struct, dim_l, action, dim_m, n)) if dim_m else 0
             for n in range(max_n + 1)]
    out = []
    for n in range(max_n + 1):
        size = len(list(combinations(range(dim_l), n))) * dim_m
        out.append(size - ranks[n] - (ranks[n - 1] if n else 0))
    return out


# the constrained pair space -----------------------------------------------------

class Data:
    """Everything as nested lists: dims, structure dicts, actions, r/t/c."""

    def __init__(self, L, M):
        tl = lambda m: [[Fraction(x) for x in row] for row in m.tolist()]
        self.p = L.p
        self.dlt, self.dlb = L.top.dim, L.bottom.dim
        self.dmt, self.dmb = M.top_dim, M.bottom_dim
        self.st = {(i, j): dict(L.top.bracket_basis(i, j)) for i in range(self.dlt) for j in range(self.dlt)}
        self.sb = {(i, j): dict(L.bottom.bracket_basis(i, j)) for i in range(self.dlb) for j in range(self.dlb)}
        self.at = [tl(a) for a in M.left_top.action]
        self.ab = [tl(a) for a in M.left_bottom.action]
        self.rL, self.tL, self.cL = tl(L.r), tl(L.t), tl(L.c)
        self.rM, self.tM, self.cM = tl(M.mackey.r), tl(M.mackey.t), tl(M.mackey.c)

    def sizes(self, n):
        a = len(list(combinations(range(self.dlt), n))) * self.dmt
        b = len(list(combinations(range(self.dlb), n))) * self.dmb
        return a, b


def constraint_rows(D: Data, n):
    """Rows of the linear system cutting out constrained degree-n pairs."""
    a, b = D.sizes(n)
    N = a + b
    rows = []

    def forms(fn):
        # evaluate a linear expression on every unit pair vector
        cols = []
        for j in range(N):
            v = [Fraction(0)] * N
            v[j] = Fraction(1)
            ft = unpack(v[:a], D.dlt, n, D.dmt)
            fb = unpack(v[a:], D.dlb, n, D.dmb)
            cols.append(fn(ft, fb))
        for i in range(len(cols[0]) if cols else 0):
            rows.append([cols[j][i] for j in range(N)])

    def vsub(x, y):
        return [p - q for p, q in zip(x, y)]

    if n == 0:
        # f_e = r_M f_top and c_M f_e = f_e
        forms(lambda ft, fb: vsub(fb[()], matvec(D.rM, ft[()])))
        forms(lambda ft, fb: vsub(matvec(D.cM, fb[()]), fb[()]))
        return rows, N
    bot_tuples = list(combinations(range(D.dlb), n))
    top_tuples = list(combinations(range(D.dlt), n))

    def conj(ft, fb):
        out = []
        for u in bot_tuples:
            args = [column(D.cL, i) for i in u]
            out += vsub(matvec(D.cM, fb[u]), evaluate(fb, D.dmb, args))
        return out

    def restr(ft, fb):
        out = []
        for u in top_tuples:
            args = [column(D.rL, i) for i in u]
            out += vsub(matvec(D.rM, ft[u]), evaluate(fb, D.dmb, args))
        return out

    def transfer(first):
        def fn(ft, fb):
            out = []
            for x in range(D.dlb):
                for rest in combinations(range(D.dlt), n - 1):
                    top_args = [basis_vec(D.dlt, i) for i in rest]
                    bot_args = [column(D.rL, i) for i in rest]
                    tx, ex = column(D.tL, x), basis_vec(D.dlb, x)
                    if first:
                        lhs = evaluate(ft, D.dmt, [tx] + top_args)
                        inner = evaluate(fb, D.dmb, [ex] + bot_args)
                    else:
                        lhs = evaluate(ft, D.dmt, top_args + [tx])
                        inner = evaluate(fb, D.dmb, bot_args + [ex])
                    out += vsub(lhs, matvec(D.tM, inner))
            return out
        return fn

    forms(conj)
    forms(restr)
    forms(transfer(True))
    forms(transfer(False))
    return rows, N


def constrained_basis(D: Data, n):
    rows, N = constraint_rows(D, n)
    return dense_nullspace(rows, N) if rows else [basis_vec(N, j) for j in range(N)]


def pair_differential(D: Data, n):
    """Dense matrix of (f_top, f_e) -> (b f_top, b f_e); degree 0 starts from M(C_p)."""
    if n == 0:
        at = ce_matrix(D.st, D.dlt, D.at, D.dmt, 0) if D.dmt else []
        ab = ce_matrix(D.sb, D.dlb, D.ab, D.dmb, 0) if D.dmb else []
        ab_r = matmul(ab, D.rM) if ab and D.rM else [[Fraction(0)] * D.dmt for _ in range(len(ab))]
        return (at or []) + ab_r
    a1, b1 = D.sizes(n + 1)
    a0, b0 = D.sizes(n)
    top = ce_matrix(D.st, D.dlt, D.at, D.dmt, n) if D.dmt else [[Fraction(0)] * a0 for _ in range(a1)]
    bot = ce_matrix(D.sb, D.dlb, D.ab, D.dmb, n) if D.dmb else [[Fraction(0)] * b0 for _ in range(b1)]
    rows = [list(r) + [Fraction(0)] * b0 for r in top]
    rows += [[Fraction(0)] * a0 + list(r) for r in bot]
    return rows


def equivariant_top_dims(L, M, max_n):
    """dim H^n_top from constrained kernels, for n = 0..max_n."""
    D = Data(L, M)
    # degree-0 cochains are m in M(C_p); the differential lands in pairs
    images = []
    kers = []
    for n in range(max_n + 1):
        if n == 0:
            src = [basis_vec(D.dmt, j) for j in range(D.dmt)]
        else:
            src = constrained_basis(D, n)
        b = pair_differential(D, n)
        imgs = [matvec(b, v) for v in src]
        r = dense_rank(imgs) if imgs and imgs[0] else 0
        kers.append(len(src) - r)
        images.append(r)
    return [kers[n] - (images[n - 1] if n else 0) for n in range(max_n + 1)]
