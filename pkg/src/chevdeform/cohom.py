"""Group cohomology of finite groups by exact linear algebra over F_p.

Degree one uses a spanning tree of the Cayley graph: a 1-cochain that is a
crossed homomorphism along tree edges is determined by its values on the
generators, so the unknowns are t(1) and t(s_j) only and every non-tree edge
contributes one block of equations.  The same system with a 2-cocycle on the
right hand side decides whether an extension splits.

Degree two with trivial coefficients uses the Hopf formula on the Schreier
presentation read off the same tree: H^2(G,F_p) has dimension
dim Hom(R/[F,R], F_p) - rank F + dim H^1(G,F_p).
"""
from __future__ import annotations

import itertools
import random
from collections import deque

import numpy as np

from . import linalg as la
from . import ring as rg
from .liemod import GModule, build_lie
from .matgroup import (BudgetExceeded, FiniteMatrixGroup, GroupError, GroupSpec, LevelLog, MatOps,
                       SubgroupHandle, UnsupportedFamily, closure, enumerate_group, sl_generators,
                       sp_generators)

H1_BUDGET = 2 ** 26  # entries of the dense tree arrays
H2_BUDGET = 2500  # group order


class KernelNotAbelian(GroupError):
    pass


class GroupView:
    """Elements, index and multiplication of an enumerated group or subgroup."""

    def __init__(self, G, generators=None):
        if isinstance(G, SubgroupHandle):
            self.ambient = G.ambient
            self.elements = G.elements
            gens = G.generators
        elif isinstance(G, FiniteMatrixGroup):
            self.ambient = G
            self.elements = G.elements
            gens = G.generators
        else:
            raise TypeError("expected a group or subgroup")
        self.ops = self.ambient.ops
        self.mul = self.ops.mul
        self.inv = self.ops.inv
        self.identity = self.ambient.identity
        self.index = G.index if isinstance(G, FiniteMatrixGroup) else {x: i for i, x in enumerate(self.elements)}
        gens = generators if generators is not None else gens
        self.generators = [g for g in dict.fromkeys(gens) if g != self.identity]
        self.order = len(self.elements)


def view(G, generators=None):
    return G if isinstance(G, GroupView) else GroupView(G, generators)


class CayleyTree:
    """Breadth-first spanning tree from the identity."""

    def __init__(self, V: GroupView, gens):
        self.V = V
        self.gens = list(gens)
        N, k = V.order, len(gens)
        idx = V.index
        self.nxt = np.empty((k, N), dtype=np.int64)
        for j, s in enumerate(gens):
            row = self.nxt[j]
            for i, g in enumerate(V.elements):
                row[i] = idx[V.mul(g, s)]
        root = idx[V.identity]
        self.root = root
        self.parent = np.full(N, -1, dtype=np.int64)
        self.pgen = np.full(N, -1, dtype=np.int64)
        seen = np.zeros(N, dtype=bool)
        seen[root] = True
        order = [root]
        q = deque([root])
        while q:
            g = q.popleft()
            for j in range(k):
                h = self.nxt[j, g]
                if not seen[h]:
                    seen[h] = True
                    self.parent[h] = g
                    self.pgen[h] = j
                    order.append(h)
                    q.append(h)
        if len(order) != N:
            raise GroupError("generators do not generate the group")
        self.order = np.array(order, dtype=np.int64)
        self.tree_edge = np.zeros((k, N), dtype=bool)
        for h in order[1:]:
            self.tree_edge[self.pgen[h], self.parent[h]] = True

    def path(self, g):
        out = []
        while g != self.root:
            out.append(int(self.pgen[g]))
            g = int(self.parent[g])
        return out[::-1]


def small_generating_set(G, seed=0, tries=200):
    """A short generating list (two elements when a random pair works)."""
    V = view(G)
    N = V.order
    if N == 1:
        return []
    rng = random.Random(seed)
    els = V.elements
    for _ in range(tries):
        a, b = rng.choice(els), rng.choice(els)
        if len(closure([a, b], V.mul, V.identity)) == N:
            return [x for x in dict.fromkeys([a, b]) if x != V.identity]
    gens, cur = [], {V.identity}
    for x in els:
        if x not in cur:
            gens.append(x)
            cur = set(closure(gens, V.mul, V.identity))
            if len(cur) == N:
                break
    return gens


# ---------------------------------------------------------------------------
# degree 0 and 1

def h0_dim(M: GModule):
    return M.fixed_space().shape[0]


def _tree_arrays(T: CayleyTree, mats, p, cvals=None):
    """Affine expressions t(g) = A[g] u + a[g] and the action rho(g)."""
    N = T.V.order
    k = len(T.gens)
    d = mats[0].shape[0] if mats else 0
    U = (k + 1) * d
    if N * d * U > H1_BUDGET:
        raise BudgetExceeded(f"cohomology arrays of size {N * d * U}")
    A = np.zeros((N, d, U), dtype=np.int64)
    a = np.zeros((N, d), dtype=np.int64)
    rho = np.zeros((N, d, d), dtype=np.int64)
    r = T.root
    A[r, :, :d] = np.eye(d, dtype=np.int64)
    rho[r] = np.eye(d, dtype=np.int64)
    for h in T.order[1:]:
        g, j = T.parent[h], T.pgen[h]
        A[h] = A[g]
        A[h, :, (j + 1) * d:(j + 2) * d] += rho[g]
        A[h] %= p
        if cvals is not None:
            a[h] = (a[g] + cvals[j][g]) % p
        rho[h] = la.matmul(rho[g], mats[j], p)
    return A, a, rho, U


def _edge_system(T: CayleyTree, mats, p, cvals=None):
    """Yield (rows, rhs) blocks of the system for t with
    t(g s_j) = t(g) + g.t(s_j) + c(g, s_j)."""
    A, a, rho, U = _tree_arrays(T, mats, p, cvals)
    N, d = a.shape
    k = len(T.gens)
    for j in range(k):
        nx = T.nxt[j]
        rows = A.copy()
        rows[:, :, (j + 1) * d:(j + 2) * d] += rho
        rows -= A[nx]
        rhs = a - a[nx]
        if cvals is not None:
            rhs = rhs + cvals[j]
        keep = ~T.tree_edge[j]
        yield rows[keep].reshape(-1, U) % p, (-rhs[keep]).reshape(-1) % p
        # t(s_j) equals the unknown z_j
        sj = T.nxt[j, T.root]
        sel = np.zeros((d, U), dtype=np.int64)
        sel[:, (j + 1) * d:(j + 2) * d] = np.eye(d, dtype=np.int64)
        yield (A[sj] - sel) % p, (-a[sj]) % p


def _solve_system(T, mats, p, cvals=None, chunk=20000):
    """(rank, consistent) of the tree-reduced system."""
    d = mats[0].shape[0]
    U = (len(T.gens) + 1) * d
    E = la.Eliminator(U + 1, p)
    for rows, rhs in _edge_system(T, mats, p, cvals):
        aug = np.hstack([rows, rhs.reshape(-1, 1)])
        for s in range(0, aug.shape[0], chunk):
            E.add(aug[s:s + chunk])
        if E.pivots and E.pivots[-1] == U:
            return None, False
    return E.rank, True


def module_for_generators(M: GModule, gens):
    if M.generators is not None and list(M.generators) == list(gens):
        return M.mats
    return [M.act(g) for g in gens]


def h1_dim(G, M: GModule, gens=None) -> int:
    """dim_{F_p} H^1(G, M)."""
    V = view(G)
    if M.dim == 0:
        return 0
    gens = gens if gens is not None else (M.generators if M.generators is not None else V.generators)
    gens = [g for g in gens if g != V.identity]
    if not gens:
        return 0
    T = CayleyTree(V, gens)
    mats = module_for_generators(M, gens)
    rank, _ = _solve_system(T, mats, M.p)
    z1 = (len(gens) + 1) * M.dim - rank
    b1 = M.dim - h0_dim(GModule(M.p, mats))
    return z1 - b1


def z1_basis(G, M: GModule, gens):
    """Basis of the 1-cocycles, each row listing (c(s_1), ..., c(s_k)) on the
    generators s_j."""
    V = view(G)
    T = CayleyTree(V, gens)
    mats = module_for_generators(M, gens)
    d = M.dim
    U = (len(gens) + 1) * d
    E = la.Eliminator(U, M.p)
    for rows, _ in _edge_system(T, mats, M.p):
        E.add(rows)
    sol = la.nullspace(E.basis, M.p) if E.rank else np.eye(U, dtype=np.int64)
    if np.any(sol[:, :d]):
        raise GroupError("cocycle with c(1) != 0")
    return la.rref(sol[:, d:], M.p)[0]


def b1_basis(M: GModule, gens):
    """Coboundaries g -> g.m - m on the generators, one row per basis vector m."""
    mats = module_for_generators(M, gens)
    I = np.eye(M.dim, dtype=np.int64)
    return np.hstack([(A - I).T for A in mats]) % M.p


def h1_representatives(G, M: GModule, gens, limit=4096):
    """One cocycle (on the generators) for every class in H^1(G, M)."""
    Z = z1_basis(G, M, gens)
    B = b1_basis(M, gens)
    E = la.Eliminator(Z.shape[1], M.p)
    E.add(B)
    comp = []
    for z in Z:
        if E.add(z):
            comp.append(z)
    count = M.p ** len(comp)
    if count > limit:
        raise BudgetExceeded(f"{count} cohomology classes")
    out = []
    for coeffs in itertools.product(range(M.p), repeat=len(comp)):
        v = np.zeros(Z.shape[1], dtype=np.int64)
        for c, z in zip(coeffs, comp):
            v = (v + c * z) % M.p
        out.append(v)
    return out


def trivial_module(G, p, dim=1):
    V = view(G)
    I = np.eye(dim, dtype=np.int64)
    return GModule(p, [I for _ in V.generators], V.generators, G, lambda g: I)


def hom_to_fp_dim(G, p):
    """dim Hom(G, F_p) = dim H^1(G, F_p)."""
    return h1_dim(G, trivial_module(G, p))


# ---------------------------------------------------------------------------
# degree 2, trivial coefficients

def h2_trivial_dim(G, p, gens=None, budget=H2_BUDGET) -> int:
    V = view(G)
    N = V.order
    if N == 1:
        return 0
    if N > budget:
        raise BudgetExceeded(f"H^2 needs |G| <= {budget}, got {N}")
    gens = gens if gens is not None else small_generating_set(V)
    T = CayleyTree(V, gens)
    k = len(gens)
    nontree = {}
    for j in range(k):
        for g in range(N):
            if not T.tree_edge[j, g]:
                nontree[(g, j)] = len(nontree)
    E = len(nontree)
    prv = np.empty_like(T.nxt)
    for j in range(k):
        prv[j, T.nxt[j]] = np.arange(N)
    paths = {}

    def path(g):
        if g not in paths:
            paths[g] = T.path(g)
        return paths[g]

    def rewrite(word, vec):
        c = T.root
        for j, e in word:
            if e > 0:
                idx = nontree.get((c, j))
                if idx is not None:
                    vec[idx] += 1
                c = T.nxt[j, c]
            else:
                h = prv[j, c]
                idx = nontree.get((h, j))
                if idx is not None:
                    vec[idx] -= 1
                c = h
        return c

    rows = np.zeros((k * E, E), dtype=np.int64)
    r = 0
    for (g, j), e in nontree.items():
        h = int(T.nxt[j, g])
        rel = [(x, 1) for x in path(g)] + [(j, 1)] + [(x, -1) for x in reversed(path(h))]
        for i in range(k):
            word = [(i, 1)] + rel + [(i, -1)]
            vec = rows[r]
            end = rewrite(word, vec)
            if end != T.root:
                raise GroupError("rewriting did not close up")
            vec[e] -= 1
            r += 1
    rows %= p
    hom_rel = E - la.rank(rows, p)
    return hom_rel - k + hom_to_fp_dim(G, p)


def h2_trivial_dim_direct(G, p) -> int:
    """Reference computation on all 2-cochains (small groups only)."""
    V = view(G)
    N = V.order
    if N > 30:
        raise BudgetExceeded("direct H^2 is for |G| <= 30")
    idx = V.index
    els = V.elements
    mul = np.array([[idx[V.mul(a, b)] for b in els] for a in els], dtype=np.int64)
    U = N * N
    rows = []
    for g in range(N):
        for h in range(N):
            for k in range(N):
                row = np.zeros(U, dtype=np.int64)
                row[h * N + k] += 1
                row[mul[g, h] * N + k] -= 1
                row[g * N + mul[h, k]] += 1
                row[g * N + h] -= 1
                rows.append(row % p)
    z2 = U - la.rank(np.array(rows), p)
    D = np.zeros((U, N), dtype=np.int64)
    for g in range(N):
        for h in range(N):
            D[g * N + h, h] += 1
            D[g * N + h, mul[g, h]] -= 1
            D[g * N + h, g] += 1
    b2 = la.rank(D % p, p)
    return z2 - b2


# ---------------------------------------------------------------------------
# extensions

class ExtensionClass:
    """An extension 1 -> K -> E -> Q -> 1 with K elementary abelian.

    ``section`` maps each element of Q to an element of E; ``klog``/``kexp``
    identify K with F_p^r; ``emul``/``einv`` multiply in E."""

    def __init__(self, quotient: GroupView, section, klog, kexp, emul, einv, p, r, name=""):
        self.quotient = quotient
        self.section = section
        self.klog, self.kexp = klog, kexp
        self.emul, self.einv = emul, einv
        self.p, self.r = p, r
        self.name = name
        self.identity_e = section[quotient.identity]

    def conj_matrix(self, q):
        s = self.section[q]
        sinv = self.einv(s)
        cols = []
        for i in range(self.r):
            v = [0] * self.r
            v[i] = 1
            x = self.kexp(v)
            cols.append(self.klog(self.emul(self.emul(s, x), sinv)))
        return np.array(cols, dtype=np.int64).T.reshape(self.r, self.r) % self.p

    def module(self, gens=None):
        Q = self.quotient
        gens = gens if gens is not None else Q.generators
        return GModule(self.p, [self.conj_matrix(g) for g in gens], gens, Q, self.conj_matrix,
                       name=f"kernel of {self.name}")

    def cocycle(self, g, h):
        s = self.section
        gh = self.quotient.mul(g, h)
        x = self.emul(self.emul(s[g], s[h]), self.einv(s[gh]))
        return np.array(self.klog(x), dtype=np.int64) % self.p

    def cocycle_residual(self, g, h, k, rho=None):
        """g.c(h,k) - c(gh,k) + c(g,hk) - c(g,h); zero for a 2-cocycle."""
        Q = self.quotient
        A = rho(g) if rho else self.conj_matrix(g)
        val = la.matmul(A, self.cocycle(h, k).reshape(-1, 1), self.p).reshape(-1)
        val = val - self.cocycle(Q.mul(g, h), k) + self.cocycle(g, Q.mul(h, k)) - self.cocycle(g, h)
        return val % self.p

    def pushforward(self, sub_rows):
        """The extension of Q by K/N for N spanned by ``sub_rows`` (a Q-stable
        subspace of the kernel coordinates).  Cocycle and action are
        computed through the projection; elements are still those of E."""
        p, r = self.p, self.r
        N, piv = la.rref(np.asarray(sub_rows, dtype=np.int64).reshape(-1, r), p)
        keep = [i for i in range(r) if i not in set(piv)]
        full = np.vstack([N, np.eye(r, dtype=np.int64)[keep]]) if N.shape[0] else np.eye(r, dtype=np.int64)
        to_coords = la.inverse(full.T, p)
        k = N.shape[0]

        def klog(x):
            v = np.array(self.klog(x), dtype=np.int64).reshape(-1, 1)
            return list(la.matmul(to_coords, v, p)[k:, 0])

        def kexp(c):
            v = np.zeros(r, dtype=np.int64)
            v[keep] = np.asarray(c, dtype=np.int64)
            return self.kexp(list(v % p))

        return ExtensionClass(self.quotient, self.section, klog, kexp, self.emul, self.einv,
                              p, r - k, name=f"{self.name} / N")

    def with_section(self, section):
        return ExtensionClass(self.quotient, section, self.klog, self.kexp, self.emul, self.einv,
                              self.p, self.r, self.name)


def _elementary_basis(elements, mul, identity, p):
    """Greedy F_p-basis of an elementary abelian group, and a log table."""
    basis = []
    span = {identity: ()}
    for x in elements:
        if x in span:
            continue
        basis.append(x)
        new = {}
        for y, c in span.items():
            new[y] = c + (0,)
            z = y
            for a in range(1, p):
                z = mul(z, x)
                new[z] = c + (a,)
        span = new
    return basis, span


def extension_two_cocycle(total, proj, quotient, klog=None) -> ExtensionClass:
    """Extension class of an enumerated ``total`` group over ``quotient`` via
    ``proj``, using the minimal canonical-form preimage as section."""
    TV = view(total)
    QV = view(quotient)
    qid = QV.identity
    kernel = [x for x in TV.elements if proj(x) == qid]
    mul = TV.mul
    kgens = kernel
    for a in kgens[: 50]:
        for b in kgens[: 50]:
            if mul(a, b) != mul(b, a):
                raise KernelNotAbelian("kernel is not abelian")
    p = (quotient.ambient if isinstance(quotient, SubgroupHandle) else quotient).spec.ring.p
    for x in kernel:
        if TV.ops.power(x, p) != TV.identity:
            raise KernelNotAbelian("kernel is not elementary abelian")
    basis, table = _elementary_basis(kernel, mul, TV.identity, p)
    r = len(basis)
    inv_table = {c: x for x, c in table.items()}
    section = {}
    for x in TV.elements:
        q = proj(x)
        if q not in section or x < section[q]:
            section[q] = x
    section[qid] = TV.identity
    return ExtensionClass(QV, section, lambda x: list(table[x]), lambda v: inv_table[tuple(int(a) % p for a in v)],
                          TV.mul, TV.inv, p, r, name=f"{TV.ambient.spec} -> {QV.ambient.spec}")


def tree_extension(quotient, lifts, kernel_rows, level_log: LevelLog, emul, einv, name=""):
    """Extension given by lifts of the quotient generators.

    ``kernel_rows`` span the kernel inside the level-log coordinates; the
    section is the tree product of the lifts."""
    QV = view(quotient)
    p = level_log.R.p
    B, _ = la.rref(np.asarray(kernel_rows, dtype=np.int64), p)
    r = B.shape[0]
    cols = la.rref(B, p)[1]
    Binv = la.inverse(B[:, cols], p)
    T = CayleyTree(QV, QV.generators)
    ident = level_log.G.identity
    section = {QV.identity: ident}
    for h in T.order[1:]:
        g, j = T.parent[h], T.pgen[h]
        section[QV.elements[h]] = emul(section[QV.elements[g]], lifts[j])

    def klog(x):
        v = np.array(level_log.log(x), dtype=np.int64) % p
        c = la.matmul(v[cols].reshape(1, -1), Binv, p)[0]
        if np.any((la.matmul(c.reshape(1, -1), B, p)[0] - v) % p):
            raise GroupError("element outside the kernel")
        return list(c)

    def kexp(c):
        v = la.matmul(np.asarray(c, dtype=np.int64).reshape(1, -1), B, p)[0]
        return level_log.exp(list(v))

    return ExtensionClass(QV, section, klog, kexp, emul, einv, p, r, name=name)


def _cocycle_table(e: ExtensionClass, T: CayleyTree):
    Q = e.quotient
    out = []
    for j, s in enumerate(T.gens):
        vals = np.zeros((Q.order, e.r), dtype=np.int64)
        for i, g in enumerate(Q.elements):
            vals[i] = e.cocycle(g, s)
        out.append(vals)
    return out


def is_coboundary(e: ExtensionClass, gens=None, seed=0) -> bool:
    """True iff the extension splits."""
    Q = e.quotient
    if e.r == 0:
        return True
    gens = gens if gens is not None else small_generating_set(Q, seed)
    if not gens:
        return True
    T = CayleyTree(Q, gens)
    mats = [e.conj_matrix(g) for g in gens]
    cvals = _cocycle_table(e, T)
    _, ok = _solve_system(T, mats, e.p, cvals)
    return ok


def find_complement(e: ExtensionClass, gens=None, seed=0, budget=2 ** 18):
    """Search for a subgroup of E mapping isomorphically onto Q; returns the
    list of its elements or None."""
    Q = e.quotient
    N = Q.order
    p, r = e.p, e.r
    if N * p ** r > budget:
        raise BudgetExceeded("complement search above budget")
    gens = gens if gens is not None else small_generating_set(Q, seed)
    if not gens:
        return [e.identity_e]
    kernel = [e.kexp(list(np.unravel_index(i, (p,) * r))) if r else e.identity_e for i in range(p ** r)]
    emul = e.emul
    ident = e.identity_e
    qorders = [Q.ambient.element_order(g) for g in gens]

    def eorder(x, bound):
        k, y = 1, x
        while y != ident:
            y = emul(y, x)
            k += 1
            if k > bound:
                return None
        return k

    cands = []
    for g, og in zip(gens, qorders):
        base = e.section[g]
        cands.append([y for y in (emul(k, base) for k in kernel) if eorder(y, og) == og])
    pair_orders = {}
    for i in range(len(gens)):
        for j in range(i + 1, len(gens)):
            pair_orders[(i, j)] = Q.ambient.element_order(Q.mul(gens[i], gens[j]))

    chosen = []

    def rec(i):
        if i == len(gens):
            els = _bounded_closure(chosen, emul, ident, N)
            return els if els is not None and len(els) == N else None
        for y in cands[i]:
            ok = True
            for j in range(i):
                o = pair_orders[(j, i)]
                if eorder(emul(chosen[j], y), o) != o:
                    ok = False
                    break
            if not ok:
                continue
            chosen.append(y)
            res = rec(i + 1)
            if res is not None:
                return res
            chosen.pop()
        return None

    return rec(0)


def _bounded_closure(gens, mul, identity, bound):
    seen = {identity}
    order = [identity]
    q = deque([identity])
    while q:
        x = q.popleft()
        for g in gens:
            y = mul(x, g)
            if y not in seen:
                seen.add(y)
                order.append(y)
                if len(order) > bound:
                    return None
                q.append(y)
    return order


def congruence_extension(family, n, field: rg.FieldDesc, route="tree", budget=2 ** 20) -> ExtensionClass:
    """The extension 1 -> Lie(G^sc)(F) -> H'_{W_2(F)} -> H'_F -> 1, where H' is
    the image of the simply connected group and the kernel is the full
    congruence kernel Lie(G)(F) of G(W_2(F)) -> G(F).

    ``route="tree"`` never enumerates the total group: the quotient generators
    are lifted to elementary matrices (or transvections) over W_2(F) and the
    kernel is spanned by I + V(X) for X in the Lie algebra.  ``route="total"``
    enumerates H'_{W_2(F)} and uses the minimal-preimage section."""
    W = rg.get_ring(rg.make_witt2(field))
    Fr = rg.get_ring(rg.field_ring(field))
    q = Fr.q
    proj = family == "PGL"
    ops2, ops1 = MatOps(W, n, proj), MatOps(Fr, n, proj)
    plain = MatOps(W, n)
    if family in ("SL", "PGL"):
        lifts = sl_generators(plain)
        lie = build_lie("pgl" if proj else "sl", n, field)
    elif family == "Sp":
        lifts = sp_generators(plain)
        lie = build_lie("sp", n, field)
    else:
        raise UnsupportedFamily(f"no congruence extension for {family}")
    if proj:
        lifts = [ops2.canon(x) for x in lifts]

    def red(x):
        y = tuple(c % q for c in x)
        return ops1.canon(y) if proj else y

    G1 = enumerate_group(GroupSpec(family, n, rg.field_ring(field)))
    lift_of = {}
    for x in lifts:
        r = red(x)
        if r != ops1.identity:
            lift_of.setdefault(r, x)
    Q = G1.subgroup(list(lift_of))
    spec2 = GroupSpec(family, n, rg.make_witt2(field))
    shell = FiniteMatrixGroup(spec2, ops2, [], lifts)
    L = LevelLog(shell, 1)
    kernel = [L.exp(lie.mat_vec(X)) for X in lie.fp_basis]
    rows = [L.log(x) for x in kernel]
    name = f"{family}{n}(W2({field})) -> {family}{n}({field})"
    if route == "tree":
        QV = view(Q)
        return tree_extension(QV, [lift_of[g] for g in QV.generators], rows, L, ops2.mul, ops2.inv, name=name)
    if route != "total":
        raise ValueError(f"unknown route {route!r}")
    els = closure(list(lift_of.values()) + kernel, ops2.mul, ops2.identity, budget)
    total = FiniteMatrixGroup(spec2, ops2, els, list(lift_of.values()))
    e = extension_two_cocycle(total, red, Q)
    e.name = name
    return e
