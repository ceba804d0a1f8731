"""Classical Lie algebras as matrix algebras, and their adjoint modules.

A Lie algebra is an F-subspace of M_n(K) (K = F except for su3, where K is
the quadratic extension), optionally taken modulo a subspace U (the scalar
line for pgl).  All module computations are over F_p on the F_p-coordinates
of a fixed basis.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field

import numpy as np

from . import linalg as la
from . import ring as rg
from .matgroup import BudgetExceeded, MatOps, symplectic_form, hermitian_form
from .ring import FieldDesc, get_ring

SPIN_CAP = 2 ** 20
LATTICE_CAP = 4096


class Unsupported(ValueError):
    pass


class NotStable(ValueError):
    pass


# ---------------------------------------------------------------------------
# Lie algebras

class LieAlgebraRep:
    def __init__(self, family, n, field: FieldDesc, K: FieldDesc, basis, quotient=(), name=None):
        self.family, self.n, self.field, self.K = family, n, field, K
        self.R = get_ring(rg.field_ring(K))
        self.ops = MatOps(self.R, n)
        self.p = field.p
        self.f = field.f
        self.basis = [tuple(b) for b in basis]
        self.quotient = [tuple(u) for u in quotient]
        self.name = name or f"{family}{n}({field})"
        self.fp_basis = [self.scale(self.p ** i, b) for b in self.basis for i in range(self.f)]
        self.fp_quot = [self.scale(self.p ** i, u) for u in self.quotient for i in range(self.f)]
        S = np.array([self.mat_vec(b) for b in self.fp_basis + self.fp_quot], dtype=np.int64)
        if S.shape[0]:
            red, piv = la.rref(S.T, self.p)
            if len(piv) != S.shape[0]:
                raise ValueError("basis is not linearly independent")
            rows = _independent_columns(S, self.p)
            self._rows = rows
            self._solver = la.inverse(S[:, rows], self.p)
        else:
            self._rows, self._solver = [], np.zeros((0, 0), dtype=np.int64)
        self._S = S
        self._struct = None

    def __repr__(self):
        return f"<Lie algebra {self.name} of dim {self.dim}>"

    @property
    def dim(self):
        return len(self.basis)

    @property
    def fp_dim(self):
        return len(self.fp_basis)

    def scale(self, c, X):
        return tuple(self.R.mul(c, x) for x in X)

    def mat_vec(self, X):
        out = []
        F = self.R.F
        for x in X:
            out.extend(F.digits(x))
        return out

    def vec_mat(self, v):
        F = self.R.F
        fk = F.f
        return tuple(F.from_digits(list(v[i * fk:(i + 1) * fk])) for i in range(self.n * self.n))

    def coords(self, X, check=True):
        """F_p coordinates of X (mod U) in fp_basis."""
        v = np.array(self.mat_vec(X), dtype=np.int64)
        if not self._rows:
            if check and np.any(v % self.p):
                raise NotStable("element outside the algebra")
            return np.zeros(0, dtype=np.int64)
        c = la.matmul(v[self._rows].reshape(1, -1), self._solver, self.p)[0]
        if check:
            back = la.matmul(c.reshape(1, -1), self._S, self.p)[0]
            if np.any((back - v) % self.p):
                raise NotStable("element outside the algebra")
        return c[: self.fp_dim]

    def element(self, c):
        """Representative matrix of the F_p-combination c of fp_basis."""
        out = self.ops.zero
        for ci, b in zip(c, self.fp_basis):
            ci = int(ci) % self.p
            for _ in range(ci):
                out = self.ops.add(out, b)
        return out

    def bracket(self, X, Y):
        return self.ops.sub(self.ops.mul(X, Y), self.ops.mul(Y, X))

    def structure_constants(self):
        """[b_i, b_j] in F_p coordinates, shape (d, d, d)."""
        if self._struct is None:
            d = self.fp_dim
            T = np.zeros((d, d, d), dtype=np.int64)
            for i in range(d):
                for j in range(i + 1, d):
                    c = self.coords(self.bracket(self.fp_basis[i], self.fp_basis[j]))
                    T[i, j] = c
                    T[j, i] = (-c) % self.p
            self._struct = T
        return self._struct

    def contains(self, X):
        try:
            self.coords(X)
            return True
        except NotStable:
            return False

    def to_json(self):
        return {"family": self.family, "n": self.n, "field": str(self.field), "dim": self.dim}


def _independent_columns(S, p):
    _, piv = la.rref(S, p)
    return piv


def _fp_nullspace_matrices(eqs, nvars, p):
    return la.nullspace(np.array(eqs, dtype=np.int64).reshape(-1, nvars), p)


def build_lie(family, n, field: FieldDesc) -> LieAlgebraRep:
    fam = family.lower()
    if fam in ("sl", "gl"):
        if not 1 <= n <= 4:
            raise Unsupported(f"{family}_n needs n <= 4")
        return _build_sl_gl(fam, n, field)
    if fam == "pgl":
        if not 2 <= n <= 3:
            raise Unsupported("pgl_n needs n <= 3")
        ops = MatOps(get_ring(rg.field_ring(field)), n)
        basis = [_unit(n, i, j) for i in range(n) for j in range(n) if (i, j) != (n - 1, n - 1)]
        return LieAlgebraRep("pgl", n, field, field, basis, quotient=[ops.identity])
    if fam == "sp":
        if n != 4:
            raise Unsupported("sp only for n = 4")
        return _build_sp(n, field)
    if fam == "su3":
        if field.q != 2:
            raise Unsupported("su3 only over F_2")
        return _build_su3()
    raise Unsupported(family)


def _unit(n, i, j, c=1):
    m = [0] * (n * n)
    m[i * n + j] = c
    return tuple(m)


def _build_sl_gl(fam, n, field):
    R = get_ring(rg.field_ring(field))
    basis = [_unit(n, i, j) for i in range(n) for j in range(n) if i != j]
    if fam == "sl":
        for i in range(n - 1):
            m = [0] * (n * n)
            m[i * n + i] = 1
            m[(i + 1) * n + i + 1] = R.neg(1)
            basis.append(tuple(m))
    else:
        basis += [_unit(n, i, i) for i in range(n)]
    return LieAlgebraRep(fam, n, field, field, basis)


def _build_sp(n, field):
    p = field.p
    J = [x % p for x in symplectic_form(n)]
    # X^T J + J X = 0, coefficients in F_p, so an F_p solution basis is an F-basis
    eqs = []
    for a in range(n):
        for b in range(n):
            row = [0] * (n * n)
            for k in range(n):
                # (X^T J)_{ab} = sum_k X_{ka} J_{kb};  (J X)_{ab} = sum_k J_{ak} X_{kb}
                row[k * n + a] += J[k * n + b]
                row[k * n + b] += J[a * n + k]
            eqs.append([x % p for x in row])
    sols = _fp_nullspace_matrices(eqs, n * n, p)
    basis = [tuple(int(x) for x in s) for s in sols]
    return LieAlgebraRep("sp", n, field, field, basis)


def _build_su3():
    F2 = rg.make_field(2, 1)
    F4 = rg.make_field(2, 2)
    R = get_ring(rg.field_ring(F4))
    ops = MatOps(R, 3)
    J = hermitian_form()
    frob = R.F.frob
    # F_2-linear conditions on the 18 F_2-coordinates of X
    def cond(X):
        star = tuple(frob(X[j * 3 + i]) for i in range(3) for j in range(3))
        Y = ops.add(ops.mul(star, J), ops.mul(J, X))
        tr = R.add(R.add(X[0], X[4]), X[8])
        out = []
        for y in Y + (tr,):
            out.extend(R.F.digits(y))
        return out

    cols = []
    for k in range(18):
        v = [0] * 18
        v[k] = 1
        X = tuple(R.F.from_digits(v[2 * i:2 * i + 2]) for i in range(9))
        cols.append(cond(X))
    A = np.array(cols, dtype=np.int64).T
    sols = la.nullspace(A, 2)
    basis = [tuple(R.F.from_digits(list(s[2 * i:2 * i + 2])) for i in range(9)) for s in sols]
    return LieAlgebraRep("su3", 3, F2, F4, basis, name="su3(F2)")


def subalgebra(g: LieAlgebraRep, fp_vectors, name=None) -> LieAlgebraRep:
    """Lie subalgebra spanned over F_p by the given coordinate vectors.

    The result is given an F_p-basis, so its ``field`` is F_p unless the span
    is visibly an F-subspace (then an F-basis is extracted)."""
    red, _ = la.rref(np.array(fp_vectors, dtype=np.int64).reshape(-1, g.fp_dim), g.p)
    mats = [g.element(r) for r in red]
    if g.f > 1:
        fbasis = _f_basis(g, red)
        if fbasis is not None:
            return LieAlgebraRep(g.family, g.n, g.field, g.K, [g.element(r) for r in fbasis],
                                 g.quotient, name=name)
    Fp = rg.make_field(g.p, 1)
    sub = LieAlgebraRep(g.family, g.n, Fp, g.K, mats, g.quotient, name=name)
    return sub


def _f_basis(g, red):
    """F-basis (as F_p coordinate rows) of an F_p-span, if it is F-stable."""
    p, f = g.p, g.f
    alpha = p  # code of the polynomial generator x
    E = la.Eliminator(g.fp_dim, p)
    E.add(red)
    for r in red:
        X = g.element(r)
        if not E.contains(g.coords(g.scale(alpha, X))):
            return None
    chosen = []
    span = la.Eliminator(g.fp_dim, p)
    for r in red:
        if span.contains(r):
            continue
        chosen.append(r)
        X = g.element(r)
        for i in range(f):
            span.add(g.coords(g.scale(alpha ** i if i else 1, X)) if i else r)
    return chosen


def derived(g: LieAlgebraRep) -> LieAlgebraRep:
    d = g.fp_dim
    T = g.structure_constants()
    rows = T.reshape(d * d, d)
    red, _ = la.rref(rows, g.p)
    return subalgebra(g, red, name=f"[{g.name},{g.name}]") if red.shape[0] else \
        LieAlgebraRep(g.family, g.n, g.field, g.K, [], g.quotient, name=f"[{g.name},{g.name}]")


def is_perfect_lie(g: LieAlgebraRep) -> bool:
    return derived(g).fp_dim == g.fp_dim


def center_fp(g: LieAlgebraRep):
    """F_p-basis rows of Z(g)."""
    d = g.fp_dim
    if d == 0:
        return np.zeros((0, 0), dtype=np.int64)
    T = g.structure_constants()
    # X = sum x_i b_i is central iff sum_i x_i T[i, j, :] = 0 for all j
    A = T.transpose(1, 2, 0).reshape(d * d, d)
    return la.nullspace(A, g.p)


# ---------------------------------------------------------------------------
# center table

def dim_lie_mu(m, p):
    return 1 if m % p == 0 else 0


def lie_center_table(dynkin, rank, p, isogeny="sc"):
    """(dim z, dim z', dim z'') with z = Lie Z(G^sc), z' = ker dphi^sc,
    z'' = ker dphi^ad = Z(g), from the center of G^sc and the isogeny.

    ``isogeny`` is "sc", "ad" or an integer k = |ker(G^sc -> G)|."""
    center = center_structure(dynkin, rank)
    z = sum(dim_lie_mu(m, p) for m in center)
    if isogeny == "sc":
        return z, 0, z
    if isogeny == "ad":
        return z, z, 0
    k = int(isogeny)
    order = int(np.prod(center)) if center else 1
    if k <= 1 or order % k or k == order:
        raise ValueError(f"kernel order {k} is not intermediate for {dynkin}{rank}")
    if len(center) == 2:
        # mu_2 x mu_2 with a mu_2 kernel
        return z, dim_lie_mu(2, p), dim_lie_mu(2, p)
    return z, dim_lie_mu(k, p), dim_lie_mu(order // k, p)


def center_structure(dynkin, rank):
    """Orders of the cyclic factors of Z(G^sc) (as a group of multiplicative type)."""
    t = dynkin.lstrip("2").lstrip("3")
    if t == "A":
        return [rank + 1]
    if t in ("B", "C"):
        return [2]
    if t == "D":
        return [2, 2] if rank % 2 == 0 else [4]
    if t == "E6":
        return [3]
    if t == "E7":
        return [2]
    return []


def isogeny_class(zp, zpp):
    if zp == 0:
        return "Lie-simply-connected"
    if zpp == 0:
        return "Lie-adjoint"
    return "Lie-intermediate"


@dataclass
class CenterReport:
    dimZ: int
    dimZprime: int | None
    dimZdoubleprime: int | None
    lieIsogenyClass: str | None
    tableDimZ: int | None = None

    @property
    def agrees(self):
        return self.tableDimZ is None or self.tableDimZ == self.dimZ

    def to_json(self):
        return dict(self.__dict__)


def _sl_scalars_meet(n, field):
    return 1 if n % field.p == 0 else 0


def center(g: LieAlgebraRep) -> CenterReport:
    Z = center_fp(g)
    f = g.f
    dimZ = Z.shape[0] // f
    fam, n, p = g.family, g.n, g.p
    zp = zpp = table = None
    if fam == "sl":
        table = lie_center_table("A", n - 1, p, "sc")[2] if n >= 2 else None
        zp, zpp = 0, _sl_scalars_meet(n, g.field)
    elif fam == "pgl":
        table = lie_center_table("A", n - 1, p, "ad")[2]
        zp, zpp = _sl_scalars_meet(n, g.field), 0
    elif fam == "sp":
        table = lie_center_table("C", n // 2, p, "sc")[2]
        zp, zpp = 0, dimZ
    elif fam == "su3":
        table = lie_center_table("2A", 2, p, "sc")[2]
        zp, zpp = 0, dimZ
    elif fam == "gl":
        table = 1
    cls = isogeny_class(zp, zpp) if zp is not None else None
    return CenterReport(dimZ, zp, zpp, cls, table)


# ---------------------------------------------------------------------------
# modules

class GModule:
    """F_p[G]-module given by action matrices (acting on column vectors) for
    a list of group generators.  ``act`` optionally computes the matrix of an
    arbitrary group element."""

    def __init__(self, p, mats, generators=None, group=None, act=None, name=""):
        self.p = p
        self.mats = [np.asarray(m, dtype=np.int64) % p for m in mats]
        self.dim = self.mats[0].shape[0] if self.mats else 0
        self.generators = list(generators) if generators is not None else None
        self.group = group
        self._act = act
        self.name = name

    def act(self, g):
        if self._act is None:
            raise ValueError("module has no element action")
        return self._act(g)

    def is_trivial(self):
        I = np.eye(self.dim, dtype=np.int64)
        return all(not np.any((A - I) % self.p) for A in self.mats)

    def dual(self):
        mats = [la.inverse(A, self.p).T.copy() for A in self.mats]
        act = None
        if self._act is not None:
            act = lambda g: la.inverse(self._act(g), self.p).T.copy()
        return GModule(self.p, mats, self.generators, self.group, act, name=f"{self.name}*")

    def submodule(self, basis_rows):
        """Restriction to the submodule spanned by the rows."""
        B = np.asarray(basis_rows, dtype=np.int64).reshape(-1, self.dim)
        solve = coord_solver(B, self.p)
        mats = [solve(la.matmul(A, B.T, self.p).T).T for A in self.mats]
        act = None
        if self._act is not None:
            act = lambda g: solve(la.matmul(self._act(g), B.T, self.p).T).T
        return GModule(self.p, mats, self.generators, self.group, act)

    def quotient(self, basis_rows):
        """Quotient by the submodule spanned by the rows."""
        p, d = self.p, self.dim
        N, _ = la.rref(np.asarray(basis_rows, dtype=np.int64).reshape(-1, d), p)
        comp = _complement(N, d, p)
        full = np.vstack([N, comp]) if N.shape[0] else comp
        inv = la.inverse(full.T, p)  # coordinates w.r.t. rows of full
        k = N.shape[0]

        def proj(A):
            img = la.matmul(A, comp.T, p)  # columns = images of complement vectors
            c = la.matmul(inv, img, p)
            return c[k:]

        mats = [proj(A) for A in self.mats]
        act = (lambda g: proj(self._act(g))) if self._act is not None else None
        Q = GModule(p, mats, self.generators, self.group, act)
        Q.lift_rows = comp  # quotient coordinates w lift to w @ lift_rows
        return Q

    def fixed_space(self):
        if self.dim == 0:
            return np.zeros((0, 0), dtype=np.int64)
        I = np.eye(self.dim, dtype=np.int64)
        A = np.vstack([(M - I) % self.p for M in self.mats])
        return la.nullspace(A, self.p)

    def coinvariant_dim(self):
        if self.dim == 0:
            return 0
        I = np.eye(self.dim, dtype=np.int64)
        A = np.hstack([(M - I) % self.p for M in self.mats])
        return self.dim - la.rank(A, self.p)


def coord_solver(B, p):
    """Function mapping rows in the row space of B to coordinates."""
    cols = la.rref(B, p)[1]
    inv = la.inverse(B[:, cols], p)

    def solve(rows):
        rows = np.asarray(rows, dtype=np.int64).reshape(-1, B.shape[1])
        return la.matmul(rows[:, cols], inv, p)

    return solve


def _complement(N, d, p):
    piv = set(la.rref(N, p)[1]) if N.shape[0] else set()
    rows = [np.eye(d, dtype=np.int64)[i] for i in range(d) if i not in piv]
    return np.array(rows, dtype=np.int64).reshape(-1, d)


def adjoint_module(G, g: LieAlgebraRep, gens=None) -> GModule:
    """Conjugation action of G (a group over the matrix field of g) on g."""
    gens = gens if gens is not None else G.generators
    ops = g.ops

    def act(h):
        hinv = ops.inv(h)  # true inverse, not a projective representative
        cols = []
        for b in g.fp_basis:
            Y = ops.mul(ops.mul(h, b), hinv)
            try:
                cols.append(g.coords(Y))
            except NotStable:
                raise NotStable(f"conjugation does not preserve {g.name}")
        return np.array(cols, dtype=np.int64).T.reshape(g.fp_dim, g.fp_dim)

    mats = [act(h) for h in gens]
    return GModule(g.p, mats, gens, G, act, name=f"{g.name}")


def hom_space_dim(M: GModule, N: GModule):
    """dim_{F_p} Hom_G(M, N) (same generator lists)."""
    p = M.p
    if M.dim == 0 or N.dim == 0:
        return 0
    m, n = M.dim, N.dim
    # X (n x m) with B X = X A; vec row-major: (B kron I - I kron A^T) vec(X)
    rows = []
    Im, In = np.eye(m, dtype=np.int64), np.eye(n, dtype=np.int64)
    for A, B in zip(M.mats, N.mats):
        rows.append((np.kron(B, Im) - np.kron(In, A.T)) % p)
    return m * n - la.rank(np.vstack(rows), p)


def end_dim(M: GModule):
    return hom_space_dim(M, M)


# ---------------------------------------------------------------------------
# submodule structure

def spin(M: GModule, vecs):
    """Echelon basis of the submodule generated by the vectors."""
    E = la.Eliminator(M.dim, M.p)
    E.add(np.asarray(vecs, dtype=np.int64).reshape(-1, M.dim))
    frontier = E.basis
    mats_t = [A.T for A in M.mats]
    while frontier.shape[0] and not E.full():
        imgs = np.vstack([la.matmul(frontier, At, M.p) for At in mats_t])
        # residues modulo the current span are the genuinely new directions
        frontier = E.reduce(imgs)
        frontier = frontier[np.any(frontier != 0, axis=1)]
        if frontier.shape[0]:
            E.add(frontier)
    return E.basis.copy()


def _key(B):
    return B.tobytes() + bytes([B.shape[0]])


def _vectors_up_to_scalar(d, p):
    for lead in range(d):
        for tail in itertools.product(range(p), repeat=d - lead - 1):
            v = [0] * lead + [1] + list(tail)
            yield v


def cyclic_submodules(M: GModule, cap=SPIN_CAP):
    if M.p ** M.dim > cap:
        raise BudgetExceeded(f"p^dim = {M.p}^{M.dim} above spinning cap")
    found = {}
    for v in _vectors_up_to_scalar(M.dim, M.p):
        B = spin(M, [v])
        k = _key(B)
        if k not in found:
            found[k] = B
    return list(found.values())


def _contains(A, B, p):
    """Row space of B inside row space of A."""
    if B.shape[0] == 0:
        return True
    if A.shape[0] < B.shape[0]:
        return False
    return la.rank(np.vstack([A, B]), p) == A.shape[0]


def minimal_submodules(M: GModule, cyclic=None):
    cyc = cyclic if cyclic is not None else cyclic_submodules(M)
    cyc = sorted(cyc, key=lambda B: B.shape[0])
    mins = []
    for B in cyc:
        if not any(_contains(B, S, M.p) for S in mins):
            mins.append(B)
    return mins


def socle(M: GModule, cyclic=None):
    """(socle basis, list of simple summands as bases)."""
    mins = minimal_submodules(M, cyclic)
    E = la.Eliminator(M.dim, M.p)
    summands = []
    for S in mins:
        before = E.rank
        E.add(S)
        if E.rank == before + S.shape[0]:
            summands.append(S)
    # every minimal submodule lies in the sum of the chosen ones
    return E.basis.copy(), summands


def composition_factors(M: GModule):
    """Simple factors (as GModules) via repeated socle quotients."""
    out = []
    cur = M
    while cur.dim:
        soc, summands = socle(cur)
        for S in summands:
            out.append(cur.submodule(S))
        cur = cur.quotient(soc)
    out.sort(key=lambda S: S.dim)
    return out


def isomorphic_simple(S: GModule, T: GModule):
    return S.dim == T.dim and hom_space_dim(S, T) > 0


def submodule_lattice(M: GModule, cap=LATTICE_CAP, cyclic=None):
    """All submodules as echelon bases (complete flag, list)."""
    cyc = cyclic if cyclic is not None else cyclic_submodules(M)
    zero = np.zeros((0, M.dim), dtype=np.int64)
    lattice = {_key(zero): zero}
    for B in cyc:
        lattice[_key(B)] = B
    frontier = list(lattice.values())
    complete = True
    while frontier:
        new = []
        for A in frontier:
            for B in cyc:
                C, _ = la.rref(np.vstack([A, B]), M.p)
                k = _key(C)
                if k not in lattice:
                    lattice[k] = C
                    new.append(C)
                    if len(lattice) >= cap:
                        complete = False
                        break
            if not complete:
                break
        if not complete:
            break
        frontier = new
    return sorted(lattice.values(), key=lambda B: (B.shape[0], B.tobytes())), complete


def is_stable(M: GModule, B):
    if B.shape[0] == 0:
        return True
    E = la.Eliminator(M.dim, M.p)
    E.add(B)
    return all(E.contains(row) for A in M.mats for row in la.matmul(B, A.T, M.p))


@dataclass
class ModuleAnalysis:
    dim: int
    irreducible: bool
    trivial: bool
    socleDims: list
    cosocleDims: list
    endRingDimOverFp: int
    endRingDimOverF: float
    fixedDim: int
    coinvariantDim: int
    submoduleLattice: list
    latticeComplete: bool
    flags: dict = field(default_factory=dict)

    def to_json(self):
        d = dict(self.__dict__)
        return d


def analyze_module(M: GModule, f=1, cap=SPIN_CAP) -> ModuleAnalysis:
    """Structure of M; ``f`` is [F:F_p] for the End comparison."""
    cyc = cyclic_submodules(M, cap)
    lattice, complete = submodule_lattice(M, cyclic=cyc)
    for B in lattice:
        if not is_stable(M, B):
            raise AssertionError("submodule not stable")
    soc, summands = socle(M, cyc)
    Md = M.dual()
    dsoc, dsummands = socle(Md)
    irreducible = M.dim > 0 and len(cyc) == 1 and cyc[0].shape[0] == M.dim
    e = end_dim(M)
    flags = {
        "irreducible_nontrivial": irreducible and not M.is_trivial(),
        "end_is_F": e == f,
        "cosocle_irreducible": len(dsummands) == 1,
        "csc": M.coinvariant_dim() == 0,
    }
    return ModuleAnalysis(
        dim=M.dim, irreducible=irreducible, trivial=M.is_trivial(),
        socleDims=sorted(S.shape[0] for S in summands),
        cosocleDims=sorted(S.shape[0] for S in dsummands),
        endRingDimOverFp=e, endRingDimOverF=e / f,
        fixedDim=M.fixed_space().shape[0], coinvariantDim=M.coinvariant_dim(),
        submoduleLattice=[B.shape[0] for B in lattice], latticeComplete=complete,
        flags=flags)


def radical(M: GModule):
    """Radical of M: common kernel of maps to simple quotients, i.e. the
    annihilator of soc(M*)."""
    dsoc, _ = socle(M.dual())
    if dsoc.shape[0] == 0:
        return np.eye(M.dim, dtype=np.int64)
    return la.nullspace(dsoc, M.p)


def check_ct(g: LieAlgebraRep, M: GModule) -> bool:
    """(ct) by fixed points: M is the H_F-module g."""
    fixed = M.fixed_space().shape[0]
    if g.family == "gl":
        if fixed != g.f:
            return False
        I = g.ops.identity
        E = la.Eliminator(g.fp_dim, g.p)
        E.add(M.fixed_space())
        return E.contains(g.coords(I))
    zdim = center_fp(g).shape[0]
    return fixed == 0 and zdim == 0


# ---------------------------------------------------------------------------
# Lie-module conditions

def lie_conditions(gder: LieAlgebraRep, Mp: GModule, Mf: GModule | None = None, f=None):
    """Verdicts (True/False) of the Lie-module conditions for g^der.

    Mp: g^der as a module for H'; Mf: g^der as a module for H_F."""
    f = f if f is not None else gder.f
    p = gder.p
    D = derived(gder)
    perfect = D.fp_dim == gder.fp_dim
    zfree = center_fp(gder).shape[0] == 0
    cyc = cyclic_submodules(Mp)
    irreducible = len(cyc) == 1 and cyc[0].shape[0] == Mp.dim
    nontrivial = not Mp.is_trivial()
    e = end_dim(Mp)
    out = {
        "l-ge(i)": perfect and zfree,
        "l-ge(ii)": irreducible and nontrivial,
        "l-ge(iii)": e == f,
    }
    out["l-ge"] = out["l-ge(i)"] and out["l-ge(ii)"] and out["l-ge(iii)"]
    # (l-un)(i)
    Dvecs = np.array([gder.coords(X) for X in D.fp_basis], dtype=np.int64).reshape(-1, gder.fp_dim)
    if Dvecs.shape[0]:
        sub = Mp.submodule(la.rref(Dvecs, p)[0])
        quo = Mp.quotient(Dvecs)
        # "non-trivial" read as non-zero: for sl2 in char 2, [g,g] is the trivial line
        fs = composition_factors(sub)
        fq = composition_factors(quo) if quo.dim else []
        new_factor = any(not any(isomorphic_simple(S, T) for T in fq) for S in fs)
        out["l-un(i)"] = new_factor
    else:
        out["l-un(i)"] = False
    out["l-un(ii)"] = out["l-ge(iii)"]
    out["l-un"] = out["l-un(i)"] and out["l-un(ii)"]
    # (l-cl)
    dsoc, dsummands = socle(Mp.dual())
    cos_irred = len(dsummands) == 1
    rad = la.nullspace(dsoc, p) if dsoc.shape[0] else np.eye(Mp.dim, dtype=np.int64)
    hf = Mf if Mf is not None else Mp
    trivial_on_rad = True
    if rad.shape[0]:
        for A in hf.mats:
            if np.any((la.matmul(rad, A.T, p) - rad) % p):
                trivial_on_rad = False
    out["l-cl(i)"] = perfect
    out["l-cl(ii)"] = cos_irred and trivial_on_rad
    out["l-cl"] = out["l-cl(i)"] and out["l-cl(ii)"]
    out["csc"] = Mp.coinvariant_dim() == 0
    return out
