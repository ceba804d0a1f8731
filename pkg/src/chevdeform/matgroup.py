"""Matrix groups over finite local rings, fully enumerated.

A matrix is a row-major tuple of ring codes (see :mod:`chevdeform.ring`).
Projective groups store the canonical representative whose first unit entry
is 1.
"""
from __future__ import annotations

import itertools
import math
from collections import deque
from dataclasses import dataclass

import numpy as np

from . import ring as rg
from .ring import LocalRingDesc, Ring, get_ring

DEFAULT_BUDGET = 2 ** 22
FAMILIES = ("SL", "GL", "PGL", "Sp", "SU")


class GroupError(ValueError):
    pass


class BudgetExceeded(GroupError):
    pass


class UnsupportedFamily(GroupError):
    pass


class NotResiduallyFull(GroupError):
    pass


class OrderNotCoprime(GroupError):
    pass


class NotInIdealPower(GroupError):
    pass


@dataclass(frozen=True)
class GroupSpec:
    family: str
    n: int
    ring: LocalRingDesc

    def __str__(self):
        return f"{self.family}{self.n}({self.ring})"

    def to_json(self):
        return {"family": self.family, "n": self.n, "ring": self.ring.to_json()}


def group_spec_from_json(obj):
    return GroupSpec(obj["family"], obj["n"], rg.ring_from_json(obj["ring"]))


# ---------------------------------------------------------------------------
# matrix arithmetic

class MatOps:
    def __init__(self, R: Ring, n, projective=False):
        self.R, self.n, self.projective = R, n, projective
        self.identity = tuple(1 if i == j else 0 for i in range(n) for j in range(n))
        self.zero = tuple([0] * (n * n))

    def mul(self, a, b):
        R = self.R
        n = self.n
        mt, at = R.mul_table, R.add_table
        if n == 2 and mt is not None:
            a0, a1, a2, a3 = a
            b0, b1, b2, b3 = b
            m0, m1, m2, m3 = mt[a0], mt[a1], mt[a2], mt[a3]
            c = (at[m0[b0]][m1[b2]], at[m0[b1]][m1[b3]],
                 at[m2[b0]][m3[b2]], at[m2[b1]][m3[b3]])
        else:
            add, mul = R.add, R.mul
            out = []
            for i in range(n):
                row = a[i * n:(i + 1) * n]
                for j in range(n):
                    s = 0
                    for k in range(n):
                        x = row[k]
                        if x:
                            y = b[k * n + j]
                            if y:
                                s = add(s, mul(x, y))
                    out.append(s)
            c = tuple(out)
        return self.canon(c) if self.projective else c

    def add(self, a, b):
        return tuple(self.R.add(x, y) for x, y in zip(a, b))

    def sub(self, a, b):
        return tuple(self.R.sub(x, y) for x, y in zip(a, b))

    def scale(self, c, a):
        return tuple(self.R.mul(c, x) for x in a)

    def canon(self, a):
        R = self.R
        q = R.q
        for x in a:
            if x % q:
                if x == 1:
                    return a
                inv = R.inv(x)
                return tuple(R.mul(inv, y) for y in a)
        raise GroupError("matrix has no unit entry")

    def det(self, a):
        R, n = self.R, self.n
        if n == 1:
            return a[0]
        if n == 2:
            return R.sub(R.mul(a[0], a[3]), R.mul(a[1], a[2]))
        total = 0
        for perm in itertools.permutations(range(n)):
            term = 1
            for i, j in enumerate(perm):
                term = R.mul(term, a[i * n + j])
                if term == 0:
                    break
            if term:
                inversions = sum(1 for i in range(n) for j in range(i + 1, n) if perm[i] > perm[j])
                total = R.sub(total, term) if inversions % 2 else R.add(total, term)
        return total

    def inv(self, a):
        R, n = self.R, self.n
        if n == 2:
            d = R.inv(self.det(a))
            res = (R.mul(d, a[3]), R.mul(d, R.neg(a[1])), R.mul(d, R.neg(a[2])), R.mul(d, a[0]))
            return self.canon(res) if self.projective else res
        m = [list(a[i * n:(i + 1) * n]) + [1 if i == j else 0 for j in range(n)] for i in range(n)]
        for c in range(n):
            piv = next((r for r in range(c, n) if R.is_unit(m[r][c])), None)
            if piv is None:
                raise GroupError("singular matrix")
            m[c], m[piv] = m[piv], m[c]
            iv = R.inv(m[c][c])
            m[c] = [R.mul(iv, x) for x in m[c]]
            for r in range(n):
                if r != c and m[r][c]:
                    f = m[r][c]
                    m[r] = [R.sub(x, R.mul(f, y)) for x, y in zip(m[r], m[c])]
        res = tuple(x for row in m for x in row[n:])
        return self.canon(res) if self.projective else res

    def transpose(self, a):
        n = self.n
        return tuple(a[j * n + i] for i in range(n) for j in range(n))

    def reduce(self, a, i):
        """Entry-wise reduction modulo m^i."""
        mod = self.R.q ** self.R.len_at[i]
        return tuple(x % mod for x in a)

    def power(self, a, e):
        res = self.identity
        base = a
        while e:
            if e & 1:
                res = self.mul(res, base)
            base = self.mul(base, base)
            e >>= 1
        return res

    def order(self, a):
        k, x = 1, a
        while x != self.identity:
            x = self.mul(x, a)
            k += 1
        return k


def closure(gens, mul, identity, budget=DEFAULT_BUDGET):
    """Elements of the group generated by ``gens`` (breadth first, right
    multiplication by generators)."""
    seen = {identity}
    order = [identity]
    queue = deque([identity])
    gens = [g for g in dict.fromkeys(gens) if g != identity]
    while queue:
        x = queue.popleft()
        for g in gens:
            y = mul(x, g)
            if y not in seen:
                seen.add(y)
                order.append(y)
                queue.append(y)
                if len(order) > budget:
                    raise BudgetExceeded(f"closure exceeded {budget} elements")
    return order


# ---------------------------------------------------------------------------
# order formulas

def field_order(family, n, q):
    if family == "SL":
        return q ** (n * (n - 1) // 2) * math.prod(q ** i - 1 for i in range(2, n + 1))
    if family == "GL":
        return q ** (n * (n - 1) // 2) * math.prod(q ** i - 1 for i in range(1, n + 1))
    if family == "PGL":
        return field_order("GL", n, q) // (q - 1)
    if family == "Sp":
        m = n // 2
        return q ** (m * m) * math.prod(q ** (2 * i) - 1 for i in range(1, m + 1))
    if family == "SU":
        if n != 3:
            raise UnsupportedFamily("SU only for n = 3")
        return q ** 3 * (q * q - 1) * (q ** 3 + 1)
    raise UnsupportedFamily(family)


def group_dim(family, n):
    return {"SL": n * n - 1, "GL": n * n, "PGL": n * n - 1,
            "Sp": n * (n + 1) // 2, "SU": n * n - 1}[family]


def predicted_order(spec: GroupSpec):
    R = get_ring(spec.ring)
    base = field_order(spec.family, spec.n, spec.ring.q)
    return base * spec.ring.q ** (group_dim(spec.family, spec.n) * (R.len - 1))


# ---------------------------------------------------------------------------
# groups

class FiniteMatrixGroup:
    """An enumerated matrix group.  ``ops`` works over the matrix ring, which
    is ``spec.ring`` except for SU where it is the quadratic extension."""

    def __init__(self, spec, ops: MatOps, elements, generators):
        self.spec = spec
        self.ops = ops
        self.R = ops.R
        self.n = ops.n
        self.elements = elements
        self.index = {e: i for i, e in enumerate(elements)}
        self.generators = list(generators)
        self.identity = ops.identity
        self._orders = {}

    @property
    def order(self):
        return len(self.elements)

    def __len__(self):
        return len(self.elements)

    def __contains__(self, x):
        return x in self.index

    def __repr__(self):
        return f"<{self.spec} of order {self.order}>"

    def mul(self, a, b):
        return self.ops.mul(a, b)

    def inv(self, a):
        return self.ops.inv(a)

    def conj(self, g, x):
        return self.ops.mul(self.ops.mul(g, x), self.ops.inv(g))

    def element_order(self, a):
        k = self._orders.get(a)
        if k is None:
            k = self._orders[a] = self.ops.order(a)
        return k

    def whole(self):
        return SubgroupHandle(self, self.elements, self.generators, _set=self.index)

    def subgroup(self, gens, budget=DEFAULT_BUDGET):
        gens = list(dict.fromkeys(gens))
        for g in gens:
            if g not in self.index:
                raise GroupError("generator outside the ambient group")
        els = closure(gens, self.ops.mul, self.identity, budget)
        return SubgroupHandle(self, els, gens)

    def to_json(self):
        return {"spec": self.spec.to_json(), "generators": [list(g) for g in self.generators]}


class SubgroupHandle:
    def __init__(self, ambient: FiniteMatrixGroup, elements, generators, _set=None):
        self.ambient = ambient
        self.elements = list(elements)
        self.set = _set if _set is not None else set(self.elements)
        self.generators = list(generators) if generators else []

    @property
    def order(self):
        return len(self.elements)

    def __len__(self):
        return len(self.elements)

    def __contains__(self, x):
        return x in self.set

    def __eq__(self, other):
        return isinstance(other, SubgroupHandle) and self.ambient is other.ambient and \
            len(self.set) == len(other.set) and all(x in other.set for x in self.elements)

    def __hash__(self):
        return hash((id(self.ambient), len(self.elements)))

    def __repr__(self):
        return f"<subgroup of order {self.order} in {self.ambient.spec}>"

    def issubset(self, other):
        return all(x in other.set for x in self.elements)

    def to_json(self):
        return {"spec": self.ambient.spec.to_json(), "generators": [list(g) for g in self.generators]}


# ---------------------------------------------------------------------------
# generators and enumeration

def elementary(ops: MatOps, i, j, r):
    n = ops.n
    m = list(ops.identity)
    m[i * n + j] = r
    return tuple(m)


def sl_generators(ops: MatOps):
    R, n = ops.R, ops.n
    adds = _additive_generators(R)
    return [elementary(ops, i, j, r) for i in range(n) for j in range(n) if i != j for r in adds]


def _additive_generators(R: Ring):
    return R.fp_basis()


def symplectic_form(n):
    m = n // 2
    J = [0] * (n * n)
    for i in range(m):
        J[i * n + (m + i)] = 1
        J[(m + i) * n + i] = -1
    return J


def sp_generators(ops: MatOps):
    """Symplectic transvections x -> x + a <v,x> v for 0/1 vectors v."""
    R, n = ops.R, ops.n
    J = [R.from_int(x) for x in symplectic_form(n)]
    gens = []
    for v in itertools.product((0, 1), repeat=n):
        if not any(v):
            continue
        # row vector v^T J
        w = []
        for j in range(n):
            s = 0
            for k in range(n):
                if v[k] and J[k * n + j]:
                    s = R.add(s, J[k * n + j])
            w.append(s)
        for a in _additive_generators(R):
            m = list(ops.identity)
            for i in range(n):
                if v[i]:
                    for j in range(n):
                        if w[j]:
                            m[i * n + j] = R.add(m[i * n + j], R.mul(a, w[j]))
            gens.append(tuple(m))
    return gens


def _check_budget(spec, budget):
    pred = predicted_order(spec)
    if pred > budget:
        raise BudgetExceeded(f"{spec}: predicted order {pred} exceeds budget {budget}")
    return pred


def _sl2_elements(R: Ring):
    """All of SL_2(R) by solving ad - bc = 1 directly."""
    units = [x for x in range(R.size) if R.is_unit(x)]
    nonunits = [x for x in range(R.size) if not R.is_unit(x)]
    mul, add, sub, inv = R.mul, R.add, R.sub, R.inv
    out = []
    for a in units:
        ia = inv(a)
        for b in range(R.size):
            for c in range(R.size):
                out.append((a, b, c, mul(add(1, mul(b, c)), ia)))
    for a in nonunits:
        for c in units:
            ic = inv(c)
            for d in range(R.size):
                out.append((a, mul(sub(mul(a, d), 1), ic), c, d))
    return out


_GROUP_CACHE = {}


def enumerate_group(spec: GroupSpec, budget=DEFAULT_BUDGET) -> FiniteMatrixGroup:
    key = (spec, budget >= predicted_order(spec) if spec.family != "SU" else True)
    if key in _GROUP_CACHE:
        return _GROUP_CACHE[key]
    G = _enumerate(spec, budget)
    _GROUP_CACHE[key] = G
    return G


def _enumerate(spec, budget):
    fam, n = spec.family, spec.n
    if fam not in FAMILIES:
        raise UnsupportedFamily(fam)
    if fam == "SU":
        return _enumerate_su3(spec, budget)
    if fam == "Sp" and n % 2:
        raise UnsupportedFamily("Sp needs even n")
    pred = _check_budget(spec, budget)
    R = get_ring(spec.ring)
    if fam == "SL":
        ops = MatOps(R, n)
        gens = sl_generators(ops)
        if n == 2 and R.size > 9:
            els = _sl2_elements(R)
            els.sort()
            els.remove(ops.identity)
            els.insert(0, ops.identity)
        else:
            els = closure(gens, ops.mul, ops.identity, budget)
        G = FiniteMatrixGroup(spec, ops, els, gens)
    elif fam == "GL":
        S = enumerate_group(GroupSpec("SL", n, spec.ring), budget)
        ops = MatOps(R, n)
        units = [x for x in range(R.size) if R.is_unit(x)]
        diags = [_diag_first(ops, u) for u in units]
        els = [ops.mul(s, d) for d in diags for s in S.elements]
        gens = S.generators + [d for d in diags if d != ops.identity][:1]
        gens += _unit_group_generators(R, ops)
        G = FiniteMatrixGroup(spec, ops, els, list(dict.fromkeys(gens)))
    elif fam == "PGL":
        S = enumerate_group(GroupSpec("SL", n, spec.ring), budget)
        ops = MatOps(R, n, projective=True)
        image = list(dict.fromkeys(ops.canon(s) for s in S.elements))
        reps = _unit_power_coset_reps(R, n)
        els = []
        for u in reps:
            d = _diag_first(ops, u)
            els.extend(ops.mul(s, d) for s in image)
        gens = [ops.canon(g) for g in S.generators] + [_diag_first(ops, u) for u in _unit_group_generators_codes(R)]
        G = FiniteMatrixGroup(spec, ops, els, list(dict.fromkeys(gens)))
    else:
        ops = MatOps(R, n)
        gens = sp_generators(ops)
        els = closure(gens, ops.mul, ops.identity, budget)
        G = FiniteMatrixGroup(spec, ops, els, gens)
    if G.order != pred:
        raise GroupError(f"{spec}: enumerated {G.order} elements, expected {pred}")
    return G


def _diag_first(ops, u):
    m = list(ops.identity)
    m[0] = u
    t = tuple(m)
    return ops.canon(t) if ops.projective else t


def _unit_group_generators_codes(R):
    """A generating set of R^x: a primitive root of F plus 1 + (additive gens of m)."""
    F = R.F
    gens = [F.gen] if F.q > 2 else []
    for b in R.fp_basis():
        if b % R.q == 0:
            gens.append(R.add(1, b))
    if R.desc.kind == "Witt2":
        gens.append(R.add(1, R.q))
        for i in range(F.f):
            gens.append(R.add(1, R.q * F.p ** i))
    return list(dict.fromkeys(g for g in gens if g != 1))


def _unit_group_generators(R, ops):
    return [_diag_first(ops, u) for u in _unit_group_generators_codes(R)]


def _unit_power_coset_reps(R: Ring, n):
    units = [x for x in range(R.size) if R.is_unit(x)]
    powers = set()
    for x in units:
        y = 1
        for _ in range(n):
            y = R.mul(y, x)
        powers.add(y)
    reps, covered = [], set()
    for u in units:
        if u in covered:
            continue
        reps.append(u)
        covered.update(R.mul(u, w) for w in powers)
    return reps


# SU_3(F_2) -----------------------------------------------------------------

def hermitian_form():
    return (0, 0, 1, 0, 1, 0, 1, 0, 0)


def _enumerate_su3(spec, budget):
    if spec.n != 3 or spec.ring.kind != "Field" or spec.ring.q != 2:
        raise UnsupportedFamily("SU only for n = 3 over F_2")
    K = rg.field_ring(rg.make_field(2, 2))
    R = get_ring(K)
    ops = MatOps(R, 3)
    J = hermitian_form()
    frob = R.F.frob
    els = []
    for m in itertools.product(range(4), repeat=9):
        star = tuple(frob(m[j * 3 + i]) for i in range(3) for j in range(3))
        if ops.mul(ops.mul(star, J), m) == J and ops.det(m) == 1:
            els.append(m)
    if len(els) > budget:
        raise BudgetExceeded("SU3 enumeration")
    els.remove(ops.identity)
    els.insert(0, ops.identity)
    gens = _small_generating_set(els, ops)
    G = FiniteMatrixGroup(spec, ops, els, gens)
    if G.order != field_order("SU", 3, 2):
        raise GroupError("SU3(F2) scan gave the wrong order")
    return G


def _small_generating_set(els, ops):
    target = len(els)
    gens = []
    current = {ops.identity}
    for x in els:
        if x in current:
            continue
        gens.append(x)
        current = set(closure(gens, ops.mul, ops.identity))
        if len(current) == target:
            break
    return gens


# ---------------------------------------------------------------------------
# homomorphisms

class GroupHom:
    def __init__(self, source, target, fn, kernel_level=None):
        self.source, self.target, self.fn = source, target, fn
        self.kernel_level = kernel_level
        self._kernel = None

    def __call__(self, x):
        return self.fn(x)

    def kernel(self):
        if self._kernel is None:
            e = self.target.identity
            els = [x for x in self.source.elements if self.fn(x) == e]
            self._kernel = SubgroupHandle(self.source, els, [])
        return self._kernel

    def image(self, H=None):
        els = H.elements if H is not None else self.source.elements
        img = list(dict.fromkeys(self.fn(x) for x in els))
        return SubgroupHandle(self.target, img, [self.fn(g) for g in (H.generators if H else self.source.generators)])


def quotient_spec(spec: GroupSpec, i) -> GroupSpec:
    R = get_ring(spec.ring)
    if i < 1 or i > R.nil:
        raise rg.LevelOutOfRange(i)
    return GroupSpec(spec.family, spec.n, R.quotient_desc(i))


def reduction_hom(spec_or_group, i, budget=DEFAULT_BUDGET) -> GroupHom:
    G = spec_or_group if isinstance(spec_or_group, FiniteMatrixGroup) else enumerate_group(spec_or_group, budget)
    T = enumerate_group(quotient_spec(G.spec, i), budget)
    ops = G.ops
    mod = G.R.q ** G.R.len_at[i]
    if ops.projective:
        tops = T.ops
        fn = lambda x: tops.canon(tuple(c % mod for c in x))
    else:
        fn = lambda x: tuple(c % mod for c in x)
    return GroupHom(G, T, fn, kernel_level=i)


def residue_map(G: FiniteMatrixGroup):
    """Entry-wise residue to the field group (as tuples)."""
    q = G.R.q
    if G.ops.projective:
        fops = MatOps(get_ring(rg.field_ring(G.spec.ring.base)), G.n, projective=True)
        return lambda x: fops.canon(tuple(c % q for c in x))
    return lambda x: tuple(c % q for c in x)


# ---------------------------------------------------------------------------
# commutators, H^c, perfection

def commutator(G, a, b):
    ops = G.ops
    return ops.mul(ops.mul(a, b), ops.mul(ops.inv(a), ops.inv(b)))


def normal_closure(G, H: SubgroupHandle, gens, budget=DEFAULT_BUDGET):
    """Smallest subgroup containing ``gens`` normalized by H's generators."""
    gens = list(dict.fromkeys(gens))
    els = set(closure(gens, G.ops.mul, G.identity, budget))
    changed = True
    while changed:
        changed = False
        for h in H.generators:
            hinv = G.ops.inv(h)
            for x in list(gens):
                y = G.ops.mul(G.ops.mul(h, x), hinv)
                if y not in els:
                    gens.append(y)
                    els = set(closure(gens, G.ops.mul, G.identity, budget))
                    changed = True
    return SubgroupHandle(G, list(els), gens)


def commutator_subgroup(H, budget=DEFAULT_BUDGET) -> SubgroupHandle:
    if isinstance(H, FiniteMatrixGroup):
        H = H.whole()
    G = H.ambient
    gens = H.generators or H.elements
    comms = [commutator(G, a, b) for a, b in itertools.combinations(gens, 2)]
    comms = [c for c in comms if c != G.identity] or [G.identity]
    D = normal_closure(G, SubgroupHandle(G, H.elements, gens, _set=H.set), comms, budget)
    # normality re-check against every generator
    for h in gens:
        for x in D.generators:
            if G.conj(h, x) not in D.set:
                raise GroupError("commutator closure is not normal")
    return D


def is_perfect(G) -> bool:
    H = G.whole() if isinstance(G, FiniteMatrixGroup) else G
    return commutator_subgroup(H).order == H.order


def _residue_image(H: SubgroupHandle, residual: SubgroupHandle):
    res = residue_map(H.ambient)
    img = {res(x) for x in H.elements}
    if len(img) != residual.order or any(x not in img for x in residual.elements):
        raise NotResiduallyFull("H does not reduce onto the residual group")
    return res


def _p_part(n, p):
    r = 1
    while n % p == 0:
        n //= p
        r *= p
    return r


def h_c(H: SubgroupHandle, residual: SubgroupHandle, budget=DEFAULT_BUDGET) -> SubgroupHandle:
    """The subgroup between [H,H] and H lifting residual/[residual,residual].

    When the residual abelianization has order prime to p the lift is the
    prime-to-p part of H/[H,H] and is unique.  Otherwise the lift is not
    unique; we then take the one generated by minimal preimages of the
    residual generators, and check it has the right order.
    """
    G = H.ambient
    p = G.spec.ring.p
    res = _residue_image(H, residual)
    D = commutator_subgroup(H, budget)
    DF = commutator_subgroup(residual, budget)
    abF = residual.order // DF.order
    ab = H.order // D.order
    if abF % p:
        e = _p_part(ab, p)
        extra = [G.ops.power(g, e) for g in (H.generators or H.elements)]
    else:
        extra = []
        for x in residual.generators or residual.elements:
            pre = min(y for y in H.elements if res(y) == x)
            extra.append(pre)
    gens = list(D.generators) + [x for x in extra if x != G.identity]
    els = closure(gens or [G.identity], G.ops.mul, G.identity, budget)
    Hc = SubgroupHandle(G, els, gens)
    if Hc.order != D.order * abF:
        raise GroupError("no lift of the residual abelianization through minimal preimages")
    return Hc


def h_perfection(H: SubgroupHandle, residual: SubgroupHandle, budget=DEFAULT_BUDGET) -> SubgroupHandle:
    cur = H
    while True:
        nxt = h_c(cur, residual, budget)
        if nxt.order == cur.order:
            return cur
        cur = nxt


# ---------------------------------------------------------------------------
# level logarithm and exponential

class LevelLog:
    """Additive coordinates on the kernel of G(R) -> G(R/m^i) modulo m^{i+1}.

    A kernel element is I + Y with Y in M_n(m^i); its coordinates are the F_p
    digits of the layer-i coordinates of the entries of Y.  This identifies
    G^[i]/G^[i+1] with an F_p-subspace of M_n(m^i/m^{i+1}).
    """

    def __init__(self, G: FiniteMatrixGroup, i):
        self.G, self.i = G, i
        R = G.R
        self.R = R
        self.slots = [j for j, l in enumerate(R.levels) if l == i]
        self.f = R.F.f
        self.width = len(self.slots) * self.f
        self.dim = G.n * G.n * self.width

    def log(self, x):
        R, G = self.R, self.G
        out = []
        for k, c in enumerate(x):
            if k % (G.n + 1) == 0:
                c = R.sub(c, 1)
            cs = R.coords(c)
            for j in self.slots:
                out.extend(R.F.digits(cs[j]))
        return out

    def exp(self, v):
        R, G = self.R, self.G
        ent = []
        pos = 0
        for k in range(G.n * G.n):
            cs = [0] * R.len
            for j in self.slots:
                cs[j] = R.F.from_digits(v[pos:pos + self.f])
                pos += self.f
            c = R.from_coords(cs)
            if k % (G.n + 1) == 0:
                c = R.add(c, 1)
            ent.append(c)
        m = tuple(ent)
        return G.ops.canon(m) if G.ops.projective else m


def exp_level(G: FiniteMatrixGroup, X, t):
    """I + X t for X a matrix over the residue field (codes) and t in m^i.

    If (Xt)^2 != 0 and X is nilpotent, the truncated exponential is used."""
    R, ops = G.R, G.ops
    if isinstance(t, rg.RingElement):
        t = t.code
    i = R.level_of(t)
    if i < 1:
        raise NotInIdealPower("t must lie in the maximal ideal")
    Y = tuple(R.mul(x, t) for x in X)
    Y2 = MatOps(R, G.n).mul(Y, Y)
    if not any(Y2):
        m = ops.add(ops.identity, Y)
    else:
        p = R.p
        term, total, k = ops.identity, ops.identity, 1
        plain = MatOps(R, G.n)
        while True:
            term = plain.mul(term, Y)
            if not any(term):
                break
            if k >= p:
                raise NotInIdealPower("exponential not defined: (Xt)^p != 0")
            inv_fact = R.inv(R.from_int(math.factorial(k)))
            total = ops.add(total, tuple(R.mul(inv_fact, c) for c in term))
            k += 1
        m = total
    return ops.canon(m) if ops.projective else m


# ---------------------------------------------------------------------------
# prime-to-p lifts

def lift_prime_order_subgroup(M_F: SubgroupHandle, ring: LocalRingDesc, budget=DEFAULT_BUDGET) -> SubgroupHandle:
    """Lift M_F (order prime to p) isomorphically into G(ring), level by level.

    At each level the obstruction c(x,y) = s(x)s(y)s(xy)^-1 lives in an
    elementary abelian kernel; t = -(1/|M|) sum_y c(x,y) corrects the section
    to a homomorphism."""
    GF = M_F.ambient
    p = GF.spec.ring.p
    m = M_F.order
    if m % p == 0:
        raise OrderNotCoprime(f"|M_F| = {m} divisible by p = {p}")
    R = get_ring(ring)
    spec = GroupSpec(GF.spec.family, GF.spec.n, ring)
    section = {x: x for x in M_F.elements}
    cur_group = GF
    for i in range(1, R.nil):
        nxt = enumerate_group(quotient_spec(spec, i + 1), budget)
        red = reduction_hom(nxt, i, budget)
        pre = {}
        want = set(section.values())
        for y in nxt.elements:
            r = red(y)
            if r in want and r not in pre:
                pre[r] = y
        s = {x: pre[section[x]] for x in M_F.elements}
        L = LevelLog(nxt, i)
        ops = nxt.ops
        dim = L.dim
        els = M_F.elements
        mulF = GF.ops.mul
        C = {}
        for x in els:
            acc = np.zeros(dim, dtype=np.int64)
            for y in els:
                c = ops.mul(ops.mul(s[x], s[y]), ops.inv(s[mulF(x, y)]))
                acc += np.array(L.log(c), dtype=np.int64)
            C[x] = acc % p
        minv = pow(m, -1, p)
        new = {}
        for x in els:
            t = (-minv * C[x]) % p
            new[x] = ops.mul(L.exp(list(t)), s[x])
        for x in els:
            for y in els:
                if ops.mul(new[x], new[y]) != new[mulF(x, y)]:
                    raise GroupError("level correction failed")
        section = new
        cur_group = nxt
    top = enumerate_group(spec, budget) if cur_group.spec != spec else cur_group
    gens = [section[g] for g in (M_F.generators or M_F.elements)]
    return SubgroupHandle(top, list(section.values()), gens)


# ---------------------------------------------------------------------------
# conjugacy

def order_profile(G, H: SubgroupHandle):
    counts = {}
    for x in H.elements:
        k = G.element_order(x)
        counts[k] = counts.get(k, 0) + 1
    return tuple(sorted(counts.items()))


def are_conjugate(H1: SubgroupHandle, H2: SubgroupHandle, ambient: FiniteMatrixGroup):
    """A g with g H1 g^-1 = H2, or None."""
    if H1.order != H2.order:
        return None
    if H1 == H2:
        return ambient.identity
    if order_profile(ambient, H1) != order_profile(ambient, H2):
        return None
    gens = H1.generators or H1.elements
    gens = [x for x in gens if x != ambient.identity]
    target = H2.set
    ops = ambient.ops
    gorders = [ambient.element_order(x) for x in gens]
    # candidate images for the first generator, to prune quickly
    first_ok = {y for y in H2.elements if ambient.element_order(y) == gorders[0]} if gens else set()
    for g in ambient.elements:
        ginv = ops.inv(g)
        ok = True
        for k, x in enumerate(gens):
            y = ops.mul(ops.mul(g, x), ginv)
            if (k == 0 and y not in first_ok) or y not in target:
                ok = False
                break
        if ok:
            return g
    return None
