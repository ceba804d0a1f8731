"""Worked examples and desk-scale instances of the deformation results.

Each public function rebuilds one example from the group, module and
cohomology layers and returns an :class:`ExperimentResult` (or a
classification record) with measured values next to the expected ones.
Expected values are integers or booleans, compared exactly.
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field

import numpy as np

from . import classifier
from . import cohom
from . import linalg as la
from . import ring as rg
from .liemod import (GModule, adjoint_module, build_lie, coord_solver, derived, end_dim, is_stable,
                     submodule_lattice)
from .matgroup import (DEFAULT_BUDGET, GroupSpec, LevelLog, MatOps, SubgroupHandle, UnsupportedFamily,
                       are_conjugate, closure, enumerate_group, exp_level, predicted_order,
                       reduction_hom, residue_map, sl_generators)


@dataclass
class ExperimentResult:
    name: str
    inputs: dict
    measured: dict
    expected: dict
    basis: dict = field(default_factory=dict)  # where each expected value comes from
    notes: list = field(default_factory=list)
    seed: int | None = None

    @property
    def passed(self):
        return all(self.measured.get(k) == v for k, v in self.expected.items())

    def to_json(self):
        return {"name": self.name, "inputs": self.inputs, "measured": self.measured,
                "expected": self.expected, "basis": self.basis, "notes": self.notes,
                "seed": self.seed, "pass": self.passed}


# ---------------------------------------------------------------------------
# the congruence kernel of a square-zero thickening as a module

@dataclass
class _Kernel:
    G: object
    basis: np.ndarray  # rows in level-log coordinates
    log: object
    exp: object
    module: object

    @property
    def dim(self):
        return self.basis.shape[0]


def _congruence_kernel(G, section, gens, level=1):
    """Kernel of G(R) -> G(R/m^level), assumed elementary abelian, with the
    conjugation action of the residual group through ``section``."""
    p = G.R.p
    L = LevelLog(G, level)
    red = reduction_hom(G, level)
    ident = red.target.identity
    rows = [L.log(x) for x in G.elements if red(x) == ident]
    B, _ = la.rref(np.array(rows, dtype=np.int64).reshape(-1, L.dim), p)
    solve = coord_solver(B, p)
    ops = G.ops

    def klog(x):
        return solve(L.log(x))[0]

    def kexp(v):
        w = la.matmul(np.asarray(v, dtype=np.int64).reshape(1, -1), B, p)[0]
        return L.exp(list(w))

    def act(h):
        s = section(h)
        sinv = ops.inv(s)
        cols = [klog(ops.mul(ops.mul(s, kexp(e)), sinv)) for e in np.eye(B.shape[0], dtype=np.int64)]
        return np.array(cols, dtype=np.int64).T % p

    M = GModule(p, [act(g) for g in gens], gens, None, act, name="congruence kernel")
    return _Kernel(G, B, klog, kexp, M)


# ---------------------------------------------------------------------------
# residually full subgroups over a square-zero ring

@dataclass
class ResiduallyFullClass:
    kernel_dim: int  # F_p-dimension of N = H meet the congruence kernel
    cocycle: tuple  # class representative on the residual generators, in K/N coordinates
    subgroup: SubgroupHandle

    @property
    def order(self):
        return self.subgroup.order


@dataclass
class ResiduallyFullClassification:
    spec: GroupSpec
    residual_order: int
    kernel_dim: int
    lattice_dims: list
    classes: list
    checks: dict
    seed: int = 0

    @property
    def count(self):
        return len(self.classes)

    def signature(self):
        """Sorted (order, dim N) pairs, invariant under conjugation."""
        return sorted((c.order, c.kernel_dim) for c in self.classes)

    def to_json(self):
        return {"spec": str(self.spec), "residual_order": self.residual_order,
                "kernel_dim": self.kernel_dim, "lattice_dims": self.lattice_dims,
                "count": self.count, "classes": [[c.order, c.kernel_dim, list(c.cocycle)] for c in self.classes],
                "checks": self.checks, "seed": self.seed}


def classify_residually_full(spec: GroupSpec, conjugator=None, seed=0, budget=DEFAULT_BUDGET,
                             verify=True) -> ResiduallyFullClassification:
    """Conjugacy classes of subgroups of G(R) that reduce onto G(F).

    R must be square-zero and contain F (e.g. F[eps]), so the congruence
    kernel K is an F_p[G(F)]-module and G(R) = K x| G(F).  A residually full
    H is determined by the submodule N = H meet K and a complement to K/N,
    i.e. a 1-cocycle with values in K/N; complements are conjugate exactly
    when their cocycles differ by a coboundary.  ``conjugator`` replaces the
    constant embedding of G(F) by its conjugate.
    """
    R = rg.get_ring(spec.ring)
    if R.nil != 2 or spec.ring.kind != "TruncPoly":
        raise UnsupportedFamily("need a square-zero ring containing F, such as F[eps]")
    p = R.p
    G = enumerate_group(spec, budget)
    GF = enumerate_group(GroupSpec(spec.family, spec.n, rg.field_ring(spec.ring.base)), budget)
    ops = G.ops
    a = conjugator if conjugator is not None else G.identity
    ainv = ops.inv(a)

    def section(g):
        return ops.mul(ops.mul(a, g), ainv)

    gens = cohom.small_generating_set(GF, seed)
    kern = _congruence_kernel(G, section, gens)
    M = kern.module
    lattice, complete = submodule_lattice(M)
    classes = []
    for N in lattice:
        Q = M.quotient(N)
        reps = cohom.h1_representatives(GF, Q, gens) if Q.dim else [np.zeros(0, dtype=np.int64)]
        n_elts = [kern.exp(v) for v in N]
        for c in reps:
            hgens = []
            for j, g in enumerate(gens):
                if Q.dim:
                    w = np.asarray(c[j * Q.dim:(j + 1) * Q.dim], dtype=np.int64).reshape(1, -1)
                    v = la.matmul(w, Q.lift_rows, p)[0]
                else:
                    v = np.zeros(M.dim, dtype=np.int64)
                hgens.append(ops.mul(kern.exp(v), section(g)))
            H = G.subgroup(hgens + n_elts, budget)
            classes.append(ResiduallyFullClass(N.shape[0], tuple(int(x) for x in c), H))
    checks = {"lattice_complete": complete}
    if verify:
        checks.update(_verify_classes(G, GF, kern, classes, p))
    return ResiduallyFullClassification(spec, GF.order, M.dim, [B.shape[0] for B in lattice],
                                        classes, checks, seed)


def _verify_classes(G, GF, kern, classes, p):
    res = residue_map(G)
    fset = set(GF.elements)
    red = reduction_hom(G, 1)
    ident = red.target.identity
    orders = residual = stable = True
    for c in classes:
        H = c.subgroup
        if H.order != GF.order * p ** c.kernel_dim:
            orders = False
        if {res(x) for x in H.elements} != fset:
            residual = False
        rows = [kern.log(x) for x in H.elements if red(x) == ident]
        N, _ = la.rref(np.array(rows, dtype=np.int64).reshape(-1, kern.dim), p)
        if N.shape[0] != c.kernel_dim or not is_stable(kern.module, N):
            stable = False
    distinct = True
    for i, c in enumerate(classes):
        for d in classes[i + 1:]:
            if c.order == d.order and c.kernel_dim == d.kernel_dim:
                if are_conjugate(c.subgroup, d.subgroup, G) is not None:
                    distinct = False
    return {"orders": orders, "residually_full": residual, "kernel_is_submodule": stable,
            "pairwise_non_conjugate": distinct}


def residually_full_experiment(q=7, seed=0) -> ExperimentResult:
    F = rg.field_of_order(q)
    spec = GroupSpec("SL", 2, rg.dual_numbers(F))
    C = classify_residually_full(spec, seed=seed)
    rep = classifier.classify(classifier.GroupTypeDescriptor("A", 1, q, "sc"))
    hyp = all(rep.conditions[k].verdict == classifier.HOLDS for k in ("l-cl", "van"))
    measured = {"classes": C.count, "more_than_two": C.count > 2, **C.checks}
    expected = {k: True for k in C.checks}
    expected["more_than_two"] = not hyp
    basis = {"more_than_two": "two classes exactly when (l-cl) and (van) hold for SL_2(F)"}
    if hyp:
        expected["classes"] = 2
        basis["classes"] = "G(F) and G(F[eps]) up to conjugacy"
    return ExperimentResult("residually-full", {"q": q}, measured, expected, basis,
                            notes=[f"class signature {C.signature()}"], seed=seed)


# ---------------------------------------------------------------------------
# SL_2 in characteristic 2 over F[x_1..x_d]/m^3

def _span_codes(R, basis):
    """All F-linear combinations of the given ring codes."""
    out = {0}
    for b in basis:
        new = set()
        for x in out:
            for c in range(R.q):
                new.add(R.add(x, R.mul(c, b)))
        out = new
    return sorted(out)


def example_sl2_char2(d=2, q=2, budget=DEFAULT_BUDGET) -> ExperimentResult:
    """The subgroup H = <H_1, H_2, H_3, H_4> of SL_2(F[x_1..x_d]/m^3), with
    H_1 = SL_2(F), H_2 the diagonal matrices diag(1+a+a^2, 1-a), and H_3, H_4
    the unipotent matrices with entries in m' = span{x_i, x_i^2}.

    Above the enumeration budget only the order-product formula is used."""
    F = rg.field_of_order(q)
    if F.p != 2:
        raise ValueError("the example lives in characteristic 2")
    desc = rg.make_trunc_poly(F, d, 3)
    R = rg.get_ring(desc)
    spec = GroupSpec("SL", 2, desc)
    m_basis = [R.q ** j for j, lvl in enumerate(R.levels) if lvl >= 1]
    mprime_basis = [R.q ** j for j, e in enumerate(R.monomials)
                    if sum(e) >= 1 and sum(1 for a in e if a) == 1]
    dim_m, dim_mp = len(m_basis), len(mprime_basis)
    sl_f = predicted_order(GroupSpec("SL", 2, rg.field_ring(F)))
    formula_order = sl_f * q ** dim_m * q ** (2 * dim_mp)
    total = predicted_order(spec)
    inputs = {"d": d, "q": q}
    expected = {"index": q ** (d * (d - 1))}
    basis = {"index": "q^(d(d-1)) = q^(2 dim m/m')"}
    if total > budget:
        measured = {"index": total // formula_order}
        return ExperimentResult("sl2-char2", inputs, measured, expected, basis,
                                notes=["formula level: |SL_2(R)| / (|H_1||H_2||H_3||H_4|)"])
    G = enumerate_group(spec, budget)
    ops = G.ops
    m = _span_codes(R, m_basis)
    mp = _span_codes(R, mprime_basis)
    H1 = closure(sl_generators(MatOps(rg.get_ring(rg.field_ring(F)), 2)), ops.mul, ops.identity)
    H2 = [(R.add(1, R.add(a, R.mul(a, a))), 0, 0, R.sub(1, a)) for a in m]
    H3 = [(1, b, 0, 1) for b in mp]
    H4 = [(1, 0, c, 1) for c in mp]
    H = G.subgroup(H1 + H2 + H3 + H4, budget)
    products = set()
    for g1 in H1:
        for g2 in H2:
            g12 = ops.mul(g1, g2)
            for g3 in H3:
                g123 = ops.mul(g12, g3)
                for g4 in H4:
                    products.add(ops.mul(g123, g4))
    factor_count = len(H1) * len(H2) * len(H3) * len(H4)
    red = reduction_hom(G, 2)
    image = {red(x) for x in H.elements}
    measured = {
        "index": G.order // H.order,
        "surjective_mod_m2": image == set(red.target.elements),
        "unique_factorization": len(products) == factor_count == H.order and products == H.set,
    }
    expected.update({"surjective_mod_m2": True, "unique_factorization": True})
    basis.update({"surjective_mod_m2": "H reduces onto SL_2(R/m^2)",
                  "unique_factorization": "|H| = |H_1||H_2||H_3||H_4|, products distinct"})
    return ExperimentResult("sl2-char2", inputs, measured, expected, basis,
                            notes=[f"|SL_2(R)| = {G.order}, |H| = {H.order}"])


# ---------------------------------------------------------------------------
# PGL_p and the determinant modulo p-th powers

def example_pgl_p(q=8, ring="dual", budget=DEFAULT_BUDGET) -> ExperimentResult:
    """H = kernel of PGL_p(R) -> R^x / R^(x p) induced by det, for p = char F."""
    F = rg.field_of_order(q)
    p = F.p
    if q in (2, 3, 4, 5, 9):
        raise ValueError(f"q = {q} is excluded: (sch) or (n-s) fails")
    if p != 2:
        raise UnsupportedFamily("only PGL_2 is enumerable here")
    desc = rg.dual_numbers(F) if ring == "dual" else rg.make_witt2(F)
    R = rg.get_ring(desc)
    units = [u for u in R.elements() if R.is_unit(u)]
    powers = set()
    for u in units:
        x = 1
        for _ in range(p):
            x = R.mul(x, u)
        powers.add(x)
    G = enumerate_group(GroupSpec("PGL", p, desc), budget)
    ops = G.ops
    H = [x for x in G.elements if ops.det(x) in powers]
    Hset = set(H)
    closed = all(ops.mul(x, y) in Hset for x, y in zip(H[::97], H[5::89]))
    GF = enumerate_group(GroupSpec("PGL", p, rg.field_ring(F)), budget)
    res = residue_map(G)
    image = {res(x) for x in H}
    measured = {
        "index": G.order // len(H),
        "quotient_order": len(units) // len(powers),
        "surjective": image == set(GF.elements),
        "proper": len(H) < G.order,
        "proper_extension": len(H) > GF.order,
        "closed_on_sample": closed,
    }
    expected = {"index": q, "quotient_order": q, "surjective": True, "proper": True,
                "proper_extension": True, "closed_on_sample": True}
    basis = {"index": "R^x / R^(x p) is isomorphic to (F, +)",
             "surjective": "H reduces onto PGL_p(F)", "proper": "H is a proper subgroup",
             "proper_extension": "H is strictly bigger than PGL_p(F)"}
    return ExperimentResult("pgl-p", {"q": q, "ring": ring}, measured, expected, basis,
                            notes=[f"|PGL_{p}(R)| = {G.order}, |H| = {len(H)}"])


# ---------------------------------------------------------------------------
# tangent dimension of the deformation ring

def _reduction_module(Gamma, M, res, gens):
    return GModule(M.p, [M.act(res(g)) for g in gens], gens, None, lambda g: M.act(res(g)))


def tangent_dim_check(family="SL", q=7, d=1, direct=None, budget=DEFAULT_BUDGET) -> ExperimentResult:
    """Tangent dimension d' of the deformation ring of the residual
    representation of H = SL_2(F[x_1..x_d]/m^2).

    Component route: d' = dim_F H^1(H_F, g) + d * dim_F Hom_{H_F}(g, g), valid
    when H^1(H_F, g) = 0.  Direct route (d = 1): H^1(H, g) on the big group,
    with every class realised by an explicit lift checked to be a
    homomorphism and pairwise not conjugate under the congruence kernel.
    """
    if family != "SL":
        raise UnsupportedFamily("tangent check implemented for SL_2")
    F = rg.field_of_order(q)
    f = F.f
    GF = enumerate_group(GroupSpec("SL", 2, rg.field_ring(F)), budget)
    g = build_lie("sl", 2, F)
    gens_f = cohom.small_generating_set(GF)
    M = adjoint_module(GF, g, gens_f)
    h1_res = cohom.h1_dim(GF, M) // f
    hom = end_dim(M) // f
    measured = {"h1_residual": h1_res, "hom_dim": hom}
    expected, basis, notes = {}, {}, []
    if h1_res == 0:
        measured["d_prime_component"] = h1_res + d * hom
        expected["d_prime_component"] = d
        basis["d_prime_component"] = "inflation-restriction with H^1(H_F, g) = 0 and End = F"
    else:
        notes.append("H^1(H_F, g) != 0: the identity d' = d is not asserted")
    direct = (d == 1) if direct is None else direct
    if direct and d >= 1:
        measured.update(_direct_tangent(F, d, M, budget))
        if h1_res == 0:
            expected.update({"d_prime_direct": d, "lifts_are_homomorphisms": True,
                             "lifts_pairwise_inequivalent": True})
            basis["d_prime_direct"] = "H^1 of the big group, classes realised by lifts"
    return ExperimentResult("tangent-dim", {"family": family, "q": q, "d": d}, measured, expected,
                            basis, notes)


def _direct_tangent(F, d, M, budget):
    desc = rg.make_trunc_poly(F, d, 2)
    R = rg.get_ring(desc)
    p, f = R.p, R.F.f
    Gamma = enumerate_group(GroupSpec("SL", 2, desc), budget)
    ops = Gamma.ops
    res = residue_map(Gamma)
    gens = sl_generators(MatOps(R, 2))
    Mr = _reduction_module(Gamma, M, res, gens)
    h1 = cohom.h1_dim(Gamma, Mr, gens)
    out = {"d_prime_direct": h1 // f, "lift_classes": p ** h1}
    # explicit lifts rho(gamma_j) = (I + X_j t) rho_bar(gamma_j), t running over m
    reps = cohom.h1_representatives(Gamma, Mr, gens)
    g = build_lie("sl", 2, F)
    tbasis = R.level_basis(1)
    if len(tbasis) != 1:
        return out
    t = tbasis[0]
    lifts = []
    for c in reps:
        images = []
        for j, x in enumerate(gens):
            X = g.element(c[j * M.dim:(j + 1) * M.dim])
            images.append(ops.mul(exp_level(Gamma, X, t), res(x)))
        lifts.append(images)

    def pmul(a, b):
        return (ops.mul(a[0], b[0]), ops.mul(a[1], b[1]))

    homs = True
    for images in lifts:
        graph = closure(list(zip(gens, images)), pmul, (ops.identity, ops.identity), budget)
        if len(graph) != Gamma.order:
            homs = False
    kernel = [exp_level(Gamma, g.element(v), t) for v in _all_vectors(M.dim, p)]
    inequiv = True
    for i in range(len(lifts)):
        for j in range(i + 1, len(lifts)):
            for k in kernel:
                kinv = ops.inv(k)
                if all(ops.mul(ops.mul(k, a), kinv) == b for a, b in zip(lifts[i], lifts[j])):
                    inequiv = False
                    break
    out.update({"lifts_are_homomorphisms": homs, "lifts_pairwise_inequivalent": inequiv})
    return out


def _all_vectors(dim, p):
    for i in range(p ** dim):
        yield [(i // p ** k) % p for k in range(dim)]


# ---------------------------------------------------------------------------
# commutators in the top congruence layer

def boston_commutator_check(spec: GroupSpec, n=None, budget=DEFAULT_BUDGET) -> ExperimentResult:
    """Commutators [G^[n-1], G^[1]] of the full group, read in g (x) m^n,
    contain [g, g] (x) m^n.  Commutators are taken over coset
    representatives, which is the full commutator set because
    [G^[n-1], G^[1]] only depends on the classes modulo G^[n] and G^[2]."""
    R = rg.get_ring(spec.ring)
    n = R.nil - 1 if n is None else n
    inputs = {"spec": str(spec), "n": n}
    if n >= R.nil:
        return ExperimentResult("boston-commutator", inputs, {"contains": True, "layer_dim": 0},
                                {"contains": True}, {"contains": "m^n = 0, nothing to check"})
    if n < 2:
        raise ValueError("need m^(n+1) = 0 with n >= 2")
    if spec.family != "SL":
        raise UnsupportedFamily("commutator check implemented for SL_n")
    p = R.p
    G = enumerate_group(spec, budget)
    ops = G.ops
    F = spec.ring.base
    g = build_lie("sl", spec.n, F)
    D = derived(g)

    def reps(level):
        red = reduction_hom(G, level)
        L = LevelLog(G, level)
        out = {}
        for x in G.elements:
            if red(x) == red.target.identity:
                out.setdefault(tuple(L.log(x)), x)
        return list(out.values())

    top = LevelLog(G, n)
    A, B = reps(n - 1), reps(1)
    E = la.Eliminator(top.dim, p)
    for x in A:
        xi = ops.inv(x)
        for y in B:
            c = ops.mul(ops.mul(x, y), ops.mul(xi, ops.inv(y)))
            E.add(top.log(c))
    target = [top.log(exp_level(G, X, t)) for X in D.fp_basis for t in R.level_basis(n)]
    contains = all(E.contains(v) for v in target)
    T = la.Eliminator(top.dim, p)
    T.add(np.array(target, dtype=np.int64).reshape(-1, top.dim))
    measured = {"contains": contains, "commutator_span_dim": E.rank, "target_dim": T.rank}
    return ExperimentResult("boston-commutator", inputs, measured, {"contains": True},
                            {"contains": "[g,g] (x) m^n lies in the commutator span"})


# ---------------------------------------------------------------------------
# residually full subgroups of SL_2(W_2(F))

def w2_rigidity_check(q=5, family="SL", n=2, probes=3, seed=0) -> ExperimentResult:
    """Does every subgroup of G(W_2(F)) reducing onto G(F) equal G(W_2(F))?

    N = H meet (kernel) is a submodule; H exists for N exactly when the
    extension pushed forward to kernel/N splits.  So the answer is yes iff no
    proper submodule N gives a split pushforward.  Random probes close the
    lifted generators together with one kernel element."""
    F = rg.field_of_order(q)
    e = cohom.congruence_extension(family, n, F, route="tree")
    Q = e.quotient
    M = e.module()
    lattice, _ = submodule_lattice(M)
    split_at = [B.shape[0] for B in lattice if B.shape[0] < M.dim
                and cohom.is_coboundary(e.pushforward(B))]
    rigid = not split_at
    full_order = Q.order * e.p ** e.r
    measured = {"non_split": 0 not in split_at, "rigid": rigid, "split_submodule_dims": split_at}
    comp = cohom.find_complement(e) if 0 in split_at else None
    measured["complement_order"] = len(comp) if comp else 0
    rng = random.Random(seed)
    lifts = [e.section[g] for g in Q.generators]
    sizes = []
    for _ in range(probes):
        v = [rng.randrange(e.p) for _ in range(e.r)]
        if not any(v):
            v[0] = 1
        els = closure(lifts + [e.kexp(v)], e.emul, e.identity_e, 2 * full_order)
        sizes.append(len(els))
    measured["probes_saturate"] = all(s == full_order for s in sizes)
    rep = classifier.classify(classifier.GroupTypeDescriptor("A", n - 1, q, "sc"))
    v = {c: rep.conditions[c].verdict for c in ("n-s", "l-ge", "l-cl", "sch")}
    H = classifier.HOLDS
    expected, basis, notes = {}, {}, [f"probe orders {sizes} of {full_order}"]
    if v["n-s"] != classifier.UNKNOWN:
        expected["non_split"] = v["n-s"] == H
        basis["non_split"] = "(n-s) verdict of the classifier"
    if v["n-s"] == H and (v["l-ge"] == H or (v["l-cl"] == H and v["sch"] == H)):
        expected.update({"rigid": True, "probes_saturate": True})
        basis["rigid"] = "(n-s) with (l-ge), or with (l-cl) and (sch), forces N = g"
    elif v["n-s"] == classifier.FAILS:
        expected["rigid"] = False
        basis["rigid"] = "a complement is a proper residually full subgroup"
    else:
        notes.append("hypotheses of the rigidity argument not met: no expectation on rigidity")
    return ExperimentResult("w2-rigidity", {"family": family, "n": n, "q": q}, measured, expected,
                            basis, notes, seed=seed)


# ---------------------------------------------------------------------------
# registry

EXPERIMENTS = {
    "sl2-char2": (example_sl2_char2, {"d": 2, "q": 2}),
    "pgl-p": (example_pgl_p, {"q": 8, "ring": "dual"}),
    "residually-full": (residually_full_experiment, {"q": 7}),
    "tangent-dim": (tangent_dim_check, {"family": "SL", "q": 7, "d": 1}),
    "boston-commutator": (lambda q=3, k=3: boston_commutator_check(
        GroupSpec("SL", 2, rg.make_trunc_poly(rg.field_of_order(q), 1, k))), {"q": 3, "k": 3}),
    "w2-rigidity": (w2_rigidity_check, {"q": 5}),
}


def run_experiment(name, **params) -> list:
    """Run one experiment (or ``all``); returns a list of results."""
    if name == "all":
        return [fn(**defaults) for fn, defaults in EXPERIMENTS.values()]
    if name not in EXPERIMENTS:
        raise KeyError(f"unknown experiment {name!r}; choose from {sorted(EXPERIMENTS)} or 'all'")
    fn, defaults = EXPERIMENTS[name]
    return [fn(**{**defaults, **params})]
