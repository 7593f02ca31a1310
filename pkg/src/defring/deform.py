"""Tangent spaces of the matrix deformation functor and Krull dimensions.

A lift of a lower unitriangular rho to k[eps] is rho + eps*delta with delta(g)
strictly lower triangular; rho + eps*delta is a homomorphism iff

    delta(gh) = delta(g) rho(h) + rho(g) delta(h),

and conjugation by I + eps*C changes delta by the coboundary
g -> C rho(g) - rho(g) C.  A cocycle is determined by its values on a
generating set, so cocycles are stored in those coordinates.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Sequence

from .addpoly import AdditivePolynomial, RootBasis, moore_coefficients, root_space
from .ascurve import ASGroup, GroupTable, basis_series, group_representation, local_action, representation
from .ffield import (FieldDesc, FieldElement, Matrix, det, frobenius, make_field, nullspace, power_basis,
                     rank, same_span, solve_linear)
from .pseries import (ArtinRing, ArtinScalar, CompatibleTuple, LocalAutomorphism, TruncatedSeries,
                      artin_det, compatibility_residuals, hensel_solve, last_row_equation,
                      last_row_residual, lift_automorphism, matmul_rows, special_fibre_action)


class DeformError(ValueError):
    pass


# --- representations ----------------------------------------------------------

def _strict_positions(n: int) -> list[tuple[int, int]]:
    return [(i, j) for i in range(n) for j in range(i)]


@dataclass
class UnitriangularRep:
    """rho: G -> L_n(k), one Matrix per group element index, with rho(g*h) = rho(g) rho(h)."""

    group: GroupTable
    n: int
    desc: FieldDesc
    rho: list[Matrix]
    full_check: bool = True

    def __post_init__(self):
        if len(self.rho) != self.group.order:
            raise DeformError("one matrix per group element is required")
        for M in self.rho:
            if M.rows != self.n or M.cols != self.n or not M.is_lower_unitriangular():
                raise DeformError("matrices must be lower unitriangular of size n")
        if self.rho[self.group.identity] != Matrix.identity(self.desc, self.n):
            raise DeformError("rho(identity) is not I")
        G = self.group
        pairs = ((g, h) for g in range(G.order) for h in range(G.order)) if self.full_check else \
            ((g, s) for g in range(G.order) for s in G.generators())
        for g, h in pairs:
            if self.rho[G.mul(g, h)] != self.rho[g] @ self.rho[h]:
                raise DeformError(f"rho is not a homomorphism at ({g}, {h})")

    @classmethod
    def from_generators(cls, group: GroupTable, images: dict[int, Matrix], desc: FieldDesc
                        ) -> "UnitriangularRep":
        """Extend generator images along the Cayley graph; raises if inconsistent."""
        n = next(iter(images.values())).rows
        rho: list[Matrix | None] = [None] * group.order
        rho[group.identity] = Matrix.identity(desc, n)
        frontier = [group.identity]
        while frontier:
            nxt = []
            for g in frontier:
                for s, M in images.items():
                    h = group.mul(g, s)
                    val = rho[g] @ M
                    if rho[h] is None:
                        rho[h] = val
                        nxt.append(h)
                    elif rho[h] != val:
                        raise DeformError("generator images do not define a homomorphism")
            frontier = nxt
        if any(M is None for M in rho):
            raise DeformError("images do not generate the group")
        return cls(group, n, desc, rho, full_check=False)


@dataclass
class Cocycle:
    """delta: element index -> strictly lower triangular Matrix."""

    delta: list[Matrix]

    def is_cocycle(self, rep: UnitriangularRep, pairs=None) -> bool:
        G = rep.group
        if pairs is None:
            pairs = ((g, h) for g in range(G.order) for h in range(G.order))
        for g, h in pairs:
            lhs = self.delta[G.mul(g, h)]
            rhs = self.delta[g] @ rep.rho[h] + rep.rho[g] @ self.delta[h]
            if lhs != rhs:
                return False
        return True

    def to_json(self) -> list:
        return [M.to_json() for M in self.delta]


@dataclass
class TangentReport:
    dim_cocycles: int
    dim_coboundaries: int
    dim_tangent: int
    basis: list[Cocycle] = field(default_factory=list)

    def __post_init__(self):
        assert self.dim_tangent == self.dim_cocycles - self.dim_coboundaries >= 0

    def to_json(self) -> dict:
        return {"dim_cocycles": self.dim_cocycles, "dim_coboundaries": self.dim_coboundaries,
                "dim_tangent": self.dim_tangent}


class _CocycleSystem:
    """Linear forms for delta(g) in the unknowns delta(s), s a generator, plus the consistency rows."""

    def __init__(self, rep: UnitriangularRep):
        self.rep = rep
        G, n, K = rep.group, rep.n, rep.desc
        self.gens = G.generators()
        self.pos = _strict_positions(n)
        self.U = len(self.gens) * len(self.pos)
        zero = [K.zero()] * self.U
        unknown = {}
        for a, s in enumerate(self.gens):
            for b, ij in enumerate(self.pos):
                v = list(zero)
                v[a * len(self.pos) + b] = K.one()
                unknown[(s, ij)] = v
        self.unknown = unknown
        forms: list[dict | None] = [None] * G.order
        forms[G.identity] = {}
        rows = []
        frontier = [G.identity]
        while frontier:
            nxt = []
            for g in frontier:
                for s in self.gens:
                    expr = self._product_forms(forms[g], g, s)
                    h = G.mul(g, s)
                    if forms[h] is None:
                        forms[h] = expr
                        nxt.append(h)
                    else:
                        for ij in self.pos:
                            diff = _vsub(expr.get(ij, zero), forms[h].get(ij, zero))
                            if any(diff):
                                rows.append(diff)
            frontier = nxt
        self.forms = forms
        self.rows = rows
        self.zero = zero

    def _product_forms(self, dg: dict, g: int, s: int) -> dict:
        """Forms of delta(g) rho(s) + rho(g) delta(s)."""
        rep = self.rep
        rs, rg = rep.rho[s], rep.rho[g]
        out = {}
        for (i, j) in self.pos:
            acc = None
            for l in range(j, i):
                c = rs[l, j]
                f = dg.get((i, l))
                if c and f is not None:
                    acc = _vaxpy(acc, c, f)
            for l in range(j + 1, i + 1):
                c = rg[i, l]
                if c:
                    acc = _vaxpy(acc, c, self.unknown[(s, (l, j))])
            if acc is not None and any(acc):
                out[(i, j)] = acc
        return out

    def kernel(self) -> list[list[FieldElement]]:
        if not self.rows:
            return [list(v) for v in _identity_rows(self.rep.desc, self.U)]
        return nullspace(self.rows, self.rep.desc, cols=self.U)

    def satisfies(self, u: Sequence[FieldElement]) -> bool:
        return all(not _dot(r, u) for r in self.rows)

    def coordinates(self, values: dict[int, Matrix]) -> list[FieldElement]:
        """u-vector of a cocycle from its values on the generators."""
        u = list(self.zero)
        for a, s in enumerate(self.gens):
            for b, (i, j) in enumerate(self.pos):
                u[a * len(self.pos) + b] = values[s][i, j]
        return u

    def expand(self, u: Sequence[FieldElement]) -> Cocycle:
        K, n = self.rep.desc, self.rep.n
        out = []
        for f in self.forms:
            rows = [[K.zero()] * n for _ in range(n)]
            for (i, j), v in f.items():
                rows[i][j] = _dot(v, u)
            out.append(Matrix(K, rows))
        return Cocycle(out)


def _vaxpy(acc, c, v):
    if acc is None:
        return [c * x for x in v]
    return [a + c * x for a, x in zip(acc, v)]


def _vsub(a, b):
    return [x - y for x, y in zip(a, b)]


def _dot(a, b):
    acc = None
    for x, y in zip(a, b):
        if x and y:
            acc = x * y if acc is None else acc + x * y
    return acc if acc is not None else (a[0] - a[0] if a else 0)


def _identity_rows(K: FieldDesc, n: int):
    return [[K.one() if i == j else K.zero() for j in range(n)] for i in range(n)]


def _elementary_lower(K: FieldDesc, n: int, i: int, j: int) -> Matrix:
    return Matrix(K, [[1 if (a, b) == (i, j) else 0 for b in range(n)] for a in range(n)])


def coboundary_values(rep: UnitriangularRep, C: Matrix) -> list[Matrix]:
    return [C @ M - M @ C for M in rep.rho]


def coboundary_space(rep: UnitriangularRep) -> list[Cocycle]:
    """A basis of {g -> C rho(g) - rho(g) C : C strictly lower triangular}."""
    sysm = _CocycleSystem(rep)
    vecs = []
    for (i, j) in sysm.pos:
        C = _elementary_lower(rep.desc, rep.n, i, j)
        vals = {s: C @ rep.rho[s] - rep.rho[s] @ C for s in sysm.gens}
        vecs.append(sysm.coordinates(vals))
    return [sysm.expand(u) for u in _independent(vecs, rep.desc)]


def _independent(vecs, K):
    out = []
    for v in vecs:
        if rank(out + [v], K) > len(out):
            out.append(v)
    return out


def cocycle_space(rep: UnitriangularRep) -> TangentReport:
    sysm = _CocycleSystem(rep)
    ker = sysm.kernel() if sysm.U else []
    cob = []
    for (i, j) in sysm.pos:
        C = _elementary_lower(rep.desc, rep.n, i, j)
        vals = {s: C @ rep.rho[s] - rep.rho[s] @ C for s in sysm.gens}
        u = sysm.coordinates(vals)
        assert sysm.satisfies(u), "coboundary is not a cocycle"
        cob.append(u)
    dim_b = rank(cob, rep.desc) if cob and any(any(u) for u in cob) else 0
    basis = [sysm.expand(u) for u in ker]
    return TangentReport(len(ker), dim_b, len(ker) - dim_b, basis)


def character_rep(group: GroupTable, chi: Sequence[FieldElement], desc: FieldDesc) -> UnitriangularRep:
    """n = 2: g -> [[1, 0], [chi(g), 1]] for an additive chi."""
    rho = [Matrix(desc, [[1, 0], [chi[g], 1]]) for g in range(group.order)]
    return UnitriangularRep(group, 2, desc, rho)


def elementary_abelian_character(p: int, r: int) -> tuple[GroupTable, list[FieldElement], FieldDesc]:
    """(Z/p)^r with the injective character v -> sum v_i b_i into F_{p^r}."""
    G = GroupTable.elementary_abelian(p, r)
    K = make_field(p, r)
    basis = power_basis(K)
    chi = []
    for v in G.labels:
        acc = K.zero()
        for c, b in zip(v, basis):
            acc = acc + b * c
        chi.append(acc)
    return G, chi, K


# --- ordinary curves, n = 3 ---------------------------------------------------

def ordinary_rep(p: int, r: int, lam) -> tuple[UnitriangularRep, list[FieldElement]]:
    """rho_21 = lam c, rho_32 = c, rho_31 = lam c^2 / 2 for the faithful c: (Z/p)^r -> F_{p^r}."""
    if p == 2:
        raise DeformError("p must be odd")
    G, c, K = elementary_abelian_character(p, r)
    lam = K.element(lam) if isinstance(lam, int) else lam
    if not lam:
        raise DeformError("lambda must be nonzero")
    half = K.element(2).inverse()
    rho = [Matrix(K, [[1, 0, 0], [lam * x, 1, 0], [lam * x * x * half, x, 1]]) for x in c]
    return UnitriangularRep(G, 3, K, rho, full_check=G.order <= 27), c


@dataclass
class OrdinaryReport:
    p: int
    r: int
    dim_shape: int
    dim_trivial: int
    dim_tangent: int
    dim_cocycles: int
    dim_coboundaries: int

    def to_json(self) -> dict:
        return dict(self.__dict__)


def ordinary_tangent_report(p: int, r: int, lam) -> OrdinaryReport:
    rep, c = ordinary_rep(p, r, lam)
    K, G = rep.desc, rep.group
    lam = K.element(lam) if isinstance(lam, int) else lam
    half = K.element(2).inverse()
    sysm = _CocycleSystem(rep)

    # Shape-constrained lifts: a32 = d additive, a21 = lam d, and a31 from the
    # eps-linearization of X31 = X32 X21 / 2, i.e. a31 = (a32 rho21 + rho32 a21) / 2.
    def shape(d: Sequence[FieldElement]) -> dict[int, Matrix]:
        vals = {}
        for s in sysm.gens:
            rs = rep.rho[s]
            a32, a21 = d[s], lam * d[s]
            a31 = (a32 * rs[1, 0] + rs[2, 1] * a21) * half
            vals[s] = Matrix(K, [[0, 0, 0], [a21, 0, 0], [a31, a32, 0]])
        return vals

    shape_vecs = []
    for k in range(r):
        d = [K.element(v[k]) for v in G.labels]
        u = sysm.coordinates(shape(d))
        if not sysm.satisfies(u):
            raise DeformError("shape lift is not a homomorphism")  # pragma: no cover
        shape_vecs.append(u)

    # unipotent conjugation never moves a21, a32, and moves a31 by (b lam - a) rho32
    triv = []
    for (i, j) in sysm.pos:
        C = _elementary_lower(K, 3, i, j)
        vals = {s: C @ rep.rho[s] - rep.rho[s] @ C for s in sysm.gens}
        for s in sysm.gens:
            V = vals[s]
            assert not V[1, 0] and not V[2, 1]
            a = K.one() if (i, j) == (1, 0) else K.zero()
            b = K.one() if (i, j) == (2, 1) else K.zero()
            assert V[2, 0] == (b * lam - a) * rep.rho[s][2, 1]
        triv.append(sysm.coordinates(vals))
    # eps-conjugation by diag(1, 1 + eps mu_1, 1 + eps mu_2)
    for k in (1, 2):
        D = Matrix(K, [[1 if (a == b == k) else 0 for b in range(3)] for a in range(3)])
        triv.append(sysm.coordinates({s: D @ rep.rho[s] - rep.rho[s] @ D for s in sysm.gens}))

    dS = rank(shape_vecs, K)
    dT = rank(triv, K)
    dST = rank(shape_vecs + triv, K)
    inter = dS + dT - dST
    # the collapsed direction is rho32 = c itself
    d_c = sysm.coordinates(shape(c))
    assert rank(shape_vecs + [d_c], K) == dS and rank(triv + [d_c], K) == dT
    full = cocycle_space(rep)
    return OrdinaryReport(p, r, dS, inter, dS - inter, full.dim_cocycles, full.dim_coboundaries)


def ordinary_tangent_dim(p: int, r: int, lam) -> int:
    return ordinary_tangent_report(p, r, lam).dim_tangent


# --- p-cyclic covers: Krull dimension -------------------------------------------

def monomial_root_basis(p: int, s: int) -> RootBasis:
    """A root basis x_1..x_2s of Y + Y^(p^(2s)) in F_{p^(4s)}."""
    K = make_field(p, 4 * s)
    A = AdditivePolynomial(K, {0: 1, 2 * s: 1})
    roots = root_space(A, K)
    if roots.dim != 2 * s:
        raise DeformError("root space has the wrong dimension")  # pragma: no cover
    return roots


@dataclass
class KrullCertificate:
    p: int
    s: int
    dim: int
    constraint_matrix: list[list[FieldElement]]
    v_basis: list[list[FieldElement]]
    roots: RootBasis
    oracle_dim: int | None = None

    def to_json(self) -> dict:
        return {"p": self.p, "s": self.s, "dim": self.dim,
                "constraint_matrix": [[x.to_json() for x in r] for r in self.constraint_matrix],
                "v_basis": [[x.to_json() for x in r] for r in self.v_basis],
                "oracle_dim": self.oracle_dim}


def moore_minor_functional(xs: Sequence[FieldElement], rows: Sequence[int]) -> list[FieldElement]:
    """Coefficients of A -> det([A; (x_i^(p^nu))_i for nu in rows]) by expansion along A."""
    K = xs[0].desc
    M = [[frobenius(x, nu) for x in xs] for nu in rows]
    out = []
    for j in range(len(xs)):
        minor = [r[:j] + r[j + 1:] for r in M]
        d = det(minor, K)
        out.append(-d if j % 2 else d)
    return out


def krull_certificate(p: int, s: int, oracle: bool = False) -> KrullCertificate:
    roots = monomial_root_basis(p, s)
    K, xs = roots.desc, list(roots.vectors)
    v = {nu: [frobenius(x, nu) for x in xs] for nu in range(1, 2 * s + 1)}
    # independence of v_1..v_2s: this determinant is Delta(x)^p
    if not det([v[nu] for nu in range(1, 2 * s + 1)], K):
        raise DeformError("v_nu are dependent")  # pragma: no cover
    L = []
    for lam in range(1, s + 1):
        rows = [nu for nu in range(1, 2 * s + 1) if nu != s + lam]
        L.append(moore_minor_functional(xs, rows))
    V = nullspace(L, K, cols=2 * s)
    if not same_span(V, [v[nu] for nu in range(1, s + 1)], K):
        raise DeformError("joint kernel differs from span(v_1..v_s)")  # pragma: no cover
    cert = KrullCertificate(p, s, len(V), L, V, roots)
    if oracle:
        cert.oracle_dim = krull_dim_pcyclic_oracle(p, s, roots)
    return cert


def krull_dim_pcyclic(p: int, s: int) -> int:
    return krull_certificate(p, s).dim


@dataclass
class OracleReport:
    dim: int
    functionals: list[list[FieldElement]]
    coef0_vacuous: bool


def pcyclic_oracle_report(p: int, s: int, roots: RootBasis | None = None) -> OracleReport:
    """Linearize the coefficients of the additive polynomial with roots x_i + eps A_i.

    Each eps-part is linear in A, so evaluating at A = 0 and A = e_j recovers it.
    Imposed: a_{s+lam} = a_{s-lam}^(p^lam) for lam = 1..s on eps-parts, and the
    normalization a_0 = a_2s (both equal the leading coefficient 1).
    """
    roots = roots or monomial_root_basis(p, s)
    K, xs = roots.desc, list(roots.vectors)
    r = 2 * s

    def coeffs_at(A: Sequence[FieldElement]):
        X = [ArtinScalar(x, a) for x, a in zip(xs, A)]
        return moore_coefficients(X, lambda rows: artin_det(rows, K))

    zero = [K.zero()] * r
    base = coeffs_at(zero)
    assert all(not c.eps_part() for c in base)
    evals = []
    for j in range(r):
        A = list(zero)
        A[j] = K.one()
        evals.append(coeffs_at(A))

    def functional(k: int, lam: int) -> list[FieldElement]:
        # eps-part of a_k - a_{k'}^(p^lam) as a functional in A
        out = []
        for j in range(r):
            a = evals[j]
            out.append((a[k] - a[2 * s - k] ** (p ** lam)).eps_part())
        return out

    rows = [functional(s + lam, lam) for lam in range(1, s + 1)]
    coef0_vacuous = not any(rows[-1])
    rows.append([(evals[j][0] - evals[j][r]).eps_part() for j in range(r)])
    rk = rank(rows, K) if any(any(row) for row in rows) else 0
    return OracleReport(r - rk, rows, coef0_vacuous)


def krull_dim_pcyclic_oracle(p: int, s: int, roots: RootBasis | None = None) -> int:
    return pcyclic_oracle_report(p, s, roots).dim


# --- tuples over k[eps] along tangent directions (s = 1) ---------------------------

def curve_rep(G: ASGroup) -> UnitriangularRep:
    return UnitriangularRep(G, G.curve.dim, G.curve.ambient, group_representation(G),
                            full_check=G.order <= 27)


def _extend_rho(G: GroupTable, images: dict[int, list], n: int, K: FieldDesc) -> dict[int, list]:
    """Generator matrices over k[eps] extended along the Cayley graph; raises if inconsistent."""
    one, zero = ArtinScalar(K.one(), K.zero()), ArtinScalar(K.zero(), K.zero())
    full = {G.identity: [[one if i == j else zero for j in range(n)] for i in range(n)]}
    frontier = [G.identity]
    while frontier:
        nxt = []
        for g in frontier:
            for s, M in images.items():
                h = G.mul(g, s)
                val = matmul_rows(full[g], M)
                if h not in full:
                    full[h] = val
                    nxt.append(h)
                elif full[h] != val:
                    raise DeformError("lifted generator matrices do not define a homomorphism")
        frontier = nxt
    if len(full) != G.order:
        raise DeformError("images do not generate the group")
    return full


@dataclass
class TangentTuple:
    """A tuple (F, rho) over k[eps] reducing to the curve's tuple, rho_21(x_i) = x_i + eps A_i."""

    group: ASGroup
    direction: list[FieldElement]
    generators: list[int]
    tuple: CompatibleTuple
    solution: list[FieldElement] | None = None
    seeds: dict = field(default_factory=dict)

    def seed(self, g: int) -> LocalAutomorphism:
        if g not in self.seeds:
            self.seeds[g] = special_fibre_action(self.tuple, g)
        return self.seeds[g]

    def lift(self, g: int) -> LocalAutomorphism:
        return lift_automorphism(self.tuple, g, self.seed(g))

    def group_law(self, g: int, h: int) -> bool:
        """compose(lift(g), lift(h)) agrees with lift(g*h)."""
        lhs = self.lift(g).then(self.lift(h))
        return lhs.agrees(self.lift(self.group.mul(g, h)))

    def compatible(self, g: int) -> bool:
        return all(r.is_zero() for r in compatibility_residuals(self.tuple, g, self.lift(g)))


def _direction(G: ASGroup, direction: Sequence) -> tuple[list[FieldElement], list[int]]:
    C = G.curve
    if C.s != 1:
        raise DeformError("tangent tuples are implemented for s = 1")
    K = C.ambient
    xs = list(G.roots.vectors)
    if len(direction) != len(xs):
        raise DeformError("direction needs one entry per root basis vector")
    A = [K.element(a) if isinstance(a, int) else a for a in direction]
    return A, [G.index_of(x, 0) for x in xs]


def matrix_lift_tuple(G: ASGroup, direction: Sequence, precision: int | None = None) -> TangentTuple:
    """rho + eps delta with delta a cocycle, delta_21(x_i) = A_i; F is left undeformed."""
    A, gens = _direction(G, direction)
    C = G.curve
    K = C.ambient
    precision = 4 * C.m + 2 if precision is None else precision
    rep = curve_rep(G)
    sysm = _CocycleSystem(rep)
    ker = sysm.kernel()
    # coordinates of delta_21 at the chosen generators, as functionals on the kernel
    rows = [[_dot(sysm.forms[g].get((1, 0), sysm.zero), v) for v in ker] for g in gens]
    coef = solve_linear(rows, A, K)
    if coef is None:
        raise DeformError("no cocycle with the prescribed direction")
    u = [K.zero()] * sysm.U
    for c, v in zip(coef, ker):
        u = [a + c * b for a, b in zip(u, v)]
    delta = sysm.expand(u)
    assert delta.is_cocycle(rep)
    n = C.dim
    rho = {}
    for g in range(G.order):
        M, D = rep.rho[g], delta.delta[g]
        rho[g] = [[ArtinScalar(M[i, j], D[i, j]) for j in range(n)] for i in range(n)]
    work = precision + 2 * C.m
    F = [f._promote(ArtinRing(K, True)) for f in basis_series(C, work)]
    return TangentTuple(G, A, gens, CompatibleTuple(F, rho, C.m))


def tangent_tuple(G: ASGroup, direction: Sequence, precision: int | None = None) -> TangentTuple | None:
    """Search for a compatible tuple: F_X = X + eps Z, rho_21(x_i) = x_i + eps A_i.

    The unknowns are the coefficients of the Laurent series Z (pole order at
    most p) and the eps-parts of the top row of rho(x_i).  The eps-parts of the
    compatibility residuals are affine in them, so the search is an exact
    linear solve.  Returns None when no such tuple exists.
    """
    A, gens = _direction(G, direction)
    C = G.curve
    p, m = C.p, C.m
    K = C.ambient
    precision = 4 * m + 2 if precision is None else precision
    work = precision + p * p + 2 * m
    D = ArtinRing(K, True)
    F0 = basis_series(C, work)
    X, W = F0[1], F0[2]
    exps = list(range(-p, work))
    mons = [TruncatedSeries.monomial(X.ring, k, X.prec) for k in exps]
    base = {g: representation(C, G.elements[g]) for g in gens}
    nz = len(exps)
    U = nz + 2 * len(gens)

    def build(u: Sequence[FieldElement]) -> CompatibleTuple:
        Z = None
        for c, mo in zip(u[:nz], mons):
            if c:
                Z = mo.scale(c) if Z is None else Z + mo.scale(c)
        FX = X._promote(D) if Z is None else TruncatedSeries.from_parts(X, Z)
        rho = {}
        for k, g in enumerate(gens):
            M = base[g]
            rows = [[ArtinScalar(x, K.zero()) for x in r] for r in M.entries]
            rows[1][0] = ArtinScalar(M[1, 0], A[k])
            rows[2][0] = ArtinScalar(M[2, 0], u[nz + 2 * k])
            rows[2][1] = ArtinScalar(M[2, 1], u[nz + 2 * k + 1])
            rho[g] = rows
        return CompatibleTuple([F0[0]._promote(D), FX, W._promote(D)], rho, m)

    T0 = CompatibleTuple(F0, {g: [[ArtinScalar(x, None) for x in r] for r in base[g].entries]
                              for g in gens}, m)
    seeds = {g: special_fibre_action(T0, g) for g in gens}

    def residual(u):
        T = build(u)
        return [compatibility_residuals(T, g, lift_automorphism(T, g, seeds[g]))[1].eps_part()
                for g in gens]

    zero = [K.zero()] * U
    r0 = residual(zero)
    cols = []
    for k in range(U):
        e = list(zero)
        e[k] = K.one()
        cols.append(residual(e))
    rows, rhs = [], []
    for gi in range(len(gens)):
        lo = min([r0[gi].low] + [c[gi].low for c in cols])
        hi = min([r0[gi].prec] + [c[gi].prec for c in cols])
        for t in range(lo, hi):
            b0 = r0[gi].coeff(t).a
            rows.append([cols[k][gi].coeff(t).a - b0 for k in range(U)])
            rhs.append(-b0)
    sol = solve_linear(rows, rhs, K)
    if sol is None:
        return None
    T = build(sol)
    full = _extend_rho(G, T.rho, C.dim, K)
    return TangentTuple(G, A, gens, CompatibleTuple(T.F, full, m), sol, dict(seeds))


@dataclass
class HenselReport:
    precision: int
    residual_zero: bool
    residual_precision: int
    reduces_to_special_fibre: bool
    unique_under_seed_perturbation: bool
    group_law: dict
    compatible: dict

    def to_json(self) -> dict:
        return {"precision": self.precision, "residual_zero": self.residual_zero,
                "residual_precision": self.residual_precision,
                "reduces_to_special_fibre": self.reduces_to_special_fibre,
                "unique_under_seed_perturbation": self.unique_under_seed_perturbation,
                "group_law": {f"{g},{h}": ok for (g, h), ok in self.group_law.items()},
                "compatible": {str(g): ok for g, ok in self.compatible.items()}}


def hensel_report(TT: TangentTuple, precision: int, rng=None, perturbations: int = 3) -> HenselReport:
    """Residual, reduction, uniqueness and group-law checks on the generators of a k[eps]-tuple."""
    rng = rng or random.Random(0)
    G, C = TT.group, TT.group.curve
    K = C.ambient
    res_zero, res_prec, reduces, unique = True, None, True, True
    for g in TT.generators:
        b = TT.lift(g)
        r = last_row_residual(TT.tuple, g, b)
        res_prec = r.prec if res_prec is None else min(res_prec, r.prec)
        res_zero &= r.is_zero() and r.prec >= precision
        special = local_action(C, G.elements[g], precision)
        reduces &= b.reduce().agrees(special)
        coeffs = last_row_equation(TT.tuple, g)
        for _ in range(perturbations):
            seed = TT.seed(g).image._promote(TT.tuple.ring)
            k = rng.randrange(1, precision)
            bump = TruncatedSeries.monomial(seed.ring, k, seed.prec, ArtinScalar(K.zero(), K.random_nonzero(rng)))
            other = hensel_solve(coeffs, seed + bump)
            unique &= other.agrees(b.image)
    law = {(g, h): TT.group_law(g, h) for g in TT.generators for h in TT.generators}
    comp = {g: TT.compatible(g) for g in TT.generators}
    return HenselReport(precision, res_zero, res_prec, reduces, unique, law, comp)
