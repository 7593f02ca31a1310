"""The p-cyclic covers  W^p - W = sum_{i<s} t_i X^(p^i+1) + X^(p^s+1)  and their wild automorphisms.

Group convention.  An automorphism g acts on functions; the product g*h is
"first g, then h" on points, i.e. the ring map h o g.  With this convention
rho(g*h) = rho(g) rho(h), where g(F_i) = sum_nu rho(g)[i][nu] F_nu, and the
local series satisfy compose(sigma_g(t), sigma_h(t)) = sigma_{g*h}(t).
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from functools import cached_property
from typing import Hashable, Iterable, Sequence

from .addpoly import AdditivePolynomial, RootBasis, root_space
from .ffield import (FieldDesc, FieldElement, FieldError, Matrix, frobenius, make_field,
                     power_basis, solve_linear, to_prime_vector)
from .polys import Poly, binom_mod, delta_bilinear
from .pseries import (ArtinRing, ArtinScalar, CompatibleTuple, LocalAutomorphism, TruncatedSeries,
                      INFINITE, order_function, special_fibre_action, tadic_solve)
from .semigroup import artin_schreier_semigroup, jump_report


class CurveError(ValueError):
    pass


# --- groups -----------------------------------------------------------------

class GroupTable:
    """A finite group given by a dense multiplication table on indices 0..order-1."""

    def __init__(self, labels: Sequence[Hashable], table: Sequence[Sequence[int]], identity: int):
        self.labels = list(labels)
        self.table = [list(r) for r in table]
        self.identity = identity
        n = len(self.labels)
        if len(self.table) != n or any(len(r) != n for r in self.table):
            raise ValueError("multiplication table has the wrong shape")
        for g in range(n):
            if self.table[identity][g] != g or self.table[g][identity] != g:
                raise ValueError("identity law fails")
        self._inv = [None] * n
        for g in range(n):
            row = self.table[g]
            if sorted(row) != list(range(n)):
                raise ValueError("table row is not a permutation")
            self._inv[g] = row.index(identity)
        for g in range(n):
            if self.table[self._inv[g]][g] != identity:
                raise ValueError("inverse law fails")

    @property
    def order(self) -> int:
        return len(self.labels)

    def mul(self, g: int, h: int) -> int:
        return self.table[g][h]

    def inverse(self, g: int) -> int:
        return self._inv[g]

    def power(self, g: int, e: int) -> int:
        acc = self.identity
        for _ in range(e):
            acc = self.table[acc][g]
        return acc

    def commutator(self, g: int, h: int) -> int:
        """g^-1 h^-1 g h."""
        t = self.table
        return t[t[t[self._inv[g]][self._inv[h]]][g]][h]

    def is_associative(self, samples: int | None = None, rng: random.Random | None = None) -> bool:
        n = self.order
        t = self.table
        if samples is None:
            triples: Iterable = itertools.product(range(n), repeat=3)
        else:
            rng = rng or random.Random(0)
            triples = ((rng.randrange(n), rng.randrange(n), rng.randrange(n)) for _ in range(samples))
        return all(t[t[a][b]][c] == t[a][t[b][c]] for a, b, c in triples)

    def center(self) -> list[int]:
        n = self.order
        return [z for z in range(n) if all(self.table[z][g] == self.table[g][z] for g in range(n))]

    def subgroup(self, gens: Iterable[int]) -> list[int]:
        seen = {self.identity}
        frontier = [self.identity]
        gens = list(gens)
        while frontier:
            nxt = []
            for x in frontier:
                for s in gens:
                    y = self.table[x][s]
                    if y not in seen:
                        seen.add(y)
                        nxt.append(y)
            frontier = nxt
        return sorted(seen)

    def commutator_subgroup(self) -> list[int]:
        n = self.order
        comms = {self.commutator(g, h) for g in range(n) for h in range(n)}
        return self.subgroup(comms)

    def generators(self) -> list[int]:
        """A generating set, chosen greedily in index order."""
        gens: list[int] = []
        span = {self.identity}
        for g in range(self.order):
            if g not in span:
                gens.append(g)
                span = set(self.subgroup(gens))
                if len(span) == self.order:
                    break
        return gens

    def is_abelian(self) -> bool:
        n = self.order
        return all(self.table[a][b] == self.table[b][a] for a in range(n) for b in range(a + 1, n))

    def quotient_is_elementary_abelian(self, normal: Sequence[int], p: int) -> bool:
        """G/N is abelian of exponent p."""
        N = set(normal)
        n = self.order
        if any(self.commutator(g, h) not in N for g in range(n) for h in range(n)):
            return False
        return all(self.power(g, p) in N for g in range(n))

    def to_json(self) -> dict:
        return {"order": self.order, "identity": self.identity, "table": self.table}

    @classmethod
    def elementary_abelian(cls, p: int, r: int) -> "GroupTable":
        """(Z/p)^r with labels the coordinate tuples, in lexicographic order."""
        labels = list(itertools.product(range(p), repeat=r))
        index = {v: i for i, v in enumerate(labels)}
        table = [[index[tuple((a + b) % p for a, b in zip(u, v))] for v in labels] for u in labels]
        return cls(labels, table, 0)


# --- the curve ----------------------------------------------------------------

@dataclass(frozen=True)
class ASCurve:
    """W^p - W = f(X) with f = sum_{i=1}^{s-1} t_i X^(p^i+1) + X^(p^s+1)."""

    p: int
    s: int
    t_coeffs: tuple = ()
    ambient: FieldDesc | None = None

    def __post_init__(self):
        if self.p % 2 == 0:
            raise CurveError("p must be odd")
        if self.s < 1:
            raise CurveError("s must be positive")
        ts = tuple(self.t_coeffs)
        if len(ts) not in (0, self.s - 1):
            raise CurveError(f"expected {self.s - 1} coefficients t_1..t_{self.s - 1}")
        amb = self.ambient
        if amb is None:
            amb = next((t.desc for t in ts if isinstance(t, FieldElement)), None) or make_field(self.p, 4 * self.s)
        if amb.p != self.p:
            raise CurveError("ambient field has the wrong characteristic")
        ts = tuple(_embed(t, amb) for t in ts) or tuple(amb.zero() for _ in range(self.s - 1))
        object.__setattr__(self, "t_coeffs", ts)
        object.__setattr__(self, "ambient", amb)

    @property
    def m(self) -> int:
        """Pole order of W at infinity."""
        return self.p ** self.s + 1

    @property
    def q(self) -> int:
        """Largest power of X in the basis of L(mP)."""
        return self.p ** (self.s - 1)

    @property
    def dim(self) -> int:
        return self.q + 2

    def t(self, i: int) -> FieldElement:
        """t_i, with t_s = 1 and t_0 = 0."""
        if i == self.s:
            return self.ambient.one()
        if i == 0:
            return self.ambient.zero()
        return self.t_coeffs[i - 1]

    @cached_property
    def f(self) -> Poly:
        terms = {self.p ** self.s + 1: self.ambient.one()}
        for i in range(1, self.s):
            terms[self.p ** i + 1] = self.t(i)
        return Poly(self.ambient, terms)

    def shift_difference(self, y: FieldElement) -> Poly:
        """f(X + y) - f(X)."""
        return self.f.shift(y) - self.f


def _embed(t, amb: FieldDesc) -> FieldElement:
    if isinstance(t, int):
        return amb.element(t)
    if t.desc == amb:
        return t
    if t.is_prime_field():
        return amb.element(t.coeffs[0])
    raise FieldError("coefficient does not live in the ambient field")


def ad_f(C: ASCurve) -> AdditivePolynomial:
    """sum_{0<=i<=s} t_i^(p^(s-i)) Y^(p^(s-i)) + t_i^(p^s) Y^(p^(s+i)), with t_s = 1."""
    coeffs: dict[int, FieldElement] = {}
    s = C.s
    for i in range(1, s + 1):
        ti = C.t(i)
        for nu, c in ((s - i, frobenius(ti, s - i)), (s + i, frobenius(ti, s))):
            coeffs[nu] = coeffs[nu] + c if nu in coeffs else c
    A = AdditivePolynomial(C.ambient, coeffs)
    for lam in range(1, s + 1):
        assert A.coeff(s + lam) == frobenius(A.coeff(s - lam), lam)
    return A


def p_f(C: ASCurve, y: FieldElement) -> Poly:
    """The W-shift polynomial Q with Q^p - Q - (f(X+y) - f(X)) constant, deg_X Q <= p^(s-1).

    Computed as -(Id + F + ... + F^(s+1)) Delta(f) reduced mod X^(p^(s-1)+1) and
    specialized at Y = y, Delta(f) = f(X+Y) - f(X) - f(Y).
    """
    y = _embed(y, C.ambient)
    if ad_f(C)(y):
        raise CurveError("y is not a root of Ad_f")
    delta = delta_bilinear(C.f)
    acc = delta.truncate_x(C.q)
    term = acc
    for _ in range(C.s + 1):
        term = term.frobenius().truncate_x(C.q)
        acc = acc + term
    Q = -acc.specialize_y(y)
    rem = Q.frobenius() - Q - C.shift_difference(y)
    if rem.degree() > 0:
        raise CurveError("shift polynomial fails its defining property")  # pragma: no cover
    return Q


def _frobenius_minus_id(desc: FieldDesc) -> tuple[list[list[FieldElement]], FieldDesc]:
    """Matrix over F_p of w -> w^p - w in the power basis."""
    fp = make_field(desc.p, 1, bound=desc.p)
    images = [to_prime_vector(frobenius(b) - b) for b in power_basis(desc)]
    return [[images[j][i] for j in range(desc.n)] for i in range(desc.n)], fp


def as_solve(rhs: FieldElement) -> FieldElement:
    """The w with w^p - w = rhs whose constant power-basis coordinate is 0."""
    desc = rhs.desc
    rows, fp = _frobenius_minus_id(desc)
    sol = solve_linear(rows, to_prime_vector(rhs), fp)
    if sol is None:
        raise CurveError("Artin-Schreier equation has no solution in the ambient field")
    return desc.element([c.coeffs[0] for c in sol])


def w_shift_base(C: ASCurve, y: FieldElement) -> Poly:
    """Q_y(X) + w0(y): the W-shift of the automorphism (y, 0)."""
    Q = p_f(C, y)
    kappa = (Q.frobenius() - Q - C.shift_difference(y)).coeff(0)
    w0 = as_solve(-kappa)
    return Q + Poly.constant(w0)


@dataclass(frozen=True)
class CurveAutomorphism:
    """X -> X + y, W -> W + w_shift(X), with w_shift = Q_y + w0(y) + c."""

    curve: ASCurve
    y: FieldElement
    central_part: int
    w_shift: Poly

    def __post_init__(self):
        h = self.w_shift
        if (h.frobenius() - h - self.curve.shift_difference(self.y)):
            raise CurveError("automorphism does not preserve the curve equation")

    @classmethod
    def make(cls, C: ASCurve, y: FieldElement, c: int = 0) -> "CurveAutomorphism":
        y = _embed(y, C.ambient)
        h = w_shift_base(C, y) + Poly(C.ambient, {0: c % C.p})
        return cls(C, y, c % C.p, h)

    def then(self, other: "CurveAutomorphism") -> tuple[FieldElement, Poly]:
        """(y, H) of self*other: X -> X + y1 + y2, W -> W + H(X)."""
        return self.y + other.y, other.w_shift + self.w_shift.shift(other.y)


class ASGroup(GroupTable):
    """The group of automorphisms (y, c); labels are (y, c) pairs."""

    def __init__(self, curve: ASCurve, roots: RootBasis, elements: list[CurveAutomorphism],
                 table, identity: int):
        super().__init__([(e.y, e.central_part) for e in elements], table, identity)
        self.curve = curve
        self.roots = roots
        self.elements = elements

    def index_of(self, y: FieldElement, c: int) -> int:
        return self._index[(y, c % self.curve.p)]

    def to_json(self) -> dict:
        return {"order": self.order, "center_order": len(self.center()),
                "elements": [{"y": y.to_json(), "c": c} for y, c in self.labels]}


def automorphism_group(C: ASCurve) -> ASGroup:
    A = ad_f(C)
    roots = root_space(A, C.ambient)
    if roots.dim < 2 * C.s:
        raise CurveError(f"Ad_f has only {C.p}^{roots.dim} roots in F_{C.p}^{C.ambient.n}; "
                         f"pass an ambient field over which it splits")
    p = C.p
    ys = list(roots.span())
    yidx = {y: k for k, y in enumerate(ys)}
    base = [w_shift_base(C, y) for y in ys]
    # beta(y1, y2): constant of base(y2) + base(y1)(X + y2) - base(y1 + y2)
    beta = [[0] * len(ys) for _ in ys]
    for a, y1 in enumerate(ys):
        for b, y2 in enumerate(ys):
            diff = base[b] + base[a].shift(y2) - base[yidx[y1 + y2]]
            if diff.degree() > 0 or not diff.coeff(0).is_prime_field():
                raise CurveError("composition is not of the form (y, c)")  # pragma: no cover
            beta[a][b] = diff.coeff(0).coeffs[0]
    elements = []
    for k, y in enumerate(ys):
        for c in range(p):
            elements.append(CurveAutomorphism(C, y, c, base[k] + Poly(C.ambient, {0: c})))
    n = len(elements)
    table = [[0] * n for _ in range(n)]
    for g in range(n):
        a, c1 = divmod(g, p)
        for h in range(n):
            b, c2 = divmod(h, p)
            k = yidx[ys[a] + ys[b]]
            table[g][h] = k * p + (c1 + c2 + beta[a][b]) % p
    G = ASGroup(C, roots, elements, table, yidx[C.ambient.zero()] * p)
    G._index = {lab: i for i, lab in enumerate(G.labels)}
    G.beta = beta
    G.roots_list = ys
    return G


def representation(C: ASCurve, g: CurveAutomorphism) -> Matrix:
    """Matrix of g on the basis 1, X, ..., X^(p^(s-1)), W: g(F_i) = sum_j rho[i][j] F_j."""
    K = C.ambient
    n = C.dim
    p = C.p
    rows = [[K.zero()] * n for _ in range(n)]
    for i in range(C.q + 1):
        for j in range(i + 1):
            b = binom_mod(i, j, p)
            if b:
                rows[i][j] = g.y ** (i - j) * b
    last = n - 1
    for j in range(C.q + 1):
        rows[last][j] = g.w_shift.coeff(j)
    rows[last][last] = K.one()
    return Matrix(K, rows)


def group_representation(G: ASGroup) -> list[Matrix]:
    return [representation(G.curve, e) for e in G.elements]


# --- local expansions at infinity -------------------------------------------

def local_expansion(C: ASCurve, prec: int) -> tuple[TruncatedSeries, TruncatedSeries]:
    """X(t), W(t) at infinity for the uniformizer with W = t^-m, X = t^-p (1 + O(t))."""
    K = C.ambient
    R = ArtinRing(K, False)
    p, m = C.p, C.m
    const = lambda k, c: TruncatedSeries.monomial(R, k, prec, R.scalar(c))
    coeffs = [TruncatedSeries(R, prec, [], prec) for _ in range(m + 1)]
    coeffs[m] = const(0, 1)
    for i in range(1, C.s):
        if C.t(i):
            coeffs[p ** i + 1] = coeffs[p ** i + 1] + const(p * (m - p ** i - 1), C.t(i))
    coeffs[0] = const(0, -1) + const(m * (p - 1), 1)
    u = tadic_solve(coeffs, const(0, 1))
    X = u.shift(-p)
    W = TruncatedSeries.monomial(R, -m, prec)
    return X, W


def basis_series(C: ASCurve, prec: int) -> list[TruncatedSeries]:
    """1, X, ..., X^q, W as series at infinity."""
    X, W = local_expansion(C, prec)
    R = X.ring
    out = [TruncatedSeries.constant(R, R.one(), prec), X]
    for _ in range(C.q - 1):
        out.append(out[-1] * X)
    return out + [W]


def curve_tuple(G: ASGroup, prec: int, elements: Iterable[int] | None = None) -> CompatibleTuple:
    """The tuple (1, X, ..., X^q, W; rho) over k for the given group elements."""
    C = G.curve
    F = basis_series(C, prec)
    idx = range(G.order) if elements is None else elements
    rho = {}
    for g in idx:
        M = representation(C, G.elements[g])
        rho[g] = [[ArtinScalar(x, None) for x in r] for r in M.entries]
    return CompatibleTuple(F, rho, C.m)


def local_action(C: ASCurve, g: CurveAutomorphism, precision: int | None = None) -> LocalAutomorphism:
    """sigma(t) for g, from the top row of the basis action; asserts the order lies in jumps + 1."""
    m = C.m
    if precision is None:
        precision = 4 * m + 2
    work = precision + _headroom(C)
    F = basis_series(C, work)
    M = representation(C, g)
    rho = {0: [[ArtinScalar(x, None) for x in r] for r in M.entries]}
    T = CompatibleTuple(F, rho, m)
    sigma = special_fibre_action(T, 0)
    if sigma.prec < precision:
        raise CurveError("precision exhausted")  # pragma: no cover
    sigma = LocalAutomorphism(sigma.image.truncate(precision))
    i = order_function(sigma)
    if i != INFINITE:
        allowed = jump_report(artin_schreier_semigroup(C.p, C.s), C.p).order_values()
        assert i in allowed, (i, allowed)
    return sigma


def _headroom(C: ASCurve) -> int:
    return C.p ** C.s + C.p
