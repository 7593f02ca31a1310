"""Additive (linearized) polynomials  sum a_nu Y^(p^nu)  and Moore determinants."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Callable, Iterator, Mapping, Sequence

from .ffield import FieldDesc, FieldElement, FieldError, Matrix, det, frobenius, nullspace, power_basis, to_prime_vector, make_field
from .polys import BiPoly, Poly, delta_bilinear  # noqa: F401  (re-exported)


class AdditivePolynomial:
    """sum_nu a_nu Y^(p^nu), stored as {nu: a_nu} with a_nu != 0."""

    __slots__ = ("desc", "coeffs")

    def __init__(self, desc: FieldDesc, coeffs: Mapping[int, FieldElement | int]):
        clean = {}
        for nu, a in coeffs.items():
            if isinstance(a, int):
                a = desc.element(a)
            if a.desc != desc:
                raise FieldError("coefficient from a different field")
            if a:
                clean[int(nu)] = a
        if not clean:
            raise ValueError("the zero polynomial is not allowed")
        self.desc = desc
        self.coeffs = clean

    @property
    def p(self) -> int:
        return self.desc.p

    @property
    def top(self) -> int:
        """Largest nu with a_nu != 0; the degree is p^top."""
        return max(self.coeffs)

    def degree(self) -> int:
        return self.p ** self.top

    def coeff(self, nu: int) -> FieldElement:
        return self.coeffs.get(nu, self.desc.zero())

    def is_monic(self) -> bool:
        return self.coeffs[self.top] == 1

    def monic(self) -> "AdditivePolynomial":
        inv = self.coeffs[self.top].inverse()
        return AdditivePolynomial(self.desc, {nu: a * inv for nu, a in self.coeffs.items()})

    def over(self, ambient: FieldDesc) -> "AdditivePolynomial":
        """The same polynomial with coefficients in ambient (only from the prime field)."""
        if ambient == self.desc:
            return self
        if ambient.p != self.p or not all(a.is_prime_field() for a in self.coeffs.values()):
            raise FieldError("cannot move coefficients into the ambient field")
        return AdditivePolynomial(ambient, {nu: ambient.element(a.coeffs[0])
                                            for nu, a in self.coeffs.items()})

    def __call__(self, x: FieldElement) -> FieldElement:
        f = self.over(x.desc)
        acc = x.desc.zero()
        for nu, a in f.coeffs.items():
            acc = acc + a * frobenius(x, nu)
        return acc

    def __eq__(self, other):
        return isinstance(other, AdditivePolynomial) and self.desc == other.desc \
            and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(tuple(sorted(self.coeffs.items())))

    def as_poly(self) -> Poly:
        return Poly(self.desc, {self.p ** nu: a for nu, a in self.coeffs.items()})

    def to_json(self) -> dict:
        nus = sorted(self.coeffs)
        return {"p_powers": nus, "coeffs": [self.coeffs[nu].to_json() for nu in nus]}

    @classmethod
    def from_json(cls, desc: FieldDesc, data: dict) -> "AdditivePolynomial":
        return cls(desc, {nu: desc.element(c) for nu, c in zip(data["p_powers"], data["coeffs"])})

    def __repr__(self):
        parts = []
        for nu in sorted(self.coeffs, reverse=True):
            a = self.coeffs[nu]
            mono = "Y" if nu == 0 else f"Y^{self.p ** nu}"
            parts.append(mono if a == 1 else f"({a!r})*{mono}")
        return " + ".join(parts)


def moore_matrix(xs: Sequence[FieldElement], rows: int | None = None) -> list[list[FieldElement]]:
    """Rows (x_1^(p^i), ..., x_r^(p^i)) for i = 0 .. rows-1."""
    if rows is None:
        rows = len(xs)
    return [[frobenius(x, i) for x in xs] for i in range(rows)]


def _common_desc(xs: Sequence[FieldElement]) -> FieldDesc:
    if not xs:
        raise ValueError("empty argument list")
    desc = xs[0].desc
    if any(x.desc != desc for x in xs):
        raise FieldError("arguments live in different fields")
    return desc


def moore_det(xs: Sequence[FieldElement]) -> FieldElement:
    """Delta(x_1, ..., x_r) = det(x_j^(p^(i-1)))."""
    desc = _common_desc(xs)
    return det(moore_matrix(xs), desc)


@dataclass(frozen=True)
class RootBasis:
    """F_p-linearly independent field elements spanning a root space."""

    desc: FieldDesc
    vectors: tuple[FieldElement, ...]

    def __post_init__(self):
        if self.vectors:
            if any(v.desc != self.desc for v in self.vectors):
                raise FieldError("basis vectors live in different fields")
            if not moore_det(self.vectors):
                raise ValueError("basis is F_p-linearly dependent (Moore determinant vanishes)")

    @property
    def dim(self) -> int:
        return len(self.vectors)

    def span(self) -> Iterator[FieldElement]:
        """All p^r elements of the F_p-span, in lexicographic coefficient order."""
        p = self.desc.p
        for cs in itertools.product(range(p), repeat=self.dim):
            acc = self.desc.zero()
            for c, v in zip(cs, self.vectors):
                if c:
                    acc = acc + v * c
            yield acc

    def combination(self, cs: Sequence[int]) -> FieldElement:
        acc = self.desc.zero()
        for c, v in zip(cs, self.vectors):
            acc = acc + v * c
        return acc

    def coordinates(self, x: FieldElement) -> list[int]:
        """F_p coordinates of x in this basis (raises if x is not in the span)."""
        fp = make_field(self.desc.p, 1, bound=self.desc.p)
        cols = [to_prime_vector(v) for v in self.vectors] + [to_prime_vector(x)]
        rows = [[cols[j][i] for j in range(len(cols))] for i in range(self.desc.n)]
        ker = nullspace(rows, fp, cols=len(cols))
        for v in ker:
            if v[-1]:
                inv = v[-1].inverse()
                return [(-(c * inv)).coeffs[0] for c in v[:-1]]
        raise ValueError("element is not in the span")


def additive_from_roots(basis: RootBasis) -> AdditivePolynomial:
    """The monic additive polynomial Delta(x_1..x_r, Y) / Delta(x_1..x_r) vanishing on the span."""
    r = basis.dim
    desc = basis.desc
    if r == 0:
        return AdditivePolynomial(desc, {0: 1})
    coeffs = moore_coefficients(list(basis.vectors), lambda rows: det(rows, desc))
    return AdditivePolynomial(desc, dict(enumerate(coeffs)))


def moore_coefficients(xs: Sequence, determinant: Callable[[list[list]], object]) -> list:
    """Coefficients a_0..a_r of Delta(xs, Y)/Delta(xs) by cofactor expansion along Y.

    Works for any scalar type with ``**``, ``*``, ``/`` and a matching determinant,
    e.g. dual numbers over F_{p^n}.
    """
    r = len(xs)
    p = _scalar_p(xs[0])
    rows = [[x ** (p ** i) for x in xs] for i in range(r + 1)]
    delta = determinant(rows[:r])
    out = []
    for i in range(r + 1):
        minor = determinant(rows[:i] + rows[i + 1:])
        sign_odd = (i + r) % 2 == 1
        a = minor / delta
        out.append(-a if sign_odd else a)
    return out


def _scalar_p(x) -> int:
    return x.desc.p


def root_space(f: AdditivePolynomial, ambient: FieldDesc) -> RootBasis:
    """Basis of {x in ambient : f(x) = 0} via the F_p-linear map x -> f(x)."""
    if ambient.p != f.p:
        raise FieldError("ambient field has the wrong characteristic")
    fp = make_field(ambient.p, 1, bound=ambient.p)
    images = [to_prime_vector(f(b)) for b in power_basis(ambient)]
    rows = [[images[j][i] for j in range(ambient.n)] for i in range(ambient.n)]
    ker = nullspace(rows, fp, cols=ambient.n)
    vectors = tuple(ambient.element([c.coeffs[0] for c in v]) for v in ker)
    return RootBasis(ambient, vectors)


def roots_brute_force(f: AdditivePolynomial, ambient: FieldDesc) -> list[FieldElement]:
    return [x for x in ambient.elements() if not f(x)]


def linear_polynomial_matrix(f: AdditivePolynomial, ambient: FieldDesc) -> Matrix:
    """Matrix over F_p of x -> f(x) in the power basis of ambient."""
    fp = make_field(ambient.p, 1, bound=ambient.p)
    images = [to_prime_vector(f(b)) for b in power_basis(ambient)]
    return Matrix(fp, [[images[j][i] for j in range(ambient.n)] for i in range(ambient.n)])
