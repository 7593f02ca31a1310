"""Sparse polynomials in one and two variables with finite-field coefficients."""

from __future__ import annotations

from math import comb
from typing import Mapping

from .ffield import FieldDesc, FieldElement, frobenius


def binom_mod(n: int, k: int, p: int) -> int:
    """binom(n, k) mod p by Lucas' theorem."""
    if k < 0 or k > n:
        return 0
    out = 1
    while n or k:
        ni, ki = n % p, k % p
        if ki > ni:
            return 0
        out = out * comb(ni, ki) % p
        n //= p
        k //= p
    return out


class Poly:
    """A univariate polynomial  sum c_i X^i  stored as {i: c_i} with c_i != 0."""

    __slots__ = ("desc", "terms")

    def __init__(self, desc: FieldDesc, terms: Mapping[int, FieldElement | int] | None = None):
        self.desc = desc
        clean = {}
        for i, c in (terms or {}).items():
            if i < 0:
                raise ValueError("negative exponent")
            if isinstance(c, int):
                c = desc.element(c)
            if c:
                clean[i] = c
        self.terms = clean

    @classmethod
    def monomial(cls, desc: FieldDesc, i: int, c: FieldElement | int = 1) -> "Poly":
        return cls(desc, {i: c})

    @classmethod
    def constant(cls, c: FieldElement) -> "Poly":
        return cls(c.desc, {0: c})

    def degree(self) -> int:
        return max(self.terms, default=-1)

    def coeff(self, i: int) -> FieldElement:
        return self.terms.get(i, self.desc.zero())

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        return isinstance(other, Poly) and self.desc == other.desc and self.terms == other.terms

    def __hash__(self):
        return hash(tuple(sorted(self.terms.items())))

    def __add__(self, other: "Poly") -> "Poly":
        out = dict(self.terms)
        for i, c in other.terms.items():
            out[i] = out[i] + c if i in out else c
        return Poly(self.desc, out)

    def __neg__(self) -> "Poly":
        return Poly(self.desc, {i: -c for i, c in self.terms.items()})

    def __sub__(self, other: "Poly") -> "Poly":
        return self + (-other)

    def __mul__(self, other: "Poly | FieldElement") -> "Poly":
        if isinstance(other, FieldElement):
            return Poly(self.desc, {i: c * other for i, c in self.terms.items()})
        out: dict[int, FieldElement] = {}
        for i, a in self.terms.items():
            for j, b in other.terms.items():
                k = i + j
                out[k] = out[k] + a * b if k in out else a * b
        return Poly(self.desc, out)

    __rmul__ = __mul__

    def __pow__(self, e: int) -> "Poly":
        result = Poly(self.desc, {0: 1})
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def __call__(self, x: FieldElement) -> FieldElement:
        acc = self.desc.zero()
        for i, c in self.terms.items():
            acc = acc + c * x ** i
        return acc

    def shift(self, y: FieldElement) -> "Poly":
        """The polynomial f(X + y), expanded with binomials reduced mod p."""
        p = self.desc.p
        out: dict[int, FieldElement] = {}
        for i, c in self.terms.items():
            for j in range(i + 1):
                b = binom_mod(i, j, p)
                if b:
                    t = c * y ** (i - j) * b
                    out[j] = out[j] + t if j in out else t
        return Poly(self.desc, out)

    def frobenius(self) -> "Poly":
        """Apply F: g -> g^p, i.e. c X^i -> c^p X^(pi)."""
        p = self.desc.p
        return Poly(self.desc, {p * i: frobenius(c) for i, c in self.terms.items()})

    def truncate(self, max_degree: int) -> "Poly":
        return Poly(self.desc, {i: c for i, c in self.terms.items() if i <= max_degree})

    def to_json(self) -> dict:
        return {"exponents": sorted(self.terms),
                "coeffs": [self.terms[i].to_json() for i in sorted(self.terms)]}

    def __repr__(self):
        if not self.terms:
            return "0"
        parts = []
        for i in sorted(self.terms, reverse=True):
            c = repr(self.terms[i])
            mono = "" if i == 0 else ("X" if i == 1 else f"X^{i}")
            if not mono:
                parts.append(c)
            elif c == "1":
                parts.append(mono)
            else:
                parts.append(f"({c})*{mono}")
        return " + ".join(parts)


class BiPoly:
    """A bivariate polynomial  sum c_ij X^i Y^j  stored as {(i, j): c_ij}."""

    __slots__ = ("desc", "terms")

    def __init__(self, desc: FieldDesc, terms: Mapping[tuple[int, int], FieldElement] | None = None):
        self.desc = desc
        self.terms = {k: c for k, c in (terms or {}).items() if c}

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        return isinstance(other, BiPoly) and self.desc == other.desc and self.terms == other.terms

    def __add__(self, other: "BiPoly") -> "BiPoly":
        out = dict(self.terms)
        for k, c in other.terms.items():
            out[k] = out[k] + c if k in out else c
        return BiPoly(self.desc, out)

    def frobenius(self) -> "BiPoly":
        p = self.desc.p
        return BiPoly(self.desc, {(p * i, p * j): frobenius(c) for (i, j), c in self.terms.items()})

    def truncate_x(self, max_degree: int) -> "BiPoly":
        return BiPoly(self.desc, {(i, j): c for (i, j), c in self.terms.items() if i <= max_degree})

    def specialize_y(self, y: FieldElement) -> Poly:
        out: dict[int, FieldElement] = {}
        for (i, j), c in self.terms.items():
            t = c * y ** j
            out[i] = out[i] + t if i in out else t
        return Poly(self.desc, out)

    def __repr__(self):
        if not self.terms:
            return "0"
        return " + ".join(f"({c})*X^{i}*Y^{j}" for (i, j), c in sorted(self.terms.items(), reverse=True))


def delta_bilinear(f: Poly) -> BiPoly:
    """f(X + Y) - f(X) - f(Y), with binomial coefficients reduced by Lucas' theorem."""
    p = f.desc.p
    out: dict[tuple[int, int], FieldElement] = {}
    for n, c in f.terms.items():
        for k in range(1, n):
            b = binom_mod(n, k, p)
            if b:
                key = (k, n - k)
                t = c * b
                out[key] = out[key] + t if key in out else t
    return BiPoly(f.desc, out)
