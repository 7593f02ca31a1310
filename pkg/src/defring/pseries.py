"""Truncated Laurent series over k and k[eps]/(eps^2), local automorphisms and Hensel lifts.

A series is  sum_{i=low}^{prec-1} c_i t^i + O(t^prec).  Precision is tracked
as an absolute bound ``prec``; ``N = prec - low`` is the relative precision.
Products and compositions propagate the bound conservatively, so every
stored coefficient is exact.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Hashable, Mapping, Sequence

from .ffield import FieldDesc, FieldElement, FieldError, det


class SeriesError(ValueError):
    pass


class PrecisionError(SeriesError):
    pass


# --- coefficient rings ------------------------------------------------------

@dataclass(frozen=True)
class ArtinRing:
    """k (dual=False) or k[eps]/(eps^2) (dual=True), k = desc."""

    desc: FieldDesc
    dual: bool = False

    def scalar(self, a: FieldElement | int, b: FieldElement | int | None = None) -> "ArtinScalar":
        if isinstance(a, int):
            a = self.desc.element(a)
        if b is not None and isinstance(b, int):
            b = self.desc.element(b)
        if not self.dual:
            if b is not None and b:
                raise SeriesError("eps-part in the residue field")
            return ArtinScalar(a, None)
        return ArtinScalar(a, b if b is not None else self.desc.zero())

    def zero(self) -> "ArtinScalar":
        return self.scalar(0)

    def one(self) -> "ArtinScalar":
        return self.scalar(1)

    def eps(self) -> "ArtinScalar":
        if not self.dual:
            raise SeriesError("no eps in the residue field")
        return self.scalar(0, 1)

    def residue(self) -> "ArtinRing":
        return ArtinRing(self.desc, False)

    def with_eps(self) -> "ArtinRing":
        return ArtinRing(self.desc, True)


class ArtinScalar:
    """a + eps*b with eps^2 = 0; ``b is None`` marks an element of k itself."""

    __slots__ = ("a", "b")

    def __init__(self, a: FieldElement, b: FieldElement | None = None):
        self.a = a
        self.b = b

    @property
    def desc(self) -> FieldDesc:
        return self.a.desc

    @property
    def is_dual(self) -> bool:
        return self.b is not None

    @property
    def ring(self) -> ArtinRing:
        return ArtinRing(self.a.desc, self.b is not None)

    def eps_part(self) -> FieldElement:
        return self.b if self.b is not None else self.a.desc.zero()

    def reduce(self) -> FieldElement:
        return self.a

    def is_unit(self) -> bool:
        return bool(self.a)

    def _coerce(self, other) -> "ArtinScalar":
        if isinstance(other, ArtinScalar):
            return other
        if isinstance(other, (FieldElement, int)):
            if isinstance(other, int):
                other = self.a.desc.element(other)
            return ArtinScalar(other, None)
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        if self.b is None and o.b is None:
            return ArtinScalar(self.a + o.a, None)
        return ArtinScalar(self.a + o.a, self.eps_part() + o.eps_part())

    __radd__ = __add__

    def __neg__(self):
        return ArtinScalar(-self.a, None if self.b is None else -self.b)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self + (-o)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        if self.b is None and o.b is None:
            return ArtinScalar(self.a * o.a, None)
        b = self.a * o.eps_part() + self.eps_part() * o.a
        return ArtinScalar(self.a * o.a, b)

    __rmul__ = __mul__

    def inverse(self) -> "ArtinScalar":
        if not self.a:
            raise ZeroDivisionError("not a unit of the Artin ring")
        ia = self.a.inverse()
        if self.b is None:
            return ArtinScalar(ia, None)
        return ArtinScalar(ia, -self.b * ia * ia)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self * o.inverse()

    def __pow__(self, e: int):
        if e == 0:
            return ArtinScalar(self.a.desc.one(), None if self.b is None else self.a.desc.zero())
        if e < 0:
            return self.inverse() ** (-e)
        ae = self.a ** e
        if self.b is None:
            return ArtinScalar(ae, None)
        # (a + eps b)^e = a^e + e a^(e-1) b eps
        coef = e % self.a.desc.p
        b = self.a ** (e - 1) * self.b * coef if coef else self.a.desc.zero()
        return ArtinScalar(ae, b)

    def __eq__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return self.a == o.a and self.eps_part() == o.eps_part()

    def __hash__(self):
        return hash((self.a, self.eps_part()))

    def __bool__(self):
        return bool(self.a) or bool(self.b)

    def to_json(self):
        if self.b is None:
            return self.a.to_json()
        return [self.a.to_json(), self.b.to_json()]

    def __repr__(self):
        if self.b is None or not self.b:
            return repr(self.a)
        return f"({self.a!r}) + eps*({self.b!r})"


def artin_det(rows: Sequence[Sequence[ArtinScalar]], desc: FieldDesc) -> ArtinScalar:
    """Determinant over k[eps]: det(M0) + eps * sum_i det(M0 with row i taken from M1)."""
    m0 = [[x.a for x in r] for r in rows]
    m1 = [[x.eps_part() for x in r] for r in rows]
    d0 = det(m0, desc)
    if not any(x.is_dual for r in rows for x in r):
        return ArtinScalar(d0, None)
    d1 = desc.zero()
    for i in range(len(rows)):
        if any(m1[i]):
            d1 = d1 + det(m0[:i] + [m1[i]] + m0[i + 1:], desc)
    return ArtinScalar(d0, d1)


# --- series -----------------------------------------------------------------

class TruncatedSeries:
    """sum_{i=low}^{prec-1} c_i t^i + O(t^prec) with coefficients in an ArtinRing."""

    __slots__ = ("ring", "low", "prec", "coeffs")

    def __init__(self, ring: ArtinRing, low: int, coeffs: Sequence[ArtinScalar], prec: int | None = None):
        coeffs = list(coeffs)
        if prec is None:
            prec = low + len(coeffs)
        if prec < low:
            low = prec
        coeffs = coeffs[:prec - low]
        zero = ring.zero()
        coeffs += [zero] * (prec - low - len(coeffs))
        self.ring = ring
        self.low = low
        self.prec = prec
        self.coeffs = tuple(c if ring.dual == c.is_dual else ring.scalar(c.a, c.b) for c in coeffs)

    # construction
    @classmethod
    def from_field(cls, ring: ArtinRing, low: int, values: Sequence[FieldElement | int],
                   prec: int | None = None) -> "TruncatedSeries":
        return cls(ring, low, [ring.scalar(v) for v in values], prec)

    @classmethod
    def monomial(cls, ring: ArtinRing, k: int, prec: int, c: ArtinScalar | None = None) -> "TruncatedSeries":
        c = ring.one() if c is None else c
        if k >= prec:
            return cls(ring, prec, [], prec)
        return cls(ring, k, [c], prec)

    @classmethod
    def constant(cls, ring: ArtinRing, c: ArtinScalar, prec: int) -> "TruncatedSeries":
        return cls.monomial(ring, 0, prec, c)

    @classmethod
    def t(cls, ring: ArtinRing, prec: int) -> "TruncatedSeries":
        return cls.monomial(ring, 1, prec)

    @property
    def N(self) -> int:
        return self.prec - self.low

    def coeff(self, i: int) -> ArtinScalar:
        if i >= self.prec:
            raise PrecisionError(f"coefficient t^{i} beyond precision {self.prec}")
        if i < self.low:
            return self.ring.zero()
        return self.coeffs[i - self.low]

    def valuation(self) -> int | None:
        """Smallest exponent with a nonzero coefficient; None if zero to precision."""
        for i, c in enumerate(self.coeffs):
            if c:
                return self.low + i
        return None

    def _vbound(self) -> int:
        v = self.valuation()
        return self.prec if v is None else v

    def normalized(self) -> "TruncatedSeries":
        v = self._vbound()
        return TruncatedSeries(self.ring, v, self.coeffs[v - self.low:], self.prec)

    def is_zero(self) -> bool:
        return self.valuation() is None

    def truncate(self, prec: int) -> "TruncatedSeries":
        return TruncatedSeries(self.ring, self.low, self.coeffs, min(prec, self.prec))

    def _promote(self, ring: ArtinRing) -> "TruncatedSeries":
        if ring == self.ring:
            return self
        if ring.desc != self.ring.desc:
            raise FieldError("series over different fields")
        return TruncatedSeries(ring, self.low, self.coeffs, self.prec)

    def _join(self, other: "TruncatedSeries") -> tuple["TruncatedSeries", "TruncatedSeries"]:
        if self.ring == other.ring:
            return self, other
        ring = ArtinRing(self.ring.desc, self.ring.dual or other.ring.dual)
        return self._promote(ring), other._promote(ring)

    # arithmetic
    def __add__(self, other):
        if isinstance(other, (ArtinScalar, FieldElement, int)):
            other = TruncatedSeries.constant(self.ring, self.ring.scalar(0) + other, self.prec)
        a, b = self._join(other)
        low = min(a.low, b.low)
        prec = min(a.prec, b.prec)
        out = [a.coeff(i) + b.coeff(i) for i in range(low, prec)]
        return TruncatedSeries(a.ring, low, out, prec)

    __radd__ = __add__

    def __neg__(self):
        return TruncatedSeries(self.ring, self.low, [-c for c in self.coeffs], self.prec)

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, c: ArtinScalar | FieldElement | int) -> "TruncatedSeries":
        ring = self.ring
        if isinstance(c, ArtinScalar) and c.is_dual and not ring.dual:
            ring = ring.with_eps()
        return TruncatedSeries(ring, self.low, [x * c for x in self.coeffs], self.prec)

    def __mul__(self, other):
        if isinstance(other, (ArtinScalar, FieldElement, int)):
            return self.scale(other)
        a, b = self._join(other)
        va, vb = a._vbound(), b._vbound()
        prec = min(a.prec + vb, b.prec + va)
        low = va + vb
        n = prec - low
        if n <= 0:
            return TruncatedSeries(a.ring, prec, [], prec)
        ca = a.coeffs[va - a.low:]
        cb = b.coeffs[vb - b.low:]
        zero = a.ring.zero()
        out = [zero] * n
        for i, x in enumerate(ca[:n]):
            if not x:
                continue
            for j, y in enumerate(cb[:n - i]):
                if y:
                    out[i + j] = out[i + j] + x * y
        return TruncatedSeries(a.ring, low, out, prec)

    def __rmul__(self, other):
        return self.scale(other)

    def shift(self, k: int) -> "TruncatedSeries":
        """Multiply by t^k."""
        return TruncatedSeries(self.ring, self.low + k, self.coeffs, self.prec + k)

    def reduce(self) -> "TruncatedSeries":
        """Reduction mod m_A."""
        res = self.ring.residue()
        return TruncatedSeries(res, self.low, [ArtinScalar(c.a, None) for c in self.coeffs], self.prec)

    def eps_part(self) -> "TruncatedSeries":
        res = self.ring.residue()
        return TruncatedSeries(res, self.low, [ArtinScalar(c.eps_part(), None) for c in self.coeffs],
                               self.prec)

    @classmethod
    def from_parts(cls, base: "TruncatedSeries", eps: "TruncatedSeries") -> "TruncatedSeries":
        ring = base.ring.with_eps()
        low = min(base.low, eps.low)
        prec = min(base.prec, eps.prec)
        return cls(ring, low, [ArtinScalar(base.coeff(i).a, eps.coeff(i).a) for i in range(low, prec)], prec)

    def inverse(self) -> "TruncatedSeries":
        if self.ring.dual and any(c.is_dual and c.b for c in self.coeffs):
            x0, x1 = self.reduce(), self.eps_part()
            inv0 = x0.inverse()
            corr = x1 * inv0 * inv0
            return TruncatedSeries.from_parts(inv0, -corr)
        s = self.normalized()
        if s.N <= 0:
            raise PrecisionError("cannot invert a series that vanishes to precision")
        lead = s.coeffs[0]
        if not lead.is_unit():
            raise SeriesError("leading coefficient is not a unit")
        n = s.N
        il = lead.inverse()
        out = [il]
        for k in range(1, n):
            acc = s.ring.zero()
            for j in range(1, k + 1):
                c = s.coeffs[j]
                if c:
                    acc = acc + c * out[k - j]
            out.append(-acc * il)
        return TruncatedSeries(s.ring, -s.low, out, -s.low + n)

    def __truediv__(self, other):
        if isinstance(other, TruncatedSeries):
            return self * other.inverse()
        return self.scale(_scalar_inv(self.ring, other))

    def __pow__(self, e: int) -> "TruncatedSeries":
        if e < 0:
            return self.inverse() ** (-e)
        if e == 0:
            # t^v u raised to 0 is 1, known to the relative precision of u
            return TruncatedSeries.constant(self.ring, self.ring.one(), max(self.prec - self._vbound(), 0))
        base = self
        result = None
        while e:
            if e & 1:
                result = base if result is None else result * base
            e >>= 1
            if e:
                base = base * base
        return result

    def derivative(self) -> "TruncatedSeries":
        p = self.ring.desc.p
        out = [c * ((self.low + i) % p) for i, c in enumerate(self.coeffs)]
        return TruncatedSeries(self.ring, self.low - 1, out, self.prec - 1)

    def __eq__(self, other):
        if not isinstance(other, TruncatedSeries):
            return NotImplemented
        return self.agrees(other) and self.prec == other.prec

    def __hash__(self):
        return hash((self.low, self.prec))

    def agrees(self, other: "TruncatedSeries") -> bool:
        """Equal on all exponents known for both."""
        return (self - other).is_zero()

    def to_json(self) -> dict:
        return {"low": self.low, "precision": self.N, "coeffs": [c.to_json() for c in self.coeffs]}

    def __repr__(self):
        terms = []
        for i, c in enumerate(self.coeffs):
            if c:
                k = self.low + i
                mono = "" if k == 0 else ("t" if k == 1 else f"t^{k}")
                cs = repr(c)
                terms.append(cs if not mono else (mono if cs == "1" else f"({cs})*{mono}"))
        body = " + ".join(terms) if terms else "0"
        return f"{body} + O(t^{self.prec})"


def _scalar_inv(ring: ArtinRing, c) -> ArtinScalar:
    if isinstance(c, int):
        c = ring.desc.element(c)
    if isinstance(c, FieldElement):
        c = ArtinScalar(c, None)
    return c.inverse()


def compose(f: TruncatedSeries, g: TruncatedSeries) -> TruncatedSeries:
    """f(g(t)); g must have valuation >= 1, and be t*(unit) if f has a pole."""
    vg = g.valuation()
    if vg is None or vg < 1:
        raise SeriesError("inner series must have valuation >= 1")
    f, g = f._join(g)
    vf = f.valuation()
    if f.prec < 0 or (vf is not None and vf < 0):
        if vg != 1 or not g.coeff(1).is_unit():
            raise SeriesError("Laurent composition needs an inner series t*(unit)")
    # the tail O(t^prec) of f becomes O(g^prec)
    bound = f.prec * vg if f.prec >= 0 else f.prec
    if vf is None:
        return TruncatedSeries(f.ring, bound, [], bound)
    acc = None
    lowest = max(vf, 0)
    if lowest < f.prec:
        h = TruncatedSeries.constant(f.ring, f.coeff(f.prec - 1), bound)
        for k in range(f.prec - 2, lowest - 1, -1):
            h = h * g + f.coeff(k)
        acc = h if lowest == 0 else h * g ** lowest
    if vf < 0:
        ginv = g.inverse()
        power = None
        for k in range(-1, vf - 1, -1):
            power = ginv if power is None else power * ginv
            c = f.coeff(k)
            if c:
                term = power.scale(c)
                acc = term if acc is None else acc + term
    return acc.truncate(bound)


def poly_eval(coeffs: Sequence[TruncatedSeries], y: TruncatedSeries) -> TruncatedSeries:
    """sum_k coeffs[k] * y^k by Horner."""
    acc = coeffs[-1]
    for c in reversed(coeffs[:-1]):
        acc = acc * y + c
    return acc


def poly_derivative(coeffs: Sequence[TruncatedSeries]) -> list[TruncatedSeries]:
    p = coeffs[0].ring.desc.p
    out = [c.scale(k % p) for k, c in enumerate(coeffs)][1:]
    return out or [coeffs[0].scale(0)]


def tadic_solve(coeffs: Sequence[TruncatedSeries], seed: TruncatedSeries, max_iter: int = 64
                ) -> TruncatedSeries:
    """Newton iteration in k[[t]] for a simple root: f'(seed) must be a unit series."""
    d = poly_derivative(coeffs)
    b = seed
    for _ in range(max_iter):
        val = poly_eval(coeffs, b)
        if val.is_zero():
            return b
        e = poly_eval(d, b)
        if e.normalized().low != 0:
            raise SeriesError("derivative is not a unit; t-adic Newton does not apply")
        b = (b - val * e.inverse()).truncate(b.prec)
    if not poly_eval(coeffs, b).is_zero():
        raise PrecisionError("t-adic Newton did not converge")
    return b


def hensel_solve(coeffs: Sequence[TruncatedSeries], seed: TruncatedSeries) -> TruncatedSeries:
    """The unique root b of f with b = seed mod m_A, for A = k or k[eps].

    Preconditions: f(seed) = 0 mod m_A, and e = f'(seed) not a zero divisor
    (its reduction mod m_A is nonzero).  With eps^2 = 0 a single Newton step
    b = seed - f(seed)/e is exact.
    """
    ring = coeffs[0].ring
    for c in coeffs[1:]:
        ring = ArtinRing(ring.desc, ring.dual or c.ring.dual)
    seed = seed._promote(ArtinRing(ring.desc, ring.dual or seed.ring.dual))
    coeffs = [c._promote(seed.ring) for c in coeffs]
    val = poly_eval(coeffs, seed)
    if not val.reduce().is_zero():
        raise SeriesError("seed is not a root modulo the maximal ideal")
    e = poly_eval(poly_derivative(coeffs), seed)
    if e.reduce().is_zero():
        raise SeriesError("f'(seed) is a zero divisor")
    if val.is_zero():
        return seed
    if not seed.ring.dual:
        return seed  # pragma: no cover  (val reduces to itself)
    # val = eps * g; only e mod m_A matters in the quotient
    g = val.eps_part()
    q = (g * e.reduce().inverse()).normalized()
    seed_low = seed.normalized().low
    if q.valuation() is not None and q.valuation() < min(0, seed_low):
        raise SeriesError("Newton correction has a genuine pole")
    corr = TruncatedSeries.from_parts(TruncatedSeries(seed.ring.residue(), q.low, [], q.prec), q)
    b = seed - corr
    return b.truncate(min(b.prec, seed.prec))


# --- local automorphisms ----------------------------------------------------

INFINITE = float("inf")


class LocalAutomorphism:
    """An automorphism of A[[t]] given by sigma(t) = t*(unit), the unit reducing to 1 + O(t)."""

    __slots__ = ("image",)

    def __init__(self, image: TruncatedSeries):
        v = image.valuation()
        if v != 1:
            raise SeriesError(f"sigma(t) must have valuation 1, got {v}")
        if image.coeff(1).reduce() != 1:
            raise SeriesError("leading coefficient of sigma(t) must reduce to 1")
        self.image = image

    @property
    def ring(self) -> ArtinRing:
        return self.image.ring

    @property
    def prec(self) -> int:
        return self.image.prec

    def __call__(self, f: TruncatedSeries) -> TruncatedSeries:
        return compose(f, self.image)

    def then(self, other: "LocalAutomorphism") -> "LocalAutomorphism":
        """Series composition self.image(other.image)."""
        return LocalAutomorphism(compose(self.image, other.image))

    def inverse(self) -> "LocalAutomorphism":
        """g with compose(image, g) = t, by Newton on the composition."""
        f = self.image
        t = TruncatedSeries.t(f.ring, f.prec)
        df = f.derivative()
        g = t
        for _ in range(f.prec + 2):
            r = compose(f, g) - t
            if r.is_zero():
                break
            g = (g - r * compose(df, g).inverse()).truncate(f.prec)
        return LocalAutomorphism(g)

    def reduce(self) -> "LocalAutomorphism":
        return LocalAutomorphism(self.image.reduce())

    def agrees(self, other: "LocalAutomorphism") -> bool:
        return self.image.agrees(other.image)

    def __repr__(self):
        return f"t -> {self.image!r}"


def order_function(sigma: LocalAutomorphism) -> int | float:
    """v(sigma(t) - t); INFINITE for the identity."""
    d = sigma.image - TruncatedSeries.t(sigma.ring, sigma.prec)
    v = d.valuation()
    if v is None:
        exact_t = all(not c for i, c in enumerate(sigma.image.coeffs) if sigma.image.low + i != 1)
        if exact_t:
            return INFINITE
        raise PrecisionError("precision exhausted before sigma(t) - t showed a nonzero term")
    return v


def identity_automorphism(ring: ArtinRing, prec: int) -> LocalAutomorphism:
    return LocalAutomorphism(TruncatedSeries.t(ring, prec))


# --- compatible tuples ------------------------------------------------------

Scalar = ArtinScalar
Rows = Sequence[Sequence[ArtinScalar]]


@dataclass
class CompatibleTuple:
    """(F_1, ..., F_n, rho) with F_n = u(t) / t^m.

    ``F`` lists the basis functions as Laurent series, ordered by increasing pole
    order, the constant function first.  ``rho[g]`` is the lower unitriangular
    matrix of g: g(F_i) = sum_nu rho[g][i][nu] F_nu.  ``top_unit`` holds the
    coefficients of the polynomial u with F_n = u(t)/t^m, and ``m`` the pole order
    of F_n.
    """

    F: list[TruncatedSeries]
    rho: Mapping[Hashable, Rows]
    m: int
    top_unit: list[ArtinScalar] = field(default_factory=list)

    def __post_init__(self):
        n = len(self.F)
        if not self.top_unit:
            self.top_unit = [self.F[-1].ring.one()]
        for g, mat in self.rho.items():
            if len(mat) != n or any(len(r) != n for r in mat):
                raise SeriesError(f"matrix of {g!r} has the wrong size")
            for i, r in enumerate(mat):
                for j, x in enumerate(r):
                    if j > i and x:
                        raise SeriesError("representation matrix is not lower triangular")
                    if j == i and x != 1:
                        raise SeriesError("representation matrix is not unitriangular")

    @property
    def ring(self) -> ArtinRing:
        dual = any(f.ring.dual for f in self.F) or any(
            x.is_dual for mat in self.rho.values() for r in mat for x in r) or any(
            x.is_dual for x in self.top_unit)
        return ArtinRing(self.F[0].ring.desc, dual)

    @property
    def prec(self) -> int:
        return min(f.prec + (self.m if f.low < 0 else 0) for f in self.F)

    def reduce(self) -> "CompatibleTuple":
        red = {g: [[ArtinScalar(x.a, None) for x in r] for r in mat] for g, mat in self.rho.items()}
        return CompatibleTuple([f.reduce() for f in self.F], red, self.m,
                               [ArtinScalar(x.a, None) for x in self.top_unit])

    def conjugate(self, Q: Rows) -> "CompatibleTuple":
        """(Q F, Q rho Q^-1) for Q in L_n(A)."""
        n = len(self.F)
        Qinv = _lower_unitriangular_inverse(Q)
        newF = []
        for i in range(n):
            acc = None
            for mu in range(i + 1):
                if Q[i][mu]:
                    term = self.F[mu].scale(Q[i][mu])
                    acc = term if acc is None else acc + term
            newF.append(acc)
        newrho = {g: matmul_rows(matmul_rows(Q, mat), Qinv) for g, mat in self.rho.items()}
        # Q F_n = F_n + lower pole terms, so top_unit picks up t^m * (lower terms)
        low_part = newF[-1] - self.F[-1].scale(Q[-1][-1])
        u_series = _poly_series(self.top_unit, self.F[-1].ring, self.F[-1].prec + self.m) \
            + low_part.shift(self.m)
        s = u_series.normalized()
        if s.low < 0:
            raise SeriesError("conjugation produced a pole in the top unit")
        top_unit = [u_series.coeff(k) for k in range(0, u_series.prec)]
        while len(top_unit) > 1 and not top_unit[-1]:
            top_unit.pop()
        return CompatibleTuple(newF, newrho, self.m, top_unit)


def _poly_series(coeffs: Sequence[ArtinScalar], ring: ArtinRing, prec: int) -> TruncatedSeries:
    ring = ArtinRing(ring.desc, ring.dual or any(c.is_dual for c in coeffs))
    return TruncatedSeries(ring, 0, list(coeffs), prec)


def matmul_rows(A: Rows, B: Rows) -> list[list[ArtinScalar]]:
    n, k, m = len(A), len(B), len(B[0])
    out = []
    for i in range(n):
        row = []
        for j in range(m):
            acc = None
            for l in range(k):
                x, y = A[i][l], B[l][j]
                if x and y:
                    acc = x * y if acc is None else acc + x * y
            row.append(acc if acc is not None else (A[i][0] * 0))
        out.append(row)
    return out


def _lower_unitriangular_inverse(Q: Rows) -> list[list[ArtinScalar]]:
    n = len(Q)
    zero = Q[0][0] * 0
    inv = [[(zero + 1) if i == j else zero for j in range(n)] for i in range(n)]
    for i in range(n):
        for j in range(i):
            acc = zero
            for l in range(j, i):
                acc = acc + Q[i][l] * inv[l][j]
            inv[i][j] = -acc
    return inv


def last_row_equation(T: CompatibleTuple, g: Hashable) -> list[TruncatedSeries]:
    """Coefficients in Y of  t^m u(Y) - Y^m * t^m * sum_nu rho_{n,nu}(g) F_nu(t)."""
    mat = T.rho[g]
    ring = T.ring
    prec = T.prec
    S = None
    for nu, F in enumerate(T.F):
        c = mat[-1][nu]
        if c:
            term = F.shift(T.m).scale(c)
            S = term if S is None else S + term
    S = S._promote(ring).truncate(prec)
    deg = max(T.m, len(T.top_unit) - 1)
    coeffs = [TruncatedSeries(ring, prec, [], prec) for _ in range(deg + 1)]
    for k, u in enumerate(T.top_unit):
        if u:
            coeffs[k] = coeffs[k] + TruncatedSeries.monomial(ring, T.m, prec, ring.scalar(0) + u)
    coeffs[T.m] = coeffs[T.m] - S
    return coeffs


def special_fibre_action(T: CompatibleTuple, g: Hashable) -> LocalAutomorphism:
    """sigma(t) over k from the last row: sigma(t) = t*Z with u(tZ) = Z^m * S(t)."""
    R = T.reduce()
    coeffs = last_row_equation(R, g)
    ring = R.ring
    prec = R.prec
    t = TruncatedSeries.t(ring, prec)
    # substitute Y = t Z and divide by t^m
    zc = [c.shift(-T.m) * (t ** k) if k else c.shift(-T.m) for k, c in enumerate(coeffs)]
    zc = [c.truncate(prec - 1) for c in zc]
    one = TruncatedSeries.constant(ring, ring.one(), prec - 1)
    Z = tadic_solve(zc, one)
    return LocalAutomorphism((t * Z).truncate(prec))


def lift_automorphism(T: CompatibleTuple, g: Hashable, seed: LocalAutomorphism | None = None
                      ) -> LocalAutomorphism:
    """The unique solution of the last-row equation reducing to the special-fibre sigma(t)."""
    if seed is None:
        seed = special_fibre_action(T, g)
    coeffs = last_row_equation(T, g)
    b = hensel_solve(coeffs, seed.image)
    b = b.normalized()
    if b.low < 1 or b.valuation() != 1:
        raise SeriesError("lift does not have valuation 1")
    return LocalAutomorphism(b)


def last_row_residual(T: CompatibleTuple, g: Hashable, b: LocalAutomorphism) -> TruncatedSeries:
    return poly_eval(last_row_equation(T, g), b.image._promote(T.ring))


def compatibility_residuals(T: CompatibleTuple, g: Hashable, b: LocalAutomorphism | None = None
                            ) -> list[TruncatedSeries]:
    """F_i(b) - sum_nu rho_{i,nu}(g) F_nu(t) for the rows below the top one."""
    if b is None:
        b = lift_automorphism(T, g)
    mat = T.rho[g]
    out = []
    for i in range(len(T.F) - 1):
        lhs = compose(T.F[i]._promote(T.ring), b.image._promote(T.ring))
        rhs = None
        for nu in range(i + 1):
            c = mat[i][nu]
            if c:
                term = T.F[nu]._promote(T.ring).scale(c)
                rhs = term if rhs is None else rhs + term
        out.append(lhs - rhs)
    return out


def is_compatible(T: CompatibleTuple, g: Hashable, min_prec: int = 1) -> bool:
    for r in compatibility_residuals(T, g):
        if r.prec < min_prec:
            raise PrecisionError("residual precision too small to decide compatibility")
        if not r.is_zero():
            return False
    return True
