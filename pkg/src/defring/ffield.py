"""Exact arithmetic in the finite fields F_{p^n}, p odd.

An extension field is presented as F_p[z]/(g) where g is the canonical
modulus: the lexicographically smallest monic irreducible polynomial of
degree n, comparing coefficient vectors low degree first.  Elements are
coefficient vectors in the power basis 1, z, ..., z^{n-1}.

Linear algebra (rank, nullspace, determinant) works over any FieldDesc
and is exposed through :class:`Matrix` and :func:`nullspace`.
"""

from __future__ import annotations

import functools
import itertools
import random
from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

SIZE_BOUND = 2 ** 24


class FieldError(ValueError):
    """Raised for invalid field parameters or mixed-field operations."""


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


def _prime_factors(n: int) -> list[int]:
    out, d = [], 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


# --- dense polynomials over F_p as lists of ints, low degree first -------

def _trim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def _pmod(a: list[int], g: Sequence[int], p: int) -> list[int]:
    a = _trim(list(a))
    dg = len(g) - 1
    inv = pow(g[-1], p - 2, p)
    while len(a) - 1 >= dg:
        c = a[-1] * inv % p
        shift = len(a) - 1 - dg
        for i, gi in enumerate(g):
            a[shift + i] = (a[shift + i] - c * gi) % p
        _trim(a)
    return a


def _pmul(a: Sequence[int], b: Sequence[int], p: int) -> list[int]:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] = (out[i + j] + ai * bj) % p
    return _trim(out)


def _pgcd(a: list[int], b: list[int], p: int) -> list[int]:
    a, b = _trim(list(a)), _trim(list(b))
    while b:
        a, b = b, _pmod(a, b, p)
    return a


def _powmod(base: Sequence[int], e: int, g: Sequence[int], p: int) -> list[int]:
    """base^e mod g over F_p."""
    result, base = [1], _pmod(base, g, p)
    while e:
        if e & 1:
            result = _pmod(_pmul(result, base, p), g, p)
        base = _pmod(_pmul(base, base, p), g, p)
        e >>= 1
    return result


def is_irreducible(g: Sequence[int], p: int) -> bool:
    """Ben-Or's test for a monic g (low degree first): gcd(g, x^(p^k) - x) = 1 for k <= n/2."""
    n = len(g) - 1
    if n < 1:
        return False
    if n == 1:
        return True
    x = [0, 1]
    h = x
    for _ in range(n // 2):
        h = _powmod(h, p, g, p)
        diff = _trim([(hi - xi) % p for hi, xi in itertools.zip_longest(h, x, fillvalue=0)])
        if len(_pgcd(list(g), diff, p)) != 1:
            return False
    return True


def canonical_modulus(p: int, n: int) -> tuple[int, ...]:
    for low in itertools.product(range(p), repeat=n):
        g = tuple(low) + (1,)
        if is_irreducible(g, p):
            return g
    raise FieldError(f"no irreducible polynomial of degree {n} over F_{p}")


@dataclass(frozen=True)
class FieldDesc:
    """The field F_{p^n} = F_p[z]/(modulus)."""

    p: int
    n: int
    modulus: tuple[int, ...]

    @property
    def order(self) -> int:
        return self.p ** self.n

    def element(self, value: int | Sequence[int]) -> "FieldElement":
        """An element from an integer (embedded from F_p) or a coefficient vector."""
        if isinstance(value, int):
            coeffs = (value % self.p,) + (0,) * (self.n - 1)
        else:
            coeffs = tuple(int(c) % self.p for c in value)
            if len(coeffs) > self.n:
                raise FieldError("coefficient vector longer than extension degree")
            coeffs = coeffs + (0,) * (self.n - len(coeffs))
        return FieldElement(self, coeffs)

    def zero(self) -> "FieldElement":
        return self.element(0)

    def one(self) -> "FieldElement":
        return self.element(1)

    def gen(self) -> "FieldElement":
        """The class of z, a root of the modulus."""
        if self.n == 1:
            return self.element(-self.modulus[0])
        return self.element([0, 1])

    def from_index(self, k: int) -> "FieldElement":
        digits = []
        for _ in range(self.n):
            k, r = divmod(k, self.p)
            digits.append(r)
        return self.element(digits)

    def elements(self) -> Iterator["FieldElement"]:
        for k in range(self.order):
            yield self.from_index(k)

    def random(self, rng: random.Random) -> "FieldElement":
        return self.from_index(rng.randrange(self.order))

    def random_nonzero(self, rng: random.Random) -> "FieldElement":
        return self.from_index(rng.randrange(1, self.order))

    def primitive_element(self) -> "FieldElement":
        return _primitive_element(self)

    def to_json(self) -> dict:
        return {"p": self.p, "n": self.n, "modulus": list(self.modulus)}


@functools.cache
def _make_field(p: int, n: int) -> FieldDesc:
    return FieldDesc(p, n, canonical_modulus(p, n))


def make_field(p: int, n: int = 1, bound: int = SIZE_BOUND) -> FieldDesc:
    """Return the canonical F_{p^n}; the same (p, n) always gives the same modulus."""
    if not isinstance(p, int) or not is_prime(p):
        raise FieldError(f"characteristic {p} is not prime")
    if p == 2:
        raise FieldError("only odd characteristic is supported")
    if not isinstance(n, int) or n < 1:
        raise FieldError(f"extension degree must be a positive integer, got {n}")
    if p ** n > bound:
        raise FieldError(f"field of order {p}^{n} exceeds size bound {bound}")
    return _make_field(p, n)


@functools.cache
def _primitive_element(desc: FieldDesc) -> "FieldElement":
    q1 = desc.order - 1
    factors = _prime_factors(q1)
    for k in range(1, desc.order):
        g = desc.from_index(k)
        if all(g ** (q1 // r) != desc.one() for r in factors):
            return g
    raise FieldError("no primitive element found")  # pragma: no cover


class FieldElement:
    """An element of F_{p^n}; immutable and hashable."""

    __slots__ = ("desc", "coeffs")

    def __init__(self, desc: FieldDesc, coeffs: tuple[int, ...]):
        self.desc = desc
        self.coeffs = coeffs

    def _check(self, other) -> "FieldElement":
        if isinstance(other, int):
            return self.desc.element(other)
        if not isinstance(other, FieldElement):
            return NotImplemented
        if other.desc != self.desc:
            raise FieldError("operands live in different fields")
        return other

    def __add__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return other
        p = self.desc.p
        return FieldElement(self.desc, tuple((a + b) % p for a, b in zip(self.coeffs, other.coeffs)))

    __radd__ = __add__

    def __neg__(self):
        p = self.desc.p
        return FieldElement(self.desc, tuple(-a % p for a in self.coeffs))

    def __sub__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return other
        p = self.desc.p
        return FieldElement(self.desc, tuple((a - b) % p for a, b in zip(self.coeffs, other.coeffs)))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return other
        d = self.desc
        p, n = d.p, d.n
        if n == 1:
            return FieldElement(d, (self.coeffs[0] * other.coeffs[0] % p,))
        prod = [0] * (2 * n - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    if b:
                        prod[i + j] += a * b
        g = d.modulus
        for k in range(2 * n - 2, n - 1, -1):
            c = prod[k] % p
            if c:
                for i in range(n):
                    prod[k - n + i] -= c * g[i]
        return FieldElement(d, tuple(c % p for c in prod[:n]))

    __rmul__ = __mul__

    def __pow__(self, e: int):
        if e < 0:
            return self.inverse() ** (-e)
        if not self:
            return self.desc.one() if e == 0 else self
        e %= self.desc.order - 1
        result, base = self.desc.one(), self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def inverse(self) -> "FieldElement":
        if not self:
            raise ZeroDivisionError("zero has no inverse")
        return self ** (self.desc.order - 2)

    def __truediv__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return other
        return self * other.inverse()

    def __rtruediv__(self, other):
        return self.inverse() * other

    def __eq__(self, other):
        if isinstance(other, int):
            other = self.desc.element(other)
        if not isinstance(other, FieldElement):
            return NotImplemented
        return self.desc == other.desc and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.desc.p, self.desc.n, self.coeffs))

    def __bool__(self):
        return any(self.coeffs)

    def is_prime_field(self) -> bool:
        return not any(self.coeffs[1:])

    def to_index(self) -> int:
        return sum(c * self.desc.p ** i for i, c in enumerate(self.coeffs))

    def to_json(self) -> list[int]:
        return list(self.coeffs)

    def __repr__(self):
        if self.desc.n == 1:
            return str(self.coeffs[0])
        terms = []
        for i, c in enumerate(self.coeffs):
            if c:
                mono = "" if i == 0 else ("z" if i == 1 else f"z^{i}")
                terms.append(str(c) if not mono else (mono if c == 1 else f"{c}*{mono}"))
        return " + ".join(terms) if terms else "0"


def frobenius(x: FieldElement, k: int = 1) -> FieldElement:
    """x^(p^k)."""
    if k < 0:
        raise FieldError("frobenius power must be nonnegative")
    k %= x.desc.n
    for _ in range(k):
        x = x ** x.desc.p
    return x


def to_prime_vector(x: FieldElement) -> list[FieldElement]:
    """Coordinates of x over F_p in the power basis, as F_p elements."""
    fp = make_field(x.desc.p, 1, bound=x.desc.p)
    return [fp.element(c) for c in x.coeffs]


def power_basis(desc: FieldDesc) -> list[FieldElement]:
    return [desc.element([0] * i + [1]) for i in range(desc.n)]


# --- linear algebra -------------------------------------------------------

class Matrix:
    """A dense matrix over a FieldDesc, stored row-major as tuples."""

    __slots__ = ("desc", "rows", "cols", "entries")

    def __init__(self, desc: FieldDesc, entries: Sequence[Sequence[FieldElement | int]],
                 cols: int | None = None):
        rows = [tuple(e if isinstance(e, FieldElement) else desc.element(e) for e in row)
                for row in entries]
        if cols is None:
            cols = len(rows[0]) if rows else 0
        if any(len(r) != cols for r in rows):
            raise FieldError("ragged matrix")
        for r in rows:
            for e in r:
                if e.desc != desc:
                    raise FieldError("matrix entry from a different field")
        self.desc = desc
        self.rows = len(rows)
        self.cols = cols
        self.entries = tuple(rows)

    @classmethod
    def identity(cls, desc: FieldDesc, n: int) -> "Matrix":
        return cls(desc, [[1 if i == j else 0 for j in range(n)] for i in range(n)])

    @classmethod
    def zeros(cls, desc: FieldDesc, rows: int, cols: int) -> "Matrix":
        return cls(desc, [[0] * cols for _ in range(rows)], cols=cols)

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i][j]

    def __eq__(self, other):
        return isinstance(other, Matrix) and self.desc == other.desc and self.entries == other.entries

    def __hash__(self):
        return hash(self.entries)

    def __add__(self, other: "Matrix") -> "Matrix":
        return Matrix(self.desc, [[a + b for a, b in zip(r, s)]
                                  for r, s in zip(self.entries, other.entries)], self.cols)

    def __sub__(self, other: "Matrix") -> "Matrix":
        return Matrix(self.desc, [[a - b for a, b in zip(r, s)]
                                  for r, s in zip(self.entries, other.entries)], self.cols)

    def __matmul__(self, other: "Matrix") -> "Matrix":
        if self.cols != other.rows:
            raise FieldError("dimension mismatch in matrix product")
        zero = self.desc.zero()
        out = []
        for r in self.entries:
            row = []
            for j in range(other.cols):
                acc = zero
                for k, a in enumerate(r):
                    if a:
                        b = other.entries[k][j]
                        if b:
                            acc = acc + a * b
                row.append(acc)
            out.append(row)
        return Matrix(self.desc, out, other.cols)

    def scale(self, c: FieldElement) -> "Matrix":
        return Matrix(self.desc, [[c * a for a in r] for r in self.entries], self.cols)

    def transpose(self) -> "Matrix":
        return Matrix(self.desc, [[self.entries[i][j] for i in range(self.rows)]
                                  for j in range(self.cols)], self.rows)

    def is_lower_unitriangular(self) -> bool:
        return all((e == 1) if i == j else (not e) if j > i else True
                   for i, r in enumerate(self.entries) for j, e in enumerate(r))

    def rref(self) -> tuple[list[list[FieldElement]], list[int]]:
        return rref(self.entries, self.desc)

    def rank(self) -> int:
        return len(self.rref()[1])

    def nullspace(self) -> list[list[FieldElement]]:
        return nullspace(self)

    def det(self) -> FieldElement:
        return det(self.entries, self.desc)

    def inverse(self) -> "Matrix":
        n = self.rows
        aug = [list(r) + [self.desc.one() if i == j else self.desc.zero() for j in range(n)]
               for i, r in enumerate(self.entries)]
        red, piv = rref(aug, self.desc)
        if piv[:n] != list(range(n)):
            raise ZeroDivisionError("singular matrix")
        return Matrix(self.desc, [row[n:] for row in red[:n]], n)

    def to_json(self) -> list[list[list[int]]]:
        return [[e.to_json() for e in r] for r in self.entries]

    def __repr__(self):
        return format_grid(self.entries)


def format_grid(rows: Sequence[Sequence[object]]) -> str:
    cells = [[str(e) for e in r] for r in rows]
    if not cells:
        return "[]"
    widths = [max(len(r[j]) for r in cells) for j in range(len(cells[0]))]
    return "\n".join("[ " + "  ".join(c.rjust(w) for c, w in zip(r, widths)) + " ]" for r in cells)


def rref(rows: Iterable[Sequence[FieldElement]], desc: FieldDesc
         ) -> tuple[list[list[FieldElement]], list[int]]:
    """Reduced row echelon form and pivot columns."""
    m = [list(r) for r in rows]
    if not m:
        return m, []
    ncols = len(m[0])
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        pivot = next((i for i in range(r, len(m)) if m[i][c]), None)
        if pivot is None:
            continue
        m[r], m[pivot] = m[pivot], m[r]
        inv = m[r][c].inverse()
        m[r] = [inv * e for e in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c]:
                f = m[i][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return m, pivots


def nullspace(M: Matrix | Sequence[Sequence[FieldElement]], desc: FieldDesc | None = None,
              cols: int | None = None) -> list[list[FieldElement]]:
    """An echelonized basis of {v : M v = 0}; dim = cols - rank."""
    if isinstance(M, Matrix):
        desc, cols, rows = M.desc, M.cols, M.entries
    else:
        rows = M
        if cols is None:
            cols = len(rows[0])
    red, pivots = rref(rows, desc)
    free = [c for c in range(cols) if c not in pivots]
    basis = []
    for f in free:
        v = [desc.zero()] * cols
        v[f] = desc.one()
        for i, pc in enumerate(pivots):
            v[pc] = -red[i][f]
        basis.append(v)
    return basis


def rank(rows: Sequence[Sequence[FieldElement]], desc: FieldDesc) -> int:
    return len(rref(rows, desc)[1])


def det(rows: Sequence[Sequence[FieldElement]], desc: FieldDesc) -> FieldElement:
    m = [list(r) for r in rows]
    n = len(m)
    if any(len(r) != n for r in m):
        raise FieldError("determinant of a non-square matrix")
    result = desc.one()
    for c in range(n):
        pivot = next((i for i in range(c, n) if m[i][c]), None)
        if pivot is None:
            return desc.zero()
        if pivot != c:
            m[c], m[pivot] = m[pivot], m[c]
            result = -result
        result = result * m[c][c]
        inv = m[c][c].inverse()
        for i in range(c + 1, n):
            if m[i][c]:
                f = m[i][c] * inv
                m[i] = [a - f * b for a, b in zip(m[i], m[c])]
    return result


def span_contains(basis: Sequence[Sequence[FieldElement]], v: Sequence[FieldElement],
                  desc: FieldDesc) -> bool:
    r = rank(basis, desc) if basis else 0
    return rank(list(basis) + [list(v)], desc) == r


def same_span(a: Sequence[Sequence[FieldElement]], b: Sequence[Sequence[FieldElement]],
              desc: FieldDesc) -> bool:
    ra = rank(a, desc) if a else 0
    rb = rank(b, desc) if b else 0
    if ra != rb:
        return False
    if not a:
        return True
    return rank(list(a) + list(b), desc) == ra


def solve_linear(rows: Sequence[Sequence[FieldElement]], rhs: Sequence[FieldElement],
                 desc: FieldDesc) -> list[FieldElement] | None:
    """A solution of rows * v = rhs with all free variables 0, or None if inconsistent."""
    if not rows:
        return []
    ncols = len(rows[0])
    aug = [list(r) + [b] for r, b in zip(rows, rhs)]
    red, pivots = rref(aug, desc)
    if ncols in pivots:
        return None
    v = [desc.zero()] * ncols
    for i, pc in enumerate(pivots):
        v[pc] = red[i][ncols]
    return v
