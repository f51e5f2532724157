"""Binary forms over Z: content, GL2 action, resultants, discriminants, gcds."""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache, reduce
from math import comb, gcd

from . import _poly


class DegenerateFormError(ValueError):
    """The zero form (or a form of unsuitable degree) was passed where it is not allowed."""


class SingularMatrixError(ValueError):
    pass


@dataclass(frozen=True)
class BinaryForm:
    """``sum(a[i] * x**(n-i) * y**i)`` with integer coefficients ``a[0..n]``."""

    coeffs: tuple[int, ...]

    def __init__(self, coeffs):
        coeffs = tuple(int(c) for c in coeffs)
        if not coeffs:
            raise ValueError("a form of degree n needs n+1 coefficients")
        object.__setattr__(self, "coeffs", coeffs)

    @classmethod
    def from_poly(cls, f, degree: int | None = None) -> "BinaryForm":
        """Homogenize a univariate polynomial (lowest degree first) to ``degree``."""
        f = _poly.trim(f)
        n = max(len(f) - 1, 0) if degree is None else degree
        if len(f) - 1 > n:
            raise ValueError(f"polynomial of degree {len(f) - 1} exceeds {n}")
        f = f + [0] * (n + 1 - len(f))
        return cls(reversed(f))

    @classmethod
    def one(cls) -> "BinaryForm":
        return cls((1,))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def __call__(self, x, y):
        n = self.degree
        return sum(a * x ** (n - i) * y**i for i, a in enumerate(self.coeffs))

    def __neg__(self):
        return BinaryForm(-a for a in self.coeffs)

    def __add__(self, other: "BinaryForm") -> "BinaryForm":
        if other.degree != self.degree:
            raise ValueError("cannot add forms of different degree")
        return BinaryForm(a + b for a, b in zip(self.coeffs, other.coeffs))

    def __sub__(self, other: "BinaryForm") -> "BinaryForm":
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, BinaryForm):
            out = [0] * (self.degree + other.degree + 1)
            for i, a in enumerate(self.coeffs):
                if a:
                    for j, b in enumerate(other.coeffs):
                        out[i + j] += a * b
            return BinaryForm(out)
        return BinaryForm(a * other for a in self.coeffs)

    __rmul__ = __mul__

    def __pow__(self, e: int) -> "BinaryForm":
        out = BinaryForm.one()
        for _ in range(e):
            out = out * self
        return out

    def exact_div(self, k: int) -> "BinaryForm":
        if any(a % k for a in self.coeffs):
            raise ArithmeticError(f"{self} is not divisible by {k}")
        return BinaryForm(a // k for a in self.coeffs)

    def dx(self) -> "BinaryForm":
        n = self.degree
        if n == 0:
            return BinaryForm((0,))
        return BinaryForm((n - i) * a for i, a in enumerate(self.coeffs[:-1]))

    def dy(self) -> "BinaryForm":
        if self.degree == 0:
            return BinaryForm((0,))
        return BinaryForm(i * a for i, a in enumerate(self.coeffs) if i)

    def y_order(self) -> int:
        """Largest k with y**k dividing the form (multiplicity of the point [1:0])."""
        for i, a in enumerate(self.coeffs):
            if a:
                return i
        raise DegenerateFormError("zero form")

    def dehomogenize(self) -> list[int]:
        """``F(x, 1)`` as a univariate polynomial, lowest degree first."""
        return _poly.trim(reversed(self.coeffs))

    def normalized(self) -> "BinaryForm":
        """Same form up to sign, with first nonzero coefficient positive."""
        for a in self.coeffs:
            if a:
                return -self if a < 0 else self
        return self

    def reduce_mod(self, p: int) -> tuple[int, ...]:
        return tuple(a % p for a in self.coeffs)

    def __str__(self) -> str:
        return format_poly(self.coeffs, "x", "y")


def format_poly(coeffs, x: str = "x", y: str | None = "y") -> str:
    """Render ``sum(c[i] x^(n-i) y^i)``; with ``y=None`` render ``F(x, 1)``."""
    n = len(coeffs) - 1
    terms = []
    for i, a in enumerate(coeffs):
        if not a:
            continue
        mono = []
        for var, e in ((x, n - i), (y, i)):
            if var is not None and e:
                mono.append(var if e == 1 else f"{var}^{e}")
        body = "*".join(mono)
        mag = abs(a)
        if body:
            body = body if mag == 1 else f"{mag}*{body}"
        else:
            body = str(mag)
        terms.append(("-" if a < 0 else "+", body))
    if not terms:
        return "0"
    head = ("-" if terms[0][0] == "-" else "") + terms[0][1]
    return head + "".join(f" {s} {b}" for s, b in terms[1:])


@dataclass(frozen=True)
class Matrix2:
    """``[[a, b], [c, d]]`` acting on forms by ``F(ax + by, cx + dy)``."""

    a: int
    b: int
    c: int
    d: int

    @classmethod
    def identity(cls) -> "Matrix2":
        return cls(1, 0, 0, 1)

    @classmethod
    def swap(cls) -> "Matrix2":
        return cls(0, 1, 1, 0)

    @classmethod
    def of(cls, rows) -> "Matrix2":
        (a, b), (c, d) = rows
        return cls(a, b, c, d)

    @property
    def det(self) -> int:
        return self.a * self.d - self.b * self.c

    @property
    def is_unimodular(self) -> bool:
        return self.det in (1, -1)

    def __matmul__(self, o: "Matrix2") -> "Matrix2":
        return Matrix2(
            self.a * o.a + self.b * o.c,
            self.a * o.b + self.b * o.d,
            self.c * o.a + self.d * o.c,
            self.c * o.b + self.d * o.d,
        )

    def adjugate(self) -> "Matrix2":
        return Matrix2(self.d, -self.b, -self.c, self.a)

    def inverse(self) -> "Matrix2":
        """Integer inverse; only defined for unimodular matrices."""
        if not self.is_unimodular:
            raise SingularMatrixError(f"{self} has no integer inverse")
        adj = self.adjugate()
        return Matrix2(*(e * self.det for e in (adj.a, adj.b, adj.c, adj.d)))

    def primitive(self) -> "Matrix2":
        g = reduce(gcd, (self.a, self.b, self.c, self.d))
        if g == 0:
            return self
        first = next(e for e in (self.a, self.b, self.c, self.d) if e)
        g = g if first > 0 else -g
        return Matrix2(self.a // g, self.b // g, self.c // g, self.d // g)

    def rows(self) -> list[list[int]]:
        return [[self.a, self.b], [self.c, self.d]]


def _require_nonzero(*forms: BinaryForm) -> None:
    for f in forms:
        if f.is_zero:
            raise DegenerateFormError("operation undefined on the zero form")


def content(f: BinaryForm) -> int:
    """Positive gcd of the coefficients."""
    _require_nonzero(f)
    return reduce(gcd, f.coeffs)


def primitive_part(f: BinaryForm) -> BinaryForm:
    """``f / content(f)``, sign-normalized so the first nonzero coefficient is positive."""
    return f.exact_div(content(f)).normalized()


def _linear_powers(p: int, q: int, n: int) -> list[list[int]]:
    """Coefficient lists (x^k first) of (p x + q y)^k for k = 0..n."""
    return [[comb(k, j) * p ** (k - j) * q**j for j in range(k + 1)] for k in range(n + 1)]


def apply_gl2(f: BinaryForm, g: Matrix2) -> BinaryForm:
    """``F(ax + by, cx + dy)``."""
    _require_nonzero(f)
    if g.det == 0:
        raise SingularMatrixError(f"singular matrix {g.rows()}")
    n = f.degree
    xs = _linear_powers(g.a, g.b, n)
    ys = _linear_powers(g.c, g.d, n)
    out = [0] * (n + 1)
    for i, coef in enumerate(f.coeffs):
        if not coef:
            continue
        for k, t in enumerate(_poly.mul(xs[n - i], ys[i])):
            out[k] += coef * t
    return BinaryForm(out)


def _bareiss_det(m: list[list[int]]) -> int:
    n = len(m)
    if n == 0:
        return 1
    m = [row[:] for row in m]
    sign, prev = 1, 1
    for k in range(n - 1):
        if m[k][k] == 0:
            for r in range(k + 1, n):
                if m[r][k]:
                    m[k], m[r] = m[r], m[k]
                    sign = -sign
                    break
            else:
                return 0
        pivot = m[k][k]
        for i in range(k + 1, n):
            mik = m[i][k]
            row_i, row_k = m[i], m[k]
            for j in range(k + 1, n):
                row_i[j] = (row_i[j] * pivot - mik * row_k[j]) // prev
        prev = pivot
    return sign * m[n - 1][n - 1]


def sylvester_matrix(f_coeffs, g_coeffs) -> list[list[int]]:
    m, n = len(f_coeffs) - 1, len(g_coeffs) - 1
    size = m + n
    rows = []
    for i in range(n):
        rows.append([0] * i + list(f_coeffs) + [0] * (size - m - 1 - i))
    for i in range(m):
        rows.append([0] * i + list(g_coeffs) + [0] * (size - n - 1 - i))
    return rows


def resultant_coeffs(f_coeffs, g_coeffs) -> int:
    """Sylvester resultant of two coefficient sequences (highest x-power first)."""
    return _bareiss_det(sylvester_matrix(f_coeffs, g_coeffs))


def resultant(f: BinaryForm, g: BinaryForm) -> int:
    """Binary-form resultant: determinant of the Sylvester matrix, rows of ``f`` first.

    Zero exactly when ``f`` and ``g`` share a projective root over Q-bar.
    """
    _require_nonzero(f, g)
    return resultant_coeffs(f.coeffs, g.coeffs)


def lower_shear(k: int) -> Matrix2:
    """``[[1, 0], [k, 1]]``: sends F to F(x, kx + y), whose x^n coefficient is F(1, k)."""
    return Matrix2(1, 0, k, 1)


def shear_to_finite(f: BinaryForm) -> tuple[BinaryForm, int]:
    """First ``k = 0, 1, 2, ...`` with F(1, k) != 0, and the sheared form."""
    _require_nonzero(f)
    k = 0
    while f(1, k) == 0:
        k += 1
    return (f if k == 0 else apply_gl2(f, lower_shear(k))), k


@lru_cache(maxsize=8192)
def discriminant(f: BinaryForm) -> int:
    """``prod_{i<j} (alpha_i beta_j - beta_i alpha_j)^2`` for F = prod(beta_i x - alpha_i y).

    This is the classical binary-form discriminant; it is invariant under
    GL2(Z) and scales as ``lam^(2n-2)`` under ``F -> lam F``.
    """
    _require_nonzero(f)
    n = f.degree
    if n < 2:
        raise DegenerateFormError(f"discriminant needs degree >= 2, got {n}")
    g, _ = shear_to_finite(f)
    lead = g.coeffs[0]
    res = resultant_coeffs(g.coeffs, g.dx().coeffs)
    q, r = divmod(res, lead)
    assert r == 0
    return -q if (n * (n - 1) // 2) % 2 else q


def _split_infinity(f: BinaryForm) -> tuple[int, list[int]]:
    return f.y_order(), f.dehomogenize()


def form_gcd(f: BinaryForm, g: BinaryForm) -> BinaryForm:
    """Primitive form of maximal degree dividing both; ``BinaryForm((1,))`` if coprime."""
    _require_nonzero(f, g)
    kf, pf = _split_infinity(f)
    kg, pg = _split_infinity(g)
    h = _poly.gcd_z(pf, pg)
    k = min(kf, kg)
    out = BinaryForm.from_poly(h, len(h) - 1 + k)
    return primitive_part(out)


def squarefree_part(f: BinaryForm) -> BinaryForm:
    """Primitive form vanishing once at each distinct projective root of ``f``."""
    _require_nonzero(f)
    if f.degree < 1:
        raise DegenerateFormError("squarefree part needs degree >= 1")
    k, pf = _split_infinity(f)
    if len(pf) > 1:
        h = _poly.primitive(_poly.exact_quotient(pf, _poly.gcd_z(pf, _poly.deriv(pf))))
    else:
        h = [1]
    out = BinaryForm.from_poly(h, len(h) - 1 + min(k, 1))
    return primitive_part(out)


def root_multiplicities(f: BinaryForm) -> tuple[int, ...]:
    """Multiplicities of the distinct projective roots of ``f`` over Q-bar, descending."""
    _require_nonzero(f)
    k, pf = _split_infinity(f)
    mults = [k] if k else []
    if len(pf) > 1:
        for i, part in enumerate(_poly.squarefree_decomposition(pf), start=1):
            mults += [i] * (len(part) - 1)
    return tuple(sorted(mults, reverse=True))


def form_from_points(points) -> BinaryForm:
    """``prod(b x - a y)`` over projective points ``[a : b]``."""
    out = BinaryForm.one()
    for a, b in points:
        out = out * BinaryForm((b, -a))
    return out
