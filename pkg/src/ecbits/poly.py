"""Dense univariate polynomials and rational functions over F_p.

Coefficients are stored lowest degree first with no trailing zeros; the
zero polynomial has an empty coefficient list.  Multiplication is
schoolbook: degrees stay in the hundreds at desk scale, so nothing
fancier is warranted and every operation is exact.
"""

from __future__ import annotations

from .field import Fp2, PrimeField


class Poly:
    """Polynomial over F_p as a trimmed list of canonical residues."""

    __slots__ = ("field", "coeffs")

    def __init__(self, field: PrimeField, coeffs=()):
        p = field.p
        c = [v % p for v in coeffs]
        while c and c[-1] == 0:
            c.pop()
        self.field = field
        self.coeffs = c

    @classmethod
    def const(cls, field: PrimeField, v: int) -> "Poly":
        return cls(field, [v])

    @classmethod
    def x(cls, field: PrimeField) -> "Poly":
        return cls(field, [0, 1])

    def is_zero(self) -> bool:
        return not self.coeffs

    def degree(self) -> int:
        """Degree, with -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    def lead(self) -> int:
        return self.coeffs[-1] if self.coeffs else 0

    def __eq__(self, other):
        return (
            isinstance(other, Poly)
            and other.field.p == self.field.p
            and other.coeffs == self.coeffs
        )

    def __hash__(self):
        return hash((self.field.p, tuple(self.coeffs)))

    def __repr__(self):
        if self.is_zero():
            return "Poly(0)"
        terms = []
        for i, c in enumerate(self.coeffs):
            if c:
                terms.append(f"{c}" if i == 0 else (f"X^{i}" if c == 1 else f"{c}*X^{i}"))
        return "Poly(" + " + ".join(reversed(terms)) + ")"

    def _wrap(self, coeffs) -> "Poly":
        return Poly(self.field, coeffs)

    def __add__(self, other):
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, v in enumerate(b):
            out[i] += v
        return self._wrap(out)

    def __sub__(self, other):
        out = list(self.coeffs) + [0] * max(0, len(other.coeffs) - len(self.coeffs))
        for i, v in enumerate(other.coeffs):
            out[i] -= v
        return self._wrap(out)

    def __neg__(self):
        return self._wrap([-v for v in self.coeffs])

    def __mul__(self, other):
        if isinstance(other, int):
            return self._wrap([other * v for v in self.coeffs])
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return self._wrap([])
        p = self.field.p
        out = [0] * (len(a) + len(b) - 1)
        for i, ai in enumerate(a):
            if ai:
                for j, bj in enumerate(b):
                    out[i + j] += ai * bj
        return self._wrap([v % p for v in out])

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "Poly":
        result = Poly.const(self.field, 1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __divmod__(self, other):
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        p = self.field.p
        rem = list(self.coeffs)
        dq = len(rem) - len(other.coeffs)
        if dq < 0:
            return self._wrap([]), self._wrap(rem)
        quo = [0] * (dq + 1)
        inv_lead = self.field.inv(other.lead())
        for k in range(dq, -1, -1):
            c = rem[k + other.degree()] * inv_lead % p
            if c:
                quo[k] = c
                for j, v in enumerate(other.coeffs):
                    rem[k + j] = (rem[k + j] - c * v) % p
        return self._wrap(quo), self._wrap(rem)

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def monic(self) -> "Poly":
        if self.is_zero() or self.lead() == 1:
            return self
        return self * self.field.inv(self.lead())

    def derivative(self) -> "Poly":
        return self._wrap([i * v for i, v in enumerate(self.coeffs)][1:])

    def __call__(self, u):
        """Evaluate by Horner at an int (F_p) or Fp2 point."""
        if isinstance(u, Fp2):
            acc = Fp2(self.field, 0)
            for c in reversed(self.coeffs):
                acc = acc * u + c
            return acc
        p = self.field.p
        acc = 0
        for c in reversed(self.coeffs):
            acc = (acc * u + c) % p
        return acc

    def roots(self) -> list[int]:
        """All roots in F_p, by scanning the field (desk-scale)."""
        return [u for u in range(self.field.p) if self(u) == 0]


def poly_gcd(f: Poly, g: Poly) -> Poly:
    """Monic greatest common divisor via the Euclidean algorithm."""
    if f.is_zero() and g.is_zero():
        raise ValueError("gcd(0, 0) is undefined")
    while not g.is_zero():
        f, g = g, f % g
    return f.monic()


def pth_root(f: Poly) -> Poly:
    """Inverse of the Frobenius on polynomials with zero derivative.

    Over F_p every coefficient is its own p-th root, so f(X) = g(X^p)
    maps to g(X).
    """
    p = f.field.p
    if any(v and i % p for i, v in enumerate(f.coeffs)):
        raise ValueError("not a polynomial in X^p")
    return Poly(f.field, f.coeffs[::p])


def pth_power_root(f: Poly, r: int) -> Poly:
    """Extract g with g^(p^r) = f, assuming f is a polynomial in X^(p^r).

    Valid over F_p because Frobenius fixes the coefficients.  Raises
    ValueError when some exponent is not divisible by p^r, which signals
    that the caller's ordinary/supersingular classification was wrong.
    """
    if r < 0:
        raise ValueError("negative root exponent")
    for _ in range(r):
        f = pth_root(f)
    return f


def squarefree_part(f: Poly) -> Poly:
    """Monic product of the distinct irreducible factors of f.

    Characteristic-p aware: factors whose multiplicity is divisible by p
    hide inside gcd(f, f') with derivative zero, so the p-th root is
    taken and processed recursively.
    """
    if f.is_zero():
        raise ValueError("zero polynomial has no squarefree part")
    f = f.monic()
    if f.degree() <= 0:
        return Poly.const(f.field, 1)
    d = f.derivative()
    if d.is_zero():
        return squarefree_part(pth_root(f))
    g = poly_gcd(f, d)
    w = f // g  # distinct factors with multiplicity not divisible by p
    while True:
        c = poly_gcd(g, w)
        if c.degree() == 0:
            break
        g = g // c
    # g is now a p-th power holding the multiplicity-divisible-by-p factors
    if g.degree() == 0:
        return w.monic()
    return (w * squarefree_part(pth_root(g))).monic()


class RationalFn:
    """Reduced fraction of two polynomials, denominator monic and nonzero."""

    __slots__ = ("num", "den")

    def __init__(self, num: Poly, den: Poly):
        if den.is_zero():
            raise ZeroDivisionError("zero denominator")
        if num.is_zero():
            self.num = num
            self.den = Poly.const(num.field, 1)
            return
        g = poly_gcd(num, den)
        num, den = num // g, den // g
        scale = num.field.inv(den.lead())
        self.num = num * scale
        self.den = den * scale

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def __eq__(self, other):
        return (
            isinstance(other, RationalFn)
            and other.num == self.num
            and other.den == self.den
        )

    def __repr__(self):
        return f"RationalFn({self.num!r} / {self.den!r})"

    def __mul__(self, other: "RationalFn") -> "RationalFn":
        return RationalFn(self.num * other.num, self.den * other.den)


def rational_square_test(r: RationalFn) -> bool:
    """True iff r is the square of a rational function over the closure.

    Works through multiplicity parity: r = u^2 in the closure exactly
    when every root of num*den has even multiplicity.  Leading
    coefficients are always squares over the closure, so only root
    parity matters; no factorization into irreducibles is needed.
    """
    if r.is_zero():
        raise ValueError("square test undefined for the zero function")
    return _even_multiplicities(r.num * r.den)


def _even_multiplicities(f: Poly) -> bool:
    """Every closure root of f has even multiplicity.

    Peel the squared radical off repeatedly: with f = prod q_i^(e_i),
    rad(f)^2 divides f iff all e_i >= 2, and the quotient drops every
    multiplicity by two, so the loop decides parity of all of them.
    """
    f = f.monic()
    while f.degree() > 0:
        if f.degree() % 2:
            return False
        rad = squarefree_part(f)
        q, rem = divmod(f, rad * rad)
        if not rem.is_zero():
            return False
        f = q.monic()
    return True
