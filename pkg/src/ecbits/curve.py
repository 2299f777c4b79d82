"""Short Weierstrass curves y^2 = x^3 + a*x + b over F_p, with point
arithmetic optionally in F_p^2, point counting through the quadratic
character weight, and desk-scale group-structure utilities.

The point at infinity is the neutral element; everywhere a sum needs an
x-coordinate for it, the formal convention x(O) = 0 applies.
"""

from __future__ import annotations

from dataclasses import dataclass

from .field import Fp2, PreconditionError, PrimeField, ResourceBudgetError


class CurvePoint:
    """Affine point with int (F_p) or Fp2 coordinates, or infinity."""

    __slots__ = ("x", "y")

    def __init__(self, x, y):
        self.x = x
        self.y = y

    @property
    def is_infinity(self) -> bool:
        return self.x is None

    def __eq__(self, other):
        if not isinstance(other, CurvePoint):
            return NotImplemented
        if self.is_infinity or other.is_infinity:
            return self.is_infinity and other.is_infinity
        return self.x == other.x and self.y == other.y

    def __hash__(self):
        if self.is_infinity:
            return hash(("O",))
        return hash((self.x, self.y))

    def __repr__(self):
        if self.is_infinity:
            return "O"
        return f"({self.x}, {self.y})"


INFINITY = CurvePoint(None, None)


def factorize(n: int) -> dict[int, int]:
    """Prime factorization by trial division (fine for n < 2**40)."""
    if n < 1:
        raise ValueError("factorize needs a positive integer")
    out: dict[int, int] = {}
    for q in (2, 3):
        while n % q == 0:
            out[q] = out.get(q, 0) + 1
            n //= q
    q = 5
    while q * q <= n:
        for step in (q, q + 2):
            while n % step == 0:
                out[step] = out.get(step, 0) + 1
                n //= step
        q += 6
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


class Curve:
    """y^2 = x^3 + a*x + b over F_p, p > 3 prime, 4a^3 + 27b^2 != 0."""

    __slots__ = ("field", "a", "b", "_order")

    def __init__(self, field: PrimeField, a: int, b: int):
        p = field.p
        if p <= 3:
            raise ValueError("curve fields need p > 3 (gcd(p, 6) = 1)")
        a %= p
        b %= p
        if (4 * a * a % p * a + 27 * b * b) % p == 0:
            raise ValueError(f"singular curve: 4a^3 + 27b^2 = 0 for a={a}, b={b}")
        self.field = field
        self.a = a
        self.b = b
        self._order: int | None = None

    @property
    def p(self) -> int:
        return self.field.p

    def __repr__(self):
        return f"Curve(p={self.p}, a={self.a}, b={self.b})"

    def __eq__(self, other):
        return (
            isinstance(other, Curve)
            and other.p == self.p
            and other.a == self.a
            and other.b == self.b
        )

    def __hash__(self):
        return hash((self.p, self.a, self.b))

    def rhs(self, x):
        """x^3 + a*x + b in the coordinate field of x."""
        if isinstance(x, Fp2):
            return x * x * x + self.a * x + self.b
        p = self.p
        return (x * x % p * x + self.a * x + self.b) % p

    def contains(self, P: CurvePoint) -> bool:
        if P.is_infinity:
            return True
        if isinstance(P.x, Fp2) or isinstance(P.y, Fp2):
            x = P.x if isinstance(P.x, Fp2) else Fp2(self.field, P.x)
            y = P.y if isinstance(P.y, Fp2) else Fp2(self.field, P.y)
            return y * y == self.rhs(x)
        return (P.y * P.y - self.rhs(P.x)) % self.p == 0

    def embed(self, P: CurvePoint) -> CurvePoint:
        """The same point with coordinates coerced into F_p^2."""
        if P.is_infinity:
            return INFINITY
        x = P.x if isinstance(P.x, Fp2) else Fp2(self.field, P.x)
        y = P.y if isinstance(P.y, Fp2) else Fp2(self.field, P.y)
        return CurvePoint(x, y)

    def neg(self, P: CurvePoint) -> CurvePoint:
        if P.is_infinity:
            return INFINITY
        if isinstance(P.y, Fp2):
            return CurvePoint(P.x, -P.y)
        return CurvePoint(P.x, (-P.y) % self.p)

    def add(self, P: CurvePoint, Q: CurvePoint) -> CurvePoint:
        """Group law with on-curve validation of both inputs."""
        for R in (P, Q):
            if not self.contains(R):
                raise ValueError(f"point {R} is not on {self}")
        return self._add(P, Q)

    def _add(self, P: CurvePoint, Q: CurvePoint) -> CurvePoint:
        if P.is_infinity:
            return Q
        if Q.is_infinity:
            return P
        if isinstance(P.x, Fp2) or isinstance(Q.x, Fp2):
            return self._add_ext(self.embed(P), self.embed(Q))
        p = self.p
        x1, y1, x2, y2 = P.x, P.y, Q.x, Q.y
        if x1 == x2:
            if (y1 + y2) % p == 0:
                return INFINITY
            s = (3 * x1 * x1 + self.a) * self.field.inv(2 * y1) % p
        else:
            s = (y2 - y1) * self.field.inv(x2 - x1) % p
        x3 = (s * s - x1 - x2) % p
        return CurvePoint(x3, (s * (x1 - x3) - y1) % p)

    def _add_ext(self, P: CurvePoint, Q: CurvePoint) -> CurvePoint:
        x1, y1, x2, y2 = P.x, P.y, Q.x, Q.y
        if x1 == x2:
            if (y1 + y2).is_zero():
                return INFINITY
            s = (3 * x1 * x1 + self.a) / (2 * y1)
        else:
            s = (y2 - y1) / (x2 - x1)
        x3 = s * s - x1 - x2
        return CurvePoint(x3, s * (x1 - x3) - y1)

    def mul(self, n: int, P: CurvePoint) -> CurvePoint:
        """Scalar multiple nP by double-and-add; mul(0, P) = O."""
        if not self.contains(P):
            raise ValueError(f"point {P} is not on {self}")
        if n < 0:
            n, P = -n, self.neg(P)
        result = INFINITY
        addend = P
        while n:
            if n & 1:
                result = self._add(result, addend)
            addend = self._add(addend, addend)
            n >>= 1
        return result

    def x_formal(self, P: CurvePoint):
        """x(P) with the formal convention x(O) = 0."""
        return 0 if P.is_infinity else P.x

    def order(self) -> int:
        """#E(F_p) = p + 1 + sum_u chi(u^3 + a*u + b).

        Each u occurs as an x-coordinate exactly 1 + chi(rhs(u)) times,
        so the complete character sum counts the affine points.
        """
        if self._order is None:
            p, a, b = self.p, self.a, self.b
            chi = self.field.chi_table()
            total = 0
            for u in range(p):
                total += chi[(u * u % p * u + a * u + b) % p]
            self._order = p + 1 + total
        return self._order

    def is_ordinary(self) -> bool:
        """For p >= 5 a curve over F_p is supersingular iff #E = p + 1."""
        return self.order() != self.p + 1

    def points_by_x(self, u: int) -> list[CurvePoint]:
        """The 0, 1, or 2 rational points with x-coordinate u, y ascending."""
        w = self.rhs(u)
        c = self.field.chi(w)
        if c == -1:
            return []
        if c == 0:
            return [CurvePoint(u, 0)]
        y = self.field.sqrt(w)
        return [CurvePoint(u, y), CurvePoint(u, self.p - y)]

    def enumerate_points(self, budget: int = 1_000_000) -> list[CurvePoint]:
        """All rational points, O first, then affine sorted by (x, y)."""
        if self.order() > budget:
            raise ResourceBudgetError(
                f"#E = {self.order()} exceeds enumeration budget {budget}"
            )
        pts = [INFINITY]
        for u in range(self.p):
            row = self.points_by_x(u)
            row.sort(key=lambda P: P.y)
            pts.extend(row)
        return pts

    def point_order(self, P: CurvePoint, _factors=None) -> int:
        n = self.order()
        factors = _factors if _factors is not None else factorize(n)
        o = n
        for q in factors:
            while o % q == 0 and self.mul(o // q, P).is_infinity:
                o //= q
        return o


@dataclass(frozen=True)
class GroupStructure:
    """E(F_p) as Z/d1 x Z/d2 with d1 | d2, witnessed by two generators."""

    order: int
    d1: int
    d2: int
    gen1: CurvePoint
    gen2: CurvePoint


def group_structure(curve: Curve, budget: int = 50_000) -> GroupStructure:
    """Invariant factors and generators, certified by regenerating the
    whole point set from the generators."""
    n = curve.order()
    if n > budget:
        raise ResourceBudgetError(f"#E = {n} exceeds structure budget {budget}")
    pts = curve.enumerate_points(budget)
    factors = factorize(n)
    orders = [curve.point_order(P, factors) for P in pts]
    d2 = max(orders)
    d1 = n // d2
    gen2 = pts[orders.index(d2)]
    if d1 == 1:
        gen1 = INFINITY
        if len(_span(curve, INFINITY, 1, gen2, d2)) != n:
            raise RuntimeError("cyclic generator failed to regenerate the group")
        return GroupStructure(n, 1, d2, gen1, gen2)
    for Q, o in zip(pts, orders):
        if o != d1:
            continue
        span = _span(curve, Q, d1, gen2, d2)
        if len(span) == n:
            return GroupStructure(n, d1, d2, Q, gen2)
    raise RuntimeError("no independent generator pair found")  # unreachable


def _span(curve: Curve, G1: CurvePoint, d1: int, G2: CurvePoint, d2: int) -> set:
    row = []
    R = INFINITY
    for _ in range(d2):
        row.append(R)
        R = curve._add(R, G2)
    span = set(row)
    shifted = row
    for _ in range(d1 - 1):
        shifted = [curve._add(P, G1) for P in shifted]
        span.update(shifted)
    return span


def subgroup_of_order(curve: Curve, t: int, budget: int = 1_000_000) -> list[CurvePoint]:
    """The unique order-t subgroup, as the kernel of multiplication by t.

    Accepts t only when that kernel has exactly t elements; ordering is
    O first, then affine points by (x, y).
    """
    if t < 1:
        raise ValueError("subgroup order must be positive")
    n = curve.order()
    if n % t:
        raise ValueError(f"t = {t} does not divide #E = {n}")
    if t == 1:
        return [INFINITY]
    H = [P for P in curve.enumerate_points(budget) if curve.mul(t, P).is_infinity]
    if len(H) != t:
        raise PreconditionError(
            f"no unique subgroup of order {t}: kernel of [t] has {len(H)} points"
        )
    return H


def rational_division_points(
    curve: Curve, n: int, Q: CurvePoint, ext: int = 1, budget: int = 100_000
) -> list[CurvePoint]:
    """All P with nP = Q and coordinates in F_p (ext=1) or F_p^2 (ext=2).

    The n-division points of Q form a coset of the n-torsion.  Base-field
    members come from the point enumeration; extension members from a
    scan of candidate x-coordinates, lifted through the curve equation
    and tested against nP = Q directly.
    """
    if n < 1:
        raise ValueError("n must be positive")
    if ext not in (1, 2):
        raise ValueError("ext must be 1 or 2")
    p = curve.p
    if p**ext > budget:
        raise ResourceBudgetError(f"p^ext = {p**ext} exceeds budget {budget}")
    if not curve.contains(Q):
        raise ValueError(f"point {Q} is not on {curve}")

    if ext == 1:
        return [P for P in curve.enumerate_points(budget) if curve.mul(n, P) == Q]

    F = curve.field
    target = curve.embed(Q)
    found = []
    if target.is_infinity:
        found.append(INFINITY)
    for re in range(p):
        for im in range(p):
            x = Fp2(F, re, im)
            y = curve.rhs(x).sqrt()
            if y is None:
                continue
            cands = [CurvePoint(x, y)]
            if not y.is_zero():
                cands.append(CurvePoint(x, -y))
            for P in cands:
                if curve.mul(n, P) == target:
                    found.append(P)
    return found


def sqrt_in_base_or_ext(field: PrimeField, u: int) -> Fp2:
    """A square root of u, in F_p when chi(u) >= 0 and in F_p^2 otherwise."""
    return Fp2(field, u).sqrt()
