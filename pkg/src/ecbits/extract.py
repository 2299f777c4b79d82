"""Least-significant-bit extraction from x-coordinates of point
multiples: the pattern-match counting function, its exact deviation
statistic over a subgroup, bitstream generation, and a chi-square
uniformity companion.

Bits are always least significant ones: for primes just below a power
of two the most significant bits of random residues are biased, while
the low bits are exactly balanced up to O(1/p).
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction

from .charsum import _t_sum, x_multiples
from .curve import Curve, CurvePoint
from .field import PreconditionError, incomplete_geometric_sum


def lsb_string(x: int, ell: int, p: int) -> str:
    """The ell least significant bits of the canonical representative of
    x, most significant bit of the window first; requires 2^ell < p."""
    if ell < 1:
        raise ValueError("ell must be positive")
    if 1 << ell >= p:
        raise ValueError(f"2^ell = {1 << ell} must be smaller than p = {p}")
    return format(x % p & ((1 << ell) - 1), f"0{ell}b")


@dataclass(frozen=True)
class BitWindow:
    """A pattern query: k windows of ell low bits over index range [1, N].

    sigma holds the k target bit strings; sigma_bar their integer
    values.  L_j = ceil((p - sigma_bar_j) / 2^ell) - 1 counts the
    admissible high parts y in x = 2^ell y + sigma_bar_j.
    """

    k: int
    ell: int
    N: int
    sigma: tuple[str, ...]

    def __post_init__(self):
        if self.k < 1 or self.ell < 1 or self.N < 1:
            raise ValueError("k, ell, N must be positive")
        if len(self.sigma) != self.k:
            raise ValueError(f"need {self.k} bit strings, got {len(self.sigma)}")
        for s in self.sigma:
            if len(s) != self.ell or set(s) - {"0", "1"}:
                raise ValueError(f"bad {self.ell}-bit string {s!r}")

    @property
    def sigma_bar(self) -> tuple[int, ...]:
        return tuple(int(s, 2) for s in self.sigma)

    def L_values(self, p: int) -> tuple[int, ...]:
        e = 1 << self.ell
        if e >= p:
            raise ValueError(f"2^ell = {e} must be smaller than p = {p}")
        return tuple(-(-(p - sb) // e) - 1 for sb in self.sigma_bar)

    def reciprocal_shift(self, field) -> int:
        """The field inverse of 2^ell, so that lam*(x - sigma_bar) = y."""
        return field.inv(1 << self.ell)


def count_A(curve: Curve, R: CurvePoint, spec: BitWindow) -> int:
    """How many index tuples (n_1..n_k) in [1,N]^k have, for every j, the
    ell low bits of x((n_1...n_j) R) equal to sigma_j."""
    p = curve.p
    if 1 << spec.ell >= p:
        raise ValueError("2^ell must be smaller than p")
    mask = (1 << spec.ell) - 1
    targets = spec.sigma_bar
    k, N = spec.k, spec.N
    xs = x_multiples(curve, R, N**k)
    count = 0
    for tup in itertools.product(range(1, N + 1), repeat=k):
        prod = 1
        for j in range(k):
            prod *= tup[j]
            if xs[prod - 1] & mask != targets[j]:
                break
        else:
            count += 1
    return count


def fourier_count_A(curve: Curve, R: CurvePoint, spec: BitWindow) -> complex:
    """The same count through the additive-character expansion:

      A = p^-k sum_{c in F_p^k} T_k(lam*c, R; N) psi(-lam sum c_j sigma_bar_j)
            prod_j sum_{y=0..L_j} psi(-c_j y)

    Evaluated by direct summation over all vectors c, including c = 0.
    """
    F = curve.field
    p = curve.p
    lam = spec.reciprocal_shift(F)
    sbar = spec.sigma_bar
    L = spec.L_values(p)
    geo = [
        [incomplete_geometric_sum(F, cj, L[j]) for cj in range(p)]
        for j in range(spec.k)
    ]
    total = 0j
    for c in itertools.product(range(p), repeat=spec.k):
        term = _t_sum(curve, tuple(lam * cj % p for cj in c), R, spec.N)
        term *= F.psi(-lam * sum(cj * sbar[j] for j, cj in enumerate(c)))
        for j, cj in enumerate(c):
            term *= geo[j][cj]
        total += term
    return total / p**spec.k


@dataclass
class DeviationReport:
    """Exact worst-pattern deviations of the bit counts over a subgroup.

    Counts are integers and the reference value N^k / 2^(k*ell) is a
    dyadic rational, so every deviation is an exact Fraction.  The
    bound value is the proved shape evaluated at a configured constant
    (the paper only asserts such a constant exists).
    """

    k: int
    ell: int
    N: int
    p: int
    t: int
    expected: Fraction
    per_point: list[tuple[str, Fraction]]
    total: Fraction
    total_excluding_infinity: Fraction
    bound_constant: float
    bound_value: float

    @property
    def ratio(self) -> float:
        return float(self.total) / self.bound_value


def deviation_bound(k: int, N: int, p: int, t: int, C: float) -> float:
    """(N^2k p^(1/4) t^(1/2) + N^(k-1/2) t) * (C log p)^k."""
    return (N ** (2 * k) * p**0.25 * t**0.5 + N**k / math.sqrt(N) * t) * (
        C * math.log(p)
    ) ** k


def delta(
    curve: Curve,
    H: list[CurvePoint],
    k: int,
    ell: int,
    N: int,
    bound_constant: float = 1.0,
) -> DeviationReport:
    """Delta_{k,ell}(H, N): the sum over R in H of the worst deviation of
    the pattern count from N^k / 2^(k*ell), taken over all patterns.

    H is treated as a set (order never matters); the sum includes the
    point at infinity, whose degenerate all-zero orbit is also reported
    separately via total_excluding_infinity.
    """
    p = curve.p
    t = len(set(H))
    if p <= k:
        raise PreconditionError(f"need p > k, got p = {p}, k = {k}")
    for q in range(2, N + 1):
        if t % q == 0 and all(q % r for r in range(2, q)):
            raise PreconditionError(
                f"gcd(N!, t) != 1: prime {q} <= N = {N} divides t = {t}"
            )
    points = sorted(
        set(H), key=lambda P: (0,) if P.is_infinity else (1, P.x, P.y)
    )
    expected = Fraction(N**k, 1 << (k * ell))
    mask = (1 << ell) - 1
    per_point = []
    total = Fraction(0)
    total_wo_o = Fraction(0)
    for R in points:
        xs = x_multiples(curve, R, N**k)
        counts: dict[tuple[int, ...], int] = {}
        for tup in itertools.product(range(1, N + 1), repeat=k):
            prod = 1
            key = []
            for j in range(k):
                prod *= tup[j]
                key.append(xs[prod - 1] & mask)
            key = tuple(key)
            counts[key] = counts.get(key, 0) + 1
        worst = max(
            abs(counts.get(sig, 0) - expected)
            for sig in itertools.product(range(1 << ell), repeat=k)
        )
        per_point.append((repr(R), worst))
        total += worst
        if not R.is_infinity:
            total_wo_o += worst
    return DeviationReport(
        k=k,
        ell=ell,
        N=N,
        p=p,
        t=t,
        expected=expected,
        per_point=per_point,
        total=total,
        total_excluding_infinity=total_wo_o,
        bound_constant=bound_constant,
        bound_value=deviation_bound(k, N, p, t, bound_constant),
    )


def bitstream(curve: Curve, R: CurvePoint, k: int, ell: int, N: int) -> str:
    """Concatenation, in lexicographic (n_1..n_k) order, of the k ell-bit
    low windows of each coordinate vector; length k*ell*N^k."""
    if R.is_infinity:
        raise ValueError("the infinity orbit is degenerate; pick R != O")
    p = curve.p
    if 1 << ell >= p:
        raise ValueError("2^ell must be smaller than p")
    xs = x_multiples(curve, R, N**k)
    out = []
    for tup in itertools.product(range(1, N + 1), repeat=k):
        prod = 1
        for j in range(k):
            prod *= tup[j]
            out.append(format(xs[prod - 1] & ((1 << ell) - 1), f"0{ell}b"))
    return "".join(out)


def pack_bits(stream: str) -> bytes:
    """Pack a bit string into bytes, little-endian within each byte: bit
    i of the stream lands in byte i // 8 at bit position i % 8."""
    out = bytearray((len(stream) + 7) // 8)
    for i, ch in enumerate(stream):
        if ch == "1":
            out[i // 8] |= 1 << (i % 8)
        elif ch != "0":
            raise ValueError(f"bad bit {ch!r}")
    return bytes(out)


@dataclass
class ChiSquareReport:
    statistic: float
    dof: int
    blocks: int
    counts: list[int]


def chi_square_uniformity(stream: str, block: int) -> ChiSquareReport:
    """Chi-square statistic of the histogram of consecutive block-bit
    values against the uniform law, with 2^block - 1 degrees of freedom.

    Block values read the bits most significant first.
    """
    if block < 1:
        raise ValueError("block must be positive")
    if not stream or len(stream) % block:
        raise ValueError(
            f"stream length {len(stream)} is not a positive multiple of {block}"
        )
    nvals = 1 << block
    counts = [0] * nvals
    for i in range(0, len(stream), block):
        counts[int(stream[i : i + block], 2)] += 1
    nblocks = len(stream) // block
    exp = nblocks / nvals
    stat = sum((obs - exp) ** 2 for obs in counts) / exp
    return ChiSquareReport(statistic=stat, dof=nvals - 1, blocks=nblocks, counts=counts)
