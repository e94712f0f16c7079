"""
Parking functions and their decomposition along faces of the associahedron.

A sequence of length n over 1..n is a parking function when its sorted form
x_1 <= ... <= x_n satisfies x_k <= k. Every parking function of length
n >= 1 splits uniquely into a leading value a, a shuffle and two shorter
parking functions; compose_pf and decompose_pf are mutually inverse.
"""
import logging
from dataclasses import dataclass
from fractions import Fraction
from math import comb
from functools import lru_cache
from typing import Sequence, Union

import config
from models import CapacityError, DomainError
from shuffles import Shuffle, interleave

logger = logging.getLogger(__name__)

ParkingFunction = tuple[int, ...]


def is_parking(seq: Sequence[int]) -> bool:
    ordered = sorted(seq)
    return all(isinstance(value, int) and 1 <= value <= k for k, value in enumerate(ordered, start=1))


def format_sequence(seq: Sequence[int]) -> str:
    return "(" + ",".join(str(value) for value in seq) + ")"


@dataclass(frozen=True)
class PiDecomposition:
    """The pieces of a parking function: (a; theta; f, g)."""
    a: int
    theta: Shuffle
    f: ParkingFunction
    g: ParkingFunction

    def __post_init__(self):
        object.__setattr__(self, "f", tuple(self.f))
        object.__setattr__(self, "g", tuple(self.g))
        if len(self.f) != self.theta.p or len(self.g) != self.theta.q:
            raise DomainError(
                f"shuffle {self.theta.word!r} does not match |f|={len(self.f)} and |g|={len(self.g)}"
            )
        if not 1 <= self.a <= self.p + 1:
            raise DomainError(f"leading value {self.a} outside 1..{self.p + 1}")
        if not is_parking(self.f):
            raise DomainError(f"f = {self.f} is not a parking function")
        if not is_parking(self.g):
            raise DomainError(f"g = {self.g} is not a parking function")

    @property
    def p(self) -> int:
        return len(self.f)

    @property
    def q(self) -> int:
        return len(self.g)

    @property
    def n(self) -> int:
        return self.p + self.q + 1

    def to_dict(self) -> dict:
        return {
            "a": self.a,
            "p": self.p,
            "q": self.q,
            "f": list(self.f),
            "g": list(self.g),
            "theta": self.theta.word,
        }

    def __str__(self) -> str:
        return (
            f"a={self.a} p={self.p} q={self.q} "
            f"f={format_sequence(self.f)} g={format_sequence(self.g)} θ={self.theta.word}"
        )


def compose_pf(d: PiDecomposition) -> ParkingFunction:
    """a followed by f shuffled with g shifted up by p+1."""
    shifted = tuple(d.p + 1 + value for value in d.g)
    return (d.a,) + interleave(d.theta, d.f, shifted)


def decompose_pf(pf: Sequence[int]) -> PiDecomposition:
    """Inverse of compose_pf."""
    pf = tuple(pf)
    if not pf:
        raise DomainError("the empty parking function has no decomposition")
    if not is_parking(pf):
        raise DomainError(f"not a parking function: {format_sequence(pf)}")

    n = len(pf)
    a = pf[0]
    ordered = sorted(pf)
    # 1-based: j is the first place a shows up in the sorted sequence and
    # k the first later place where the sequence touches the diagonal
    j = ordered.index(a) + 1
    k = next((i for i in range(j + 1, n + 1) if ordered[i - 1] == i), n + 1)
    p = k - 2

    rest = pf[1:]
    theta = Shuffle("".join("U" if value <= p + 1 else "V" for value in rest))
    f = tuple(value for value in rest if value <= p + 1)
    g = tuple(value - (p + 1) for value in rest if value > p + 1)
    return PiDecomposition(a=a, theta=theta, f=f, g=g)


# =============================================================================
# ENUMERATION AND COUNTS
# =============================================================================

def enumerate_parking(n: int) -> list[ParkingFunction]:
    """All parking functions of length n in lexicographic order."""
    if n < 0:
        raise DomainError(f"length must be non-negative, got {n}")
    if n > config.MAX_PARKING_LENGTH:
        raise CapacityError(f"parking functions of length {n} are above the bound {config.MAX_PARKING_LENGTH}")

    results: list[ParkingFunction] = []
    prefix: list[int] = []
    counts = [0] * (n + 1)

    def extend(remaining: int) -> None:
        if remaining == 0:
            results.append(tuple(prefix))
            return
        for value in range(1, n + 1):
            counts[value] += 1
            feasible = _can_complete(counts, remaining - 1)
            if feasible:
                prefix.append(value)
                extend(remaining - 1)
                prefix.pop()
            counts[value] -= 1
            if not feasible:
                # larger values only make the prefix worse
                break

    extend(n)
    logger.debug("enumerated %d parking functions of length %d", len(results), n)
    return results


def _can_complete(counts: list[int], remaining: int) -> bool:
    placed = 0
    for k in range(1, len(counts)):
        placed += counts[k]
        if placed + remaining < k:
            return False
    return True


def parking_count(n: int) -> int:
    """(n+1)^(n-1)."""
    if n < 0:
        raise DomainError(f"length must be non-negative, got {n}")
    if n == 0:
        return 1
    return (n + 1) ** (n - 1)


def block_size(p: int, q: int) -> int:
    """Parking functions sharing one (a, p, q): C(p+q, p) * PF_p * PF_q."""
    return comb(p + q, p) * parking_count(p) * parking_count(q)


@lru_cache(maxsize=None)
def decomposition_count(n: int) -> int:
    """Number of decompositions of length n, by recursion on the pieces."""
    if n < 0:
        raise DomainError(f"length must be non-negative, got {n}")
    if n == 0:
        return 1
    return sum(
        (p + 1) * comb(n - 1, p) * decomposition_count(p) * decomposition_count(n - 1 - p)
        for p in range(n)
    )


def abel_check(n: int) -> tuple[int, int]:
    """(count by recursion, (n+1)^(n-1)); the two agree for every n."""
    return decomposition_count(n), parking_count(n)


def _power(base: int, exponent: int) -> Fraction:
    if exponent >= 0:
        return Fraction(base ** exponent)
    if base == 0:
        raise DomainError("zero raised to a negative power")
    return Fraction(1, base ** -exponent)


def abel_middle_sum(n: int) -> int:
    """sum_p C(n-1,p) (p+1)^p (n-p)^(n-p-2), which equals (n+1)^(n-1)."""
    if n < 1:
        raise DomainError(f"n must be at least 1, got {n}")
    total = sum(
        (comb(n - 1, p) * _power(p + 1, p) * _power(n - p, n - p - 2) for p in range(n)),
        Fraction(0),
    )
    if total.denominator != 1:
        raise DomainError(f"middle sum for n={n} is not an integer: {total}")
    return int(total)


def abel_formula(x: Union[int, Fraction], y: Union[int, Fraction], n: int) -> tuple[Fraction, Fraction]:
    """
    Both sides of Abel's binomial identity
        (x + y + n)^n / x = sum_k C(n,k) (x+k)^(k-1) (y+n-k)^(n-k)
    evaluated exactly.
    """
    if n < 0:
        raise DomainError(f"n must be non-negative, got {n}")
    x = Fraction(x)
    y = Fraction(y)
    if x == 0:
        raise DomainError("x must be nonzero")
    lhs = (x + y + n) ** n / x
    rhs = sum(
        (comb(n, k) * (x + k) ** (k - 1) * (y + n - k) ** (n - k) for k in range(n + 1)),
        Fraction(0),
    )
    return lhs, rhs


# =============================================================================
# CLASSIFICATION TABLE
# =============================================================================

def classify_parking(n: int) -> dict[tuple[int, int, int], list[ParkingFunction]]:
    """Parking functions of length n grouped by (a, p, q); a ascending, then p descending."""
    if n < 1:
        raise DomainError(f"length must be at least 1, got {n}")
    groups: dict[tuple[int, int, int], list[ParkingFunction]] = {}
    for pf in enumerate_parking(n):
        d = decompose_pf(pf)
        groups.setdefault((d.a, d.p, d.q), []).append(pf)
    return dict(sorted(groups.items(), key=lambda item: (item[0][0], -item[0][1])))


def _table_row(n_text: str, a: object, p: object, q: object, members: str) -> str:
    return f"{n_text:<3}{a!s:<3}{p!s:<3}{q!s:<3}{members}"


def format_parking_table(n: int, all_lengths: bool = False) -> str:
    """Plain-text table of classify_parking, one row per (a, p, q)."""
    lengths = range(1, n + 1) if all_lengths else [n]
    lines = [_table_row("n", "a", "p", "q", "parking functions")]
    for length in lengths:
        for row, ((a, p, q), members) in enumerate(classify_parking(length).items()):
            n_text = str(length) if row == 0 else ""
            lines.append(_table_row(n_text, a, p, q, " ".join(format_sequence(m) for m in members)))
    return "\n".join(lines) + "\n"
