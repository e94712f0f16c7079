"""(p,q)-shuffles written as words in U and V."""
import logging
from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations
from typing import Sequence, TypeVar

from models import DomainError

logger = logging.getLogger(__name__)

T = TypeVar("T")

UP = "U"
ACROSS = "V"


@dataclass(frozen=True)
class Shuffle:
    """
    A word with p letters U and q letters V.

    Read as a lattice path from (0,0) to (p,q): U moves the first
    coordinate, V the second.
    """
    word: str

    def __post_init__(self):
        if any(letter not in (UP, ACROSS) for letter in self.word):
            raise DomainError(f"shuffle words use only U and V, got {self.word!r}")

    @property
    def p(self) -> int:
        return self.word.count(UP)

    @property
    def q(self) -> int:
        return self.word.count(ACROSS)

    @property
    def up_positions(self) -> tuple[int, ...]:
        return tuple(i for i, letter in enumerate(self.word) if letter == UP)

    @classmethod
    def from_positions(cls, p: int, q: int, up_positions: Sequence[int]) -> "Shuffle":
        chosen = set(up_positions)
        if len(chosen) != p or any(not 0 <= i < p + q for i in chosen):
            raise DomainError(f"{list(up_positions)} is not a set of {p} positions in 0..{p + q - 1}")
        return cls("".join(UP if i in chosen else ACROSS for i in range(p + q)))

    @classmethod
    def from_permutation(cls, perm: Sequence[int], p: int) -> "Shuffle":
        """Inverse of to_permutation: values 1..p become U, the rest V."""
        values = list(perm)
        if sorted(values) != list(range(1, len(values) + 1)):
            raise DomainError(f"{values} is not a permutation")
        firsts = [v for v in values if v <= p]
        seconds = [v for v in values if v > p]
        if firsts != sorted(firsts) or seconds != sorted(seconds):
            raise DomainError(f"{values} is not a ({p},{len(values) - p})-shuffle")
        return cls("".join(UP if v <= p else ACROSS for v in values))

    def to_permutation(self) -> tuple[int, ...]:
        """The shuffle as a permutation of 1..p+q: UUV -> 123, UVU -> 132, VUU -> 312."""
        return interleave(self, range(1, self.p + 1), range(self.p + 1, self.p + self.q + 1))

    def __len__(self) -> int:
        return len(self.word)

    def __str__(self) -> str:
        return self.word


@lru_cache(maxsize=None)
def _shuffles(p: int, q: int) -> tuple[Shuffle, ...]:
    # combinations() of the U positions comes out in the same order as the
    # words sorted with U < V
    return tuple(Shuffle.from_positions(p, q, chosen) for chosen in combinations(range(p + q), p))


def enumerate_shuffles(p: int, q: int) -> list[Shuffle]:
    """All C(p+q, p) shuffles, lexicographic with U < V."""
    if p < 0 or q < 0:
        raise DomainError(f"shuffle sizes must be non-negative, got p={p} q={q}")
    return list(_shuffles(p, q))


def interleave(theta: Shuffle, first: Sequence[T], second: Sequence[T]) -> tuple[T, ...]:
    """Merge two sequences, taking from first on U and from second on V."""
    first = list(first)
    second = list(second)
    if len(first) != theta.p or len(second) != theta.q:
        raise DomainError(
            f"shuffle {theta.word!r} needs sequences of lengths {theta.p} and {theta.q}, "
            f"got {len(first)} and {len(second)}"
        )
    result = []
    i = j = 0
    for letter in theta.word:
        if letter == UP:
            result.append(first[i])
            i += 1
        else:
            result.append(second[j])
            j += 1
    return tuple(result)


def staircase(theta: Shuffle) -> list[tuple[int, int]]:
    """Lattice points visited by the path: (0,0) first, (p,q) last."""
    i = j = 0
    points = [(0, 0)]
    for letter in theta.word:
        if letter == UP:
            i += 1
        else:
            j += 1
        points.append((i, j))
    return points
