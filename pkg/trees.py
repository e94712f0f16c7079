"""
Planar binary rooted trees, their Loday coordinates and the Tamari order.

Trees are written as bracket strings: a leaf is "." and an internal node is
"(" + left + right + ")". Y_n is the set of trees with n internal vertices.
"""
import logging
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Optional

import config
from models import CapacityError, Coord, DomainError

logger = logging.getLogger(__name__)

LEAF_SYMBOL = "."


@dataclass(frozen=True, eq=False)
class Tree:
    """A leaf (no children) or an internal node with both children."""
    left: Optional["Tree"] = None
    right: Optional["Tree"] = None
    size: int = field(init=False, repr=False)
    code: str = field(init=False, repr=False)

    def __post_init__(self):
        if (self.left is None) != (self.right is None):
            raise DomainError("an internal node needs both a left and a right subtree")
        if self.left is None:
            object.__setattr__(self, "size", 0)
            object.__setattr__(self, "code", LEAF_SYMBOL)
        else:
            object.__setattr__(self, "size", self.left.size + self.right.size + 1)
            object.__setattr__(self, "code", f"({self.left.code}{self.right.code})")

    @property
    def is_leaf(self) -> bool:
        return self.left is None

    @property
    def leaf_count(self) -> int:
        return self.size + 1

    def __eq__(self, other) -> bool:
        if not isinstance(other, Tree):
            return NotImplemented
        return self.code == other.code

    def __hash__(self) -> int:
        return hash(self.code)

    def serialize(self) -> str:
        return self.code

    def __str__(self) -> str:
        return self.code

    def __repr__(self) -> str:
        return f"Tree({self.code!r})"


LEAF = Tree()


def node(left: Tree, right: Tree) -> Tree:
    return Tree(left, right)


# =============================================================================
# PARSING
# =============================================================================

def parse_tree(text: str) -> Tree:
    """Parse a bracket string such as "(.(..))"."""
    text = text.strip()
    tree, position = _parse_at(text, 0)
    if position != len(text):
        raise DomainError(f"unexpected {text[position]!r} at position {position} in {text!r}")
    return tree


def _parse_at(text: str, position: int) -> tuple[Tree, int]:
    if position >= len(text):
        raise DomainError(f"tree string {text!r} ends too early")
    symbol = text[position]
    if symbol == LEAF_SYMBOL:
        return LEAF, position + 1
    if symbol != "(":
        raise DomainError(f"unexpected {symbol!r} at position {position} in {text!r}")
    left, position = _parse_at(text, position + 1)
    right, position = _parse_at(text, position)
    if position >= len(text) or text[position] != ")":
        raise DomainError(f"missing ')' at position {position} in {text!r}")
    return Tree(left, right), position + 1


# =============================================================================
# ENUMERATION
# =============================================================================

def catalan(n: int) -> int:
    """|Y_n|, by the convolution recurrence."""
    if n < 0:
        raise DomainError(f"catalan needs n >= 0, got {n}")
    values = [1]
    for m in range(1, n + 1):
        values.append(sum(values[k] * values[m - 1 - k] for k in range(m)))
    return values[n]


@lru_cache(maxsize=None)
def _trees_of_size(n: int) -> tuple[Tree, ...]:
    if n == 0:
        return (LEAF,)
    result = []
    for left_size in range(n):
        for left in _trees_of_size(left_size):
            for right in _trees_of_size(n - 1 - left_size):
                result.append(Tree(left, right))
    return tuple(result)


@lru_cache(maxsize=None)
def _sorted_trees(n: int) -> tuple[Tree, ...]:
    trees = tuple(sorted(_trees_of_size(n), key=lambda t: t.code))
    logger.debug("enumerated %d trees in Y_%d", len(trees), n)
    return trees


def enumerate_trees(n: int) -> list[Tree]:
    """All of Y_n in canonical order (lexicographic on the bracket string)."""
    if n < 0:
        raise DomainError(f"tree size must be non-negative, got {n}")
    if n > config.MAX_TREE_VERTICES:
        raise CapacityError(f"Y_{n} is above the enumeration bound {config.MAX_TREE_VERTICES}")
    return list(_sorted_trees(n))


def right_comb(n: int) -> Tree:
    """(.(.(...))) with n internal vertices."""
    tree = LEAF
    for _ in range(n):
        tree = Tree(LEAF, tree)
    return tree


def left_comb(n: int) -> Tree:
    tree = LEAF
    for _ in range(n):
        tree = Tree(tree, LEAF)
    return tree


# =============================================================================
# LODAY COORDINATES
# =============================================================================

@lru_cache(maxsize=None)
def loday_point(t: Tree) -> Coord:
    """
    Integer point of t: walking the internal vertices in order, each one
    contributes (leaves under its left child) * (leaves under its right child).
    """
    if t.is_leaf:
        raise DomainError("the bare leaf has no Loday coordinates")
    coords: list[int] = []
    _collect_products(t, coords)
    return tuple(coords)


def _collect_products(t: Tree, out: list[int]) -> None:
    if t.is_leaf:
        return
    _collect_products(t.left, out)
    out.append(t.left.leaf_count * t.right.leaf_count)
    _collect_products(t.right, out)


def tamari_sort_key(t: Tree) -> Coord:
    """Linear extension of the Tamari order: covers strictly raise the Loday point."""
    return () if t.is_leaf else loday_point(t)


# =============================================================================
# TAMARI ORDER
# =============================================================================

def _rotate(t: Tree) -> Tree:
    # ((A B) C) -> (A (B C))
    return Tree(t.left.left, Tree(t.left.right, t.right))


def tamari_covers(t: Tree) -> list[Tree]:
    """Upper covers of t, one per right rotation, in pre-order of the rotated node."""
    if t.is_leaf:
        return []
    covers = []
    if not t.left.is_leaf:
        covers.append(_rotate(t))
    covers.extend(Tree(left, t.right) for left in tamari_covers(t.left))
    covers.extend(Tree(t.left, right) for right in tamari_covers(t.right))
    return covers


@dataclass
class TamariPoset:
    """Y_n with its cover graph and, per element, a bitset of everything above it."""
    n: int
    trees: list[Tree]
    index: dict[str, int]
    covers: list[list[int]]
    reach: list[int]

    def leq(self, t: Tree, u: Tree) -> bool:
        i = self.index[t.code]
        j = self.index[u.code]
        return bool(self.reach[i] >> j & 1)

    def comparable(self, t: Tree, u: Tree) -> bool:
        return self.leq(t, u) or self.leq(u, t)

    @property
    def cover_count(self) -> int:
        return sum(len(targets) for targets in self.covers)

    @property
    def minimum(self) -> Tree:
        return left_comb(self.n)

    @property
    def maximum(self) -> Tree:
        return right_comb(self.n)

    def incomparable_pairs(self) -> list[tuple[Tree, Tree]]:
        pairs = []
        for i, t in enumerate(self.trees):
            for u in self.trees[i + 1:]:
                if not self.comparable(t, u):
                    pairs.append((t, u))
        return pairs


@lru_cache(maxsize=None)
def tamari_poset(n: int) -> TamariPoset:
    if n > config.MAX_TAMARI_CLOSURE:
        raise CapacityError(f"Tamari closure of Y_{n} is above the bound {config.MAX_TAMARI_CLOSURE}")
    trees = enumerate_trees(n)
    index = {t.code: i for i, t in enumerate(trees)}
    covers = [[index[c.code] for c in tamari_covers(t)] for t in trees]

    # Every cover raises the sort key, so walking down the key order sees
    # each cover target before its source.
    order = sorted(range(len(trees)), key=lambda i: tamari_sort_key(trees[i]))
    reach = [0] * len(trees)
    for i in reversed(order):
        mask = 1 << i
        for j in covers[i]:
            mask |= reach[j]
        reach[i] = mask

    logger.debug("Tamari closure of Y_%d: %d elements", n, len(trees))
    return TamariPoset(n=n, trees=trees, index=index, covers=covers, reach=reach)


def tamari_leq(t: Tree, u: Tree) -> bool:
    """Reflexive-transitive closure of tamari_covers."""
    if t.size != u.size:
        raise DomainError(f"cannot compare trees of sizes {t.size} and {u.size}")
    if t.size <= config.MAX_TAMARI_CLOSURE:
        return tamari_poset(t.size).leq(t, u)

    target_key = tamari_sort_key(u)
    frontier = [t]
    seen = {t.code}
    while frontier:
        current = frontier.pop()
        if current == u:
            return True
        for cover in tamari_covers(current):
            if cover.code not in seen and tamari_sort_key(cover) <= target_key:
                seen.add(cover.code)
                frontier.append(cover)
    return False


# =============================================================================
# GRAFTING
# =============================================================================

def graft_at_leaf(s: Tree, leaf_index: int, t: Tree) -> Tree:
    """Replace leaf number leaf_index of s (0 = leftmost) by t."""
    if not 0 <= leaf_index <= s.size:
        raise DomainError(f"leaf index {leaf_index} outside 0..{s.size}")
    return _graft(s, leaf_index, t)


def _graft(s: Tree, leaf_index: int, t: Tree) -> Tree:
    if s.is_leaf:
        return t
    left_leaves = s.left.leaf_count
    if leaf_index < left_leaves:
        return Tree(_graft(s.left, leaf_index, t), s.right)
    return Tree(s.left, _graft(s.right, leaf_index - left_leaves, t))


def graft(s: Tree, a: int, t: Tree) -> Tree:
    """Graft t onto the leaf of s numbered a from the right (a = 0 is the rightmost)."""
    if not 0 <= a <= s.size:
        raise DomainError(f"graft position {a} outside 0..{s.size}")
    return _graft(s, s.size - a, t)
