"""Data models for polytri."""
import logging
from dataclasses import dataclass, field
from typing import Any, Optional, Union
from enum import Enum

logger = logging.getLogger(__name__)

Coord = tuple[int, ...]
IntMatrix = list[list[int]]


class PolytopeKind(str, Enum):
    ASSOCIAHEDRON = "assoc"
    PERMUTOHEDRON = "perm"


class CheckStatus(str, Enum):
    PASS = "pass"
    FAIL = "fail"
    SKIPPED = "skipped"


# =============================================================================
# ERRORS
# =============================================================================

class PolytriError(Exception):
    """Base class for every error raised by polytri."""


class DomainError(PolytriError, ValueError):
    """Input outside the domain of an operation (bad tree, bad shuffle, ...)."""


class CapacityError(DomainError):
    """Request above one of the capacity bounds in config."""


class ConstructionError(PolytriError):
    """A simplex came out of the recursion in the wrong order."""


# =============================================================================
# FACES AND RECIPES
# =============================================================================

@dataclass(frozen=True)
class FaceGamma:
    """Face of K^n isomorphic to K^p x K^q, a is the graft position."""
    a: int
    p: int
    q: int

    def __post_init__(self):
        if self.p < 0 or self.q < 0:
            raise DomainError(f"face dimensions must be non-negative, got p={self.p} q={self.q}")
        if not 0 <= self.a <= self.p + 1:
            raise DomainError(f"graft position {self.a} outside 0..{self.p + 1}")

    @property
    def n(self) -> int:
        """Dimension of the ambient associahedron."""
        return self.p + self.q + 1

    @property
    def is_cone_basis(self) -> bool:
        """The face misses the apex, so the cone over it is a top-dimensional piece."""
        return self.a >= 1

    def __str__(self) -> str:
        return f"γ({self.a};{self.p},{self.q})"


@dataclass(frozen=True)
class FacetSubset:
    """Facet of P^n indexed by a proper nonempty subset of positions 1..n+1."""
    n: int
    positions: tuple[int, ...]

    def __post_init__(self):
        positions = tuple(self.positions)
        object.__setattr__(self, "positions", positions)
        if not positions or len(positions) > self.n:
            raise DomainError(f"facet subset of P^{self.n} must have 1..{self.n} elements, got {positions}")
        if list(positions) != sorted(set(positions)):
            raise DomainError(f"facet positions must be strictly increasing, got {positions}")
        if positions[0] < 1 or positions[-1] > self.n + 1:
            raise DomainError(f"facet positions must lie in 1..{self.n + 1}, got {positions}")

    @property
    def p(self) -> int:
        return len(self.positions) - 1

    @property
    def q(self) -> int:
        return self.n - len(self.positions)

    @property
    def complement(self) -> tuple[int, ...]:
        chosen = set(self.positions)
        return tuple(i for i in range(1, self.n + 2) if i not in chosen)

    def __str__(self) -> str:
        return "{" + ",".join(str(i) for i in self.positions) + "}"


@dataclass(frozen=True)
class SimplexRecipe:
    """
    Recursive description of a simplex: the face it cones from, the shuffle
    used to walk the product and the recipes of the two factors.

    The 0-dimensional base recipe has no face.
    """
    dim: int
    face: Optional[Union[FaceGamma, FacetSubset]] = None
    theta: str = ""
    left: Optional["SimplexRecipe"] = None
    right: Optional["SimplexRecipe"] = None

    @property
    def is_base(self) -> bool:
        return self.face is None

    def to_dict(self) -> Optional[dict]:
        if self.face is None:
            return None
        data: dict[str, Any] = {
            "p": self.face.p,
            "q": self.face.q,
            "theta": self.theta,
            "left": self.left.to_dict() if self.left else None,
            "right": self.right.to_dict() if self.right else None,
        }
        if isinstance(self.face, FaceGamma):
            data["a"] = self.face.a
        else:
            data["facet"] = list(self.face.positions)
        return data


# =============================================================================
# TRIANGULATIONS
# =============================================================================

@dataclass(frozen=True)
class VertexRecord:
    """A polytope vertex: tree code or permutation, plus integer coordinates."""
    id: int
    key: Union[str, tuple[int, ...]]
    coords: Coord


@dataclass(frozen=True)
class Simplex:
    """Vertex ids in chain order, the apex last."""
    id: int
    vertices: tuple[int, ...]
    label: Optional[tuple[int, ...]] = None
    recipe: Optional[SimplexRecipe] = None


@dataclass
class Triangulation:
    """Triangulation of an n-dimensional polytope living in R^(n+1)."""
    kind: PolytopeKind
    n: int
    vertices: list[VertexRecord] = field(default_factory=list)
    simplices: list[Simplex] = field(default_factory=list)

    @property
    def simplex_count(self) -> int:
        return len(self.simplices)

    @property
    def ambient_dim(self) -> int:
        return self.n + 1

    @property
    def labels(self) -> list[Optional[tuple[int, ...]]]:
        return [s.label for s in self.simplices]

    def vertex_coords(self, simplex: Simplex) -> list[Coord]:
        return [self.vertices[i].coords for i in simplex.vertices]


# =============================================================================
# VALIDATION REPORTS
# =============================================================================

@dataclass
class CheckResult:
    """Outcome of one named validation check."""
    name: str
    status: CheckStatus
    details: dict[str, Any] = field(default_factory=dict)
    counterexample: Optional[Any] = None

    @property
    def passed(self) -> bool:
        return self.status != CheckStatus.FAIL

    def to_dict(self) -> dict:
        data: dict[str, Any] = {"pass": self.status == CheckStatus.PASS, "status": self.status.value}
        data.update(self.details)
        if self.counterexample is not None:
            data["counterexample"] = self.counterexample
        return data


@dataclass
class ValidationReport:
    """Ordered collection of check results for one triangulation."""
    kind: PolytopeKind
    n: int
    seed: Optional[int] = None
    checks: dict[str, CheckResult] = field(default_factory=dict)

    def add(self, result: CheckResult) -> CheckResult:
        self.checks[result.name] = result
        if result.status == CheckStatus.FAIL:
            logger.warning("check %s failed for %s n=%d: %s", result.name, self.kind.value, self.n,
                           result.counterexample if result.counterexample is not None else result.details)
        else:
            logger.info("check %s: %s", result.name, result.status.value)
        return result

    def merge(self, other: "ValidationReport") -> None:
        for result in other.checks.values():
            self.add(result)

    @property
    def passed(self) -> bool:
        """True when no check failed; skipped checks do not count against it."""
        return all(check.passed for check in self.checks.values())

    @property
    def failed_checks(self) -> list[str]:
        return [name for name, check in self.checks.items() if not check.passed]

    def to_dict(self) -> dict:
        data = {name: check.to_dict() for name, check in self.checks.items()}
        data["overall"] = {
            "pass": self.passed,
            "kind": self.kind.value,
            "n": self.n,
            "seed": self.seed,
            "failed": self.failed_checks,
        }
        return data
