"""JSON bundles and OFF meshes for triangulations, and the way back from a bundle file."""
import json
import logging
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Optional, Union

import numpy as np

import config
from assoc_triangulation import check_associahedron_triangulation
from models import (
    CheckResult, CheckStatus, DomainError, FaceGamma, FacetSubset, PolytopeKind, Simplex,
    SimplexRecipe, Triangulation, ValidationReport, VertexRecord,
)
from parking import is_parking
from permutohedron import check_permutohedron_triangulation

logger = logging.getLogger(__name__)


@dataclass
class ExportBundle:
    """Everything written by `triangulate --format json`."""
    meta: dict[str, Any]
    vertices: list[dict[str, Any]] = field(default_factory=list)
    simplices: list[dict[str, Any]] = field(default_factory=list)
    validation: dict[str, Any] = field(default_factory=dict)

    @property
    def kind(self) -> PolytopeKind:
        return PolytopeKind(self.meta["kind"])

    @property
    def n(self) -> int:
        return self.meta["n"]

    def to_dict(self) -> dict:
        return {
            "meta": self.meta,
            "vertices": self.vertices,
            "simplices": self.simplices,
            "validation": self.validation,
        }


# =============================================================================
# BUILDING AND WRITING
# =============================================================================

def _vertex_entry(tri: Triangulation, vertex: VertexRecord) -> dict[str, Any]:
    key_name = "tree" if tri.kind == PolytopeKind.ASSOCIAHEDRON else "perm"
    key = vertex.key if isinstance(vertex.key, str) else list(vertex.key)
    return {"id": vertex.id, key_name: key, "coords": list(vertex.coords)}


def build_bundle(tri: Triangulation, seed: Optional[int] = None,
                 report: Optional[ValidationReport] = None) -> ExportBundle:
    meta = {"kind": tri.kind.value, "n": tri.n, "version": config.VERSION, "seed": seed}
    vertices = [_vertex_entry(tri, v) for v in tri.vertices]
    simplices = [
        {
            "id": s.id,
            "vertices": list(s.vertices),
            "label": list(s.label) if s.label is not None else None,
            "recipe": s.recipe.to_dict() if s.recipe is not None else None,
        }
        for s in tri.simplices
    ]
    validation = report.to_dict() if report is not None else {}
    return ExportBundle(meta, vertices, simplices, validation)


def bundle_to_json(bundle: ExportBundle) -> str:
    """Sorted keys and fixed indentation: the same triangulation always gives the same bytes."""
    return json.dumps(bundle.to_dict(), sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def load_bundle(source: Union[str, Path]) -> ExportBundle:
    """Read a bundle from a path or from JSON text."""
    if isinstance(source, Path):
        text = source.read_text(encoding="utf-8")
    else:
        text = source
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise DomainError(f"bundle is not valid JSON: {exc}") from exc

    if not isinstance(data, dict):
        raise DomainError("bundle must be a JSON object")
    missing = [key for key in ("meta", "vertices", "simplices") if key not in data]
    if missing:
        raise DomainError(f"bundle is missing {', '.join(missing)}")
    meta = data["meta"]
    if not isinstance(meta, dict) or meta.get("kind") not in [k.value for k in PolytopeKind]:
        raise DomainError(f"unknown polytope kind in bundle meta: {meta!r}")
    if not isinstance(meta.get("n"), int) or meta["n"] < 0:
        raise DomainError(f"bad dimension in bundle meta: {meta.get('n')!r}")
    if not isinstance(data["vertices"], list) or not isinstance(data["simplices"], list):
        raise DomainError("vertices and simplices must be lists")
    return ExportBundle(meta, data["vertices"], data["simplices"], data.get("validation") or {})


# =============================================================================
# READING BACK
# =============================================================================

def _int_tuple(value: Any, what: str) -> tuple[int, ...]:
    if not isinstance(value, list) or any(type(x) is not int for x in value):
        raise DomainError(f"{what} must be a list of integers, got {value!r}")
    return tuple(value)


def _recipe_from_dict(data: Optional[dict], kind: PolytopeKind, n: int) -> SimplexRecipe:
    if data is None:
        if n != 0:
            raise DomainError(f"missing recipe for a {n}-dimensional simplex")
        return SimplexRecipe(0)
    if not isinstance(data, dict):
        raise DomainError(f"recipe must be an object, got {data!r}")
    try:
        p, q = data["p"], data["q"]
        if any(type(data.get(k, 0)) is not int for k in ("a", "p", "q")):
            raise DomainError(f"recipe sizes must be integers: {data!r}")
        if not isinstance(data["theta"], str):
            raise DomainError(f"recipe shuffle must be a U/V word, got {data['theta']!r}")
        if kind == PolytopeKind.ASSOCIAHEDRON:
            face: Union[FaceGamma, FacetSubset] = FaceGamma(data["a"], p, q)
        else:
            face = FacetSubset(n, _int_tuple(data["facet"], "recipe facet"))
        if face.p != p or face.q != q or p + q + 1 != n:
            raise DomainError(f"recipe sizes p={p} q={q} do not fit dimension {n}")
        return SimplexRecipe(
            n, face, data["theta"],
            _recipe_from_dict(data["left"], kind, p),
            _recipe_from_dict(data["right"], kind, q),
        )
    except (KeyError, TypeError) as exc:
        raise DomainError(f"malformed recipe: {exc!r}") from exc


def bundle_to_triangulation(bundle: ExportBundle) -> Triangulation:
    kind = bundle.kind
    n = bundle.n
    key_name = "tree" if kind == PolytopeKind.ASSOCIAHEDRON else "perm"
    vertices = []
    try:
        for position, entry in enumerate(bundle.vertices):
            if entry["id"] != position:
                raise DomainError(f"vertex {position} has id {entry['id']}")
            if kind == PolytopeKind.ASSOCIAHEDRON:
                key = entry[key_name]
                if not isinstance(key, str):
                    raise DomainError(f"vertex {position}: tree {key!r} is not a bracket code")
            else:
                key = _int_tuple(entry[key_name], f"vertex {position} perm")
            vertices.append(VertexRecord(position, key, _int_tuple(entry["coords"], f"vertex {position} coords")))

        simplices = []
        for position, entry in enumerate(bundle.simplices):
            ids = tuple(entry["vertices"])
            if any(not isinstance(i, int) or not 0 <= i < len(vertices) for i in ids):
                raise DomainError(f"simplex {position}: vertex index out of range in {list(ids)}")
            label = entry.get("label")
            if label is not None:
                label = _int_tuple(label, f"simplex {position} label")
            if kind == PolytopeKind.ASSOCIAHEDRON and (label is None or not is_parking(label)):
                raise DomainError(f"simplex {position}: label {label!r} is not a parking function")
            recipe = _recipe_from_dict(entry.get("recipe"), kind, n)
            simplices.append(Simplex(position, ids, label, recipe))
    except (KeyError, TypeError) as exc:
        raise DomainError(f"malformed bundle entry: {exc!r}") from exc

    return Triangulation(kind, n, vertices, simplices)


def check_bundle(bundle: ExportBundle, seed: int = config.DEFAULT_SEED,
                 interior_samples: int = config.DEFAULT_INTERIOR_SAMPLES,
                 hull_samples: int = config.DEFAULT_HULL_SAMPLES) -> ValidationReport:
    """Re-validate a stored triangulation; format problems become a failed check."""
    try:
        tri = bundle_to_triangulation(bundle)
    except DomainError as exc:
        report = ValidationReport(bundle.kind, bundle.n, seed)
        report.add(CheckResult("bundle_format", CheckStatus.FAIL, {}, str(exc)))
        return report

    if tri.kind == PolytopeKind.ASSOCIAHEDRON:
        checked = check_associahedron_triangulation(tri, seed, interior_samples, hull_samples)
    else:
        checked = check_permutohedron_triangulation(tri, seed, interior_samples, hull_samples)

    report = ValidationReport(tri.kind, tri.n, seed)
    report.add(CheckResult("bundle_format", CheckStatus.PASS,
                           {"vertices": len(tri.vertices), "simplices": tri.simplex_count}))
    report.merge(checked)
    return report


# =============================================================================
# OFF MESHES
# =============================================================================

def projection_basis(dim: int) -> np.ndarray:
    """Orthonormal basis of the hyperplane sum(x) = 0 in R^dim, from e_i - e_{i+1}."""
    basis: list[np.ndarray] = []
    for i in range(dim - 1):
        v = np.zeros(dim)
        v[i], v[i + 1] = 1.0, -1.0
        for b in basis:
            v = v - np.dot(v, b) * b
        basis.append(v / np.linalg.norm(v))
    return np.array(basis).reshape(dim - 1, dim)


def _off_faces(tri: Triangulation) -> list[tuple[int, ...]]:
    if tri.n <= 2:
        return [tuple(s.vertices) for s in tri.simplices]
    # tetrahedra are written as their triangles
    triangles = set()
    for s in tri.simplices:
        for skip in range(len(s.vertices)):
            triangles.add(tuple(sorted(v for k, v in enumerate(s.vertices) if k != skip)))
    return sorted(triangles)


def _format_float(value: float) -> str:
    return f"{round(float(value), config.OFF_DECIMALS) + 0.0:.{config.OFF_DECIMALS}f}"


def triangulation_to_off(tri: Triangulation) -> str:
    if tri.n > config.MAX_OFF_DIM:
        raise DomainError(f"OFF export needs n <= {config.MAX_OFF_DIM}, got n={tri.n}")
    coords = np.array([v.coords for v in tri.vertices], dtype=float).reshape(len(tri.vertices), tri.n + 1)
    projected = coords @ projection_basis(tri.n + 1).T
    padded = np.zeros((len(tri.vertices), 3))
    padded[:, :projected.shape[1]] = projected

    faces = _off_faces(tri)
    lines = ["OFF", f"{len(tri.vertices)} {len(faces)} 0"]
    lines.extend(" ".join(_format_float(x) for x in row) for row in padded)
    lines.extend(" ".join(str(i) for i in (len(face),) + face) for face in faces)
    logger.info("OFF mesh: %d vertices, %d faces", len(tri.vertices), len(faces))
    return "\n".join(lines) + "\n"
