"""
Deterministic meshes of the supported domains.

Intervals get uniform partitions. Disks get a ring-structured point set
(6k points on ring k) triangulated by Delaunay; the ring count grows until
the mesh size reaches radius/resolution.
"""

import json
import logging
from dataclasses import dataclass
from functools import cached_property
from typing import Union

import numpy as np
from scipy.spatial import Delaunay

from fraclab.error import MeshError
from fraclab.geometry.domain import Domain, DomainKind

logger = logging.getLogger(__name__)

DEFAULT_MIN_ANGLE = 20.0  # degrees


@dataclass(frozen=True, eq=False)
class Mesh:
    """
    Nodes, elements and boundary flags of a mesh of ``domain``.

    ``elements`` are segments (m, 2) in 1D and counter-clockwise triangles
    (m, 3) in 2D. ``h`` is the largest element diameter.
    """
    domain: Domain
    nodes: np.ndarray
    elements: np.ndarray
    boundary: np.ndarray
    h: float

    def __post_init__(self):
        for arr in (self.nodes, self.elements, self.boundary):
            arr.flags.writeable = False

    @property
    def dim(self) -> int:
        return self.domain.dim

    @property
    def n_nodes(self) -> int:
        return self.nodes.shape[0]

    @cached_property
    def interior(self) -> np.ndarray:
        """Indices of interior nodes, in increasing order."""
        return np.flatnonzero(~self.boundary)

    @property
    def n_interior(self) -> int:
        return int(self.interior.size)

    @cached_property
    def element_measures(self) -> np.ndarray:
        if self.dim == 1:
            x = self.nodes[self.elements, 0]
            return x[:, 1] - x[:, 0]
        p = self.nodes[self.elements]
        e1 = p[:, 1] - p[:, 0]
        e2 = p[:, 2] - p[:, 0]
        return 0.5 * (e1[:, 0] * e2[:, 1] - e1[:, 1] * e2[:, 0])

    @property
    def measure(self) -> float:
        return float(self.element_measures.sum())

    @cached_property
    def delta(self) -> np.ndarray:
        """Boundary distance at every node, exactly 0 on boundary nodes."""
        d = np.maximum(self.domain.signed_distance(self.nodes), 0.0)
        d[self.boundary] = 0.0
        return d

    @cached_property
    def min_angle(self) -> float:
        """Smallest interior angle in degrees (180 for segment meshes)."""
        if self.dim == 1:
            return 180.0
        return float(_triangle_angles(self.nodes[self.elements]).min())

    def same_as(self, other: "Mesh") -> bool:
        return self is other or (
            self.domain == other.domain
            and self.nodes.shape == other.nodes.shape
            and np.array_equal(self.nodes, other.nodes)
            and np.array_equal(self.elements, other.elements)
        )

    def to_json(self) -> dict:
        nodes = self.nodes[:, 0].tolist() if self.dim == 1 else self.nodes.tolist()
        return {
            "domain": self.domain.to_json(),
            "nodes": [[x] for x in nodes] if self.dim == 1 else nodes,
            "elements": self.elements.tolist(),
            "boundary": np.flatnonzero(self.boundary).tolist(),
        }


def _triangle_angles(tri: np.ndarray) -> np.ndarray:
    angles = []
    for i in range(3):
        u = tri[:, (i + 1) % 3] - tri[:, i]
        v = tri[:, (i + 2) % 3] - tri[:, i]
        cos = np.einsum("ij,ij->i", u, v) / (np.linalg.norm(u, axis=1) * np.linalg.norm(v, axis=1))
        angles.append(np.degrees(np.arccos(np.clip(cos, -1.0, 1.0))))
    return np.stack(angles, axis=1)


def _interval_mesh(domain: Domain, resolution: int) -> Mesh:
    x = np.linspace(domain.a, domain.b, resolution + 1)
    elements = np.stack([np.arange(resolution), np.arange(1, resolution + 1)], axis=1)
    boundary = np.zeros(resolution + 1, dtype=bool)
    boundary[[0, -1]] = True
    h = float(np.max(np.diff(x)))
    return Mesh(domain=domain, nodes=x[:, None], elements=elements, boundary=boundary, h=h)


def _ring_points(center, radius: float, rings: int):
    pts = [np.zeros((1, 2))]
    on_boundary = [np.zeros(1, dtype=bool)]
    for k in range(1, rings + 1):
        n = 6 * k
        theta = 2.0 * np.pi * (np.arange(n) + 0.5 * (k % 2)) / n
        rho = radius * k / rings
        ring = np.stack([rho * np.cos(theta), rho * np.sin(theta)], axis=1)
        pts.append(ring)
        on_boundary.append(np.full(n, k == rings))
    return np.vstack(pts) + np.asarray(center), np.concatenate(on_boundary)


def _disk_triangulation(domain: Domain, rings: int) -> Mesh:
    nodes, boundary = _ring_points(domain.center, domain.radius, rings)
    # boundary ring lies exactly on the circle
    rel = nodes[boundary] - np.asarray(domain.center)
    nodes[boundary] = np.asarray(domain.center) + domain.radius * rel / np.linalg.norm(rel, axis=1)[:, None]
    tri = Delaunay(nodes).simplices.astype(np.int64)
    p = nodes[tri]
    area2 = (p[:, 1, 0] - p[:, 0, 0]) * (p[:, 2, 1] - p[:, 0, 1]) - (p[:, 1, 1] - p[:, 0, 1]) * (p[:, 2, 0] - p[:, 0, 0])
    tri = tri[np.abs(area2) > 1e-14 * domain.radius ** 2]
    flip = area2[np.abs(area2) > 1e-14 * domain.radius ** 2] < 0
    tri[flip] = tri[flip][:, [0, 2, 1]]
    # a stable element order keeps assembly deterministic across platforms
    tri = tri[np.lexsort(np.sort(tri, axis=1).T[::-1])]
    p = nodes[tri]
    edges = np.stack([p[:, 1] - p[:, 0], p[:, 2] - p[:, 1], p[:, 0] - p[:, 2]], axis=1)
    h = float(np.linalg.norm(edges, axis=2).max())
    return Mesh(domain=domain, nodes=nodes, elements=tri, boundary=boundary, h=h)


def build_mesh(domain: Domain, resolution: int, min_angle: float = DEFAULT_MIN_ANGLE) -> Mesh:
    """
    Build the mesh of ``domain`` at ``resolution``.

    Args:
        domain: Interval or disk.
        resolution: Number of elements for intervals; for disks the mesh
            size satisfies h <= radius/resolution.
        min_angle: Floor (degrees) below which a disk triangulation is
            rejected as degenerate.

    Returns:
        The mesh, a deterministic function of its inputs.

    Raises:
        MeshError: On resolution < 2 or a degenerate triangulation.
    """
    if int(resolution) != resolution or resolution < 2:
        raise MeshError(f"resolution must be an integer >= 2, got {resolution}")
    resolution = int(resolution)
    if domain.kind == DomainKind.INTERVAL:
        return _interval_mesh(domain, resolution)

    target = domain.radius / resolution
    rings = resolution
    mesh = _disk_triangulation(domain, rings)
    while mesh.h > target * (1.0 + 1e-12):
        rings += 1
        mesh = _disk_triangulation(domain, rings)
    if mesh.min_angle < min_angle:
        raise MeshError(
            f"degenerate disk triangulation: minimum angle {mesh.min_angle:.2f} below floor {min_angle}",
            min_angle=mesh.min_angle,
        )
    logger.debug(f"Disk mesh: {rings} rings, {mesh.n_nodes} nodes, {len(mesh.elements)} triangles, h={mesh.h:.4f}")
    return mesh


def export_mesh(mesh: Mesh) -> str:
    """Serialize a mesh to JSON: {nodes, elements, boundary, domain}."""
    return json.dumps(mesh.to_json())


def load_mesh(text: Union[str, dict]) -> Mesh:
    """Inverse of :func:`export_mesh`; recomputes h from the elements."""
    data = json.loads(text) if isinstance(text, str) else text
    d = data["domain"]
    if d["kind"] == DomainKind.INTERVAL.value:
        domain = Domain.interval(d["a"], d["b"], d["s"])
    else:
        domain = Domain.disk(tuple(d["center"]), d["radius"], d["s"])
    nodes = np.asarray(data["nodes"], dtype=float).reshape(-1, domain.dim)
    elements = np.asarray(data["elements"], dtype=np.int64)
    boundary = np.zeros(nodes.shape[0], dtype=bool)
    boundary[np.asarray(data["boundary"], dtype=np.int64)] = True
    p = nodes[elements]
    diffs = p[:, :, None, :] - p[:, None, :, :]
    h = float(np.linalg.norm(diffs, axis=-1).max())
    return Mesh(domain=domain, nodes=nodes, elements=elements, boundary=boundary, h=h)
