"""Revolution of a profile curve about the z-axis into a polygon mesh."""

import io
import logging
import math
from dataclasses import dataclass, field
from typing import List, Tuple

import numpy as np

from integration.orbit import Orbit
from utils.constants import CSV_DIGITS, MESH_SEGMENTS

logger = logging.getLogger(__name__)


@dataclass
class Mesh:
    """Vertices and faces of a surface of revolution.

    Faces are 0-based index tuples (quads, or triangles at collapsed poles)
    ordered so that their normals follow the Gauss map
    N = (-sin(theta) cos(v), -sin(theta) sin(v), cos(theta)).
    """

    vertices: np.ndarray
    faces: List[Tuple[int, ...]]
    generator: str
    angular_segments: int
    poles: List[int] = field(default_factory=list)

    @property
    def vertex_count(self) -> int:
        return len(self.vertices)

    def face_normal(self, index: int) -> np.ndarray:
        """Unnormalized normal of a face (Newell's method)."""
        corners = self.vertices[list(self.faces[index])]
        following = np.roll(corners, -1, axis=0)
        return np.array([
            np.sum((corners[:, 1] - following[:, 1]) * (corners[:, 2] + following[:, 2])),
            np.sum((corners[:, 2] - following[:, 2]) * (corners[:, 0] + following[:, 0])),
            np.sum((corners[:, 0] - following[:, 0]) * (corners[:, 1] + following[:, 1])),
        ])

    def pole_valence(self, vertex: int) -> int:
        return sum(1 for face in self.faces if vertex in face)

    def to_obj(self) -> str:
        """Wavefront text: ``v x y z`` lines, then 1-based ``f`` lines."""
        out = io.StringIO()
        out.write(f"# generator {self.generator}\n")
        out.write(f"# segments {self.angular_segments}\n")
        number = f"%.{CSV_DIGITS}g"
        for x, y, z in self.vertices:
            out.write(f"v {number % x} {number % y} {number % z}\n")
        for face in self.faces:
            out.write("f " + " ".join(str(index + 1) for index in face) + "\n")
        return out.getvalue()


def revolve(o: Orbit, segments: int = MESH_SEGMENTS) -> Mesh:
    """
    Rotates the samples of an orbit about the z-axis.

    Args:
        o: Orbit whose samples all have x >= 0.
        segments: Number of angular steps m (at least 3).

    Returns:
        Mesh with one ring of m vertices per off-axis sample and a single
        vertex for each sample on the axis.
    """
    if segments < 3:
        raise ValueError("a surface of revolution needs at least 3 angular segments")
    angles = 2 * math.pi * np.arange(segments) / segments
    cosines, sines = np.cos(angles), np.sin(angles)

    blocks: List[np.ndarray] = []
    rings: List[List[int]] = []
    count = 0
    for sample in o.samples:
        if sample.x <= 0:
            rings.append([count])
            blocks.append(np.array([[0.0, 0.0, sample.z]]))
        else:
            rings.append(list(range(count, count + segments)))
            blocks.append(np.column_stack([sample.x * cosines, sample.x * sines, np.full(segments, sample.z)]))
        count += len(blocks[-1])
    stacked = np.concatenate(blocks) if blocks else np.empty((0, 3))

    # corners run along the tangent first, then along the rotation
    forward = o.increasing
    faces: List[Tuple[int, ...]] = []
    for lower, upper in zip(rings, rings[1:]):
        if not forward:
            lower, upper = upper, lower
        for j in range(segments):
            k = (j + 1) % segments
            if len(lower) == 1 and len(upper) == 1:
                continue
            if len(lower) == 1:
                faces.append((lower[0], upper[j], upper[k]))
            elif len(upper) == 1:
                faces.append((lower[j], upper[0], lower[k]))
            else:
                faces.append((lower[j], upper[j], upper[k], lower[k]))

    pole_ids = [ring[0] for ring in rings if len(ring) == 1]
    mesh = Mesh(stacked, faces, o.phi_id, segments, pole_ids)
    logger.debug("revolved %d samples into %d vertices and %d faces", len(o.samples), mesh.vertex_count, len(faces))
    return mesh
