"""Array layouts, element coordinates, and exact element/point distances.

Conventions used throughout: the base-station array is canonical, i.e. a ULA
along the Y-axis or a planar array in the YZ-plane with its midpoint at the
origin.  A user-side ULA is anchored at its first element and may be tilted;
its tilt is the angle between the array direction and the Y-axis (2D), or an
(elevation, azimuth) pair (3D).  All angles are radians.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

__all__ = [
    "UlaGeometry",
    "UpaGeometry",
    "PolarPoint",
    "element_positions",
    "element_offsets",
    "user_element_positions",
    "distance_point_to_element",
    "distances_to_point",
    "distance_mimo",
    "distance_matrix",
]

_HALF_PI = math.pi / 2.0


@dataclass(frozen=True)
class UlaGeometry:
    """Uniform linear array.

    ``anchor_mode="midpoint"`` places the element index offsets at
    n - (N-1)/2 about the anchor (base-station convention);
    ``anchor_mode="first"`` anchors element 0 at the anchor with offsets
    0..N-1 (user-side convention).  ``rotation`` is the tilt of the array
    direction: a single angle measured from the Y-axis for planar (2D)
    layouts, or an (elevation, azimuth) pair for 3D layouts.
    """

    num_elements: int
    spacing: float
    rotation: float | tuple[float, float] = 0.0
    anchor: tuple[float, ...] = (0.0, 0.0)
    anchor_mode: str = "midpoint"

    def __post_init__(self):
        if self.num_elements < 1:
            raise ValueError("num_elements must be >= 1")
        if not self.spacing > 0.0:
            raise ValueError("spacing must be positive")
        if self.anchor_mode not in ("midpoint", "first"):
            raise ValueError(f"unknown anchor_mode {self.anchor_mode!r}")
        if len(self.anchor) not in (2, 3):
            raise ValueError("anchor must be a 2D or 3D point")
        if isinstance(self.rotation, tuple) and len(self.anchor) != 3:
            raise ValueError("(elevation, azimuth) rotation requires a 3D anchor")

    @property
    def aperture(self) -> float:
        """Physical aperture (N-1)*d."""
        return (self.num_elements - 1) * self.spacing

    @property
    def length(self) -> float:
        """Array length N*d, the parameter of the continuum closed forms."""
        return self.num_elements * self.spacing

    @property
    def ndim(self) -> int:
        return len(self.anchor)

    def offsets(self) -> np.ndarray:
        return element_offsets(self.num_elements, self.anchor_mode)

    def direction(self) -> np.ndarray:
        """Unit vector along the array."""
        if isinstance(self.rotation, tuple):
            el, az = self.rotation
            return np.array(
                [math.cos(el) * math.cos(az), math.cos(el) * math.sin(az), math.sin(el)]
            )
        d = np.array([math.sin(self.rotation), math.cos(self.rotation)])
        if self.ndim == 3:
            d = np.array([d[0], d[1], 0.0])
        return d

    def is_canonical_bs(self) -> bool:
        """Midpoint-anchored at the origin along the Y-axis."""
        return (
            self.anchor_mode == "midpoint"
            and not isinstance(self.rotation, tuple)
            and self.rotation == 0.0
            and all(c == 0.0 for c in self.anchor)
        )


@dataclass(frozen=True)
class UpaGeometry:
    """Uniform planar array in the YZ-plane, midpoint at the origin.

    Element flat index is n_z * num_y + n_y (n_y fastest), matching the
    channel-row ordering used for the planar-array MIMO scenarios.  The
    ``shape`` tag selects which continuum closed form applies: the discrete
    element grid is always rectangular.
    """

    num_y: int
    num_z: int
    spacing_y: float
    spacing_z: float
    shape: str = "rectangular"

    def __post_init__(self):
        if self.num_y < 1 or self.num_z < 1:
            raise ValueError("num_y and num_z must be >= 1")
        if not (self.spacing_y > 0.0 and self.spacing_z > 0.0):
            raise ValueError("spacings must be positive")
        if self.shape not in ("rectangular", "circular", "elliptical"):
            raise ValueError(f"unknown shape {self.shape!r}")
        if self.shape == "circular":
            ly, lz = self.num_y * self.spacing_y, self.num_z * self.spacing_z
            if abs(ly - lz) > 1e-12 * max(ly, lz):
                raise ValueError("circular shape requires num_y*spacing_y == num_z*spacing_z")

    @property
    def num_elements(self) -> int:
        return self.num_y * self.num_z

    @property
    def length_y(self) -> float:
        return self.num_y * self.spacing_y

    @property
    def length_z(self) -> float:
        return self.num_z * self.spacing_z

    @property
    def aperture_y(self) -> float:
        return (self.num_y - 1) * self.spacing_y

    @property
    def aperture_z(self) -> float:
        return (self.num_z - 1) * self.spacing_z

    def offsets(self) -> tuple[np.ndarray, np.ndarray]:
        """Flat (y, z) element offsets in meters, n_y-fastest order."""
        oy = element_offsets(self.num_y, "midpoint") * self.spacing_y
        oz = element_offsets(self.num_z, "midpoint") * self.spacing_z
        return np.tile(oy, self.num_z), np.repeat(oz, self.num_y)


@dataclass(frozen=True)
class PolarPoint:
    """A query point in front of the array.

    2D: (r, theta) with x = r cos(theta), y = r sin(theta).
    3D: (r, phi, varphi) with phi the elevation and varphi the azimuth,
    x = r cos(phi) cos(varphi), y = r cos(phi) sin(varphi), z = r sin(phi).
    Angles must lie strictly inside (-pi/2, pi/2): only the half-space in
    front of the array is modeled.
    """

    r: float
    theta: float | None = None
    phi: float | None = None
    varphi: float | None = None

    def __post_init__(self):
        if not self.r > 0.0:
            raise ValueError("r must be positive")
        planar = self.theta is not None
        spatial = self.phi is not None or self.varphi is not None
        if planar == spatial:
            raise ValueError("give either theta (2D) or phi and varphi (3D)")
        if spatial and (self.phi is None or self.varphi is None):
            raise ValueError("3D point needs both phi and varphi")
        for a in (self.theta, self.phi, self.varphi):
            if a is not None and not -_HALF_PI < a < _HALF_PI:
                raise ValueError("angles must lie in (-pi/2, pi/2)")

    @classmethod
    def planar(cls, r: float, theta: float) -> "PolarPoint":
        return cls(r=r, theta=theta)

    @classmethod
    def spatial(cls, r: float, phi: float, varphi: float) -> "PolarPoint":
        return cls(r=r, phi=phi, varphi=varphi)

    @property
    def is_3d(self) -> bool:
        return self.theta is None

    def to_cartesian(self) -> np.ndarray:
        if self.is_3d:
            return np.array(
                [
                    self.r * math.cos(self.phi) * math.cos(self.varphi),
                    self.r * math.cos(self.phi) * math.sin(self.varphi),
                    self.r * math.sin(self.phi),
                ]
            )
        return np.array([self.r * math.cos(self.theta), self.r * math.sin(self.theta)])


def element_offsets(n: int, anchor_mode: str = "midpoint") -> np.ndarray:
    """Index offsets: n - (N-1)/2 for midpoint anchoring, 0..N-1 for first."""
    idx = np.arange(n, dtype=float)
    if anchor_mode == "midpoint":
        return idx - (n - 1) / 2.0
    if anchor_mode == "first":
        return idx
    raise ValueError(f"unknown anchor_mode {anchor_mode!r}")


def element_positions(geom: UlaGeometry | UpaGeometry) -> np.ndarray:
    """Cartesian element coordinates, shape (num_elements, ndim).

    ULA order follows the element index; UPA order is n_y-fastest.
    """
    if isinstance(geom, UpaGeometry):
        oy, oz = geom.offsets()
        return np.column_stack([np.zeros_like(oy), oy, oz])
    offs = geom.offsets() * geom.spacing
    anchor = np.asarray(geom.anchor, dtype=float)
    return anchor[None, :] + offs[:, None] * geom.direction()[None, :]


def _require_canonical(geom: UlaGeometry) -> None:
    if not geom.is_canonical_bs():
        raise ValueError("base-station ULA must be midpoint-anchored at the origin along Y")


def distances_to_point(geom: UlaGeometry | UpaGeometry, user: PolarPoint) -> np.ndarray:
    """Exact distances from every element of a canonical array to the user.

    Uses the expanded quadratic forms r_n^2 = r^2 - 2 r d delta_n sin(theta)
    + (delta_n d)^2 (ULA) and its planar-array analogue, which are algebraic
    identities for the canonical placements.
    """
    if isinstance(geom, UpaGeometry):
        if not user.is_3d:
            raise ValueError("planar array needs a 3D user point")
        oy, oz = geom.offsets()
        r = user.r
        cy = math.cos(user.phi) * math.sin(user.varphi)
        cz = math.sin(user.phi)
        sq = r * r - 2.0 * r * (cy * oy + cz * oz) + oy * oy + oz * oz
        return np.sqrt(sq)
    _require_canonical(geom)
    if user.is_3d:
        raise ValueError("linear array needs a 2D user point")
    offs = geom.offsets() * geom.spacing
    r, st = user.r, math.sin(user.theta)
    return np.sqrt(r * r - 2.0 * r * offs * st + offs * offs)


def distance_point_to_element(geom: UlaGeometry, user: PolarPoint, n: int) -> float:
    """Distance from the n-th element of a canonical ULA to the user."""
    if not 0 <= n < geom.num_elements:
        raise IndexError("element index out of range")
    return float(distances_to_point(geom, user)[n])


def user_element_positions(user: UlaGeometry, user_anchor: PolarPoint) -> np.ndarray:
    """Cartesian coordinates of a first-element-anchored user ULA."""
    if user.anchor_mode != "first":
        raise ValueError("user ULA must be first-element anchored")
    anchor = user_anchor.to_cartesian()
    direction = user.direction()
    if len(direction) != len(anchor):
        raise ValueError("user rotation dimensionality does not match the anchor")
    offs = user.offsets() * user.spacing
    return anchor[None, :] + offs[:, None] * direction[None, :]


def distance_matrix(
    bs: UlaGeometry | UpaGeometry, user: UlaGeometry, user_anchor: PolarPoint
) -> np.ndarray:
    """Exact (N, M) distances between a canonical BS array and a user ULA.

    ULA-to-ULA uses
    r_nm^2 = (r cos(theta) + m d_u sin(phi))^2
           + (r sin(theta) + m d_u cos(phi) - delta_n d_b)^2,
    and the planar-array case adds the third coordinate analogously.
    """
    if user.anchor_mode != "first":
        raise ValueError("user ULA must be first-element anchored")
    dm = user.offsets() * user.spacing
    if isinstance(bs, UpaGeometry):
        if not user_anchor.is_3d:
            raise ValueError("planar-array scenario needs a 3D user anchor")
        oy, oz = bs.offsets()
        ax, ay, az = user_anchor.to_cartesian()
        ux, uy, uz = user.direction()
        x = ax + dm[None, :] * ux
        y = ay + dm[None, :] * uy - oy[:, None]
        z = az + dm[None, :] * uz - oz[:, None]
        return np.sqrt(x * x + y * y + z * z)
    _require_canonical(bs)
    if user_anchor.is_3d:
        raise ValueError("ULA-to-ULA scenario needs a 2D user anchor")
    if isinstance(user.rotation, tuple):
        raise ValueError("2D scenario needs a scalar user rotation")
    dn = bs.offsets() * bs.spacing
    r, th, ph = user_anchor.r, user_anchor.theta, user.rotation
    x = r * math.cos(th) + dm[None, :] * math.sin(ph)
    y = r * math.sin(th) + dm[None, :] * math.cos(ph) - dn[:, None]
    return np.sqrt(x * x + y * y)


def distance_mimo(
    bs: UlaGeometry | UpaGeometry,
    user: UlaGeometry,
    user_anchor: PolarPoint,
    n: int,
    m: int,
) -> float:
    """Single-pair element distance; see distance_matrix for the layout."""
    nmax = bs.num_elements
    if not (0 <= n < nmax and 0 <= m < user.num_elements):
        raise IndexError("element index out of range")
    return float(distance_matrix(bs, user, user_anchor)[n, m])
