"""Gaussian CM wavepackets and physically consistent overlap tables.

Packets are normalized isotropic Gaussians with a plane-wave momentum factor,

    g(x) = (2 pi sigma^2)^(-d/4) exp(-|x - c|^2 / (4 sigma^2) + i p.x),

so ``sigma`` is the per-axis position spread and ``p`` the mean momentum
(hbar = 1). With this phase convention a common momentum kick leaves every
pairwise inner product unchanged, which is what makes photon recoil a pure
momentum translation.
"""

from __future__ import annotations

import cmath
from dataclasses import dataclass, replace

import numpy as np

from .errors import DimensionMismatch, GridTooCoarse, InvalidScene, UnequalWidths
from .states import LABELS, OverlapTable, StateLabel

__all__ = [
    "GaussianPacket",
    "Scene",
    "QuadratureGrid",
    "overlap",
    "apply_recoil",
    "free_evolve",
    "build_overlap_table",
    "overlap_quadrature",
]

_UNIT_ATOL = 1e-12


def _vector(v, dim_name: str) -> np.ndarray:
    arr = np.atleast_1d(np.asarray(v, dtype=float))
    if arr.ndim != 1:
        raise DimensionMismatch(f"{dim_name} must be a flat vector, got shape {arr.shape}")
    arr.setflags(write=False)
    return arr


@dataclass(frozen=True)
class GaussianPacket:
    """One-particle CM state: center, mean momentum, isotropic spread."""

    center: np.ndarray
    momentum: np.ndarray
    sigma: float

    def __post_init__(self) -> None:
        c = _vector(self.center, "center")
        p = _vector(self.momentum, "momentum")
        if c.shape != p.shape:
            raise DimensionMismatch(
                f"center has dim {c.size} but momentum has dim {p.size}"
            )
        if c.size not in (1, 2, 3):
            raise DimensionMismatch(f"dim must be 1, 2 or 3, got {c.size}")
        if not (self.sigma > 0.0):
            raise InvalidScene(f"sigma must be positive, got {self.sigma}")
        object.__setattr__(self, "center", c)
        object.__setattr__(self, "momentum", p)
        object.__setattr__(self, "sigma", float(self.sigma))

    @property
    def dim(self) -> int:
        return self.center.size


def overlap(g1: GaussianPacket, g2: GaussianPacket) -> complex:
    """Closed-form inner product ``<g1|g2>`` of two equal-width packets.

    For separation d = c1 - c2, momentum difference q = p2 - p1 and midpoint
    m = (c1 + c2)/2:

        <g1|g2> = exp(-|d|^2/(8 sigma^2) - sigma^2 |q|^2 / 2 + i q.m)

    The magnitude is 1 exactly when the packets coincide.
    """
    if g1.dim != g2.dim:
        raise DimensionMismatch(f"packet dims differ: {g1.dim} vs {g2.dim}")
    if g1.sigma != g2.sigma:
        raise UnequalWidths(f"packet widths differ: {g1.sigma} vs {g2.sigma}")
    sig = g1.sigma
    d = g1.center - g2.center
    q = g2.momentum - g1.momentum
    mid = 0.5 * (g1.center + g2.center)
    exponent = (
        -float(d @ d) / (8.0 * sig * sig)
        - 0.5 * sig * sig * float(q @ q)
        + 1j * float(q @ mid)
    )
    return cmath.exp(exponent)


def apply_recoil(g: GaussianPacket, k) -> GaussianPacket:
    """Momentum kick from photon absorption/emission; center and width untouched."""
    kv = _vector(k, "recoil")
    if kv.size != g.dim:
        raise DimensionMismatch(f"recoil has dim {kv.size}, packet has dim {g.dim}")
    return replace(g, momentum=g.momentum + kv)


def free_evolve(g: GaussianPacket, t: float, mass: float) -> GaussianPacket:
    """Ballistic drift of the packet over time ``t``.

    Width convention (used everywhere in this package): the envelope is kept
    frozen, i.e. only the center moves by ``(p/m) t`` while ``sigma`` and the
    momentum stay fixed and the accumulated global phase is dropped. This is
    exact for t = 0 and a good description for t much smaller than the
    dispersion time ``2 m sigma^2``; it keeps all ten labeled states in the
    equal-width family required by :func:`overlap`.
    """
    if t == 0.0:
        return g
    return replace(g, center=g.center + (g.momentum / mass) * t)


@dataclass(frozen=True)
class Scene:
    """Geometric configuration that pins down all ten labeled states.

    ``beam_axis`` is the direction of the absorbed photon, ``omega_dir`` the
    postselected emission direction, ``k_abs`` the photon wavenumber (the
    emission recoil has the same magnitude), ``delay`` the time between
    absorption and the onset of emission.
    """

    packet_psi: GaussianPacket
    packet_phi: GaussianPacket
    k_abs: float = 1.0
    beam_axis: np.ndarray = None  # defaults to the first axis
    omega_dir: np.ndarray = None  # defaults to beam_axis
    mass: float = 1.0
    delay: float = 0.0

    def __post_init__(self) -> None:
        if self.packet_psi.dim != self.packet_phi.dim:
            raise DimensionMismatch("the two packets must share one dimension")
        if self.packet_psi.sigma != self.packet_phi.sigma:
            raise UnequalWidths("the two packets must share one width")
        dim = self.packet_psi.dim
        beam = self.beam_axis
        if beam is None:
            beam = np.eye(dim)[0]
        beam = _vector(beam, "beam_axis")
        omega = self.omega_dir
        if omega is None:
            omega = beam
        omega = _vector(omega, "omega_dir")
        for name, axis in (("beam_axis", beam), ("omega_dir", omega)):
            if axis.size != dim:
                raise DimensionMismatch(f"{name} has dim {axis.size}, packets have dim {dim}")
            if abs(float(np.linalg.norm(axis)) - 1.0) > _UNIT_ATOL:
                raise InvalidScene(f"{name} must have unit norm")
        if self.k_abs < 0.0:
            raise InvalidScene(f"k_abs must be nonnegative, got {self.k_abs}")
        if not (self.mass > 0.0):
            raise InvalidScene(f"mass must be positive, got {self.mass}")
        if self.delay < 0.0:
            raise InvalidScene(f"delay must be nonnegative, got {self.delay}")
        object.__setattr__(self, "beam_axis", beam)
        object.__setattr__(self, "omega_dir", omega)

    @property
    def dim(self) -> int:
        return self.packet_psi.dim


def _labeled_packets(scene: Scene) -> dict[StateLabel, GaussianPacket]:
    psi = scene.packet_psi
    phi = scene.packet_phi
    kick_in = scene.k_abs * scene.beam_axis
    kick_out = -scene.k_abs * scene.omega_dir
    psi_star = apply_recoil(psi, kick_in)
    phi_star = apply_recoil(phi, kick_in)

    def evolve(g: GaussianPacket) -> GaussianPacket:
        return free_evolve(g, scene.delay, scene.mass)

    return {
        StateLabel.PSI0: psi,
        StateLabel.PHI0: phi,
        StateLabel.PSI: psi,
        StateLabel.PHI: phi,
        StateLabel.PSI_STAR: psi_star,
        StateLabel.PHI_STAR: phi_star,
        StateLabel.PSI_BAR: evolve(psi),
        StateLabel.PHI_BAR: evolve(phi),
        StateLabel.PSI_SP: evolve(apply_recoil(psi_star, kick_out)),
        StateLabel.PHI_SP: evolve(apply_recoil(phi_star, kick_out)),
    }


def build_overlap_table(scene: Scene) -> OverlapTable:
    """Fill the full overlap table from a geometric scene.

    The initial packets double as the states at absorption time; the starred
    states add the absorption recoil along the beam; the barred states drift
    for ``delay``; the emission-recoiled states take the opposite kick along
    the emission direction and then drift. Being a Gram matrix of actual
    states, the result always passes strict validation.
    """
    packets = _labeled_packets(scene)
    n = len(LABELS)
    m = np.eye(n, dtype=complex)
    for i in range(n):
        for j in range(i + 1, n):
            val = overlap(packets[LABELS[i]], packets[LABELS[j]])
            m[i, j] = val
            m[j, i] = val.conjugate()
    return OverlapTable(m)


@dataclass(frozen=True)
class QuadratureGrid:
    """Trapezoidal-grid specification for the numerical-overlap oracle."""

    span_sigmas: float = 16.0
    points_per_sigma: int = 32

    def __post_init__(self) -> None:
        if self.span_sigmas < 8.0:
            raise GridTooCoarse(f"grid must span at least 8 sigma, got {self.span_sigmas}")
        if self.points_per_sigma < 16:
            raise GridTooCoarse(
                f"grid spacing must be at most sigma/16, got sigma/{self.points_per_sigma}"
            )


def overlap_quadrature(
    g1: GaussianPacket, g2: GaussianPacket, grid: QuadratureGrid = QuadratureGrid()
) -> complex:
    """Trapezoidal-rule inner product; test oracle for :func:`overlap`.

    The integrand factorizes per axis for isotropic Gaussians, so each axis is
    integrated on its own 1D grid covering ``span_sigmas`` beyond both centers
    with ``points_per_sigma`` samples per width.
    """
    if g1.dim != g2.dim:
        raise DimensionMismatch(f"packet dims differ: {g1.dim} vs {g2.dim}")
    if g1.sigma != g2.sigma:
        raise UnequalWidths(f"packet widths differ: {g1.sigma} vs {g2.sigma}")
    sig = g1.sigma
    norm_1d = (2.0 * np.pi * sig * sig) ** -0.25
    total = 1.0 + 0.0j
    for ax in range(g1.dim):
        c1, c2 = g1.center[ax], g2.center[ax]
        p1, p2 = g1.momentum[ax], g2.momentum[ax]
        lo = min(c1, c2) - grid.span_sigmas * sig
        hi = max(c1, c2) + grid.span_sigmas * sig
        n_pts = int(np.ceil((hi - lo) / sig * grid.points_per_sigma)) + 1
        x = np.linspace(lo, hi, n_pts)
        f1 = norm_1d * np.exp(-((x - c1) ** 2) / (4.0 * sig * sig) + 1j * p1 * x)
        f2 = norm_1d * np.exp(-((x - c2) ** 2) / (4.0 * sig * sig) + 1j * p2 * x)
        total *= complex(np.trapezoid(f1.conj() * f2, x))
    return total
