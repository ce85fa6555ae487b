"""Emission kernels, golden-rule rates, and time-dependent emission curves.

A kernel is the dimensionless part of the first-order emission amplitude for
the fixed direction, after stripping the common ``-i t D / hbar`` prefactor.
Rates follow from the golden rule as ``gamma0 * |kernel|^2`` and every curve
is a saturating exponential ``n_emi(t)/n0 = 1 - exp(-rate * t)`` or an
equal-weight average of two of them.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .errors import GridMismatch, InvalidTimeGrid, OutOfRange
from .states import (
    ExchangeSymmetry,
    OverlapTable,
    StateLabel,
    n_abs,
    n_omega_sp,
    n_phi_omega,
    n_psi_omega,
)

__all__ = [
    "RadiativeCoupling",
    "RateSet",
    "EmissionCurve",
    "CurveComparison",
    "kernel_superposition",
    "kernel_mix_psi",
    "kernel_mix_phi",
    "rate",
    "rate_set",
    "emission_curve",
    "mixture_curve",
    "distinguishable_curves",
    "curve_set",
    "compare",
]

_SQRT2 = math.sqrt(2.0)


@dataclass(frozen=True)
class RadiativeCoupling:
    """Base emission rate for the fixed direction; dipole strength and hbar are absorbed here."""

    gamma0: float = 1.0

    def __post_init__(self) -> None:
        if not (self.gamma0 > 0.0 and math.isfinite(self.gamma0)):
            raise OutOfRange(f"gamma0 must be a positive finite rate, got {self.gamma0}")


@dataclass(frozen=True)
class RateSet:
    """Rates for one statistics: the coherent hypothesis and the two mixture branches."""

    gamma_sup: float
    gamma_mix_psi: float
    gamma_mix_phi: float


def kernel_superposition(table: OverlapTable, sym: ExchangeSymmetry) -> complex:
    """Emission kernel when the two-particle superposition persists.

    Both emission alternatives contribute coherently; each group couples the
    recoiled emitter state to the drifted spectator state, with exchange terms
    weighted by the statistics sign.
    """
    sign = sym.sign
    e = table.entry
    L = StateLabel
    naps = n_abs(table, sym)
    npsi = n_psi_omega(table, sym)
    nphi = n_phi_omega(table, sym)
    nsp = n_omega_sp(table, sym)
    group_psi = (
        2.0
        + 2.0 * e(L.PSI_SP, L.PSI_BAR) * e(L.PHI_BAR, L.PHI_SP)
        + sign * 2.0 * abs(e(L.PSI_SP, L.PHI_BAR)) ** 2
        + sign * 2.0 * e(L.PSI_SP, L.PHI_SP) * e(L.PHI_BAR, L.PSI_BAR)
    )
    group_phi = (
        2.0
        + 2.0 * e(L.PSI_BAR, L.PSI_SP) * e(L.PHI_SP, L.PHI_BAR)
        + sign * 2.0 * abs(e(L.PHI_SP, L.PSI_BAR)) ** 2
        + sign * 2.0 * e(L.PHI_SP, L.PSI_SP) * e(L.PSI_BAR, L.PHI_BAR)
    )
    return (naps * nsp / _SQRT2) * (npsi * group_psi + nphi * group_phi)


def kernel_mix_psi(
    table: OverlapTable, sym: ExchangeSymmetry, mixture_exchange: bool = True
) -> complex:
    """Emission kernel for the psi branch of the broken-superposition mixture.

    With ``mixture_exchange`` on, the exchange cross term between the emitter
    and the spectator is kept, giving ``sqrt(1 + sign * |<psi_sp|phi_bar>|^2)``;
    with it off the cross term is dropped and the kernel is exactly 1
    (single-atom emission, also the distinguishable-atom limit).
    """
    if not mixture_exchange:
        return 1.0 + 0.0j
    o = table.entry(StateLabel.PSI_SP, StateLabel.PHI_BAR)
    npsi = n_psi_omega(table, sym)
    return complex((npsi / _SQRT2) * (2.0 + sym.sign * 2.0 * abs(o) ** 2))


def kernel_mix_phi(
    table: OverlapTable, sym: ExchangeSymmetry, mixture_exchange: bool = True
) -> complex:
    """Mirror of :func:`kernel_mix_psi` for the phi branch."""
    if not mixture_exchange:
        return 1.0 + 0.0j
    o = table.entry(StateLabel.PHI_SP, StateLabel.PSI_BAR)
    nphi = n_phi_omega(table, sym)
    return complex((nphi / _SQRT2) * (2.0 + sym.sign * 2.0 * abs(o) ** 2))


def rate(kernel: complex, coupling: RadiativeCoupling) -> float:
    """Golden-rule rate ``gamma0 * |kernel|^2``."""
    return coupling.gamma0 * abs(kernel) ** 2


def rate_set(
    table: OverlapTable,
    sym: ExchangeSymmetry,
    coupling: RadiativeCoupling,
    mixture_exchange: bool = True,
) -> RateSet:
    """Superposition and mixture-branch rates for one statistics."""
    return RateSet(
        gamma_sup=rate(kernel_superposition(table, sym), coupling),
        gamma_mix_psi=rate(kernel_mix_psi(table, sym, mixture_exchange), coupling),
        gamma_mix_phi=rate(kernel_mix_phi(table, sym, mixture_exchange), coupling),
    )


def _check_times(times) -> np.ndarray:
    t = np.asarray(times, dtype=float)
    if t.ndim != 1 or t.size < 1:
        raise InvalidTimeGrid(f"times must be a nonempty 1D array, got shape {t.shape}")
    if t[0] < 0.0:
        raise InvalidTimeGrid("times must be nonnegative")
    if t.size > 1 and not np.all(np.diff(t) > 0.0):
        raise InvalidTimeGrid("times must be strictly ascending")
    return t


@dataclass(frozen=True)
class EmissionCurve:
    """Sampled fraction of emitted photons in the fixed direction, ``n_emi(t)/n0``."""

    times: np.ndarray
    values: np.ndarray
    label: str = ""

    def __post_init__(self) -> None:
        t = _check_times(self.times)
        v = np.asarray(self.values, dtype=float)
        if v.shape != t.shape:
            raise InvalidTimeGrid(
                f"values shape {v.shape} does not match times shape {t.shape}"
            )
        t.setflags(write=False)
        v.setflags(write=False)
        object.__setattr__(self, "times", t)
        object.__setattr__(self, "values", v)


def emission_curve(gamma: float, times, label: str = "") -> EmissionCurve:
    """Single-exponential saturation curve ``1 - exp(-gamma t)``."""
    if gamma < 0.0 or not math.isfinite(gamma):
        raise OutOfRange(f"gamma must be a finite nonnegative rate, got {gamma}")
    t = _check_times(times)
    return EmissionCurve(times=t, values=-np.expm1(-gamma * t), label=label)


def mixture_curve(gamma_psi: float, gamma_phi: float, times, label: str = "") -> EmissionCurve:
    """Equal-weight mixture curve: the pointwise mean of the two branch curves."""
    a = emission_curve(gamma_psi, times)
    b = emission_curve(gamma_phi, times)
    return EmissionCurve(times=a.times, values=0.5 * (a.values + b.values), label=label)


def distinguishable_curves(
    table: OverlapTable, coupling: RadiativeCoupling, times
) -> tuple[EmissionCurve, EmissionCurve]:
    """Both hypotheses for distinguishable atoms; the two returned curves coincide.

    Distinguishable atoms emit at distinguishable frequencies, so amplitudes
    never add: the exchange cross terms drop from both branches and the
    coherent-hypothesis pattern is the probability sum of the two branch
    curves, which is exactly the equal-weight mixture. The op exists to make
    that statement an executable check.
    """
    g_psi = rate(kernel_mix_psi(table, ExchangeSymmetry.BOSON, mixture_exchange=False), coupling)
    g_phi = rate(kernel_mix_phi(table, ExchangeSymmetry.BOSON, mixture_exchange=False), coupling)
    a = emission_curve(g_psi, times)
    b = emission_curve(g_phi, times)
    sup = EmissionCurve(times=a.times, values=0.5 * (a.values + b.values), label="sup_distinguishable")
    mix = mixture_curve(g_psi, g_phi, times, label="mix_distinguishable")
    return sup, mix


def curve_set(
    table: OverlapTable,
    coupling: RadiativeCoupling,
    times,
    mixture_exchange: bool = True,
) -> dict[str, EmissionCurve]:
    """Named curves for both statistics of the coherent hypothesis plus the mixture(s).

    With ``mixture_exchange`` on the mixture depends on the statistics and two
    curves come back (``mix_boson``, ``mix_fermion``); with it off the single
    statistics-independent ``mix_noexchange`` curve is returned.
    """
    t = _check_times(times)
    out: dict[str, EmissionCurve] = {}
    for name, sym in (("boson", ExchangeSymmetry.BOSON), ("fermion", ExchangeSymmetry.FERMION)):
        g = rate(kernel_superposition(table, sym), coupling)
        out[f"{name}_sup"] = emission_curve(g, t, label=f"{name}_sup")
    if mixture_exchange:
        for name, sym in (("boson", ExchangeSymmetry.BOSON), ("fermion", ExchangeSymmetry.FERMION)):
            g_psi = rate(kernel_mix_psi(table, sym, True), coupling)
            g_phi = rate(kernel_mix_phi(table, sym, True), coupling)
            out[f"mix_{name}"] = mixture_curve(g_psi, g_phi, t, label=f"mix_{name}")
    else:
        g_psi = rate(kernel_mix_psi(table, ExchangeSymmetry.BOSON, False), coupling)
        g_phi = rate(kernel_mix_phi(table, ExchangeSymmetry.BOSON, False), coupling)
        out["mix_noexchange"] = mixture_curve(g_psi, g_phi, t, label="mix_noexchange")
    return out


@dataclass(frozen=True)
class CurveComparison:
    """Pairwise summary of how far apart two curves on a shared grid are."""

    label_a: str
    label_b: str
    max_abs_diff: float
    time_of_max: float
    integrated_abs_diff: float


def compare(curves: Sequence[EmissionCurve]) -> list[CurveComparison]:
    """All pairwise maximum and integrated absolute differences."""
    if len(curves) < 2:
        return []
    ref = curves[0].times
    for c in curves[1:]:
        if not np.array_equal(c.times, ref):
            raise GridMismatch(
                f"curve {c.label!r} is not on the same time grid as {curves[0].label!r}"
            )
    out = []
    for i in range(len(curves)):
        for j in range(i + 1, len(curves)):
            diff = np.abs(curves[i].values - curves[j].values)
            imax = int(np.argmax(diff))
            out.append(
                CurveComparison(
                    label_a=curves[i].label,
                    label_b=curves[j].label,
                    max_abs_diff=float(diff[imax]),
                    time_of_max=float(ref[imax]),
                    integrated_abs_diff=float(np.trapezoid(diff, ref)),
                )
            )
    return out
