"""Reference one-parameter benchmark: overlap tables, curves, and rate sweeps.

The whole table is driven by the single scalar product ``s = <psi|phi>``
between the two atoms at absorption time. Recoils are small: every
self-recoil overlap is 0.9 and the recoil cross overlaps interpolate so that
``s -> 1`` sends the starred states to coincidence as well. Drift is zero, so
the barred states equal the unbarred ones. This is the scenario behind the
``fig2`` CLI command.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .emission import (
    EmissionCurve,
    ExchangeSymmetry,
    RadiativeCoupling,
    curve_set,
    kernel_mix_phi,
    kernel_mix_psi,
    kernel_superposition,
    rate,
)
from .errors import OutOfRange
from .states import LABELS, OverlapTable, StateLabel

__all__ = ["Fig2Params", "fig2_table", "fig2_curves", "scan"]

_PSI_LINE = (StateLabel.PSI0, StateLabel.PSI, StateLabel.PSI_BAR)
_PHI_LINE = (StateLabel.PHI0, StateLabel.PHI, StateLabel.PHI_BAR)
_PSI_RECOIL = (StateLabel.PSI_STAR, StateLabel.PSI_SP)
_PHI_RECOIL = (StateLabel.PHI_STAR, StateLabel.PHI_SP)


@dataclass(frozen=True)
class Fig2Params:
    """Benchmark-run parameters; ``s = 1`` is rejected because the fermionic
    pair state degenerates there."""

    s: float
    gamma0: float = 1.0
    t_max: float = 5.0
    steps: int = 200

    def __post_init__(self) -> None:
        if not (0.0 <= self.s < 1.0):
            raise OutOfRange(
                f"s must lie in [0, 1), got {self.s} "
                "(s = 1 makes the fermion pair state zero-norm)"
            )
        if not (self.gamma0 > 0.0):
            raise OutOfRange(f"gamma0 must be positive, got {self.gamma0}")
        if not (self.t_max > 0.0):
            raise OutOfRange(f"t_max must be positive, got {self.t_max}")
        if self.steps < 2:
            raise OutOfRange(f"steps must be at least 2, got {self.steps}")

    @property
    def times(self) -> np.ndarray:
        return np.linspace(0.0, self.t_max, self.steps)


def fig2_table(s: float) -> OverlapTable:
    """Overlap table of the benchmark parametrization at overlap ``s``.

    Listed assignments: ``<psi|phi> = s``, ``<psi*|phi*> = (0.9 + 0.1 s) s``,
    ``<psi_sp|phi_sp> = 0.9 <psi*|phi*>``, ``<psi_sp|psi> = <phi_sp|phi> = 0.9``
    and ``<psi_sp|phi> = <phi_sp|psi> = (0.8 + 0.1 s) s``. The barred and
    initial states equal the unbarred ones (zero drift), and the absorption
    recoil entries <psi*|psi>, <psi*|phi>, ... (consumed by no implemented
    formula) are filled with the same 0.9 / (0.8 + 0.1 s) s pattern by analogy.
    All entries are real, continuous, and nondecreasing in ``s``.
    """
    if not (0.0 <= s <= 1.0):
        raise OutOfRange(f"s must lie in [0, 1], got {s}")
    cross = s
    star_star = (0.9 + 0.1 * s) * s
    sp_sp = 0.9 * star_star
    recoil_self = 0.9
    recoil_cross = (0.8 + 0.1 * s) * s

    n = len(LABELS)
    m = np.eye(n, dtype=complex)

    def put(a: StateLabel, b: StateLabel, value: float) -> None:
        i, j = LABELS.index(a), LABELS.index(b)
        m[i, j] = value
        m[j, i] = value

    for u in _PSI_LINE:
        for u2 in _PSI_LINE:
            if u is not u2:
                put(u, u2, 1.0)
    for v in _PHI_LINE:
        for v2 in _PHI_LINE:
            if v is not v2:
                put(v, v2, 1.0)
    for u in _PSI_LINE:
        for v in _PHI_LINE:
            put(u, v, cross)
    for r in _PSI_RECOIL:
        for u in _PSI_LINE:
            put(r, u, recoil_self)
        for v in _PHI_LINE:
            put(r, v, recoil_cross)
    for r in _PHI_RECOIL:
        for v in _PHI_LINE:
            put(r, v, recoil_self)
        for u in _PSI_LINE:
            put(r, u, recoil_cross)
    put(StateLabel.PSI_STAR, StateLabel.PHI_STAR, star_star)
    put(StateLabel.PSI_SP, StateLabel.PHI_SP, sp_sp)
    put(StateLabel.PSI_SP, StateLabel.PSI_STAR, recoil_self)
    put(StateLabel.PHI_SP, StateLabel.PHI_STAR, recoil_self)
    put(StateLabel.PSI_SP, StateLabel.PHI_STAR, recoil_cross)
    put(StateLabel.PHI_SP, StateLabel.PSI_STAR, recoil_cross)
    return OverlapTable(m)


def fig2_curves(params: Fig2Params, mixture_exchange: bool = True) -> dict[str, EmissionCurve]:
    """Labeled emission curves of the benchmark scenario on a uniform grid."""
    table = fig2_table(params.s)
    coupling = RadiativeCoupling(params.gamma0)
    return curve_set(table, coupling, params.times, mixture_exchange=mixture_exchange)


def scan(
    s_from: float,
    s_to: float,
    n_points: int,
    mixture_exchange: bool = True,
    gamma0: float = 1.0,
) -> list[dict[str, float]]:
    """Rates for every hypothesis/statistics over a uniform grid of ``s`` values.

    Returns one row per grid point with keys ``s``, ``boson_sup``,
    ``fermion_sup`` and either the four exchange-on mixture-branch rates or
    the single ``mix_noexchange`` rate.
    """
    if not (0.0 <= s_from <= s_to < 1.0):
        raise OutOfRange(f"need 0 <= s_from <= s_to < 1, got [{s_from}, {s_to}]")
    if n_points < 1:
        raise OutOfRange(f"n_points must be at least 1, got {n_points}")
    grid = [s_from] if s_from == s_to else [float(x) for x in np.linspace(s_from, s_to, n_points)]
    coupling = RadiativeCoupling(gamma0)
    rows = []
    both = (("boson", ExchangeSymmetry.BOSON), ("fermion", ExchangeSymmetry.FERMION))
    for s in grid:
        table = fig2_table(s)
        row: dict[str, float] = {"s": s}
        for name, sym in both:
            row[f"{name}_sup"] = rate(kernel_superposition(table, sym), coupling)
        if mixture_exchange:
            for name, sym in both:
                row[f"mix_{name}_psi"] = rate(kernel_mix_psi(table, sym, True), coupling)
                row[f"mix_{name}_phi"] = rate(kernel_mix_phi(table, sym, True), coupling)
        else:
            row["mix_noexchange"] = rate(
                kernel_mix_psi(table, ExchangeSymmetry.BOSON, False), coupling
            )
        rows.append(row)
    return rows
