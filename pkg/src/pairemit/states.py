"""Labeled one-particle states, exchange statistics, and normalization coefficients.

The two-atom model is driven entirely by the pairwise inner products among ten
labeled center-of-mass (CM) states: the two initial states, their values at
absorption time, the photon-recoiled versions after absorption, the freely
evolved versions at emission time, and the emission-recoiled versions for a
fixed emission direction. All closed-form normalization coefficients of the
symmetrized two-atom states are functions of that table and of the exchange
sign (+1 bosons, -1 fermions).
"""

from __future__ import annotations

from dataclasses import InitVar, dataclass, field
from enum import Enum
from typing import Iterable, Mapping

import numpy as np

from .errors import InvalidTable, ZeroNormState

__all__ = [
    "ExchangeSymmetry",
    "StateLabel",
    "LABELS",
    "OverlapTable",
    "NormalizationSet",
    "ValidationReport",
    "n0",
    "n_abs",
    "n_psi_omega",
    "n_phi_omega",
    "n_omega_sp",
    "normalizations",
    "validate",
    "EPS_NORM",
    "PSD_TOL",
]

# Relative threshold below which a normalization radicand counts as zero.
EPS_NORM = 1e-12
# Minimum eigenvalue tolerated by strict positive-semidefiniteness validation.
PSD_TOL = -1e-10


class ExchangeSymmetry(Enum):
    """Exchange sign of the two-atom state: +1 for bosons, -1 for fermions."""

    BOSON = 1
    FERMION = -1

    @property
    def sign(self) -> int:
        return self.value


class StateLabel(Enum):
    """The ten labeled one-particle CM states.

    PSI0/PHI0   initial states of the two atoms
    PSI/PHI     states at absorption time
    PSI_STAR/PHI_STAR  after the absorption recoil
    PSI_BAR/PHI_BAR    freely evolved to emission time
    PSI_SP/PHI_SP      after the emission recoil, for the fixed direction
    """

    PSI0 = "psi0"
    PHI0 = "phi0"
    PSI = "psi"
    PHI = "phi"
    PSI_STAR = "psi_star"
    PHI_STAR = "phi_star"
    PSI_BAR = "psi_bar"
    PHI_BAR = "phi_bar"
    PSI_SP = "psi_sp"
    PHI_SP = "phi_sp"


LABELS: tuple[StateLabel, ...] = tuple(StateLabel)
_INDEX: dict[StateLabel, int] = {label: i for i, label in enumerate(LABELS)}

# Structural tolerances for accepting a raw matrix as a table.
_HERM_ATOL = 1e-9
_DIAG_ATOL = 1e-9
_BOUND_ATOL = 1e-12


@dataclass(frozen=True)
class OverlapTable:
    """Hermitian 10x10 table of inner products ``<a|b>`` among the labeled states.

    The matrix is stored exactly Hermitian with an exactly-unit diagonal;
    construction symmetrizes small floating-point asymmetries and rejects
    anything larger. Entry magnitudes may only exceed 1 when constructed with
    ``check_bounds=False`` (useful to exercise :func:`validate`); the
    normalization operations reject such tables.
    """

    matrix: np.ndarray
    check_bounds: InitVar[bool] = True

    def __post_init__(self, check_bounds: bool) -> None:
        m = np.asarray(self.matrix, dtype=complex)
        if m.shape != (len(LABELS), len(LABELS)):
            raise InvalidTable(f"expected a {len(LABELS)}x{len(LABELS)} matrix, got {m.shape}")
        if not np.allclose(m, m.conj().T, rtol=0.0, atol=_HERM_ATOL):
            raise InvalidTable("matrix is not Hermitian")
        m = 0.5 * (m + m.conj().T)
        diag = np.diagonal(m)
        if not np.allclose(diag, 1.0, rtol=0.0, atol=_DIAG_ATOL):
            raise InvalidTable("diagonal entries must all equal 1")
        np.fill_diagonal(m, 1.0)
        if check_bounds:
            mags = np.abs(m)
            if np.any(mags > 1.0 + _BOUND_ATOL):
                worst = float(mags.max())
                raise InvalidTable(f"entry magnitude {worst} exceeds 1")
            # Rounding in Gram constructions can land a hair above 1.
            over = mags > 1.0
            if np.any(over):
                m[over] /= mags[over]
        m.setflags(write=False)
        object.__setattr__(self, "matrix", m)

    @classmethod
    def identity(cls) -> "OverlapTable":
        """Table of mutually orthonormal states."""
        return cls(np.eye(len(LABELS), dtype=complex))

    @classmethod
    def from_entries(
        cls, entries: Mapping[tuple[StateLabel, StateLabel], complex]
    ) -> "OverlapTable":
        """Build a table from off-diagonal entries; unspecified pairs are orthogonal.

        Each given ``(a, b) -> z`` sets ``<a|b> = z`` and ``<b|a> = conj(z)``.
        Conflicting duplicate assignments raise ``InvalidTable``.
        """
        m = np.eye(len(LABELS), dtype=complex)
        seen: set[tuple[int, int]] = set()
        for (a, b), z in entries.items():
            i, j = _INDEX[a], _INDEX[b]
            z = complex(z)
            if i == j:
                if z != 1:
                    raise InvalidTable(f"diagonal entry {a} must be 1, got {z}")
                continue
            key = (min(i, j), max(i, j))
            if key in seen and m[i, j] != z:
                raise InvalidTable(f"conflicting assignments for pair ({a}, {b})")
            m[i, j] = z
            m[j, i] = z.conjugate()
            seen.add(key)
        return cls(m)

    def entry(self, a: StateLabel, b: StateLabel) -> complex:
        """Return ``<a|b>``."""
        return complex(self.matrix[_INDEX[a], _INDEX[b]])

    def conjugated(self) -> "OverlapTable":
        """Table with every entry conjugated (equivalently, (a,b) and (b,a) swapped)."""
        return OverlapTable(self.matrix.conj(), check_bounds=False)

    def as_matrix(self) -> np.ndarray:
        return self.matrix.copy()


@dataclass(frozen=True)
class NormalizationSet:
    """The five normalization coefficients for one table and one statistics."""

    n0: float
    n_abs: float
    n_psi_omega: float
    n_phi_omega: float
    n_omega_sp: float


@dataclass(frozen=True)
class ValidationReport:
    """Outcome of table validation; callers decide what to do with failures."""

    hermitian: bool
    unit_diagonal: bool
    bound_violations: tuple[tuple[StateLabel, StateLabel, float], ...]
    strict: bool
    min_eigenvalue: float | None = None

    @property
    def psd(self) -> bool | None:
        if self.min_eigenvalue is None:
            return None
        return self.min_eigenvalue >= PSD_TOL

    @property
    def ok(self) -> bool:
        basic = self.hermitian and self.unit_diagonal and not self.bound_violations
        return basic and (self.psd is not False)


def validate(table: OverlapTable, strict: bool = False) -> ValidationReport:
    """Report Hermiticity, unit diagonal, and bound violations of a table.

    In strict mode the minimum eigenvalue of the full Gram matrix is also
    reported; a realizable set of states must have a positive-semidefinite
    Gram matrix (within ``PSD_TOL``).
    """
    m = table.matrix
    hermitian = bool(np.array_equal(m, m.conj().T))
    unit_diagonal = bool(np.all(np.diagonal(m) == 1.0))
    violations = []
    mags = np.abs(m)
    for i, a in enumerate(LABELS):
        for j, b in enumerate(LABELS):
            if j <= i:
                continue
            if mags[i, j] > 1.0 + _BOUND_ATOL:
                violations.append((a, b, float(mags[i, j])))
    min_eig = None
    if strict:
        min_eig = float(np.linalg.eigvalsh(m).min())
    return ValidationReport(
        hermitian=hermitian,
        unit_diagonal=unit_diagonal,
        bound_violations=tuple(violations),
        strict=strict,
        min_eigenvalue=min_eig,
    )


def _require_valid(table: OverlapTable) -> None:
    report = validate(table, strict=False)
    if not report.ok:
        raise InvalidTable(f"table failed validation: {report}")


def _inverse_sqrt(radicand: float, context: str) -> float:
    if not np.isfinite(radicand) or radicand <= 2.0 * EPS_NORM:
        raise ZeroNormState(
            f"{context}: radicand {radicand} is non-positive within tolerance; "
            "the symmetrized state has (near) zero norm"
        )
    return float(radicand ** -0.5)


def n0(table: OverlapTable, sym: ExchangeSymmetry) -> float:
    """Normalization of the initial symmetrized pair state.

    ``(2 + sign * 2|<psi0|phi0>|^2)^(-1/2)``; for fermions this diverges as the
    two initial states become identical (Pauli exclusion) and raises
    ``ZeroNormState``.
    """
    _require_valid(table)
    o = table.entry(StateLabel.PSI0, StateLabel.PHI0)
    rad = 2.0 + sym.sign * 2.0 * abs(o) ** 2
    return _inverse_sqrt(rad, "n0")


def n_abs(table: OverlapTable, sym: ExchangeSymmetry) -> float:
    """Normalization of the post-absorption superposition of the two absorption alternatives.

    ``(2 + sign * 2 Re(<psi*|phi*><phi|psi>))^(-1/2)``.
    """
    _require_valid(table)
    cross = table.entry(StateLabel.PSI_STAR, StateLabel.PHI_STAR) * table.entry(
        StateLabel.PHI, StateLabel.PSI
    )
    rad = 2.0 + sym.sign * 2.0 * cross.real
    return _inverse_sqrt(rad, "n_abs")


def n_psi_omega(table: OverlapTable, sym: ExchangeSymmetry) -> float:
    """Normalization of the emission alternative where the recoiled psi-branch atom emits."""
    _require_valid(table)
    o = table.entry(StateLabel.PSI_SP, StateLabel.PHI_BAR)
    rad = 2.0 + sym.sign * 2.0 * abs(o) ** 2
    return _inverse_sqrt(rad, "n_psi_omega")


def n_phi_omega(table: OverlapTable, sym: ExchangeSymmetry) -> float:
    """Normalization of the emission alternative where the recoiled phi-branch atom emits."""
    _require_valid(table)
    o = table.entry(StateLabel.PHI_SP, StateLabel.PSI_BAR)
    rad = 2.0 + sym.sign * 2.0 * abs(o) ** 2
    return _inverse_sqrt(rad, "n_phi_omega")


def n_omega_sp(table: OverlapTable, sym: ExchangeSymmetry) -> float:
    """Normalization of the coherent sum of the two emission alternatives.

    ``(2 + 4 N_psi N_phi Re(<psi_sp|psi_bar><phi_bar|phi_sp>
    + sign * <psi_sp|phi_sp><phi_bar|psi_bar>))^(-1/2)``. The two exchange
    signs enter only through the second product and through the single-branch
    coefficients.
    """
    npsi = n_psi_omega(table, sym)
    nphi = n_phi_omega(table, sym)
    direct = table.entry(StateLabel.PSI_SP, StateLabel.PSI_BAR) * table.entry(
        StateLabel.PHI_BAR, StateLabel.PHI_SP
    )
    exchanged = table.entry(StateLabel.PSI_SP, StateLabel.PHI_SP) * table.entry(
        StateLabel.PHI_BAR, StateLabel.PSI_BAR
    )
    rad = 2.0 + 4.0 * npsi * nphi * (direct + sym.sign * exchanged).real
    return _inverse_sqrt(rad, "n_omega_sp")


def normalizations(table: OverlapTable, sym: ExchangeSymmetry) -> NormalizationSet:
    """All five normalization coefficients for one statistics."""
    return NormalizationSet(
        n0=n0(table, sym),
        n_abs=n_abs(table, sym),
        n_psi_omega=n_psi_omega(table, sym),
        n_phi_omega=n_phi_omega(table, sym),
        n_omega_sp=n_omega_sp(table, sym),
    )
