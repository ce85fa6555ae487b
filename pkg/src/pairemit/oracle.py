"""Brute-force ground truth for norms and kernels from explicit tensor states.

States are sparse linear combinations over a basis labeled by
``(cm1, cm2, el1, el2, photons)``: the CM label of each atom, its electronic
tag (g or e), and the occupation of the postselected photon mode (0 or 1).
Inner products contract CM factors through an overlap table, with orthonormal
electronic and photon sectors. The dipole action implements the first-order
emission step directly on the terms, so kernels computed here never touch the
closed-form expressions they are used to check.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from typing import Iterable, Literal

import numpy as np

from . import emission, states
from .errors import ExcitedLabelError, NoExcitedComponent, ZeroNormState
from .states import ExchangeSymmetry, OverlapTable, StateLabel

__all__ = [
    "TensorTerm",
    "TensorState",
    "GramContext",
    "build_state",
    "inner",
    "apply_dipole",
    "kernel_bruteforce",
    "random_psd_table",
    "run_campaign",
    "CampaignCheck",
    "CampaignReport",
]

# Coefficients below this magnitude are dropped during canonicalization.
PRUNE_TOL = 1e-15

_SQRT1_2 = 2.0 ** -0.5

StateName = Literal[
    "initial",
    "psi_abs",
    "phi_abs",
    "abs_superposition",
    "psi_omega",
    "phi_omega",
    "omega_sp",
]
KernelName = Literal["superposition", "mix_psi", "mix_phi"]

# Dipole action on the emitting atom: recoil image of the excited CM label.
_RECOIL_IMAGE = {
    StateLabel.PSI_STAR: StateLabel.PSI_SP,
    StateLabel.PHI_STAR: StateLabel.PHI_SP,
}
# Free flight imprinted on the spectator atom over the emission step.
_DRIFT_IMAGE = {
    StateLabel.PSI: StateLabel.PSI_BAR,
    StateLabel.PHI: StateLabel.PHI_BAR,
}


@dataclass(frozen=True)
class TensorTerm:
    """One basis term: CM labels and electronic tags per atom slot, photon count, coefficient."""

    cm1: StateLabel
    cm2: StateLabel
    el1: str
    el2: str
    photons: int
    coeff: complex

    def __post_init__(self) -> None:
        if self.el1 not in ("g", "e") or self.el2 not in ("g", "e"):
            raise ValueError(f"electronic tags must be 'g' or 'e', got {self.el1!r}, {self.el2!r}")
        if self.photons not in (0, 1):
            raise ValueError(f"photons must be 0 or 1, got {self.photons}")
        object.__setattr__(self, "coeff", complex(self.coeff))

    @property
    def signature(self) -> tuple:
        return (self.cm1, self.cm2, self.el1, self.el2, self.photons)


@dataclass(frozen=True)
class TensorState:
    """Sparse linear combination of tensor terms, canonical and duplicate-free."""

    terms: tuple[TensorTerm, ...]

    @classmethod
    def from_terms(cls, terms: Iterable[TensorTerm]) -> "TensorState":
        merged: dict[tuple, complex] = {}
        for t in terms:
            merged[t.signature] = merged.get(t.signature, 0.0) + t.coeff
        kept = sorted(
            ((sig, c) for sig, c in merged.items() if abs(c) > PRUNE_TOL),
            key=lambda item: (item[0][0].value, item[0][1].value, item[0][2], item[0][3], item[0][4]),
        )
        return cls(
            terms=tuple(
                TensorTerm(cm1, cm2, el1, el2, ph, c)
                for (cm1, cm2, el1, el2, ph), c in kept
            )
        )

    def scaled(self, factor: complex) -> "TensorState":
        return TensorState.from_terms(
            replace(t, coeff=t.coeff * factor) for t in self.terms
        )

    def swap_slots(self) -> "TensorState":
        """Exchange the two atom slots in every term (for symmetry checks)."""
        return TensorState.from_terms(
            TensorTerm(t.cm2, t.cm1, t.el2, t.el1, t.photons, t.coeff) for t in self.terms
        )


def _combine(*parts: TensorState) -> TensorState:
    return TensorState.from_terms(t for p in parts for t in p.terms)


@dataclass(frozen=True)
class GramContext:
    """Inner-product context: CM sector from a table; electronic and photon sectors orthonormal."""

    table: OverlapTable


def inner(a: TensorState, b: TensorState, ctx: GramContext) -> complex:
    """Sesquilinear contraction ``<a|b>``."""
    total = 0.0 + 0.0j
    for ta in a.terms:
        for tb in b.terms:
            if ta.el1 != tb.el1 or ta.el2 != tb.el2 or ta.photons != tb.photons:
                continue
            total += (
                ta.coeff.conjugate()
                * tb.coeff
                * ctx.table.entry(ta.cm1, tb.cm1)
                * ctx.table.entry(ta.cm2, tb.cm2)
            )
    return total


def _sym_pair(
    slot1: tuple[StateLabel, str],
    slot2: tuple[StateLabel, str],
    photons: int,
    prefactor: complex,
    sym: ExchangeSymmetry,
) -> TensorState:
    """``prefactor * (|slot1>|slot2> + sign |slot2>|slot1>)``."""
    (cma, ela), (cmb, elb) = slot1, slot2
    return TensorState.from_terms(
        [
            TensorTerm(cma, cmb, ela, elb, photons, prefactor),
            TensorTerm(cmb, cma, elb, ela, photons, sym.sign * prefactor),
        ]
    )


def build_state(which: StateName, ctx: GramContext, sym: ExchangeSymmetry) -> TensorState:
    """Explicit normalized state for the requested stage of the protocol.

    Normalization coefficients come from the closed forms, so
    ``inner(x, x, ctx) == 1`` is precisely the oracle check of those formulas.
    """
    L = StateLabel
    if which == "initial":
        coeff = states.n0(ctx.table, sym)
        return _sym_pair((L.PSI0, "g"), (L.PHI0, "g"), 0, coeff, sym)
    if which == "psi_abs":
        return _sym_pair((L.PSI_STAR, "e"), (L.PHI, "g"), 0, _SQRT1_2, sym)
    if which == "phi_abs":
        return _sym_pair((L.PSI, "g"), (L.PHI_STAR, "e"), 0, _SQRT1_2, sym)
    if which == "abs_superposition":
        coeff = states.n_abs(ctx.table, sym)
        return _combine(
            build_state("psi_abs", ctx, sym).scaled(coeff),
            build_state("phi_abs", ctx, sym).scaled(coeff),
        )
    if which == "psi_omega":
        coeff = states.n_psi_omega(ctx.table, sym)
        return _sym_pair((L.PSI_SP, "g"), (L.PHI_BAR, "g"), 1, coeff, sym)
    if which == "phi_omega":
        coeff = states.n_phi_omega(ctx.table, sym)
        return _sym_pair((L.PSI_BAR, "g"), (L.PHI_SP, "g"), 1, coeff, sym)
    if which == "omega_sp":
        coeff = states.n_omega_sp(ctx.table, sym)
        return _combine(
            build_state("psi_omega", ctx, sym).scaled(coeff),
            build_state("phi_omega", ctx, sym).scaled(coeff),
        )
    raise ValueError(f"unknown state name {which!r}")


def _dipole_slot(term: TensorTerm, slot: int) -> TensorTerm:
    """Emit from the given slot: e -> g with one photon created.

    The emitting atom's CM label is replaced by its emission-recoil image and
    the spectator's by its free-flight image, so the resulting term lives on
    the same labels as the post-emission states it will be contracted with.
    """
    cm = (term.cm1, term.cm2)
    el = (term.el1, term.el2)
    other = 1 - slot
    if cm[slot] not in _RECOIL_IMAGE:
        raise ExcitedLabelError(
            f"excited atom carries CM label {cm[slot]}, which has no emission-recoil image"
        )
    new_cm = list(cm)
    new_cm[slot] = _RECOIL_IMAGE[cm[slot]]
    new_cm[other] = _DRIFT_IMAGE.get(cm[other], cm[other])
    new_el = list(el)
    new_el[slot] = "g"
    return TensorTerm(new_cm[0], new_cm[1], new_el[0], new_el[1], 1, term.coeff)


def apply_dipole(state: TensorState) -> TensorState:
    """First-order emission step: every excited slot emits once into the photon mode.

    Only zero-photon terms participate (no double emission at first order);
    terms with both atoms in the ground state contribute nothing. The common
    ``-i t D / hbar`` prefactor is stripped, leaving unit coupling.
    """
    out: list[TensorTerm] = []
    excited_seen = False
    for term in state.terms:
        if term.photons != 0:
            continue
        for slot, el in enumerate((term.el1, term.el2)):
            if el == "e":
                excited_seen = True
                out.append(_dipole_slot(term, slot))
    if not excited_seen:
        raise NoExcitedComponent("state has no zero-photon excited component to emit from")
    return TensorState.from_terms(out)


def kernel_bruteforce(which: KernelName, ctx: GramContext, sym: ExchangeSymmetry) -> complex:
    """Emission kernel computed purely by state construction, dipole action, and contraction."""
    if which == "superposition":
        bra = build_state("omega_sp", ctx, sym)
        ket = apply_dipole(build_state("abs_superposition", ctx, sym))
    elif which == "mix_psi":
        bra = build_state("psi_omega", ctx, sym)
        ket = apply_dipole(build_state("psi_abs", ctx, sym))
    elif which == "mix_phi":
        bra = build_state("phi_omega", ctx, sym)
        ket = apply_dipole(build_state("phi_abs", ctx, sym))
    else:
        raise ValueError(f"unknown kernel name {which!r}")
    return inner(bra, ket, ctx)


def random_psd_table(seed: int, space_dim: int = 12, concentration: float = 0.0) -> OverlapTable:
    """Random positive-semidefinite overlap table, deterministic per seed.

    Draws ten unit vectors in a ``space_dim``-dimensional complex space and
    returns their Gram matrix. ``concentration`` in [0, 1) blends every draw
    toward one shared direction, pushing all overlaps toward 1.
    """
    rng = np.random.default_rng(seed)
    n = len(states.LABELS)
    v = rng.standard_normal((n, space_dim)) + 1j * rng.standard_normal((n, space_dim))
    if concentration > 0.0:
        base = rng.standard_normal(space_dim) + 1j * rng.standard_normal(space_dim)
        v = (1.0 - concentration) * v + concentration * base
    v /= np.linalg.norm(v, axis=1, keepdims=True)
    gram = v.conj() @ v.T
    return OverlapTable(gram)


@dataclass(frozen=True)
class CampaignCheck:
    """One residual from the oracle campaign."""

    seed: int
    statistics: str
    name: str
    closed_form: complex
    bruteforce: complex
    residual: float
    detail: str = ""


@dataclass(frozen=True)
class CampaignReport:
    """Aggregate outcome of the seeded oracle campaign."""

    n_seeds: int
    tolerance: float
    max_residuals: dict[str, float]
    failures: tuple[CampaignCheck, ...]

    @property
    def passed(self) -> bool:
        return not self.failures


def _expansion(state: TensorState) -> str:
    parts = [
        f"({t.coeff:.17g}) |{t.cm1.value},{t.el1}>|{t.cm2.value},{t.el2}>|{t.photons}>"
        for t in state.terms
    ]
    return " + ".join(parts)


def run_campaign(
    n_seeds: int = 100,
    tolerance: float = 1e-12,
    seed0: int = 0,
    space_dim: int = 12,
    concentration: float = 0.0,
) -> CampaignReport:
    """Check every closed-form coefficient and kernel against the oracle.

    For each seed and statistics: all seven buildable states must have unit
    norm (validating the five normalization closed forms), and the three
    closed-form kernels must match their brute-force counterparts to the
    relative tolerance. Mixture kernels are compared in their exchange-on
    form, which is what the explicit matrix element produces.
    """
    state_names: tuple[StateName, ...] = (
        "initial",
        "psi_abs",
        "phi_abs",
        "abs_superposition",
        "psi_omega",
        "phi_omega",
        "omega_sp",
    )
    kernel_closed = {
        "superposition": emission.kernel_superposition,
        "mix_psi": emission.kernel_mix_psi,
        "mix_phi": emission.kernel_mix_phi,
    }
    max_res: dict[str, float] = {}
    failures: list[CampaignCheck] = []
    for seed in range(seed0, seed0 + n_seeds):
        table = random_psd_table(seed, space_dim=space_dim, concentration=concentration)
        ctx = GramContext(table)
        for sym in (ExchangeSymmetry.BOSON, ExchangeSymmetry.FERMION):
            for name in state_names:
                st = build_state(name, ctx, sym)
                norm = inner(st, st, ctx)
                res = abs(norm - 1.0)
                key = f"norm:{name}"
                max_res[key] = max(max_res.get(key, 0.0), res)
                if res > tolerance:
                    failures.append(
                        CampaignCheck(
                            seed=seed,
                            statistics=sym.name.lower(),
                            name=key,
                            closed_form=1.0,
                            bruteforce=norm,
                            residual=res,
                            detail=_expansion(st),
                        )
                    )
            for kname, closed_fn in kernel_closed.items():
                closed = closed_fn(table, sym)
                brute = kernel_bruteforce(kname, ctx, sym)  # type: ignore[arg-type]
                res = abs(closed - brute) / max(abs(closed), 1e-300)
                key = f"kernel:{kname}"
                max_res[key] = max(max_res.get(key, 0.0), res)
                if res > tolerance:
                    ket = apply_dipole(
                        build_state(
                            {
                                "superposition": "abs_superposition",
                                "mix_psi": "psi_abs",
                                "mix_phi": "phi_abs",
                            }[kname],
                            ctx,
                            sym,
                        )
                    )
                    failures.append(
                        CampaignCheck(
                            seed=seed,
                            statistics=sym.name.lower(),
                            name=key,
                            closed_form=closed,
                            bruteforce=brute,
                            residual=res,
                            detail=f"post-dipole expansion: {_expansion(ket)}",
                        )
                    )
    return CampaignReport(
        n_seeds=n_seeds,
        tolerance=tolerance,
        max_residuals=max_res,
        failures=tuple(failures),
    )
