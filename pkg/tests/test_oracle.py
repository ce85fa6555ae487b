"""Brute-force tensor oracle: explicit states, dipole action, kernel equivalence."""

import numpy as np
import pytest

from pairemit import (
    ExcitedLabelError,
    ExchangeSymmetry,
    GramContext,
    NoExcitedComponent,
    OverlapTable,
    StateLabel,
    TensorState,
    TensorTerm,
    apply_dipole,
    build_state,
    fig2_table,
    inner,
    kernel_bruteforce,
    kernel_mix_phi,
    kernel_mix_psi,
    kernel_superposition,
    random_psd_table,
    run_campaign,
    validate,
)
from _reference import reference_chain

L = StateLabel
BOSON = ExchangeSymmetry.BOSON
FERMION = ExchangeSymmetry.FERMION
SQRT1_2 = 2.0**-0.5

STATE_NAMES = (
    "initial",
    "psi_abs",
    "phi_abs",
    "abs_superposition",
    "psi_omega",
    "phi_omega",
    "omega_sp",
)


def ctx_for(table: OverlapTable) -> GramContext:
    return GramContext(table)


class TestBuildState:
    def test_initial_orthogonal(self):
        ctx = ctx_for(OverlapTable.identity())
        for sym in (BOSON, FERMION):
            state = build_state("initial", ctx, sym)
            assert len(state.terms) == 2
            coeffs = sorted(t.coeff.real for t in state.terms)
            assert coeffs == pytest.approx(sorted([SQRT1_2, sym.sign * SQRT1_2]))
            assert all(t.el1 == t.el2 == "g" and t.photons == 0 for t in state.terms)

    def test_psi_abs_structure(self):
        ctx = ctx_for(OverlapTable.identity())
        state = build_state("psi_abs", ctx, FERMION)
        by_sig = {t.signature: t.coeff for t in state.terms}
        assert by_sig[(L.PSI_STAR, L.PHI, "e", "g", 0)] == pytest.approx(SQRT1_2)
        assert by_sig[(L.PHI, L.PSI_STAR, "g", "e", 0)] == pytest.approx(-SQRT1_2)

    @pytest.mark.parametrize("name", STATE_NAMES)
    @pytest.mark.parametrize("sym", [BOSON, FERMION])
    def test_unit_norm_everywhere(self, name, sym):
        for seed in range(5):
            ctx = ctx_for(random_psd_table(seed))
            state = build_state(name, ctx, sym)
            assert inner(state, state, ctx) == pytest.approx(1.0, abs=1e-12)

    @pytest.mark.parametrize("sym", [BOSON, FERMION])
    def test_exchange_consistency(self, sym):
        # Swapping the two atom slots must reproduce the state times the sign.
        ctx = ctx_for(random_psd_table(8))
        for name in STATE_NAMES:
            state = build_state(name, ctx, sym)
            swapped = state.swap_slots()
            expected = state.scaled(sym.sign)
            assert swapped == expected

    def test_unknown_name(self):
        with pytest.raises(ValueError):
            build_state("nope", ctx_for(OverlapTable.identity()), BOSON)


class TestInner:
    def test_orthonormal_labels_sum_of_squares(self):
        ctx = ctx_for(OverlapTable.identity())
        state = TensorState.from_terms(
            [
                TensorTerm(L.PSI, L.PHI, "g", "g", 0, 1.0),
                TensorTerm(L.PHI, L.PSI, "g", "g", 0, 1.0),
                TensorTerm(L.PSI_STAR, L.PHI, "e", "g", 0, 1.0),
            ]
        )
        assert inner(state, state, ctx) == pytest.approx(3.0)

    def test_cross_inner_reproduces_absorption_structure(self):
        # <psi branch|phi branch> contracts to sign * <psi*|phi*><phi|psi>.
        table = random_psd_table(4)
        ctx = ctx_for(table)
        for sym in (BOSON, FERMION):
            a = build_state("psi_abs", ctx, sym)
            b = build_state("phi_abs", ctx, sym)
            expected = sym.sign * table.entry(L.PSI_STAR, L.PHI_STAR) * table.entry(L.PHI, L.PSI)
            assert inner(a, b, ctx) == pytest.approx(expected, abs=1e-14)

    def test_conjugate_symmetry(self):
        ctx = ctx_for(random_psd_table(5))
        rng = np.random.default_rng(0)
        labels = list(L)
        for _ in range(10):
            terms_a = [
                TensorTerm(
                    rng.choice(labels), rng.choice(labels), "g", "g", 0,
                    complex(rng.normal(), rng.normal()),
                )
                for _ in range(3)
            ]
            terms_b = [
                TensorTerm(
                    rng.choice(labels), rng.choice(labels), "g", "g", 0,
                    complex(rng.normal(), rng.normal()),
                )
                for _ in range(3)
            ]
            a, b = TensorState.from_terms(terms_a), TensorState.from_terms(terms_b)
            assert inner(a, b, ctx) == pytest.approx(np.conj(inner(b, a, ctx)), abs=1e-13)


class TestCanonicalization:
    def test_duplicates_merge(self):
        state = TensorState.from_terms(
            [
                TensorTerm(L.PSI, L.PHI, "g", "g", 0, 0.25),
                TensorTerm(L.PSI, L.PHI, "g", "g", 0, 0.5),
            ]
        )
        assert len(state.terms) == 1
        assert state.terms[0].coeff == 0.75

    def test_tiny_coefficients_pruned(self):
        state = TensorState.from_terms(
            [
                TensorTerm(L.PSI, L.PHI, "g", "g", 0, 1.0),
                TensorTerm(L.PHI, L.PSI, "g", "g", 0, 1e-16),
            ]
        )
        assert len(state.terms) == 1

    def test_term_validation(self):
        with pytest.raises(ValueError):
            TensorTerm(L.PSI, L.PHI, "x", "g", 0, 1.0)
        with pytest.raises(ValueError):
            TensorTerm(L.PSI, L.PHI, "g", "g", 2, 1.0)


class TestDipole:
    def test_single_term_action(self):
        state = TensorState.from_terms([TensorTerm(L.PSI_STAR, L.PHI, "e", "g", 0, 0.8)])
        (term,) = apply_dipole(state).terms
        assert term.signature == (L.PSI_SP, L.PHI_BAR, "g", "g", 1)
        assert term.coeff == 0.8

    def test_second_slot_action(self):
        state = TensorState.from_terms([TensorTerm(L.PSI, L.PHI_STAR, "g", "e", 0, 1.0)])
        (term,) = apply_dipole(state).terms
        assert term.signature == (L.PSI_BAR, L.PHI_SP, "g", "g", 1)

    def test_ground_state_rejected(self):
        state = TensorState.from_terms([TensorTerm(L.PSI, L.PHI, "g", "g", 0, 1.0)])
        with pytest.raises(NoExcitedComponent):
            apply_dipole(state)

    def test_photon_already_present_rejected(self):
        state = TensorState.from_terms([TensorTerm(L.PSI_STAR, L.PHI, "e", "g", 1, 1.0)])
        with pytest.raises(NoExcitedComponent):
            apply_dipole(state)

    def test_unsupported_excited_label_rejected(self):
        state = TensorState.from_terms([TensorTerm(L.PSI, L.PHI, "e", "g", 0, 1.0)])
        with pytest.raises(ExcitedLabelError):
            apply_dipole(state)


class TestKernelEquivalence:
    @pytest.mark.parametrize("sym,sign", [(BOSON, 1), (FERMION, -1)])
    def test_benchmark_superposition_kernel(self, sym, sign):
        ctx = ctx_for(fig2_table(0.7))
        expected = reference_chain(0.7, sign)["kernel_sup"]
        assert kernel_bruteforce("superposition", ctx, sym) == pytest.approx(expected, rel=1e-12)

    def test_benchmark_mixture_kernel(self):
        ctx = ctx_for(fig2_table(0.7))
        expected = reference_chain(0.7, -1)["kernel_mix"]
        assert kernel_bruteforce("mix_psi", ctx, FERMION) == pytest.approx(expected, rel=1e-12)

    def test_trivial_limit_is_sqrt_two(self):
        table = OverlapTable.from_entries(
            {(L.PSI_SP, L.PSI_BAR): 1.0, (L.PHI_SP, L.PHI_BAR): 1.0}
        )
        ctx = ctx_for(table)
        for sym in (BOSON, FERMION):
            assert kernel_bruteforce("superposition", ctx, sym) == pytest.approx(
                np.sqrt(2.0), rel=1e-12
            )

    @pytest.mark.parametrize("sym", [BOSON, FERMION])
    def test_closed_forms_match_bruteforce_on_random_tables(self, sym):
        for seed in range(10):
            table = random_psd_table(seed)
            ctx = ctx_for(table)
            cases = [
                (kernel_superposition(table, sym), "superposition"),
                (kernel_mix_psi(table, sym, True), "mix_psi"),
                (kernel_mix_phi(table, sym, True), "mix_phi"),
            ]
            for closed, name in cases:
                brute = kernel_bruteforce(name, ctx, sym)
                assert abs(closed - brute) <= 1e-12 * abs(closed)

    def test_unknown_kernel_name(self):
        with pytest.raises(ValueError):
            kernel_bruteforce("nope", ctx_for(OverlapTable.identity()), BOSON)


class TestRandomTables:
    def test_deterministic_per_seed(self):
        assert np.array_equal(random_psd_table(123).matrix, random_psd_table(123).matrix)
        assert not np.array_equal(random_psd_table(1).matrix, random_psd_table(2).matrix)

    @pytest.mark.parametrize("seed", [0, 1, 17])
    def test_strict_validation_passes(self, seed):
        report = validate(random_psd_table(seed), strict=True)
        assert report.ok
        assert report.min_eigenvalue >= -1e-10

    def test_concentration_pushes_overlaps_up(self):
        loose = random_psd_table(0)
        tight = random_psd_table(0, concentration=0.9)
        assert abs(tight.entry(L.PSI0, L.PHI0)) > abs(loose.entry(L.PSI0, L.PHI0))


class TestCampaign:
    def test_small_campaign_passes(self):
        report = run_campaign(n_seeds=10, tolerance=1e-12)
        assert report.passed
        assert max(report.max_residuals.values()) < 1e-13
        assert set(report.max_residuals) == {
            "norm:initial",
            "norm:psi_abs",
            "norm:phi_abs",
            "norm:abs_superposition",
            "norm:psi_omega",
            "norm:phi_omega",
            "norm:omega_sp",
            "kernel:superposition",
            "kernel:mix_psi",
            "kernel:mix_phi",
        }

    def test_failures_are_itemized_with_expansions(self):
        # An absurdly tight tolerance forces the failure path.
        report = run_campaign(n_seeds=2, tolerance=1e-30)
        assert not report.passed
        assert report.failures
        assert any("|" in f.detail for f in report.failures)
