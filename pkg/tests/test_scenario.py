"""Benchmark parametrization: tables, curve families, rate sweeps."""

import numpy as np
import pytest

from pairemit import (
    ExchangeSymmetry,
    Fig2Params,
    OutOfRange,
    StateLabel,
    ZeroNormState,
    fig2_curves,
    fig2_table,
    n_abs,
    scan,
    validate,
)
from _reference import reference_rates

L = StateLabel
BOSON = ExchangeSymmetry.BOSON
FERMION = ExchangeSymmetry.FERMION


class TestTable:
    def test_benchmark_point_entries(self):
        t = fig2_table(0.7)
        assert t.entry(L.PSI, L.PHI) == pytest.approx(0.7, rel=1e-15)
        assert t.entry(L.PSI_STAR, L.PHI_STAR) == pytest.approx(0.679, rel=1e-12)
        assert t.entry(L.PSI_SP, L.PHI_SP) == pytest.approx(0.6111, rel=1e-12)
        assert t.entry(L.PSI_SP, L.PSI) == pytest.approx(0.9, rel=1e-15)
        assert t.entry(L.PHI_SP, L.PHI) == pytest.approx(0.9, rel=1e-15)
        assert t.entry(L.PSI_SP, L.PHI) == pytest.approx(0.609, rel=1e-12)
        assert t.entry(L.PHI_SP, L.PSI) == pytest.approx(0.609, rel=1e-12)

    def test_barred_states_equal_unbarred(self):
        t = fig2_table(0.55)
        assert t.entry(L.PSI_BAR, L.PHI_BAR) == t.entry(L.PSI, L.PHI)
        assert t.entry(L.PSI_SP, L.PSI_BAR) == t.entry(L.PSI_SP, L.PSI)
        assert t.entry(L.PSI, L.PSI_BAR) == 1.0
        assert t.entry(L.PSI0, L.PSI) == 1.0

    def test_zero_overlap_point(self):
        t = fig2_table(0.0)
        for a in (L.PSI0, L.PSI, L.PSI_STAR, L.PSI_BAR, L.PSI_SP):
            for b in (L.PHI0, L.PHI, L.PHI_STAR, L.PHI_BAR, L.PHI_SP):
                assert t.entry(a, b) == 0.0
        assert t.entry(L.PSI_SP, L.PSI) == 0.9
        assert t.entry(L.PHI_SP, L.PHI_BAR) == 0.9

    def test_identical_atom_limit(self):
        t = fig2_table(1.0)
        assert t.entry(L.PSI_STAR, L.PHI_STAR) == pytest.approx(1.0, rel=1e-15)
        with pytest.raises(ZeroNormState):
            n_abs(t, FERMION)

    def test_structural_validity(self):
        report = validate(fig2_table(0.7))
        assert report.ok

    def test_entries_monotone_in_s(self):
        grid = np.linspace(0.0, 1.0, 21)
        previous = None
        for s in grid:
            m = fig2_table(float(s)).matrix.real
            if previous is not None:
                assert np.all(m - previous >= -1e-15)
            previous = m

    def test_out_of_range(self):
        with pytest.raises(OutOfRange):
            fig2_table(-0.1)
        with pytest.raises(OutOfRange):
            fig2_table(1.1)


class TestParams:
    def test_validation(self):
        with pytest.raises(OutOfRange):
            Fig2Params(s=1.0)
        with pytest.raises(OutOfRange):
            Fig2Params(s=-0.2)
        with pytest.raises(OutOfRange):
            Fig2Params(s=0.5, steps=1)
        with pytest.raises(OutOfRange):
            Fig2Params(s=0.5, t_max=0.0)
        with pytest.raises(OutOfRange):
            Fig2Params(s=0.5, gamma0=-1.0)

    def test_default_grid(self):
        p = Fig2Params(s=0.7)
        assert p.times.shape == (200,)
        assert p.times[0] == 0.0
        assert p.times[-1] == 5.0


class TestCurves:
    def test_benchmark_rates_via_curves(self):
        # Curve level: value at t equals 1 - exp(-rate t) for the chain rates.
        params = Fig2Params(s=0.7, t_max=1.0, steps=2)
        curves = fig2_curves(params, mixture_exchange=True)
        ref = reference_rates(0.7)
        for name in ("boson_sup", "fermion_sup", "mix_boson", "mix_fermion"):
            expected = 1.0 - np.exp(-ref[name])
            assert curves[name].values[-1] == pytest.approx(expected, rel=1e-12)
        off = fig2_curves(params, mixture_exchange=False)
        assert off["mix_noexchange"].values[-1] == pytest.approx(1.0 - np.exp(-1.0), rel=1e-12)

    def test_zero_overlap_collapses_statistics(self):
        curves = fig2_curves(Fig2Params(s=0.0))
        assert np.array_equal(curves["boson_sup"].values, curves["fermion_sup"].values)

    def test_curves_start_at_zero_and_grow(self):
        for mixture_exchange in (True, False):
            curves = fig2_curves(Fig2Params(s=0.4), mixture_exchange=mixture_exchange)
            for curve in curves.values():
                assert curve.values[0] == 0.0
                assert np.all(np.diff(curve.values) >= 0.0)
                assert np.all((curve.values >= 0.0) & (curve.values <= 1.0))

    def test_curve_labels(self):
        curves = fig2_curves(Fig2Params(s=0.7))
        assert set(curves) == {"boson_sup", "fermion_sup", "mix_boson", "mix_fermion"}
        assert all(curves[name].label == name for name in curves)


class TestScan:
    def test_single_point_matches_curves(self):
        (row,) = scan(0.7, 0.7, 1)
        ref = reference_rates(0.7)
        assert row["s"] == 0.7
        assert row["boson_sup"] == pytest.approx(ref["boson_sup"], rel=1e-12)
        assert row["fermion_sup"] == pytest.approx(ref["fermion_sup"], rel=1e-12)
        assert row["mix_boson_psi"] == pytest.approx(ref["mix_boson"], rel=1e-12)
        assert row["mix_fermion_phi"] == pytest.approx(ref["mix_fermion"], rel=1e-12)

    def test_degenerate_range_gives_one_row(self):
        rows = scan(0.3, 0.3, 7)
        assert len(rows) == 1

    def test_grid_scan_finite_positive_with_ordering(self):
        rows = scan(0.0, 0.9, 10)
        assert len(rows) == 10
        for row in rows:
            for key, value in row.items():
                assert np.isfinite(value)
                if key != "s":
                    assert value > 0.0
            if row["s"] > 0.0:
                assert row["fermion_sup"] > row["boson_sup"]
            else:
                assert row["fermion_sup"] == pytest.approx(row["boson_sup"], rel=1e-12)

    def test_exchange_off_columns(self):
        rows = scan(0.1, 0.5, 3, mixture_exchange=False)
        for row in rows:
            assert set(row) == {"s", "boson_sup", "fermion_sup", "mix_noexchange"}
            assert row["mix_noexchange"] == 1.0

    def test_out_of_range(self):
        with pytest.raises(OutOfRange):
            scan(0.5, 0.2, 5)
        with pytest.raises(OutOfRange):
            scan(0.0, 1.0, 5)
        with pytest.raises(OutOfRange):
            scan(0.0, 0.5, 0)
