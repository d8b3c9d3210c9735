"""
Integration tests for result files of real runs.

Tests cover:
- CSV and JSON files of simulated and analytical curves read back identically
- Metadata survives the round trip
"""

from __future__ import annotations

import pytest

from risim.montecarlo import SimPlan, StopRule, run_sweep
from risim.results import provenance, read_rows, rows_from_sweep, rows_from_theory, write_rows
from risim.theory import TheoryRequest, evaluate


@pytest.fixture
def rows(qpsk):
    plan = SimPlan(
        "SM", "greedy", N=32, n_R=2, snr_grid_db=(-20.0, -15.0), constellation=qpsk, kappa=3.0,
        seed=11, stop=StopRule(min_bit_errors=50, max_bits=50_000), chunk_uses=512,
    )
    req = TheoryRequest("SM", "ML", N=32, n_R=2, snr_grid_db=(-20.0, -15.0), constellation=qpsk)
    return rows_from_sweep(run_sweep(plan)) + rows_from_theory(evaluate(req))


class TestRoundTrip:
    """Tests for reading back written files."""

    @pytest.mark.parametrize("suffix", ["csv", "json"])
    def test_rows(self, rows, out_dir, suffix):
        """Rows should read back exactly, floats included."""
        path = out_dir / f"bundle.{suffix}"
        write_rows(path, rows, provenance(job="test", seed=11), fmt=suffix)
        read, metadata = read_rows(path)
        assert read == rows
        assert metadata["job"] == "test"
        assert metadata["seed"] == 11

    def test_csv_equals_json(self, rows, out_dir):
        """Both forms should describe the same rows."""
        write_rows(out_dir / "a.csv", rows, fmt="csv")
        write_rows(out_dir / "a.json", rows, fmt="json")
        assert read_rows(out_dir / "a.csv")[0] == read_rows(out_dir / "a.json")[0]

    def test_sources(self, rows):
        """Simulated and analytical rows should be tagged."""
        assert {r.source for r in rows} == {"sim", "theory-bound"}
