"""Tests for cooperation-region sweeps over the (p, delta) plane."""

import numpy as np
import pytest

from ranklash import (
    CostModel,
    Regime,
    SweepSpec,
    SweepStrategy,
    boundary_extract,
    region_area,
    region_sweep,
)


def grim_spec(c=0.1, beta=0.4, n=401):
    return SweepSpec(
        strategy=SweepStrategy.GRIM,
        cost=CostModel.constant(c),
        beta=beta,
        p_axis=(0.0, 1.0, n),
        delta_axis=(0.0, 1.0, n),
    )


class TestGrid:
    def test_axis_points_sit_at_cell_centers(self):
        spec = SweepSpec(
            strategy=SweepStrategy.GRIM,
            cost=CostModel.constant(0.1),
            beta=0.4,
            p_axis=(0.0, 1.0, 4),
            delta_axis=(0.5, 1.0, 2),
        )
        grid = region_sweep(spec)
        assert grid.p_values.tolist() == [0.125, 0.375, 0.625, 0.875]
        assert grid.delta_values.tolist() == [0.625, 0.875]
        assert grid.cells.shape == (4, 2)
        assert len(grid.regimes) == 4
        assert grid.delta_star_row.shape == (4,)

    def test_cells_follow_weak_threshold_comparison(self):
        # with a 3-point axis the midpoint p=0.5 is an exact grid point,
        # and c=0.125 puts the reprisal threshold exactly at delta=0.5
        spec = SweepSpec(
            strategy=SweepStrategy.TIT_FOR_TAT,
            cost=CostModel.constant(0.125),
            beta=0.4,
            p_axis=(0.0, 1.0, 3),
            delta_axis=(0.0, 1.0, 3),
        )
        grid = region_sweep(spec)
        assert grid.p_values[1] == 0.5
        assert grid.delta_star_row[1] == 0.5
        assert bool(grid.cells[1, 1])  # delta == delta_star counts as cooperating
        assert not grid.cells[1, 0]

    def test_rows_are_monotone_in_delta(self):
        grid = region_sweep(grim_spec(n=101))
        as_int = grid.cells.astype(int)
        assert (np.diff(as_int, axis=1) >= 0).all()

    def test_regime_rows_short_circuit(self):
        grid = region_sweep(grim_spec(c=0.25, n=8))
        for i, regime in enumerate(grid.regimes):
            if regime is Regime.ALWAYS_COOPERATE:
                assert grid.cells[i].all()
        assert Regime.ALWAYS_COOPERATE in grid.regimes
        free = region_sweep(grim_spec(c=0.0, beta=1.0, n=8))
        assert all(r is Regime.NEVER_COOPERATE for r in free.regimes)
        assert not free.cells.any()


class TestArea:
    def test_reference_area(self):
        assert region_area(region_sweep(grim_spec())) == pytest.approx(
            0.6560904471987115, abs=1e-12
        )

    def test_area_stable_under_refinement(self):
        coarse = region_area(region_sweep(grim_spec(n=101)))
        fine = region_area(region_sweep(grim_spec(n=401)))
        assert coarse == pytest.approx(0.6561121458680521, abs=1e-12)
        assert abs(coarse - fine) < 0.01

    def test_area_shrinks_as_degradation_softens(self):
        areas = [region_area(region_sweep(grim_spec(beta=b, n=101)))
                 for b in (0.0, 0.2, 0.4, 0.6, 0.8)]
        assert all(b < a for a, b in zip(areas, areas[1:]))

    def test_reprisal_region_ignores_beta(self):
        grids = [
            region_sweep(
                SweepSpec(
                    strategy=SweepStrategy.TIT_FOR_TAT,
                    cost=CostModel.constant(0.1),
                    beta=beta,
                    p_axis=(0.0, 1.0, 101),
                    delta_axis=(0.0, 1.0, 101),
                )
            )
            for beta in (0.0, 0.4, 0.9)
        ]
        for other in grids[1:]:
            assert np.array_equal(grids[0].cells, other.cells)
            assert np.array_equal(grids[0].delta_star_row, other.delta_star_row)

    def test_one_time_cost_shrinks_the_region(self):
        recurring = region_area(region_sweep(grim_spec(n=101)))
        one_time = region_area(
            region_sweep(
                SweepSpec(
                    strategy=SweepStrategy.ONE_TIME_GRIM,
                    cost=CostModel.constant(0.1),
                    beta=0.4,
                    p_axis=(0.0, 1.0, 101),
                    delta_axis=(0.0, 1.0, 101),
                )
            )
        )
        assert one_time < recurring


class TestBoundary:
    def test_polyline_is_clamped_and_aligned(self):
        grid = region_sweep(grim_spec(c=0.25, n=21))
        points = boundary_extract(grid)
        assert len(points) == 21
        for point, p, regime in zip(points, grid.p_values, grid.regimes):
            assert point.p == p
            assert 0.0 <= point.delta_star <= 1.0
            assert point.regime is regime
            if regime is Regime.ALWAYS_COOPERATE:
                assert point.delta_star == 0.0
            if regime is Regime.NEVER_COOPERATE:
                assert point.delta_star == 1.0


class TestValidation:
    def test_spec_guards(self):
        with pytest.raises(ValueError):
            grim_spec(beta=1.5)
        with pytest.raises(ValueError):
            SweepSpec(
                strategy=SweepStrategy.GRIM,
                cost=CostModel.constant(0.1),
                beta=0.4,
                p_axis=(0.6, 0.4, 10),
            )
        with pytest.raises(ValueError):
            SweepSpec(
                strategy=SweepStrategy.GRIM,
                cost=CostModel.constant(0.1),
                beta=0.4,
                delta_axis=(0.0, 1.0, 1),
            )
        with pytest.raises(ValueError):
            SweepSpec(
                strategy=SweepStrategy.ONE_TIME_GRIM,
                cost=CostModel.linear(0.1),
                beta=0.4,
            )
