import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from airyquench import (PhysicalParams, ScenarioTag, SpaceGrid, evolve_eigenstate,
                        suggested_grid)


@pytest.fixture(scope="session")
def params():
    return PhysicalParams()


@pytest.fixture(scope="session")
def c6_fields(params):
    """Scenario C, state 6, at t = 1, 10, 100 on node-resolving grids."""
    grids = {
        1.0: SpaceGrid.from_bounds(0.0, 45.0, 0.01),
        10.0: SpaceGrid.from_bounds(0.0, 160.0, 0.04),
        100.0: SpaceGrid.from_bounds(0.0, 900.0, 0.15),
    }
    return {t: evolve_eigenstate(ScenarioTag.C, 6, t, g, params) for t, g in grids.items()}


@pytest.fixture(scope="session")
def b6_t200(params):
    """Scenario B, state 6, t = 200, full support."""
    grid = suggested_grid(ScenarioTag.B, 6, 200.0, params, max_points=9000)
    return evolve_eigenstate(ScenarioTag.B, 6, 200.0, grid, params)


@pytest.fixture(scope="session")
def b6_t10(params):
    grid = suggested_grid(ScenarioTag.B, 6, 10.0, params, max_points=6000)
    return evolve_eigenstate(ScenarioTag.B, 6, 10.0, grid, params)
