import pytest

from slrsim.netsim import build_field, desk_grid_config, paper_grid_config, run_setup_flood

DESK_SEED = 1
PAPER_SEED = 1


@pytest.fixture(scope="session")
def desk_field():
    """Flooded 9^3 desk field, shared across the suite."""
    field = build_field(desk_grid_config(seed=DESK_SEED))
    run_setup_flood(field)
    return field


@pytest.fixture(scope="session")
def paper_field():
    """Flooded full-scale 17^3 field (takes ~15 s once per session)."""
    field = build_field(paper_grid_config(seed=PAPER_SEED))
    run_setup_flood(field)
    return field
