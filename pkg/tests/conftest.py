import pytest

from rspacelab import atlas


@pytest.fixture(scope="session")
def pool():
    """Session-wide instance cache; instantiation dominates test runtime."""
    made = {}

    def get(rid, *params):
        key = (rid, params)
        if key not in made:
            made[key] = atlas.instantiate(atlas.descriptor(rid, *params))
        return made[key]

    return get
