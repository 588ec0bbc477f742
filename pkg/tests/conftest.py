import pytest

from privregion.core import make_rng


@pytest.fixture
def rng():
    """Fresh, fixed-seed generator per test. Tests that need several
    independent streams call privregion.core.derive_rng themselves."""
    return make_rng(20260818)
