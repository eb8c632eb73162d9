import os

import pytest
from hypothesis import settings

from gradus.exact import GF, Q

settings.register_profile("default", deadline=None, max_examples=60)
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))

FIELDS = [Q, GF(5), GF(7), GF(101)]


@pytest.fixture(params=FIELDS, ids=str)
def field(request):
    return request.param


@pytest.fixture(autouse=True, scope="session")
def _cache_dir(tmp_path_factory):
    # keep the structure-constant cache out of the user's home during tests
    if "GRADUS_CACHE_DIR" not in os.environ:
        os.environ["GRADUS_CACHE_DIR"] = str(tmp_path_factory.mktemp("gradus-cache"))
    yield
