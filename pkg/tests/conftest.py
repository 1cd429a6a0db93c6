import numpy as np
import pytest

from norej.generators import FamilySpec, gen_instance


@pytest.fixture(scope="session")
def bip1_small():
    return gen_instance(FamilySpec(family="uniform", kind="bipartite1", n=20, seed=5))


@pytest.fixture(scope="session")
def bip2_small():
    return gen_instance(FamilySpec(family="uniform", kind="bipartite2", n=20, seed=5))


@pytest.fixture(scope="session")
def gen_small():
    return gen_instance(FamilySpec(family="uniform", kind="general", n=20, seed=5))


@pytest.fixture(scope="session")
def room_small():
    return gen_instance(FamilySpec(family="roommate-uniform", kind="roommate", n=8, seed=5))


@pytest.fixture(autouse=True)
def _np_errstate():
    with np.errstate(all="raise", under="ignore"):
        yield
