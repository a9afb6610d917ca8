import numpy as np
import pytest
from hypothesis import settings

from fusionkit import catalog

settings.register_profile("default", max_examples=60, deadline=None)
settings.load_profile("default")

ALL_NAMES = catalog.names()
MODULAR_NAMES = catalog.modular_names()


@pytest.fixture(params=ALL_NAMES)
def entry(request):
    return catalog.get(request.param)


@pytest.fixture(params=MODULAR_NAMES)
def modular_entry(request):
    return catalog.get(request.param)


def brute_force_associative(t: np.ndarray) -> bool:
    r = t.shape[0]
    for i in range(r):
        for j in range(r):
            for k in range(r):
                for l in range(r):
                    a = sum(int(t[i, j, m]) * int(t[m, k, l]) for m in range(r))
                    b = sum(int(t[j, k, m]) * int(t[i, m, l]) for m in range(r))
                    if a != b:
                        return False
    return True
