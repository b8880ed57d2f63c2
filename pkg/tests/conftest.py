from functools import lru_cache

import pytest

from yaqub.rings import build

# small rings of every construction kind, used for exhaustive law checks
SMALL = [
    "Z/2", "Z/3", "Z/4", "Z/5", "Z/6", "Z/8", "Z/9", "Z/10", "Z/12", "Z/15", "Z/25", "Z/30",
    "Z/2 x Z/2", "Z/2 x Z/3", "Z/3 x Z/3", "Z/3 x Z/5", "Z/5 x Z/5", "Z/2 x Z/4",
    "T2(Z/2)", "T2(Z/3)", "T2(Z/4)", "M2(Z/2)",
    "Z/2[x]/(x^2)", "Z/4[x]/(x^2)", "Z/3[x]/(x^2+1)",
    "sub(M2(Z/2); 4)", "corner(Z/2 x Z/4; 4)", "T2(Z/4) / (2, 4, 16)", "Z/12 / (6)",
]


@lru_cache(maxsize=None)
def ring(text):
    return build(text)


@pytest.fixture(params=SMALL)
def small_ring(request):
    return ring(request.param)
