import pytest

from roughproof import algebra

BOOL2 = """\
kind: single
size: 2
names: 0 1
leq: 0<1
neg: 1 0
interior: 0 1
"""

# 0 < a < 1, neg a = a, I a = 0
CHAIN3_ROUGH = """\
kind: single
size: 3
names: 0 a 1
leq: 0<a a<1
neg: 1 a 0
interior: 0 0 1
"""

CHAIN3_IDENTITY = CHAIN3_ROUGH.replace("interior: 0 0 1", "interior: 0 a 1")

# Boolean {0, x, y, 1} with I = {1:1, x:x, y:0, 0:0}
BOOL4_SKEW = """\
kind: single
size: 4
names: 0 x y 1
leq: 0<x 0<y x<1 y<1
neg: 1 y x 0
interior: 0 x 0 1
"""


@pytest.fixture
def bool2():
    return algebra.loads(BOOL2)


@pytest.fixture
def chain3():
    return algebra.loads(CHAIN3_ROUGH)


@pytest.fixture
def chain3_identity():
    return algebra.loads(CHAIN3_IDENTITY)


@pytest.fixture
def bool4_skew():
    return algebra.loads(BOOL4_SKEW)


@pytest.fixture(scope="session")
def small_algebras():
    return algebra.enumerate_algebras(5)
