import pytest

from kma.embedding import BuildingEmbedding
from kma.gcm import GeneralizedCartanMatrix
from kma.lorentz import LorentzGeometry
from kma.roots import RootSystem
from kma.su2flow import Su2Flow
from kma.weyl import WeylGroup

FIB = ((2, -3), (-3, 2))
MIXED = ((2, -2), (-3, 2))
TRI_23INF = ((2, -2, 0), (-2, 2, -1), (0, -1, 2))
TRI_INF3 = ((2, -2, -2), (-2, 2, -2), (-2, -2, 2))


class Toolkit:
    def __init__(self, entries):
        self.gcm = GeneralizedCartanMatrix(entries)
        self.rs = RootSystem(self.gcm)
        self.weyl = WeylGroup(self.rs)
        self.geom = LorentzGeometry(self.weyl)
        self.flow = Su2Flow(self.rs)
        self.emb = BuildingEmbedding(self.geom)


@pytest.fixture(scope="session")
def fib():
    return Toolkit(FIB)


@pytest.fixture(scope="session")
def mixed():
    return Toolkit(MIXED)


@pytest.fixture(scope="session")
def tri23():
    return Toolkit(TRI_23INF)


@pytest.fixture(scope="session")
def tri_ideal():
    return Toolkit(TRI_INF3)
