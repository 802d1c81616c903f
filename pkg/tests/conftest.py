import pytest

from oppknow import JointDistribution


@pytest.fixture
def three_atom():
    """M=3, v=2 distribution with atoms {(0,0,0): 1/2, (1,0,1): 1/4, (1,1,0): 1/4}.

    Hand-checked entropies: H(all)=1.5, H(X0)=1.0, H(X0,X1)=1.5,
    H(X1,X2)=1.5, so H(X1|X0)=0.5, I(X0; X1,X2)=1.0, KL(0)=0.5.
    """
    return JointDistribution(3, 2, {(0, 0, 0): 2, (1, 0, 1): 1, (1, 1, 0): 1})


@pytest.fixture
def uniform_pair():
    """Two independent uniform binary users (uniform over 4 outcomes)."""
    return JointDistribution(2, 2, {(0, 0): 1, (0, 1): 1, (1, 0): 1, (1, 1): 1})


@pytest.fixture
def correlated_pair():
    """Two perfectly correlated uniform binary users."""
    return JointDistribution(2, 2, {(0, 0): 1, (1, 1): 1})


@pytest.fixture
def identical_triple():
    """Three identical uniform binary users: no one has anything to gain."""
    return JointDistribution(3, 2, {(0, 0, 0): 1, (1, 1, 1): 1})


@pytest.fixture
def independent_triple():
    """Three independent uniform binary users (uniform over all 8 outcomes)."""
    atoms = {(a, b, c): 1 for a in (0, 1) for b in (0, 1) for c in (0, 1)}
    return JointDistribution(3, 2, atoms)
