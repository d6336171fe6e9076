import os
import sys

sys.path.insert(0, os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

import numpy as np
import pytest

import config
from exactnum import GaussRat
from lattice import WeightSpec
from stability import StabilityParam


@pytest.fixture
def rng():
    return np.random.default_rng(config.RANDOM_SEED)


@pytest.fixture
def sigma_i():
    return StabilityParam(GaussRat(0, 1))


@pytest.fixture(params=config.SAMPLE_SPECS, ids=lambda w: ",".join(map(str, w)))
def sample_spec(request):
    return WeightSpec(request.param)
