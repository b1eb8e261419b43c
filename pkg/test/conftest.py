import math

import pytest

from fockspace import default_space
from states import squeezing_parameter
from utilities import FockSpace, ModelParams


# Parameter points shared across the suite, all in units of U
@pytest.fixture
def four_maxima_point() -> ModelParams:
    return ModelParams(delta=1.5, pump=2.2)


@pytest.fixture
def negative_detuning_point() -> ModelParams:
    return ModelParams(delta=-3.0, pump=2.0)


@pytest.fixture
def space_120() -> FockSpace:
    return FockSpace(120)


@pytest.fixture
def space_for():
    """Default truncation sized for the squeezed coherent states at a parameter point"""
    def build(p: ModelParams) -> FockSpace:
        params = squeezing_parameter(p)[0]
        return default_space(params.alpha_mag ** 2, math.sinh(params.r) ** 2)
    return build
