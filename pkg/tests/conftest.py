import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from diffrees.algebra import GradedAlgebra
from diffrees.poly import VariableContext, parse_polynomial


def P(ctx, text):
    return parse_polynomial(ctx, text)


@pytest.fixture(scope="session")
def xyz():
    return VariableContext(("X", "Y", "Z"))


@pytest.fixture(scope="session")
def quadric_cone(xyz):
    return GradedAlgebra.validate(xyz, [P(xyz, "X*Y - Z^2")])


@pytest.fixture(scope="session")
def coordinate_cross():
    ctx = VariableContext(("X", "Y"))
    return GradedAlgebra.validate(ctx, [P(ctx, "X*Y")])


@pytest.fixture(scope="session")
def curve_cone():
    ctx = VariableContext(("X1", "X2", "X3", "X4"))
    return GradedAlgebra.validate(ctx, [
        P(ctx, "X1^2 + X2^2 + X3^2 + X4^2"),
        P(ctx, "X1^2 + 2*X2^2 + 3*X3^2 + 4*X4^2"),
    ])


@pytest.fixture(scope="session")
def surface_cone():
    ctx = VariableContext(("X", "Y", "Z", "W"))
    return GradedAlgebra.validate(ctx, [P(ctx, "X*W - Y*Z")])


@pytest.fixture(scope="session")
def cases_dir():
    from importlib import resources
    return resources.files("diffrees") / "cases"
