import numpy as np
import pytest

from gwacat import howell, make_weyl, smatrix


@pytest.fixture(scope="session", autouse=True)
def backend_warmup():
    """Trigger kernel compilation once so timed tests measure arithmetic,
    not compilation."""
    A = np.array([[2, 1], [0, 3]], dtype=np.int64)
    howell.howell_form(A, 4)
    howell.kernel(A, 4)
    howell.solve(A, np.array([1, 1], dtype=np.int64), 4)
    B = np.arange(8, dtype=np.int64).reshape(2, 2, 2) % 4
    smatrix.smat_mul(B, B, 4)


@pytest.fixture(scope="session")
def weyl22():
    return make_weyl(2, 2)
