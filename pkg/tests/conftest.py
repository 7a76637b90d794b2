import hypothesis.strategies as st
import pytest

from oeffect.prior import PriorParams, frechet_bounds

unit = st.floats(min_value=0.0, max_value=1.0, allow_nan=False)


@st.composite
def valid_params(draw, interior=False):
    lo_m, hi_m = (0.01, 0.99) if interior else (0.0, 1.0)
    a = draw(st.floats(lo_m, hi_m))
    b = draw(st.floats(lo_m, hi_m))
    lo, hi = frechet_bounds(a, b)
    t = draw(unit)
    return PriorParams(a, b, lo + t * (hi - lo))


def grid_params(step=0.01, n_c=5):
    """a, b over {step, ..., 1 - step}; n_c interior c values per (a, b)."""
    n = int(round(1 / step))
    out = []
    for i in range(1, n):
        for j in range(1, n):
            a, b = i / n, j / n
            lo, hi = frechet_bounds(a, b)
            for k in range(1, n_c + 1):
                out.append((a, b, lo + (hi - lo) * k / (n_c + 1)))
    return out


@pytest.fixture(scope="session")
def dense_grid():
    return grid_params()
