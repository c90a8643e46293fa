import pytest

from monoinv.exactnum import rat
from monoinv.intervals import REAL_LINE, open_iv
from monoinv.measure import PiecewiseMeasure, distribution_function
from monoinv.monotone import PiecewiseMonotone, from_knot_data


@pytest.fixture
def fixa():
    """CDF of Lebesgue on (0,1/2) plus Lebesgue on (3/2,2), on the whole line."""
    return from_knot_data(
        REAL_LINE,
        [0, rat(1, 2), rat(3, 2), 2],
        [0, 0, 0, 0],
        [0, 1, 0, 1, 0],
        -1,
        0,
    )


@pytest.fixture
def fixa_measure():
    return PiecewiseMeasure(
        REAL_LINE,
        (),
        ((open_iv(0, rat(1, 2)), 1), (open_iv(rat(3, 2), 2), 1)),
    )


@pytest.fixture
def fixb():
    """The identity on (0,1), embedded with -inf/+inf outside."""
    return PiecewiseMonotone(open_iv(0, 1), (), (1,), (rat(1, 2), rat(1, 2)))


@pytest.fixture
def fixb_measure():
    return PiecewiseMeasure(open_iv(0, 1), (), ((open_iv(0, 1), 1),))


@pytest.fixture
def fixc():
    """CDF of the unit atom at 0."""
    return from_knot_data(REAL_LINE, [0], [1], [0, 0], -1, 0)


@pytest.fixture
def fixc_measure():
    return PiecewiseMeasure(REAL_LINE, ((0, 1),), ())


@pytest.fixture
def fixd_measure():
    """Half uniform mass on (0,1), half an atom at 1/2."""
    return PiecewiseMeasure(
        REAL_LINE,
        ((rat(1, 2), rat(1, 2)),),
        ((open_iv(0, 1), rat(1, 2)),),
    )


@pytest.fixture
def fixd(fixd_measure):
    return distribution_function(fixd_measure, -1)
