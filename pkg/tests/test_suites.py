import numpy as np
import pytest

from blockfunc.suites import COMBINATOR_SUITES, SUITES, random_encoding, run_suite, suite_rng
from blockfunc.blockenc import verify


@pytest.mark.parametrize("name", list(SUITES))
def test_suite_passes(name):
    res = run_suite(name, seed=11, trials=5)
    assert res.passed, res
    assert res.trials == 5


def test_suite_streams_are_independent_of_order():
    a = [suite_rng(5, n).random() for n in COMBINATOR_SUITES]
    b = [suite_rng(5, n).random() for n in reversed(list(COMBINATOR_SUITES))][::-1]
    assert a == b
    assert len(set(a)) == len(a)


def test_random_encoding_claim_is_honest():
    rng = np.random.default_rng(0)
    for _ in range(20):
        be, target = random_encoding(rng, 2, 3)
        assert be.a == 3
        assert verify(be, target) <= be.epsilon + 1e-12
