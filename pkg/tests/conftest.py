import numpy as np
import pytest

from locclab.states import SchmidtVector


def sorted_simplex(gen, d):
    """One flat-Dirichlet draw, sorted non-increasing (test-side sampler)."""
    p = gen.dirichlet(np.ones(d))
    p[::-1].sort()
    return tuple(float(x) for x in p)


def mixed_from(gen, probs, parts=4):
    """Average of random permutations of ``probs``: majorized by ``probs``.

    A doubly-stochastic map never sharpens a distribution, so the result is
    always convertible-from under the partial-sum criterion.
    """
    weights = gen.dirichlet(np.ones(parts))
    arr = np.asarray(probs)
    mix = np.zeros(len(probs))
    for w in weights:
        mix += w * gen.permutation(arr)
    mix[::-1].sort()
    return tuple(float(x) for x in mix)


@pytest.fixture
def np_gen():
    return np.random.default_rng(20260808)


def as_sv(probs):
    return SchmidtVector(tuple(probs))
