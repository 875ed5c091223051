"""Hypothesis strategies: seeds in, matrices out (generation stays in numrad.rng)."""

import numpy as np
from hypothesis import strategies as st

from numrad.harness import generate
from numrad.rng import SplitMix64

seeds = st.integers(min_value=0, max_value=2**64 - 1)
dims = st.integers(min_value=1, max_value=7)


@st.composite
def matrices(draw, tag="ginibre", min_dim=1, max_dim=7):
    n = draw(st.integers(min_dim, max_dim))
    return generate(tag, n, SplitMix64(draw(seeds)))


@st.composite
def scaled_matrices(draw, tag="ginibre"):
    A = draw(matrices(tag))
    scale = draw(st.sampled_from([1e-3, 0.5, 1.0, 4.0, 50.0]))
    return A * scale


def unit(v):
    return v / np.linalg.norm(v)
