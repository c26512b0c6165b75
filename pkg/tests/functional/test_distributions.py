"""Sampled concepts follow their target distributions."""

import jax.random as jr
import numpy as np
import pytest
from scipy import stats

import clevrshift.concepts as cc
from clevrshift.scenes import GenConfig, sample_scene

VOCAB = cc.default_vocabulary()


def test_long_tail_shapes() -> None:
    dist = cc.variant_distribution("long", "shape")
    target = np.asarray(cc.power_law_distribution(2.0, len(VOCAB.shapes)).weights)
    idx = np.asarray(cc.sample_concept(dist, jr.key(0), (100_000,)))
    freq = np.bincount(idx, minlength=len(target)) / idx.size
    assert np.abs(freq - target).max() <= 0.005


def test_uniform_colors() -> None:
    dist = cc.variant_distribution("bal", "color")
    idx = np.asarray(cc.sample_concept(dist, jr.key(0), (100_000,)))
    freq = np.bincount(idx, minlength=8) / idx.size
    np.testing.assert_allclose(freq, 0.125, atol=0.005)


def test_color_given_shape_chi2() -> None:
    co = cc.co_matrix("co-2", VOCAB, peak=0.8)
    rows = np.asarray(co.rows)
    k_shape, k_color = jr.split(jr.key(0))
    shapes = np.asarray(
        cc.sample_concept(cc.variant_distribution("bal", "shape"), k_shape, (50_000,))
    )
    colors = np.asarray(cc.sample_rows(rows[shapes], k_color))
    for s in range(rows.shape[0]):
        observed = np.bincount(colors[shapes == s], minlength=rows.shape[1])
        expected = rows[s] * observed.sum()
        assert stats.chisquare(observed, expected).pvalue > 0.001, VOCAB.shapes[s]


@pytest.mark.slow
def test_scene_shapes_follow_long_tail() -> None:
    cfg = GenConfig.from_variants("easy", "long", seed=0)
    counts = np.zeros(len(VOCAB.shapes))
    for sid in range(2_000):
        for o in sample_scene(cfg, sid).objects:
            counts[VOCAB.shapes.index(o.shape)] += 1
    freq = counts / counts.sum()
    target = np.asarray(cc.variant_distribution("long", "shape").weights)
    # about 13k objects: a looser bound than the direct sampler check
    assert np.abs(freq - target).max() <= 0.02
