import weakref

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from augmented_queues.augment import (
    DEFAULT_RANGES,
    IMAGE_KINDS,
    SERIES_KINDS,
    TransformSpec,
    apply_transform,
    build_augmented_queues,
    default_transforms,
    merge_training_set,
    time_warp,
    window_slice,
)
from augmented_queues.errors import ApplicabilityError, ConfigurationError
from augmented_queues.memory import MultiQueue
from augmented_queues.stream import DataKind, SeedSet

IMG = DataKind.image(12, 10)
SER = DataKind.series(128)


def kind_for(name):
    return IMG if name in IMAGE_KINDS else SER


def piecewise_linear(values, positions):
    """Reference linear interpolation written out segment by segment."""
    out = []
    for p in positions:
        i = int(np.floor(p))
        if i >= len(values) - 1:
            out.append(values[-1])
            continue
        frac = p - i
        out.append(values[i] * (1 - frac) + values[i + 1] * frac)
    return np.array(out)


def memory(K, M, d, seed=0):
    gen = np.random.default_rng(seed)
    feats = tuple(gen.uniform(size=(M, d)) for _ in range(K))
    return MultiQueue.from_seed_set(SeedSet(feats, tuple(np.arange(M) for _ in range(K))), M)


class TestApplyTransform:
    def test_zero_rotation_is_identity(self, rng):
        x = rng.uniform(size=IMG.d)
        out = apply_transform(TransformSpec("rotate", 0, 0), x, IMG, rng)
        assert np.array_equal(out, x)

    def test_flip_is_involution(self, rng):
        x = rng.uniform(size=IMG.d)
        flip = TransformSpec("horizontal-flip")
        once = apply_transform(flip, x, IMG, rng)
        assert not np.array_equal(once, x)
        assert np.array_equal(apply_transform(flip, once, IMG, rng), x)

    def test_source_untouched(self, rng):
        x = rng.uniform(size=IMG.d)
        keep = x.copy()
        for spec in default_transforms(IMG):
            apply_transform(spec, x, IMG, rng)
        assert np.array_equal(x, keep)

    def test_rotate_quarter_turn_moves_pixels(self, rng):
        img = np.zeros((5, 5, 1))
        img[0, 2, 0] = 1.0  # top centre
        out = apply_transform(TransformSpec("rotate", 90, 90), img.ravel(), DataKind.image(5, 5), rng)
        out = out.reshape(5, 5)
        assert out.sum() == pytest.approx(1.0)
        assert out[2, 2] == 0 and out[0, 2] < 1e-12
        assert np.isclose(out.max(), 1.0)

    def test_translate_shifts_and_pads(self, rng):
        img = np.arange(1, 21, dtype=float).reshape(4, 5, 1) / 20
        out = apply_transform(TransformSpec("translate", 1, 1), img.ravel(), DataKind.image(4, 5), rng)
        out = out.reshape(4, 5)
        np.testing.assert_array_equal(out[1:, 1:], img[:-1, :-1, 0])
        assert np.all(out[0] == 0) and np.all(out[:, 0] == 0)

    def test_random_erase_patch_is_noise(self, rng):
        x = np.full(IMG.d, 0.5)
        out = apply_transform(TransformSpec("random-erase", 0.1, 0.1), x, IMG, rng)
        changed = out != 0.5
        assert 0 < changed.sum() <= 0.2 * IMG.d

    def test_wrong_kind(self, rng):
        with pytest.raises(ApplicabilityError):
            apply_transform(TransformSpec("time-warp"), np.zeros(IMG.d), IMG, rng)
        with pytest.raises(ApplicabilityError):
            apply_transform(TransformSpec("rotate"), np.zeros(SER.d), SER, rng)

    def test_out_of_bounds_range(self):
        with pytest.raises(ConfigurationError):
            TransformSpec("rotate", -400, 0)
        with pytest.raises(ConfigurationError):
            TransformSpec("window-slice", 0.9, 0.8)


class TestSeriesTransforms:
    def test_window_slice_matches_interpolation_oracle(self):
        # hand-made signal: rising ramp then a flat shelf then a falling ramp
        x = np.concatenate([np.linspace(0, 1, 50), np.full(30, 0.7), np.linspace(0.7, 0.1, 48)])
        start = 7
        out = window_slice(x, 0.9, start)
        piece = x[start : start + 115]
        expected = piecewise_linear(piece, [i * 114 / 127 for i in range(128)])
        assert out.shape == (128,)
        np.testing.assert_allclose(out, expected, atol=1e-14)
        assert out[0] == x[start] and out[-1] == x[start + 114]

    def test_window_slice_full_ratio_identity(self, rng):
        x = rng.uniform(size=128)
        assert np.array_equal(window_slice(x, 1.0, 0), x)

    def test_time_warp_unit_speeds_identity(self, rng):
        x = rng.uniform(size=128)
        assert np.array_equal(time_warp(x, [1, 1, 1, 1]), x)

    def test_time_warp_path_monotone_endpoints(self, rng):
        x = np.linspace(0, 1, 128)  # a ramp reveals the warp path directly
        out = time_warp(x, [0.5, 1.5, 1.2, 0.7])
        assert out[0] == 0.0 and out[-1] == pytest.approx(1.0)
        assert np.all(np.diff(out) > 0)
        assert not np.allclose(out, x)


@pytest.mark.parametrize("name", sorted(DEFAULT_RANGES))
def test_randomised_invariants(name):
    """Label and dimension preserved, values stay in [0, 1]."""
    kind = kind_for(name)
    spec = TransformSpec(name)
    gen = np.random.default_rng(hash(name) % 2**32)
    for _ in range(200):
        x = gen.uniform(size=kind.d)
        out = apply_transform(spec, x, kind, gen)
        assert out.shape == x.shape
        assert np.all(np.isfinite(out)) and out.min() >= 0.0 and out.max() <= 1.0


@pytest.mark.parametrize(
    "spec",
    [
        TransformSpec("rotate", 0, 0),
        TransformSpec("translate", 0, 0),
        TransformSpec("scale", 1, 1),
        TransformSpec("brightness", 0, 0),
        TransformSpec("contrast", 1, 1),
        TransformSpec("random-erase", 0, 0),
        TransformSpec("window-slice", 1, 1),
        TransformSpec("time-warp", 0, 0),
    ],
    ids=lambda s: s.kind,
)
def test_identity_parameters(spec, rng):
    kind = kind_for(spec.kind)
    for _ in range(20):
        x = rng.uniform(size=kind.d)
        assert np.array_equal(apply_transform(spec, x, kind, rng), x)


class TestAugmentedQueues:
    def test_sizes(self, rng):
        mem = memory(10, 10, IMG.d)
        aq = build_augmented_queues(mem, default_transforms(IMG), 5, IMG, rng)
        assert aq.sizes() == [50] * 10
        assert len(aq) == 500

    def test_zero_augmentations(self, rng):
        mem = memory(3, 4, SER.d)
        aq = build_augmented_queues(mem, default_transforms(SER), 0, SER, rng)
        assert len(aq) == 0
        X, y = merge_training_set(mem, aq)
        X0, y0 = mem.training_view()
        assert np.array_equal(X, X0) and np.array_equal(y, y0)

    def test_identity_family_copies(self, rng):
        mem = memory(3, 4, IMG.d)
        aq = build_augmented_queues(mem, [TransformSpec("rotate", 0, 0)], 3, IMG, rng)
        for c in range(3):
            expected = np.repeat(np.stack(mem[c]), 3, axis=0)
            assert np.array_equal(aq.per_class[c], expected)

    def test_merge_length_and_labels(self, rng):
        mem = memory(10, 10, IMG.d)
        aq = build_augmented_queues(mem, default_transforms(IMG), 5, IMG, rng)
        X, y = merge_training_set(mem, aq)
        assert len(X) == len(y) == 600
        assert np.bincount(y).tolist() == [60] * 10

    def test_partially_filled_memory(self, rng):
        mem = MultiQueue(3, 5, SER.d)
        mem.append(np.full(SER.d, 0.5), 0).append(np.full(SER.d, 0.5), 2).append(np.full(SER.d, 0.2), 2)
        aq = build_augmented_queues(mem, default_transforms(SER), 4, SER, rng)
        assert aq.sizes() == [4, 0, 8]

    def test_empty_family_rejected(self, rng):
        with pytest.raises(ConfigurationError):
            build_augmented_queues(memory(2, 2, SER.d), [], 2, SER, rng)

    def test_deterministic(self):
        mem = memory(4, 3, IMG.d)
        a = build_augmented_queues(mem, default_transforms(IMG), 3, IMG, np.random.default_rng(5))
        b = build_augmented_queues(mem, default_transforms(IMG), 3, IMG, np.random.default_rng(5))
        assert all(np.array_equal(p, q) for p, q in zip(a.per_class, b.per_class))

    def test_freed_when_dropped(self, rng):
        aq = build_augmented_queues(memory(2, 2, SER.d), default_transforms(SER), 2, SER, rng)
        ref = weakref.ref(aq)
        del aq
        assert ref() is None

    def test_draws_cover_family(self):
        mem = memory(2, 10, IMG.d)
        family = [TransformSpec("brightness", 0.1, 0.1), TransformSpec("brightness", -0.1, -0.1)]
        aq = build_augmented_queues(mem, family, 20, IMG, np.random.default_rng(0))
        src = np.repeat(np.stack(mem[0]), 20, axis=0)
        shift = (aq.per_class[0] - src).mean(axis=1)
        assert (shift > 0).any() and (shift < 0).any()


@settings(max_examples=50, deadline=None)
@given(
    K=st.integers(2, 4),
    M=st.integers(1, 4),
    N=st.integers(0, 3),
    seed=st.integers(0, 2**32 - 1),
)
def test_label_and_shape_preservation(K, M, N, seed):
    mem = memory(K, M, SER.d, seed)
    aq = build_augmented_queues(mem, default_transforms(SER), N, SER, np.random.default_rng(seed))
    X, y = aq.as_arrays()
    assert X.shape == (K * M * N, SER.d)
    assert y.tolist() == [c for c in range(K) for _ in range(M * N)]
    assert X.size == 0 or (X.min() >= 0 and X.max() <= 1)
