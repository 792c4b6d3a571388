import numpy as np

from bellrmt.rng import RandomStream, stream_index, substream


def test_same_stream_is_bit_identical():
    a = RandomStream(123, 45).generator().standard_normal(16)
    b = RandomStream(123, 45).generator().standard_normal(16)
    assert (a == b).all()


def test_distinct_stream_indices_differ():
    a = RandomStream(123, 45).generator().standard_normal(16)
    b = RandomStream(123, 46).generator().standard_normal(16)
    assert (a != b).any()


def test_distinct_master_seeds_differ():
    a = RandomStream(1, 0).generator().standard_normal(16)
    b = RandomStream(2, 0).generator().standard_normal(16)
    assert (a != b).any()


def test_stream_index_is_stable_across_runs():
    # Frozen values guard the label-hashing scheme; changing it silently
    # would break reproducibility of previously recorded sweeps.
    assert stream_index("hs", None, 2, 0, "draw") == 306880477351213061
    assert stream_index("structured", 3, 64, 17, "shuffle") == 13775652813799625699


def test_stream_index_distinguishes_label_order():
    assert stream_index("a", "b") != stream_index("b", "a")
    assert stream_index(1, 23) != stream_index(12, 3)


def test_substream_builds_expected_stream():
    s = substream(99, "kind", 4, 7)
    assert s.master_seed == 99
    assert s.stream_index == stream_index("kind", 4, 7)


def test_huge_seeds_are_masked_not_rejected():
    gen = RandomStream(2**70 + 3, -1).generator()
    assert np.isfinite(gen.standard_normal(4)).all()
