from lowstretch.rng import Stream, as_stream, derive_seed


def test_streams_are_reproducible():
    a = Stream(7).child("build", 3).rng()
    b = Stream(7).child("build", 3).rng()
    assert [a.random() for _ in range(5)] == [b.random() for _ in range(5)]


def test_streams_separate_by_seed_purpose_and_path():
    draws = set()
    for s in (Stream(1), Stream(2), Stream(1, "mc"), Stream(1).child(0), Stream(1).child(1),
              Stream(1).child(0, 1), Stream(1).child(0).child(1).child(2)):
        draws.add(s.rng().random())
    assert len(draws) == 7
    assert Stream(1).child(0, 1).rng().random() == Stream(1).child(0).child(1).rng().random()


def test_derive_seed_is_64_bit():
    v = derive_seed(5, "x", 1, 2)
    assert 0 <= v < 2 ** 64
    assert v == derive_seed(5, "x", 1, 2)


def test_as_stream():
    assert isinstance(as_stream(None, 3), Stream)
    s = Stream(4)
    assert as_stream(s) is s
    assert as_stream(9).rng().random() == Stream(9).rng().random()
