import pytest

from hvgrgs import hvg
from hvgrgs.rgs import iter_words


@pytest.fixture(scope="session")
def pair_counts():
    """Per-n exhaustive pair counts, computed once and shared.

    Returns a callable: pair_counts(n) -> (strong, weak_extra) dicts
    mapping (i, j) to the number of length-n sequences containing the
    pair as a strong / weak-but-not-strong edge.
    """
    cache: dict[int, tuple[dict, dict]] = {}

    def get(n: int):
        if n not in cache:
            strong_counts: dict[tuple[int, int], int] = {}
            extra_counts: dict[tuple[int, int], int] = {}
            for word in iter_words(n):
                strong = hvg.strong_edge_set(word)
                for e in strong:
                    strong_counts[e] = strong_counts.get(e, 0) + 1
                for e in hvg.weak_edge_set(word) - strong:
                    extra_counts[e] = extra_counts.get(e, 0) + 1
            cache[n] = (strong_counts, extra_counts)
        return cache[n]

    return get
