import numpy as np
import pytest

from archipelago.bench import PlantedWord, SyntheticSpec, synth_document
from archipelago.corpus import build_document

# The fixed planted corpus: one word per pattern, n=64.  All expected
# values frozen in the tests were produced by the oracle script against
# exactly this layout.
PLANTED_SPEC = SyntheticSpec(
    n=64,
    planted=(
        PlantedWord("beacon", "double_island", ((0, 3), (40, 43))),
        PlantedWord("lagoon", "single_island", ((20, 27),)),
        PlantedWord("tide", "uniform"),
        PlantedWord("mote", "single_occurrence", ((10, 10),)),
    ),
    filler_vocab=40,
    seed=7,
)


@pytest.fixture(scope="session")
def planted_doc():
    return synth_document(PLANTED_SPEC)


@pytest.fixture
def double_island_counts():
    counts = np.zeros(64, dtype=np.int64)
    counts[[0, 1, 2, 3, 40, 41, 42, 43]] = 1
    return counts


@pytest.fixture
def toy_doc():
    return build_document([
        ["a", "b", "x"],
        ["a", "b"],
        ["c", "d"],
        ["c", "d", "a"],
        ["e", "f"],
        ["e"],
        ["g"],
        ["b", "c"],
    ], doc_id="toy")
