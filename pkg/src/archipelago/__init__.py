"""Archipelago: explanatory-keyword extraction by window entropy, with
graph-entropy scoring and baseline benchmarks."""

__version__ = "0.1.0"

from .baselines import (
    RankedKeywords,
    rake_keywords,
    random_keywords,
    textrank_keywords,
    tfidf_keywords,
)
from .bench import (
    ComparisonTable,
    ExperimentConfig,
    PlantedWord,
    SyntheticSpec,
    json_safe,
    mode_report,
    paired_t_test,
    run_collection,
    run_document,
    spec_from_mapping,
    synth_document,
    synthetic_collection,
    table_payload,
)
from .corpus import (
    CorpusIndex,
    Document,
    build_corpus_index,
    build_document,
    document_from_text,
    load_collection,
    load_document,
    segment_sentences,
    tokenize,
)
from .graph_entropy import (
    CoocGraph,
    EntropyBReport,
    assign_sentences,
    build_cooc_graph,
    connected_clusters,
    cooc,
    entropy_b,
    evaluate_keyword_set,
    graph_to_dot,
)
from .window_entropy import (
    ArchipelagoVerdict,
    DetectionMode,
    EntropyCurve,
    KeywordSet,
    all_verdicts,
    delta_t_max_bound,
    detect_events,
    entropy_a,
    entropy_curve,
    extract_keywords,
    window_counts,
    word_curve,
    word_theta,
)

__all__ = [name for name in dir() if not name.startswith("_")]
