"""Benchmark harness: per-document method comparison on graph entropy,
per-collection aggregation with paired one-sided t-tests, synthetic
pattern generation, and the detection-mode discrimination report.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from scipy import stats

from .baselines import (
    rake_keywords,
    random_keywords,
    textrank_keywords,
    tfidf_keywords,
)
from .corpus import CorpusIndex, Document, build_corpus_index, build_document
from .graph_entropy import evaluate_keyword_set
from .window_entropy import (
    DEFAULT_MODE,
    DetectionMode,
    extract_keywords,
)

REFERENCE_TAU = 10


@dataclass(frozen=True)
class ExperimentConfig:
    taus: tuple[int, ...] = (5, 10, 20)
    rho: float = 0.2
    mode: DetectionMode = DEFAULT_MODE
    base: float = 2.0
    reps: int = 20
    master_seed: int = 0
    reference_tau: int = REFERENCE_TAU

    def __post_init__(self):
        if not self.taus or any(t < 1 for t in self.taus):
            raise ValueError("tau values must be >= 1")
        if not 0 < self.rho <= 1:
            raise ValueError(f"rho out of range: {self.rho}")
        if self.reps < 1:
            raise ValueError("reps must be >= 1")

    @property
    def method_names(self) -> list[str]:
        entropy = [f"entropy_tau{t}" for t in self.taus]
        return entropy + ["tfidf", "textrank", "rake", "random"]


@dataclass(frozen=True)
class MethodResult:
    doc_id: str
    method: str
    k: int
    h_b: float | None
    keywords: tuple[str, ...]
    note: str | None = None

    @property
    def scorable(self) -> bool:
        return self.h_b is not None


@dataclass(frozen=True)
class TTestResult:
    t: float
    df: int
    p: float
    direction: str = "less"


@dataclass(frozen=True)
class CollectionResult:
    label: str
    population: tuple[str, ...]
    excluded: dict[str, str]
    means: dict[str, float]
    t_tests: dict[str, TTestResult | None]
    percent_below_random: dict[str, float | None]


@dataclass(frozen=True)
class ComparisonTable:
    config: ExperimentConfig
    collections: dict[str, CollectionResult]
    per_document: dict[str, list[MethodResult]] = field(repr=False)


def paired_t_test(a, b) -> TTestResult:
    """One-sided paired t-test of the hypothesis mean(a) < mean(b).

    t = mean(d) / (sd(d)/sqrt(m)) on d = a - b with the m-1 sample
    standard deviation; p = P(T_{m-1} < t).  Degenerate inputs follow
    fixed conventions: all-zero differences give p = 0.5, zero-variance
    nonzero-mean differences give p = 0 or 1 by sign.
    """
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    if a.shape != b.shape:
        raise ValueError("length mismatch")
    m = len(a)
    if m < 2:
        raise ValueError("need at least 2 pairs")
    d = a - b
    mean = d.mean()
    sd = d.std(ddof=1)
    df = m - 1
    if sd == 0:
        if mean == 0:
            return TTestResult(t=0.0, df=df, p=0.5)
        t = -math.inf if mean < 0 else math.inf
        return TTestResult(t=t, df=df, p=0.0 if mean < 0 else 1.0)
    t = mean / (sd / math.sqrt(m))
    p = float(stats.t.cdf(t, df))
    return TTestResult(t=float(t), df=df, p=p)


def _random_h_b(doc: Document, k: int, config: ExperimentConfig,
                doc_index: int) -> tuple[float, tuple[str, ...]]:
    """Mean graph entropy over R independent seeded draws.

    Seeds derive from (master_seed, doc_index, rep) so results do not
    depend on evaluation order; the reported keyword list is the first
    draw's.
    """
    values = []
    first: tuple[str, ...] = ()
    for rep in range(config.reps):
        seed = np.random.SeedSequence([config.master_seed, doc_index, rep])
        picked = random_keywords(doc, k, seed)
        if rep == 0:
            first = picked.words
        report = evaluate_keyword_set(doc, picked.words, config.rho,
                                      base=config.base)
        values.append(report.h_b)
    return float(np.mean(values)), first


def run_document(doc: Document, corpus: CorpusIndex,
                 config: ExperimentConfig,
                 doc_index: int = 0) -> list[MethodResult]:
    """Score all methods on one document.

    The entropy extractor runs once per tau; baselines run at k set by
    the reference-tau extraction.  A method that yields no scorable
    keyword set gets h_b = None with a note, never a silent drop.
    """
    results = []
    ref_set = extract_keywords(doc, config.reference_tau, mode=config.mode,
                               base=config.base)
    k_ref = len(ref_set)

    for tau in config.taus:
        name = f"entropy_tau{tau}"
        kw = extract_keywords(doc, tau, mode=config.mode, base=config.base)
        if len(kw) == 0:
            results.append(MethodResult(doc.doc_id, name, 0, None, (),
                                        note="empty keyword set"))
            continue
        report = evaluate_keyword_set(doc, kw.words, config.rho,
                                      base=config.base)
        results.append(MethodResult(doc.doc_id, name, len(kw), report.h_b,
                                    kw.words))

    if k_ref == 0:
        note = "reference extraction empty; baselines skipped"
        for name in ("tfidf", "textrank", "rake", "random"):
            results.append(MethodResult(doc.doc_id, name, 0, None, (),
                                        note=note))
        return results

    tfidf = tfidf_keywords(doc, corpus, k_ref)
    textrank = textrank_keywords(doc, k_ref)
    rake = rake_keywords(doc, k_ref)
    for picked in (tfidf, textrank, rake):
        if not picked.words:
            results.append(MethodResult(doc.doc_id, picked.method, k_ref,
                                        None, (), note="no candidates"))
            continue
        report = evaluate_keyword_set(doc, picked.words, config.rho,
                                      base=config.base)
        results.append(MethodResult(doc.doc_id, picked.method, k_ref,
                                    report.h_b, picked.words))

    h_rand, first_draw = _random_h_b(doc, k_ref, config, doc_index)
    results.append(MethodResult(doc.doc_id, "random", k_ref, h_rand,
                                first_draw))
    return results


def run_collection(documents, config: ExperimentConfig,
                   labels: dict[str, str] | None = None) -> ComparisonTable:
    """Aggregate per-document results into the comparison table.

    Documents are grouped by collection label; within each collection the
    population is the documents where every method scored, so means and
    t-tests stay paired.  Exclusions are reported per document.
    """
    docs = sorted(documents, key=lambda d: d.doc_id)
    if labels is None:
        labels = {}
    corpus = build_corpus_index(docs)

    per_document: dict[str, list[MethodResult]] = {}
    for i, doc in enumerate(docs):
        per_document[doc.doc_id] = run_document(doc, corpus, config,
                                                doc_index=i)

    groups: dict[str, list[Document]] = {}
    for doc in docs:
        groups.setdefault(labels.get(doc.doc_id, "default"), []).append(doc)

    methods = config.method_names
    collections = {}
    for label in sorted(groups):
        members = groups[label]
        population = []
        excluded: dict[str, str] = {}
        for doc in members:
            bad = [r for r in per_document[doc.doc_id] if not r.scorable]
            if bad:
                excluded[doc.doc_id] = "; ".join(
                    f"{r.method}: {r.note}" for r in bad)
            else:
                population.append(doc.doc_id)

        by_method: dict[str, list[float]] = {m: [] for m in methods}
        for doc_id in population:
            for r in per_document[doc_id]:
                by_method[r.method].append(r.h_b)

        means = {}
        t_tests: dict[str, TTestResult | None] = {}
        percents: dict[str, float | None] = {}
        enough = len(population) >= 2
        for m in methods:
            vals = by_method[m]
            means[m] = float(np.mean(vals)) if vals else float("nan")
        rand = by_method["random"]
        for tau in config.taus:
            name = f"entropy_tau{tau}"
            vals = by_method[name]
            if enough:
                t_tests[name] = paired_t_test(vals, rand)
                below = sum(1 for v, r in zip(vals, rand) if v < r)
                percents[name] = 100.0 * below / len(vals)
            else:
                t_tests[name] = None
                percents[name] = None

        collections[label] = CollectionResult(
            label=label,
            population=tuple(population),
            excluded=excluded,
            means=means,
            t_tests=t_tests,
            percent_below_random=percents,
        )
    return ComparisonTable(config=config, collections=collections,
                          per_document=per_document)


def json_safe(obj):
    """Recursively replace non-finite floats so output stays valid JSON."""
    if isinstance(obj, float):
        if math.isinf(obj):
            return "inf" if obj > 0 else "-inf"
        if math.isnan(obj):
            return "nan"
        return obj
    if isinstance(obj, dict):
        return {k: json_safe(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [json_safe(v) for v in obj]
    return obj


def table_payload(table: ComparisonTable) -> dict:
    """Plain-dict form of a comparison table, ready for JSON dumping.

    Everything downstream (CLI output, golden files) goes through this
    one serializer so two runs of the same experiment stay comparable
    byte for byte.
    """
    collections = {}
    for label, res in table.collections.items():
        collections[label] = {
            "population": list(res.population),
            "excluded": res.excluded,
            "means": res.means,
            "t_tests": {
                m: None if tt is None else
                {"t": tt.t, "df": tt.df, "p": tt.p, "direction": tt.direction}
                for m, tt in res.t_tests.items()
            },
            "percent_below_random": res.percent_below_random,
        }
    documents = {
        doc_id: [{
            "method": r.method, "k": r.k, "h_b": r.h_b,
            "keywords": list(r.keywords), "note": r.note,
        } for r in results]
        for doc_id, results in table.per_document.items()
    }
    return {"collections": collections, "documents": documents}


PATTERNS = ("double_island", "single_island", "uniform", "single_occurrence")


@dataclass(frozen=True)
class PlantedWord:
    word: str
    pattern: str
    islands: tuple[tuple[int, int], ...] = ()

    def positions(self, n: int) -> list[int]:
        if self.pattern == "uniform":
            return list(range(n))
        if self.pattern == "single_occurrence":
            (start, end), = self.islands
            if start != end:
                raise ValueError("single_occurrence island must have width 1")
            return [start]
        expect = {"single_island": 1, "double_island": 2}[self.pattern]
        if len(self.islands) != expect:
            raise ValueError(
                f"{self.pattern} needs {expect} island(s), got {len(self.islands)}")
        out = []
        for start, end in self.islands:
            if not 0 <= start <= end < n:
                raise ValueError(f"island out of range: ({start}, {end})")
            out.extend(range(start, end + 1))
        if len(set(out)) != len(out):
            raise ValueError("islands overlap")
        return out


@dataclass(frozen=True)
class SyntheticSpec:
    n: int
    planted: tuple[PlantedWord, ...]
    filler_vocab: int = 50
    seed: int = 0

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("n must be >= 1")
        names = [p.word for p in self.planted]
        if len(set(names)) != len(names):
            raise ValueError("conflicting specs for one word")


def synth_document(spec: SyntheticSpec, doc_id: str = "synthetic") -> Document:
    """Build a document with exactly-placed planted words plus seeded filler.

    Pattern validation happens before any randomness so bad specs fail
    identically regardless of seed.  Filler pads every sentence to at
    least 3 tokens.
    """
    placements = {p.word: p.positions(spec.n) for p in spec.planted}
    rng = np.random.default_rng(np.random.SeedSequence(spec.seed))
    sentences: list[list[str]] = [[] for _ in range(spec.n)]
    for word, positions in placements.items():
        for i in positions:
            sentences[i].append(word)
    for sent in sentences:
        while len(sent) < 3:
            sent.append(f"filler{rng.integers(spec.filler_vocab)}")
    return build_document(sentences, doc_id=doc_id)


def spec_from_mapping(entry: dict) -> SyntheticSpec:
    """Build a SyntheticSpec from one parsed-JSON document entry."""
    planted = tuple(PlantedWord(
        word=pw["word"], pattern=pw["pattern"],
        islands=tuple((int(a), int(b)) for a, b in pw.get("islands", [])),
    ) for pw in entry.get("planted", []))
    return SyntheticSpec(n=int(entry["n"]), planted=planted,
                         filler_vocab=int(entry.get("filler_vocab", 50)),
                         seed=int(entry.get("seed", 0)))


def synthetic_collection(raw: dict) -> list[Document]:
    """Materialize every document described by a {"documents": [...]} spec."""
    entries = raw.get("documents")
    if not isinstance(entries, list) or not entries:
        raise ValueError('spec must hold a non-empty "documents" list')
    docs = []
    for entry in entries:
        spec = spec_from_mapping(entry)
        docs.append(synth_document(spec, doc_id=str(entry.get("doc_id",
                                                              "synthetic"))))
    return docs


def mode_report(spec: SyntheticSpec, taus=(10,)) -> dict:
    """Planted-pattern discrimination across all detection modes.

    For every planted word x mode x tau: theta, the event-width bound,
    and the keyword verdict.  Modes that select the uniformly distributed
    word are listed under "flags" because a flat distribution is the
    advertised non-keyword case.
    """
    from .window_entropy import delta_t_max_bound, word_curve, word_theta

    doc = synth_document(spec)
    rows = []
    flags = []
    for planted in spec.planted:
        counts = doc.occurrence_vector(planted.word)
        theta = word_theta(counts)
        curve = word_curve(doc, planted.word)
        for mode in DetectionMode:
            bound = delta_t_max_bound(curve, theta, mode)
            for tau in taus:
                selected = bound is not None and bound > tau
                rows.append({
                    "word": planted.word,
                    "pattern": planted.pattern,
                    "mode": mode.value,
                    "tau": tau,
                    "theta": theta,
                    "delta_t_max_bound": bound,
                    "is_keyword": selected,
                })
                if selected and planted.pattern == "uniform":
                    flags.append(
                        f"mode {mode.value} selects the uniform word "
                        f"{planted.word!r} at tau={tau}: conflicts with the "
                        "flat-distribution non-keyword expectation")
    return {"n": spec.n, "taus": list(taus), "rows": rows, "flags": flags}
