"""Comparison extractors: tf-idf, TextRank, RAKE, seeded random.

Each returns the top k words of a document under its own scoring rule,
with ties always broken by ascending vocabulary id so runs are
reproducible bit for bit.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from importlib import resources

import numpy as np

from .corpus import CorpusIndex, Document

TEXTRANK_DAMPING = 0.85
TEXTRANK_TOL = 1e-6
TEXTRANK_MAX_ITER = 200


@dataclass(frozen=True)
class RankedKeywords:
    method: str
    ranking: tuple[tuple[str, float], ...]
    k: int

    @property
    def words(self) -> tuple[str, ...]:
        return tuple(w for w, _ in self.ranking)


def _top_k(doc: Document, scores: dict[str, float], k: int,
           method: str) -> RankedKeywords:
    # sort by score desc, vocabulary id asc
    ordered = sorted(scores.items(), key=lambda kv: (-kv[1], doc.vocab[kv[0]]))
    return RankedKeywords(method=method, ranking=tuple(ordered[:k]), k=k)


def tfidf_keywords(doc: Document, corpus: CorpusIndex, k: int) -> RankedKeywords:
    """score(w) = tf(w, doc) * log2(N / df(w)); absent words never scored."""
    if k < 1:
        raise ValueError("k must be >= 1")
    if corpus.size == 0:
        raise ValueError("empty corpus")
    freq = doc.word_frequencies()
    scores = {}
    for word, wid in doc.vocab.items():
        df = corpus.doc_frequency[word]
        scores[word] = float(freq[wid]) * math.log2(corpus.size / df)
    return _top_k(doc, scores, k, "tfidf")


def textrank_keywords(doc: Document, k: int) -> RankedKeywords:
    """Damped centrality over the adjacent-token co-occurrence graph.

    Edges join consecutive tokens within a sentence (window of 2), no
    self-loops.  Scores iterate S(v) = (1-d) + d * sum S(u)/deg(u) from a
    uniform start of 1.0 until the largest change drops below 1e-6 or 200
    rounds pass.  Isolated words keep the baseline score 1-d.
    """
    if k < 1:
        raise ValueError("k must be >= 1")
    nvocab = len(doc.vocab)
    neighbors: list[set[int]] = [set() for _ in range(nvocab)]
    for sent in doc.sentences:
        for a, b in zip(sent, sent[1:]):
            ia, ib = doc.vocab[a], doc.vocab[b]
            if ia != ib:
                neighbors[ia].add(ib)
                neighbors[ib].add(ia)

    adj = [np.fromiter(ns, dtype=np.int64) for ns in neighbors]
    deg = np.array([len(ns) for ns in neighbors], dtype=float)
    scores = np.ones(nvocab)
    d = TEXTRANK_DAMPING
    for _ in range(TEXTRANK_MAX_ITER):
        shares = np.zeros(nvocab)
        contrib = np.divide(scores, deg, out=np.zeros(nvocab), where=deg > 0)
        for v in range(nvocab):
            if len(adj[v]):
                shares[v] = contrib[adj[v]].sum()
        updated = (1 - d) + d * shares
        change = np.abs(updated - scores).max()
        scores = updated
        if change < TEXTRANK_TOL:
            break
    by_word = {w: float(scores[i]) for w, i in doc.vocab.items()}
    return _top_k(doc, by_word, k, "textrank")


def load_stoplist(path=None) -> frozenset[str]:
    """Bundled English stoplist, or one word per line from ``path``."""
    if path is not None:
        text = open(path, encoding="utf-8").read()
    else:
        text = (resources.files("archipelago") / "data" / "stopwords_en.txt"
                ).read_text(encoding="utf-8")
    return frozenset(w.strip() for w in text.splitlines() if w.strip())


def rake_keywords(doc: Document, k: int, stoplist=None) -> RankedKeywords:
    """Degree-over-frequency scores on stoplist-free candidate runs.

    Candidates are the maximal token runs inside each sentence that
    contain no stop word.  Each occurrence of w in a candidate adds 1 to
    freq(w) and the candidate's length to deg(w); score = deg/freq.
    Returns an empty ranking when every token is a stop word.
    """
    if k < 1:
        raise ValueError("k must be >= 1")
    if stoplist is None:
        stoplist = load_stoplist()
    freq: dict[str, int] = {}
    deg: dict[str, int] = {}
    for sent in doc.sentences:
        run: list[str] = []
        for tok in list(sent) + [None]:
            if tok is None or tok in stoplist:
                if run:
                    for w in run:
                        freq[w] = freq.get(w, 0) + 1
                        deg[w] = deg.get(w, 0) + len(run)
                    run = []
            else:
                run.append(tok)
    scores = {w: deg[w] / freq[w] for w in freq}
    return _top_k(doc, scores, k, "rake")


def random_keywords(doc: Document, k: int, seed) -> RankedKeywords:
    """Uniform sample of min(k, |W|) vocabulary words, all scored 1.0.

    ``seed`` feeds numpy's SeedSequence machinery, so ints and spawned
    sequences both work and the draw is stable across platforms.
    """
    if k < 1:
        raise ValueError("k must be >= 1")
    rng = np.random.default_rng(seed)
    words = doc.words
    take = min(k, len(words))
    picked = rng.choice(len(words), size=take, replace=False)
    ranking = tuple((words[i], 1.0) for i in sorted(picked))
    return RankedKeywords(method="random", ranking=ranking, k=k)
