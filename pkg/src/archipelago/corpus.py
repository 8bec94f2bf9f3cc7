"""Text ingestion: sentence segmentation, tokenization, Document construction.

The pipeline deliberately keeps stop words: discounting them is the
extractor's job, not the tokenizer's.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

# Sentence enders: a run of .!? followed by whitespace or end of text.
_BOUNDARY = re.compile(r"[.!?]+(?=\s|$)")

# Trailing chunks that end with '.' but do not close a sentence.
_ABBREVIATIONS = frozenset({"mr.", "mrs.", "dr.", "st.", "vs.", "e.g.", "i.e."})


def segment_sentences(content: str) -> list[str]:
    """Split raw text into sentence strings.

    Boundaries sit after runs of '.', '!', '?' that are followed by
    whitespace or end of input.  A short abbreviation guard (Mr., Dr.,
    e.g., et al., ...) suppresses false splits.  Newlines alone never
    split; empty pieces are dropped.  Raises ValueError("no sentences")
    when nothing survives.
    """
    sentences = []
    start = 0
    for m in _BOUNDARY.finditer(content):
        candidate = content[start:m.end()]
        chunks = candidate.split()
        if chunks:
            last = chunks[-1].lower()
            if last in _ABBREVIATIONS:
                continue
            if last == "al." and len(chunks) >= 2 and chunks[-2].lower() == "et":
                continue
        piece = candidate.strip()
        if piece:
            sentences.append(piece)
        start = m.end()
    tail = content[start:].strip()
    if tail:
        sentences.append(tail)
    if not sentences:
        raise ValueError("no sentences")
    return sentences


def tokenize(sentence: str) -> list[str]:
    """Lowercase and reduce each whitespace-delimited chunk to its
    letter/digit characters; chunks that vanish are dropped.

    Punctuation inside a chunk is removed rather than treated as a
    separator, so "graph-theory" becomes "graphtheory" and "d'Aubigne"
    becomes "daubigne".
    """
    tokens = []
    for chunk in sentence.lower().split():
        word = "".join(ch for ch in chunk if ch.isalnum())
        if word:
            tokens.append(word)
    return tokens


@dataclass(frozen=True)
class Document:
    """Tokenized text: ordered sentences plus a first-occurrence vocabulary.

    Immutable after construction; derived occurrence arrays are cached on
    first use.
    """

    doc_id: str
    sentences: tuple[tuple[str, ...], ...]
    vocab: dict[str, int]
    _cache: dict = field(default_factory=dict, repr=False, compare=False)

    @property
    def n_sentences(self) -> int:
        return len(self.sentences)

    @property
    def words(self) -> list[str]:
        # vocab preserves insertion (= first occurrence) order
        return list(self.vocab)

    def occurrence_vector(self, word: str) -> np.ndarray:
        """Per-sentence multiplicities of ``word``; length n_sentences."""
        if word not in self.vocab:
            raise KeyError(f"word not in document: {word!r}")
        counts = np.zeros(self.n_sentences, dtype=np.int64)
        for i, sent in enumerate(self.sentences):
            for tok in sent:
                if tok == word:
                    counts[i] += 1
        return counts

    def support(self, word: str) -> frozenset[int]:
        """Indices of sentences containing ``word`` at least once."""
        if word not in self.vocab:
            raise KeyError(f"word not in document: {word!r}")
        return frozenset(i for i, s in enumerate(self.sentences) if word in s)

    def token_table(self) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
        """(word_id, sentence_id, count) triples sorted by word then sentence.

        One row per distinct (word, sentence) pair; shared by the batched
        entropy sweep and the co-occurrence builder.
        """
        if "table" not in self._cache:
            wids, sids = [], []
            for i, sent in enumerate(self.sentences):
                for tok in sent:
                    wids.append(self.vocab[tok])
                    sids.append(i)
            wid = np.asarray(wids, dtype=np.int64)
            sid = np.asarray(sids, dtype=np.int64)
            # collapse duplicate tokens within a sentence into counts
            key = wid * self.n_sentences + sid
            uniq, counts = np.unique(key, return_counts=True)
            self._cache["table"] = (
                uniq // self.n_sentences,
                uniq % self.n_sentences,
                counts.astype(np.int64),
            )
        return self._cache["table"]

    def word_frequencies(self) -> np.ndarray:
        """Total occurrence count per vocabulary id."""
        wid, _, cnt = self.token_table()
        freq = np.zeros(len(self.vocab), dtype=np.int64)
        np.add.at(freq, wid, cnt)
        return freq


def build_document(token_sentences, doc_id: str = "doc") -> Document:
    """Assemble a Document from tokenized sentences.

    Sentences that tokenized to nothing are dropped (they carry no
    occurrence mass and would distort window indices).  Raises
    ValueError("empty document") when no sentence survives.
    """
    kept = [tuple(s) for s in token_sentences if len(s) > 0]
    if not kept:
        raise ValueError("empty document")
    vocab: dict[str, int] = {}
    for sent in kept:
        for tok in sent:
            if not tok:
                raise ValueError("empty token")
            if tok not in vocab:
                vocab[tok] = len(vocab)
    return Document(doc_id=doc_id, sentences=tuple(kept), vocab=vocab)


def document_from_text(content: str, doc_id: str = "doc") -> Document:
    """segment + tokenize + build in one step."""
    tokenized = [tokenize(s) for s in segment_sentences(content)]
    return build_document(tokenized, doc_id=doc_id)


def load_document(path) -> Document:
    """Read one UTF-8 text file as a Document named by its file stem."""
    p = Path(path)
    return document_from_text(p.read_text(encoding="utf-8"), doc_id=p.stem)


@dataclass(frozen=True)
class CorpusIndex:
    """Document-frequency index over a list of documents."""

    documents: tuple[Document, ...]
    doc_frequency: dict[str, int]

    @property
    def size(self) -> int:
        return len(self.documents)


def build_corpus_index(documents) -> CorpusIndex:
    docs = tuple(documents)
    if not docs:
        raise ValueError("empty corpus")
    df: dict[str, int] = {}
    for doc in docs:
        for word in doc.vocab:
            df[word] = df.get(word, 0) + 1
    return CorpusIndex(documents=docs, doc_frequency=df)


def load_collection(directory, manifest_name: str = "manifest.json"):
    """Load every .txt file in a directory, sorted by document id.

    Returns (documents, labels) where labels maps doc_id -> collection
    label.  Labels come from an optional JSON manifest {filename: label};
    files not listed get the label "default".
    """
    d = Path(directory)
    if not d.is_dir():
        raise FileNotFoundError(f"not a directory: {d}")
    labels: dict[str, str] = {}
    manifest = d / manifest_name
    mapping = {}
    if manifest.exists():
        mapping = json.loads(manifest.read_text(encoding="utf-8"))
    docs = []
    for path in sorted(d.glob("*.txt")):
        doc = load_document(path)
        docs.append(doc)
        labels[doc.doc_id] = mapping.get(path.name, "default")
    if not docs:
        raise ValueError(f"no .txt files in {d}")
    docs.sort(key=lambda doc: doc.doc_id)
    return docs, labels
