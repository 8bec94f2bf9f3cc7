"""Window-based entropy curves and archipelago keyword extraction.

A word's per-sentence occurrence counts are pooled into consecutive
windows of width delta_t; the Shannon entropy of that pooled distribution,
swept over all widths, is the word's entropy curve.  Words whose curve
shows a qualifying entropy event at a window width above tau form the
keyword set.

Two computation paths exist: a per-word prefix-sum path (the readable
reference) and a batched all-vocabulary sweep used by extraction.  A
property test holds them equal.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

from .corpus import Document


class DetectionMode(enum.Enum):
    """Which entropy-step pattern counts as an archipelago event.

    The source heuristic is stated once as an increase condition and once
    as a drop condition; all three readings are kept as first-class modes
    rather than silently picking one.
    """

    LITERAL_INCREASE = "increase"
    DROP_MAGNITUDE = "drop"
    PLATEAU_THEN_DROP = "plateau"

    @classmethod
    def from_tag(cls, tag: str) -> "DetectionMode":
        for mode in cls:
            if mode.value == tag:
                return mode
        raise ValueError(f"unknown detection mode: {tag!r}")


DEFAULT_MODE = DetectionMode.DROP_MAGNITUDE

# Events are only scanned for widths >= 3; below that there is no
# preceding step pair to compare.
MIN_EVENT_WIDTH = 3


@dataclass(frozen=True)
class EntropyCurve:
    """H(delta_t) for delta_t = 1 .. n-1; values[i] is the width-(i+1) entropy."""

    word_id: int
    values: np.ndarray

    def value_at(self, delta_t: int) -> float:
        if not 1 <= delta_t <= len(self.values):
            raise IndexError(f"delta_t out of range: {delta_t}")
        return float(self.values[delta_t - 1])


@dataclass(frozen=True)
class DropEvent:
    delta_t: int
    signed_delta: float


@dataclass(frozen=True)
class ArchipelagoVerdict:
    word_id: int
    theta: float
    delta_t_max_bound: int | None
    is_keyword: bool
    mode: DetectionMode


@dataclass(frozen=True)
class KeywordSet:
    """Extracted keywords in ascending vocabulary-id order."""

    words: tuple[str, ...]
    tau: int
    mode: DetectionMode
    theta_per_word: dict[str, float]

    def __len__(self) -> int:
        return len(self.words)

    def __iter__(self):
        return iter(self.words)


def window_counts(counts: np.ndarray, delta_t: int) -> np.ndarray:
    """Pool per-sentence counts into windows of width delta_t.

    Windows are half-open ranges anchored at sentence 0; the last window
    may be short.  Returns ceil(n / delta_t) sums.
    """
    counts = np.asarray(counts)
    n = len(counts)
    if not 1 <= delta_t <= n:
        raise ValueError(f"delta_t out of range: {delta_t}")
    return np.add.reduceat(counts, np.arange(0, n, delta_t))


def entropy_a(counts: np.ndarray, delta_t: int, base: float = 2.0) -> float:
    """Shannon entropy of the window distribution at one width."""
    wins = window_counts(counts, delta_t)
    total = wins.sum()
    if total == 0:
        raise ValueError("all-zero occurrence vector")
    p = wins[wins > 0] / total
    # distribution must be normalized before the entropy sum
    assert abs(p.sum() - 1.0) < 1e-9
    h = -(p * np.log2(p)).sum()
    if base != 2.0:
        h /= math.log2(base)
    return float(h) + 0.0  # avoid IEEE negative zero


def entropy_curve(counts: np.ndarray, word_id: int = -1,
                  base: float = 2.0) -> EntropyCurve:
    """Entropy at every width 1 .. n-1 via prefix sums.

    Cost is sum over widths of n/delta_t window lookups, i.e. O(n log n).
    """
    counts = np.asarray(counts)
    n = len(counts)
    if counts.sum() == 0:
        raise ValueError("all-zero occurrence vector")
    prefix = np.concatenate([[0], np.cumsum(counts)])
    total = float(prefix[-1])
    values = np.zeros(max(n - 1, 0))
    for dt in range(1, n):
        edges = np.arange(0, n, dt)
        wins = prefix[np.minimum(edges + dt, n)] - prefix[edges]
        p = wins[wins > 0] / total
        values[dt - 1] = -(p * np.log2(p)).sum()
    if base != 2.0:
        values /= math.log2(base)
    values += 0.0  # avoid IEEE negative zero
    return EntropyCurve(word_id=word_id, values=values)


def word_curve(doc: Document, word: str, base: float = 2.0) -> EntropyCurve:
    return entropy_curve(doc.occurrence_vector(word),
                         word_id=doc.vocab[word], base=base)


def detect_events(curve: EntropyCurve, theta: float,
                  mode: DetectionMode = DEFAULT_MODE) -> list[DropEvent]:
    """Scan widths 3 .. n-1 for qualifying entropy steps.

    The step at width dt is H(dt) - H(dt-1).  LITERAL_INCREASE fires on
    step > theta; DROP_MAGNITUDE on -step > theta; PLATEAU_THEN_DROP on
    -step > theta with the previous step flat (|H(dt-2) - H(dt-1)| <= theta).
    """
    if theta < 0:
        raise ValueError("theta must be >= 0")
    v = curve.values
    events = []
    for dt in range(MIN_EVENT_WIDTH, len(v) + 1):
        step = v[dt - 1] - v[dt - 2]
        if mode is DetectionMode.LITERAL_INCREASE:
            fired = step > theta
        elif mode is DetectionMode.DROP_MAGNITUDE:
            fired = -step > theta
        else:
            fired = -step > theta and abs(v[dt - 3] - v[dt - 2]) <= theta
        if fired:
            events.append(DropEvent(delta_t=dt, signed_delta=float(step)))
    return events


def delta_t_max_bound(curve: EntropyCurve, theta: float,
                      mode: DetectionMode = DEFAULT_MODE) -> int | None:
    """Largest event width, or None when no event fires.

    "Largest" because the originating loop overwrites the bound at each
    qualifying width while sweeping widths upward.
    """
    events = detect_events(curve, theta, mode)
    return events[-1].delta_t if events else None


def word_theta(counts: np.ndarray, base: float = 2.0) -> float:
    """Per-word threshold: the width-1 entropy divided by n."""
    return entropy_a(counts, 1, base=base) / len(counts)


def sweep_all_words(doc: Document, mode: DetectionMode = DEFAULT_MODE,
                    base: float = 2.0) -> tuple[np.ndarray, np.ndarray]:
    """Batched event sweep over the whole vocabulary.

    Returns (theta, bound) arrays indexed by vocabulary id; bound is -1
    where no event fires.  Matches the per-word path exactly: the same
    window partition, threshold, and event rules, evaluated for every
    word per width in one vectorized pass over the token table.
    """
    wid, sid, cnt = doc.token_table()
    n = doc.n_sentences
    nvocab = len(doc.vocab)
    cnt = cnt.astype(np.float64)
    tot = np.bincount(wid, weights=cnt, minlength=nvocab)

    p1 = cnt / tot[wid]
    h1 = np.bincount(wid, weights=-p1 * np.log2(p1), minlength=nvocab)
    scale = math.log2(base) if base != 2.0 else 1.0
    theta = h1 / scale / n

    bound = np.full(nvocab, -1, dtype=np.int64)
    if n < 2:
        return theta, bound

    # rows are sorted by (word, sentence), so each (word, window) group is
    # a contiguous run; word-change flags are width-independent
    wchange = wid[1:] != wid[:-1]
    new = np.empty(len(wid), dtype=bool)
    new[0] = True

    prev1 = h1 / scale  # entropy at the previous width
    prev2 = np.zeros(nvocab)
    for dt in range(2, n):
        win = sid // dt
        np.not_equal(win[1:], win[:-1], out=new[1:])
        new[1:] |= wchange
        starts = np.flatnonzero(new)
        f = np.add.reduceat(cnt, starts)
        sw = wid[starts]
        p = f / tot[sw]
        h = np.bincount(sw, weights=-p * np.log2(p), minlength=nvocab)
        if scale != 1.0:
            h /= scale
        if dt >= MIN_EVENT_WIDTH:
            step = h - prev1
            if mode is DetectionMode.LITERAL_INCREASE:
                fired = step > theta
            elif mode is DetectionMode.DROP_MAGNITUDE:
                fired = -step > theta
            else:
                fired = (-step > theta) & (np.abs(prev2 - prev1) <= theta)
            bound[fired] = dt
        prev2, prev1 = prev1, h
    return theta, bound


def all_verdicts(doc: Document, tau: int, mode: DetectionMode = DEFAULT_MODE,
                 base: float = 2.0) -> list[ArchipelagoVerdict]:
    """Per-word keyword verdicts for the whole vocabulary, id order."""
    if tau < 1:
        raise ValueError("tau must be >= 1")
    theta, bound = sweep_all_words(doc, mode=mode, base=base)
    verdicts = []
    for word_id in range(len(doc.vocab)):
        b = int(bound[word_id])
        has = b >= 0
        verdicts.append(ArchipelagoVerdict(
            word_id=word_id,
            theta=float(theta[word_id]),
            delta_t_max_bound=b if has else None,
            is_keyword=has and b > tau,
            mode=mode,
        ))
    return verdicts


def extract_keywords(doc: Document, tau: int,
                     mode: DetectionMode = DEFAULT_MODE,
                     base: float = 2.0) -> KeywordSet:
    """Words whose largest event width exceeds tau, in vocabulary order."""
    verdicts = all_verdicts(doc, tau, mode=mode, base=base)
    id_to_word = {i: w for w, i in doc.vocab.items()}
    words = tuple(id_to_word[v.word_id] for v in verdicts if v.is_keyword)
    thetas = {id_to_word[v.word_id]: v.theta for v in verdicts if v.is_keyword}
    return KeywordSet(words=words, tau=tau, mode=mode, theta_per_word=thetas)
