"""Co-occurrence graph clustering and graph-based entropy.

A keyword set is scored against a document in four steps: rank keyword
pairs by a support-overlap index under an edge budget, take connected
components as clusters, assign each keyword-bearing sentence to its
nearest cluster by binary cosine, and report the Shannon entropy of the
resulting sentence-over-cluster distribution.  Lower entropy means the
keywords tie the document together into fewer, better-covered themes.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .corpus import Document


@dataclass(frozen=True)
class CoocGraph:
    """Budgeted co-occurrence graph over one keyword set.

    Nodes are positions in ``words``; edges are (i, j, weight) with i < j.
    """

    words: tuple[str, ...]
    edges: tuple[tuple[int, int, float], ...]
    rho: float
    edge_budget: int


@dataclass(frozen=True)
class ClusterPartition:
    """Disjoint keyword-index clusters covering every node.

    Members sorted ascending inside each cluster; clusters ordered by
    their smallest member.
    """

    clusters: tuple[tuple[int, ...], ...]

    def __len__(self) -> int:
        return len(self.clusters)


@dataclass(frozen=True)
class SentenceAssignment:
    """Per-sentence nearest cluster (None = sentence has no keyword)."""

    cluster_index: tuple
    counts: np.ndarray

    @property
    def probabilities(self) -> np.ndarray:
        total = self.counts.sum()
        if total == 0:
            return np.zeros_like(self.counts, dtype=float)
        return self.counts / total


@dataclass(frozen=True)
class EntropyBReport:
    h_b: float
    graph: CoocGraph
    partition: ClusterPartition
    assignment: SentenceAssignment
    rho: float
    keywords: tuple[str, ...]


def cooc(doc: Document, x: str, y: str) -> float:
    """Support-overlap index |S_x & S_y| / max(|S_x|, |S_y|).

    Presence-based: multiplicity within a sentence does not matter.
    """
    if x == y:
        raise ValueError("cooc requires two distinct words")
    sx = doc.support(x)
    sy = doc.support(y)
    return len(sx & sy) / max(len(sx), len(sy))


def build_cooc_graph(doc: Document, keywords, rho: float) -> CoocGraph:
    """Rank positive-overlap pairs and keep the top floor(rho*k*(k+1)/2).

    Ties break by joint support descending, then (i, j) ascending.  Pairs
    with zero overlap never become edges, so the budget may go unused.
    """
    words = tuple(keywords)
    if not words:
        raise ValueError("empty keyword set")
    if len(set(words)) != len(words):
        raise ValueError("duplicate keywords")
    if not 0 < rho <= 1:
        raise ValueError(f"rho out of range: {rho}")
    supports = [doc.support(w) for w in words]
    k = len(words)
    candidates = []
    for i in range(k):
        for j in range(i + 1, k):
            joint = len(supports[i] & supports[j])
            if joint == 0:
                continue
            w = joint / max(len(supports[i]), len(supports[j]))
            candidates.append((w, joint, i, j))
    candidates.sort(key=lambda t: (-t[0], -t[1], t[2], t[3]))
    budget = math.floor(rho * k * (k + 1) / 2)
    edges = tuple((i, j, w) for w, _, i, j in candidates[:budget])
    return CoocGraph(words=words, edges=edges, rho=rho, edge_budget=budget)


def connected_clusters(graph: CoocGraph) -> ClusterPartition:
    """Union-find over the edge list; isolated nodes stay singletons."""
    parent = list(range(len(graph.words)))

    def find(a):
        root = a
        while parent[root] != root:
            root = parent[root]
        while parent[a] != root:  # path compression
            parent[a], a = root, parent[a]
        return root

    for i, j, _ in graph.edges:
        ri, rj = find(i), find(j)
        if ri != rj:
            parent[max(ri, rj)] = min(ri, rj)

    groups: dict[int, list[int]] = {}
    for node in range(len(graph.words)):
        groups.setdefault(find(node), []).append(node)
    ordered = sorted(groups.values(), key=lambda g: g[0])
    return ClusterPartition(clusters=tuple(tuple(g) for g in ordered))


def assign_sentences(doc: Document, partition: ClusterPartition,
                     keywords) -> SentenceAssignment:
    """Send each keyword-bearing sentence to its maximum-cosine cluster.

    cos(s, c) = |s & c| / sqrt(|s|*|c|) over binary keyword vectors.  For
    a fixed sentence |s| is constant, so comparing inter^2/|c| gives the
    same order without square-root rounding; equal exact ratios compare
    equal in floats for these integer sizes, and argmax takes the first
    (= lowest-index) cluster on ties.
    """
    if len(partition) == 0:
        raise ValueError("empty partition")
    words = tuple(keywords)
    kw_index = {w: i for i, w in enumerate(words)}
    cluster_of = {}
    for ci, comp in enumerate(partition.clusters):
        for node in comp:
            cluster_of[node] = ci
    sizes = np.array([len(c) for c in partition.clusters], dtype=float)

    indices = []
    counts = np.zeros(len(partition), dtype=np.int64)
    for sent in doc.sentences:
        present = {kw_index[t] for t in sent if t in kw_index}
        if not present:
            indices.append(None)
            continue
        inter = np.zeros(len(partition), dtype=float)
        for node in present:
            inter[cluster_of[node]] += 1
        best = int(np.argmax(inter * inter / sizes))
        indices.append(best)
        counts[best] += 1
    return SentenceAssignment(cluster_index=tuple(indices), counts=counts)


def entropy_b(assignment: SentenceAssignment, base: float = 2.0) -> float:
    """Shannon entropy of sentences over clusters, in bits by default."""
    total = assignment.counts.sum()
    if total == 0:
        raise ValueError("unscorable keyword set")
    p = assignment.counts[assignment.counts > 0] / total
    h = -(p * np.log2(p)).sum()
    if base != 2.0:
        h /= math.log2(base)
    return float(h) + 0.0  # avoid IEEE negative zero


def evaluate_keyword_set(doc: Document, keywords, rho: float,
                         base: float = 2.0) -> EntropyBReport:
    """Full pipeline: graph, clusters, assignment, entropy."""
    words = tuple(keywords)
    graph = build_cooc_graph(doc, words, rho)
    partition = connected_clusters(graph)
    assignment = assign_sentences(doc, partition, words)
    h = entropy_b(assignment, base=base)
    return EntropyBReport(h_b=h, graph=graph, partition=partition,
                          assignment=assignment, rho=rho, keywords=words)


def graph_to_dot(graph: CoocGraph, partition: ClusterPartition | None = None) -> str:
    """Render the graph in DOT form, one node per keyword."""
    lines = ["graph cooc {"]
    for i, w in enumerate(graph.words):
        lines.append(f'  n{i} [label="{w}"];')
    for i, j, w in graph.edges:
        lines.append(f"  n{i} -- n{j} [weight={w:.6f}];")
    if partition is not None:
        for ci, comp in enumerate(partition.clusters):
            members = " ".join(f"n{i}" for i in comp)
            lines.append(f"  // cluster {ci}: {members}")
    lines.append("}")
    return "\n".join(lines) + "\n"
