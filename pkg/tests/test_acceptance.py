"""Shipping gate: one test per release criterion, one PASS/FAIL line each.

Numeric checks hold to 1e-9 (1e-6 for t-test p-values).  Every expected
number was produced by the independent oracles in oracles.py before the
implementation existed; nothing here is tuned to the code under test.
"""

import csv
import io
import json
import math
import time
from pathlib import Path

import numpy as np
import pytest

from archipelago.baselines import rake_keywords, tfidf_keywords
from archipelago.bench import (
    ExperimentConfig,
    json_safe,
    mode_report,
    paired_t_test,
    run_collection,
)
from archipelago.cli import EXIT_OK, main
from archipelago.corpus import (
    build_corpus_index,
    build_document,
    load_collection,
    load_document,
)
from archipelago.graph_entropy import cooc, entropy_b, evaluate_keyword_set
from archipelago.graph_entropy import ClusterPartition, assign_sentences
from archipelago.window_entropy import (
    DetectionMode,
    entropy_a,
    entropy_curve,
    extract_keywords,
)

from conftest import PLANTED_SPEC
from oracles import brute_curve, brute_entropy, brute_graph_entropy, t_cdf_quad

DATA = Path(__file__).parent / "data"
GOLDEN = DATA / "golden"
TOL = 1e-9
P_TOL = 1e-6


def _verdict(num, ok, detail):
    print(f"{'PASS' if ok else 'FAIL'} criterion {num}: {detail}")
    assert ok, f"criterion {num}: {detail}"


def test_criterion_1_formula_oracles():
    problems = []

    # window entropy on the double-island layout, against brute slicing
    counts = np.zeros(64, dtype=np.int64)
    counts[[0, 1, 2, 3, 40, 41, 42, 43]] = 1
    oracle = brute_curve(counts)
    for dt, want in [(4, 1.0), (5, 1.0), (6, 1.5),
                     (43, 0.5435644431995964), (44, 0.0)]:
        got = entropy_a(counts, dt)
        if abs(got - want) > TOL or abs(got - oracle[dt - 1]) > TOL:
            problems.append(f"entropy_a dt={dt}: {got} vs {want}")
    mixed = np.array([2, 1, 1])
    if abs(entropy_a(mixed, 1) - 1.5) > TOL or \
       abs(entropy_a(mixed, 1) - brute_entropy(mixed, 1)) > TOL:
        problems.append("entropy_a mixed counts")

    # co-occurrence index against the exact rational
    doc = build_document([["a", "b"], ["b", "c"], ["a", "c"], ["a"]])
    if abs(cooc(doc, "a", "b") - 1 / 3) > TOL:
        problems.append(f"cooc: {cooc(doc, 'a', 'b')} vs 1/3")

    # graph entropy of a 3-1 sentence split
    doc31 = build_document([["a"], ["a"], ["a"], ["b"]])
    assign = assign_sentences(doc31, ClusterPartition(clusters=((0,), (1,))),
                              ["a", "b"])
    if abs(entropy_b(assign) - 0.8112781244591328) > TOL:
        problems.append("entropy_b 3-1 split")

    # tf-idf of a word unique to 1 of 4 documents, frequency 3
    target = build_document([["w", "w", "w", "pad"]], doc_id="t")
    others = [build_document([["pad", f"u{i}"]], doc_id=f"o{i}")
              for i in range(3)]
    corpus = build_corpus_index([target] + others)
    scores = dict(tfidf_keywords(target, corpus, k=10).ranking)
    if abs(scores["w"] - 6.0) > TOL:
        problems.append(f"tfidf: {scores['w']} vs 6.0")

    # RAKE degree/frequency on a two-run document
    rdoc = build_document([["a", "big", "red", "dog"], ["stop", "dog"]])
    rscores = dict(rake_keywords(rdoc, k=5,
                                 stoplist=frozenset({"a", "stop"})).ranking)
    if abs(rscores["dog"] - 2.0) > TOL or abs(rscores["big"] - 3.0) > TOL:
        problems.append("rake deg/freq")

    # paired one-sided t against the quadrature oracle
    a = np.array([1.0, 2.0, 3.0, 4.0, 5.0])
    d = np.array([-1.0, -2.0, -1.0, -3.0, -2.0])
    tt = paired_t_test(a + d, a)
    want_t = -4.81070235442364
    want_p = t_cdf_quad(want_t, 4)
    if abs(tt.t - want_t) > TOL:
        problems.append(f"t statistic: {tt.t} vs {want_t}")
    if abs(tt.p - want_p) > P_TOL:
        problems.append(f"t p-value: {tt.p} vs {want_p}")

    _verdict(1, not problems,
             "entropy_a, cooc, entropy_b, tfidf, rake, paired-t all match "
             "their oracles (1e-9; p at 1e-6)"
             if not problems else "; ".join(problems))


def test_criterion_2_entropy_property_suite():
    rng = np.random.default_rng(20240)
    n_vectors = 1000
    bound_violations = 0
    nesting_violations = 0
    for _ in range(n_vectors):
        n = int(rng.integers(2, 201))
        density = rng.uniform(0.05, 0.9)
        counts = rng.integers(1, 5, size=n) * (rng.random(n) < density)
        counts = counts.astype(np.int64)
        if counts.sum() == 0:
            counts[int(rng.integers(n))] = 1
        values = entropy_curve(counts).values
        for dt in range(1, n):
            h = values[dt - 1]
            if not (-TOL <= h <= math.log2(math.ceil(n / dt)) + TOL):
                bound_violations += 1
            k_mult = 2
            while k_mult * dt <= n - 1:
                if values[k_mult * dt - 1] > h + TOL:
                    nesting_violations += 1
                k_mult += 1

    # non-nested widths may rise: the double-island layout at 5 -> 6
    counts = np.zeros(64, dtype=np.int64)
    counts[[0, 1, 2, 3, 40, 41, 42, 43]] = 1
    values = entropy_curve(counts).values
    counterexample = values[5] > values[4] + 0.4

    ok = bound_violations == 0 and nesting_violations == 0 and counterexample
    _verdict(2, ok,
             f"{n_vectors} random vectors: {bound_violations} bound "
             f"violations, {nesting_violations} nested-coarsening "
             f"violations; non-nested increase 5->6 exists "
             f"({values[4]:.3f} -> {values[5]:.3f})")


def test_criterion_3_planted_discrimination():
    problems = []
    report = mode_report(PLANTED_SPEC, taus=(10,))
    rows = {(r["word"], r["mode"]): r for r in report["rows"]}

    for mode in ("increase", "drop", "plateau"):
        if rows[("mote", mode)]["is_keyword"]:
            problems.append(f"single-occurrence selected in {mode}")
    beacon = rows[("beacon", "drop")]
    if not beacon["is_keyword"] or beacon["delta_t_max_bound"] != 44:
        problems.append(f"double-island drop row: {beacon}")

    got = json.dumps(json_safe(report), sort_keys=True, indent=2) + "\n"
    want = (GOLDEN / "mode_report.json").read_text(encoding="utf-8")
    if got != want:
        problems.append("report does not match the frozen golden file")

    flagged = {f.split("'")[0] for f in report["flags"]}
    for mode in ("increase", "drop", "plateau"):
        selects_uniform = rows[("tide", mode)]["is_keyword"]
        is_flagged = any(f"mode {mode} " in f for f in report["flags"])
        if selects_uniform != is_flagged:
            problems.append(f"uniform selection in {mode} not flagged")

    _verdict(3, not problems,
             "planted corpus n=64 tau=10: single-occurrence rejected in all "
             "modes, double-island drop bound=44, report matches golden, "
             f"uniform-word selections flagged ({len(report['flags'])})"
             if not problems else "; ".join(problems))


def test_criterion_4_graph_oracle_equivalence():
    rng = np.random.default_rng(777)
    rhos = (0.1, 0.2, 0.5, 0.9)
    checked = 0
    mismatches = 0
    attempts = 0
    while checked < 200 and attempts < 2000:
        attempts += 1
        n_sent = int(rng.integers(1, 13))
        pool = [f"k{i}" for i in range(int(rng.integers(1, 9)))]
        filler = [f"f{i}" for i in range(6)]
        sentences = []
        for _ in range(n_sent):
            length = int(rng.integers(1, 6))
            words = []
            for _ in range(length):
                source = pool if rng.random() < 0.6 else filler
                words.append(source[int(rng.integers(len(source)))])
            sentences.append(words)
        try:
            doc = build_document(sentences)
        except ValueError:
            continue
        keywords = [w for w in doc.vocab if w.startswith("k")]
        if not keywords:
            continue
        rho = rhos[checked % len(rhos)]
        want_clusters, want_assign, want_h = brute_graph_entropy(
            [list(s) for s in doc.sentences], keywords, rho)
        report = evaluate_keyword_set(doc, keywords, rho)
        same = ([list(c) for c in report.partition.clusters] == want_clusters
                and list(report.assignment.cluster_index) == want_assign
                and abs(report.h_b - want_h) <= TOL)
        if not same:
            mismatches += 1
        checked += 1

    _verdict(4, checked == 200 and mismatches == 0,
             f"{checked} random instances (<=8 keywords, <=12 sentences): "
             f"{mismatches} partition/assignment/entropy mismatches")


def test_criterion_5_directional_separation_on_prose():
    docs, _ = load_collection(DATA / "stories")
    n_docs = len(docs)
    outcomes = []
    passing = []
    for mode in DetectionMode:
        config = ExperimentConfig(taus=(10,), rho=0.2, mode=mode,
                                  reps=20, master_seed=0)
        table = run_collection(docs, config)
        res = table.collections["default"]
        mean_e = res.means["entropy_tau10"]
        mean_r = res.means["random"]
        tt = res.t_tests["entropy_tau10"]
        outcomes.append(
            f"{mode.value}: {mean_e:.4f} vs random {mean_r:.4f} "
            f"(population {len(res.population)}, t={tt.t:.2f}, p={tt.p:.2g})")
        if len(res.population) >= 10 and mean_e < mean_r:
            passing.append(mode.value)

    _verdict(5, bool(passing),
             f"{n_docs} bundled narrative texts, tau=10 rho=0.2 R=20; "
             f"mean H_B below random in mode(s) {passing}; " + "; ".join(outcomes))


def test_criterion_6_bytewise_determinism(tmp_path, capsys):
    out_a = tmp_path / "a.json"
    out_b = tmp_path / "b.json"
    argv = ["compare", "--collection", str(DATA / "stories"),
            "--seed", "0", "--reps", "20"]
    assert main(argv + ["--out", str(out_a)]) == EXIT_OK
    assert main(argv + ["--out", str(out_b)]) == EXIT_OK
    capsys.readouterr()
    same = out_a.read_bytes() == out_b.read_bytes()
    _verdict(6, same,
             f"two compare runs, identical bytes: {same} "
             f"({out_a.stat().st_size} bytes)")


def test_criterion_7_sweep_performance():
    rng = np.random.default_rng(4242)
    sentences = []
    for _ in range(5000):
        length = int(rng.integers(6, 19))
        # frequent head plus a long tail of words seen a handful of times
        head = np.minimum(rng.zipf(1.35, size=length), 1500)
        tail = rng.integers(1500, 30000, size=length)
        pick = rng.random(length) < 0.55
        ids = np.where(pick, head, tail)
        sentences.append([f"w{i}" for i in ids])
    doc = build_document(sentences, doc_id="big")

    start = time.perf_counter()
    ks = extract_keywords(doc, tau=10)
    mid = time.perf_counter()
    report = evaluate_keyword_set(doc, ks.words, 0.2)
    elapsed = time.perf_counter() - start

    _verdict(7, elapsed < 10.0,
             f"5000 sentences, vocab {len(doc.vocab)}: extraction "
             f"{mid - start:.2f}s + evaluation {elapsed - (mid - start):.2f}s "
             f"= {elapsed:.2f}s (< 10s), k={len(ks)}, h_b={report.h_b:.3f}")


def test_criterion_8_anchor_curve_shapes(tmp_path, capsys):
    anchor = DATA / "anchor" / "overnight_express.txt"
    out = tmp_path / "curves.csv"
    code = main(["curve", "--in", str(anchor), "--word", "the",
                 "--word", "locket", "--out", str(out)])
    capsys.readouterr()
    assert code == EXIT_OK

    curves: dict[str, list[float]] = {}
    with out.open() as fh:
        for row in csv.DictReader(fh):
            curves.setdefault(row["word"], []).append(float(row["h_a_bits"]))

    doc = load_document(anchor)
    n = doc.n_sentences
    problems = []
    if abs(n - 133) > 3:
        problems.append(f"anchor length {n} strays from 133")

    the = np.array(curves["the"])
    rises = np.diff(the)
    if not (the[0] > 6.5 and the[-1] < 0.2 and rises.max() < 0.005):
        problems.append(
            f"'the' not continuously decreasing: start {the[0]:.3f}, "
            f"end {the[-1]:.3f}, max rise {rises.max():.4f}")

    loc = np.array(curves["locket"])
    occ = np.flatnonzero(doc.occurrence_vector("locket"))
    tail_start = int(occ.max()) + 1
    tail_zero = bool(np.all(loc[tail_start - 1:] == 0.0))
    zero_frac = float(np.mean(loc == 0.0))
    if not (loc[0] > 0 and tail_zero and zero_frac > 0.5):
        problems.append(
            f"'locket' lacks the zero plateau: tail from dt={tail_start} "
            f"all zero={tail_zero}, zero fraction {zero_frac:.2f}")

    membership = {
        mode.value: sorted(w for w in ("calvane", "ferrand", "locket")
                           if w in set(extract_keywords(doc, tau=10,
                                                        mode=mode).words))
        for mode in DetectionMode
    }

    _verdict(8, not problems,
             (f"n={n}: 'the' decreases {the[0]:.2f}->{the[-1]:.2f} bits "
              f"(max rise {rises.max():.4f}); 'locket' (sentences "
              f"{occ.min()}..{occ.max()}) zero for all widths >= {tail_start}, "
              f"{zero_frac:.0%} of curve zero; keyword membership at tau=10 "
              f"(reported, not asserted): {membership}")
             if not problems else "; ".join(problems))
