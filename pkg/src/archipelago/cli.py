"""Command-line interface: extract, curve, evaluate, compare, graph, synth.

Exit codes: 0 success, 1 usage error, 2 data error.  Results go to stdout
or --out; diagnostics go to stderr.  Every JSON payload carries a header
with the package version and the full effective configuration.
"""

from __future__ import annotations

import csv
import io
import json
import sys
from pathlib import Path

import click

from . import __version__
from .baselines import (
    load_stoplist,
    rake_keywords,
    random_keywords,
    textrank_keywords,
    tfidf_keywords,
)
from .bench import (
    ExperimentConfig,
    json_safe,
    run_collection,
    synthetic_collection,
    table_payload,
)
from .corpus import build_corpus_index, load_collection, load_document
from .graph_entropy import (
    build_cooc_graph,
    connected_clusters,
    evaluate_keyword_set,
    graph_to_dot,
)
from .window_entropy import (
    DetectionMode,
    all_verdicts,
    extract_keywords,
    word_curve,
)

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_DATA = 2

_MODES = [m.value for m in DetectionMode]


class DataError(Exception):
    """Unreadable or unusable input; maps to exit status 2."""


def _check_tau(ctx, param, value):
    if value is not None and value < 1:
        raise click.UsageError("--tau must be >= 1")
    return value


def _check_rho(ctx, param, value):
    if value is not None and not 0 < value <= 1:
        raise click.UsageError("--rho must be in (0, 1]")
    return value


def _check_positive(ctx, param, value):
    if value is not None and value < 1:
        raise click.UsageError(f"{param.opts[0]} must be >= 1")
    return value


_json_safe = json_safe


def _emit(text: str, out_path):
    if out_path is None:
        sys.stdout.write(text)
    else:
        Path(out_path).write_text(text, encoding="utf-8")


def _emit_json(payload: dict, out_path):
    _emit(json.dumps(_json_safe(payload), sort_keys=True, indent=2) + "\n",
          out_path)


def _header(**config) -> dict:
    return {"version": __version__, "config": config}


def _load_doc(path):
    p = Path(path)
    if not p.is_file():
        raise DataError(f"cannot read input file: {p}")
    try:
        return load_document(p)
    except ValueError as exc:
        raise DataError(f"{p}: {exc}") from exc


@click.group()
@click.version_option(version=__version__)
def cli():
    """Keyword archipelago extraction and graph-entropy evaluation."""


@cli.command()
@click.option("--in", "in_path", required=True, type=click.Path(), help="Input text file.")
@click.option("--tau", default=10, show_default=True, callback=_check_tau)
@click.option("--mode", default="drop", show_default=True,
              type=click.Choice(_MODES))
@click.option("--base", default=2.0, show_default=True)
@click.option("--method", default="entropy", show_default=True,
              type=click.Choice(["entropy", "tfidf", "textrank", "rake", "random"]))
@click.option("--k", default=None, type=int, callback=_check_positive,
              help="Keyword count for baseline methods (default: size of the entropy set).")
@click.option("--seed", default=0, show_default=True, help="Seed for --method random.")
@click.option("--stoplist", default=None, type=click.Path(),
              help="Stoplist file for --method rake (default: bundled list).")
@click.option("--out", "out_path", default=None, type=click.Path())
def extract(in_path, tau, mode, base, method, k, seed, stoplist, out_path):
    """Extract keywords from one document."""
    doc = _load_doc(in_path)
    det = DetectionMode.from_tag(mode)
    header = _header(subcommand="extract", input=str(in_path), tau=tau,
                     mode=mode, base=base, method=method, k=k, seed=seed)
    if method == "entropy":
        verdicts = all_verdicts(doc, tau, mode=det, base=base)
        id_to_word = {i: w for w, i in doc.vocab.items()}
        words = [{
            "word": id_to_word[v.word_id],
            "theta": v.theta,
            "delta_t_max_bound": v.delta_t_max_bound,
            "is_keyword": v.is_keyword,
        } for v in verdicts]
        keywords = [w["word"] for w in words if w["is_keyword"]]
        _emit_json({"header": header, "words": words, "keywords": keywords},
                   out_path)
        return
    if k is None:
        k = len(extract_keywords(doc, tau, mode=det, base=base))
        if k == 0:
            raise DataError("entropy reference set is empty; pass --k")
    if method == "tfidf":
        picked = tfidf_keywords(doc, build_corpus_index([doc]), k)
    elif method == "textrank":
        picked = textrank_keywords(doc, k)
    elif method == "rake":
        stop = load_stoplist(stoplist) if stoplist else None
        picked = rake_keywords(doc, k, stop)
    else:
        picked = random_keywords(doc, k, seed)
    _emit_json({
        "header": header,
        "keywords": [{"word": w, "score": s} for w, s in picked.ranking],
    }, out_path)


@cli.command()
@click.option("--in", "in_path", required=True, type=click.Path())
@click.option("--word", "words", multiple=True,
              help="Word(s) to plot; repeatable. Default: whole vocabulary.")
@click.option("--base", default=2.0, show_default=True)
@click.option("--out", "out_path", default=None, type=click.Path())
def curve(in_path, words, base, out_path):
    """Emit entropy curves as CSV (word, delta_t, h_a_bits)."""
    doc = _load_doc(in_path)
    targets = list(words) if words else doc.words
    missing = [w for w in targets if w not in doc.vocab]
    if missing:
        raise DataError(f"words not in document: {', '.join(missing)}")
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["word", "delta_t", "h_a_bits"])
    for w in targets:
        c = word_curve(doc, w, base=base)
        for dt, value in enumerate(c.values, start=1):
            writer.writerow([w, dt, repr(float(value))])
    _emit(buf.getvalue(), out_path)


def _parse_keywords(doc, keywords, keywords_file, tau, mode, base):
    if keywords and keywords_file:
        raise click.UsageError("use either --keywords or --keywords-file")
    if keywords:
        words = [w for w in keywords.split(",") if w]
    elif keywords_file:
        p = Path(keywords_file)
        if not p.is_file():
            raise DataError(f"cannot read keywords file: {p}")
        words = p.read_text(encoding="utf-8").split()
    else:
        det = DetectionMode.from_tag(mode)
        words = list(extract_keywords(doc, tau, mode=det, base=base))
    if not words:
        raise DataError("empty keyword set")
    absent = [w for w in words if w not in doc.vocab]
    if absent:
        raise DataError(f"keywords not in document: {', '.join(absent)}")
    return words


@cli.command()
@click.option("--in", "in_path", required=True, type=click.Path())
@click.option("--keywords", default=None, help="Comma-separated keyword list.")
@click.option("--keywords-file", default=None, type=click.Path())
@click.option("--tau", default=10, show_default=True, callback=_check_tau)
@click.option("--mode", default="drop", show_default=True, type=click.Choice(_MODES))
@click.option("--rho", default=0.2, show_default=True, callback=_check_rho)
@click.option("--base", default=2.0, show_default=True)
@click.option("--out", "out_path", default=None, type=click.Path())
def evaluate(in_path, keywords, keywords_file, tau, mode, rho, base, out_path):
    """Score a keyword set on a document via graph entropy."""
    doc = _load_doc(in_path)
    words = _parse_keywords(doc, keywords, keywords_file, tau, mode, base)
    try:
        report = evaluate_keyword_set(doc, words, rho, base=base)
    except ValueError as exc:
        raise DataError(str(exc)) from exc
    payload = {
        "header": _header(subcommand="evaluate", input=str(in_path), tau=tau,
                          mode=mode, rho=rho, base=base),
        "h_b": report.h_b,
        "keywords": list(report.keywords),
        "clusters": [[report.keywords[i] for i in comp]
                     for comp in report.partition.clusters],
        "cluster_counts": report.assignment.counts.tolist(),
        "edge_count": len(report.graph.edges),
        "edge_budget": report.graph.edge_budget,
    }
    _emit_json(payload, out_path)


@cli.command()
@click.option("--collection", "collection_dir", required=True, type=click.Path())
@click.option("--tau", "taus", default="5,10,20", show_default=True,
              help="Comma-separated tau values.")
@click.option("--rho", default=0.2, show_default=True, callback=_check_rho)
@click.option("--mode", default="drop", show_default=True, type=click.Choice(_MODES))
@click.option("--base", default=2.0, show_default=True)
@click.option("--seed", default=0, show_default=True)
@click.option("--reps", default=20, show_default=True, callback=_check_positive)
@click.option("--out", "out_path", default=None, type=click.Path())
@click.option("--csv", "csv_path", default=None, type=click.Path(),
              help="Also write the summary grid as CSV.")
def compare(collection_dir, taus, rho, mode, base, seed, reps, out_path, csv_path):
    """Benchmark all methods over a document collection."""
    try:
        tau_values = tuple(int(t) for t in taus.split(",") if t)
    except ValueError:
        raise click.UsageError(f"bad --tau list: {taus!r}")
    if not tau_values or any(t < 1 for t in tau_values):
        raise click.UsageError("--tau values must be >= 1")

    d = Path(collection_dir)
    if not d.is_dir():
        raise DataError(f"not a directory: {d}")
    try:
        docs, labels = load_collection(d)
    except ValueError as exc:
        raise DataError(str(exc)) from exc

    config = ExperimentConfig(taus=tau_values, rho=rho,
                              mode=DetectionMode.from_tag(mode), base=base,
                              reps=reps, master_seed=seed)
    table = run_collection(docs, config, labels)

    payload = {
        "header": _header(subcommand="compare", collection=str(d),
                          taus=list(tau_values), rho=rho, mode=mode,
                          base=base, master_seed=seed, reps=reps,
                          reference_tau=config.reference_tau),
    }
    payload.update(table_payload(table))
    _emit_json(payload, out_path)

    if csv_path is not None:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["collection", "method", "mean_h_b", "t", "p",
                         "percent_below_random", "population_size"])
        for label in sorted(table.collections):
            res = table.collections[label]
            for m in config.method_names:
                tt = res.t_tests.get(m)
                writer.writerow([
                    label, m, repr(res.means[m]),
                    "" if tt is None else repr(tt.t),
                    "" if tt is None else repr(tt.p),
                    "" if res.percent_below_random.get(m) is None
                    else repr(res.percent_below_random[m]),
                    len(res.population),
                ])
        Path(csv_path).write_text(buf.getvalue(), encoding="utf-8")


@cli.command()
@click.option("--in", "in_path", required=True, type=click.Path())
@click.option("--keywords", default=None)
@click.option("--keywords-file", default=None, type=click.Path())
@click.option("--tau", default=10, show_default=True, callback=_check_tau)
@click.option("--mode", default="drop", show_default=True, type=click.Choice(_MODES))
@click.option("--rho", default=0.2, show_default=True, callback=_check_rho)
@click.option("--base", default=2.0, show_default=True)
@click.option("--format", "fmt", default="json", show_default=True,
              type=click.Choice(["json", "dot"]))
@click.option("--out", "out_path", default=None, type=click.Path())
def graph(in_path, keywords, keywords_file, tau, mode, rho, base, fmt, out_path):
    """Export the co-occurrence graph for a keyword set."""
    doc = _load_doc(in_path)
    words = _parse_keywords(doc, keywords, keywords_file, tau, mode, base)
    try:
        g = build_cooc_graph(doc, words, rho)
    except ValueError as exc:
        raise DataError(str(exc)) from exc
    partition = connected_clusters(g)
    if fmt == "dot":
        _emit(graph_to_dot(g, partition), out_path)
        return
    payload = {
        "header": _header(subcommand="graph", input=str(in_path), tau=tau,
                          mode=mode, rho=rho, base=base),
        "nodes": list(g.words),
        "edges": [{"source": g.words[i], "target": g.words[j], "cooc": w}
                  for i, j, w in g.edges],
        "clusters": [[g.words[i] for i in comp] for comp in partition.clusters],
        "edge_budget": g.edge_budget,
    }
    _emit_json(payload, out_path)


@cli.command()
@click.option("--spec", "spec_path", required=True, type=click.Path(),
              help="JSON file describing synthetic documents.")
@click.option("--out", "out_dir", required=True, type=click.Path())
def synth(spec_path, out_dir):
    """Write synthetic fixture documents described by a JSON spec.

    The spec holds {"documents": [{"doc_id", "n", "planted": [{"word",
    "pattern", "islands"}], "filler_vocab", "seed"}]}.  Each document
    becomes one .txt file of period-terminated sentences.
    """
    p = Path(spec_path)
    if not p.is_file():
        raise DataError(f"cannot read spec file: {p}")
    try:
        raw = json.loads(p.read_text(encoding="utf-8"))
    except json.JSONDecodeError as exc:
        raise DataError(f"bad spec JSON: {exc}") from exc
    try:
        docs = synthetic_collection(raw)
    except (KeyError, TypeError, ValueError) as exc:
        raise DataError(f"bad document entry: {exc}") from exc
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    written = []
    for doc in docs:
        text = "\n".join(" ".join(sent).capitalize() + "." for sent in doc.sentences)
        path = out / f"{doc.doc_id}.txt"
        path.write_text(text + "\n", encoding="utf-8")
        written.append(path.name)
    sys.stderr.write(f"wrote {len(written)} file(s) to {out}\n")


def main(argv=None) -> int:
    """Entry point with the documented exit-status contract."""
    try:
        cli.main(args=argv, standalone_mode=False)
        return EXIT_OK
    except click.exceptions.Exit as exc:  # --help / --version
        return exc.exit_code
    except click.UsageError as exc:
        sys.stderr.write(f"usage error: {exc.format_message()}\n")
        return EXIT_USAGE
    except click.Abort:
        return EXIT_USAGE
    except DataError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_DATA
    except OSError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_DATA


if __name__ == "__main__":
    sys.exit(main())
