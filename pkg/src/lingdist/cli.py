"""Command line entry point.

Four subcommands cover the analysis workflows:

  words-analyse  per-word distance matrices, mean/sd table and bars, density
                 curves, t-scores, Bhattacharyya pairs and their dendrogram
  cluster        language distance matrix, dendrogram, silhouette-optimal
                 cut (plus an optional forced cut and purity report)
  relationship   joins linguistic and geographic pair distances, regresses
                 one on the other (raw and log10), scatter plots
  all-to-all     distances between every (language, word) item, best and
                 forced-K cuts, purity against the word labels

All artifacts for a run are computed first and written only if everything
succeeded, so a failing run leaves no partial output.  Given identical
inputs and flags, every artifact is byte-identical between runs.

Exit codes: 0 success, 2 usage error, 3 data error, 4 limit exceeded.
"""

import argparse
import csv
import io
import math
import sys
from dataclasses import dataclass
from pathlib import Path

from . import cluster as hc
from . import editdist, lexicon, stats, subst, svgplot
from .errors import (DuplicateGeoPair, LimitExceeded, LingdistError,
                     MissingPair, NonPositiveDistance, ParseError,
                     TooFewLanguages, UnknownTableName)

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_DATA = 3
EXIT_LIMIT = 4


@dataclass
class RunConfig:
    lexicon_path: str
    table: str = "editable"
    gap: float | None = None
    linkage: str = "complete"
    forced_k: int | None = None
    bins: int | None = None
    output_dir: str = "out"
    seed: int = 0  # reserved for sampled plot decorations; nothing samples yet


def _fmt(value):
    return format(value, ".12g")


def _load_lexicon(path):
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise LingdistError(str(exc)) from exc
    try:
        lex = lexicon.parse_lexicon(text)
    except ParseError as exc:
        raise ParseError(f"{path}: {exc}") from exc
    except LingdistError as exc:
        raise type(exc)(f"{path}: {exc}") from exc
    return lex


def _load_table(name_or_path, gap=None):
    if name_or_path in subst.BUILTIN_TABLES:
        table = subst.builtin_table(name_or_path)
    elif Path(name_or_path).exists():
        try:
            table = subst.parse_table(
                Path(name_or_path).read_text(encoding="utf-8"), name=name_or_path)
        except ParseError as exc:
            raise ParseError(f"{name_or_path}: {exc}") from exc
    else:
        raise UnknownTableName(
            f"{name_or_path!r} is neither a built-in table nor an existing file")
    if gap is not None:
        table = table.with_gap(gap)
    return table


def _write_artifacts(output_dir, artifacts):
    out = Path(output_dir)
    out.mkdir(parents=True, exist_ok=True)
    for name, text in artifacts.items():
        (out / name).write_text(text, encoding="utf-8", newline="\n")


def _csv_text(header, rows):
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    writer.writerows(rows)
    return buf.getvalue()


def _pair_rows(matrix):
    """Upper-triangle (label_a, label_b, value) rows in label order."""
    rows = []
    for i in range(matrix.n):
        for j in range(i + 1, matrix.n):
            rows.append((matrix.labels[i], matrix.labels[j], matrix.values[i][j]))
    return rows


# --- subcommands ----------------------------------------------------------

def cmd_words_analyse(cfg):
    lex = _load_lexicon(cfg.lexicon_path)
    table = _load_table(cfg.table, cfg.gap)
    if len(lex.languages) < 2:
        raise TooFewLanguages("words-analyse needs at least 2 languages")
    names = lex.concept_names()
    artifacts = {}

    columns = {}
    pair_labels = None
    for ci, cname in enumerate(names):
        matrix = editdist.concept_matrix(lex, ci, table)
        artifacts[f"{cname}.oc"] = editdist.write_oc(matrix, io.StringIO())
        triples = _pair_rows(matrix)
        if pair_labels is None:
            pair_labels = [f"{a}|{b}" for a, b, _v in triples]
        columns[cname] = [v for _a, _b, v in triples]
    frame = stats.AnalysisFrame(columns, row_labels=pair_labels)

    summary = stats.mean_sd(frame)
    artifacts["mean_sd.csv"] = _csv_text(
        ("column", "mean", "sd", "mean_sd"),
        [(name, _fmt(m), _fmt(sd), _fmt(prod)) for name, m, sd, prod in summary])
    artifacts["mean_sd.svg"] = svgplot.grouped_bars(
        names,
        [("mean", [r[1] for r in summary]),
         ("sd", [r[2] for r in summary]),
         ("mean*sd", [r[3] for r in summary])],
        title="per-word distance statistics")

    for cname in names:
        curve = stats.kde(columns[cname])
        artifacts[f"density_{cname}.csv"] = _csv_text(
            ("x", "density"),
            [(_fmt(x), _fmt(y)) for x, y in zip(curve.xs, curve.ys)])
        artifacts[f"density_{cname}.svg"] = svgplot.curve_plot(
            curve.xs, curve.ys, title=f"density: {cname}")

    scored = {name: stats.tscore(columns[name]) for name in names}
    artifacts["tscore.csv"] = _csv_text(
        ["pair"] + names,
        [[pair_labels[r]] + [_fmt(scored[name][r]) for name in names]
         for r in range(len(pair_labels))])

    bc_names, bc_grid = stats.bhatt_matrix(frame, bins=cfg.bins)
    artifacts["bhatt.csv"] = _csv_text(
        ("col_a", "col_b", "bc"),
        [(bc_names[i], bc_names[j], _fmt(bc_grid[i][j]))
         for i in range(len(bc_names)) for j in range(i + 1, len(bc_names))])

    bc_dist = stats.bhatt_distance_matrix(frame, bins=cfg.bins)
    dend = hc.agglomerate(bc_dist, cfg.linkage)
    artifacts["bhatt_dendrogram.nwk"] = hc.export_newick(dend) + "\n"
    artifacts["bhatt_dendrogram.svg"] = hc.export_svg(dend)

    _write_artifacts(cfg.output_dir, artifacts)
    return artifacts


def _cluster_csv(assignment):
    return _csv_text(("label", "cluster"),
                     [(label, cid) for label, cid in assignment.member_of.items()])


def _purity_csv(report):
    rows = [(cid, report.sizes[cid], report.majority[cid], _fmt(report.per_cluster[cid]))
            for cid in sorted(report.per_cluster)]
    rows.append(("overall", sum(report.sizes.values()), "", _fmt(report.overall)))
    return _csv_text(("cluster", "size", "majority", "purity"), rows)


def _read_truth(path):
    truth = {}
    with open(path, newline="", encoding="utf-8") as fh:
        for row in csv.reader(fh):
            if not row or (row[0], *row[1:2]) == ("label", "class"):
                continue
            if len(row) != 2:
                raise ParseError(f"{path}: truth rows need 2 fields, got {row!r}")
            truth[row[0].strip()] = row[1].strip()
    return truth


def cmd_cluster(cfg, truth_path=None):
    lex = _load_lexicon(cfg.lexicon_path)
    table = _load_table(cfg.table, cfg.gap)
    matrix = editdist.language_matrix(lex, table)
    dend = hc.agglomerate(matrix, cfg.linkage)
    k_best, best_assignment, _report = hc.best_cut(matrix, dend)
    scan = hc.silhouette_scan(matrix, dend)

    artifacts = {
        "languages.oc": editdist.write_oc(matrix, io.StringIO()),
        "dendrogram.nwk": hc.export_newick(dend) + "\n",
        "dendrogram.svg": hc.export_svg(dend, best_assignment),
        "clusters.csv": _cluster_csv(best_assignment),
        "silhouette.csv": _csv_text(("k", "mean_silhouette"),
                                    [(k, _fmt(s)) for k, s in scan]),
    }
    if cfg.forced_k is not None:
        forced = hc.cut(dend, cfg.forced_k)
        artifacts["clusters_forced.csv"] = _cluster_csv(forced)
        if truth_path is not None:
            truth = _read_truth(truth_path)
            artifacts["purity.csv"] = _purity_csv(hc.purity(forced, truth))
    _write_artifacts(cfg.output_dir, artifacts)
    return artifacts


def _read_geo(path):
    """Unordered pair distances from a CSV of place_a,place_b,distance_km."""
    geo = {}
    with open(path, newline="", encoding="utf-8") as fh:
        for row in csv.reader(fh):
            if not row or tuple(row[:3]) == ("place_a", "place_b", "distance_km"):
                continue
            if len(row) != 3:
                raise ParseError(f"{path}: geo rows need 3 fields, got {row!r}")
            a, b = row[0].strip(), row[1].strip()
            try:
                d = float(row[2])
            except ValueError:
                raise ParseError(f"{path}: bad distance {row[2]!r}") from None
            key = (a, b) if a <= b else (b, a)
            if key in geo:
                raise DuplicateGeoPair(f"{path}: pair {a}/{b} listed twice")
            geo[key] = d
    return geo


def cmd_relationship(cfg, geo_path):
    lex = _load_lexicon(cfg.lexicon_path)
    table = _load_table(cfg.table, cfg.gap)
    matrix = editdist.language_matrix(lex, table)
    geo = _read_geo(geo_path)

    pairs = []
    for a, b, ling in _pair_rows(matrix):
        key = (a, b) if a <= b else (b, a)
        if key not in geo:
            raise MissingPair(f"geo file lacks the pair {a}/{b}")
        pairs.append((a, b, ling, geo[key]))

    geo_values = [g for _a, _b, _l, g in pairs]
    ling_values = [l for _a, _b, l, _g in pairs]
    if any(g <= 0 for g in geo_values):
        raise NonPositiveDistance("log10 regression needs every geo distance > 0")
    raw = stats.linregress(geo_values, ling_values)
    logged = stats.linregress(geo_values, ling_values, log10_x=True)

    report_lines = [f"n={raw.n}"]
    for mode, result in (("raw", raw), ("log10", logged)):
        report_lines.append(f"{mode}.slope={_fmt(result.slope)}")
        report_lines.append(f"{mode}.intercept={_fmt(result.intercept)}")
        report_lines.append(f"{mode}.r_squared={_fmt(result.r_squared)}")

    log_values = [math.log10(g) for g in geo_values]
    artifacts = {
        "pairs.csv": _csv_text(
            ("place_a", "place_b", "linguistic_distance", "geo_distance"),
            [(a, b, _fmt(l), _fmt(g)) for a, b, l, g in pairs]),
        "regression.txt": "\n".join(report_lines) + "\n",
        "scatter_raw.svg": svgplot.scatter_plot(
            geo_values, ling_values, raw.slope, raw.intercept,
            title="linguistic vs geographic distance",
            x_label="geo distance (km)", y_label="linguistic distance"),
        "scatter_log10.svg": svgplot.scatter_plot(
            log_values, ling_values, logged.slope, logged.intercept,
            title="linguistic vs log10 geographic distance",
            x_label="log10 geo distance", y_label="linguistic distance"),
    }
    _write_artifacts(cfg.output_dir, artifacts)
    return artifacts


def cmd_all_to_all(cfg, truth_path=None):
    lex = _load_lexicon(cfg.lexicon_path)
    table = _load_table(cfg.table, cfg.gap)
    matrix = editdist.all_to_all_matrix(lex, table)
    dend = hc.agglomerate(matrix, cfg.linkage)
    _k, best_assignment, _report = hc.best_cut(matrix, dend)

    forced_k = cfg.forced_k if cfg.forced_k is not None else lex.n_concepts
    if forced_k < 2:
        raise TooFewLanguages("forced cut needs k >= 2; give --k explicitly")
    forced = hc.cut(dend, forced_k)

    if truth_path is not None:
        truth = _read_truth(truth_path)
    else:
        truth = {label: label.rsplit(":", 1)[1] for label in matrix.labels}
    purity_report = hc.purity(forced, truth)

    artifacts = {
        "all_to_all.oc": editdist.write_oc(matrix, io.StringIO()),
        "clusters_best.csv": _cluster_csv(best_assignment),
        f"clusters_k{forced_k}.csv": _cluster_csv(forced),
        "purity.csv": _purity_csv(purity_report),
    }
    _write_artifacts(cfg.output_dir, artifacts)
    return artifacts


# --- argument parsing -------------------------------------------------------

def _build_parser():
    parser = argparse.ArgumentParser(
        prog="lingdist",
        description="Compare languages by weighted phonetic edit distance.")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, geo=False):
        p.add_argument("--lexicon", required=True, help="language database file")
        p.add_argument("--table", default="editable",
                       help="built-in table name or table DSL file (default: editable)")
        p.add_argument("--gap", type=float, default=None, help="gap penalty override")
        p.add_argument("--linkage", choices=hc.LINKAGES, default="complete")
        p.add_argument("--k", type=int, default=None, help="forced cluster count")
        p.add_argument("--bins", type=int, default=None,
                       help="histogram bins for Bhattacharyya")
        p.add_argument("--truth", default=None, help="CSV of label,class for purity")
        p.add_argument("--out", default="out", help="output directory")
        if geo:
            p.add_argument("--geo", required=True,
                           help="CSV of place_a,place_b,distance_km")

    common(sub.add_parser("words-analyse", help="per-word statistics and plots"))
    common(sub.add_parser("cluster", help="cluster languages, best silhouette cut"))
    common(sub.add_parser("relationship",
                          help="regress linguistic on geographic distance"), geo=True)
    common(sub.add_parser("all-to-all", help="compare every word against every word"))
    return parser


def _config_from(args):
    return RunConfig(
        lexicon_path=args.lexicon,
        table=args.table,
        gap=args.gap,
        linkage=args.linkage,
        forced_k=args.k,
        bins=args.bins,
        output_dir=args.out,
    )


def main(argv=None):
    parser = _build_parser()
    args = parser.parse_args(argv)
    if args.k is not None and args.k < 2:
        parser.error("--k must be >= 2")
    if args.bins is not None and args.bins < 1:
        parser.error("--bins must be >= 1")
    if args.gap is not None and args.gap < 0:
        parser.error("--gap must be >= 0")
    cfg = _config_from(args)
    try:
        if args.command == "words-analyse":
            cmd_words_analyse(cfg)
        elif args.command == "cluster":
            cmd_cluster(cfg, truth_path=args.truth)
        elif args.command == "relationship":
            cmd_relationship(cfg, geo_path=args.geo)
        else:
            cmd_all_to_all(cfg, truth_path=args.truth)
    except LimitExceeded as exc:
        print(f"lingdist: {exc}", file=sys.stderr)
        return EXIT_LIMIT
    except UnknownTableName as exc:
        print(f"lingdist: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (LingdistError, OSError) as exc:
        print(f"lingdist: {exc}", file=sys.stderr)
        return EXIT_DATA
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
