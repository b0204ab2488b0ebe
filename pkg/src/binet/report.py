"""Qualitative verdicts from metric records, plus report and plot emitters.

The cutoffs are configurable and every verdict carries the numbers and
thresholds that produced it, so a report is auditable on its own. The
defaults reproduce the expected regimes on reference data: data
dependency graphs come out small-world and disassortative, control flow
graphs scale-free with neutral assortativity.
"""

from __future__ import annotations

import json
from dataclasses import asdict, dataclass
from typing import Optional, Sequence

from binet.graph import DirectedGraph
from binet.metrics import NetworkMetrics, degree_histogram, degree_rank


class IncompleteMetrics(ValueError):
    """The metrics record lacks a field classification depends on."""


@dataclass(frozen=True)
class Thresholds:
    """Classification cutoffs; all documented in --help and reports.

    scale_free: exponent above gamma_min with an acceptable fit
    (KS distance at most ks_max for MLE fits, R^2 at least r2_min for
    CCDF fits; records without a goodness value pass on the exponent
    alone). small_world: k1 below k1_max and average local clustering at
    least clustering_factor times the random-graph level <K>/N.
    assortativity: neutral inside [-neutral_band, +neutral_band].
    """

    gamma_min: float = 2.0
    ks_max: float = 0.1
    r2_min: float = 0.9
    k1_max: float = 3.0
    clustering_factor: float = 10.0
    neutral_band: float = 0.1

    def to_dict(self) -> dict:
        return asdict(self)

    @classmethod
    def from_dict(cls, doc: dict) -> "Thresholds":
        known = {f for f in cls.__dataclass_fields__}
        unknown = set(doc) - known
        if unknown:
            raise ValueError(f"unknown threshold names: {sorted(unknown)}")
        return cls(**doc)


@dataclass
class NetworkClassification:
    scale_free: bool
    scale_free_reason: str
    small_world: bool
    small_world_reason: str
    assortativity_class: str  # assortative | neutral | disassortative | undefined
    assortativity_reason: str
    thresholds_used: Thresholds

    def to_dict(self) -> dict:
        doc = asdict(self)
        doc["thresholds_used"] = self.thresholds_used.to_dict()
        return doc

    @classmethod
    def from_dict(cls, doc: dict) -> "NetworkClassification":
        doc = dict(doc)
        doc["thresholds_used"] = Thresholds.from_dict(doc["thresholds_used"])
        return cls(**doc)


def classify(m: NetworkMetrics, thresholds: Thresholds = Thresholds()) -> NetworkClassification:
    """Scale-free / small-world / assortativity verdicts for one record."""
    if m.n < 2 or m.k1 is None or m.clustering_avg_local is None:
        raise IncompleteMetrics("classification needs N >= 2 with k1 and clustering filled")
    t = thresholds

    if m.gamma is None:
        scale_free = False
        sf_reason = "no power-law exponent available"
    else:
        fit_ok = True
        fit_note = "no goodness value"
        if m.gamma_goodness is not None:
            if m.gamma_method == "ccdf_ls":
                fit_ok = m.gamma_goodness >= t.r2_min
                fit_note = f"R^2={m.gamma_goodness:.3f} vs min {t.r2_min}"
            else:
                fit_ok = m.gamma_goodness <= t.ks_max
                fit_note = f"KS={m.gamma_goodness:.3f} vs max {t.ks_max}"
        scale_free = m.gamma > t.gamma_min and fit_ok
        sf_reason = f"gamma={m.gamma:.3f} vs min {t.gamma_min}; {fit_note}"

    baseline = t.clustering_factor * (m.mean_degree / m.n)
    small_world = m.k1 < t.k1_max and m.clustering_avg_local >= baseline
    sw_reason = (f"k1={m.k1:.3f} vs max {t.k1_max}; "
                 f"avg local clustering={m.clustering_avg_local:.4f} "
                 f"vs baseline {baseline:.4f}")

    if m.pearson_r is None:
        assort = "undefined"
        as_reason = "assortativity undefined (zero degree variance or no edges)"
    elif m.pearson_r < -t.neutral_band:
        assort = "disassortative"
        as_reason = f"r={m.pearson_r:.3f} < -{t.neutral_band}"
    elif m.pearson_r > t.neutral_band:
        assort = "assortative"
        as_reason = f"r={m.pearson_r:.3f} > {t.neutral_band}"
    else:
        assort = "neutral"
        as_reason = f"|r|={abs(m.pearson_r):.3f} <= {t.neutral_band}"

    return NetworkClassification(
        scale_free=scale_free, scale_free_reason=sf_reason,
        small_world=small_world, small_world_reason=sw_reason,
        assortativity_class=assort, assortativity_reason=as_reason,
        thresholds_used=t,
    )


# -- corpus CSV ---------------------------------------------------------------


@dataclass
class CorpusRow:
    """One sample's headline numbers; the CSV column schema is fixed."""

    sample: str
    n: int
    l: int
    k_max: int
    k1: Optional[float]
    k2: Optional[float]
    pearson: Optional[float]
    gamma: Optional[float]


CSV_HEADER = "sample,N,L,k_max,k1,k2,pearson,gamma"


def _fmt(value: Optional[float]) -> str:
    return "" if value is None else f"{value:.3f}"


def render_corpus_csv(rows: Sequence[CorpusRow], path) -> None:
    """Write corpus rows; reals are fixed to 3 decimals, absent values blank."""
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(CSV_HEADER + "\n")
        for r in rows:
            fh.write(f"{r.sample},{r.n},{r.l},{r.k_max},"
                     f"{_fmt(r.k1)},{_fmt(r.k2)},{_fmt(r.pearson)},{_fmt(r.gamma)}\n")


def parse_corpus_csv(path) -> list[CorpusRow]:
    rows = []
    with open(path, "r", encoding="utf-8") as fh:
        header = fh.readline().strip()
        if header != CSV_HEADER:
            raise ValueError(f"unexpected corpus header {header!r}")
        for line in fh:
            line = line.strip()
            if not line:
                continue
            sample, n, l, k_max, k1, k2, pearson, gamma = line.split(",")
            opt = lambda s: float(s) if s else None
            rows.append(CorpusRow(sample=sample, n=int(n), l=int(l), k_max=int(k_max),
                                  k1=opt(k1), k2=opt(k2), pearson=opt(pearson),
                                  gamma=opt(gamma)))
    return rows


# -- JSON report ----------------------------------------------------------------


def render_report_json(m: NetworkMetrics, c: NetworkClassification, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        json.dump({"metrics": m.to_dict(), "classification": c.to_dict()}, fh, indent=2)
        fh.write("\n")


def parse_report_json(path) -> tuple[NetworkMetrics, NetworkClassification]:
    with open(path, "r", encoding="utf-8") as fh:
        doc = json.load(fh)
    return (NetworkMetrics.from_dict(doc["metrics"]),
            NetworkClassification.from_dict(doc["classification"]))


# -- plot data ------------------------------------------------------------------


def emit_plot_data(g: DirectedGraph, out_prefix: str) -> list[str]:
    """Per-graph plot TSVs: degree histogram and degree rank."""
    hist_path = f"{out_prefix}.degree_hist.tsv"
    with open(hist_path, "w", encoding="utf-8") as fh:
        for degree, count in sorted(degree_histogram(g).items()):
            fh.write(f"{degree}\t{count}\n")
    rank_path = f"{out_prefix}.degree_rank.tsv"
    with open(rank_path, "w", encoding="utf-8") as fh:
        for rank, degree in degree_rank(g):
            fh.write(f"{rank}\t{degree}\n")
    return [hist_path, rank_path]


def emit_ddg_plot_data(ddg_metrics: Sequence[NetworkMetrics], out_prefix: str,
                       sizes: Optional[Sequence[int]] = None) -> list[str]:
    """Corpus-level DDG plot TSVs: size histogram, size vs k1, size vs r.

    ``sizes`` can be passed separately so empty dependency graphs still
    land in the histogram; rows whose quantity is undefined (k1 of a
    one-node graph, r of a regular graph) are left out of the
    corresponding scatter file.
    """
    if sizes is None:
        sizes = [m.n for m in ddg_metrics]
    hist: dict[int, int] = {}
    for s in sizes:
        hist[s] = hist.get(s, 0) + 1
    size_hist = f"{out_prefix}.size_hist.tsv"
    with open(size_hist, "w", encoding="utf-8") as fh:
        for size, count in sorted(hist.items()):
            fh.write(f"{size}\t{count}\n")
    size_k1 = f"{out_prefix}.size_vs_k1.tsv"
    with open(size_k1, "w", encoding="utf-8") as fh:
        for m in ddg_metrics:
            if m.k1 is not None:
                fh.write(f"{m.n}\t{m.k1:.6f}\n")
    size_pearson = f"{out_prefix}.size_vs_pearson.tsv"
    with open(size_pearson, "w", encoding="utf-8") as fh:
        for m in ddg_metrics:
            if m.pearson_r is not None:
                fh.write(f"{m.n}\t{m.pearson_r:.6f}\n")
    return [size_hist, size_k1, size_pearson]
