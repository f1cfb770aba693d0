"""Experiment drivers behind the command line: formula checks, tree and graph sweeps, corpus classification."""

from __future__ import annotations

import json
import logging
from collections import Counter
from dataclasses import dataclass, field
from typing import Callable, Iterable, TextIO

from .cherries import (
    count_cherries_edges,
    exact_moments,
    expectation_epsilon,
    find_cherries,
    wilson_interval,
)
from .coherent import DEFAULT_WL_CAP, is_full, wl2_stabilize
from .graph import Graph
from .graph6 import Graph6Error, graph6_decode, read_graph6_lines
from .parallel import map_ranges
from .symmetry import (
    DEFAULT_BRUTE_CAP,
    ClassifyOptions,
    Status,
    brute_force_automorphisms,
    classify,
    disjoint_cherry_pair,
)
from .trees import DEFAULT_ENUM_CAP, enumerate_prufer_edges, sample_gnp, sample_rng, sample_uniform_tree

log = logging.getLogger(__name__)

__all__ = [
    "ExperimentConfig",
    "FormulaCheck",
    "verify_formulas",
    "TREE_COLUMNS",
    "GRAPH_COLUMNS",
    "tree_experiment",
    "graph_experiment",
    "classify_stream",
    "format_rows",
]


@dataclass
class ExperimentConfig:
    command: str
    ns: list[int] = field(default_factory=list)
    trials: int = 1000
    master_seed: int | None = None
    cap_enum: int = DEFAULT_ENUM_CAP
    cap_brute: int = DEFAULT_BRUTE_CAP
    cap_wl: int = DEFAULT_WL_CAP
    fmt: str = "csv"
    out: str | None = None
    workers: int = 1

    def __post_init__(self) -> None:
        for name in ("cap_enum", "cap_brute", "cap_wl", "trials", "workers"):
            if getattr(self, name) < 1:
                raise ValueError(f"{name} must be positive")
        if self.fmt not in ("csv", "text"):
            raise ValueError(f"unknown output format {self.fmt!r}")
        if self.command in ("tree-experiment", "graph-experiment", "sample-trees") and self.master_seed is None:
            raise ValueError(f"{self.command} needs an explicit --seed")

    @property
    def classify_options(self) -> ClassifyOptions:
        return ClassifyOptions(brute_cap=self.cap_brute, wl_cap=self.cap_wl)


def _num(x: float | None) -> str:
    return "" if x is None else format(x, ".12g")


def format_rows(columns: Iterable[str], rows: list[dict], fmt: str) -> str:
    columns = list(columns)
    if fmt == "csv":
        lines = [",".join(columns)]
        lines += [",".join(str(r[c]) for c in columns) for r in rows]
    else:
        lines = [json.dumps({c: r[c] for c in columns}, sort_keys=False) for r in rows]
    return "\n".join(lines) + "\n"


# -- formula verification ----------------------------------------------------


@dataclass
class FormulaCheck:
    n: int
    trees: int
    total_cherries: int
    expected_total: int
    total_squared: int
    expected_squared: int | None
    position_counts: set[int]
    expected_position: int
    positions_checked: int

    @property
    def ok(self) -> bool:
        return (
            self.total_cherries == self.expected_total
            and (self.expected_squared is None or self.total_squared == self.expected_squared)
            and self.position_counts == {self.expected_position}
        )

    def failures(self) -> list[str]:
        out = []
        if self.total_cherries != self.expected_total:
            out.append(f"n={self.n}: sum C_n = {self.total_cherries} but n^(n-2) E[C_n] = {self.expected_total}")
        if self.expected_squared is not None and self.total_squared != self.expected_squared:
            out.append(
                f"n={self.n}: sum C_n^2 = {self.total_squared} but n^(n-2) E[C_n^2] = {self.expected_squared}"
            )
        if self.position_counts != {self.expected_position}:
            out.append(
                f"n={self.n}: per-triple cherry counts {sorted(self.position_counts)} "
                f"but n^(n-2) E[eps] = {self.expected_position}"
            )
        return out

    def line(self) -> str:
        sq = "-" if self.expected_squared is None else f"{self.total_squared}/{self.expected_squared}"
        return (
            f"n={self.n} trees={self.trees} sumC={self.total_cherries}/{self.expected_total} "
            f"sumC2={sq} per_triple={sorted(self.position_counts)}/{self.expected_position} "
            f"triples={self.positions_checked} {'OK' if self.ok else 'MISMATCH'}"
        )


def _as_integer(x, what: str) -> int:
    if x.denominator != 1:
        raise ValueError(f"{what} is not an integer: {x}")
    return x.numerator


def verify_formulas(
    n_max: int,
    cap: int = DEFAULT_ENUM_CAP,
    moments: Callable = exact_moments,
    epsilon: Callable = expectation_epsilon,
    n_min: int = 4,
) -> list[FormulaCheck]:
    """Compare exhaustive cherry counts over all labeled trees with the closed forms."""
    if n_max < n_min or n_max > cap:
        raise ValueError(f"n_max must lie in {n_min}..{cap}, got {n_max}")
    checks = []
    for n in range(n_min, n_max + 1):
        total = n ** (n - 2)
        s1 = s2 = 0
        per_triple: Counter = Counter()
        for edges in enumerate_prufer_edges(n, cap):
            g = Graph(n, frozenset(edges))
            cs = find_cherries(g)
            s1 += len(cs)
            s2 += len(cs) ** 2
            per_triple.update(cs)
        triples = n * (n - 1) * (n - 2) // 2
        counts = {per_triple.get((i1, i2, j), 0) for j in range(n) for i1 in range(n) for i2 in range(i1 + 1, n)
                  if j not in (i1, i2)}
        rep = moments(n)
        checks.append(
            FormulaCheck(
                n=n,
                trees=total,
                total_cherries=s1,
                expected_total=_as_integer(rep.e_cn * total, "n^(n-2) E[C_n]"),
                total_squared=s2,
                expected_squared=None if rep.e_cn_sq is None else _as_integer(rep.e_cn_sq * total, "n^(n-2) E[C_n^2]"),
                position_counts=counts,
                expected_position=_as_integer(epsilon(n) * total, "n^(n-2) E[eps]"),
                positions_checked=triples,
            )
        )
    return checks


# -- tree sweep -----------------------------------------------------------------

TREE_COLUMNS = (
    "n", "trials", "seed", "mean", "exact_mean", "p_geq_1", "p_geq_1_lo", "p_geq_1_hi",
    "p_geq_2", "p_geq_2_lo", "p_geq_2_hi", "p_two_disjoint", "qsym_fraction", "qsym_lo", "qsym_hi",
    "asym_fraction", "cheb_bound",
)


def _tree_chunk(n: int, master_seed: int, opts: ClassifyOptions, start: int, stop: int) -> Counter:
    tally: Counter = Counter()
    for i in range(start, stop):
        t = sample_uniform_tree(n, sample_rng(master_seed, n, i))
        c = len(find_cherries(t))
        tally[("cherries", c)] += 1
        if disjoint_cherry_pair(t) is not None:
            tally["two_disjoint"] += 1
        verdict = classify(t, opts)
        tally[("status", verdict.status.value)] += 1
        if verdict.status is Status.QUANTUM_SYMMETRIC and verdict.verify(t):
            tally["certified"] += 1
    return tally


def tree_summary_row(n: int, trials: int, seed: int, tally: Counter) -> dict:
    hist = {k[1]: v for k, v in tally.items() if isinstance(k, tuple) and k[0] == "cherries"}
    geq1 = sum(v for c, v in hist.items() if c >= 1)
    geq2 = sum(v for c, v in hist.items() if c >= 2)
    mean = sum(c * v for c, v in hist.items()) / trials
    qs = tally["certified"]
    asym = tally[("status", Status.QUANTUM_ASYMMETRIC.value)] + tally[
        ("status", Status.ASYMMETRIC_UNDETERMINED_QUANTUM.value)
    ]
    exact = exact_moments(n) if n >= 4 else None
    cheb = None if exact is None else exact.chebyshev_lower_bound_two_cherries
    lo1, hi1 = wilson_interval(geq1, trials)
    lo2, hi2 = wilson_interval(geq2, trials)
    loq, hiq = wilson_interval(tally["certified"], trials)
    return {
        "n": n,
        "trials": trials,
        "seed": seed,
        "mean": _num(mean),
        "exact_mean": _num(None if exact is None else float(exact.e_cn)),
        "p_geq_1": _num(geq1 / trials),
        "p_geq_1_lo": _num(lo1),
        "p_geq_1_hi": _num(hi1),
        "p_geq_2": _num(geq2 / trials),
        "p_geq_2_lo": _num(lo2),
        "p_geq_2_hi": _num(hi2),
        "p_two_disjoint": _num(tally["two_disjoint"] / trials),
        "qsym_fraction": _num(qs / trials),
        "qsym_lo": _num(loq),
        "qsym_hi": _num(hiq),
        "asym_fraction": _num(asym / trials),
        "cheb_bound": _num(None if cheb is None else float(cheb)),
    }


def tree_experiment(cfg: ExperimentConfig) -> list[dict]:
    """One row per ``n``: cherry frequencies, certified quantum symmetry, exact moments."""
    rows = []
    for n in cfg.ns:
        if n < 2:
            raise ValueError(f"tree experiment needs n >= 2, got {n}")
        tally: Counter = Counter()
        for part in map_ranges(_tree_chunk, cfg.trials, n, cfg.master_seed, cfg.classify_options,
                               workers=cfg.workers, chunk=500):
            tally.update(part)
        log.info("tree experiment n=%d done", n)
        rows.append(tree_summary_row(n, cfg.trials, cfg.master_seed, tally))
    return rows


# -- graph sweep -----------------------------------------------------------------

GRAPH_COLUMNS = (
    "n", "samples", "seed", "full_fraction", "full_lo", "full_hi", "mean_class_ratio",
    "brute_checked", "brute_violations",
)


def _graph_chunk(n: int, master_seed: int, cap_wl: int, cap_brute: int, start: int, stop: int) -> Counter:
    tally: Counter = Counter()
    for i in range(start, stop):
        g = sample_gnp(n, 0.5, sample_rng(master_seed, n, i))
        conf = wl2_stabilize(g, cap=cap_wl)
        tally["class_sum"] += conf.num_classes
        if is_full(conf):
            tally["full"] += 1
            if n <= cap_brute:
                tally["brute_checked"] += 1
                if not brute_force_automorphisms(g, cap_brute).is_trivial:
                    tally["brute_violations"] += 1
    return tally


def graph_experiment(cfg: ExperimentConfig) -> list[dict]:
    """One row per ``n``: how often G(n, 1/2) has the full coherent algebra."""
    rows = []
    for n in cfg.ns:
        if n < 1 or n > cfg.cap_wl:
            raise ValueError(f"graph experiment needs 1 <= n <= {cfg.cap_wl}, got {n}")
        tally: Counter = Counter()
        for part in map_ranges(_graph_chunk, cfg.trials, n, cfg.master_seed, cfg.cap_wl, cfg.cap_brute,
                               workers=cfg.workers, chunk=50):
            tally.update(part)
        lo, hi = wilson_interval(tally["full"], cfg.trials)
        rows.append({
            "n": n,
            "samples": cfg.trials,
            "seed": cfg.master_seed,
            "full_fraction": _num(tally["full"] / cfg.trials),
            "full_lo": _num(lo),
            "full_hi": _num(hi),
            "mean_class_ratio": _num(tally["class_sum"] / (cfg.trials * n * n)),
            "brute_checked": tally["brute_checked"],
            "brute_violations": tally["brute_violations"],
        })
    return rows


# -- corpus classification ----------------------------------------------------------

CLASSIFY_COLUMNS = ("index", "n", "classical", "group_order", "status", "certificate")


def classify_stream(lines: Iterable[str] | TextIO, out: TextIO, err: TextIO,
                    options: ClassifyOptions | None = None, fmt: str = "text") -> int:
    """Classify one graph6 record per line, streaming; returns the number of parse errors."""
    errors = 0
    index = 0
    if fmt == "csv":
        out.write(",".join(CLASSIFY_COLUMNS) + "\n")
    for lineno, rec in read_graph6_lines(lines):
        try:
            g = graph6_decode(rec)
        except Graph6Error as exc:
            errors += 1
            err.write(f"line {lineno}: {exc}\n")
            continue
        v = classify(g, options)
        d = v.to_dict()
        if fmt == "csv":
            cert = d.get("certificate", {})
            if "automorphisms" in cert:
                cert_s = "|".join(" ".join(map(str, p)) for p in cert["automorphisms"])
            else:
                cert_s = str(cert.get("wl_classes", ""))
            out.write(f"{index},{g.n},{v.classical},{d.get('group_order', '')},{v.status.value},{cert_s}\n")
        else:
            out.write(json.dumps({"index": index, **d}) + "\n")
        index += 1
    return errors
