"""The reference corpus: diagram entries plus control sets, with expectations."""
from __future__ import annotations

import json
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

from .constructions import elaborate
from .expr import parse_expr
from .topology import classify


@dataclass(frozen=True)
class CorpusEntry:
    name: str
    source: str
    expected: dict
    tag: str  # "diagram" rows are labelled spaces, "control" rows test the refusals


CORPUS = (
    CorpusEntry("Cof", "Cof", {"label": "Q", "category": "meager"}, "diagram"),
    CorpusEntry("Filter51", "Filter51", {"label": "QxC", "category": "meager"}, "diagram"),
    CorpusEntry("CompFin", "CompFin", {"label": "P", "category": "comeager-in-closure"},
                "diagram"),
    CorpusEntry("QxP", "QxP", {"label": "QxP", "category": "meager"}, "diagram"),
    CorpusEntry("T", "T", {"label": "T"}, "diagram"),
    CorpusEntry("S", "S", {"label": "S"}, "diagram"),
    CorpusEntry("QxT", "QxT", {"label": "QxT", "category": "meager"}, "diagram"),
    CorpusEntry("QxS", "QxS", {"label": "QxS", "category": "meager"}, "diagram"),
    CorpusEntry("Fin", "Fin", {"category": "meager"}, "control"),
    CorpusEntry("Full", "Full", {"label": "unlabeled", "is_locally_compact": True}, "control"),
    CorpusEntry("Cyl1", 'Cylinder("1")', {"label": "unlabeled"}, "control"),
    CorpusEntry("Empty", "Empty", {"label": "unlabeled"}, "control"),
)

DIAGRAM_ROWS = (
    ("X_-1", ("Cof", "Filter51")),
    ("X_0", ("CompFin",)),
    ("X_1", ("QxP",)),
    ("X_2", ("T", "S")),
    ("X_3", ("QxT", "QxS")),
)


def entry(name: str) -> CorpusEntry:
    for e in CORPUS:
        if e.name == name:
            return e
    raise KeyError(name)


def corpus_set(name: str):
    return elaborate(parse_expr(entry(name).source))


@dataclass
class RunConfig:
    max_class: int = 11
    bm_bound: int | None = None
    jobs: int = 1
    out: str | None = None
    seed: int = 0

    def __post_init__(self):
        if self.max_class < 0:
            raise ValueError("max class must be natural")
        if self.jobs < 1:
            raise ValueError("jobs must be positive")
        if self.bm_bound is not None and self.bm_bound < 1:
            raise ValueError("Banach-Mazur bound must be positive")


@dataclass
class EntryResult:
    entry: CorpusEntry
    report: dict
    mismatches: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.mismatches


def _actual(report) -> dict:
    rec = report.record()
    flat = {"label": rec["label"], "category": rec["category"]}
    flat.update(rec["flags"])
    return flat


def evaluate_entry(e: CorpusEntry, max_class: int, bm_bound: int | None) -> EntryResult:
    report = classify(elaborate(parse_expr(e.source)), max_class=max_class, bm_bound=bm_bound)
    actual = _actual(report)
    mism = [f"{k}: expected {v!r}, got {actual.get(k)!r}"
            for k, v in e.expected.items() if actual.get(k) != v]
    return EntryResult(e, report.record(), mism)


def _job(args):
    return evaluate_entry(*args)


def run_corpus(cfg: RunConfig) -> list:
    tasks = [(e, cfg.max_class, cfg.bm_bound) for e in CORPUS]
    if cfg.jobs > 1:
        with ProcessPoolExecutor(max_workers=cfg.jobs) as pool:
            return list(pool.map(_job, tasks))
    return [_job(t) for t in tasks]


def render_table(results) -> str:
    by_name = {r.entry.name: r for r in results}
    lines = [f"{'row':<6} {'entry':<10} {'expected':<10} {'computed':<10} "
             f"{'level':<8} {'category':<20} status"]
    for row, names in DIAGRAM_ROWS:
        for n in names:
            lines.append(_line(row, by_name[n]))
    for r in results:
        if r.entry.tag == "control":
            lines.append(_line("-", r))
    return "\n".join(lines) + "\n"


def _line(row, r: EntryResult) -> str:
    rep = r.report
    level = f"{rep['diff_level']['k']}{rep['diff_level']['side']}"
    expected = r.entry.expected.get("label", "-")
    status = "ok" if r.ok else "MISMATCH"
    return (f"{row:<6} {r.entry.name:<10} {expected:<10} {rep['label']:<10} "
            f"{level:<8} {rep['category']:<20} {status}")


def full_report(results, cfg: RunConfig) -> str:
    return json.dumps({
        "config": {"max_class": cfg.max_class, "bm_bound": cfg.bm_bound, "seed": cfg.seed},
        "entries": [{"name": r.entry.name, "source": r.entry.source, "tag": r.entry.tag,
                     "expected": r.entry.expected, "report": r.report,
                     "mismatches": r.mismatches} for r in results],
    }, indent=2, sort_keys=True, ensure_ascii=False) + "\n"
