"""Build a structure for one table and report space, lookups and correctness."""

from __future__ import annotations

import json
from collections import Counter
from importlib import resources

import numpy as np

from . import structure as st
from .builder import build_auto
from .core import AxiomError, CayleyGroup, GroupError, ParseError, load_group

EXHAUSTIVE_LIMIT = 1024
SAMPLED_PAIRS = 1_000_000
HISTOGRAM_QUERIES = 2000


def oracle_check(ds, G: CayleyGroup, *, seed: int = 0, limit: int = EXHAUSTIVE_LIMIT,
                 samples: int = SAMPLED_PAIRS, chunk: int = 1 << 20) -> dict:
    """Compare the structure with the Cayley table on all pairs, or a random sample."""
    n = G.order
    rng = np.random.default_rng(seed)
    if n <= limit:
        mode, total = "exhaustive", n * n
    else:
        mode, total = "sampled", samples
    witnesses = []
    done = 0
    while done < total:
        size = min(chunk, total - done)
        if mode == "exhaustive":
            idx = np.arange(done, done + size)
            a, b = idx // n, idx % n
        else:
            a, b = rng.integers(0, n, size=(2, size))
        got = st.multiply_many(ds, a, b)
        bad = np.flatnonzero(got != G.table[a, b])
        for i in bad[:5 - len(witnesses)]:
            witnesses.append({"a": int(a[i]) + 1, "b": int(b[i]) + 1,
                              "got": int(got[i]) + 1, "expected": int(G.table[a[i], b[i]]) + 1})
        done += size
        if len(witnesses) >= 5:
            break
    return {"mode": mode, "pairs_checked": done, "pass": not witnesses, "witnesses": witnesses}


def lookup_histogram(ds, n: int, *, seed: int = 0, queries: int = HISTOGRAM_QUERIES) -> dict:
    rng = np.random.default_rng(seed)
    hist: Counter[int] = Counter()
    for a, b in rng.integers(0, n, size=(queries, 2)).tolist():
        c = st.LookupCounter()
        st.multiply(ds, a, b, c)
        hist[c.count] += 1
    return {str(k): v for k, v in sorted(hist.items())}


def bench_group(G: CayleyGroup, *, b1=5, b2=5, seed: int = 0, source: str | None = None) -> dict:
    ds, rep = build_auto(G, b1, b2, seed=seed)
    oracle = oracle_check(ds, G, seed=seed)
    hist = lookup_histogram(ds, G.order, seed=seed)
    worst = max(int(k) for k in hist)
    lookups = {"bound": st.lookup_count(ds), "max_observed": worst, "histogram": hist}
    ok = oracle["pass"] and worst <= lookups["bound"]
    return {
        "source": source, "n": G.order, "pass": ok, "error": None,
        "space": rep.as_dict(), "plan": {"case": rep.case_tag, "trace": rep.plan.trace},
        "oracle": oracle, "lookups": lookups,
    }


def bench_file(data: bytes, *, source: str | None = None, **kw) -> dict:
    """Like ``bench_group`` but never raises on bad input: errors land in the report."""
    try:
        G = load_group(data)
    except AxiomError as exc:
        return _error_report(source, "axiom", str(exc), law=exc.law,
                             witness=[w + 1 for w in exc.witness])
    except ParseError as exc:
        return _error_report(source, "parse", str(exc))
    try:
        return bench_group(G, source=source, **kw)
    except GroupError as exc:
        return _error_report(source, "build", str(exc), n=G.order)


def _error_report(source, kind, message, *, n=None, **extra) -> dict:
    err = {"kind": kind, "message": message}
    err.update(extra)
    return {"source": source, "n": n, "pass": False, "error": err,
            "space": None, "plan": None, "oracle": None, "lookups": None}


def report_schema() -> dict:
    text = resources.files("groupds").joinpath("schemas/bench_report.schema.json").read_text()
    return json.loads(text)
