"""Corpus entries and per-entry computation reports.

The corpus file is JSON: ``{"schema_version": 1, "entries": [...]}`` where
each entry has ``id``, ``group`` (group-spec grammar), ``stabilizer``
(``trivial``, ``whole``, a point index, or comma-separated cycles),
``expected_sha`` (list of invariant factors or the string ``"nonzero"``),
``provenance`` and an optional ``stretch`` flag.
"""

from __future__ import annotations

import json
import time
from dataclasses import dataclass
from importlib import resources

from .oracle import ORACLE_CAP, bar_oracle_h2, bar_oracle_sha
from .permgroup import parse_group_spec, parse_subgroup_spec
from .toruscoh import TorusModule, h2_of_that, sha2_cyc, sha2_cyc_pointwise

METHODS = ("h1", "pointwise", "oracle")


class CorpusParseError(ValueError):
    pass


class RouteDisagreement(RuntimeError):
    pass


@dataclass(frozen=True)
class CorpusEntry:
    id: str
    group_spec: str
    stabilizer_spec: str
    expected_sha: tuple[int, ...] | str
    provenance: str
    stretch: bool = False

    def matches(self, factors) -> bool:
        if self.expected_sha == "nonzero":
            return len(factors) > 0
        return tuple(factors) == tuple(self.expected_sha)

    def expected_text(self) -> str:
        return "nonzero" if self.expected_sha == "nonzero" else str(list(self.expected_sha))


def _parse_entry(raw: dict) -> CorpusEntry:
    try:
        exp = raw["expected_sha"]
        if exp != "nonzero":
            exp = tuple(int(x) for x in exp)
            for a, b in zip(exp, exp[1:]):
                if b % a:
                    raise CorpusParseError(f"{raw['id']}: expected factors are not a divisibility chain")
            if any(x < 2 for x in exp):
                raise CorpusParseError(f"{raw['id']}: invariant factors must be at least 2")
        entry = CorpusEntry(str(raw["id"]), str(raw["group"]), str(raw["stabilizer"]), exp,
                            str(raw.get("provenance", "")), bool(raw.get("stretch", False)))
    except (KeyError, TypeError, ValueError) as exc:
        if isinstance(exc, CorpusParseError):
            raise
        raise CorpusParseError(f"malformed corpus entry {raw!r}: {exc}") from exc
    try:
        parse_group_spec(entry.group_spec)
    except ValueError as exc:
        raise CorpusParseError(f"{entry.id}: {exc}") from exc
    return entry


def parse_corpus(text: str) -> list[CorpusEntry]:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise CorpusParseError(f"corpus is not valid JSON: {exc}") from exc
    if isinstance(data, dict):
        entries = data.get("entries")
    else:
        entries = data
    if not isinstance(entries, list):
        raise CorpusParseError("corpus must be a list of entries or an object with 'entries'")
    return [_parse_entry(raw) for raw in entries]


def default_corpus_text() -> str:
    return resources.files("normtorus.data").joinpath("corpus.json").read_text()


def load_corpus(path: str | None = None) -> list[CorpusEntry]:
    if path is None:
        return parse_corpus(default_corpus_text())
    try:
        with open(path) as fh:
            return parse_corpus(fh.read())
    except OSError as exc:
        raise CorpusParseError(f"cannot read corpus {path}: {exc}") from exc


def build_torus(group_spec: str, stabilizer_spec: str, cap: int | None = None) -> TorusModule:
    G = parse_group_spec(group_spec) if cap is None else parse_group_spec(group_spec, cap=cap)
    H = parse_subgroup_spec(G, stabilizer_spec)
    return TorusModule(G, H)


def compute_routes(T: TorusModule, methods=None, oracle_cap: int = ORACLE_CAP) -> dict:
    """Run the requested routes; returns factors per route plus H^2 and timings."""
    if methods is None:
        methods = ["h1", "pointwise"] + (["oracle"] if T.group.order <= oracle_cap else [])
    out = {"sha": {}, "h2": {}, "seconds": {}}
    for m in methods:
        t0 = time.perf_counter()
        if m == "h1":
            out["h2"][m] = list(h2_of_that(T)[0].invariant_factors)
            out["sha"][m] = list(sha2_cyc(T)[0].invariant_factors)
        elif m == "pointwise":
            out["h2"][m] = list(h2_of_that(T)[0].invariant_factors)
            out["sha"][m] = list(sha2_cyc_pointwise(T)[0].invariant_factors)
        elif m == "oracle":
            out["h2"][m] = list(bar_oracle_h2(T, cap=oracle_cap).invariant_factors)
            out["sha"][m] = list(bar_oracle_sha(T, cap=oracle_cap).invariant_factors)
        else:
            raise ValueError(f"unknown method {m!r}")
        out["seconds"][m] = round(time.perf_counter() - t0, 4)
    shas = list(out["sha"].values())
    h2s = list(out["h2"].values())
    out["routes_agree"] = all(s == shas[0] for s in shas) and all(h == h2s[0] for h in h2s)
    return out


def run_entry(entry: CorpusEntry, methods=None, oracle_cap: int = ORACLE_CAP) -> dict:
    T = build_torus(entry.group_spec, entry.stabilizer_spec)
    res = compute_routes(T, methods, oracle_cap)
    sha = next(iter(res["sha"].values()))
    res.update({"id": entry.id, "group": entry.group_spec, "stabilizer": entry.stabilizer_spec,
                "expected": entry.expected_text(), "provenance": entry.provenance,
                "computed": sha, "pass": res["routes_agree"] and entry.matches(sha)})
    return res
