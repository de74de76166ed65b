"""Bundled example presentations with frozen expected results.

Every entry is a pair of files in the package's corpus directory: a
presentation document ``<id>.json`` and ``<id>.expected.json`` holding the
checks to run.  Expected values carry a "source" marker: "stated" for values
fixed in advance, "computed" for values frozen from the independent
brute-force closure during development.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from importlib import resources

from . import jsonio
from .algebra import NotFiniteDimensionalError, build_algebra
from .modules import arrow_module, omega_orbit, simple_module
from .quiver import validate


def corpus_path():
    return resources.files("hybridalg") / "corpus"


def entry_ids():
    out = []
    for item in corpus_path().iterdir():
        name = item.name
        if name.endswith(".json") and not name.endswith(".expected.json"):
            out.append(name[:-5])
    return sorted(out)


def load_entry(entry_id):
    base = corpus_path()
    pres = base / f"{entry_id}.json"
    exp = base / f"{entry_id}.expected.json"
    with resources.as_file(pres) as path:
        data = jsonio.load_presentation(path)
    expected = json.loads(exp.read_text())
    return data, expected


@dataclass
class CheckResult:
    entry: str
    check: str
    ok: bool
    detail: str = ""


def run_entry(entry_id, algebra_cache=None) -> list[CheckResult]:
    data, expected = load_entry(entry_id)
    results = []

    def record(check, ok, detail=""):
        results.append(CheckResult(entry_id, check, bool(ok), str(detail)))

    rules = validate(data, "structural").rules()
    want = expected.get("validate_structural", [])
    record("validate-structural", sorted(set(rules)) == sorted(set(want)),
           f"got {sorted(set(rules))}, want {sorted(set(want))}")
    if "validate_full" in expected:
        rules_full = validate(data, "full").rules()
        want_full = expected["validate_full"]
        record("validate-full",
               sorted(set(rules_full)) == sorted(set(want_full)),
               f"got {sorted(set(rules_full))}, want {sorted(set(want_full))}")

    if expected.get("build_error"):
        try:
            build_algebra(data)
            record("build-error", False, "build unexpectedly succeeded")
        except NotFiniteDimensionalError:
            record("build-error", True)
        return results
    if not any(key in expected for key in (
            "dimension_vector", "total_dim", "cartan", "block_count",
            "symmetric", "gabriel_arrows", "periods")):
        return results

    alg = None
    if algebra_cache is not None and entry_id in algebra_cache:
        alg = algebra_cache[entry_id]
    if alg is None:
        alg = build_algebra(data)
        if algebra_cache is not None:
            algebra_cache[entry_id] = alg
    if "dimension_vector" in expected:
        record("dimension-vector",
               alg.dimension_vector() == expected["dimension_vector"],
               f"got {alg.dimension_vector()}")
    if "total_dim" in expected:
        record("total-dim", alg.dim == expected["total_dim"], f"got {alg.dim}")
    if "cartan" in expected:
        record("cartan", alg.cartan_matrix() == expected["cartan"],
               f"got {alg.cartan_matrix()}")
    if "block_count" in expected:
        blocks = alg.block_decomposition()
        record("block-count", len(blocks) == expected["block_count"],
               f"got {len(blocks)}")
    if "symmetric" in expected:
        verdict = alg.symmetric_form_exists()
        record("symmetric", verdict.symmetric == expected["symmetric"],
               verdict.describe())
    if "gabriel_arrows" in expected:
        got = sorted(a.name for a in alg.gabriel_arrows())
        record("gabriel-arrows", got == sorted(expected["gabriel_arrows"]),
               f"got {got}")
    periods = expected.get("periods", {})
    for arrow, period in periods.get("arrows", {}).items():
        _, found = omega_orbit(alg, arrow_module(alg, arrow), 12)
        record(f"period-arrow-{arrow}", found == period, f"got {found}")
    for arrow in periods.get("border_loops", []):
        _, found = omega_orbit(alg, arrow_module(alg, arrow), 12)
        record(f"period-border-{arrow}",
               found is not None and found in (1, 2), f"got {found}")
    for vertex, period in periods.get("simples", {}).items():
        _, found = omega_orbit(alg, simple_module(alg, vertex), 12)
        record(f"period-simple-{vertex}", found == period, f"got {found}")
    return results


def run_all(algebra_cache=None):
    results = []
    for entry_id in entry_ids():
        results.extend(run_entry(entry_id, algebra_cache))
    return results
