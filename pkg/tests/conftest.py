import pathlib
import sys

import pytest

sys.path.insert(0, str(pathlib.Path(__file__).parent))

from hybridalg.algebra import build_algebra, relation_window
from hybridalg.corpus import entry_ids, load_entry


class CorpusCache:
    """Session-wide lazy cache of parsed corpus data, built algebras, and
    brute-force oracle closures."""

    def __init__(self):
        self._data = {}
        self._algebras = {}
        self._oracles = {}

    def data(self, entry_id):
        if entry_id not in self._data:
            self._data[entry_id] = load_entry(entry_id)
        return self._data[entry_id][0]

    def expected(self, entry_id):
        if entry_id not in self._data:
            self._data[entry_id] = load_entry(entry_id)
        return self._data[entry_id][1]

    def algebra(self, entry_id):
        if entry_id not in self._algebras:
            self._algebras[entry_id] = build_algebra(self.data(entry_id))
        return self._algebras[entry_id]

    def oracle(self, entry_id):
        """(dims, total, nil length, closure) from the brute-force side."""
        if entry_id not in self._oracles:
            from oracle import oracle_dimensions
            alg = self.algebra(entry_id)
            self._oracles[entry_id] = oracle_dimensions(
                alg.data, alg.relations, alg.length,
                relation_window(alg.relations), known_s=alg.nil_length)
        return self._oracles[entry_id]

    def buildable_ids(self):
        out = []
        for entry_id in entry_ids():
            expected = self.expected(entry_id)
            if expected.get("build_error") or "total_dim" not in expected:
                continue
            out.append(entry_id)
        return out


@pytest.fixture(scope="session")
def corpus():
    return CorpusCache()
