import json

from hybridalg.corpus import entry_ids, load_entry, run_all, run_entry


def test_corpus_is_large_enough():
    ids = entry_ids()
    assert len(ids) >= 12
    # the required families are present
    assert any(i.startswith("local_") for i in ids)
    assert any(i.startswith("disc_") for i in ids)
    assert any(i.startswith("triangle_") for i in ids)
    assert any(i.startswith("linear_") for i in ids)
    assert any(i.startswith("brauer_") for i in ids)


def test_every_entry_has_label_and_sources():
    for entry_id in entry_ids():
        _, expected = load_entry(entry_id)
        assert expected["label"]
        assert isinstance(expected.get("source", {}), dict)


def test_run_all_passes():
    cache = {}
    results = run_all(cache)
    failed = [r for r in results if not r.ok]
    assert not failed, failed[:5]
    assert len(results) > 100


def test_harness_detects_perturbed_expectation(monkeypatch):
    import hybridalg.corpus as corpus_mod
    real = corpus_mod.load_entry

    def perturbed(entry_id):
        data, expected = real(entry_id)
        expected = json.loads(json.dumps(expected))
        if "total_dim" in expected:
            expected["total_dim"] += 1
        return data, expected

    monkeypatch.setattr(corpus_mod, "load_entry", perturbed)
    results = run_entry("linear_sigma_l2")
    assert any(not r.ok and r.check == "total-dim" for r in results)
