import itertools

import pytest

from chromatic import cells
from chromatic.errors import CensusTooLarge
from chromatic.groups import is_isomorphic
from chromatic.verify import CORPUS_SPECS, Check, registered_checks, run_checks, standard_corpus


def test_registered_checks():
    assert {
        "finite-census-closed-forms",
        "census-oracle",
        "phi-triangular",
        "soule-sl3-p3",
        "soule-sl3-p2",
        "soule-sl3-rational",
        "amalgams",
        "ladder",
        "ring-homomorphisms",
        "coxeter",
        "closed-forms",
    } <= set(registered_checks)
    assert all(check.provenance for check in registered_checks.values())


def test_standard_corpus(settings):
    corpus = standard_corpus()
    assert corpus
    assert all(group.order <= settings.verify_max_corpus_order for group in corpus)
    orders = [group.order for group in corpus]
    assert orders == sorted(orders)
    for left, right in itertools.combinations(corpus, 2):
        assert not is_isomorphic(left, right)


def test_corpus_specs_are_sorted_by_order():
    assert len(CORPUS_SPECS) == len(set(CORPUS_SPECS))
    assert len(standard_corpus(8)) == 14


def test_all_checks_pass():
    results = run_checks()
    failures = [f"{result.name}: {result.detail}" for result in results if not result.passed]
    assert not failures
    assert len(results) == len(registered_checks)


def test_filter():
    results = run_checks("ladder")
    assert [result.name for result in results] == ["ladder"]
    assert results[0].passed
    assert run_checks("no-such-check") == []


def test_corrupted_cell_structure_is_caught(monkeypatch):
    original = cells.soule_sl3()
    corrupted = cells.ProperCellStructure(label=original.label, cells=original.cells[1:])
    monkeypatch.setattr(cells, "soule_sl3", lambda: corrupted)

    results = {result.name: result for result in run_checks("soule-sl3")}
    assert not results["soule-sl3-p3"].passed
    assert "expected" in results["soule-sl3-p3"].detail
    assert not results["soule-sl3-rational"].passed


def test_errors_fail_the_check(monkeypatch):
    def explode() -> list[str]:
        raise CensusTooLarge("too many tuples")

    monkeypatch.setitem(registered_checks, "explode", Check(name="explode", provenance="test", function=explode))
    (result,) = run_checks("explode")
    assert not result.passed
    assert "CensusTooLarge" in result.detail


@pytest.mark.parametrize("name", ["soule-sl3-p2", "amalgams", "closed-forms", "coxeter"])
def test_single_checks(name):
    results = run_checks(name)
    assert results
    for result in results:
        assert name in result.name
        assert result.passed, result.detail


def test_unexpected_errors_fail_only_their_check(monkeypatch):
    def crash() -> list[str]:
        raise KeyError("missing")

    monkeypatch.setitem(registered_checks, "crash", Check(name="crash", provenance="test", function=crash))
    monkeypatch.setitem(registered_checks, "crash-free", Check(name="crash-free", provenance="test", function=list))
    results = {result.name: result for result in run_checks("crash")}
    assert not results["crash"].passed
    assert "KeyError" in results["crash"].detail
    assert results["crash-free"].passed
