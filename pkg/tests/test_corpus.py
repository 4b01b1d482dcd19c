import pytest

from maxchain import acceptance, cli
from maxchain.acceptance import CriterionResult
from maxchain.corpus import check_entry, corpus_entries, load_manifest, parse_manifest


def _param(e):
    marks = [pytest.mark.slow] if e.slow else []
    return pytest.param(e, id=e.name, marks=marks)


@pytest.mark.parametrize("entry", [_param(e) for e in corpus_entries(include_slow=True)])
def test_manifest_entry(entry):
    res = check_entry(entry)
    assert res.passed, [c for c in res.claims if not c.passed]


def test_manifest_shape():
    m = load_manifest()
    assert len(m) >= 25
    orders = {e.order for e in m.values()}
    assert min(orders) == 1 and max(orders) == 2448
    assert m["R17-order75"].spec == "@order75"


def test_manifest_parse_errors():
    with pytest.raises(ValueError):
        parse_manifest("A | A(4) | order=12")
    with pytest.raises(ValueError):
        parse_manifest("A | A(4) | order=12 | x\nA | A(4) | order=12 | y")


@pytest.mark.parametrize("outcomes,code", [([True, True], 0), ([True, False], 1)])
def test_corpus_exit_tracks_criteria(monkeypatch, capsys, outcomes, code):
    fake = [CriterionResult(k, "stub", ok, "") for k, ok in enumerate(outcomes, 1)]
    monkeypatch.setattr(acceptance, "run_all", lambda slow=True: fake)
    monkeypatch.setattr("maxchain.corpus.corpus_entries",
                        lambda include_slow=False: list(load_manifest().values())[:3])
    assert cli.main(["corpus", "--jobs", "2"]) == code
    capsys.readouterr()
