import json
from fractions import Fraction
from importlib import resources

import pytest

from combcert import FormatError, reproduce_tables, verify
from combcert.certificates import build_l3
from combcert.cli import main
from combcert.combs import Comb
from combcert.jsonio import (
    dump_certificate,
    dump_comb,
    dump_instance,
    load_certificate,
    load_comb,
    load_instance,
    write_json,
)
from combcert.search import ExperimentConfig, run_search


def _data_path(name):
    return str(resources.files("combcert.data").joinpath(name))


def test_instance_round_trip_is_value_exact(table1):
    instance, point, _ = table1
    doc = dump_instance(instance, point)
    instance2, point2 = load_instance(doc)
    assert instance2 == instance
    assert point2 == point
    # Canonical form is idempotent byte for byte.
    assert dump_instance(instance2, point2) == doc


def test_instance_accepts_either_key_order():
    doc = {
        "class1": ["a"],
        "class2": ["b"],
        "weights": {"b-a": "2/4"},
    }
    instance, point = load_instance(doc)
    edge = next(iter(instance.edges))
    assert point.weight(edge) == Fraction(1, 2)


@pytest.mark.parametrize(
    "mutation,field_part",
    [
        (lambda d: d.__setitem__("class1", "abc"), "class1"),
        (lambda d: d["weights"].__setitem__("a-a", "1"), "weights['a-a']"),
        (lambda d: d["weights"].__setitem__("a-x", "1"), "weights['a-x']"),
        (lambda d: d["weights"].__setitem__("a-b", "1/0"), "weights['a-b']"),
        (lambda d: d["weights"].__setitem__("b-a", "1"), "weights['b-a']"),
    ],
)
def test_malformed_instance_names_offending_field(mutation, field_part):
    doc = {"class1": ["a"], "class2": ["b"], "weights": {"a-b": "1"}}
    mutation(doc)
    with pytest.raises(FormatError) as err:
        load_instance(doc)
    assert field_part in err.value.field


def test_label_with_dash_rejected():
    doc = {"class1": ["a-1"], "class2": ["b"], "weights": {}}
    with pytest.raises(FormatError):
        load_instance(doc)


def test_comb_round_trip(table1):
    instance, _, comb = table1
    doc = dump_comb(comb, instance)
    assert load_comb(doc, instance) == comb


def test_comb_unknown_label_names_field(table1):
    instance, _, _ = table1
    with pytest.raises(FormatError) as err:
        load_comb({"hand": ["a"], "teeth": [["a", "zz"]]}, instance)
    assert err.value.field == "teeth[0][1]"


def test_certificate_round_trip_losslessly(table2):
    instance, _, comb = table2
    reduced = Comb(comb.hand - {instance.vertex("b")}, comb.teeth)
    cert = build_l3(instance, reduced)
    doc = dump_certificate(cert, instance)
    restored = load_certificate(doc, instance)
    assert restored.builder == cert.builder
    assert restored.comb == cert.comb
    # Notes are presentation-only; structural identity must survive exactly.
    structural = lambda ms: {
        (m.kind, m.vertex, m.vertex_set, m.support) for m in ms
    }
    assert structural(restored.members) == structural(cert.members)
    report = verify(instance, restored)
    assert report.dominates


def test_reproduce_tables_both_variants():
    assert reproduce_tables("corrected").ok
    assert reproduce_tables("printed").ok


def test_cli_paper_tables(capsys):
    assert main(["paper-tables", "--format", "json"]) == 0
    document = json.loads(capsys.readouterr().out)
    assert document["ok"] is True


def test_cli_verify_point_and_exit_codes(tmp_path, capsys):
    code = main(
        ["verify-point", "--instance", _data_path("table1_instance.json")]
    )
    assert code == 0
    capsys.readouterr()

    bad = {
        "class1": ["a"],
        "class2": ["b"],
        "weights": {"a-b": "3/2"},
    }
    bad_path = tmp_path / "bad.json"
    bad_path.write_text(json.dumps(bad))
    code = main(["verify-point", "--instance", str(bad_path), "--format", "json"])
    assert code == 1
    document = json.loads(capsys.readouterr().out)
    assert document["feasible"] is False
    assert document["violations"][0]["constraint"] == "ub(a-b)"


def test_cli_classify_and_implied(capsys):
    code = main(
        [
            "classify",
            "--instance",
            _data_path("table1_instance.json"),
            "--comb",
            _data_path("table1_comb.json"),
            "--format",
            "json",
        ]
    )
    assert code == 0
    document = json.loads(capsys.readouterr().out)
    assert document["builders"] == []

    code = main(
        [
            "implied",
            "--instance",
            _data_path("table1_instance.json"),
            "--comb",
            _data_path("table1_comb.json"),
            "--format",
            "json",
        ]
    )
    assert code == 1  # property refuted: the comb row is violated
    document = json.loads(capsys.readouterr().out)
    assert document["status"] == "violated"
    assert document["optimum"] == "15/2"


def test_cli_certify_round_trip(tmp_path, capsys):
    instance_doc = {
        "class1": ["a", "p", "q", "r"],
        "class2": ["b", "c", "x", "y"],
        "weights": {
            f"{u}-{v}": "0"
            for u in ("a", "p", "q", "r")
            for v in ("b", "c", "x", "y")
        },
    }
    comb_doc = {
        "hand": ["a", "b", "c"],
        "teeth": [["a", "x"], ["b", "p"], ["c", "q"]],
    }
    ipath = tmp_path / "instance.json"
    cpath = tmp_path / "comb.json"
    opath = tmp_path / "cert.json"
    ipath.write_text(json.dumps(instance_doc))
    cpath.write_text(json.dumps(comb_doc))
    code = main(
        [
            "certify",
            "--instance",
            str(ipath),
            "--comb",
            str(cpath),
            "--output",
            str(opath),
            "--format",
            "json",
        ]
    )
    assert code == 0
    emitted = json.loads(capsys.readouterr().out)
    assert emitted["verified"] is True
    assert emitted["builder"] == "L1"
    stored = json.loads(opath.read_text())
    instance, _ = load_instance(instance_doc)
    restored = load_certificate(stored, instance)
    assert verify(instance, restored).dominates


def test_cli_facet_and_implied_on_certifiable_comb(tmp_path, capsys):
    instance_doc = {
        "class1": ["a", "p", "q", "r"],
        "class2": ["b", "c", "x", "y"],
        "weights": {
            f"{u}-{v}": "0"
            for u in ("a", "p", "q", "r")
            for v in ("b", "c", "x", "y")
        },
    }
    comb_doc = {
        "hand": ["a", "b", "c"],
        "teeth": [["a", "x"], ["b", "p"], ["c", "q"]],
    }
    ipath = tmp_path / "instance.json"
    cpath = tmp_path / "comb.json"
    ipath.write_text(json.dumps(instance_doc))
    cpath.write_text(json.dumps(comb_doc))

    code = main(
        ["implied", "--instance", str(ipath), "--comb", str(cpath), "--format", "json"]
    )
    assert code == 0  # certified family, so the row is implied
    document = json.loads(capsys.readouterr().out)
    assert document["status"] == "implied"
    assert document["dual"]

    code = main(
        ["facet", "--instance", str(ipath), "--comb", str(cpath), "--format", "json"]
    )
    assert code == 0
    document = json.loads(capsys.readouterr().out)
    assert document["verdict"] != "facet"


def test_cli_malformed_input_exit_2(tmp_path, capsys):
    path = tmp_path / "broken.json"
    path.write_text("{not json")
    code = main(["verify-point", "--instance", str(path)])
    assert code == 2
    err = capsys.readouterr().err
    assert "error" in err


def test_search_is_deterministic(tmp_path):
    out1 = tmp_path / "f1.json"
    out2 = tmp_path / "f2.json"
    for out in (out1, out2):
        run_search(
            ExperimentConfig(seed=2, size=4, comb_count=30, output=str(out))
        )
    assert out1.read_text() == out2.read_text()


def test_search_certifies_all_l1_samples():
    findings = run_search(
        ExperimentConfig(seed=5, size=4, comb_count=100, families=("l1",))
    )
    assert len(findings["certified"]) == 100
    assert findings["failures"] == []


def test_search_rediscovers_a_violated_comb():
    findings = run_search(
        ExperimentConfig(seed=2, size=4, comb_count=80, families=("wild",))
    )
    assert findings["violated"]
    entry = findings["violated"][0]
    assert Fraction(entry["margin"]) > 0
