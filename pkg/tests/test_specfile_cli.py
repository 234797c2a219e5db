import io
import json
import subprocess
import sys

import pytest

from trihw import zoo
from trihw.cli import main
from trihw.specfile import SpecError, bundle_to_spec, content_hash, dumps, loads
from trihw.triangular import verifyTriangular


def run(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = main(list(argv), stdout=out, stderr=err)
    return code, out.getvalue(), err.getvalue()


@pytest.fixture(scope="module")
def specs(tmp_path_factory):
    d = tmp_path_factory.mktemp("specs")
    paths = {}
    for name, params in [("truncatedSquare", ["2"]), ("truncatedSquare", ["3"]),
                         ("pathological4dim", []), ("degenerateTriple", []),
                         ("restrictedSl2", ["3"]), ("semisimple", ["2"]),
                         ("rrcaCyclic", ["2", "[0]"]), ("dualNumbers", [])]:
        key = name + "".join(p.strip("[]") for p in params)
        path = d / f"{key}.json"
        assert run("zoo", name, *params, "--emit", str(path))[0] == 0
        paths[key] = str(path)
    return paths


# ------------------------------------------------------------ spec files


@pytest.mark.parametrize("b", [zoo.truncatedSquare(2), zoo.pathological4dim(),
                               zoo.restrictedSl2(3), zoo.rrcaCyclic(2, [1]),
                               zoo.coinvariantSkew(3), zoo.dualNumbersT()],
                         ids=lambda b: b.name)
def test_spec_round_trip(b):
    text = dumps(bundle_to_spec(b))
    back = loads(text)
    assert back.algebra.dim == b.algebra.dim
    assert back.algebra.degrees == b.algebra.degrees
    assert back.algebra.field.descriptor == b.algebra.field.descriptor
    A, B = b.algebra, back.algebra
    for i in range(A.dim):
        for j in range(A.dim):
            assert A.product_of_basis(i, j) == B.product_of_basis(i, j)
    assert verifyTriangular(back.algebra, back.td).ok
    assert back.td.labels == b.td.labels
    assert dumps(bundle_to_spec(back)) == text


def test_spec_errors_name_the_field():
    doc = bundle_to_spec(zoo.truncatedSquare(2))
    del doc["unit"]
    with pytest.raises(SpecError) as exc:
        loads(json.dumps(doc))
    assert "unit" in str(exc.value)
    with pytest.raises(SpecError) as exc:
        loads('{"schema": 1,\n "name": }')
    assert "line 2" in str(exc.value)
    doc = bundle_to_spec(zoo.truncatedSquare(2))
    doc["field"] = "R"
    with pytest.raises(SpecError):
        loads(json.dumps(doc))


def test_content_hash_depends_on_everything():
    assert content_hash("a", "verify", 0) != content_hash("a", "verify", 1)
    assert content_hash("a", "verify", 0) != content_hash("b", "verify", 0)
    assert content_hash("a", "verify", 0) == content_hash("a", "verify", 0)


# ------------------------------------------------------------ CLI


def test_verify_truncated_square(specs):
    code, out, _ = run("verify", specs["truncatedSquare2"])
    assert code == 0


def test_verify_pathological_is_informational(specs):
    code, out, _ = run("verify", specs["pathological4dim"], "--format", "json")
    assert code == 0
    doc = json.loads(out)
    assert doc["schema"] == 1
    assert doc["ambidextrous"] is False
    assert doc["ambidexterity_witness"] == "y⊗1⊗x"
    assert "ambidextrous: false" in run("verify", specs["pathological4dim"])[1]


def _find(doc, key):
    if isinstance(doc, dict):
        if key in doc:
            return doc[key]
        for v in doc.values():
            r = _find(v, key)
            if r is not None:
                return r
    if isinstance(doc, list):
        for v in doc:
            r = _find(v, key)
            if r is not None:
                return r
    return None


def test_malformed_spec_exits_2(tmp_path, specs):
    doc = json.loads(open(specs["truncatedSquare2"]).read())
    del doc["unit"]
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps(doc))
    code, _, err = run("verify", str(bad))
    assert code == 2 and "unit" in err
    code, _, _ = run("verify", str(tmp_path / "missing.json"))
    assert code == 2


def test_degenerate_triple_has_no_section(specs):
    code, _, err = run("simples", specs["degenerateTriple"])
    assert code == 2
    code, out, _ = run("verify", specs["degenerateTriple"])
    assert code == 0 and "no triangular decomposition supplied" in out
    assert run("verify", specs["degenerateTriple"], "--strict")[0] == 1


def test_tilting_on_pathological(specs):
    code, out, _ = run("tilting", specs["pathological4dim"])
    assert code == 0
    assert "no tilting objects" in out
    code, _, _ = run("tilting", specs["pathological4dim"], "--strict")
    assert code == 1


def test_matrices_truncated_square(specs):
    code, out, _ = run("matrices", specs["truncatedSquare2"], "--format", "json")
    assert code == 0
    dm = _find(json.loads(out), "D_Delta")
    assert dm is not None
    text = run("matrices", specs["truncatedSquare2"])[1]
    assert "1 + t^-1" in text or "t^-1 + 1" in text


def test_kl_on_odd_truncated_square(specs):
    code, out, _ = run("kl", specs["truncatedSquare3"])
    assert code == 0
    assert "KL fails at depth m" in out
    assert run("kl", specs["truncatedSquare3"], "--strict")[0] == 1
    code, out, _ = run("kl", specs["truncatedSquare2"])
    assert code == 0 and "for all m" in out


def test_report_is_deterministic_and_cache_transparent(specs, tmp_path):
    args = ["report", specs["restrictedSl23"], "--format", "json"]
    a = run(*args)
    b = run(*args)
    assert a == b and a[0] == 0
    cache = str(tmp_path / "cache")
    c1 = run(*args, "--cache-dir", cache)
    c2 = run(*args, "--cache-dir", cache)
    assert c1 == c2 == a


def test_report_for_semisimple_algebra(specs):
    code, out, _ = run("report", specs["semisimple2"], "--format", "json")
    assert code == 0
    doc = json.loads(out)
    assert doc["violations"] == []


def test_bgg_and_blocks_commands(specs):
    for cmd in ("bgg", "blocks", "simples"):
        code, out, _ = run(cmd, specs["rrcaCyclic20"])
        assert code == 0, out


def test_non_semisimple_t_is_gated(specs):
    code, out, _ = run("tilting", specs["dualNumbers"])
    assert code == 0
    assert "tiltingData requires semisimple T" in out


def test_unknown_zoo_name_and_bad_params():
    assert run("zoo", "nonsense")[0] == 2
    assert run("zoo", "restrictedSl2", "2")[0] == 2


def test_console_entry_point(specs):
    proc = subprocess.run([sys.executable, "-m", "trihw.cli", "verify", specs["truncatedSquare2"]],
                          capture_output=True, text=True)
    assert proc.returncode == 0
