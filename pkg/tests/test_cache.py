import json

from motivic_steenrod import cache, power_ops
from motivic_steenrod.algebra import AElement, chi


def test_save_load_round_trip(tmp_path):
    path = tmp_path / "c.json"
    power_ops.q_element(4, AElement.tau_gen(0) * AElement.xi_gen(1))
    chi(AElement.tau_gen(3))
    cache.save(path, (-40, 40))
    before = power_ops.memo_snapshot()
    power_ops.clear_memo()
    assert cache.load(path, (-40, 40)) == "loaded"
    after = power_ops.memo_snapshot()
    assert after["monomials"] == before["monomials"]
    assert after["generators"] == before["generators"]


def test_stale_and_missing(tmp_path):
    path = tmp_path / "c.json"
    assert cache.load(path, (-40, 40)) == "missing"
    cache.save(path, (-40, 40))
    assert cache.load(path, (-20, 40)) == "stale"
    path.write_text("{not json")
    assert cache.load(path, (-40, 40)) == "corrupt"


def test_info_and_clear(tmp_path):
    path = tmp_path / "c.json"
    cache.save(path, (-40, 40))
    info = cache.info(path, (-40, 40))
    assert info["valid"] and info["version"] == cache.FORMAT_VERSION
    data = json.loads(path.read_text())
    assert set(data) >= {"version", "convention", "window", "chi", "q_generators", "q_monomials"}
    assert cache.clear(path)
    assert not path.exists()


def test_env_override(monkeypatch, tmp_path):
    monkeypatch.setenv(cache.ENV_VAR, str(tmp_path / "x.json"))
    assert cache.default_path() == tmp_path / "x.json"
