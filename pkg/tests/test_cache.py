import io
import json

from fanohyp import cli
from fanohyp.cache import ENV_VAR, ResultCache, cache_key


def run(argv):
    out = io.StringIO()
    assert cli.run(argv, stdout=out) == 0
    return out.getvalue()


def test_key_is_canonical():
    assert cache_key({"a": 1, "b": [1, 2]}, "1") == cache_key({"b": [1, 2], "a": 1}, "1")
    assert cache_key({"a": 1}, "1") != cache_key({"a": 1}, "2")


def test_roundtrip_and_version_invalidation(tmp_path):
    cache = ResultCache(tmp_path, "1.0")
    assert cache.get({"x": 1}) is None
    cache.put({"x": 1}, "hello\n")
    assert cache.get({"x": 1}) == "hello\n"
    assert ResultCache(tmp_path, "2.0").get({"x": 1}) is None
    assert not list(tmp_path.glob("*.tmp"))


def test_corrupt_entry_is_ignored(tmp_path):
    cache = ResultCache(tmp_path, "1.0")
    cache.put({"x": 1}, "ok")
    (path,) = tmp_path.glob("*.json")
    path.write_text("{not json", encoding="utf-8")
    assert cache.get({"x": 1}) is None


def test_settings(monkeypatch, tmp_path):
    monkeypatch.delenv(ENV_VAR, raising=False)
    assert ResultCache.from_settings(None, False, "1") is None
    assert ResultCache.from_settings(str(tmp_path), True, "1") is None
    monkeypatch.setenv(ENV_VAR, str(tmp_path))
    assert ResultCache.from_settings(None, False, "1").directory == tmp_path


def test_cache_is_transparent(monkeypatch, tmp_path):
    monkeypatch.delenv(ENV_VAR, raising=False)
    argv = ["tables", "--family", "1-9", "--format", "json"]
    plain = run(argv + ["--no-cache"])
    first = run(argv + ["--cache-dir", str(tmp_path)])
    entries = list(tmp_path.glob("*.json"))
    assert len(entries) == 1
    second = run(argv + ["--cache-dir", str(tmp_path)])
    assert plain == first == second
    stored = json.loads(entries[0].read_text(encoding="utf-8"))
    assert stored["output"] == plain and stored["version"]


def test_cache_hit_skips_recomputation(monkeypatch, tmp_path):
    monkeypatch.delenv(ENV_VAR, raising=False)
    argv = ["bott", "--k", "2", "--n", "5", "--cache-dir", str(tmp_path)]
    run(argv)

    def boom(args):
        raise AssertionError("recomputed despite a cache hit")

    monkeypatch.setitem(cli.COMMANDS, "bott", boom)
    assert "dimension 1" in run(argv)


def test_env_var_fallback(monkeypatch, tmp_path):
    monkeypatch.setenv(ENV_VAR, str(tmp_path))
    run(["bott", "--k", "2", "--n", "4", "--twist", "1"])
    assert len(list(tmp_path.glob("*.json"))) == 1
