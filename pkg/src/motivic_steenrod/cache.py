"""Persistent memo cache for the antipode table and power-operation values.

The file is versioned JSON.  Its header carries a hash of the conventions the
values depend on (packing layout, Cartan constant, truncation window); a file
whose hash does not match is ignored on load and overwritten on save.
"""

from __future__ import annotations

import hashlib
import json
import os
from pathlib import Path

from . import _packing as pk
from .algebra import AElement, chi_table, load_chi_table
from . import power_ops

FORMAT_VERSION = 1
ENV_VAR = "MOTIVIC_STEENROD_CACHE"


def default_path() -> Path:
    env = os.environ.get(ENV_VAR)
    if env:
        return Path(env)
    base = os.environ.get("XDG_CACHE_HOME") or os.path.join(os.path.expanduser("~"), ".cache")
    return Path(base) / "motivic-steenrod" / "memo.json"


def convention_hash(window) -> str:
    parts = [
        f"format={FORMAT_VERSION}",
        f"fields={pk.NFIELDS}x{pk.WIDTH}",
        f"cartan={power_ops.CARTAN_TAU}",
        f"window={list(window)}",
    ]
    return hashlib.sha256("|".join(parts).encode()).hexdigest()[:16]


def _gen_name(kind: str, n: int) -> str:
    return f"{kind}_{n}"


def _parse_gen(name: str):
    kind, n = name.rsplit("_", 1)
    return kind, int(n)


def _monomial_json(key: int):
    return AElement(frozenset([key])).to_json()[0]


def _monomial_from_json(data) -> int:
    return pk.pack(0, 0, data["tau_set"], {int(i): int(r) for i, r in data["xi_exps"].items()})


def snapshot(window) -> dict:
    memo = power_ops.memo_snapshot()
    return {
        "version": FORMAT_VERSION,
        "convention": convention_hash(window),
        "window": list(window),
        "chi": {_gen_name(*k): v.to_json() for k, v in sorted(chi_table().items())},
        "q_generators": [[i, _gen_name(kind, n), v.to_json()]
                         for (i, kind, n), v in sorted(memo["generators"].items())],
        "q_monomials": [[i, _monomial_json(key), v.to_json()]
                        for (i, key), v in sorted(memo["monomials"].items())],
    }


def save(path, window) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    tmp = path.with_suffix(path.suffix + ".tmp")
    tmp.write_text(json.dumps(snapshot(window)))
    tmp.replace(path)
    return path


def load(path, window) -> str:
    """Install cached values; returns a status word: loaded, missing, stale or corrupt."""
    path = Path(path)
    if not path.exists():
        return "missing"
    try:
        data = json.loads(path.read_text())
    except (OSError, ValueError):
        return "corrupt"
    if data.get("version") != FORMAT_VERSION or data.get("convention") != convention_hash(window):
        return "stale"
    try:
        chi = {_parse_gen(k): AElement.from_json(v) for k, v in data["chi"].items()}
        gens = {(i, *_parse_gen(name)): AElement.from_json(v) for i, name, v in data["q_generators"]}
        monos = {(i, _monomial_from_json(m)): AElement.from_json(v) for i, m, v in data["q_monomials"]}
    except (KeyError, TypeError, ValueError):
        return "corrupt"
    load_chi_table(chi)
    power_ops.memo_restore(gens, monos)
    return "loaded"


def info(path, window) -> dict:
    path = Path(path)
    out = {"path": str(path), "exists": path.exists(), "expected_convention": convention_hash(window)}
    if path.exists():
        out["bytes"] = path.stat().st_size
        try:
            data = json.loads(path.read_text())
            out.update(version=data.get("version"), convention=data.get("convention"),
                       window=data.get("window"), chi_entries=len(data.get("chi", {})),
                       q_generator_entries=len(data.get("q_generators", [])),
                       q_monomial_entries=len(data.get("q_monomials", [])))
            out["valid"] = data.get("convention") == out["expected_convention"]
        except ValueError:
            out["valid"] = False
    return out


def clear(path) -> bool:
    path = Path(path)
    if path.exists():
        path.unlink()
        return True
    return False
