import os
import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))


@pytest.fixture(autouse=True)
def _isolated_cache(tmp_path, monkeypatch):
    monkeypatch.setenv("MOTIVIC_STEENROD_CACHE", str(tmp_path / "memo.json"))
    monkeypatch.delenv("MOTIVIC_STEENROD_CONFIG", raising=False)
    yield


def pytest_report_header(config):
    from motivic_steenrod import BACKEND
    return f"product kernel: {BACKEND}"
