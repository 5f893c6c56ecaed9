from __future__ import annotations

from pathlib import Path

import pytest

from mdlab import settings


@pytest.fixture
def isolated_settings(tmp_path: Path, monkeypatch: pytest.MonkeyPatch) -> Path:
    """Settings file and cache directory inside `tmp_path`."""
    monkeypatch.setattr(settings, "SETTINGS", tmp_path / "settings.json")
    monkeypatch.setitem(settings.BUILTIN_VARIABLES, "cache_dir", str(tmp_path / "cache"))
    monkeypatch.delenv(settings.ENV_STATE_CAP, raising=False)
    return tmp_path
