from __future__ import annotations

import json
from pathlib import Path
from typing import Any, Dict, Iterable, Optional

from deltakoszul.config import get_settings
from deltakoszul.utils.time import utc_now


def _path(path: Optional[str]) -> Path:
    return Path(path or get_settings().JOURNAL_PATH)


def append_event(event: Dict[str, Any], path: Optional[str] = None) -> None:
    """Append one JSONL event (audit trial, counterexample, replay)."""
    p = _path(path)
    p.parent.mkdir(parents=True, exist_ok=True)
    e = {"ts": utc_now().isoformat(), **event}
    with p.open("a", encoding="utf-8") as f:
        f.write(json.dumps(e, ensure_ascii=False, default=str) + "\n")


def iter_events(path: Optional[str] = None, kind: Optional[str] = None) -> Iterable[Dict[str, Any]]:
    p = _path(path)
    if not p.exists():
        return []
    out = []
    for line in p.read_text(encoding="utf-8").splitlines():
        line = line.strip()
        if not line:
            continue
        try:
            e = json.loads(line)
        except json.JSONDecodeError:
            continue
        if kind is None or e.get("event") == kind:
            out.append(e)
    return out
