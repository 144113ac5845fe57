from __future__ import annotations

import json
from datetime import datetime, timezone
from pathlib import Path
from typing import Any, Optional

from flask import current_app


def _json_dump(val: Any) -> Any:
    if val is None:
        return None
    try:
        json.dumps(val, ensure_ascii=False, default=str)
        return val
    except Exception:
        try:
            return str(val)
        except Exception:
            return None


def _target() -> Optional[Path]:
    try:
        path = current_app.config.get("AUDIT_LOG") or ""
    except RuntimeError:
        return None
    return Path(path) if path else None


def write_audit(
    entity_type: str,
    action: str,
    message: Optional[str] = None,
    *,
    before: Any = None,
    after: Any = None,
) -> Optional[dict]:
    """Acrescenta uma linha JSON em AUDIT_LOG. Sem AUDIT_LOG configurado, não grava nada."""
    target = _target()
    if target is None:
        return None
    row = {
        "ts": datetime.now(timezone.utc).isoformat(timespec="seconds"),
        "entity_type": entity_type,
        "action": action,
        "message": message or "",
        "before": _json_dump(before),
        "after": _json_dump(after),
    }
    try:
        target.parent.mkdir(parents=True, exist_ok=True)
        with target.open("a", encoding="utf-8") as fh:
            fh.write(json.dumps(row, ensure_ascii=False, default=str) + "\n")
    except OSError as exc:
        # auditoria nunca derruba o comando
        current_app.logger.warning('AUDIT_FAIL "%s" %s -> %s: %s', entity_type, action, target, exc)
        return None
    current_app.logger.info('AUDIT_WRITE "%s" %s -> %s', entity_type, action, target)
    return row
