"""Small output helpers shared by the CSV and SVG writers."""

import os
import tempfile
from pathlib import Path


def fmt17(x: float) -> str:
    """Decimal text with 17 significant digits (round-trips any float64)."""
    return format(float(x), ".17g")


def atomic_write_text(path, text: str) -> None:
    """Write ``text`` to ``path`` through a temp file and a rename."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=f".{path.name}.", suffix=".tmp")
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise
