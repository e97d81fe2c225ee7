"""
CSV Output Service

Rows are rendered with 17 significant digits and RFC-4180 line endings, then
written in one piece so a failed run leaves no partial file behind.
"""

import csv
import io
import logging
from typing import Iterable, Optional, Sequence, Union

from django.core.management.base import OutputWrapper

logger = logging.getLogger(__name__)

Cell = Union[int, float, str]


def format_cell(value: Cell) -> str:
    if isinstance(value, float):
        return "%.17g" % value
    return str(value)


def render_csv(header: Sequence[str], rows: Iterable[Sequence[Cell]]) -> str:
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\r\n")
    writer.writerow(header)
    for row in rows:
        writer.writerow([format_cell(value) for value in row])
    return buffer.getvalue()


def write_output(text: str, out_path: Optional[str], stdout: OutputWrapper) -> None:
    """
    Write machine output to a file, or to the command's stdout when no path is given.

    Raises:
        OSError: when the file cannot be written
    """
    if not out_path:
        stdout.write(text, ending="")
        return
    try:
        with open(out_path, "w", newline="", encoding="utf-8") as handle:
            handle.write(text)
    except OSError as e:
        logger.error(f"Could not write {out_path}: {e}")
        raise
    logger.info(f"Wrote {len(text)} characters to {out_path}")
