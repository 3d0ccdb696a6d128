"""JSON-lines persistence for the HN subscriber registry and the SN GUTI table.

One record per line, rewritten atomically (temp file in the same directory,
then os.replace) so a crash never leaves a half-written table.
"""

import logging
import os
import tempfile
from pathlib import Path
from typing import Iterable, TypeVar

from pydantic import BaseModel, ValidationError

from src.errors import ConfigurationError

logger = logging.getLogger(__name__)

RecordT = TypeVar("RecordT", bound=BaseModel)


def write_records_atomically(path: Path, records: Iterable[BaseModel]) -> None:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp_name = tempfile.mkstemp(dir=path.parent, prefix=f".{path.name}.", suffix=".tmp")
    try:
        with os.fdopen(fd, "w", encoding="utf-8") as f:
            for record in records:
                f.write(record.model_dump_json(exclude_none=True))
                f.write("\n")
        os.replace(tmp_name, path)
    except BaseException:
        Path(tmp_name).unlink(missing_ok=True)
        raise
    logger.debug("Rewrote %s", path)


def read_records(path: Path, model: type[RecordT]) -> list[RecordT]:
    path = Path(path)
    if not path.exists():
        return []
    records = []
    with path.open(encoding="utf-8") as f:
        for line_no, line in enumerate(f, start=1):
            line = line.strip()
            if not line:
                continue
            try:
                records.append(model.model_validate_json(line))
            except ValidationError as e:
                raise ConfigurationError(f"{path}:{line_no}: invalid {model.__name__} record") from e
    return records
