import json
import logging
import sys
from datetime import datetime, timezone

import app.config.common as config

# extra fields to include in structured logs
EXTRA_LOG_FIELDS = [
    "command",
    "family",
    "n",
    "workers",
    "checked",
    "duration_ms",
    "k_opt",
]


class CommandFilter(logging.Filter):
    """Stamp every record with the CLI subcommand that is running."""

    def __init__(self, command: str | None):
        super().__init__()
        self.command = command

    def filter(self, record: logging.LogRecord) -> bool:
        if self.command is not None and not hasattr(record, "command"):
            record.command = self.command
        return True


class JsonLogFormatter(logging.Formatter):
    """
    One JSON object per line on stderr.

    Whitelisted ``extra=`` fields are copied into the entry, so a long table run
    can be filtered by family and n afterwards.
    """

    def format(self, record: logging.LogRecord) -> str:
        entry = {
            "timestamp": datetime.fromtimestamp(record.created, timezone.utc).isoformat(),
            "severity": record.levelname,
            "logger": record.name,
            "message": record.getMessage(),
        }
        entry.update({key: getattr(record, key) for key in EXTRA_LOG_FIELDS if hasattr(record, key)})
        if record.exc_info:
            entry["exception"] = self.formatException(record.exc_info)
        return json.dumps(entry, default=str)


class PlainLogFormatter(logging.Formatter):
    def __init__(self):
        super().__init__("%(asctime)s %(levelname)s %(name)s: %(message)s")

    def format(self, record: logging.LogRecord) -> str:
        line = super().format(record)
        extras = " ".join(f"{key}={getattr(record, key)}" for key in EXTRA_LOG_FIELDS if hasattr(record, key))
        return f"{line} [{extras}]" if extras else line


class StderrHandler(logging.StreamHandler):
    """Writes to whatever sys.stderr is when the record is emitted."""

    def __init__(self):
        super().__init__(sys.stderr)

    @property
    def stream(self):
        return sys.stderr

    @stream.setter
    def stream(self, value):
        pass


_logging_initialized = False


def setup_logging(level: str | None = None, command: str | None = None, force: bool = False) -> None:
    """Route all logging to stderr; stdout is reserved for command records."""
    global _logging_initialized
    if _logging_initialized and not force:
        return
    _logging_initialized = True

    root_logger = logging.getLogger()
    root_logger.handlers.clear()
    root_logger.setLevel(getattr(logging, (level or config.log_level).upper(), logging.INFO))

    handler = StderrHandler()
    handler.setFormatter(JsonLogFormatter() if config.log_json else PlainLogFormatter())
    handler.addFilter(CommandFilter(command))
    root_logger.addHandler(handler)

    # pool start-up chatter
    logging.getLogger("concurrent.futures").setLevel(logging.WARNING)
