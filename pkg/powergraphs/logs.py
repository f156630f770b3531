import logging
import os
from logging.handlers import RotatingFileHandler
from typing import Optional

from . import config


LOG_FORMAT = "%(asctime)s %(levelname)s %(name)s: %(message)s"


def setup_logging(level: Optional[str] = None, to_file: Optional[bool] = None) -> None:
    """Configure console logging plus a rotating file under LOG_DIR."""
    level_name = (level or config.LOG_LEVEL).upper()
    logging.basicConfig(level=getattr(logging, level_name, logging.INFO), format=LOG_FORMAT)

    if not (config.LOG_TO_FILE if to_file is None else to_file):
        return
    try:
        os.makedirs(config.LOG_DIR, exist_ok=True)
        path = os.path.join(config.LOG_DIR, "powergraphs.log")
        root = logging.getLogger()
        if any(getattr(h, "baseFilename", None) == os.path.abspath(path) for h in root.handlers):
            return
        fh = RotatingFileHandler(path, maxBytes=2_000_000, backupCount=2, encoding="utf-8")
        fh.setLevel(logging.DEBUG)
        fh.setFormatter(logging.Formatter(LOG_FORMAT))
        root.addHandler(fh)
        logging.getLogger(__name__).debug("File logging configured: %s", fh.baseFilename)
    except Exception:
        # Fallback to console logging silently
        pass
