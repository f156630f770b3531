"""Runtime configuration, read once from the environment (.env supported)."""

import os

from dotenv import load_dotenv


# Load environment variables
load_dotenv()

BASE_DIR = os.path.dirname(os.path.dirname(os.path.abspath(__file__)))


def _env_int(name: str, default: int) -> int:
    raw = os.getenv(name)
    if raw is None or not raw.strip():
        return default
    try:
        return int(raw)
    except ValueError:
        return default


def _env_bool(name: str, default: bool) -> bool:
    raw = os.getenv(name)
    if raw is None:
        return default
    return raw.strip().lower() in ("1", "true", "yes", "on")


# Hard bound for any constructed group (direct products included)
MAX_GROUP_ORDER = _env_int("POWERGRAPHS_MAX_GROUP_ORDER", 4096)

# Bound for groups and graphs that come in through the command line
CLI_MAX_ORDER = _env_int("POWERGRAPHS_CLI_MAX_ORDER", 512)

# Canonical forms are only attempted up to this many vertices
CANON_MAX_VERTICES = _env_int("POWERGRAPHS_CANON_MAX_VERTICES", 512)

# Theorem sweep defaults
VERIFY_MAX_ORDER = _env_int("POWERGRAPHS_VERIFY_MAX_ORDER", 32)
VERIFY_EXTENDED_ORDER = _env_int("POWERGRAPHS_VERIFY_EXTENDED_ORDER", 64)

# Logging
LOG_DIR = os.getenv("POWERGRAPHS_LOG_DIR", os.path.join(BASE_DIR, "logs"))
LOG_LEVEL = os.getenv("POWERGRAPHS_LOG_LEVEL", "INFO").upper()
LOG_TO_FILE = _env_bool("POWERGRAPHS_LOG_TO_FILE", True)
