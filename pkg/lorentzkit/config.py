"""
lorentzkit/config.py

Loads and validates environment variables for the toolkit.
"""

from pathlib import Path
import os
from dotenv import load_dotenv

BASE_DIR = Path(__file__).resolve().parent.parent

# Load .env
load_dotenv(BASE_DIR / ".env")


def get_env_var(name: str, default: str) -> str:
    value = os.getenv(name)
    if value is None or value.strip() == "":
        return default
    return value.strip()


def parse_bool(val: str) -> bool:
    return str(val).strip().lower() in ("true", "1", "yes", "y")


def _parse_int(name: str, default: str, minimum: int) -> int:
    raw = get_env_var(name, default)
    try:
        value = int(raw)
    except ValueError:
        raise ValueError(f"⚠️ Invalid {name}: {raw!r} is not an integer. Check your .env.") from None
    if value < minimum:
        raise ValueError(f"⚠️ Invalid {name}: {value} must be >= {minimum}. Check your .env.")
    return value


# --- Reproducibility ---
SEED = _parse_int("LORENTZKIT_SEED", "1729", 0)

# --- Logging ---
LOG_LEVEL = get_env_var("LORENTZKIT_LOG_LEVEL", "INFO").upper()
if LOG_LEVEL not in ["TRACE", "DEBUG", "INFO", "SUCCESS", "WARNING", "ERROR", "CRITICAL"]:
    raise ValueError(f"⚠️ Invalid LORENTZKIT_LOG_LEVEL: {LOG_LEVEL}. Check your .env.")
LOG_FILE = get_env_var("LORENTZKIT_LOG_FILE", "")

# --- Report output ---
OUTPUT_MODE = get_env_var("LORENTZKIT_OUTPUT", "json").lower()
if OUTPUT_MODE not in ["json", "pretty"]:
    raise ValueError(
        f"⚠️ Invalid LORENTZKIT_OUTPUT: {OUTPUT_MODE}. Must be 'json' or 'pretty'. Check your .env."
    )

# --- verify-all execution ---
WORKERS = _parse_int("LORENTZKIT_WORKERS", "4", 1)
PARALLEL = parse_bool(get_env_var("LORENTZKIT_PARALLEL", "true"))

# --- Infra / Monitoring ---
METRICS_PORT = _parse_int("LORENTZKIT_METRICS_PORT", "0", 0)
