"""Configuration file for the application."""
import os
from pathlib import Path

from dotenv import load_dotenv

# Get the project root directory (where .env will live)
PROJECT_ROOT = Path(__file__).parent.parent

# Load environment variables from project root
load_dotenv(PROJECT_ROOT / ".env")

# Capacity guards
MAX_JSL_STATES = int(os.getenv("SYNMON_MAX_JSL_STATES", 2**20))
MAX_DIM = int(os.getenv("SYNMON_MAX_DIM", 4096))
MAX_ELEMENTS = int(os.getenv("SYNMON_MAX_ELEMENTS", 200000))
MAX_WORD_LENGTH = int(os.getenv("SYNMON_MAX_WORD_LENGTH", 64))
MAX_ORACLE_STATES = int(os.getenv("SYNMON_MAX_ORACLE_STATES", 20))

# Verification defaults
DEFAULT_SEED = int(os.getenv("SYNMON_SEED", 0))
RECOGNITION_SAMPLES = int(os.getenv("SYNMON_RECOGNITION_SAMPLES", 1000))
DEFAULT_PRIME = int(os.getenv("SYNMON_PRIME", 2))

# Acceptance corpus
CORPUS_PATH = Path(os.getenv("SYNMON_CORPUS_PATH", PROJECT_ROOT / "config" / "corpus.yaml"))

# Logging path - defaults to log directory in project root
APP_LOGGING_PATH = os.getenv("SYNMON_LOGGING_PATH", PROJECT_ROOT / "log")
LOG_LEVEL = os.getenv("SYNMON_LOG_LEVEL", "INFO")
