import os
from dotenv import load_dotenv
from pathlib import Path

# Locate the .env file
BASE_DIR = Path(__file__).resolve().parent.parent
ENV_PATH = BASE_DIR / ".env"

# Load environment variables from the .env file
load_dotenv(dotenv_path=ENV_PATH)

DEBUG = os.getenv("DEBUG") == "True"

# Seed for gen_random when --seed is not given
DEFAULT_SEED = int(os.getenv("RECTCOVER_SEED", "0"))

# Node budget of the exact searches
DEFAULT_NODE_LIMIT = int(os.getenv("RECTCOVER_NODE_LIMIT", "200000"))

# Largest locality k the CLI accepts
MAX_LOCAL_SEARCH_K = int(os.getenv("RECTCOVER_MAX_K", "5"))

LOG_LEVEL = os.getenv("RECTCOVER_LOG_LEVEL", "DEBUG" if DEBUG else "WARNING").upper()
