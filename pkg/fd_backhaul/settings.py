import os

from dotenv import find_dotenv, load_dotenv

load_dotenv(find_dotenv(), override=True)

# Output settings
OUTPUT_DIR = os.environ.get("OUTPUT_DIR", "output")
LOG_LEVEL = os.environ.get("LOG_LEVEL", "INFO")

# Monte Carlo settings
MC_REALIZATIONS = int(os.environ.get("MC_REALIZATIONS", 10_000))
MC_VALIDATE_REALIZATIONS = int(os.environ.get("MC_VALIDATE_REALIZATIONS", 100_000))
MC_SEED = int(os.environ.get("MC_SEED", 2020))
MC_BATCH = int(os.environ.get("MC_BATCH", 250))
N_WORKERS = int(os.environ.get("N_WORKERS", 1))
