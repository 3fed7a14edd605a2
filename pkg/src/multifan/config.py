import os

SEED_ENV = "MULTIFAN_SEED"

DEFAULT_SEED = int(os.environ.get(SEED_ENV, "1729"))

SAMPLES_PER_STRATUM = 3
