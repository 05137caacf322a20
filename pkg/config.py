import os
from dotenv import load_dotenv

load_dotenv()

THREADS = int(os.getenv("GABORBENCH_THREADS", "1"))
LOG_LEVEL = os.getenv("GABORBENCH_LOG_LEVEL", "INFO")

# Eigensolver
EIGEN_SOLVER = os.getenv("GABORBENCH_EIGEN_SOLVER", "auto")
EIGEN_TOL = float(os.getenv("GABORBENCH_EIGEN_TOL", "1e-12"))
JACOBI_MAX_SWEEPS = int(os.getenv("GABORBENCH_JACOBI_MAX_SWEEPS", "100"))
JACOBI_MAX_DIM = int(os.getenv("GABORBENCH_JACOBI_MAX_DIM", "16"))

# Tolerances
HERMITIAN_TOL = float(os.getenv("GABORBENCH_HERMITIAN_TOL", "1e-10"))
FRAME_TOL = float(os.getenv("GABORBENCH_FRAME_TOL", "1e-10"))
UNIT_NORM_TOL = float(os.getenv("GABORBENCH_UNIT_NORM_TOL", "1e-8"))
TIGHT_TOL = float(os.getenv("GABORBENCH_TIGHT_TOL", "1e-6"))

# Resource guards
EXHAUSTIVE_LIMIT = int(float(os.getenv("GABORBENCH_EXHAUSTIVE_LIMIT", "2e7")))
TERM_LIMIT = int(float(os.getenv("GABORBENCH_TERM_LIMIT", "1e8")))
MAX_PERMUTATION_ORDER = int(os.getenv("GABORBENCH_MAX_PERMUTATION_ORDER", "8"))
CHUNK_SIZE = int(os.getenv("GABORBENCH_CHUNK_SIZE", "32768"))
