import os
from dotenv import load_dotenv

load_dotenv()

ENV_PREFIX = 'TRUNCINV_'


class Config:
    # Worker processes for degree-parallel kernels
    JOBS = int(os.environ.get('TRUNCINV_JOBS') or os.cpu_count() or 1)

    # Desk-scale guards
    MAX_MONOMIALS = int(os.environ.get('TRUNCINV_MAX_MONOMIALS') or 20000)
    MAX_ORBIT_POINTS = int(os.environ.get('TRUNCINV_MAX_ORBIT_POINTS') or 10 ** 7)
    MAX_GROUP_ORDER = int(os.environ.get('TRUNCINV_MAX_GROUP_ORDER') or 12000)

    # Identity suite
    RANDOM_SEED = int(os.environ.get('TRUNCINV_RANDOM_SEED') or 20240101)
    RANDOM_SAMPLES = int(os.environ.get('TRUNCINV_RANDOM_SAMPLES') or 50)

    LOG_LEVEL = os.environ.get('TRUNCINV_LOG_LEVEL') or 'INFO'
