"""
Regenerate the golden basis dumps under tests/golden/.

Usage:
    python -m scripts.generate_golden
"""
import logging
import os

from invariants.models import Composition
from invariants.utils.basisgen import build
from invariants.utils.export import basis_dump, write_json
from invariants.utils.gfq import get_field

logging.basicConfig(level=logging.INFO, format='%(asctime)s - %(levelname)s - %(message)s')
logger = logging.getLogger(__name__)

GOLDEN_DIR = os.path.join(os.path.dirname(os.path.dirname(os.path.abspath(__file__))), 'tests', 'golden')
Q = 2
LEVELS = (2, 3)
COMPOSITIONS = ['1', '2', '1,1', '3', '2,1', '1,2', '1,1,1']


def golden_path(alpha, m, q=Q):
    return os.path.join(GOLDEN_DIR, f"basis_q{q}_m{m}_{str(alpha).replace(',', '-')}.json")


def generate():
    params = get_field(Q)
    written = 0
    for m in LEVELS:
        for text in COMPOSITIONS:
            alpha = Composition.parse(text)
            elems = build(alpha, m, params)
            if write_json(basis_dump(elems, alpha, m, Q), golden_path(alpha, m)):
                written += 1
                logger.info(f"B_{m}({alpha}): {len(elems)} elements")
    return written


if __name__ == '__main__':
    count = generate()
    print(f"Wrote {count} golden dumps to {GOLDEN_DIR}")
