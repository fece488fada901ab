"""
Regression against committed basis dumps.

Dumps live in tests/golden and are regenerated with
`python -m scripts.generate_golden`; a missing dump is a failure.
"""
import os

import pytest

from invariants.models import Composition
from invariants.utils.basisgen import build
from invariants.utils.export import load_basis_dump
from invariants.utils.gfq import get_field
from scripts.generate_golden import COMPOSITIONS, LEVELS, Q, golden_path


@pytest.mark.parametrize('m', LEVELS)
@pytest.mark.parametrize('text', COMPOSITIONS)
def test_basis_matches_golden_dump(text, m):
    alpha = Composition.parse(text)
    path = golden_path(alpha, m)
    assert os.path.exists(path), f"missing golden dump {path}"
    params = get_field(Q)
    dump, polys = load_basis_dump(path, params, alpha.size)
    elems = build(alpha, m, params)
    assert dump['count'] == len(elems)
    assert polys == [e.value for e in elems]
    assert [e['family'] for e in dump['elements']] == [e.family for e in elems]
