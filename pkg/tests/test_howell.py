import itertools
import random

import pytest

from pisotmod.errors import RejectedInputError
from pisotmod.howell import howell_form, in_row_span, kernel_mod


def span(rows, mod, n):
    """All Z-combinations of ``rows`` modulo ``mod`` (breadth-first closure)."""
    seen = {tuple([0] * n)}
    frontier = list(seen)
    while frontier:
        new = []
        for v in frontier:
            for r in rows:
                w = tuple((a + b) % mod for a, b in zip(v, r))
                if w not in seen:
                    seen.add(w)
                    new.append(w)
        frontier = new
    return seen


def brute_kernel(A, mod, n):
    return {
        x
        for x in itertools.product(range(mod), repeat=n)
        if all(sum(a * b for a, b in zip(row, x)) % mod == 0 for row in A)
    }


@pytest.mark.parametrize("q,m", [(2, 1), (2, 2), (2, 3), (3, 1), (3, 2), (5, 1)])
def test_kernel_matches_brute_force(q, m):
    rng = random.Random(q * 100 + m)
    mod = q**m
    for _ in range(25):
        n = rng.randint(1, 3)
        rows = rng.randint(0, 3)
        A = [[rng.randrange(mod) for _ in range(n)] for _ in range(rows)]
        gens = kernel_mod(A, q, m, ncols=n)
        assert span(gens, mod, n) == brute_kernel(A, mod, n)


@pytest.mark.parametrize("q,m", [(2, 2), (2, 3), (3, 2)])
def test_howell_span_and_membership(q, m):
    rng = random.Random(q + 10 * m)
    mod = q**m
    for _ in range(25):
        n = rng.randint(1, 3)
        rows = [[rng.randrange(mod) for _ in range(n)] for _ in range(rng.randint(1, 3))]
        form = howell_form(rows, q, m)
        target = span(rows, mod, n)
        assert span(form, mod, n) == target
        for r in form:
            piv = next(x for x in r if x)
            assert piv in {q**v for v in range(m)}
        for v in itertools.product(range(mod), repeat=n):
            assert in_row_span(form, v, q, m) == (v in target)


def test_howell_property_for_lower_blocks():
    # rows with a zero first entry span everything in the module with first entry zero
    q, m = 2, 3
    form = howell_form([[4, 1], [2, 3]], q, m)
    tail = [r for r in form if r[0] == 0]
    module = span([[4, 1], [2, 3]], 8, 2)
    assert span(tail, 8, 2) == {v for v in module if v[0] == 0}


def test_validation():
    with pytest.raises(RejectedInputError):
        howell_form([[1]], 4, 1)
    with pytest.raises(RejectedInputError):
        howell_form([[1]], 2, 0)
    with pytest.raises(RejectedInputError):
        howell_form([[1], [1, 2]], 2, 1)
    assert kernel_mod([], 3, 1, ncols=0) == []
