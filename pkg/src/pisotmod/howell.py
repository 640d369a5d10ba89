"""Row reduction over the residue ring Z/q^m for a prime q.

Over a chain ring every nonzero entry is ``q^v * unit``, so pivots are
chosen by minimal valuation and normalized to exactly ``q^v``. Zeroing a
column below a pivot of valuation v leaves the row ``q^(m-v) * pivot_row``
in the row module with a zero in that column; adding it back before moving
on is what makes the result a Howell form: for every j the rows whose first
j entries vanish span all module elements with that property. This is the
fact :func:`kernel_mod` relies on.
"""

from __future__ import annotations

from typing import Sequence

from ._arith import is_prime, valuation
from .errors import RejectedInputError


def _unit_and_valuation(x: int, q: int, m: int) -> tuple[int, int]:
    v = valuation(x, q)
    return v, (x // q**v) % q ** (m - v)


def howell_form(rows: Sequence[Sequence[int]], q: int, m: int) -> list[list[int]]:
    """Howell form of the row module spanned by ``rows`` over Z/q^m.

    Returned rows are nonzero, in echelon order, each pivot is a power of q
    and entries above a pivot ``q^v`` are reduced into ``[0, q^v)``.
    """
    if not is_prime(q):
        raise RejectedInputError(f"{q} is not prime")
    if m < 1:
        raise RejectedInputError("exponent must be at least 1")
    mod = q**m
    width = len(rows[0]) if rows else 0
    pending = [[x % mod for x in r] for r in rows]
    if any(len(r) != width for r in pending):
        raise RejectedInputError("rows must have equal length")
    done: list[tuple[int, list[int]]] = []  # (pivot column, row)
    for col in range(width):
        pending = [r for r in pending if any(r)]
        best = None
        for idx, r in enumerate(pending):
            if r[col]:
                v = valuation(r[col], q)
                if best is None or v < best[0]:
                    best = (v, idx)
        if best is None:
            continue
        v, idx = best
        piv = pending.pop(idx)
        _, unit = _unit_and_valuation(piv[col], q, m)
        inv = pow(unit, -1, mod)
        piv = [x * inv % mod for x in piv]
        pv = q**v
        rest = []
        for r in pending:
            if r[col]:
                f = r[col] // pv
                r = [(a - f * b) % mod for a, b in zip(r, piv)]
            rest.append(r)
        if v > 0:
            rest.append([x * q ** (m - v) % mod for x in piv])
        pending = rest
        for j, (c, r) in enumerate(done):
            f = r[col] // pv
            if f:
                done[j] = (c, [(a - f * b) % mod for a, b in zip(r, piv)])
        done.append((col, piv))
    return [r for _, r in done]


def kernel_mod(matrix: Sequence[Sequence[int]], q: int, m: int, ncols: int | None = None) -> list[list[int]]:
    """Generators of ``{x in (Z/q^m)^n : matrix . x = 0}``.

    Works on the augmented rows ``[A^T | I]``: its row module is
    ``{(x A^T, x)}`` and, by the Howell property, the rows with vanishing
    left block span the kernel. An empty generator list means only zero.
    """
    mod = q**m
    c = len(matrix)
    n = ncols if ncols is not None else (len(matrix[0]) if matrix else 0)
    aug = []
    for i in range(n):
        left = [matrix[j][i] % mod for j in range(c)]
        right = [1 if t == i else 0 for t in range(n)]
        aug.append(left + right)
    if not aug:
        return []
    form = howell_form(aug, q, m)
    return [r[c:] for r in form if not any(r[:c])]


def in_row_span(form: Sequence[Sequence[int]], vec: Sequence[int], q: int, m: int) -> bool:
    """Membership of ``vec`` in the row module of a Howell form."""
    mod = q**m
    v = [x % mod for x in vec]
    for r in form:
        col = next(i for i, x in enumerate(r) if x)
        if v[col] % r[col]:
            return False
        f = v[col] // r[col]
        v = [(a - f * b) % mod for a, b in zip(v, r)]
    return not any(v)
