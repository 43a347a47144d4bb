"""Exact sparse Gaussian elimination.

Vectors are dicts from hashable keys to field elements.  ``Echelon``
keeps rows indexed by their leading key under a caller-supplied total
order; the leading key of a row is its smallest key.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Callable, Iterable, Optional

try:
    from gmpy2 import mpq as _mpq
except ImportError:  # pragma: no cover - gmpy2 is optional
    _mpq = None


def accelerate(c):
    """Fast rational representative for elimination (gmpy2 when present)."""
    if _mpq is not None and isinstance(c, (int, Fraction)):
        return _mpq(c)
    return c


def settle(c):
    """Back from the fast representative to int / Fraction."""
    if _mpq is not None and type(c) is type(_mpq(0)):
        return Fraction(int(c.numerator), int(c.denominator))
    return c


def local_key(mon):
    """Local degree order on exponent pairs: lower total degree leads, then
    higher v-power."""
    a, b = mon
    return (a + b, -b)


def _inv(c):
    if isinstance(c, int):
        return Fraction(1, c)
    return 1 / c


class Echelon:
    """Row echelon basis of a subspace, grown incrementally."""

    def __init__(self, key: Callable = local_key):
        self.key = key
        self.rows: dict = {}

    def __len__(self):
        return len(self.rows)

    def leads(self):
        return set(self.rows)

    def reduce(self, vec: dict, stop_at_new: bool = False) -> dict:
        """Fully reduce ``vec`` against the basis; returns the remainder.

        Pivot rows only contain keys after their lead, so keys are settled in
        increasing order.
        """
        work = {k: c for k, c in vec.items() if c != 0}
        rem: dict = {}
        key = self.key
        while work:
            m = min(work, key=key)
            c = work.pop(m)
            row = self.rows.get(m)
            if row is None:
                rem[m] = c
                if stop_at_new:
                    rem.update(work)
                    return rem
                continue
            for k, x in row.items():
                if k == m:
                    continue
                nv = work.get(k, 0) - c * x
                if nv == 0:
                    work.pop(k, None)
                else:
                    work[k] = nv
        return rem

    def insert(self, vec: dict) -> bool:
        """Add ``vec`` to the span; returns False if it was dependent."""
        rem = self.reduce(vec, stop_at_new=True)
        if not rem:
            return False
        lead = min(rem, key=self.key)
        inv = _inv(rem[lead])
        self.rows[lead] = {k: c * inv for k, c in rem.items()}
        return True

    def interreduce(self) -> dict:
        """Reduced echelon basis: every non-lead entry is a non-lead key."""
        out: dict = {}
        for lead in sorted(self.rows, key=self.key, reverse=True):
            row = self.rows[lead]
            work = {k: c for k, c in row.items() if k != lead}
            res = {lead: row[lead]}
            while work:
                m = min(work, key=self.key)
                c = work.pop(m)
                r = out.get(m)
                if r is None:
                    res[m] = c
                    continue
                for k, x in r.items():
                    if k == m:
                        continue
                    nv = work.get(k, 0) - c * x
                    if nv == 0:
                        work.pop(k, None)
                    else:
                        work[k] = nv
            out[lead] = res
        self.rows = out
        return out


def rank(rows: Iterable[dict]) -> int:
    ech = Echelon(key=lambda k: k)
    r = 0
    for row in rows:
        if ech.insert(row):
            r += 1
    return r


def kernel(columns: list, order_key: Optional[Callable] = None) -> list:
    """Basis of {c : sum_j c_j columns[j] = 0} as dicts over column indices.

    Columns are dict vectors.  Elimination runs on the transposed system by
    tracking combinations of columns.
    """
    key = order_key or (lambda k: k)
    ech_rows: dict = {}
    combos: dict = {}
    basis = []
    for j, col in enumerate(columns):
        work = {k: c for k, c in col.items() if c != 0}
        combo = {j: 1}
        while work:
            m = min(work, key=key)
            if m not in ech_rows:
                break
            c = work[m]
            for k, x in ech_rows[m].items():
                nv = work.get(k, 0) - c * x
                if nv == 0:
                    work.pop(k, None)
                else:
                    work[k] = nv
            for k, x in combos[m].items():
                nv = combo.get(k, 0) - c * x
                if nv == 0:
                    combo.pop(k, None)
                else:
                    combo[k] = nv
        if not work:
            basis.append(combo)
            continue
        m = min(work, key=key)
        inv = _inv(work[m])
        ech_rows[m] = {k: c * inv for k, c in work.items()}
        combos[m] = {k: c * inv for k, c in combo.items()}
    return basis
