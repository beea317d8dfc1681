"""Exact Stirling/Bell arithmetic and the generating-exponent tables.

All counts are Python integers.  Rows of the Stirling triangle are cached;
the cache only ever stores finished rows, so concurrent readers see either a
complete row or a miss.
"""

import decimal
from functools import lru_cache

from .errors import InvalidArgument


_ROWS = {0: (1,)}
_ROW_CACHE_LIMIT = 4096


def stirling_row(n):
    """``(S(n, 0), ..., S(n, n))`` via ``S(n,r) = r S(n-1,r) + S(n-1,r-1)``."""
    if n < 0:
        raise InvalidArgument("n must be nonnegative")
    row = _ROWS.get(n)
    if row is not None:
        return row
    start = max(m for m in _ROWS if m < n)
    row = _ROWS[start]
    for m in range(start + 1, n + 1):
        row = _next_row(row)
        if m <= 128 or m == n:
            if len(_ROWS) < _ROW_CACHE_LIMIT:
                _ROWS[m] = row
    return row


def _next_row(prev):
    m = len(prev)
    row = [0] * (m + 1)
    for r in range(1, m + 1):
        row[r] = (r * prev[r] if r < m else 0) + prev[r - 1]
    return tuple(row)


def stirling2(n, r):
    if n < 0 or r < 0:
        raise InvalidArgument("stirling2 needs n, r >= 0")
    if r > n:
        return 0
    return stirling_row(n)[r]


def bell(n):
    if n < 0:
        raise InvalidArgument("bell needs n >= 0")
    return sum(stirling_row(n))


@lru_cache(maxsize=None)
def max_stirling(n):
    """``(maxS(n), [all r with S(n, r) = maxS(n)])``."""
    if n < 1:
        raise InvalidArgument("max_stirling needs n >= 1")
    row = stirling_row(n)
    best = max(row)
    return best, [r for r, v in enumerate(row) if v == best]


def best_block_count(n):
    """Smallest ``r`` maximizing ``S(n, r)``."""
    return max_stirling(n)[1][0]


def _k(n):
    return (n - 1) // 2


def m_of_n(n):
    """Exponent of the four-generated power: ``maxS(k) * maxS(k-1)``."""
    if n < 5:
        raise InvalidArgument(f"m(n) needs n >= 5, got {n}")
    k = _k(n)
    return max_stirling(k)[0] * max_stirling(k - 1)[0]


def mhat_r(n):
    """Size of each antichain carrier set in the (1+1+2) construction."""
    return (_k(n) - 1) // 2


def mhat_of_n(n):
    """Exponent of the (1+1+2)-generated power: ``max(r, maxS(r)^2)``."""
    if n < 7:
        raise InvalidArgument(f"m-hat(n) needs n >= 7, got {n}")
    r = mhat_r(n)
    return max(r, max_stirling(r)[0] ** 2)


def bell_product_bound(n):
    """Exponents above ``B(n)B(n-1)B(n-2)B(n-3)`` are not four-generated."""
    if n < 4:
        raise InvalidArgument(f"the bound needs n >= 4, got {n}")
    return bell(n) * bell(n - 1) * bell(n - 2) * bell(n - 3)


def decimal_length(value):
    """Number of decimal digits of a nonnegative integer (no str() limit)."""
    if value < 10:
        return 1
    d = int(value.bit_length() * 0.30102999566398120)
    while 10 ** d <= value:
        d += 1
    while d > 1 and 10 ** (d - 1) > value:
        d -= 1
    return d


def sci(value, digits=3):
    """Round-half-up scientific notation, e.g. ``'3.09e89'``."""
    length = decimal_length(value)
    if length <= digits:
        return str(value)
    exp = length - 1
    scale = 10 ** (length - digits)
    q, rem = divmod(value, scale)
    if 2 * rem >= scale:
        q += 1
    if q == 10 ** digits:
        q //= 10
        exp += 1
    qs = str(q)
    return f"{qs[0]}.{qs[1:]}e{exp}"


TABLE7_COLUMNS = (97, 98, 99, 100, 2020)


def table_rows(max_n, extra=TABLE7_COLUMNS):
    """Rows ``(n, maxS, m or None, m-hat or None)`` for ``1..max_n`` plus ``extra``."""
    if max_n < 5:
        raise InvalidArgument("max_n must be at least 5")
    ns = list(range(1, max_n + 1)) + [n for n in extra if n > max_n]
    rows = []
    for n in ns:
        rows.append((
            n,
            max_stirling(n)[0],
            m_of_n(n) if n >= 5 else None,
            mhat_of_n(n) if n >= 7 else None,
        ))
    return rows


EXACT_LIMIT = 10 ** 11


def _fmt(v, exact):
    if v is None:
        return ""
    if exact or v < EXACT_LIMIT:
        return exact_str(v)
    return sci(v)


def exact_str(value):
    """Decimal digits of ``value``; unlike ``str`` this has no length cap."""
    return format(decimal.Decimal(value), "f")


def render_tables(max_n, fmt="text", extra=TABLE7_COLUMNS):
    """Text or CSV document with columns ``n, maxS, m, mhat``.

    In text mode values of at least 10^11 are printed to three significant
    digits, the customary rounding for such tables; CSV is always exact.
    """
    rows = table_rows(max_n, extra)
    if fmt == "csv":
        lines = ["n,maxS,m,mhat"]
        lines += [",".join(_fmt(v, True) if i else str(v) for i, v in enumerate(r)) for r in rows]
        return "\n".join(lines) + "\n"
    if fmt != "text":
        raise InvalidArgument(f"unknown format {fmt!r}")
    cells = [("n", "maxS(n)", "m(n)", "mhat(n)")]
    cells += [(str(r[0]),) + tuple(_fmt(v, False) for v in r[1:]) for r in rows]
    widths = [max(len(c[i]) for c in cells) for i in range(4)]
    out = []
    for c in cells:
        out.append("  ".join(c[i].rjust(widths[i]) for i in range(4)).rstrip())
    return "\n".join(out) + "\n"
