"""Coalition bitmasks and big-integer tables over the subset lattice.

A coalition over players 0..n-1 is a plain int bitmask.  A *table* over
the subset lattice is a single Python int with bit x set iff the property
holds for coalition x; n players give a 2**n-bit table.  The closure and
boundary operations below are whole-table integer operations, which keeps
exhaustive analysis fast at desk scale.
"""

from __future__ import annotations

from functools import lru_cache

MAX_TABLE_PLAYERS = 24  # 2**24-bit tables (~2 MB) are the practical cap


def mask_of(players) -> int:
    """Bitmask for an iterable of player indices."""
    m = 0
    for p in players:
        m |= 1 << p
    return m


def members(mask: int) -> tuple[int, ...]:
    """Sorted player indices of a coalition mask."""
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length() - 1)
        mask ^= low
    return tuple(out)


def subsets_of(mask: int):
    """All submasks of ``mask``, including empty and full (ascending size
    is not guaranteed; iteration order is the standard submask walk)."""
    sub = mask
    while True:
        yield sub
        if sub == 0:
            return
        sub = (sub - 1) & mask


@lru_cache(maxsize=None)
def _bit_set_positions(n: int, i: int) -> int:
    """Table with bit x set iff coalition x contains player i."""
    block = 1 << i
    unit = ((1 << block) - 1) << block  # 2**i zeros then 2**i ones
    period = block << 1
    full_bits = 1 << n
    table = 0
    for start in range(0, full_bits, period):
        table |= unit << start
    return table


def winning_table(n: int, min_winning) -> int:
    """Upward closure: bit x set iff x contains some coalition in
    ``min_winning``."""
    if n > MAX_TABLE_PLAYERS:
        raise ValueError(f"subset-lattice tables capped at {MAX_TABLE_PLAYERS} players")
    t = 0
    for m in min_winning:
        t |= 1 << m
    for i in range(n):
        t |= (t << (1 << i)) & _bit_set_positions(n, i)
    return t


def maximal_elements(n: int, table: int) -> int:
    """Bits x of ``table`` such that no proper superset of x is in it."""
    full = (1 << (1 << n)) - 1
    out = table
    for i in range(n):
        s_i = _bit_set_positions(n, i)
        z_i = full & ~s_i
        # position x (without i) is bad if x | {i} is also in the table
        bad = (table >> (1 << i)) & z_i & table
        out &= ~bad
    return out


def minimal_elements(n: int, table: int) -> int:
    """Bits x of ``table`` such that no proper subset of x is in it."""
    out = table
    for i in range(n):
        s_i = _bit_set_positions(n, i)
        # position x (with i) is bad if x \ {i} is also in the table
        bad = (table << (1 << i)) & s_i & table
        out &= ~bad
    return out


def iter_bits(table: int):
    """Yield the positions (coalition masks) of the set bits of a table."""
    while table:
        low = table & -table
        yield low.bit_length() - 1
        table ^= low
