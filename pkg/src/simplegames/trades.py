"""Trading transforms and certificates of nonweightedness/incompleteness.

A trading transform is a pair of equal-length coalition sequences with the
same per-player occurrence counts: the left side can be rearranged into
the right side player by player.  If all left coalitions win and all right
coalitions lose, the transform certifies that the game admits no weighted
representation; the length-2 swap form certifies incompleteness.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from itertools import combinations_with_replacement

from .bitsets import iter_bits, members
from .errors import GameError


@dataclass(frozen=True)
class TradingTransform:
    """Two equal-length multisets of coalitions (as bitmasks).  Sides are
    stored sorted so equal transforms compare equal."""

    x_side: tuple[int, ...]
    y_side: tuple[int, ...]

    def __post_init__(self):
        if len(self.x_side) != len(self.y_side):
            raise GameError("trading transform sides must have equal length")
        object.__setattr__(self, "x_side", tuple(sorted(self.x_side)))
        object.__setattr__(self, "y_side", tuple(sorted(self.y_side)))

    def __len__(self) -> int:
        return len(self.x_side)

    def player_counts(self) -> tuple[Counter, Counter]:
        cx: Counter = Counter()
        cy: Counter = Counter()
        for m in self.x_side:
            cx.update(members(m))
        for m in self.y_side:
            cy.update(members(m))
        return cx, cy


def is_trading_transform(t: TradingTransform) -> bool:
    """Per-player balance: every player occurs equally often on each side."""
    cx, cy = t.player_counts()
    return cx == cy


def is_certificate_of_nonweightedness(game, t: TradingTransform) -> bool:
    """Balanced transform with every x-coalition winning and every
    y-coalition losing in ``game``."""
    if not is_trading_transform(t):
        return False
    return all(game.is_winning(x) for x in t.x_side) and not any(
        game.is_winning(y) for y in t.y_side
    )


def _matches_swap_form(t: TradingTransform) -> bool:
    # (X u {x}, Y u {y}; X u {y}, Y u {x}) for some coalitions X, Y and
    # distinct players x not in X u Y-side pairing.  Try both pairings of
    # x-side to y-side.
    x1, x2 = t.x_side
    for a, b in ((t.y_side[0], t.y_side[1]), (t.y_side[1], t.y_side[0])):
        # want x1 = X|{x}, a = X|{y}, x2 = Y|{y}, b = Y|{x}
        dx = x1 & ~a
        dy = a & ~x1
        if dx.bit_count() != 1 or dy.bit_count() != 1:
            continue
        if (x2 & ~b) == dy and (b & ~x2) == dx:
            return True
    return False


def is_certificate_of_incompleteness(game, t: TradingTransform) -> bool:
    """Length-2 certificate of nonweightedness in the single-swap form."""
    if len(t) != 2:
        return False
    if not is_certificate_of_nonweightedness(game, t):
        return False
    return _matches_swap_form(t)


def find_swap_certificate(game) -> TradingTransform | None:
    """Brute-force search for a swap certificate: two winning coalitions
    that both become losing after exchanging one player each way.  Returns
    None iff the game is swap robust (equivalently, complete)."""
    minw = game.min_winning
    n = game.n
    # It suffices to scan *minimal* winning coalitions: if (W1, W2) swap
    # into two losing coalitions, minimal M1 <= W1, M2 <= W2 containing the
    # swapped players do as well (subsets of losing coalitions lose).
    for w1 in minw:
        for w2 in minw:
            for x in iter_bits(w1 & ~w2):
                for y in iter_bits(w2 & ~w1):
                    s1 = (w1 ^ (1 << x)) | (1 << y)
                    s2 = (w2 ^ (1 << y)) | (1 << x)
                    if not game.is_winning(s1) and not game.is_winning(s2):
                        return TradingTransform((w1, w2), (s1, s2))
    return None


def search_certificate(game, max_len: int = 4) -> TradingTransform | None:
    """Bounded search for a certificate of nonweightedness of length at
    most ``max_len``.  The x-side ranges over multisets of minimal winning
    coalitions (any certificate normalizes to that form); the y-side is
    completed by exact per-player count matching over losing coalitions
    drawn from the x-side player pool.  An empty result does not prove
    weightedness; the exact feasibility solver is the decision procedure.
    """
    if max_len < 2:
        raise GameError("max_len must be at least 2")
    minw = game.min_winning
    for j in range(2, max_len + 1):
        for xs in combinations_with_replacement(minw, j):
            counts: Counter = Counter()
            pool = 0
            for m in xs:
                pool |= m
                counts.update(members(m))
            ys = _complete_losing_side(game, pool, counts, j)
            if ys is not None:
                return TradingTransform(xs, tuple(ys))
    return None


def _complete_losing_side(game, pool: int, counts: Counter, slots: int):
    """Find ``slots`` losing coalitions within ``pool`` whose per-player
    counts equal ``counts`` exactly, or None."""
    losing = [s for s in _submasks(pool) if not game.is_winning(s)]
    losing.sort(reverse=True)
    target = dict(counts)
    total = sum(target.values())

    def feasible_player_caps(remaining: dict, slots_left: int) -> bool:
        return all(v <= slots_left for v in remaining.values())

    def rec(start: int, remaining: dict, rem_total: int, slots_left: int, acc):
        if slots_left == 0:
            return list(acc) if rem_total == 0 else None
        if rem_total > 0 and not feasible_player_caps(remaining, slots_left):
            return None
        for idx in range(start, len(losing)):
            s = losing[idx]
            ok = True
            for p in members(s):
                if remaining.get(p, 0) <= 0:
                    ok = False
                    break
            if not ok:
                continue
            size = s.bit_count()
            if size > rem_total:
                continue
            for p in members(s):
                remaining[p] -= 1
            acc.append(s)
            # coalitions may repeat: allow re-picking the same index
            res = rec(idx, remaining, rem_total - size, slots_left - 1, acc)
            acc.pop()
            for p in members(s):
                remaining[p] += 1
            if res is not None:
                return res
        return None

    return rec(0, target, total, slots, [])


def _submasks(mask: int):
    sub = mask
    while True:
        yield sub
        if sub == 0:
            return
        sub = (sub - 1) & mask
