"""Simple games: monotone coalition structures over a finite player set.

A game is stored as the antichain of its minimal winning coalitions; the
winning family is the implicit upward closure.  Players are indices
0..n-1 and coalitions are int bitmasks.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import cached_property

from . import bitsets
from .bitsets import iter_bits, mask_of, members
from .errors import DegenerateGameError, GameError, NotCompleteError

MAX_PLAYERS = 64


@dataclass(frozen=True)
class SimpleGame:
    """A simple game: ``n`` players and the antichain of minimal winning
    coalitions (nonempty, sorted).  Instances are immutable and hashable;
    all analysis operations are pure."""

    n: int
    min_winning: tuple[int, ...]

    def __post_init__(self):
        if not (1 <= self.n <= MAX_PLAYERS):
            raise GameError(f"player count must be in 1..{MAX_PLAYERS}")
        mw = tuple(sorted(set(self.min_winning)))
        if not mw:
            raise DegenerateGameError("a simple game needs a winning coalition")
        full = (1 << self.n) - 1
        for m in mw:
            if m & ~full:
                raise GameError("coalition contains out-of-range players")
        for a, b in itertools.combinations(mw, 2):
            if a & b == a or a & b == b:
                raise GameError("minimal winning coalitions must form an antichain")
        object.__setattr__(self, "min_winning", mw)

    # -- construction helpers -------------------------------------------------

    @classmethod
    def from_coalitions(cls, n: int, coalitions) -> "SimpleGame":
        """Build from an iterable of player-index iterables, reducing to
        the minimal antichain."""
        masks = [mask_of(c) for c in coalitions]
        return cls.from_winning_masks(n, masks)

    @classmethod
    def from_winning_masks(cls, n: int, masks) -> "SimpleGame":
        """Build from any generating set of winning coalitions (the
        antichain of minimal elements is extracted)."""
        masks = set(masks)
        if not masks:
            raise DegenerateGameError("a simple game needs a winning coalition")
        minimal = [m for m in masks if not any(o != m and o & m == o for o in masks)]
        return cls(n, tuple(minimal))

    # -- basic predicates ------------------------------------------------------

    def is_winning(self, x: int) -> bool:
        """Upward-closure membership by antichain scan."""
        if x & ~self.full_mask:
            raise GameError("coalition contains out-of-range players")
        return any(m & x == m for m in self.min_winning)

    def is_losing(self, x: int) -> bool:
        return not self.is_winning(x)

    @property
    def full_mask(self) -> int:
        return (1 << self.n) - 1

    @cached_property
    def winning_table(self) -> int:
        """Big-integer table of the full winning family (bit x set iff
        coalition x wins).  Used by exhaustive internal routines; agrees
        with :meth:`is_winning` everywhere."""
        return bitsets.winning_table(self.n, self.min_winning)

    def wins(self, x: int) -> bool:
        """Table-backed winning test (same predicate as is_winning)."""
        return (self.winning_table >> x) & 1 == 1

    @cached_property
    def maximal_losing(self) -> tuple[int, ...]:
        """Antichain of losing coalitions maximal under inclusion."""
        full_bits = (1 << (1 << self.n)) - 1
        losing = full_bits & ~self.winning_table
        return tuple(iter_bits(bitsets.maximal_elements(self.n, losing)))

    # -- special players -------------------------------------------------------

    def dummies(self) -> int:
        """Players in no minimal winning coalition (as a mask)."""
        used = 0
        for m in self.min_winning:
            used |= m
        return self.full_mask & ~used

    def vetoers(self) -> int:
        """Players in every minimal winning coalition (as a mask)."""
        v = self.full_mask
        for m in self.min_winning:
            v &= m
        return v

    def passers(self) -> int:
        """Players whose singleton coalition wins (as a mask)."""
        p = 0
        for m in self.min_winning:
            if m.bit_count() == 1:
                p |= m
        return p

    # -- subgame / reduced game -------------------------------------------------

    def subgame(self, a: int) -> tuple["SimpleGame", tuple[int, ...]]:
        """Game on the complement of ``a`` whose winning coalitions are the
        original winning coalitions avoiding ``a``.  Returns the re-indexed
        game and the map new index -> old index.  Raises
        DegenerateGameError if nothing wins without ``a``."""
        return self._restrict(a, require_all=False)

    def reduced_game(self, a: int) -> tuple["SimpleGame", tuple[int, ...]]:
        """Game on the complement of ``a`` where X wins iff X together with
        all of ``a`` wins in the original game."""
        return self._restrict(a, require_all=True)

    def _restrict(self, a: int, require_all: bool) -> tuple["SimpleGame", tuple[int, ...]]:
        if a & ~self.full_mask:
            raise GameError("coalition contains out-of-range players")
        keep = members(self.full_mask & ~a)
        if not keep:
            raise DegenerateGameError("no players remain")
        index_of = {old: new for new, old in enumerate(keep)}
        masks = []
        for m in self.min_winning:
            if require_all:
                masks.append(sum(1 << index_of[p] for p in members(m & ~a)))
            elif m & a == 0:
                masks.append(sum(1 << index_of[p] for p in members(m)))
        if not masks:
            raise DegenerateGameError("restriction has no winning coalitions")
        return SimpleGame.from_winning_masks(len(keep), masks), keep

    # -- desirability -----------------------------------------------------------

    @cached_property
    def desirability(self) -> "DesirabilityRelation":
        """The at-least-as-desirable relation: i >= j iff j can always be
        replaced by i in a winning coalition.  Checked over minimal winning
        coalitions containing j but not i, which is equivalent to scanning
        all coalitions avoiding both."""
        n = self.n
        by_player: list[list[int]] = [[] for _ in range(n)]
        for m in self.min_winning:
            for p in members(m):
                by_player[p].append(m)
        table = self.winning_table
        geq = [[True] * n for _ in range(n)]
        for j in range(n):
            bj = 1 << j
            for i in range(n):
                if i == j:
                    continue
                bi = 1 << i
                ok = True
                for m in by_player[j]:
                    if m & bi:
                        continue
                    if not (table >> ((m ^ bj) | bi)) & 1:
                        ok = False
                        break
                geq[i][j] = ok
        return DesirabilityRelation(tuple(tuple(row) for row in geq))

    def is_complete(self) -> bool:
        """True iff the desirability relation is total."""
        return self.desirability.is_total()

    def strictly_more_desirable(self, i: int, j: int) -> int | None:
        """When i is strictly more desirable than j, a witnessing minimal
        winning coalition containing i but not j that turns losing when i
        is swapped for j; otherwise None."""
        if i == j:
            raise GameError("players must be distinct")
        d = self.desirability
        if not (d.geq(i, j) and not d.geq(j, i)):
            return None
        bi, bj = 1 << i, 1 << j
        for m in self.min_winning:
            if m & bi and not m & bj and not self.wins((m ^ bi) | bj):
                return m
        return None  # unreachable for a strict pair

    # -- profiles ----------------------------------------------------------------

    def desirability_classes(self) -> list[tuple[int, ...]]:
        """Equivalence classes of mutual desirability, ordered by strict
        desirability (strongest first) when the game is complete, and by
        smallest member otherwise."""
        d = self.desirability
        seen = [False] * self.n
        classes = []
        for i in range(self.n):
            if seen[i]:
                continue
            cls = [j for j in range(self.n) if d.geq(i, j) and d.geq(j, i)]
            for j in cls:
                seen[j] = True
            classes.append(tuple(cls))
        if self.is_complete():
            classes.sort(key=lambda c: sum(1 for o in classes for j in o
                                           if not d.geq(c[0], j)))
        return classes

    def to_profile(self) -> "CompleteProfile":
        """Multiset form of a complete game: level sizes in decreasing
        desirability plus the shift-minimal winning profiles."""
        if not self.is_complete():
            from .trades import find_swap_certificate

            raise NotCompleteError(find_swap_certificate(self))
        classes = self.desirability_classes()
        level_of = {}
        for lvl, cls in enumerate(classes):
            for p in cls:
                level_of[p] = lvl
        sizes = tuple(len(c) for c in classes)
        profiles = set()
        for m in self._shift_minimal_coalitions(classes, level_of):
            counts = [0] * len(classes)
            for p in members(m):
                counts[level_of[p]] += 1
            profiles.add(tuple(counts))
        return CompleteProfile(sizes, tuple(sorted(profiles)))

    def _shift_minimal_coalitions(self, classes, level_of):
        """Minimal winning coalitions all of whose single shifts (replace a
        member by a strictly less desirable outsider) lose."""
        out = []
        for m in self.min_winning:
            good = True
            for p in members(m):
                lp = level_of[p]
                for q in range(self.n):
                    bq = 1 << q
                    if m & bq or level_of[q] <= lp:
                        continue
                    if self.wins((m ^ (1 << p)) | bq):
                        good = False
                        break
                if not good:
                    break
            if good:
                out.append(m)
        return out

    # -- identity ------------------------------------------------------------------

    def relabel(self, perm) -> "SimpleGame":
        """Game with player i renamed perm[i]."""
        masks = [sum(1 << perm[p] for p in members(m)) for m in self.min_winning]
        return SimpleGame(self.n, tuple(masks))

    def canonical_key(self) -> str:
        return f"{self.n}:" + ",".join(map(str, self.min_winning))


@dataclass(frozen=True)
class DesirabilityRelation:
    """Boolean matrix of the desirability preorder (reflexive, transitive)."""

    matrix: tuple[tuple[bool, ...], ...]

    def geq(self, i: int, j: int) -> bool:
        return self.matrix[i][j]

    def strictly(self, i: int, j: int) -> bool:
        return self.matrix[i][j] and not self.matrix[j][i]

    def equivalent(self, i: int, j: int) -> bool:
        return self.matrix[i][j] and self.matrix[j][i]

    def is_total(self) -> bool:
        n = len(self.matrix)
        return all(self.matrix[i][j] or self.matrix[j][i]
                   for i in range(n) for j in range(i + 1, n))


@dataclass(frozen=True)
class CompleteProfile:
    """Multiset form of a complete game: level sizes (strongest level
    first) and the set of shift-minimal winning profiles."""

    level_sizes: tuple[int, ...]
    shift_min: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        if any(s <= 0 for s in self.level_sizes):
            raise GameError("level sizes must be positive")
        m = len(self.level_sizes)
        for prof in self.shift_min:
            if len(prof) != m:
                raise GameError("profile arity differs from level count")
            if any(c < 0 or c > s for c, s in zip(prof, self.level_sizes)):
                raise GameError("profile exceeds level capacity")
        for a in self.shift_min:
            for b in self.shift_min:
                if a != b and _prefix_dominates(a, b):
                    raise GameError("shift-minimal profiles must be incomparable")

    @property
    def n(self) -> int:
        return sum(self.level_sizes)

    def is_winning_profile(self, counts) -> bool:
        return any(_prefix_dominates(counts, p) for p in self.shift_min)


def _prefix_dominates(c, ref) -> bool:
    """True iff profile c is reachable from ref by adding players and by
    promoting members to stronger levels: every prefix sum of c is at
    least that of ref."""
    total_c = 0
    total_r = 0
    for a, b in zip(c, ref):
        total_c += a
        total_r += b
        if total_c < total_r:
            return False
    return True


def shift_minimal_profiles(profile: CompleteProfile) -> list[tuple[int, ...]]:
    """All winning profiles that lose under any single-player removal and
    under any single demotion to a weaker level."""
    m = len(profile.level_sizes)
    ranges = [range(s + 1) for s in profile.level_sizes]
    out = []
    for counts in itertools.product(*ranges):
        if not profile.is_winning_profile(counts):
            continue
        ok = True
        for t in range(m):
            if counts[t] == 0:
                continue
            removed = list(counts)
            removed[t] -= 1
            if profile.is_winning_profile(tuple(removed)):
                ok = False
                break
            for u in range(t + 1, m):
                if counts[u] >= profile.level_sizes[u]:
                    continue
                shifted = list(counts)
                shifted[t] -= 1
                shifted[u] += 1
                if profile.is_winning_profile(tuple(shifted)):
                    ok = False
                    break
            if not ok:
                break
        if ok:
            out.append(counts)
    return out


def from_profile(profile: CompleteProfile) -> SimpleGame:
    """Expand a multiset form into a concrete game: level t's players come
    after all stronger levels' players, in index order."""
    sizes = profile.level_sizes
    n = sum(sizes)
    level_players = []
    start = 0
    for s in sizes:
        level_players.append(list(range(start, start + s)))
        start += s
    minimal = _minimal_winning_profiles(profile)
    masks = []
    for counts in minimal:
        choices = [itertools.combinations(level_players[t], counts[t])
                   for t in range(len(sizes))]
        for picks in itertools.product(*choices):
            masks.append(mask_of(p for pick in picks for p in pick))
    return SimpleGame(n, tuple(sorted(set(masks))))


def _minimal_winning_profiles(profile: CompleteProfile) -> list[tuple[int, ...]]:
    ranges = [range(s + 1) for s in profile.level_sizes]
    out = []
    for counts in itertools.product(*ranges):
        if not profile.is_winning_profile(counts):
            continue
        minimal = True
        for t in range(len(counts)):
            if counts[t]:
                removed = list(counts)
                removed[t] -= 1
                if profile.is_winning_profile(tuple(removed)):
                    minimal = False
                    break
        if minimal:
            out.append(counts)
    return out


def expand_profile_coalition(profile_counts, level_players) -> int:
    """First players of each level, in order (used for deterministic
    single-coalition expansions)."""
    m = 0
    for t, c in enumerate(profile_counts):
        for p in level_players[t][:c]:
            m |= 1 << p
    return m


# -- isomorphism -------------------------------------------------------------------


def isomorphic(g1: SimpleGame, g2: SimpleGame) -> tuple[int, ...] | None:
    """A player bijection carrying g1's winning family onto g2's, or None.

    The search maps desirability-equivalence classes onto compatible ones
    (isomorphisms preserve desirability) and backtracks inside classes.
    """
    if g1.n != g2.n or len(g1.min_winning) != len(g2.min_winning):
        return None
    if sorted(m.bit_count() for m in g1.min_winning) != sorted(
        m.bit_count() for m in g2.min_winning
    ):
        return None

    def signature(g: SimpleGame, p: int):
        sizes = sorted(m.bit_count() for m in g.min_winning if m & (1 << p))
        d = g.desirability
        above = sum(1 for q in range(g.n) if d.strictly(q, p))
        below = sum(1 for q in range(g.n) if d.strictly(p, q))
        return (tuple(sizes), above, below)

    sig1 = [signature(g1, p) for p in range(g1.n)]
    sig2 = [signature(g2, p) for p in range(g2.n)]
    if sorted(sig1) != sorted(sig2):
        return None

    candidates = [[q for q in range(g2.n) if sig2[q] == sig1[p]]
                  for p in range(g1.n)]
    order = sorted(range(g1.n), key=lambda p: len(candidates[p]))
    target = set(g2.min_winning)
    perm: list[int] = [-1] * g1.n
    used = [False] * g2.n

    def consistent() -> bool:
        placed = [p for p in range(g1.n) if perm[p] >= 0]
        placed_mask = mask_of(placed)
        for m in g1.min_winning:
            if m & placed_mask == m:
                image = sum(1 << perm[p] for p in members(m))
                if image not in target:
                    return False
        return True

    def rec(k: int) -> bool:
        if k == g1.n:
            return True
        p = order[k]
        for q in candidates[p]:
            if used[q]:
                continue
            perm[p] = q
            used[q] = True
            if consistent() and rec(k + 1):
                return True
            perm[p] = -1
            used[q] = False
        return False

    if rec(0):
        return tuple(perm)
    return None
