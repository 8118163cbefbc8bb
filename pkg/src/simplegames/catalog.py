"""Constructors and recognition for the named game families.

Families: onepartite threshold games (H, with U and A the unanimity and
anti-unanimity extremes); bipartite hierarchical games (disjunctive and
conjunctive); two tripartite families (Delta1, Delta2); and the catalog
types B1, B2, B3, T1, T2, T3 carved out of those by parameter
constraints.  ``indecomposable_only`` narrows to the refined catalog
(B1 needs a second level of at least three players; T2 is excluded).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .bitsets import mask_of
from .composition import k_out_of_n
from .core import SimpleGame
from .errors import CatalogConstraintError

FAMILIES = (
    "H", "U", "A", "HierDisj", "HierConj", "Delta1", "Delta2",
    "B1", "B2", "B3", "T1", "T2", "T3",
)


@dataclass(frozen=True)
class CatalogTag:
    """Recognized family plus its parameters."""

    family: str
    n: tuple[int, ...]
    k: tuple[int, ...]


# -- predicate expansion ------------------------------------------------------


def game_from_predicate(sizes, pred) -> SimpleGame:
    """Expand a monotone winning predicate on level-count profiles into a
    concrete game.  Level t's players follow all stronger levels' players
    in index order."""
    level_players = []
    start = 0
    for s in sizes:
        level_players.append(list(range(start, start + s)))
        start += s
    minimal = []
    for counts in itertools.product(*[range(s + 1) for s in sizes]):
        if not pred(counts):
            continue
        if any(
            counts[t] and pred(tuple(c - (i == t) for i, c in enumerate(counts)))
            for t in range(len(sizes))
        ):
            continue
        minimal.append(counts)
    masks = []
    for counts in minimal:
        choices = [
            itertools.combinations(level_players[t], counts[t])
            for t in range(len(sizes))
        ]
        for picks in itertools.product(*choices):
            masks.append(mask_of(p for pick in picks for p in pick))
    return SimpleGame(sum(sizes), tuple(sorted(masks)))


def _require(cond: bool, constraint: str):
    if not cond:
        raise CatalogConstraintError(f"requires {constraint}")


# -- onepartite ----------------------------------------------------------------


def make_k_out_of_n(n: int, k: int) -> SimpleGame:
    _require(1 <= k <= n, "1 <= k <= n")
    return k_out_of_n(n, k)


def make_unanimity(n: int) -> SimpleGame:
    return make_k_out_of_n(n, n)


def make_anti_unanimity(n: int) -> SimpleGame:
    return make_k_out_of_n(n, 1)


# -- bipartite hierarchical ------------------------------------------------------


def hier_disjunctive_pred(k):
    k1, k2 = k
    return lambda c: c[0] >= k1 or c[0] + c[1] >= k2


def hier_conjunctive_pred(k):
    k1, k2 = k
    return lambda c: c[0] >= k1 and c[0] + c[1] >= k2


def make_hier_disjunctive(n, k) -> SimpleGame:
    n1, n2 = n
    k1, k2 = k
    _require(1 <= k1 < k2, "1 <= k1 < k2")
    _require(k1 <= n1, "k1 <= n1")
    _require(k2 - k1 < n2, "k2 - k1 < n2")
    return game_from_predicate(n, hier_disjunctive_pred(k))


def make_hier_conjunctive(n, k) -> SimpleGame:
    n1, n2 = n
    k1, k2 = k
    _require(1 <= k1 <= k2, "1 <= k1 <= k2")
    _require(k1 <= n1, "k1 <= n1")
    _require(k2 - k1 < n2, "k2 - k1 < n2")
    return game_from_predicate(n, hier_conjunctive_pred(k))


# -- tripartite -------------------------------------------------------------------


def delta1_pred(k):
    k1, k2, k3 = k
    return lambda c: c[0] >= k1 or (c[0] + c[1] >= k2 and sum(c) >= k3)


def delta2_pred(k):
    k1, k2, k3 = k
    return lambda c: c[0] + c[1] >= k2 or (c[0] >= k1 and sum(c) >= k3)


def delta1_conditions(n, k) -> bool:
    n1, n2, n3 = n
    k1, k2, k3 = k
    return k1 < k3 and k2 < k3 and n1 >= k1 and n2 > k2 - k1 and n3 > k3 - k2


def delta2_conditions(n, k) -> bool:
    n1, n2, n3 = n
    k1, k2, k3 = k
    return (
        k1 < k2 < k3 and n1 + n2 >= k2 and n3 > k3 - k2 and n2 + n3 > k3 - k1
    )


def make_delta1(n, k) -> SimpleGame:
    n1, n2, n3 = n
    k1, k2, k3 = k
    _require(k1 < k3, "k1 < k3")
    _require(k2 < k3, "k2 < k3")
    _require(n1 >= k1, "n1 >= k1")
    _require(n2 > k2 - k1, "n2 > k2 - k1")
    _require(n3 > k3 - k2, "n3 > k3 - k2")
    return game_from_predicate(n, delta1_pred(k))


def make_delta2(n, k) -> SimpleGame:
    n1, n2, n3 = n
    k1, k2, k3 = k
    _require(n2 <= k2 - k1, "n2 <= k2 - k1 (defining regime)")
    _require(k1 < k2 < k3, "k1 < k2 < k3")
    _require(n1 + n2 >= k2, "n1 + n2 >= k2")
    _require(n3 > k3 - k2, "n3 > k3 - k2")
    _require(n2 + n3 > k3 - k1, "n2 + n3 > k3 - k1")
    return game_from_predicate(n, delta2_pred(k))


# -- the appendix equivalences ------------------------------------------------------


def _strict_between(sizes, pred, t) -> bool:
    """Some profile wins with one extra level-t player but not with one
    extra level-(t+1) player."""
    ranges = [range(s + 1) for s in sizes]
    for c in itertools.product(*ranges):
        if c[t] >= sizes[t] or c[t + 1] >= sizes[t + 1]:
            continue
        up_t = tuple(v + (i == t) for i, v in enumerate(c))
        up_u = tuple(v + (i == t + 1) for i, v in enumerate(c))
        if pred(up_t) and not pred(up_u):
            return True
    return False


def _level_dummy(sizes, pred, t) -> bool:
    """Level-t players never turn a losing profile into a winning one."""
    ranges = [range(s + 1) for s in sizes]
    for c in itertools.product(*ranges):
        if c[t] >= sizes[t]:
            continue
        up = tuple(v + (i == t) for i, v in enumerate(c))
        if pred(up) and not pred(c):
            return False
    return True


def _tripartite_without_dummies(sizes, pred) -> bool:
    return (
        _strict_between(sizes, pred, 0)
        and _strict_between(sizes, pred, 1)
        and not any(_level_dummy(sizes, pred, t) for t in range(3))
    )


def delta1_conditions_iff_tripartite(n, k) -> bool:
    """Whether the parameter conditions hold exactly when the raw
    predicate expands to a tripartite game without dummies."""
    return delta1_conditions(n, k) == _tripartite_without_dummies(n, delta1_pred(k))


def delta2_conditions_iff_tripartite(n, k) -> bool:
    """Same equivalence for the second tripartite family, inside its
    defining regime."""
    n1, n2, n3 = n
    k1, k2, k3 = k
    _require(n2 <= k2 - k1, "n2 <= k2 - k1 (defining regime)")
    return delta2_conditions(n, k) == _tripartite_without_dummies(n, delta2_pred(k))


# -- catalog types ----------------------------------------------------------------


def make_type(family: str, n, k, indecomposable_only: bool = False) -> SimpleGame:
    """Constructor for the catalog types B1..T3 with their defining
    constraints; ``indecomposable_only`` applies the refined constraints."""
    n = tuple(n)
    k = tuple(k)
    if family == "B1":
        n1, n2 = n
        k1, k2 = k
        _require(k1 < n1, "k1 < n1")
        _require(k2 - k1 == n2 - 1, "k2 - k1 = n2 - 1")
        if indecomposable_only:
            _require(k2 - k1 > 1, "k2 - k1 = n2 - 1 > 1")
        else:
            _require(k2 - k1 > 0, "k2 - k1 = n2 - 1 > 0")
        return make_hier_conjunctive(n, k)
    if family == "B2":
        n1, n2 = n
        k1, k2 = k
        _require(1 < k1 <= n1, "1 < k1 <= n1")
        _require(k2 <= n2, "k2 <= n2")
        _require(k2 == k1 + 1, "k2 = k1 + 1")
        return make_hier_disjunctive(n, k)
    if family == "B3":
        n1, n2 = n
        k1, k2 = k
        _require(k1 <= n1, "k1 <= n1")
        _require(k2 > n2 > 2, "k2 > n2 > 2")
        _require(k2 == k1 + 1, "k2 = k1 + 1")
        return make_hier_disjunctive(n, k)
    if family == "T1":
        n1, n2, n3 = n
        k1, k2, k3 = k
        _require(k1 > 1, "k1 > 1")
        _require(k2 < n2, "k2 < n2")
        _require(k3 == k1 + 1, "k3 = k1 + 1")
        _require(n3 == k3 - k2 + 1, "n3 = k3 - k2 + 1")
        _require(n3 > 2, "n3 > 2")
        return make_delta1(n, k)
    if family == "T2":
        if indecomposable_only:
            raise CatalogConstraintError(
                "type T2 is excluded from the indecomposable catalog"
            )
        n1, n2, n3 = n
        k1, k2, k3 = k
        _require(n3 == k3 - k2 + 1, "n3 = k3 - k2 + 1")
        _require(n3 > 2, "n3 > 2")
        _require(k3 == k1 + 1, "k3 = k1 + 1")
        _require(k2 >= n2, "k2 >= n2")
        return make_delta1(n, k)
    if family == "T3":
        n1, n2, n3 = n
        k1, k2, k3 = k
        _require(k3 - k1 == n2 + n3 - 1, "k3 - k1 = n2 + n3 - 1")
        _require(k3 == k2 + 1, "k3 = k2 + 1")
        _require(k2 - n2 > k1, "k2 - n2 > k1")
        _require(n3 > 1, "n3 > 1")
        return make_delta2(n, k)
    if family in ("H", "U", "A"):
        if family == "U":
            return make_unanimity(n[0])
        if family == "A":
            return make_anti_unanimity(n[0])
        if indecomposable_only:
            _require(
                (n[0], k[0]) in ((2, 1), (2, 2)) or 1 < k[0] < n[0],
                "onepartite head must be 2-player or have 1 < k < n",
            )
        return make_k_out_of_n(n[0], k[0])
    if family == "HierDisj":
        return make_hier_disjunctive(n, k)
    if family == "HierConj":
        return make_hier_conjunctive(n, k)
    raise CatalogConstraintError(f"unknown family {family!r}")


# -- recognition --------------------------------------------------------------------


def classify(game: SimpleGame) -> CatalogTag | None:
    """Membership in the refined indecomposable catalog: solve the
    family's parameters from the shift-minimal profiles, rebuild, and
    compare.  None when the game is in no family."""
    if not game.is_complete():
        return None
    profile = game.to_profile()
    sizes = profile.level_sizes
    sm = set(profile.shift_min)
    if len(sizes) == 1:
        (n1,) = sizes
        if len(sm) != 1:
            return None
        (k1,) = next(iter(sm))
        if (n1, k1) in ((2, 1), (2, 2)) or 1 < k1 < n1:
            return CatalogTag("H", (n1,), (k1,))
        return None
    if len(sizes) == 2:
        return _classify_bipartite(game, profile)
    if len(sizes) == 3:
        return _classify_tripartite(game, profile)
    return None


def _rebuild_matches(game, profile, family, n, k) -> CatalogTag | None:
    try:
        candidate = make_type(family, n, k, indecomposable_only=True)
    except CatalogConstraintError:
        return None
    cp = candidate.to_profile()
    if cp.level_sizes == profile.level_sizes and set(cp.shift_min) == set(
        profile.shift_min
    ):
        return CatalogTag(family, tuple(n), tuple(k))
    return None


def _classify_bipartite(game, profile) -> CatalogTag | None:
    n1, n2 = profile.level_sizes
    sm = sorted(profile.shift_min)
    if len(sm) == 1:
        a, b = sm[0]
        if b == 0 or a == 0:
            return None
        return _rebuild_matches(game, profile, "B1", (n1, n2), (a, a + b))
    if len(sm) != 2:
        return None
    (p1, p2) = sm
    # order so the level-1-only profile comes second
    if p1[1] == 0:
        p1, p2 = p2, p1
    if p2[1] != 0 or p2[0] == 0:
        return None
    k1 = p2[0]
    if p1[0] == 0:
        return _rebuild_matches(game, profile, "B2", (n1, n2), (k1, p1[1]))
    if p1[1] == n2:
        return _rebuild_matches(game, profile, "B3", (n1, n2), (k1, k1 + 1))
    return None


def _classify_tripartite(game, profile) -> CatalogTag | None:
    n1, n2, n3 = profile.level_sizes
    sm = sorted(profile.shift_min)
    if len(sm) != 2:
        return None
    p1, p2 = sm
    # T1: {k1,0,0} and {0,k2,k3-k2}
    for a, b in ((p1, p2), (p2, p1)):
        if a[1] == a[2] == 0 and b[0] == 0 and b[1] > 0 and b[2] > 0:
            k1 = a[0]
            k2 = b[1]
            k3 = k1 + 1
            if k3 - k2 == b[2]:
                tag = _rebuild_matches(game, profile, "T1", (n1, n2, n3), (k1, k2, k3))
                if tag:
                    return tag
        # T3: {k2-n2, n2, 0} and {k1, k3-k1-n3, n3}
        if a[2] == 0 and a[1] == n2 and b[2] == n3 and b[0] > 0:
            k2 = a[0] + n2
            k3 = k2 + 1
            k1 = b[0]
            if k3 - k1 - n3 == b[1]:
                tag = _rebuild_matches(game, profile, "T3", (n1, n2, n3), (k1, k2, k3))
                if tag:
                    return tag
    return None
