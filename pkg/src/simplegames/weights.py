"""Exact weightedness decisions, weighted representations, and extraction
of nonweightedness certificates from infeasibility multipliers.

The feasibility system has one weight per player (nonnegative) and a free
quota: minimal winning coalitions weigh at least the quota, maximal losing
coalitions at most quota - 1 (any strict separation rescales to a unit
gap).  Players of equal desirability are interchangeable, so the system
is collapsed to one weight per equivalence class (a feasible point can
always be symmetrized by orbit averaging); this keeps the solver small
even for composed games.  The solver runs on the dual orientation, whose
optimum is zero exactly when the system is feasible; a positive optimum
hands back Farkas multipliers that convert into a trading transform.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .bitsets import members
from .core import SimpleGame
from .errors import GameError
from .lp import simplex_max
from .trades import TradingTransform, is_certificate_of_nonweightedness


@dataclass(frozen=True)
class WeightedRepresentation:
    """Quota plus one nonnegative rational weight per player, with an
    integer-scaled form."""

    quota: Fraction
    weights: tuple[Fraction, ...]

    @property
    def integer_form(self) -> tuple[int, tuple[int, ...]]:
        denoms = [self.quota.denominator] + [w.denominator for w in self.weights]
        scale = math.lcm(*denoms)
        return (
            int(self.quota * scale),
            tuple(int(w * scale) for w in self.weights),
        )


@dataclass(frozen=True)
class _LPOutcome:
    feasible: bool
    class_weights: tuple[Fraction, ...] | None
    quota: Fraction | None
    # Farkas multipliers as (profile, multiplier) lists when infeasible
    win_multipliers: tuple | None
    lose_multipliers: tuple | None
    classes: tuple[tuple[int, ...], ...]


def _class_profile(mask: int, class_of: dict) -> tuple[int, ...]:
    counts = [0] * (max(class_of.values()) + 1)
    for p in members(mask):
        counts[class_of[p]] += 1
    return tuple(counts)


@lru_cache(maxsize=4096)
def _solve(game: SimpleGame) -> _LPOutcome:
    classes = tuple(tuple(c) for c in game.desirability_classes())
    class_of = {p: idx for idx, cls in enumerate(classes) for p in cls}
    ncls = len(classes)

    win_profiles = sorted({_class_profile(m, class_of) for m in game.min_winning})
    lose_profiles = sorted({_class_profile(m, class_of) for m in game.maximal_losing})

    nwin = len(win_profiles)
    cols = win_profiles + lose_profiles
    ncols = len(cols)

    # rows: per-class balance, quota balance both ways, normalization
    A = []
    b = []
    for c in range(ncls):
        A.append([cols[j][c] if j < nwin else -cols[j][c] for j in range(ncols)])
        b.append(Fraction(0))
    A.append([1 if j < nwin else -1 for j in range(ncols)])
    b.append(Fraction(0))
    A.append([-1 if j < nwin else 1 for j in range(ncols)])
    b.append(Fraction(0))
    A.append([1] * ncols)
    b.append(Fraction(1))
    c_obj = [Fraction(0)] * nwin + [Fraction(1)] * (ncols - nwin)

    res = simplex_max(c_obj, A, b)
    if res.value > 0:
        wmul = tuple((win_profiles[j], res.x[j]) for j in range(nwin) if res.x[j] > 0)
        lmul = tuple(
            (lose_profiles[j - nwin], res.x[j])
            for j in range(nwin, ncols)
            if res.x[j] > 0
        )
        return _LPOutcome(False, None, None, wmul, lmul, classes)

    u = res.duals[:ncls]
    alpha = res.duals[ncls]
    beta = res.duals[ncls + 1]
    quota = beta - alpha
    return _LPOutcome(True, tuple(u), quota, None, None, classes)


def synthesize_weights(game: SimpleGame) -> WeightedRepresentation | None:
    """An exact weighted representation, or None when none exists."""
    out = _solve(game)
    if not out.feasible:
        return None
    weights = [Fraction(0)] * game.n
    for idx, cls in enumerate(out.classes):
        for p in cls:
            weights[p] = out.class_weights[idx]
    rep = WeightedRepresentation(out.quota, tuple(weights))
    if not verify_representation(game, rep):
        raise RuntimeError("solver produced a representation that fails verification")
    return rep


def verify_representation(game: SimpleGame, rep: WeightedRepresentation) -> bool:
    """Check the threshold biconditional: minimal winning coalitions reach
    the quota, maximal losing coalitions fall strictly below it."""
    if len(rep.weights) != game.n:
        raise GameError("representation dimension differs from player count")
    if any(w < 0 for w in rep.weights):
        return False
    for m in game.min_winning:
        if sum(rep.weights[p] for p in members(m)) < rep.quota:
            return False
    for m in game.maximal_losing:
        if sum(rep.weights[p] for p in members(m)) >= rep.quota:
            return False
    return True


def is_weighted(game: SimpleGame) -> bool:
    return _solve(game).feasible


def farkas_certificate(game: SimpleGame) -> TradingTransform:
    """Convert infeasibility multipliers into a certificate of
    nonweightedness: integer multiplicities of winning/losing class
    profiles, trimmed to exact per-class balance (removing players from
    losing coalitions keeps them losing), padded with empty coalitions if
    the sides differ in length, then expanded to concrete players."""
    out = _solve(game)
    if out.feasible:
        raise GameError("game is weighted; no certificate exists")

    scale = math.lcm(
        *[f.denominator for _, f in out.win_multipliers],
        *[f.denominator for _, f in out.lose_multipliers],
    )
    x_profiles: list[list[int]] = []
    for prof, f in out.win_multipliers:
        x_profiles.extend([list(prof)] * int(f * scale))
    y_profiles: list[list[int]] = []
    for prof, f in out.lose_multipliers:
        y_profiles.extend([list(prof)] * int(f * scale))

    ncls = len(out.classes)
    for c in range(ncls):
        surplus = sum(p[c] for p in y_profiles) - sum(p[c] for p in x_profiles)
        assert surplus >= 0, "Farkas multipliers violate per-class domination"
        for prof in y_profiles:
            while surplus > 0 and prof[c] > 0:
                prof[c] -= 1
                surplus -= 1
    while len(x_profiles) > len(y_profiles):
        y_profiles.append([0] * ncls)
    while len(y_profiles) > len(x_profiles):
        # drop now-empty padding only; sides should already be balanced
        if [0] * ncls in y_profiles:
            y_profiles.remove([0] * ncls)
        else:  # pragma: no cover - guarded by the LP's balance rows
            raise AssertionError("multiplier sides cannot be balanced")

    x_masks = _expand_side(out.classes, x_profiles)
    y_masks = _expand_side(out.classes, y_profiles)
    cert = TradingTransform(tuple(x_masks), tuple(y_masks))
    if not is_certificate_of_nonweightedness(game, cert):
        raise RuntimeError("extracted transform failed certificate validation")
    return cert


def _expand_side(classes, profiles) -> list[int]:
    """Expand class-count profiles to concrete coalitions by walking each
    class's players circularly.  Both sides of a balanced profile family
    consume the same number of stream positions per class, so per-player
    counts match exactly."""
    pos = [0] * len(classes)
    masks = []
    for prof in profiles:
        m = 0
        for c, want in enumerate(prof):
            players = classes[c]
            size = len(players)
            if want > size:
                raise GameError("profile demand exceeds class size")
            for k in range(want):
                m |= 1 << players[(pos[c] + k) % size]
            pos[c] += want
        masks.append(m)
    return masks


def expand_profile_sides(classes, x_profiles, y_profiles):
    """Concrete coalitions for a per-class-balanced pair of profile lists
    (shared circular walk per class, so per-player counts balance)."""
    return (
        _expand_side(classes, [list(p) for p in x_profiles]),
        _expand_side(classes, [list(p) for p in y_profiles]),
    )
