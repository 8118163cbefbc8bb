"""Composition of games: substitute a whole game for one player.

In the composite, a coalition wins iff its outer part wins outright, or
the outer part wins once the pivot is added and the inner part wins the
inner game.  Minimal winning coalitions are the pivot-free outer ones
plus every (outer-minus-pivot) u (inner minimal) pair.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache

from .bitsets import mask_of, members
from .core import SimpleGame
from .errors import DegenerateGameError, GameError


@dataclass(frozen=True)
class CompositionSpec:
    """Outer game, pivot player of the outer game, inner game, and the
    embedding of outer-non-pivot players and inner players into the
    composite index space (defaults: outer players first, then inner)."""

    outer: SimpleGame
    pivot: int
    inner: SimpleGame
    outer_map: tuple[int, ...] | None = None
    inner_map: tuple[int, ...] | None = None

    def __post_init__(self):
        if not 0 <= self.pivot < self.outer.n:
            raise GameError("pivot outside outer game")
        n = self.composite_players
        om, im = self.maps()
        if sorted(om + im) != list(range(n)):
            raise GameError("player maps must partition the composite index space")

    @property
    def composite_players(self) -> int:
        return self.outer.n + self.inner.n - 1

    def maps(self) -> tuple[tuple[int, ...], tuple[int, ...]]:
        om = self.outer_map
        im = self.inner_map
        if om is None:
            om = tuple(i for i in range(self.outer.n - 1))
        if im is None:
            im = tuple(self.outer.n - 1 + i for i in range(self.inner.n))
        return tuple(om), tuple(im)


def compose(spec: CompositionSpec) -> SimpleGame:
    """The composite game on ``spec.composite_players`` players."""
    om, im = spec.maps()
    outer, inner, pivot = spec.outer, spec.inner, spec.pivot
    pbit = 1 << pivot
    outer_positions = [p for p in range(outer.n) if p != pivot]
    to_composite = {p: om[i] for i, p in enumerate(outer_positions)}

    def map_outer(mask: int) -> int:
        return mask_of(to_composite[p] for p in members(mask))

    def map_inner(mask: int) -> int:
        return mask_of(im[p] for p in members(mask))

    masks = []
    for m in outer.min_winning:
        if m & pbit:
            x = map_outer(m ^ pbit)
            for y in inner.min_winning:
                masks.append(x | map_inner(y))
        else:
            masks.append(map_outer(m))
    return SimpleGame.from_winning_masks(spec.composite_players, masks)


def compose_wins_directly(spec: CompositionSpec, x: int) -> bool:
    """Membership test straight from the definition of composition (used
    to cross-check the minimal-winning formula)."""
    om, im = spec.maps()
    outer, inner, pivot = spec.outer, spec.inner, spec.pivot
    outer_positions = [p for p in range(outer.n) if p != pivot]
    back_outer = {om[i]: p for i, p in enumerate(outer_positions)}
    back_inner = {c: p for p, c in enumerate(im)}
    xg = mask_of(back_outer[p] for p in members(x) if p in back_outer)
    xh = mask_of(back_inner[p] for p in members(x) if p in back_inner)
    if outer.wins(xg):
        return True
    return outer.wins(xg | (1 << pivot)) and inner.wins(xh)


def g_winning(game: SimpleGame, g: int, x: int) -> bool:
    """True iff ``x`` wins once player ``g`` joins; ``x`` must not already
    contain ``g``."""
    if x & (1 << g):
        raise GameError("coalition already contains the player")
    return game.wins(x | (1 << g))


def decomposition_for_support(game: SimpleGame, b_mask: int) -> CompositionSpec | None:
    """The unique decomposition whose inner game sits on ``b_mask``, if one
    exists.  Minimal winning coalitions crossing the support must factor as
    a full product of outer parts and inner parts; the reconstruction is
    then verified against the original game."""
    n = game.n
    size = b_mask.bit_count()
    if size < 2 or size > n - 1:
        return None
    xs: set[int] = set()
    ys: set[int] = set()
    pairs: set[tuple[int, int]] = set()
    outer_only: list[int] = []
    for m in game.min_winning:
        yb = m & b_mask
        if yb == 0:
            outer_only.append(m)
        else:
            x = m & ~b_mask
            xs.add(x)
            ys.add(yb)
            pairs.add((x, yb))
    if not pairs or len(pairs) != len(xs) * len(ys):
        return None

    inner_players = members(b_mask)
    outer_players = members(game.full_mask & ~b_mask)
    inner_index = {p: i for i, p in enumerate(inner_players)}
    outer_index = {p: i for i, p in enumerate(outer_players)}
    pivot = len(outer_players)

    inner_masks = [mask_of(inner_index[p] for p in members(y)) for y in ys]
    outer_masks = [mask_of(outer_index[p] for p in members(m)) for m in outer_only]
    outer_masks += [
        mask_of(outer_index[p] for p in members(x)) | (1 << pivot) for x in xs
    ]
    try:
        inner = SimpleGame(len(inner_players), tuple(inner_masks))
        outer = SimpleGame(len(outer_players) + 1, tuple(outer_masks))
        spec = CompositionSpec(
            outer, pivot, inner, outer_map=outer_players, inner_map=inner_players
        )
    except GameError:
        return None
    if compose(spec) != game:
        return None
    return spec


def find_decompositions(game: SimpleGame, first_only: bool = False):
    """All decompositions of the game, one per viable inner support."""
    out = []
    full = game.full_mask
    for b in range(1, full):
        spec = decomposition_for_support(game, b)
        if spec is not None:
            out.append(spec)
            if first_only:
                break
    return out


def is_indecomposable(game: SimpleGame) -> bool:
    return not find_decompositions(game, first_only=True)


@lru_cache(maxsize=None)
def k_out_of_n(n: int, k: int) -> SimpleGame:
    """The game on n players won by any k of them."""
    if not 1 <= k <= n:
        raise GameError("threshold must be between 1 and the player count")
    return SimpleGame(
        n, tuple(mask_of(c) for c in itertools.combinations(range(n), k))
    )


def strip_vetoers(game: SimpleGame) -> tuple[int, SimpleGame, tuple[int, ...]] | None:
    """Peel all vetoers: the game is a unanimity head over the reduced
    game on the remaining players.  Returns (vetoer count, residual,
    residual player map); None when there are no vetoers.  Raises
    DegenerateGameError when no players remain (the game is unanimity)."""
    v = game.vetoers()
    m = v.bit_count()
    if m == 0:
        return None
    residual, keep = game.reduced_game(v)
    _verify_head_strip(game, k_out_of_n(m + 1, m + 1), v, residual, keep)
    return m, residual, keep


def strip_passers(game: SimpleGame) -> tuple[int, SimpleGame, tuple[int, ...]] | None:
    """Peel all passers: the game is an anti-unanimity head over the
    subgame on the remaining players."""
    p = game.passers()
    m = p.bit_count()
    if m == 0:
        return None
    residual, keep = game.subgame(p)
    _verify_head_strip(game, k_out_of_n(m + 1, 1), p, residual, keep)
    return m, residual, keep


def _verify_head_strip(game, head, stripped_mask, residual, keep):
    stripped = members(stripped_mask)
    spec = CompositionSpec(
        head, head.n - 1, residual, outer_map=stripped, inner_map=keep
    )
    if compose(spec) != game:  # pragma: no cover - structural identity
        raise GameError("head strip failed to reproduce the game")
