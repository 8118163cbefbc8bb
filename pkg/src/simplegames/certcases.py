"""Prebuilt trading-transform constructions for compositions of catalog
games, and the lifting lemma that turns an outer-game seed transform plus
a split inner minimal winning coalition into a certificate for the
composite.

Each case generates a transform for a specific family, pivot level, and
inner-game shape, and is validated against the composite by the generic
certificate predicates.  Where a displayed construction cannot be
realized (its coalitions would need more players of the pivot's level
than remain after composition), the generator either uses a corrected
expansion with the same shape or falls back to the infeasibility
extraction; the fallback raises when the composite turns out weighted.
"""

from __future__ import annotations

from dataclasses import dataclass

from .bitsets import iter_bits, mask_of, members
from .catalog import make_anti_unanimity, make_type, make_unanimity
from .composition import CompositionSpec, compose
from .core import SimpleGame
from .errors import GameError, InapplicableCaseError
from .trades import (
    TradingTransform,
    is_certificate_of_incompleteness,
    is_certificate_of_nonweightedness,
)
from .weights import farkas_certificate, is_weighted

CASE_IDS = (
    "B1_inner2", "B2_inner2", "B3_inner2", "T1_inner2", "T3_inner2",
    "B1_An", "B3_An", "T1_An", "T3_An",
    "not_complete",
    "X1X2_B1", "X1X2_B2", "X1X2_B3", "X1X2_T1",
    "X1X2_T1_level2", "X1X2_T3", "X1X2_T3_level2",
    "Un_B1", "Un_B2", "Un_B3",
    "Un_T1_level1", "Un_T1_level2", "Un_T3_level1", "Un_T3_level2",
)


@dataclass(frozen=True)
class CaseCertificate:
    """A composite game, how it was composed, the generated transform, and
    which property the transform refutes."""

    composite: SimpleGame
    spec: CompositionSpec
    transform: TradingTransform
    kind: str  # "nonweightedness" or "incompleteness"

    def validates(self) -> bool:
        if self.kind == "nonweightedness":
            return is_certificate_of_nonweightedness(self.composite, self.transform)
        return is_certificate_of_incompleteness(self.composite, self.transform)


# -- the lifting lemma --------------------------------------------------------


def keylemma_lift(
    outer: SimpleGame,
    pivot: int,
    x1: int,
    x2: int,
    y1: int,
    y2: int,
    inner: SimpleGame,
    u: int,
) -> tuple[CompositionSpec, TradingTransform]:
    """Lift an outer-game seed to a composite certificate: the pivot slot
    in the pivot-winning coalition is paid with a whole inner minimal
    winning coalition, whose two losing halves pad the losing side."""
    pbit = 1 << pivot
    for name, m in (("x1", x1), ("x2", x2), ("y1", y1), ("y2", y2)):
        if m & pbit:
            raise GameError(f"{name} must not contain the pivot")
    if not is_trading_seed(x1, x2, y1, y2):
        raise GameError("seed is not a trading transform")
    if not outer.wins(x1):
        raise GameError("x1 must be winning in the outer game")
    if not outer.wins(x2 | pbit):
        raise GameError("x2 must be pivot-winning in the outer game")
    if outer.wins(y1) or outer.wins(y2):
        raise GameError("y1 and y2 must be losing in the outer game")
    if u not in inner.min_winning:
        raise GameError("u must be a minimal winning coalition of the inner game")
    if u.bit_count() < 2:
        raise GameError("u must have at least two players")

    spec = CompositionSpec(outer, pivot, inner)
    om, im = spec.maps()
    outer_positions = [p for p in range(outer.n) if p != pivot]
    to_comp = {p: om[i] for i, p in enumerate(outer_positions)}

    def mo(mask: int) -> int:
        return mask_of(to_comp[p] for p in members(mask))

    def mi(mask: int) -> int:
        return mask_of(im[p] for p in members(mask))

    if outer.wins(x2):
        t = TradingTransform((mo(x1), mo(x2)), (mo(y1), mo(y2)))
        return spec, t
    low = u & -u
    u1, u2 = low, u ^ low
    t = TradingTransform(
        (mo(x1), mo(x2) | mi(u)), (mo(y1) | mi(u1), mo(y2) | mi(u2))
    )
    return spec, t


def is_trading_seed(x1, x2, y1, y2) -> bool:
    from collections import Counter

    cx: Counter = Counter()
    cy: Counter = Counter()
    for m in (x1, x2):
        cx.update(members(m))
    for m in (y1, y2):
        cy.update(members(m))
    return cx == cy


# -- family scaffolding ----------------------------------------------------------


def _family_of_case(case_id: str) -> str:
    for fam in ("B1", "B2", "B3", "T1", "T3"):
        if fam in case_id:
            return fam
    raise InapplicableCaseError(f"case {case_id!r} carries no family")


def _g1_and_levels(family: str, n, k):
    game = make_type(family, n, k, indecomposable_only=True)
    level_players = []
    start = 0
    for s in n:
        level_players.append(list(range(start, start + s)))
        start += s
    return game, level_players


def _pivot_level_of_case(case_id: str) -> int:
    """1-based level of the composition pivot for each case."""
    fam = _family_of_case(case_id)
    if case_id.startswith(("X1X2", "Un")):
        if case_id.endswith("level2"):
            return 2
        return 1
    # least desirable level
    return 2 if fam.startswith("B") else 3


def _composite_setup(case_id: str, n, k, inner: SimpleGame):
    """Composite spec plus per-level player lists in composite index
    space (inner players form the final level)."""
    fam = _family_of_case(case_id)
    g1, levels = _g1_and_levels(fam, n, k)
    lvl = _pivot_level_of_case(case_id) - 1
    pivot = levels[lvl][-1]
    spec = CompositionSpec(g1, pivot, inner)
    comp_levels = []
    for players in levels:
        comp_levels.append([p if p < pivot else p - 1 for p in players if p != pivot])
    comp_levels.append(list(range(g1.n - 1, g1.n - 1 + inner.n)))
    return g1, spec, comp_levels, lvl


def _expand_balanced(comp_levels, x_profiles, y_profiles) -> TradingTransform:
    """Expand per-level-balanced profile lists into concrete coalitions by
    walking each level's players circularly (both sides share the walk, so
    per-player counts balance exactly)."""
    for prof in list(x_profiles) + list(y_profiles):
        for t, want in enumerate(prof):
            if want < 0 or want > len(comp_levels[t]):
                raise InapplicableCaseError(
                    f"coalition needs {want} players at level {t + 1}; "
                    f"only {len(comp_levels[t])} remain after composition"
                )
    pos_x = [0] * len(comp_levels)
    pos_y = [0] * len(comp_levels)

    def expand(profiles, pos):
        masks = []
        for prof in profiles:
            m = 0
            for t, want in enumerate(prof):
                players = comp_levels[t]
                for j in range(want):
                    m |= 1 << players[(pos[t] + j) % len(players)]
                pos[t] += want
            masks.append(m)
        return masks

    xs = expand(x_profiles, pos_x)
    ys = expand(y_profiles, pos_y)
    return TradingTransform(tuple(xs), tuple(ys))


# -- seeds for the lifted (inner minimal winning of size >= 2) cases --------------


def _lift_seed(case_id: str, n, k):
    """Outer-game seed profiles (over the outer game's levels, pivot's
    level reduced by one player): (x1, x2, y1, y2) with x1 winning, x2
    pivot-winning, y1 and y2 losing."""
    if case_id == "B2_inner2":
        k1 = k[0]
        return (
            (k1, 0), (0, k1),
            (k1 // 2, (k1 + 1) // 2), ((k1 + 1) // 2, k1 // 2),
        )
    if case_id == "B3_inner2":
        k1 = k[0]
        if k1 < 2:
            raise InapplicableCaseError("requires k1 >= 2")
        return ((k1, 0), (k1 - 2, 2), (k1 - 1, 1), (k1 - 1, 1))
    if case_id == "T1_inner2":
        k1, k2, k3 = k
        return (
            (k1, 0, 0), (0, k2, k3 - k2 - 1),
            (k1 - 1, 1, 0), (1, k2 - 1, k3 - k2 - 1),
        )
    if case_id == "T3_inner2":
        k1, k2, k3 = k
        n2, n3 = n[1], n[2]
        return (
            (k2 - n2, n2, 0), (k1, n2 - 1, n3 - 1),
            (k2 - n2, n2 - 1, 1), (k1, n2, n3 - 2),
        )
    raise InapplicableCaseError(f"no lift seed for {case_id!r}")


def _lifted_case(case_id: str, n, k, inner: SimpleGame) -> CaseCertificate:
    u = next((m for m in inner.min_winning if m.bit_count() >= 2), None)
    if u is None:
        raise InapplicableCaseError(
            "inner game has no minimal winning coalition of size >= 2"
        )
    fam = _family_of_case(case_id)
    g1, levels = _g1_and_levels(fam, n, k)
    lvl = _pivot_level_of_case(case_id) - 1
    pivot = levels[lvl][-1]
    avail = [list(players) for players in levels]
    avail[lvl] = avail[lvl][:-1]
    profs = _lift_seed(case_id, n, k)
    for prof in profs:
        for t, want in enumerate(prof):
            if want < 0 or want > len(avail[t]):
                raise InapplicableCaseError(
                    f"seed needs {want} players at level {t + 1}; "
                    f"only {len(avail[t])} remain"
                )
    pos = {"x": [0] * len(levels), "y": [0] * len(levels)}

    def expand(prof, side):
        m = 0
        for t, want in enumerate(prof):
            players = avail[t]
            for j in range(want):
                m |= 1 << players[(pos[side][t] + j) % len(players)]
            pos[side][t] += want
        return m

    x1, x2 = expand(profs[0], "x"), expand(profs[1], "x")
    y1, y2 = expand(profs[2], "y"), expand(profs[3], "y")
    spec, t = keylemma_lift(g1, pivot, x1, x2, y1, y2, inner, u)
    return CaseCertificate(compose(spec), spec, t, "nonweightedness")


# -- anti-unanimity tail cases -----------------------------------------------------


def _an_case(case_id: str, n, k, inner_size: int) -> CaseCertificate:
    inner = make_anti_unanimity(inner_size)
    fam = _family_of_case(case_id)
    g1, spec, comp_levels, lvl = _composite_setup(case_id, n, k, inner)
    composite = compose(spec)

    if case_id == "B1_An":
        # same shape as the B3 display; one second-level slot is consumed
        # by the pivot, so the displayed second-level demands shift by one
        k1, k2 = k
        b = k2 - k1
        xs = [(k1, b - 1, 1), (k1, b - 1, 1)]
        ys = [(k1 + 1, b - 2, 0), (k1 - 1, b, 2)]
        t = _expand_balanced(comp_levels, xs, ys)
        return CaseCertificate(composite, spec, t, "nonweightedness")
    if case_id == "T1_An":
        # levels 2 and 3 of the outer game form a conjunctive bipartite
        # subgame; apply the corrected conjunctive pattern there
        k1, k2, k3 = k
        c = k3 - k2
        xs = [(0, k2, c - 1, 1), (0, k2, c - 1, 1)]
        ys = [(0, k2 + 1, c - 2, 0), (0, k2 - 1, c, 2)]
        t = _expand_balanced(comp_levels, xs, ys)
        return CaseCertificate(composite, spec, t, "nonweightedness")
    if case_id in ("B3_An", "T3_An"):
        # displayed transforms need a full pivot level and cannot be
        # realized; extract a certificate from the solver instead
        if is_weighted(composite):
            raise InapplicableCaseError(
                "composite is weighted; no nonweightedness certificate exists"
            )
        t = farkas_certificate(composite)
        return CaseCertificate(composite, spec, t, "nonweightedness")
    raise InapplicableCaseError(f"unknown anti-unanimity case {case_id!r}")


# -- incompleteness over a non-least pivot (anti-unanimity inner) -------------------


def _x1x2_profiles(case_id: str, n, k):
    """(X1 profile, X2 profile, level of the strictly less desirable
    witness g'), both over the outer game's levels."""
    if case_id == "X1X2_B1":
        k1, k2 = k
        return (k1 - 1, k2 - k1), (k1 - 1, k2 - k1), 2
    if case_id == "X1X2_B2":
        k1 = k[0]
        return (k1 - 1, 0), (0, k1), 2
    if case_id == "X1X2_B3":
        k1, k2 = k
        n2 = n[1]
        return (k1 - 1, 0), (k2 - n2, n2 - 1), 2
    if case_id == "X1X2_T1":
        k1, k2, k3 = k
        return (k1 - 1, 0, 0), (0, k2, k3 - k2 - 1), 3
    if case_id == "X1X2_T1_level2":
        k1, k2, k3 = k
        return (0, k2 - 1, k3 - k2), (0, k2 - 1, k3 - k2), 3
    if case_id == "X1X2_T3":
        k1, k2, k3 = k
        n2, n3 = n[1], n[2]
        if k3 - k1 > n3:
            raise InapplicableCaseError("requires k3 - k1 <= n3")
        return (k2 - n2 - 1, n2, 0), (k1 - 1, 0, k3 - k1), 3
    if case_id == "X1X2_T3_level2":
        k1, k2, k3 = k
        n2, n3 = n[1], n[2]
        return (k2 - n2, n2 - 1, 0), (k1, k3 - k1 - n3, n3 - 1), 3
    raise InapplicableCaseError(f"unknown swap case {case_id!r}")


def _x1x2_case(case_id: str, n, k, inner_size: int) -> CaseCertificate:
    inner = make_anti_unanimity(inner_size)
    g1, spec, comp_levels, lvl = _composite_setup(case_id, n, k, inner)
    composite = compose(spec)
    p1, p2, gp_level = _x1x2_profiles(case_id, n, k)
    gp_idx = gp_level - 1
    gp = comp_levels[gp_idx][0]

    def build(prof, include_gp: bool) -> int:
        m = 0
        for t, want in enumerate(prof):
            players = [q for q in comp_levels[t] if q != gp]
            if t == gp_idx and include_gp:
                if want < 1 or want - 1 > len(players):
                    raise InapplicableCaseError("not enough players at witness level")
                m |= 1 << gp
                want -= 1
            elif want > len(players):
                raise InapplicableCaseError(
                    f"coalition needs {want} players at level {t + 1}"
                )
            for p in players[:want]:
                m |= 1 << p
        return m

    x1 = build(p1, include_gp=False)
    x2 = build(p2, include_gp=True)
    a, b = comp_levels[-1][0], comp_levels[-1][1]
    t = TradingTransform(
        (x1 | (1 << a), x2 | (1 << b)),
        (x1 | (1 << gp), (x2 ^ (1 << gp)) | (1 << a) | (1 << b)),
    )
    return CaseCertificate(composite, spec, t, "incompleteness")


# -- unanimity inner over a non-least pivot ------------------------------------------


def _un_seed(case_id: str, n, k):
    """(x1 winning, x2 pivot-winning, y1, y2) profiles over the outer
    game's levels."""
    if case_id == "Un_B1":
        k1, k2 = k
        b = k2 - k1
        return (k1, b), (k1 - 1, b), (k1, b - 1), (k1 - 1, b + 1)
    if case_id == "Un_B2":
        k1 = k[0]
        return (0, k1 + 1), (k1 - 1, 0), (k1 - 1, 1), (0, k1)
    if case_id == "Un_B3":
        k1, k2 = k
        n2 = n[1]
        return (k2 - n2, n2), (k1 - 1, 0), (k2 - n2, n2 - 1), (k1 - 1, 1)
    if case_id == "Un_T1_level1":
        k1, k2, k3 = k
        return (0, k2, k3 - k2), (k1 - 1, 0, 0), (k1 - 1, 1, 0), (0, k2 - 1, k3 - k2)
    if case_id == "Un_T1_level2":
        k1, k2, k3 = k
        if k2 < 2:
            raise InapplicableCaseError("requires k2 >= 2")
        return (k1, 0, 0), (0, k2 - 1, k3 - k2), (k1 - 1, 1, 0), (1, k2 - 2, k3 - k2)
    if case_id == "Un_T3_level1":
        k1, k2, k3 = k
        n2, n3 = n[1], n[2]
        m = k3 - k1 - n3
        if m < 1:
            raise InapplicableCaseError("requires a second-level slot in the seed")
        return (k1, m, n3), (k1 - 1, m, n3), (k1, m - 1, n3), (k1 - 1, m + 1, n3)
    if case_id == "Un_T3_level2":
        k1, k2, k3 = k
        n2, n3 = n[1], n[2]
        if k3 - k1 > n3:
            raise InapplicableCaseError("requires k3 - k1 <= n3")
        return (
            (k2 - n2, n2 - 1, 0), (k1, 0, k3 - k1),
            (k2 - n2, n2 - 1, 1), (k1, 0, k3 - k1 - 1),
        )
    raise InapplicableCaseError(f"unknown unanimity case {case_id!r}")


def _un_case(case_id: str, n, k, inner_size: int) -> CaseCertificate:
    inner = make_unanimity(inner_size)
    fam = _family_of_case(case_id)
    g1, levels = _g1_and_levels(fam, n, k)
    lvl = _pivot_level_of_case(case_id) - 1
    pivot = levels[lvl][-1]
    avail = [list(players) for players in levels]
    avail[lvl] = avail[lvl][:-1]
    profs = _un_seed(case_id, n, k)
    for prof in profs:
        for t, want in enumerate(prof):
            if want < 0 or want > len(avail[t]):
                raise InapplicableCaseError(
                    f"seed needs {want} players at level {t + 1}; "
                    f"only {len(avail[t])} remain"
                )
    pos = {"x": [0] * len(levels), "y": [0] * len(levels)}

    def expand(prof, side):
        m = 0
        for t, want in enumerate(prof):
            players = avail[t]
            for j in range(want):
                m |= 1 << players[(pos[side][t] + j) % len(players)]
            pos[side][t] += want
        return m

    x1, x2 = expand(profs[0], "x"), expand(profs[1], "x")
    y1, y2 = expand(profs[2], "y"), expand(profs[3], "y")
    u = inner.min_winning[0]
    spec, t = keylemma_lift(g1, pivot, x1, x2, y1, y2, inner, u)
    return CaseCertificate(compose(spec), spec, t, "nonweightedness")


# -- incompleteness for a general composition over a non-least pivot -----------------


def not_complete_certificate(
    outer: SimpleGame, pivot: int, inner: SimpleGame
) -> CaseCertificate:
    """For a pivot strictly above some non-dummy player and an inner game
    that is neither unanimity nor anti-unanimity (nor dictatorial), the
    composite admits a swap certificate built from a witness pair."""
    d = outer.desirability
    gp = next(
        (
            q
            for q in range(outer.n)
            if q != pivot
            and d.strictly(pivot, q)
            and not (outer.dummies() >> q) & 1
        ),
        None,
    )
    if gp is None:
        raise InapplicableCaseError("pivot is not strictly above a non-dummy player")
    pbit, gbit = 1 << pivot, 1 << gp
    x = None
    for m in outer.min_winning:
        if m & pbit and not m & gbit and not outer.wins((m ^ pbit) | gbit):
            x = m ^ pbit
            break
    assert x is not None, "strict desirability guarantees a witness"

    big_minimals = [m for m in inner.min_winning if m.bit_count() >= 2]
    ys_without = [m for m in outer.min_winning if m & gbit and not m & pbit]
    ys_with = [m for m in outer.min_winning if m & gbit and m & pbit]

    spec = CompositionSpec(outer, pivot, inner)
    om, im = spec.maps()
    outer_positions = [p for p in range(outer.n) if p != pivot]
    to_comp = {p: om[i] for i, p in enumerate(outer_positions)}

    def mo(mask: int) -> int:
        return mask_of(to_comp[p] for p in members(mask))

    def mi(mask: int) -> int:
        return mask_of(im[p] for p in members(mask))

    composite = compose(spec)
    if ys_without and big_minimals:
        y = ys_without[0]
        z = big_minimals[0]
        zz = 1 << next(iter_bits(z))
        t = TradingTransform(
            (mo(x) | mi(z), mo(y)),
            (mo(x | gbit) | mi(z ^ zz), mo(y ^ gbit) | mi(zz)),
        )
        return CaseCertificate(composite, spec, t, "incompleteness")
    if ys_with and len(inner.min_winning) >= 2:
        y = ys_with[0]
        z1 = inner.min_winning[0]
        z2 = next(m for m in inner.min_winning[1:] if z1 & ~m)
        zz = 1 << next(iter_bits(z1 & ~z2))
        t = TradingTransform(
            (mo(x) | mi(z1), mo(y ^ pbit) | mi(z2)),
            (mo(x | gbit) | mi(z1 ^ zz), mo(y ^ pbit ^ gbit) | mi(z2 | zz)),
        )
        return CaseCertificate(composite, spec, t, "incompleteness")
    raise InapplicableCaseError(
        "inner game supports neither construction branch "
        "(needs two minimal winning coalitions or one of size >= 2)"
    )


# -- dispatcher -----------------------------------------------------------------------


def certificate_for(
    case_id: str,
    n=None,
    k=None,
    inner: SimpleGame | None = None,
    inner_size: int | None = None,
    outer: SimpleGame | None = None,
    pivot: int | None = None,
) -> CaseCertificate:
    """Generate and validate the named case's transform.  The result's
    transform is guaranteed to pass the matching certificate predicate."""
    if case_id == "not_complete":
        if outer is None or pivot is None or inner is None:
            raise GameError("not_complete needs outer, pivot, and inner")
        result = not_complete_certificate(outer, pivot, inner)
    elif case_id.endswith("_inner2"):
        if case_id == "B1_inner2":
            # no two-coalition seed fits beside the pivot; use the solver
            fam_n, fam_k = tuple(n), tuple(k)
            g1, levels = _g1_and_levels("B1", fam_n, fam_k)
            if inner is None:
                raise GameError("B1_inner2 needs an inner game")
            pivot_ = levels[1][-1]
            spec = CompositionSpec(g1, pivot_, inner)
            composite = compose(spec)
            if is_weighted(composite):
                raise InapplicableCaseError(
                    "composite is weighted; no nonweightedness certificate exists"
                )
            result = CaseCertificate(
                composite, spec, farkas_certificate(composite), "nonweightedness"
            )
        else:
            if inner is None:
                raise GameError(f"{case_id} needs an inner game")
            result = _lifted_case(case_id, tuple(n), tuple(k), inner)
    elif case_id.endswith("_An"):
        result = _an_case(case_id, tuple(n), tuple(k), inner_size or 2)
    elif case_id.startswith("X1X2"):
        result = _x1x2_case(case_id, tuple(n), tuple(k), inner_size or 2)
    elif case_id.startswith("Un"):
        result = _un_case(case_id, tuple(n), tuple(k), inner_size or 2)
    else:
        raise GameError(f"unknown case {case_id!r}")
    if not result.validates():
        raise RuntimeError(f"case {case_id} produced an invalid transform")
    return result
