"""Exception types shared across the package."""

from __future__ import annotations


class GameError(ValueError):
    """Base class for invalid game data or invalid operation inputs."""


class DegenerateGameError(GameError):
    """A construction produced a structure with no winning coalitions
    (or no players), which is not a valid simple game."""


class DummyPlayersError(GameError):
    """Operation requires a game without dummy players."""

    def __init__(self, dummies: tuple[int, ...]):
        self.dummies = dummies
        super().__init__(f"game has dummy players {list(dummies)}")


class NotCompleteError(GameError):
    """Operation requires a complete game.  Carries a 2-swap certificate
    (two winning coalitions that become losing after exchanging a pair of
    players) witnessing the incompleteness."""

    def __init__(self, certificate):
        self.certificate = certificate
        super().__init__("game is not complete")


class CatalogConstraintError(GameError):
    """A catalog constructor was called with parameters violating one of
    the family's defining constraints.  The message names the constraint."""


class InapplicableCaseError(GameError):
    """A prebuilt certificate construction does not apply to the given
    parameters (a guard condition failed).  The message names the guard."""
