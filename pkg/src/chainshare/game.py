"""Transferable-utility coalition games and the exact Shapley allocation.

Coalitions are bit-vectors over a fixed player order. All values are
exact rationals, so efficiency (payoffs summing to the grand-coalition
value) holds as an equality. Exact enumeration walks all 2**n - 1
coalitions and is capped at 20 players; larger games belong to
:mod:`chainshare.sampling`.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from types import MappingProxyType
from typing import Iterable, Mapping, NamedTuple

from .errors import EnumerationBoundError, IncompleteGameError
from .rational import RationalLike, parse_rational

ENUMERATION_MAX_PLAYERS = 20


@dataclass(frozen=True)
class PlayerSet:
    """Ordered unique player identifiers; the order fixes bit positions."""

    players: tuple[str, ...]

    def __post_init__(self):
        object.__setattr__(self, "players", tuple(self.players))
        if not self.players:
            raise ValueError("a game needs at least one player")
        for p in self.players:
            if not isinstance(p, str) or not p:
                raise ValueError(f"player identifiers must be non-empty strings, got {p!r}")
        if len(set(self.players)) != len(self.players):
            raise ValueError("player identifiers must be unique")

    @property
    def n(self) -> int:
        return len(self.players)

    def index(self, player: str) -> int:
        try:
            return self.players.index(player)
        except ValueError:
            raise ValueError(f"unknown player {player!r}") from None

    def coalition(self, members: Iterable[str]) -> Coalition:
        mask = 0
        for name in members:
            mask |= 1 << self.index(name)
        return Coalition(self, mask)

    @property
    def grand_coalition(self) -> Coalition:
        return Coalition(self, (1 << self.n) - 1)

    def __iter__(self):
        return iter(self.players)

    def __len__(self) -> int:
        return len(self.players)


@dataclass(frozen=True)
class Coalition:
    """A subset of a player set, stored as a bit-vector."""

    player_set: PlayerSet
    mask: int

    def __post_init__(self):
        if not 0 <= self.mask < (1 << self.player_set.n):
            raise ValueError(f"coalition mask {self.mask:#x} out of range for {self.player_set.n} players")

    @property
    def size(self) -> int:
        return self.mask.bit_count()

    @property
    def members(self) -> tuple[str, ...]:
        return tuple(p for i, p in enumerate(self.player_set.players) if self.mask >> i & 1)

    def contains(self, player: str) -> bool:
        return bool(self.mask >> self.player_set.index(player) & 1)

    def without(self, player: str) -> Coalition:
        return Coalition(self.player_set, self.mask & ~(1 << self.player_set.index(player)))

    def __str__(self) -> str:
        return "{" + ", ".join(self.members) + "}"


class ShapleyTerm(NamedTuple):
    """One audited summand: coalition S (containing the player), its
    weight (n-|S|)!(|S|-1)!/n!, and the marginal v(S) - v(S \\ {i})."""

    coalition: Coalition
    weight: Fraction
    marginal: Fraction


def coalition_weight(n: int, s: int) -> Fraction:
    """Weight of a size-``s`` coalition in an ``n``-player game.

    Returns (n-s)!(s-1)!/n! exactly. Over all coalitions containing a
    fixed player these weights sum to 1.
    """
    if not isinstance(n, int) or not isinstance(s, int):
        raise TypeError("player count and coalition size must be ints")
    if not 1 <= s <= n:
        raise ValueError(f"coalition size must satisfy 1 <= s <= n, got s={s}, n={n}")
    if n > ENUMERATION_MAX_PLAYERS:
        raise ValueError(f"player count {n} exceeds the enumeration bound {ENUMERATION_MAX_PLAYERS}")
    return Fraction(math.factorial(n - s) * math.factorial(s - 1), math.factorial(n))


@dataclass(frozen=True)
class CharacteristicFunction:
    """Total map from non-empty coalitions to exact rational values.

    ``values`` is keyed by coalition bit-mask and must cover every one of
    the 2**n - 1 non-empty coalitions; the empty coalition is implicitly
    worth 0 and is never stored.
    """

    player_set: PlayerSet
    values: Mapping[int, Fraction]

    def __post_init__(self):
        n = self.player_set.n
        if n > ENUMERATION_MAX_PLAYERS:
            raise EnumerationBoundError(n, ENUMERATION_MAX_PLAYERS)
        table: dict[int, Fraction] = {}
        for mask, value in self.values.items():
            if not isinstance(mask, int) or not 0 < mask < (1 << n):
                raise ValueError(f"coalition key {mask!r} is not a non-empty mask for {n} players")
            table[mask] = parse_rational(value)
        for mask in range(1, 1 << n):
            if mask not in table:
                raise IncompleteGameError(Coalition(self.player_set, mask).members)
        object.__setattr__(self, "values", MappingProxyType(table))

    @classmethod
    def from_values(
        cls,
        players: Iterable[str] | PlayerSet,
        values: Mapping[Iterable[str], RationalLike],
    ) -> CharacteristicFunction:
        """Build a game from coalition member lists, e.g.
        ``{("A",): "1000", ("A", "B"): "2000", ...}``."""
        player_set = players if isinstance(players, PlayerSet) else PlayerSet(tuple(players))
        table: dict[int, Fraction] = {}
        for members, value in values.items():
            key = (members,) if isinstance(members, str) else tuple(members)
            mask = player_set.coalition(key).mask
            if mask in table:
                raise ValueError(f"coalition {{{', '.join(key)}}} given more than once")
            table[mask] = parse_rational(value)
        return cls(player_set, table)

    @property
    def n(self) -> int:
        return self.player_set.n

    @property
    def grand_value(self) -> Fraction:
        return self.values[(1 << self.n) - 1]

    def __call__(self, coalition: Coalition | int | Iterable[str]) -> Fraction:
        if isinstance(coalition, Coalition):
            mask = coalition.mask
        elif isinstance(coalition, int):
            mask = coalition
        else:
            mask = self.player_set.coalition(coalition).mask
        if mask == 0:
            return Fraction(0)
        return self.values[mask]


@dataclass(frozen=True)
class Allocation:
    """Per-player payoffs plus the full per-term audit trail.

    ``terms[i]`` lists one :class:`ShapleyTerm` for every coalition
    containing player i; the payoff is the sum of weight * marginal over
    that list.
    """

    player_set: PlayerSet
    payoffs: tuple[Fraction, ...]
    terms: tuple[tuple[ShapleyTerm, ...], ...]

    @property
    def total(self) -> Fraction:
        return sum(self.payoffs, Fraction(0))

    def payoff_of(self, player: str) -> Fraction:
        return self.payoffs[self.player_set.index(player)]

    def as_dict(self) -> dict[str, Fraction]:
        return dict(zip(self.player_set.players, self.payoffs))


def shapley_exact(game: CharacteristicFunction) -> Allocation:
    """Exact Shapley allocation by enumeration of all coalitions.

    For each player i the payoff is the sum over coalitions S containing
    i of (n-|S|)!(|S|-1)!/n! * [v(S) - v(S \\ {i})]. The returned
    allocation satisfies efficiency exactly: payoffs sum to v(N).
    """
    n = game.n
    if n > ENUMERATION_MAX_PLAYERS:
        raise EnumerationBoundError(n, ENUMERATION_MAX_PLAYERS)
    weights = [Fraction(0)] + [coalition_weight(n, s) for s in range(1, n + 1)]
    payoffs = [Fraction(0)] * n
    terms: list[list[ShapleyTerm]] = [[] for _ in range(n)]
    values = game.values
    for mask in range(1, 1 << n):
        weight = weights[mask.bit_count()]
        v_mask = values[mask]
        remaining = mask
        while remaining:
            bit = remaining & -remaining
            remaining ^= bit
            i = bit.bit_length() - 1
            prior = mask ^ bit
            marginal = v_mask - values[prior] if prior else v_mask
            payoffs[i] += weight * marginal
            terms[i].append(ShapleyTerm(Coalition(game.player_set, mask), weight, marginal))
    return Allocation(
        player_set=game.player_set,
        payoffs=tuple(payoffs),
        terms=tuple(tuple(t) for t in terms),
    )


@dataclass(frozen=True)
class SuperadditivityViolation:
    """Disjoint coalitions worth more apart than together."""

    left: Coalition
    right: Coalition
    left_value: Fraction
    right_value: Fraction
    union_value: Fraction

    def __str__(self) -> str:
        return (
            f"v({self.left} u {self.right}) = {self.union_value} < "
            f"{self.left_value} + {self.right_value}"
        )


@dataclass(frozen=True)
class ValidationReport:
    """Superadditivity diagnostic; violations are warnings, never fatal."""

    player_set: PlayerSet
    violations: tuple[SuperadditivityViolation, ...]

    @property
    def ok(self) -> bool:
        return not self.violations


def validate_game(game: CharacteristicFunction) -> ValidationReport:
    """List every disjoint pair S, T with v(S u T) < v(S) + v(T).

    Exhaustive over all unordered disjoint pairs, which is O(3**n);
    practical through roughly 14 players.
    """
    violations: list[SuperadditivityViolation] = []
    values = game.values
    n = game.n
    for union in range(1, 1 << n):
        if union.bit_count() < 2:
            continue
        v_union = values[union]
        # Proper non-empty submasks; keep left < right to visit each
        # unordered pair once.
        left = (union - 1) & union
        while left:
            right = union ^ left
            if left < right and v_union < values[left] + values[right]:
                violations.append(
                    SuperadditivityViolation(
                        left=Coalition(game.player_set, left),
                        right=Coalition(game.player_set, right),
                        left_value=values[left],
                        right_value=values[right],
                        union_value=v_union,
                    )
                )
            left = (left - 1) & union
    return ValidationReport(player_set=game.player_set, violations=tuple(violations))
