"""Scenario documents: the batch input format for the engines.

A scenario is a UTF-8 JSON document::

    {
      "players": ["A", "B", "C"],
      "coalitions": [
        {"members": ["A"], "value": "1000"},
        {"members": ["A", "B"], "value": "2000"},
        ...
      ],
      "factors": {"A": "0.6648", "B": "0.2633", "C": "0.0703"},
      "mode": "eq3",
      "normalize_factors": false,
      "ahp": {
        "criteria": ["R1", "R2"],
        "criteria_matrix": [["1", "3"], ["0.3333333333333333", "1"]],
        "alternatives": {
          "R1": {"A": "0.5", "B": "0.3", "C": "0.2"},
          "R2": [["1", "2", "4"], ["0.5", "1", "2"], ["0.25", "0.5", "1"]]
        }
      }
    }

Numbers are strings, either decimals ("0.6648") or integer ratios
("6648/9984"), and are parsed exactly. ``factors`` and ``ahp`` are
mutually exclusive; an alternatives entry is a player->score map of
direct normalized scores or a full pairwise matrix over the players in
order. Member lists are canonicalized on parse, so permuted lists name
the same coalition.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from importlib import resources
from pathlib import Path

from .adjust import AdjustmentFactors, compute_deltas
from .ahp import ComparisonMatrix, CriteriaHierarchy, WeightVector, synthesize_factors
from .errors import ScenarioError
from .game import CharacteristicFunction, PlayerSet
from .rational import exact_string, parse_rational

MODES = ("eq3", "grand")


@dataclass(frozen=True)
class AhpBlock:
    """Parsed two-level hierarchy section of a scenario."""

    criteria: tuple[str, ...]
    criteria_matrix: tuple[tuple[Fraction, ...], ...]
    alternative_matrices: dict[str, tuple[tuple[Fraction, ...], ...]] = field(default_factory=dict)
    alternative_scores: dict[str, tuple[Fraction, ...]] = field(default_factory=dict)


@dataclass(frozen=True)
class ScenarioFile:
    """Fully validated scenario content, numbers held exactly."""

    players: tuple[str, ...]
    coalition_values: dict[int, Fraction]
    factors: tuple[Fraction, ...] | None = None
    mode: str | None = None
    normalize_factors: bool = False
    ahp: AhpBlock | None = None

    @property
    def player_set(self) -> PlayerSet:
        return PlayerSet(self.players)


def _fail(message: str, locus: str) -> ScenarioError:
    return ScenarioError(message, locus)


def _parse_number(raw, locus: str) -> Fraction:
    if isinstance(raw, bool) or not isinstance(raw, (str, int)):
        raise _fail(
            f"numbers must be strings (or ints), got {type(raw).__name__}; "
            "write values like \"1000\" or \"0.6648\" to keep them exact",
            locus,
        )
    try:
        return parse_rational(raw)
    except ValueError as exc:
        raise _fail(str(exc), locus) from None


def _parse_players(doc: dict) -> tuple[str, ...]:
    players = doc.get("players")
    if players is None:
        raise _fail("missing required field", "players")
    if not isinstance(players, list) or not players:
        raise _fail("must be a non-empty list of identifiers", "players")
    for i, p in enumerate(players):
        if not isinstance(p, str) or not p:
            raise _fail("player identifiers must be non-empty strings", f"players[{i}]")
    if len(set(players)) != len(players):
        raise _fail("player identifiers must be unique", "players")
    return tuple(players)


def _parse_coalitions(doc: dict, players: tuple[str, ...]) -> dict[int, Fraction]:
    coalitions = doc.get("coalitions")
    if coalitions is None:
        raise _fail("missing required field", "coalitions")
    if not isinstance(coalitions, list) or not coalitions:
        raise _fail("must be a non-empty list of {members, value} entries", "coalitions")
    order = {p: i for i, p in enumerate(players)}
    values: dict[int, Fraction] = {}
    for i, entry in enumerate(coalitions):
        locus = f"coalitions[{i}]"
        if not isinstance(entry, dict) or set(entry) != {"members", "value"}:
            raise _fail("each coalition needs exactly the keys 'members' and 'value'", locus)
        members = entry["members"]
        if not isinstance(members, list) or not members:
            raise _fail("members must be a non-empty list", f"{locus}.members")
        mask = 0
        for name in members:
            if name not in order:
                raise _fail(f"unknown player {name!r}", f"{locus}.members")
            bit = 1 << order[name]
            if mask & bit:
                raise _fail(f"player {name!r} listed twice", f"{locus}.members")
            mask |= bit
        if mask in values:
            raise _fail(
                "duplicate coalition {" + ", ".join(sorted(members)) + "}", f"{locus}.members"
            )
        values[mask] = _parse_number(entry["value"], f"{locus}.value")
    return values


def _parse_matrix(raw, labels: tuple[str, ...], locus: str) -> tuple[tuple[Fraction, ...], ...]:
    n = len(labels)
    if not isinstance(raw, list) or len(raw) != n:
        raise _fail(f"must be a {n}x{n} matrix (rows over {', '.join(labels)})", locus)
    rows = []
    for i, row in enumerate(raw):
        if not isinstance(row, list) or len(row) != n:
            raise _fail(f"row must have {n} entries", f"{locus}[{i}]")
        rows.append(tuple(_parse_number(x, f"{locus}[{i}][{j}]") for j, x in enumerate(row)))
    return tuple(rows)


def _parse_ahp(doc: dict, players: tuple[str, ...]) -> AhpBlock | None:
    raw = doc.get("ahp")
    if raw is None:
        return None
    if not isinstance(raw, dict):
        raise _fail("must be an object", "ahp")
    unknown = set(raw) - {"criteria", "criteria_matrix", "alternatives"}
    if unknown:
        raise _fail(f"unknown keys {sorted(unknown)}", "ahp")
    criteria = raw.get("criteria")
    if not isinstance(criteria, list) or not criteria:
        raise _fail("must be a non-empty list of labels", "ahp.criteria")
    if any(not isinstance(c, str) or not c for c in criteria):
        raise _fail("criterion labels must be non-empty strings", "ahp.criteria")
    if len(set(criteria)) != len(criteria):
        raise _fail("criterion labels must be unique", "ahp.criteria")
    criteria = tuple(criteria)
    matrix = _parse_matrix(raw.get("criteria_matrix"), criteria, "ahp.criteria_matrix")
    alternatives = raw.get("alternatives")
    if not isinstance(alternatives, dict):
        raise _fail("must map every criterion to a matrix or a score map", "ahp.alternatives")
    unknown = set(alternatives) - set(criteria)
    if unknown:
        raise _fail(f"unknown criteria {sorted(unknown)}", "ahp.alternatives")
    missing = [c for c in criteria if c not in alternatives]
    if missing:
        raise _fail(f"missing entries for criteria {missing}", "ahp.alternatives")
    matrices: dict[str, tuple[tuple[Fraction, ...], ...]] = {}
    scores: dict[str, tuple[Fraction, ...]] = {}
    for label in criteria:
        entry = alternatives[label]
        locus = f"ahp.alternatives.{label}"
        if isinstance(entry, list):
            matrices[label] = _parse_matrix(entry, players, locus)
        elif isinstance(entry, dict):
            if set(entry) != set(players):
                raise _fail("score map keys must be exactly the players", locus)
            scores[label] = tuple(_parse_number(entry[p], f"{locus}.{p}") for p in players)
        else:
            raise _fail("must be a matrix (list of rows) or a player->score map", locus)
    return AhpBlock(
        criteria=criteria,
        criteria_matrix=matrix,
        alternative_matrices=matrices,
        alternative_scores=scores,
    )


def parse_scenario(text: str) -> ScenarioFile:
    """Parse and validate a scenario document from JSON text.

    Raises :class:`ScenarioError` with a locus ("coalitions[3].members",
    "ahp.alternatives.R1", ...) for every schema violation.
    """
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ScenarioError(f"invalid JSON: {exc.msg}", f"line {exc.lineno}, column {exc.colno}") from None
    if not isinstance(doc, dict):
        raise _fail("the top level must be an object", "document")
    unknown = set(doc) - {"players", "coalitions", "factors", "mode", "normalize_factors", "ahp"}
    if unknown:
        raise _fail(f"unknown keys {sorted(unknown)}", "document")
    players = _parse_players(doc)
    values = _parse_coalitions(doc, players)

    factors = None
    raw_factors = doc.get("factors")
    if raw_factors is not None:
        if not isinstance(raw_factors, dict):
            raise _fail("must map every player to a factor", "factors")
        if set(raw_factors) != set(players):
            raise _fail("factor keys must be exactly the players", "factors")
        factors = tuple(_parse_number(raw_factors[p], f"factors.{p}") for p in players)
        for p, f in zip(players, factors):
            if f < 0:
                raise _fail(f"factor for {p!r} is negative", f"factors.{p}")

    mode = doc.get("mode")
    if mode is not None and mode not in MODES:
        raise _fail(f"must be one of {MODES}", "mode")

    normalize = doc.get("normalize_factors", False)
    if not isinstance(normalize, bool):
        raise _fail("must be true or false", "normalize_factors")

    ahp = _parse_ahp(doc, players)
    if factors is not None and ahp is not None:
        raise _fail("at most one of 'factors' and 'ahp' may be present", "document")

    return ScenarioFile(
        players=players,
        coalition_values=values,
        factors=factors,
        mode=mode,
        normalize_factors=normalize,
        ahp=ahp,
    )


def load_scenario(path: str | Path) -> ScenarioFile:
    """Read and parse a scenario file from disk."""
    return parse_scenario(Path(path).read_text(encoding="utf-8"))


def serialize_scenario(sf: ScenarioFile) -> str:
    """Canonical JSON text for a scenario; the inverse of parse_scenario.

    Deterministic: fixed key order, coalitions sorted by size then
    player order, numbers rendered exactly (decimal when finite, "p/q"
    otherwise). parse(serialize(sf)) == sf.
    """
    def members_of(mask: int) -> list[str]:
        return [p for i, p in enumerate(sf.players) if mask >> i & 1]

    doc: dict = {
        "players": list(sf.players),
        "coalitions": [
            {"members": members_of(mask), "value": exact_string(sf.coalition_values[mask])}
            for mask in sorted(sf.coalition_values, key=lambda m: (m.bit_count(), m))
        ],
    }
    if sf.factors is not None:
        doc["factors"] = {p: exact_string(f) for p, f in zip(sf.players, sf.factors)}
    if sf.mode is not None:
        doc["mode"] = sf.mode
    if sf.normalize_factors:
        doc["normalize_factors"] = True
    if sf.ahp is not None:
        alternatives: dict = {}
        for label in sf.ahp.criteria:
            if label in sf.ahp.alternative_matrices:
                alternatives[label] = [
                    [exact_string(x) for x in row] for row in sf.ahp.alternative_matrices[label]
                ]
            else:
                alternatives[label] = {
                    p: exact_string(x) for p, x in zip(sf.players, sf.ahp.alternative_scores[label])
                }
        doc["ahp"] = {
            "criteria": list(sf.ahp.criteria),
            "criteria_matrix": [[exact_string(x) for x in row] for row in sf.ahp.criteria_matrix],
            "alternatives": alternatives,
        }
    return json.dumps(doc, indent=2) + "\n"


def scenario_game(sf: ScenarioFile) -> CharacteristicFunction:
    """Build the (total) characteristic function a scenario describes."""
    return CharacteristicFunction(sf.player_set, sf.coalition_values)


def scenario_hierarchy(sf: ScenarioFile, *, method: str = "power") -> CriteriaHierarchy:
    """Build the criteria hierarchy from a scenario's ahp block."""
    if sf.ahp is None:
        raise ScenarioError("scenario has no 'ahp' section", "ahp")
    block = sf.ahp
    criteria = ComparisonMatrix(
        block.criteria, [[float(x) for x in row] for row in block.criteria_matrix]
    )
    alternatives: dict[str, ComparisonMatrix | WeightVector] = {}
    for label in block.criteria:
        if label in block.alternative_matrices:
            alternatives[label] = ComparisonMatrix(
                sf.players, [[float(x) for x in row] for row in block.alternative_matrices[label]]
            )
        else:
            alternatives[label] = WeightVector(
                sf.players, tuple(float(x) for x in block.alternative_scores[label])
            )
    return CriteriaHierarchy.from_matrices(criteria, alternatives, method=method)


def resolve_factors(
    sf: ScenarioFile,
    *,
    normalize: bool | None = None,
    allow_inconsistent: bool = False,
) -> AdjustmentFactors | None:
    """Adjustment factors a scenario carries, if any.

    Direct ``factors`` are validated by :func:`compute_deltas` (the
    ``normalize`` argument overrides the scenario's flag); an ``ahp``
    section is synthesized through the consistency gate. Returns None
    when the scenario has neither.
    """
    if sf.factors is not None:
        do_normalize = sf.normalize_factors if normalize is None else normalize
        return compute_deltas(sf.factors, sf.player_set, normalize=do_normalize)
    if sf.ahp is not None:
        return synthesize_factors(scenario_hierarchy(sf), allow_inconsistent=allow_inconsistent)
    return None


def bundled_scenario(name: str) -> Path:
    """Filesystem path of a scenario shipped with the package."""
    root = resources.files("chainshare") / "data"
    candidate = root / f"{name}.scenario"
    if not candidate.is_file():
        available = sorted(p.name.removesuffix(".scenario") for p in root.iterdir() if p.name.endswith(".scenario"))
        raise ValueError(f"no bundled scenario {name!r}; available: {', '.join(available)}")
    return Path(str(candidate))
