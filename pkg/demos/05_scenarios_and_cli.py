"""
Scenario files and the batch command line
=========================================

Everything the library does is reachable from JSON scenario documents,
so allocation runs are reviewable artifacts: numbers travel as strings
and parse exactly, member lists are canonicalized, and rendering is
byte-deterministic.
"""

import json

from chainshare import bundled_scenario, load_scenario, serialize_scenario
from chainshare.cli import main

###############################################################################
# Two scenarios ship with the package: the three-company case study with
# its influence factors, and a variant carrying the full criteria
# hierarchy instead.

case = bundled_scenario("paper_case")
print("bundled scenario:", case)
sf = load_scenario(case)
print("players:", sf.players, " coalitions:", len(sf.coalition_values), " mode:", sf.mode)

###############################################################################
# Round trip: parse -> serialize -> parse is the identity, and the
# serialized form is canonical (sorted coalitions, exact numbers).

text = serialize_scenario(sf)
assert load_scenario(case) == sf
assert serialize_scenario(load_scenario(case)) == text
print("round-trip stable:", len(text), "bytes")

###############################################################################
# The CLI is the same engine behind argv. Here: classical payoffs as CSV,
# then the adjusted run in structured JSON (exact strings + floats).

print("\n$ chainshare shapley paper_case.scenario --format csv")
main(["shapley", str(case), "--format", "csv"])

print("\n$ chainshare allocate paper_case.scenario --mode eq3 --format structured")
main(["allocate", str(case), "--mode", "eq3", "--format", "structured"])

###############################################################################
# The hierarchy scenario drives the weighting commands.

ahp_case = bundled_scenario("paper_ahp")
print("\n$ chainshare ahp synthesize paper_ahp.scenario --format csv")
main(["ahp", "synthesize", str(ahp_case), "--format", "csv"])

###############################################################################
# Building a scenario from scratch is ordinary JSON.

doc = {
    "players": ["north", "south"],
    "coalitions": [
        {"members": ["north"], "value": "8"},
        {"members": ["south"], "value": "4"},
        {"members": ["south", "north"], "value": "20"},
    ],
    "factors": {"north": "0.55", "south": "0.45"},
    "mode": "grand",
}
path = "/tmp/two_region.scenario"
with open(path, "w") as fh:
    json.dump(doc, fh)

print("\n$ chainshare allocate two_region.scenario")
main(["allocate", path])
