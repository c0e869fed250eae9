"""
Influence-adjusted allocation: two readings of one adjustment rule
==================================================================

Classical payoffs assume every member brings the same innovation
capability. When a weighting exercise says otherwise (here A carries
0.6648 of the influence, far above the uniform 1/3), the allocation is
adjusted by each player's deviation from the uniform share.

Two variants ship, because the published adjustment formula and its
worked example disagree:

* eq3   - the literal per-coalition formula; every term gains
          v(S) * (G_i - 1/n). It does NOT preserve efficiency.
* grand - the efficiency-preserving reading; the classical payoff moves
          by v(N) * (G_i - 1/n).
"""

from chainshare import adjusted_shapley, compute_deltas
from chainshare.game import CharacteristicFunction

game = CharacteristicFunction.from_values(
    ("A", "B", "C"),
    {
        ("A",): "1000", ("B",): "500", ("C",): "300",
        ("A", "B"): "2000", ("A", "C"): "1500", ("B", "C"): "1200",
        ("A", "B", "C"): "3000",
    },
)

###############################################################################
# The raw factors sum to 0.9984 rather than 1 (they were published rounded
# to four decimals); the default tolerance of 0.01 accepts that, and the
# deviations record how far each player sits from the uniform 1/3.

factors = compute_deltas({"A": "0.6648", "B": "0.2633", "C": "0.0703"}, ("A", "B", "C"))
print("sum of factors:", float(factors.total))
for player, dev in zip(factors.player_set, factors.deviations):
    print(f"  deviation {player}: {float(dev):+.7f}")

###############################################################################
# eq3: the literal formula. Note the efficiency gap: adjusted payoffs
# overshoot the grand value by ~108.55 units, an inherent property of the
# per-coalition form (the gap equals sum_i deviation_i * A_i, where A_i is
# the weighted value of all coalitions containing i).

eq3 = adjusted_shapley(game, factors, "eq3")
for player, value in zip("ABC", eq3.adjusted_payoffs):
    print(f"  eq3 {player}: {float(value):10.4f}")
print("  efficiency gap:", float(eq3.efficiency_gap))

###############################################################################
# grand: the efficiency-preserving reading. With factors summing to
# exactly 1 the payoffs would re-sum to 3000 exactly; with the published
# 0.9984 the gap is 3000 * (0.9984 - 1) = -4.8. Note C ends up negative:
# the engine reports it and raises a rationality flag instead of clamping.

grand = adjusted_shapley(game, factors, "grand")
for player, value, ok in zip("ABC", grand.adjusted_payoffs, grand.rationality_flags):
    note = "" if ok else "   <- below standalone value"
    print(f"  grand {player}: {float(value):10.4f}{note}")
print("  efficiency gap:", float(grand.efficiency_gap))

###############################################################################
# Rescaling the factors to sum to exactly 1 restores exact efficiency in
# grand mode.

normalized = compute_deltas(
    {"A": "0.6648", "B": "0.2633", "C": "0.0703"}, ("A", "B", "C"), normalize=True
)
preserved = adjusted_shapley(game, normalized, "grand")
assert sum(preserved.adjusted_payoffs) == game.grand_value
print("normalized grand mode total:", sum(preserved.adjusted_payoffs))
