"""Congestion games: compact form, dense expansion, and the exact price of
selfishness.

Players pick bundles of facilities; each facility's cost grows with its
load. Such games always have a pure equilibrium, which makes them handy
ground truth for the learning algorithms. The pure price of anarchy compares
the worst equilibrium's total cost with the social optimum.
"""

from egta import (
    CongestionGame,
    expand,
    gen_rc,
    ppa_exact,
    ppa_example_game,
    pure_eps_nash,
    welfare,
)

# The canonical worst case for linear costs: three players, six facilities.
worst_case = ppa_example_game()
game = expand(worst_case)
print("canonical instance equilibria:", pure_eps_nash(game, 0.0))
print("  total cost at (A1,A2,A3):", -welfare(game, (0, 0, 0)))
print("  total cost at (B1,B2,B3):", -welfare(game, (1, 1, 1)))
print("  pure price of anarchy:", ppa_exact(worst_case))

# Random instances cluster strategies on low-numbered facilities; a higher
# inclusion decay gives players real alternatives. Selfishness usually costs
# nothing here, occasionally a little.
print("\nrandom congestion games:")
for seed in (4, 9, 17, 40):
    cg = gen_rc(num_players=4, num_facilities=5, k=3, alpha=0.5, seed=seed)
    print(f"  seed {seed}: strategies per player {[len(s) for s in cg.strategy_sets]}, "
          f"price of anarchy {ppa_exact(cg):.3f}")

# Cost functions are pluggable per facility; loads are what they price.
quadratic = CongestionGame(2, (((0,), (1,)), ((0,), (1,))),
                           cost_fn=lambda facility, load: load**2)
print("\nquadratic-cost 2x2 game price of anarchy:", ppa_exact(quadratic))
