"""Neutral bit markers as a relatedness estimate.

Every individual carries a vector of "trash bits" that selection never
sees: random at creation, one flip per mutation, uniform mixing under
crossover.  The normalised Hamming distance between two marker vectors
then behaves like a cheap relatedness measure.  This demo checks the three
expectations that make it usable:

* unrelated individuals    -> around 0.50
* parent vs. mutated child -> exactly 1/tau
* parent vs. crossover kid -> around 0.25
"""

import numpy as np

from genediv import flip_one_bit, random_trash, tdist, uniform_cross

TAU = 32
TRIALS = 20_000

rng = np.random.default_rng(7)

print(f"marker length tau = {TAU}, {TRIALS} trials per estimate\n")

unrelated = sum(
    tdist(random_trash(TAU, rng), random_trash(TAU, rng)) for _ in range(TRIALS)
) / TRIALS
print(f"random pair      mean tdist = {unrelated:.4f}   (expected 0.5)")

parent = random_trash(TAU, rng)
mutant_distances = {tdist(parent, flip_one_bit(parent, rng)) for _ in range(TRIALS)}
print(f"mutated child    tdist      = {sorted(mutant_distances)}   (expected [1/{TAU} = {1 / TAU}])")

crossed = sum(
    tdist(uniform_cross(a := random_trash(TAU, rng), random_trash(TAU, rng), rng), a)
    for _ in range(TRIALS)
) / TRIALS
print(f"crossover child  mean tdist = {crossed:.4f}   (expected 0.25)")

print("\nWhy 0.25 and not 0.5: the child shares every bit where the parents")
print("agree (half the positions on average) and half of the rest.")
