"""The robot-routing arena, rendered in ASCII.

A point robot starts left of a wall and must round it to reach the goal
region on the right.  Each of its ten actions is clamped to an L1 step
budget of 0.5 and applied atomically -- a move that would leave the arena
or cut through the wall is rejected and the robot stays put.  One fitness
point per step spent inside the goal.
"""

import numpy as np

from genediv import DEFAULT_ARENA, random_genome, simulate

COLS, ROWS = 61, 21


def render(arena, trajectory):
    grid = [[" "] * COLS for _ in range(ROWS)]

    def plot(x, y, ch, only_blank=False):
        c = round(x * (COLS - 1))
        r = ROWS - 1 - round(y * (ROWS - 1))
        if 0 <= r < ROWS and 0 <= c < COLS and (not only_blank or grid[r][c] == " "):
            grid[r][c] = ch

    for r in range(ROWS):
        for c in range(COLS):
            x, y = c / (COLS - 1), 1 - r / (ROWS - 1)
            if arena.obstacle.contains(x, y):
                grid[r][c] = "#"
            elif arena.goal.contains(x, y):
                grid[r][c] = "."
    for i, (x, y) in enumerate(trajectory):
        plot(x, y, "S" if i == 0 else chr(ord("a") + i - 1))
    border = "+" + "-" * COLS + "+"
    print(border)
    for row in grid:
        print("|" + "".join(row) + "|")
    print(border)


# a hand-crafted route over the wall: up, across (hugging the wall top), down
route = np.zeros((10, 2))
route[0] = (0.20, 0.30)
route[1] = (0.40, 0.00)
route[2] = (0.20, -0.15)
result = simulate(route)
print(__doc__)
print(f"hand-crafted route: fitness {result.raw_fitness}/10 "
      f"(enters the goal at step 3 and stays)\n")
render(DEFAULT_ARENA, result.trajectory)

# a typical random genome, for contrast
rng = np.random.default_rng(3)
random_result = simulate(random_genome(rng))
print(f"\nrandom genome: fitness {random_result.raw_fitness}/10\n")
render(DEFAULT_ARENA, random_result.trajectory)
print("\nLegend: # wall, . goal, S start, a..j positions after steps 1..10.")
