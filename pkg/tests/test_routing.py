import numpy as np
import pytest

from genediv import (
    DEFAULT_ARENA,
    GENOME_LENGTH,
    Arena,
    Rect,
    RoutingProblem,
    clamp_action,
    crossover_genome,
    domain_distance,
    mutate_genome,
    random_genome,
    segment_crosses_interior,
    simulate,
)


def zeros(n=GENOME_LENGTH):
    return np.zeros((n, 2))


# ----------------------------------------------------------------------
# geometry primitives
# ----------------------------------------------------------------------

def test_rect_validation():
    with pytest.raises(ValueError):
        Rect(1.0, 0.0, 0.0, 1.0)
    with pytest.raises(ValueError):
        Rect(0.0, float("nan"), 1.0, 1.0)


def test_rect_contains_is_closed():
    r = Rect(0.0, 0.0, 1.0, 1.0)
    assert r.contains(0.0, 0.0)
    assert r.contains(1.0, 0.5)
    assert not r.contains(1.0001, 0.5)


def test_arena_validation():
    bounds = Rect(0.0, 0.0, 1.0, 1.0)
    goal = Rect(0.8, 0.8, 0.9, 0.9)
    obstacle = Rect(0.4, 0.4, 0.6, 0.6)
    with pytest.raises(ValueError):
        Arena(bounds, (2.0, 0.5), goal, obstacle)
    with pytest.raises(ValueError):
        Arena(bounds, (0.1, 0.1), Rect(0.9, 0.9, 1.1, 1.1), obstacle)
    with pytest.raises(ValueError):
        Arena(bounds, (0.1, 0.1), goal, Rect(-0.1, 0.4, 0.6, 0.6))
    with pytest.raises(ValueError):
        Arena(bounds, (0.5, 0.5), goal, obstacle)  # start inside the obstacle


def test_clamp_action_l1():
    assert clamp_action(0.3, 0.1) == (0.3, 0.1)
    dx, dy = clamp_action(0.6, 0.2)
    assert abs(dx) + abs(dy) == pytest.approx(0.5)
    assert dx / dy == pytest.approx(3.0)  # direction preserved
    dx, dy = clamp_action(-0.6, 0.6)
    assert abs(dx) + abs(dy) == pytest.approx(0.5)
    assert dx == pytest.approx(-dy)


def test_clamp_action_linf():
    assert clamp_action(0.5, 0.5, "linf") == (0.5, 0.5)
    dx, dy = clamp_action(0.8, 0.2, "linf")
    assert max(abs(dx), abs(dy)) == pytest.approx(0.5)
    assert dy == pytest.approx(0.125)


def test_clamp_action_rejects_bad_input():
    with pytest.raises(ValueError):
        clamp_action(float("nan"), 0.0)
    with pytest.raises(ValueError):
        clamp_action(0.1, 0.1, "l7")


def test_segment_crossing_detection():
    rect = Rect(0.4, 0.0, 0.6, 0.8)
    assert segment_crosses_interior((0.1, 0.5), (0.9, 0.5), rect)
    assert segment_crosses_interior((0.45, 0.1), (0.55, 0.2), rect)  # fully inside
    # along the top edge: boundary contact only
    assert not segment_crosses_interior((0.3, 0.8), (0.7, 0.8), rect)
    # along the right edge
    assert not segment_crosses_interior((0.6, 0.1), (0.6, 0.9), rect)
    # passing above
    assert not segment_crosses_interior((0.1, 0.9), (0.9, 0.9), rect)


def test_segment_corner_contact():
    # exactly representable coordinates so the corner touch is exact
    rect = Rect(0.25, 0.0, 0.75, 0.5)
    # diagonal touching the top-left corner only
    assert not segment_crosses_interior((0.125, 0.375), (0.375, 0.625), rect)
    # diagonal passing through the corner region into the interior
    assert segment_crosses_interior((0.125, 0.625), (0.375, 0.375), rect)


def test_segment_crossing_degenerate_point():
    rect = Rect(0.4, 0.0, 0.6, 0.8)
    assert segment_crosses_interior((0.5, 0.4), (0.5, 0.4), rect)
    assert not segment_crosses_interior((0.4, 0.4), (0.4, 0.4), rect)


# ----------------------------------------------------------------------
# simulation
# ----------------------------------------------------------------------

def test_simulate_reaches_goal_over_the_wall():
    genome = zeros()
    genome[0] = (0.2, 0.3)     # -> (0.3, 0.8)
    genome[1] = (0.4, 0.0)     # -> (0.7, 0.8), grazing the obstacle's top edge
    genome[2] = (0.2, -0.15)   # -> (0.9, 0.65), inside the goal
    result = simulate(genome)
    assert result.raw_fitness == 8
    assert result.trajectory.shape == (11, 2)
    np.testing.assert_allclose(result.trajectory[3], [0.9, 0.65])
    np.testing.assert_allclose(result.trajectory[10], [0.9, 0.65])


def test_simulate_rejects_moves_through_the_wall():
    genome = zeros()
    genome[0] = (0.5, 0.0)  # straight into the obstacle
    result = simulate(genome)
    np.testing.assert_allclose(result.trajectory[1], DEFAULT_ARENA.start)
    assert result.raw_fitness == 0


def test_simulate_rejects_moves_out_of_bounds():
    genome = zeros()
    genome[0] = (-0.2, 0.0)  # would land at x = -0.1
    result = simulate(genome)
    np.testing.assert_allclose(result.trajectory[1], DEFAULT_ARENA.start)


def test_simulate_clamps_oversized_actions():
    genome = zeros()
    genome[0] = (0.0, 3.0)  # clamped to (0.0, 0.5)
    result = simulate(genome)
    np.testing.assert_allclose(result.trajectory[1], [0.1, 1.0])


def test_simulate_scores_one_point_per_step_in_goal():
    arena = Arena(
        bounds=Rect(0.0, 0.0, 1.0, 1.0),
        start=(0.5, 0.5),
        goal=Rect(0.4, 0.4, 0.6, 0.6),
        obstacle=Rect(0.0, 0.0, 0.1, 0.1),
    )
    result = simulate(zeros(), arena)
    assert result.raw_fitness == 10  # steps 1..10 all end in the goal


def test_simulate_fitness_bounds():
    rng = np.random.default_rng(21)
    for _ in range(100):
        fitness = simulate(random_genome(rng)).raw_fitness
        assert 0 <= fitness <= 10


def test_simulate_rejects_bad_genome_shape():
    with pytest.raises(ValueError):
        simulate(np.zeros((10, 3)))


# ----------------------------------------------------------------------
# variation operators and distance
# ----------------------------------------------------------------------

def test_random_genome_shape_and_bounds():
    rng = np.random.default_rng(22)
    g = random_genome(rng)
    assert g.shape == (GENOME_LENGTH, 2)
    assert np.all(g >= -0.5) and np.all(g < 0.5)


def test_mutate_genome_perturbs_exactly_one_action():
    rng = np.random.default_rng(23)
    for _ in range(100):
        g = random_genome(rng)
        h = mutate_genome(g, 0.1, rng)
        differing_rows = np.any(g != h, axis=1)
        assert int(differing_rows.sum()) == 1
    with pytest.raises(ValueError):
        mutate_genome(g, 0.0, rng)


def test_crossover_genome_takes_whole_actions():
    rng = np.random.default_rng(24)
    for _ in range(100):
        a = random_genome(rng)
        b = random_genome(rng)
        child = crossover_genome(a, b, rng)
        for row, ra, rb in zip(child, a, b):
            assert np.array_equal(row, ra) or np.array_equal(row, rb)
    with pytest.raises(ValueError):
        crossover_genome(a, b[:5], rng)


def test_domain_distance():
    a = zeros()
    b = zeros()
    b[0] = (0.1, -0.2)
    b[4] = (0.0, 0.3)
    assert domain_distance(a, b) == pytest.approx(0.6)
    assert domain_distance(a, a) == 0.0
    assert domain_distance(a, b) == domain_distance(b, a)
    with pytest.raises(ValueError):
        domain_distance(a, b[:3])


def test_routing_problem_validation_and_dispatch():
    problem = RoutingProblem()
    rng = np.random.default_rng(25)
    g = problem.random_genome(rng)
    assert problem.evaluate(g) == simulate(g).raw_fitness
    with pytest.raises(ValueError):
        RoutingProblem(step_norm="manhattan")
    with pytest.raises(ValueError):
        RoutingProblem(sigma=-1.0)
