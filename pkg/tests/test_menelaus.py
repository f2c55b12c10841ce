import pytest

from cdlplab.errors import (
    DegenerateError,
    NoIntersectionError,
    PreconditionFailedError,
    SamplingFailedError,
)
from cdlplab.fields import seeded_rng
from cdlplab.menelaus import (
    Grid7,
    ProjectiveLine,
    TwelvePoints,
    bipartite_product_identity,
    case2_reduction_check,
    classic_menelaus_check,
    complete_configuration,
    grid_points,
    project_intersection,
    sample_degenerate_grid,
    sample_grid,
    twelve_det,
    twelve_det_cross_check,
)


def random_points(p, rng):
    return TwelvePoints(
        p,
        tuple(rng.randrange(p) for _ in range(4)),
        tuple(rng.randrange(p) for _ in range(4)),
        tuple(rng.randrange(p) for _ in range(4)),
    )


def test_project_intersection_examples():
    p = 11
    diag = ProjectiveLine(p, 1, -1, 0)  # y = x
    vert3 = ProjectiveLine.vertical(p, 3)
    assert project_intersection(diag, vert3) == 3
    l1 = ProjectiveLine.from_slope_intercept(p, 2, 1)
    l2 = ProjectiveLine.from_slope_intercept(p, 3, 6)
    assert project_intersection(l1, l2) == 6
    with pytest.raises(NoIntersectionError):
        project_intersection(
            ProjectiveLine.from_slope_intercept(p, 1, 0),
            ProjectiveLine.from_slope_intercept(p, 1, 1),
        )
    with pytest.raises(NoIntersectionError):
        project_intersection(diag, ProjectiveLine(p, 1, -1, 0))


def test_grid_invariant_rejects_equal_lines():
    p = 13
    line = ProjectiveLine.from_slope_intercept(p, 2, 3)
    others = [ProjectiveLine.from_slope_intercept(p, a, a + 1) for a in (4, 5, 6)]
    with pytest.raises(ValueError):
        Grid7(letters=(line, others[0], others[1]), numbered=(line, *others))


def test_vertical_numbered_line_collapses_row():
    p = 13
    letters = tuple(ProjectiveLine.from_slope_intercept(p, a, 2 * a + 1) for a in (1, 2, 3))
    numbered = (
        ProjectiveLine.vertical(p, 5),
        ProjectiveLine.from_slope_intercept(p, 7, 1),
        ProjectiveLine.from_slope_intercept(p, 8, 2),
        ProjectiveLine.from_slope_intercept(p, 9, 4),
    )
    pts = grid_points(Grid7(letters=letters, numbered=numbered))
    assert pts.xs[0] == pts.ys[0] == pts.zs[0] == 5
    assert twelve_det(pts) == 0


def test_sampled_grids_satisfy_identity():
    for p in (13, 101, 1009, 10007):
        for i in range(200):
            g = sample_grid(p, seed=("t", p, i), allow_vertical=True)
            assert twelve_det(grid_points(g)) == 0


def test_twelve_det_trivial_zeros():
    p = 101
    rng = seeded_rng("zeros")
    vals = tuple(rng.randrange(p) for _ in range(4))
    other = tuple(rng.randrange(p) for _ in range(4))
    # x_i = y_i for all i kills columns 1 and 3
    assert twelve_det(TwelvePoints(p, vals, vals, other)) == 0


def test_twelve_det_random_nonzero_rate():
    p = 10007
    rng = seeded_rng("sz")
    zeros = sum(twelve_det(random_points(p, rng)) == 0 for _ in range(2000))
    # degree-6 polynomial: zero probability at most 6/p per draw
    assert zeros <= max(3, 10 * 2000 * 6 / p)


def test_cross_check():
    p = 1009
    rng = seeded_rng("cc")
    for _ in range(300):
        assert twelve_det_cross_check(random_points(p, rng))
    assert twelve_det_cross_check(TwelvePoints(p, (0,) * 4, (0,) * 4, (0,) * 4))
    for i in range(50):
        g = sample_grid(p, seed=("cc", i))
        assert twelve_det_cross_check(grid_points(g))


def test_product_identity_matches_determinant():
    p = 10007
    rng = seeded_rng("prod")
    for _ in range(1000):
        pts = random_points(p, rng)
        lhs, rhs = bipartite_product_identity(pts)
        assert (lhs - rhs) % p == twelve_det(pts)
    for i in range(50):
        pts = grid_points(sample_grid(p, seed=("prod", i)))
        lhs, rhs = bipartite_product_identity(pts)
        assert lhs == rhs


def test_product_identity_generic_points_differ():
    p = 10007
    rng = seeded_rng("gen")
    diffs = 0
    for _ in range(50):
        lhs, rhs = bipartite_product_identity(random_points(p, rng))
        diffs += lhs != rhs
    assert diffs >= 45  # random points rarely satisfy the identity


def test_classic_menelaus():
    p = 10007
    rng = seeded_rng("classic")
    for _ in range(500):
        slopes = rng.sample(range(p), 4)
        lines = [ProjectiveLine.from_slope_intercept(p, a, rng.randrange(p)) for a in slopes]
        assert classic_menelaus_check(lines)


def test_classic_menelaus_concurrent_triple():
    # three of the four lines through one point: coincident abscissas, the
    # identity still balances
    p = 1009
    rng = seeded_rng("conc")
    for _ in range(50):
        x0, y0 = rng.randrange(p), rng.randrange(p)
        slopes = rng.sample(range(1, p), 4)
        lines = [
            ProjectiveLine.from_slope_intercept(p, a, (y0 - a * x0) % p)
            for a in slopes[:3]
        ]
        lines.append(ProjectiveLine.from_slope_intercept(p, slopes[3], rng.randrange(p)))
        assert classic_menelaus_check(lines)


def test_classic_menelaus_perturbed_fails():
    # perturbing one abscissa by 1 breaks the product identity generically
    p = 10007
    rng = seeded_rng("pert")
    broken = 0
    for _ in range(100):
        slopes = rng.sample(range(p), 4)
        a1, a2, a3, a4 = slopes
        b = [rng.randrange(p) for _ in range(4)]

        def ix(i, j):
            return (b[j] - b[i]) * pow(slopes[i] - slopes[j], -1, p) % p

        xA, xB, xC = ix(0, 1), ix(1, 2), ix(2, 0)
        xD, xE, xF = (ix(1, 3) + 1) % p, ix(0, 3), ix(2, 3)
        lhs = (xA - xD) * (xB - xF) * (xC - xE) % p
        rhs = (xB - xD) * (xC - xF) * (xA - xE) % p
        if lhs != rhs:
            broken += 1
    assert broken >= 95


def test_complete_configuration_roundtrip():
    p = 1009
    for i in range(100):
        g = sample_grid(p, seed=("rt", i))
        pts = grid_points(g)
        eleven = (*pts.xs, *pts.ys, *pts.zs[:3])
        try:
            z4, witness = complete_configuration(p, eleven, seed=i)
        except DegenerateError:
            continue
        assert z4 == pts.zs[3]
        assert grid_points(witness) == pts


def test_complete_configuration_random_generic():
    p = 1009
    rng = seeded_rng("gen11")
    realized = 0
    for _ in range(50):
        eleven = tuple(rng.sample(range(p), 11))
        try:
            z4, witness = complete_configuration(p, eleven, seed=1)
        except DegenerateError:
            continue
        pts = grid_points(witness)
        assert (*pts.xs, *pts.ys, *pts.zs[:3]) == eleven
        assert pts.zs[3] == z4
        assert twelve_det(pts) == 0
        realized += 1
    assert realized >= 45


def test_complete_configuration_degenerate():
    p = 1009
    # x_i = y_i for the first three rows annihilates the z4 dependence
    with pytest.raises(DegenerateError):
        complete_configuration(p, (1, 2, 3, 4, 1, 2, 3, 9, 11, 12, 13))


def test_case2_reduction():
    p = 1009
    for i in range(50):
        g = sample_degenerate_grid(p, seed=i)
        assert case2_reduction_check(g)
    regular = sample_grid(p, seed=("reg", 0))
    with pytest.raises(PreconditionFailedError):
        case2_reduction_check(regular)


def test_twelve_det_symmetry():
    # permuting letter roles and renumbering rows together preserves the
    # zero/nonzero status
    from itertools import permutations

    p = 1009
    rng = seeded_rng("sym")
    for _ in range(20):
        pts = random_points(p, rng)
        base_zero = twelve_det(pts) == 0
        cols = (pts.xs, pts.ys, pts.zs)
        for role in permutations(range(3)):
            for row in permutations(range(4)):
                permuted = TwelvePoints(
                    p,
                    tuple(cols[role[0]][r] for r in row),
                    tuple(cols[role[1]][r] for r in row),
                    tuple(cols[role[2]][r] for r in row),
                )
                assert (twelve_det(permuted) == 0) == base_zero


def test_sample_grid_minimum_modulus():
    g = sample_grid(13, seed=0)
    assert twelve_det(grid_points(g)) == 0
    with pytest.raises(ValueError):
        sample_grid(11, seed=0)


def test_grid_json_roundtrip():
    g = sample_grid(1009, seed=5)
    assert Grid7.from_json(g.to_json()) == g
    pts = grid_points(g)
    assert TwelvePoints.from_json(pts.to_json()) == pts
