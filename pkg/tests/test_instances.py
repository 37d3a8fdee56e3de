import itertools
import random

import pytest

from flipdist import (
    InstanceFormatError,
    InvalidTriangulation,
    PointSet,
    Triangulation,
    bfs_distance,
    generate_instance,
    parse_instance,
    render_instance,
    scan_triangulation,
)
from flipdist.geometry import Point, orientation
from flipdist.instances import GenerationError, Instance

SQUARE_TEXT = """\
flipdist v1
points 4
0 0
1 0
1 1
0 1
initial 2
0 1 2
0 2 3
final 2
0 1 3
1 2 3
k 1
"""


def test_parse_square():
    inst = parse_instance(SQUARE_TEXT)
    assert inst.points == [(0, 0), (1, 0), (1, 1), (0, 1)]
    assert inst.initial == [(0, 1, 2), (0, 2, 3)]
    assert inst.final == [(0, 1, 3), (1, 2, 3)]
    assert inst.k == 1
    a, b = inst.triangulations()
    assert bfs_distance(a, b) == 1


def test_parse_ignores_blank_lines():
    spaced = SQUARE_TEXT.replace("initial 2", "\ninitial 2\n")
    assert parse_instance(spaced) == parse_instance(SQUARE_TEXT)


def test_render_round_trip():
    inst = parse_instance(SQUARE_TEXT)
    assert parse_instance(render_instance(inst)) == inst
    # k is optional
    inst.k = None
    again = parse_instance(render_instance(inst))
    assert again.k is None and again.points == inst.points


def test_parse_errors_carry_line_numbers():
    cases = [
        ("flipdist v2\npoints 1\n0 0\n", 1, "header"),
        ("flipdist v1\npoints x\n", 2, "non-integer"),
        ("flipdist v1\npoints 2\n0 0\n1 z\n", 4, "non-integer"),
        ("flipdist v1\npoints 1\n0 0\ninitial 1\n0 1\n", 5, "expected 3 fields"),
        ("flipdist v1\npoints 1\n0 0\n", 4, "end of file"),
        (SQUARE_TEXT.replace("k 1", "q 1"), 13, "expected 'k K'"),
        (SQUARE_TEXT + "extra 1\n", 14, "trailing"),
        (SQUARE_TEXT.replace("k 1", "k -2"), 13, "nonnegative"),
    ]
    for text, line, fragment in cases:
        with pytest.raises(InstanceFormatError, match=fragment) as err:
            parse_instance(text)
        assert err.value.line == line, text


def test_parse_then_build_reports_validation_error():
    broken = SQUARE_TEXT.replace("0 2 3\n", "")
    broken = broken.replace("initial 2", "initial 1")
    inst = parse_instance(broken)
    with pytest.raises(InvalidTriangulation, match="expected 2 triangles, got 1"):
        inst.triangulations()


def test_scan_triangulation_square():
    tris = scan_triangulation([(0, 0), (1, 0), (1, 1), (0, 1)])
    Triangulation.build([(0, 0), (1, 0), (1, 1), (0, 1)], tris)


def test_scan_triangulation_handles_collinear_runs():
    pts = [(0, 0), (1, 0), (2, 0), (0, 1), (2, 1)]
    Triangulation.build(pts, scan_triangulation(pts))
    on_a_line_first = [(0, 0), (0, 1), (0, 2), (1, 1)]
    Triangulation.build(on_a_line_first, scan_triangulation(on_a_line_first))


def test_scan_triangulation_random_sets_always_valid():
    rng = random.Random(41)
    for _ in range(25):
        n = rng.randrange(4, 11)
        inst = generate_instance(n, "random", 0, rng.randrange(10**6))
        assert len(inst.initial) == 2 * n - PointSet(inst.points).hull_size - 2


def test_generate_deterministic():
    a = generate_instance(7, "random", 3, 99)
    b = generate_instance(7, "random", 3, 99)
    assert a == b


def test_generate_valid_and_within_scramble_distance():
    for seed in range(12):
        scramble = seed % 4
        inst = generate_instance(6, "random", scramble, 4000 + seed)
        t0, t1 = inst.triangulations()
        assert bfs_distance(t0, t1) <= scramble


def test_generate_scramble_zero_is_identity():
    inst = generate_instance(6, "random", 0, 77)
    assert inst.initial == inst.final


def test_generate_convex_positions():
    for seed in range(6):
        inst = generate_instance(7, "convex", 2, 4100 + seed)
        ps = PointSet(inst.points)
        assert ps.hull_size == 7
        inst.triangulations()


def test_generate_general_position():
    inst = generate_instance(8, "random", 0, 4200)
    pts = [Point(i, x, y) for i, (x, y) in enumerate(inst.points)]
    for p, q, r in itertools.combinations(pts, 3):
        assert orientation(p, q, r) != 0


def test_generate_rejects_bad_parameters():
    with pytest.raises(GenerationError):
        generate_instance(2, "random", 0, 1)
    with pytest.raises(GenerationError):
        generate_instance(5, "pentagonal", 0, 1)
    with pytest.raises(GenerationError):
        generate_instance(5, "random", -1, 1)


def test_instance_round_trip_via_text():
    inst = generate_instance(7, "random", 3, 11)
    inst.k = 3
    assert parse_instance(render_instance(inst)) == inst
