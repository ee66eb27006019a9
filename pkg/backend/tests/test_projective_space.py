import numpy as np
import pytest

from errors import GeometryError
from field_service import FieldSpec
from geometry_service import (
    Bitset,
    Hyperplane,
    ProjectivePoint,
    enumerate_lines,
    enumerate_planes,
    enumerate_points,
    gaussian_binomial,
    hyperplanes_through,
    incident,
    is_arc,
    meet,
    point_count,
    span,
)
from geometry_service.bitset import popcount_rows
from geometry_service.linalg import nullspace, rank, row_reduce


def P(field, text):
    return ProjectivePoint.parse(field, text)


def test_counting_formulas():
    assert point_count(2) == 31
    assert point_count(4) == 341
    assert point_count(8) == 4681
    assert gaussian_binomial(5, 2, 2) == 155
    assert gaussian_binomial(5, 2, 4) == 5797
    assert gaussian_binomial(5, 3, 4) == 5797
    assert gaussian_binomial(5, 6, 4) == 0


def test_points_are_normalised_and_sorted(pg4):
    points = enumerate_points(pg4.field)
    assert len(points) == 341
    assert str(points[0]) == "0:0:0:0:1"
    assert str(points[-1]) == "1:3:3:3:3"
    coords = [p.coords for p in points]
    assert coords == sorted(coords)
    assert all(next(c for c in p.coords if c) == 1 for p in points)


def test_parse_normalises_and_validates(pg4):
    f = pg4.field
    assert str(P(f, "2:0:3:0:0")) == "1:0:2:0:0"  # scaled by 2^-1 = 3
    with pytest.raises(GeometryError):
        P(f, "0:0:0:0:0")
    with pytest.raises(ValueError):
        P(f, "1:0:0:0")
    with pytest.raises(ValueError):
        P(f, "1:0:4:0:0")


def test_incidence(pg4):
    f = pg4.field
    assert incident(P(f, "1:0:0:0:0"), Hyperplane.parse(f, "0:1:0:0:0"))
    assert not incident(P(f, "1:0:0:0:0"), Hyperplane.parse(f, "1:0:0:0:0"))
    assert incident(P(f, "1:1:0:0:0"), Hyperplane.parse(f, "1:1:0:0:0"))  # 1 + 1 = 0


def test_incidence_matrix_rows(pg4):
    assert pg4.n == 341
    assert np.all(popcount_rows(pg4.incidence) == 85)
    i, j = 17, 200
    assert (i in pg4.row(j)) == (j in pg4.row(i))


def test_span_and_meet(pg4):
    f = pg4.field
    e = [P(f, s) for s in ("1:0:0:0:0", "0:1:0:0:0", "0:0:1:0:0", "0:0:0:1:0")]
    line = span(e[:2])
    assert line.dim == 1
    assert len(line.points()) == 5
    assert span([e[0], e[0]]).dim == 0
    assert span(e).dim == 3

    plane = meet(Hyperplane.parse(f, "0:0:0:1:0"), Hyperplane.parse(f, "0:0:0:0:1"))
    assert plane.dim == 2
    assert plane == span(e[:3])

    assert meet(span(e[:2]), span([e[2], e[3]])) is None
    point = meet(span([e[0], e[3]]), Hyperplane.parse(f, "1:0:0:0:0"))
    assert point.dim == 0
    assert point.contains(e[3])

    with pytest.raises(GeometryError):
        span([])


def test_hyperplanes_through(pg4):
    f = pg4.field
    a, b, c = P(f, "1:0:0:0:0"), P(f, "0:1:0:0:0"), P(f, "0:0:1:0:0")
    assert len(hyperplanes_through(a, pg4)) == 85
    assert len(hyperplanes_through(span([a, b]), pg4)) == 21
    through_plane = hyperplanes_through(span([a, b, c]), pg4)
    assert len(through_plane) == 5
    assert all(incident(p, h) for h in through_plane for p in (a, b, c))


def test_line_and_plane_tables(pg4):
    lines, planes = pg4.lines, pg4.planes
    assert len(lines) == 5797 and len(planes) == 5797
    assert lines.points.shape == (5797, 5)
    assert lines.hyperplanes.shape == (5797, 21)
    assert planes.points.shape == (5797, 21)
    assert planes.hyperplanes.shape == (5797, 5)
    assert len(np.unique(lines.points, axis=0)) == 5797
    assert len(np.unique(planes.points, axis=0)) == 5797
    # every solid through a plane contains every point of it
    for i in (0, 1000, 5796):
        for h in planes.hyperplanes[i]:
            assert pg4.row(int(h)).mask()[planes.points[i]].all()


def test_enumerate_lines_round_trip(pg2):
    lines = enumerate_lines(pg2)
    assert len(lines) == 155
    for i in (0, 77, 154):
        assert pg2.subspace_points(lines[i]).indices().tolist() == pg2.lines.points[i].tolist()


def test_enumerate_planes(pg2):
    planes = enumerate_planes(pg2)
    assert len(planes) == 155
    assert all(plane.dim == 2 for plane in planes)
    assert len(set(planes)) == 155


def test_subspace_points(pg4):
    f = pg4.field
    plane = span([P(f, "1:0:0:0:0"), P(f, "0:1:0:0:0"), P(f, "0:0:1:0:0")])
    assert pg4.subspace_points(plane).count() == 21
    assert pg4.subspace_points(Hyperplane.parse(f, "0:0:0:0:1").as_subspace()).count() == 85


def test_is_arc(pg4):
    f = pg4.field
    conic = [P(f, f"1:{t:x}:{f.square_bits(t):x}:0:0") for t in range(4)]
    assert is_arc(conic)
    assert not is_arc(conic + [P(f, "1:1:0:0:0")] + [P(f, "0:1:1:0:0")])
    assert not is_arc([P(f, "1:0:0:0:0"), P(f, "0:1:0:0:0"), P(f, "1:1:0:0:0")])


def test_bitset_operations():
    a = Bitset.from_indices([0, 3, 9], 10)
    b = Bitset.from_indices([3, 4], 10)
    assert (a & b).indices().tolist() == [3]
    assert (a | b).count() == 4
    assert (a ^ b).indices().tolist() == [0, 4, 9]
    assert (a - b).indices().tolist() == [0, 9]
    assert (~a).count() == 7
    assert 9 in a and 5 not in a
    assert Bitset.from_indices([3], 10).issubset(a)
    assert a == Bitset.from_mask(a.mask())
    with pytest.raises(IndexError):
        Bitset.from_indices([10], 10)


def test_row_reduce_and_nullspace():
    f = FieldSpec.from_order(4)
    R, pivots = row_reduce(f, [[2, 2, 0], [1, 1, 1]])
    assert pivots == [0, 2]
    assert R.tolist() == [[1, 1, 0], [0, 0, 1]]
    assert rank(f, [[1, 2, 3], [2, 3, 1]]) == 1  # second row = 2 * first
    basis = nullspace(f, [[1, 1, 0], [0, 0, 1]], 3)
    assert basis.tolist() == [[1, 1, 0]]
    assert nullspace(f, np.eye(3, dtype=np.uint8), 3).shape == (0, 3)
