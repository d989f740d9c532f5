from fractions import Fraction

import pytest

import dgla


@pytest.fixture
def xy():
    return dgla.LieElement(dgla.Generator("x", 0)), dgla.LieElement(dgla.Generator("y", 0))


def test_bch_coefficients(xy):
    x, y = xy
    z = dgla.bch([x, y], 2)
    expected = x + y + Fraction(1, 2) * dgla.bracket(x, y) + Fraction(1, 12) * dgla.bracket(x, dgla.bracket(x, y))
    expected = expected - Fraction(1, 12) * dgla.bracket(y, dgla.bracket(x, y))
    assert z.equals(expected, 2)
    assert str(z) == "(1)*x + (1)*y + (1/2)*br(x,y) + (1/12)*br(x,br(x,y)) + (-1/12)*br(y,br(x,y))"


def test_mu2_is_symmetric(xy):
    x, y = xy
    assert dgla.mu2(x, y, 3).equals(dgla.mu2(y, x, 3), 3)


def test_mun_order_limit(xy):
    x, y = xy
    z = dgla.LieElement(dgla.Generator("z", 0))
    assert len(dgla.mun([x, y, z], 2)) > 0
    with pytest.raises(dgla.DglaError, match="unavailable"):
        dgla.mun([x, y, z], 3)


def test_flow_on_interval():
    m = dgla.interval_model(4)
    a, b, e = (dgla.LieElement(m.generator(s)) for s in "abe")
    assert dgla.flow(e, a, m).equals(b, 4)
    assert str(m.diff("e")).startswith("(-1)*a + (1)*b")


def test_model_json_round_trip():
    m = dgla.banana_model(3, 2)
    again = dgla.Model.from_json(m.to_json())
    assert again.to_json() == m.to_json()
    assert [g.name for g in again.generators] == [g.name for g in m.generators]


def test_checks():
    m = dgla.banana_model(3, 2)
    assert dgla.check_d_squared(m, 2)["pass"]
    assert dgla.check_boundary(m)["pass"]
    assert dgla.check_locality(m)["pass"]
    assert dgla.check_banana_symmetry(m, "tau", 2)["pass"]
    assert not dgla.check_banana_symmetry(dgla.banana_model(3, 3), "iota", 3)["pass"]
    assert dgla.check_cube_morphism(2)["pass"]


def test_polyhedron_from_shelling():
    spec = dgla.cube_shelling()
    m = dgla.polyhedron_model(spec, 2)
    assert dgla.check_d_squared(m, 2)["pass"]
    spec["faces"] = spec["faces"][:-1]
    with pytest.raises(dgla.DglaError):
        dgla.polyhedron_model(spec, 2)


def test_terms_and_coefficients(xy):
    x, y = xy
    terms = (Fraction(1, 3) * dgla.bracket(x, y)).terms()
    assert terms == [({"br": [{"gen": "x"}, {"gen": "y"}]}, Fraction(1, 3))]
    assert dgla.element_from_json((x - y).to_json(), [dgla.Generator("x", 0), dgla.Generator("y", 0)]).equals(x - y, 1)
