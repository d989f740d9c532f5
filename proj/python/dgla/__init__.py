"""Exact computations in free differential graded Lie algebra models of cells."""

from ._core import (
    DglaError,
    Generator,
    LieElement,
    Model,
    banana_coefficients,
    banana_model,
    banana_shelling,
    bch,
    bigon_model,
    bracket,
    check_banana_symmetry,
    check_boundary,
    check_cube_morphism,
    check_d_squared,
    check_locality,
    check_mc,
    cube_model,
    cube_shelling,
    element_from_json,
    exp_ad,
    flow,
    interval_model,
    mu2,
    mun,
    normalize,
    polyhedron_model,
    q_operator,
    twist_cell,
)

__all__ = [name for name in dir() if not name.startswith("_")]
