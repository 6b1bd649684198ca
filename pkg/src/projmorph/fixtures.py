"""Small algebras used throughout the tests and experiment scripts."""
from __future__ import annotations

from functools import cache

from .algebra import BoundQuiverAlgebra, build_algebra


@cache
def A2() -> BoundQuiverAlgebra:
    """Path algebra of 2 -> 1."""
    return build_algebra([1, 2], [("alpha", 2, 1)], name="A2")


@cache
def A3r() -> BoundQuiverAlgebra:
    """3 -> 2 -> 1 with the composite of the two arrows set to zero."""
    return build_algebra([1, 2, 3], [("alpha", 3, 2), ("beta", 2, 1)],
                         [[(1, ["alpha", "beta"])]], name="A3r")


@cache
def A3() -> BoundQuiverAlgebra:
    """Hereditary path algebra of 3 -> 2 -> 1."""
    return build_algebra([1, 2, 3], [("alpha", 3, 2), ("beta", 2, 1)], name="A3")


@cache
def field() -> BoundQuiverAlgebra:
    """The one-vertex algebra k."""
    return build_algebra([1], [], name="k")


@cache
def dual_numbers() -> BoundQuiverAlgebra:
    """k[x]/(x^2), a local selfinjective algebra."""
    return build_algebra([1], [("x", 1, 1)], [[(1, ["x", "x"])]], name="k[x]/x^2")


@cache
def A3_source() -> BoundQuiverAlgebra:
    """1 <- 2 -> 3."""
    return build_algebra([1, 2, 3], [("a", 2, 1), ("b", 2, 3)], name="A3s")


FIXTURES = {
    "A2": A2,
    "A3r": A3r,
    "A3": A3,
    "k": field,
    "k[x]/x^2": dual_numbers,
    "A3s": A3_source,
}
