import pytest

from permutoid_lab.groups import cayley_ball, parse_presentation, todd_coxeter

POOL_PRESENTATIONS = {
    "z2": "gens: a\nrels: a^2",
    "z3": "gens: a\nrels: a^3",
    "z4": "gens: a\nrels: a^4",
    "z5": "gens: a\nrels: a^5",
    "z6": "gens: a\nrels: a^6",
    "s3": "gens: a, b\nrels: a^2, b^3, a b a b",
    "q8": "gens: a, b\nrels: a^4, a^2 b^-2, b^-1 a b a",
}

POOL_ORDERS = {"z2": 2, "z3": 3, "z4": 4, "z5": 5, "z6": 6, "s3": 6, "q8": 8}


@pytest.fixture(scope="session")
def pool_groups():
    """Realized groups for the whole test pool, built once."""
    return {
        name: todd_coxeter(parse_presentation(text), 1000)
        for name, text in POOL_PRESENTATIONS.items()
    }


@pytest.fixture(scope="session")
def pool_presentations():
    return {name: parse_presentation(text) for name, text in POOL_PRESENTATIONS.items()}


def saturating_radius(group) -> int:
    """Smallest r with the whole group inside the radius-r ball."""
    r = 1
    while cayley_ball(group, r).size < group.order:
        r += 1
    return r
