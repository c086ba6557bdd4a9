import random
from fractions import Fraction

import pytest

import skewclifford as sk

NONZERO_SMALL = [
    Fraction(1),
    Fraction(2),
    Fraction(3),
    Fraction(-1),
    Fraction(-2),
    Fraction(1, 2),
    Fraction(-1, 2),
    Fraction(1, 3),
]


def example21_mu():
    return sk.validate_mu([[1, 2, 1], [Fraction(1, 2), 1, 1], [1, 1, 1]])


def example21_matrices(mu):
    grids = (
        [[2, 0, 0], [0, 0, 0], [0, 0, 0]],
        [[0, 0, 0], [0, 2, 0], [0, 0, 0]],
        [[0, 1, 0], [Fraction(1, 2), 0, 0], [0, 0, 2]],
    )
    return [sk.check_mu_symmetric(g, mu) for g in grids]


@pytest.fixture(scope="session")
def ex21():
    """Worked-example data: (mu, matrices, presentation, bound-8 Groebner data)."""
    mu = example21_mu()
    matrices = example21_matrices(mu)
    pres = sk.build_gsca(mu, matrices)
    gb = pres.groebner(8)
    return mu, matrices, pres, gb


def random_mu(rng: random.Random, n: int) -> "sk.MuMatrix":
    grid = [[Fraction(1)] * n for _ in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            v = rng.choice(NONZERO_SMALL)
            grid[i][j] = v
            grid[j][i] = 1 / v
    return sk.validate_mu(grid)


def random_mu_symmetric(rng: random.Random, mu: "sk.MuMatrix") -> "sk.MuSymmetricMatrix":
    n = mu.n
    grid = [[Fraction(0)] * n for _ in range(n)]
    for i in range(n):
        grid[i][i] = Fraction(rng.randint(-2, 2))
        for j in range(i + 1, n):
            v = Fraction(rng.randint(-2, 2))
            grid[i][j] = v
            grid[j][i] = v / mu[i, j]
    return sk.check_mu_symmetric(grid, mu)


def random_gca(rng: random.Random, n: int = 3) -> "sk.CliffordPresentation":
    """A GCA with independent matrices and a base-point-free quadric system."""
    while True:
        grids = []
        for _ in range(n):
            g = [[Fraction(0)] * n for _ in range(n)]
            for i in range(n):
                g[i][i] = Fraction(rng.randint(-2, 2))
                for j in range(i + 1, n):
                    v = Fraction(rng.randint(-2, 2))
                    g[i][j] = v
                    g[j][i] = v
            grids.append(g)
        try:
            pres = sk.build_gca(grids)
        except ValueError:
            continue
        system = sk.quadric_system_of(pres)
        bpf = sk.base_point_free_check(system, 2 * n + 2, assume_normalizing=True)
        if bpf.base_point_free:
            return pres


def random_degree_one(rng: random.Random, n: int) -> "sk.NcPoly":
    while True:
        p = sk.NcPoly({(i,): Fraction(rng.randint(-2, 2)) for i in range(n)})
        if p:
            return p
