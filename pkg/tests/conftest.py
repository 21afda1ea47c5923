"""Shared corpus: the small stock of algebras, morphisms and coefficient
systems that every test module draws from."""

import pytest

from yamaguti import (
    LieYamagutiAlgebra,
    MorphismLYA,
    from_lie,
    self_morphism_representation,
)
from yamaguti.linalg import Matrix


def lie_table(d, entries):
    """Bracket table from {(i,j): vector} given only for i<j (0-based)."""
    z = tuple(0 for _ in range(d))
    tab = [[z] * d for _ in range(d)]
    for (i, j), vec in entries.items():
        tab[i][j] = tuple(vec)
        tab[j][i] = tuple(-x for x in vec)
    return tab


def nonabelian2():
    return from_lie(2, lie_table(2, {(0, 1): (1, 0)}))


def sl2():
    return from_lie(
        3,
        lie_table(
            3,
            {
                (0, 1): (0, 0, 1),   # [e, f] = h
                (0, 2): (-2, 0, 0),  # [e, h] = -2e
                (1, 2): (0, 2, 0),   # [f, h] = 2f
            },
        ),
    )


def heisenberg3():
    return from_lie(3, lie_table(3, {(0, 1): (0, 0, 1)}))


def corpus_algebras():
    return {
        "abelian1": LieYamagutiAlgebra.abelian(1),
        "abelian2": LieYamagutiAlgebra.abelian(2),
        "abelian3": LieYamagutiAlgebra.abelian(3),
        "nonabelian2": nonabelian2(),
        "sl2": sl2(),
        "heisenberg3": heisenberg3(),
    }


def corpus_morphisms():
    algs = corpus_algebras()
    L = algs["nonabelian2"]
    incl = MorphismLYA(
        algs["abelian1"], L, Matrix([[0], [1]])
    )  # e1 |-> e2, a valid embedding of the line
    scale = MorphismLYA(L, L, Matrix([[2, 0], [0, 1]]))
    return {
        "id_abelian1": MorphismLYA.identity(algs["abelian1"]),
        "id_nonabelian2": MorphismLYA.identity(L),
        "id_sl2": MorphismLYA.identity(algs["sl2"]),
        "id_heisenberg3": MorphismLYA.identity(algs["heisenberg3"]),
        "zero_abelian2": MorphismLYA.zero(algs["abelian2"], algs["abelian2"]),
        "incl_line_nonabelian2": incl,
        "scale_nonabelian2": scale,
    }


@pytest.fixture(scope="session")
def algebras():
    return corpus_algebras()


@pytest.fixture(scope="session")
def morphisms():
    return corpus_morphisms()


@pytest.fixture(scope="session")
def self_reps(morphisms):
    return {name: self_morphism_representation(phi) for name, phi in morphisms.items()}
