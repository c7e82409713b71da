import itertools
import random
from functools import reduce

import pytest
import sympy
from sympy.polys.matrices import DomainMatrix
from sympy.polys.matrices.normalforms import invariant_factors as sympy_invariant_factors

from conftest import random_instance
from pencilreg.canonical import (
    PolyMatrix,
    char_matrix,
    invariant_factors,
    poly_add,
    poly_divmod,
    poly_mul,
    poly_str,
    reconstruct,
    same_decomposition,
    similar,
    smith_form,
    strictly_equivalent,
)
from pencilreg.errors import UsageError
from pencilreg.field import GF, QQ
from pencilreg.linalg import Matrix, invert
from pencilreg.pencil import (
    BlockKind,
    Pencil,
    block,
    direct_sum,
    random_nonsingular,
    random_regular,
    scramble,
)
from pencilreg.regularize import decompose

x = sympy.symbols("x")


def as_sympy(poly, F):
    """Our coefficient tuple as a sympy expression (residues lifted to ints)."""
    return sum((int(c) if F != QQ else sympy.Rational(int(c.numerator), int(c.denominator))) * x**i
               for i, c in enumerate(poly))


def sympy_domain(F):
    return sympy.QQ[x] if F == QQ else sympy.GF(F.p)[x]


def oracle_factors(D):
    """Invariant factors of xI - D computed by sympy, as monic coefficient lists."""
    F = D.field
    M = sympy.Matrix([[int(v) if F != QQ else sympy.Rational(int(v.numerator), int(v.denominator))
                       for v in row] for row in D.tolist()])
    dom = sympy_domain(F)
    dm = DomainMatrix.from_Matrix(x * sympy.eye(D.nrows) - M).convert_to(dom)
    out = []
    for f in sympy_invariant_factors(dm):
        p = sympy.Poly(dom.to_sympy(f), x, domain=sympy.QQ if F == QQ else sympy.GF(F.p))
        out.append(p.monic())
    return out


def ours_as_polys(D):
    F = D.field
    dom = sympy.QQ if F == QQ else sympy.GF(F.p)
    return [sympy.Poly(as_sympy(f, F), x, domain=dom) for f in invariant_factors(D).factors]


def det_divisor_factors(D):
    """Invariant factors as ratios of gcds of k x k minors (brute force, QQ only)."""
    M = x * sympy.eye(D.nrows) - sympy.Matrix(
        [[sympy.Rational(int(v.numerator), int(v.denominator)) for v in row] for row in D.tolist()])
    n = D.nrows
    divisors = [sympy.Integer(1)]
    for k in range(1, n + 1):
        minors = [M.extract(list(r), list(c)).det()
                  for r in itertools.combinations(range(n), k)
                  for c in itertools.combinations(range(n), k)]
        g = reduce(sympy.gcd, minors)
        divisors.append(sympy.Poly(g, x).monic().as_expr())
    return [sympy.Poly(sympy.cancel(divisors[k] / divisors[k - 1]), x, domain=sympy.QQ)
            for k in range(1, n + 1)]


def cofactor_det(P, F):
    """Determinant of a polynomial matrix by Laplace expansion along the first row."""
    n = len(P)
    if n == 0:
        return (F.one,)
    total = ()
    for j in range(n):
        minor = [row[:j] + row[j + 1:] for row in P[1:]]
        term = poly_mul(P[0][j], cofactor_det(minor, F))
        if j % 2:
            term = tuple(-c for c in term)
        total = poly_add(total, term)
    return total


def test_smith_scalar():
    assert invariant_factors(Matrix(QQ, [[2]])).factors == ((QQ(-2), QQ(1)),)


def test_smith_jordan_block():
    f = invariant_factors(Matrix(QQ, [[3, 0], [1, 3]])).factors
    assert f == ((QQ(1),), (QQ(9), QQ(-6), QQ(1)))


def test_smith_diagonal_distinct():
    D = Matrix(QQ, [[1, 0], [0, 2]])
    # gcd of 1x1 minors is 1 and the determinant is (x-1)(x-2)
    expected = [sympy.Poly(1, x, domain=sympy.QQ), sympy.Poly((x - 1) * (x - 2), x, domain=sympy.QQ)]
    assert det_divisor_factors(D) == expected
    assert ours_as_polys(D) == expected


def test_smith_zero_and_rectangular():
    P = PolyMatrix(QQ, 2, 3, [[(), (QQ(1),), ()], [(), (), ()]])
    assert smith_form(P) == [(QQ(1),)]
    assert smith_form(PolyMatrix(QQ, 0, 0, [])) == []


def test_smith_against_determinantal_divisors():
    rng = random.Random(21)
    for _ in range(25):
        D = random_regular(QQ, rng.randint(1, 3), rng)
        assert ours_as_polys(D) == det_divisor_factors(D)


@pytest.mark.parametrize("F", [QQ, GF(5), GF(3)], ids=["QQ", "GF5", "GF3"])
def test_smith_against_sympy(F):
    rng = random.Random(22)
    for _ in range(40):
        D = random_regular(F, rng.randint(1, 4), rng)
        assert ours_as_polys(D) == oracle_factors(D)


def test_invariant_factor_chain_and_char_poly():
    rng = random.Random(23)
    for trial in range(60):
        F = GF(5) if trial % 2 else QQ
        D = random_regular(F, rng.randint(0, 4), rng)
        fs = invariant_factors(D).factors
        assert sum(len(f) - 1 for f in fs) == D.nrows
        for f, g in zip(fs, fs[1:]):
            assert not poly_divmod(g, f)[1]
        prod = reduce(poly_mul, fs, (F.one,))
        assert prod == cofactor_det(char_matrix(D).entries, F)


def test_similar_examples():
    assert similar(Matrix(QQ, [[0, 1], [1, 0]]), Matrix(QQ, [[1, 0], [0, -1]]))
    assert not similar(Matrix.identity(QQ, 2), Matrix(QQ, [[1, 0], [0, 2]]))
    assert not similar(Matrix.identity(QQ, 2), Matrix.identity(QQ, 3))
    # same characteristic polynomial, different invariant factors
    assert not similar(Matrix.identity(QQ, 2), Matrix(QQ, [[1, 0], [1, 1]]))
    with pytest.raises(UsageError):
        similar(Matrix(QQ, [[1, 2]]), Matrix(QQ, [[1]]))


def test_similar_under_conjugation():
    rng = random.Random(24)
    for trial in range(50):
        F = GF(5) if trial % 2 else QQ
        n = rng.randint(1, 4)
        D = random_regular(F, n, rng)
        C = random_nonsingular(F, n, rng)
        assert similar(D, invert(C) @ D @ C)


def test_similar_is_equivalence():
    rng = random.Random(25)
    F = GF(3)
    mats = [random_regular(F, 2, rng) for _ in range(12)]
    for a in mats:
        assert similar(a, a)
    for a, b in itertools.combinations(mats, 2):
        assert similar(a, b) == similar(b, a)
    for a, b, c in itertools.combinations(mats, 3):
        if similar(a, b) and similar(b, c):
            assert similar(a, c)


def test_reconstruct_canonical_order():
    p = Pencil(Matrix(QQ, [[1]]), Matrix(QQ, [[2]]))
    q = scramble(direct_sum([block(BlockKind.LkTRkT, 1), block(BlockKind.LkRk, 2), p,
                             block(BlockKind.IkJk, 1)]), 5)[0]
    d = decompose(q)
    rec = reconstruct(d)
    expected = direct_sum([Pencil(Matrix.identity(QQ, 1), d.D), block(BlockKind.IkJk, 1),
                           block(BlockKind.LkRk, 2), block(BlockKind.LkTRkT, 1)])
    assert rec == expected


def test_reconstruct_round_trip():
    for seed in range(30):
        F = GF(5) if seed % 2 else QQ
        _, _, p = random_instance(F, seed)
        d = decompose(p)
        assert same_decomposition(decompose(reconstruct(d)), d)
        assert strictly_equivalent(reconstruct(d), p)


def test_strictly_equivalent_examples():
    p = block(BlockKind.IkJk, 2)
    assert strictly_equivalent(p, scramble(p, 3)[0])
    assert not strictly_equivalent(Pencil(Matrix(QQ, [[1]]), Matrix(QQ, [[2]])),
                                   Pencil(Matrix(QQ, [[1]]), Matrix(QQ, [[3]])))
    assert not strictly_equivalent(block(BlockKind.LkRk, 2), block(BlockKind.LkTRkT, 2))
    # same size, different blocks
    assert not strictly_equivalent(block(BlockKind.IkJk, 2), block(BlockKind.JkIk, 2))


def test_poly_str():
    assert poly_str((QQ(9), QQ(-6), QQ(1))) == "x^2 - 6*x + 9"
    assert poly_str(()) == "0"
