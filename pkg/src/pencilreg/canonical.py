"""Verification layer: similarity via invariant factors, reconstruction and
strict-equivalence testing.

Polynomials are tuples of coefficients, lowest degree first, with no trailing
zeros; the zero polynomial is ``()``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .errors import InternalError, UsageError
from .field import Field
from .linalg import Matrix
from .pencil import Decomposition, Pencil, block, direct_sum, regular_block
from .regularize import decompose

__all__ = [
    "Poly",
    "PolyMatrix",
    "SimilarityClass",
    "poly_trim",
    "poly_add",
    "poly_sub",
    "poly_mul",
    "poly_divmod",
    "poly_monic",
    "poly_str",
    "char_matrix",
    "smith_form",
    "invariant_factors",
    "similar",
    "same_decomposition",
    "reconstruct",
    "strictly_equivalent",
]

Poly = tuple


def poly_trim(a: Sequence) -> Poly:
    a = list(a)
    while a and not a[-1]:
        a.pop()
    return tuple(a)


def poly_add(a: Poly, b: Poly) -> Poly:
    if len(a) < len(b):
        a, b = b, a
    return poly_trim([x + y for x, y in zip(a, b)] + list(a[len(b):]))


def poly_sub(a: Poly, b: Poly) -> Poly:
    return poly_add(a, tuple(-y for y in b))


def poly_mul(a: Poly, b: Poly) -> Poly:
    if not a or not b:
        return ()
    zero = a[0] * 0
    out = [zero] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] = out[i + j] + x * y
    return poly_trim(out)


def poly_divmod(a: Poly, b: Poly) -> tuple[Poly, Poly]:
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    a = list(a)
    lead_inv = 1 / b[-1]
    db = len(b) - 1
    if len(a) <= db:
        return (), poly_trim(a)
    q = [b[0] * 0] * (len(a) - db)
    for i in range(len(a) - 1, db - 1, -1):
        c = a[i] * lead_inv
        if c:
            q[i - db] = c
            for j, y in enumerate(b):
                a[i - db + j] = a[i - db + j] - c * y
    return poly_trim(q), poly_trim(a[:db])


def poly_monic(a: Poly) -> Poly:
    if not a:
        return a
    c = 1 / a[-1]
    return tuple(x * c for x in a)


def poly_str(a: Poly, var: str = "x") -> str:
    if not a:
        return "0"
    terms = []
    for i in range(len(a) - 1, -1, -1):
        c = a[i]
        if not c:
            continue
        mono = "" if i == 0 else (var if i == 1 else f"{var}^{i}")
        cs = str(c)
        if mono and cs == "1":
            cs = ""
        elif mono and cs == "-1":
            cs = "-"
        terms.append(f"{cs}{'*' if cs not in ('', '-') and mono else ''}{mono}")
    return " + ".join(terms).replace("+ -", "- ")


@dataclass
class PolyMatrix:
    field: Field
    nrows: int
    ncols: int
    entries: list[list[Poly]]

    def __post_init__(self):
        if len(self.entries) != self.nrows or any(len(r) != self.ncols for r in self.entries):
            raise UsageError("entries do not match the declared shape")
        self.entries = [[poly_trim(p) for p in row] for row in self.entries]


def char_matrix(D: Matrix) -> PolyMatrix:
    """The characteristic matrix ``xI - D``."""
    if not D.is_square():
        raise UsageError(f"characteristic matrix of a non-square {D.shape} matrix")
    one = D.field.one
    rows = [[(-D[i, j], one) if i == j else (-D[i, j],) for j in range(D.ncols)]
            for i in range(D.nrows)]
    return PolyMatrix(D.field, D.nrows, D.ncols, rows)


def smith_form(P: PolyMatrix) -> list[Poly]:
    """Nonzero diagonal of the Smith normal form of ``P`` over ``F[x]``, made monic.

    The result is a divisibility chain.  Unit invariant factors appear as ``(1,)``.
    """
    a = [list(r) for r in P.entries]
    m, n = P.nrows, P.ncols
    diag = []
    for t in range(min(m, n)):
        while True:
            best = None
            for i in range(t, m):
                for j in range(t, n):
                    if a[i][j] and (best is None or len(a[i][j]) < len(a[best[0]][best[1]])):
                        best = (i, j)
            if best is None:
                return _finish(diag)
            i, j = best
            a[t], a[i] = a[i], a[t]
            for row in a:
                row[t], row[j] = row[j], row[t]
            piv = a[t][t]
            clean = True
            for i in range(t + 1, m):
                if a[i][t]:
                    q, rem = poly_divmod(a[i][t], piv)
                    a[i] = [poly_sub(x, poly_mul(q, y)) for x, y in zip(a[i], a[t])]
                    clean = clean and not rem
            for j in range(t + 1, n):
                if a[t][j]:
                    q, rem = poly_divmod(a[t][j], piv)
                    for row in a:
                        row[j] = poly_sub(row[j], poly_mul(q, row[t]))
                    clean = clean and not rem
            if not clean:
                continue
            bad = next((i for i in range(t + 1, m) for j in range(t + 1, n)
                        if a[i][j] and poly_divmod(a[i][j], piv)[1]), None)
            if bad is None:
                break
            a[t] = [poly_add(x, y) for x, y in zip(a[t], a[bad])]
        diag.append(poly_monic(a[t][t]))
    return _finish(diag)


def _finish(diag: list[Poly]) -> list[Poly]:
    for f, g in zip(diag, diag[1:]):
        if poly_divmod(g, f)[1]:
            raise InternalError("Smith form diagonal is not a divisibility chain")
    return diag


@dataclass(frozen=True)
class SimilarityClass:
    """Invariant factors of ``xI - D``: monic, each dividing the next."""

    size: int
    factors: tuple[Poly, ...]

    def __post_init__(self):
        if sum(len(f) - 1 for f in self.factors) != self.size:
            raise InternalError("degrees of invariant factors do not add up to the size")

    def nontrivial(self) -> tuple[Poly, ...]:
        return tuple(f for f in self.factors if len(f) > 1)

    def __str__(self):
        return "[" + ", ".join(poly_str(f) for f in self.factors) + "]"


def invariant_factors(D: Matrix) -> SimilarityClass:
    return SimilarityClass(D.nrows, tuple(smith_form(char_matrix(D))))


def similar(D1: Matrix, D2: Matrix) -> bool:
    """Whether ``D2 = C^{-1} D1 C`` for some nonsingular ``C``."""
    if not D1.is_square() or not D2.is_square():
        raise UsageError("similarity is defined for square matrices")
    if D1.field != D2.field:
        raise UsageError("matrices over different fields")
    if D1.shape != D2.shape:
        return False
    return invariant_factors(D1) == invariant_factors(D2)


def same_decomposition(d1: Decomposition, d2: Decomposition) -> bool:
    """Equal block multisets and similar regular parts."""
    return d1.blocks == d2.blocks and similar(d1.D, d2.D)


def reconstruct(d: Decomposition) -> Pencil:
    """``(I_r, D)`` followed by the singular blocks in canonical order."""
    parts = [regular_block(d.D)]
    parts.extend(block(kind, k, d.field) for kind, k in d.blocks)
    return direct_sum(parts, d.field)


def strictly_equivalent(p: Pencil, q: Pencil) -> bool:
    if p.shape != q.shape or p.field != q.field:
        return False
    return same_decomposition(decompose(p), decompose(q))
