"""Regularizing decomposition of a matrix pair by subspace reductions.

A pair of maps ``A, B : U -> V`` is reduced in three phases.  Each phase
repeats one transformation until its stopping test holds:

1. restrict to ``A^{-1}(im B) -> im B`` until ``B`` is surjective;
2. restrict to ``B^{-1}(im A) -> im A`` until ``A`` is surjective;
3. pass to ``U / ker B -> V / A(ker B)`` until ``B`` is bijective.

The multiplicities of the singular blocks are read off from first and second
differences of the recorded ``(dim U, dim V)`` sequences; what is left at the
end is a pair of bijections, which gives the regular part.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import InternalError, UsageError
from .linalg import (
    Matrix,
    coords_matrix,
    extend_to_complement,
    image_basis,
    invert,
    kernel_basis,
    preimage,
    quotient_coords_matrix,
    rank,
)
from .pencil import BlockKind, BlockMultiset, Decomposition, Pencil

__all__ = [
    "PairPresentation",
    "PhaseTrace",
    "transform1",
    "transform2",
    "transform3",
    "run_phase",
    "count_blocks",
    "block_count_terms",
    "v_based_phase3_counts",
    "extract_regular",
    "decompose",
    "PAD",
]

PAD = 2


@dataclass(frozen=True)
class PairPresentation:
    """Matrices of the maps ``A, B : U -> V`` in the current bases (``dim V x dim U``)."""

    A: Matrix
    B: Matrix

    def __post_init__(self):
        if self.A.shape != self.B.shape or self.A.field != self.B.field:
            raise UsageError("A and B must have the same shape and field")

    @classmethod
    def of(cls, p: Pencil) -> "PairPresentation":
        return cls(p.A, p.B)

    @property
    def u_dim(self) -> int:
        return self.A.ncols

    @property
    def v_dim(self) -> int:
        return self.A.nrows

    @property
    def dims(self) -> tuple[int, int]:
        return self.u_dim, self.v_dim

    def swapped(self) -> "PairPresentation":
        return PairPresentation(self.B, self.A)


@dataclass(frozen=True)
class PhaseTrace:
    phase: int
    dims: tuple[tuple[int, int], ...]

    @property
    def length(self) -> int:
        """Number of pairs visited by the phase, padding excluded."""
        return len(self.dims) - PAD

    def u(self, j: int) -> int:
        """``dim U_j`` with 1-based ``j``."""
        return self.dims[j - 1][0]

    def v(self, j: int) -> int:
        return self.dims[j - 1][1]


def _restrict(p: PairPresentation, surjective_first: bool) -> PairPresentation:
    # surjective_first=False: U' = A^{-1}(im B), V' = im B
    A, B = (p.B, p.A) if surjective_first else (p.A, p.B)
    V2 = image_basis(B)
    U2 = preimage(A, V2)
    try:
        A2 = coords_matrix(V2, A @ U2.basis)
        B2 = coords_matrix(V2, B @ U2.basis)
    except InternalError as e:
        raise InternalError(f"restricted pair is not well defined: {e}") from None
    return PairPresentation(B2, A2) if surjective_first else PairPresentation(A2, B2)


def transform1(p: PairPresentation) -> PairPresentation:
    """Restrict to ``A^{-1}(im B) -> im B``."""
    return _restrict(p, surjective_first=False)


def transform2(p: PairPresentation) -> PairPresentation:
    """Restrict to ``B^{-1}(im A) -> im A``; requires ``B`` surjective."""
    if rank(p.B) != p.v_dim:
        raise UsageError("transform2 requires B to be surjective")
    return _restrict(p, surjective_first=True)


def transform3(p: PairPresentation) -> PairPresentation:
    """Pass to ``U / ker B -> V / A(ker B)``; requires ``A`` and ``B`` surjective.

    Quotients are realized by the complements that :func:`extend_to_complement`
    picks, so the new matrices are coset coordinates.
    """
    if rank(p.A) != p.v_dim or rank(p.B) != p.v_dim:
        raise UsageError("transform3 requires A and B to be surjective")
    K = kernel_basis(p.B)
    W = extend_to_complement(K)
    T = image_basis(p.A @ K.basis)
    C = extend_to_complement(T)
    if __debug__:
        # B(ker B) = 0 lies in T trivially; A(ker B) = T by construction.
        # The induced maps are well defined because the kernel of the
        # projection U -> U/ker B is sent into T by both A and B.
        for col in (p.B @ K.basis).columns():
            assert not any(col)
        for col in (p.A @ K.basis).columns():
            assert T.contains(col)
    A2 = quotient_coords_matrix(T, C, p.A @ W.basis)
    B2 = quotient_coords_matrix(T, C, p.B @ W.basis)
    return PairPresentation(A2, B2)


def _done(p: PairPresentation, phase: int) -> bool:
    if phase == 1:
        return rank(p.B) == p.v_dim
    if phase == 2:
        return rank(p.A) == p.v_dim
    return p.u_dim == p.v_dim and rank(p.B) == p.v_dim


_TRANSFORMS = {1: transform1, 2: transform2, 3: transform3}


def run_phase(p: PairPresentation, phase: int) -> tuple[PairPresentation, PhaseTrace]:
    """Apply the phase's transformation until its stopping test holds.

    Every visited pair is recorded, the first and the last included; the
    trace is then padded with ``PAD`` copies of its final entry.
    """
    if phase not in _TRANSFORMS:
        raise UsageError(f"phase must be 1, 2 or 3, got {phase!r}")
    step = _TRANSFORMS[phase]
    limit = max(p.u_dim, p.v_dim) + 2
    dims = [p.dims]
    while not _done(p, phase):
        q = step(p)
        shrinking = q.v_dim < p.v_dim if phase < 3 else q.u_dim < p.u_dim
        if not shrinking:
            raise InternalError(f"phase {phase} made no progress at dims {p.dims}")
        p = q
        dims.append(p.dims)
        if len(dims) > limit:
            raise InternalError(f"phase {phase} did not terminate within {limit} steps")
    dims.extend([dims[-1]] * PAD)
    return p, PhaseTrace(phase, tuple(dims))


def block_count_terms(traces: tuple[PhaseTrace, PhaseTrace, PhaseTrace]) -> list[tuple[BlockKind, int, int]]:
    """Evaluate every counting formula as ``(kind, k, value)``, zeros included.

    Phase 3 uses the U-dimensions.  The V-dimension variant of that formula
    is wrong; see :func:`v_based_phase3_counts`.
    """
    t1, t2, t3 = traces
    out = []
    for j in range(1, t1.length):
        out.append((BlockKind.LkTRkT, j,
                    (t1.v(j) - t1.v(j + 1)) - (t1.u(j) - t1.u(j + 1))))
        out.append((BlockKind.IkJk, j,
                    (t1.u(j) - t1.u(j + 1)) - (t1.v(j + 1) - t1.v(j + 2))))
    for j in range(1, t2.length):
        out.append((BlockKind.JkIk, j, t2.v(j) - 2 * t2.v(j + 1) + t2.v(j + 2)))
    for j in range(1, t3.length):
        out.append((BlockKind.LkRk, j, t3.u(j) - 2 * t3.u(j + 1) + t3.u(j + 2)))
    return out


def v_based_phase3_counts(t3: PhaseTrace) -> dict[int, int]:
    """Phase-3 counts computed from V-dimensions instead of U-dimensions.

    Kept only so tests can show where it disagrees with the correct formula.
    """
    return {j: t3.v(j) - 2 * t3.v(j + 1) + t3.v(j + 2) for j in range(1, t3.length)}


def count_blocks(traces: tuple[PhaseTrace, PhaseTrace, PhaseTrace]) -> BlockMultiset:
    """Singular block multiplicities from the three phase traces."""
    counts = {}
    for kind, k, c in block_count_terms(traces):
        if c < 0:
            raise InternalError(f"negative count {c} for {kind.value}:{k}; traces {traces}")
        if c:
            counts[(kind, k)] = c
    return BlockMultiset(counts)


def extract_regular(final: PairPresentation) -> Matrix:
    """``D = A^{-1} B`` for the final pair of bijections."""
    if final.u_dim != final.v_dim:
        raise InternalError(f"final pair is not square: {final.dims}")
    try:
        D = invert(final.A) @ final.B
    except ArithmeticError as e:
        raise InternalError(f"final A is singular: {e}") from None
    if rank(D) != D.nrows:
        raise InternalError("final B is singular")
    return D


def decompose(p: Pencil) -> Decomposition:
    """Regularizing decomposition of ``p``: singular blocks plus regular part ``D``."""
    cur = PairPresentation.of(p)
    traces = []
    for phase in (1, 2, 3):
        cur, tr = run_phase(cur, phase)
        traces.append(tr)
    traces = tuple(traces)
    blocks = count_blocks(traces)
    D = extract_regular(cur)
    d = Decomposition(blocks, D, tuple([list(t.dims) for t in traces]))
    d.check_bookkeeping(p.m, p.n)
    return d
