"""Matrix pairs, Kronecker blocks, direct sums and the JSON interchange format."""

from __future__ import annotations

import enum
import json
import random
import re
from dataclasses import dataclass, field as dc_field
from typing import Iterable, Mapping, Sequence

from .errors import InternalError, UsageError
from .field import QQ, Field
from .linalg import Matrix, invert, rank

__all__ = [
    "Pencil",
    "BlockKind",
    "BlockMultiset",
    "Decomposition",
    "block",
    "regular_block",
    "direct_sum",
    "random_nonsingular",
    "random_multiset",
    "random_regular",
    "scramble",
    "transpose",
    "swap",
    "ParseError",
    "pencil_to_json",
    "pencil_from_json",
    "decomposition_to_json",
    "decomposition_from_json",
    "load_json",
    "dump_json",
]


@dataclass(frozen=True)
class Pencil:
    """The pair ``(A, B)`` standing for the pencil ``A + lambda*B``."""

    A: Matrix
    B: Matrix

    def __post_init__(self):
        if self.A.shape != self.B.shape:
            raise UsageError(f"A is {self.A.shape} but B is {self.B.shape}")
        if self.A.field != self.B.field:
            raise UsageError("A and B are over different fields")

    @property
    def field(self) -> Field:
        return self.A.field

    @property
    def shape(self) -> tuple[int, int]:
        return self.A.shape

    @property
    def m(self) -> int:
        return self.A.nrows

    @property
    def n(self) -> int:
        return self.A.ncols


class BlockKind(enum.Enum):
    """The four families of indecomposable singular summands.

    Members are declared in the canonical output order.
    """

    IkJk = "I_J"
    JkIk = "J_I"
    LkRk = "L_R"
    LkTRkT = "LT_RT"

    @property
    def order(self) -> int:
        return _KIND_ORDER[self]

    def shape(self, k: int) -> tuple[int, int]:
        """``(rows, cols)`` of the size-``k`` block of this kind."""
        if self is BlockKind.LkRk:
            return k - 1, k
        if self is BlockKind.LkTRkT:
            return k, k - 1
        return k, k

    @classmethod
    def parse(cls, name: str) -> "BlockKind":
        try:
            return cls(name)
        except ValueError:
            raise UsageError(f"unknown block kind {name!r}; expected one of "
                             f"{[k.value for k in cls]}") from None


_KIND_ORDER = {k: i for i, k in enumerate(BlockKind)}


class BlockMultiset:
    """Multiplicities of singular blocks keyed by ``(kind, k)``."""

    __slots__ = ("_counts",)

    def __init__(self, counts: Mapping[tuple[BlockKind, int], int] | Iterable = ()):
        items = counts.items() if isinstance(counts, Mapping) else counts
        acc: dict[tuple[BlockKind, int], int] = {}
        for (kind, k), c in items:
            if not isinstance(kind, BlockKind):
                kind = BlockKind.parse(kind)
            if k < 1:
                raise UsageError(f"block size must be >= 1, got {k}")
            if c < 0:
                raise UsageError(f"negative multiplicity {c} for {kind.value}:{k}")
            if c:
                acc[(kind, k)] = acc.get((kind, k), 0) + c
        self._counts = acc

    def __getitem__(self, key: tuple[BlockKind, int]) -> int:
        return self._counts.get(key, 0)

    def items(self) -> list[tuple[tuple[BlockKind, int], int]]:
        return sorted(self._counts.items(), key=lambda kv: (kv[0][0].order, kv[0][1]))

    def __iter__(self):
        for key, c in self.items():
            for _ in range(c):
                yield key

    def __len__(self):
        return sum(self._counts.values())

    def __bool__(self):
        return bool(self._counts)

    def __eq__(self, other):
        if not isinstance(other, BlockMultiset):
            return NotImplemented
        return self._counts == other._counts

    def __hash__(self):
        return hash(frozenset(self._counts.items()))

    def __repr__(self):
        body = ", ".join(f"{kind.value}:{k}x{c}" for (kind, k), c in self.items())
        return f"BlockMultiset({body})"

    def total_rows(self) -> int:
        return sum(kind.shape(k)[0] * c for (kind, k), c in self._counts.items())

    def total_cols(self) -> int:
        return sum(kind.shape(k)[1] * c for (kind, k), c in self._counts.items())

    def total_size(self) -> int:
        """Sum of ``k`` over all blocks, counted with multiplicity."""
        return sum(k * c for (_, k), c in self._counts.items())

    def map_kinds(self, mapping: Mapping[BlockKind, BlockKind]) -> "BlockMultiset":
        return BlockMultiset([((mapping.get(kind, kind), k), c)
                              for (kind, k), c in self._counts.items()])

    def to_json(self) -> list[dict]:
        return [{"kind": kind.value, "k": k, "count": c} for (kind, k), c in self.items()]

    @classmethod
    def from_json(cls, items) -> "BlockMultiset":
        if not isinstance(items, list):
            raise ParseError("blocks: expected a list")
        out = []
        for i, it in enumerate(items):
            if not isinstance(it, dict) or set(it) != {"kind", "k", "count"}:
                raise ParseError(f"blocks[{i}]: expected keys kind, k, count")
            for key in ("k", "count"):
                if not isinstance(it[key], int) or isinstance(it[key], bool):
                    raise ParseError(f"blocks[{i}].{key}: expected an integer")
            try:
                out.append(((BlockKind.parse(it["kind"]), it["k"]), it["count"]))
            except UsageError as e:
                raise ParseError(f"blocks[{i}].kind: {e}") from None
        try:
            return cls(out)
        except UsageError as e:
            raise ParseError(f"blocks: {e}") from None

    @classmethod
    def parse_spec(cls, text: str) -> "BlockMultiset":
        """Parse the command-line spelling ``"I_J:3x1,L_R:2x2"`` (kind:size x count)."""
        out = []
        for part in filter(None, (p.strip() for p in text.split(","))):
            try:
                name, rest = part.split(":")
                k, _, c = rest.partition("x")
                out.append(((BlockKind.parse(name), int(k)), int(c) if c else 1))
            except ValueError:
                raise UsageError(f"bad block spec {part!r}; expected KIND:KxCOUNT") from None
        return cls(out)


@dataclass(frozen=True)
class Decomposition:
    """Result of regularizing a pencil.

    ``dims`` holds one trace per phase; each trace is a list of
    ``(dim U, dim V)`` pairs, padded with two repeats of its final entry.
    """

    blocks: BlockMultiset
    D: Matrix
    dims: tuple[list[tuple[int, int]], ...] = dc_field(default=((), (), ()))

    @property
    def r(self) -> int:
        return self.D.nrows

    @property
    def field(self) -> Field:
        return self.D.field

    def shape(self) -> tuple[int, int]:
        """Size ``(m, n)`` of every pencil with this decomposition."""
        return self.r + self.blocks.total_rows(), self.r + self.blocks.total_cols()

    def check_bookkeeping(self, m: int, n: int) -> None:
        if self.shape() != (m, n):
            raise InternalError(f"dimension bookkeeping failed: decomposition accounts for "
                                f"{self.shape()} but the pencil is {(m, n)}")


def _jordan_zero(field: Field, k: int) -> Matrix:
    z, o = field.zero, field.one
    return Matrix._raw(field, k, k, [[o if i == j + 1 else z for j in range(k)] for i in range(k)])


def block(kind: BlockKind, k: int, field: Field = QQ) -> Pencil:
    """The canonical pair of the given kind and size.

    ``J_k(0)`` carries its ones below the diagonal.  ``L_k`` and ``R_k`` are
    ``I_k`` without its last and first row respectively.
    """
    if not isinstance(k, int) or k < 1:
        raise UsageError(f"block size must be a positive integer, got {k!r}")
    if not isinstance(kind, BlockKind):
        kind = BlockKind.parse(kind)
    eye = Matrix.identity(field, k)
    if kind is BlockKind.IkJk:
        return Pencil(eye, _jordan_zero(field, k))
    if kind is BlockKind.JkIk:
        return Pencil(_jordan_zero(field, k), eye)
    L = eye.submatrix(range(k - 1), range(k))
    R = eye.submatrix(range(1, k), range(k))
    if kind is BlockKind.LkRk:
        return Pencil(L, R)
    return Pencil(L.T, R.T)


def regular_block(D: Matrix) -> Pencil:
    """The regular summand ``(I_r, D)``; ``D`` must be nonsingular."""
    if not D.is_square():
        raise UsageError(f"regular part must be square, got {D.shape}")
    if rank(D) != D.nrows:
        raise UsageError("regular part D must be nonsingular")
    return Pencil(Matrix.identity(D.field, D.nrows), D)


def direct_sum(ps: Sequence[Pencil], field: Field | None = None) -> Pencil:
    """Block-diagonal direct sum; the empty sum is the 0x0 pencil over ``field``."""
    ps = list(ps)
    if field is None:
        field = ps[0].field if ps else QQ
    for p in ps:
        if p.field != field:
            raise UsageError(f"direct sum mixes {p.field!r} and {field!r}")
    return Pencil(Matrix.block_diag(field, [p.A for p in ps]),
                  Matrix.block_diag(field, [p.B for p in ps]))


def random_nonsingular(field: Field, n: int, rng: random.Random, bound: int = 3) -> Matrix:
    """Rejection-sample an ``n x n`` nonsingular matrix."""
    while True:
        M = Matrix._raw(field, n, n, [[field.random(rng, bound) for _ in range(n)]
                                      for _ in range(n)])
        if rank(M) == n:
            return M


def random_multiset(rng: random.Random, max_size: int = 12) -> BlockMultiset:
    """Random singular blocks whose sizes ``k`` sum to at most ``max_size``."""
    budget = rng.randint(0, max_size)
    out = []
    while budget > 0:
        k = rng.randint(1, budget)
        out.append(((rng.choice(list(BlockKind)), k), 1))
        budget -= k
    return BlockMultiset(out)


def random_regular(field: Field, r: int, rng: random.Random) -> Matrix:
    """Random nonsingular ``r x r`` matrix.

    Half of the draws are conjugates of Jordan-type matrices with repeated
    eigenvalues, so that nontrivial invariant factors actually occur.
    """
    if r == 0 or rng.random() < 0.5:
        return random_nonsingular(field, r, rng)
    z = field.zero
    eigs = [field(v) for v in (1, 2, -1)]
    rows = [[z] * r for _ in range(r)]
    for i in range(r):
        if i and rng.random() < 0.5:
            rows[i][i] = rows[i - 1][i - 1]
            rows[i][i - 1] = field.one
        else:
            rows[i][i] = rng.choice(eigs)
    J = Matrix._raw(field, r, r, rows)
    C = random_nonsingular(field, r, rng)
    return invert(C) @ J @ C


def scramble(p: Pencil, seed: int | None = None, *, S: Matrix | None = None,
             R: Matrix | None = None) -> tuple[Pencil, Matrix, Matrix]:
    """Return ``((S A R, S B R), S, R)`` for random nonsingular ``S`` and ``R``.

    The transforms are drawn from ``random.Random(seed)``; passing ``S`` or
    ``R`` explicitly overrides the corresponding draw.
    """
    rng = random.Random(seed)
    if S is None:
        S = random_nonsingular(p.field, p.m, rng)
    if R is None:
        R = random_nonsingular(p.field, p.n, rng)
    if S.shape != (p.m, p.m) or R.shape != (p.n, p.n):
        raise UsageError("S must be m x m and R must be n x n")
    return Pencil(S @ p.A @ R, S @ p.B @ R), S, R


def transpose(p: Pencil) -> Pencil:
    return Pencil(p.A.T, p.B.T)


def swap(p: Pencil) -> Pencil:
    return Pencil(p.B, p.A)


# -- JSON ------------------------------------------------------------------


class ParseError(UsageError):
    """Malformed input document; the message names the offending field."""


def _matrix_to_json(M: Matrix) -> list[list[str]]:
    fmt = M.field.format
    return [[fmt(x) for x in row] for row in M.tolist()]


def _matrix_from_json(obj, field: Field, m: int, n: int, name: str) -> Matrix:
    if not isinstance(obj, list) or len(obj) != m:
        raise ParseError(f"{name}: expected a list of {m} rows")
    rows = []
    for i, row in enumerate(obj):
        if not isinstance(row, list) or len(row) != n:
            raise ParseError(f"{name}[{i}]: expected a row of {n} entries")
        vals = []
        for j, x in enumerate(row):
            if not isinstance(x, str):
                raise ParseError(f"{name}[{i}][{j}]: entries must be strings, got {x!r}")
            try:
                vals.append(field.parse(x))
            except UsageError as e:
                raise ParseError(f"{name}[{i}][{j}]: {e}") from None
        rows.append(vals)
    return Matrix._raw(field, m, n, rows)


def _field_from_json(obj) -> Field:
    try:
        return Field.from_json(obj)
    except UsageError as e:
        raise ParseError(f"field: {e}") from None


def _int_field(doc: dict, key: str) -> int:
    v = doc.get(key)
    if not isinstance(v, int) or isinstance(v, bool) or v < 0:
        raise ParseError(f"{key}: expected a nonnegative integer, got {v!r}")
    return v


def pencil_to_json(p: Pencil) -> dict:
    return {
        "field": p.field.to_json(),
        "m": p.m,
        "n": p.n,
        "A": _matrix_to_json(p.A),
        "B": _matrix_to_json(p.B),
    }


def pencil_from_json(doc) -> Pencil:
    if not isinstance(doc, dict):
        raise ParseError("top level: expected an object")
    for key in ("field", "m", "n", "A", "B"):
        if key not in doc:
            raise ParseError(f"{key}: missing")
    field = _field_from_json(doc["field"])
    m, n = _int_field(doc, "m"), _int_field(doc, "n")
    return Pencil(_matrix_from_json(doc["A"], field, m, n, "A"),
                  _matrix_from_json(doc["B"], field, m, n, "B"))


def decomposition_to_json(d: Decomposition, *, with_field: bool = False,
                          extra: Mapping | None = None) -> dict:
    doc = {}
    if with_field:
        doc["field"] = d.field.to_json()
    doc["blocks"] = d.blocks.to_json()
    doc["r"] = d.r
    doc["D"] = _matrix_to_json(d.D)
    doc["dims"] = {f"phase{i + 1}": [list(x) for x in tr] for i, tr in enumerate(d.dims)}
    if extra:
        doc.update(extra)
    return doc


def decomposition_from_json(doc, field: Field | None = None) -> Decomposition:
    if not isinstance(doc, dict):
        raise ParseError("top level: expected an object")
    if field is None:
        if "field" not in doc:
            raise ParseError("field: missing")
        field = _field_from_json(doc["field"])
    for key in ("blocks", "r", "D"):
        if key not in doc:
            raise ParseError(f"{key}: missing")
    blocks = BlockMultiset.from_json(doc["blocks"])
    r = _int_field(doc, "r")
    D = _matrix_from_json(doc["D"], field, r, r, "D")
    dims_doc = doc.get("dims", {})
    dims = []
    for i in range(3):
        tr = dims_doc.get(f"phase{i + 1}", []) if isinstance(dims_doc, dict) else None
        if not isinstance(tr, list) or not all(
                isinstance(x, list) and len(x) == 2 and all(isinstance(v, int) for v in x)
                for x in tr):
            raise ParseError(f"dims.phase{i + 1}: expected a list of [u, v] pairs")
        dims.append([tuple(x) for x in tr])
    return Decomposition(blocks, D, tuple(dims))


_SCALAR_LIST = re.compile(r"\[([^\[\]{}]*)\]")


def dump_json(doc) -> str:
    """Deterministic serialization used for every file the package writes.

    Lists of scalars (matrix rows, dimension pairs) are kept on one line.
    """
    text = json.dumps(doc, indent=2)
    text = _SCALAR_LIST.sub(lambda mt: "[" + ", ".join(
        x.strip() for x in mt.group(1).split(",") if x.strip()) + "]", text)
    return text + "\n"


def load_json(path) -> object:
    """Read a JSON file, turning syntax errors into :class:`ParseError`."""
    try:
        with open(path) as fh:
            text = fh.read()
    except OSError as e:
        raise ParseError(f"{path}: {e.strerror}") from None
    try:
        return json.loads(text)
    except json.JSONDecodeError as e:
        raise ParseError(f"{path}: line {e.lineno} column {e.colno}: {e.msg}") from None
