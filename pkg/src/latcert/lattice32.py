"""Norm-4 shells of the 32-dimensional lattices built from self-dual codes.

The lattice is obtained from a doubly-even self-dual [32,16,8] code by the
mod-4 coordinate-sum construction followed by adjoining the half-vector
coset.  Vectors are stored in scaled integer coordinates s = 2*sqrt(2)*v,
so a minimal vector (v.v = 4) has s.s = 32 and every quantity downstream is
an exact integer or rational: lattice inner products are s_x.s_y / 8 and
unit-sphere inner products are s_x.s_y / 32.

A norm-4 vector falls into exactly one of three integer shapes (given that
the code has no words of weight 4):

  (i)  two coordinates +-4,
  (ii) eight coordinates +-2 supported on a weight-8 codeword, with an even
       number of minus signs,
  (iii) all 32 coordinates +-1, the minus positions forming a codeword
        (the half-vector coset).

For an extremal input the three families have sizes 1984, 620*128 = 79360
and 2^16 = 65536, totalling 146880.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

import numpy as np

from .gf2codes import BinaryCode, code_report

SHELL_NORM = 32  # s.s for every shell vector (norm 4 at lattice scale)


@dataclass(frozen=True)
class Shell:
    """Canonically sorted integer vectors with s.s = 32, in `dim` coordinates.

    `dim` is also the sphere dimension used for Gegenbauer analysis; the
    lattice construction always produces dim = 32, smaller synthetic shells
    are used in tests.
    """

    vectors: np.ndarray  # (N, dim) int8, lexicographically sorted, no duplicates
    dim: int = 32
    source: str | None = None

    @property
    def count(self) -> int:
        return len(self.vectors)

    def index_of(self, s) -> int:
        """Index of a vector in the canonical order; -1 if absent."""
        arr = np.asarray(s, dtype=np.int8)
        lo = int(
            np.searchsorted(_row_view(self.vectors), _row_view(arr[None, :])[0])
        )
        if lo < self.count and np.array_equal(self.vectors[lo], arr):
            return lo
        return -1


def _row_view(a: np.ndarray):
    """Rows as void scalars whose byte order is the numeric lexicographic
    order (int8 entries are biased to uint8 first)."""
    b = np.ascontiguousarray((a.astype(np.int16) + 128).astype(np.uint8))
    return b.view([("", np.uint8)] * a.shape[1]).ravel()


def _canonical_sort(arr: np.ndarray):
    """Lexicographically sorted copy plus the number of duplicate rows."""
    view = _row_view(arr)
    order = np.argsort(view, kind="stable")
    srt = arr[order]
    dups = int((view[order][1:] == view[order][:-1]).sum()) if len(arr) > 1 else 0
    if dups:
        keep = np.ones(len(arr), dtype=bool)
        keep[1:] = view[order][1:] != view[order][:-1]
        srt = srt[keep]
    return srt, dups


def make_shell(vectors, dim: int | None = None, source=None, validate=True) -> Shell:
    arr = np.asarray(vectors, dtype=np.int8)
    if arr.ndim != 2:
        raise ValueError("shell vectors must form a 2-d array")
    if dim is None:
        dim = arr.shape[1]
    if arr.shape[1] != dim:
        raise ValueError(f"expected {dim} coordinates per vector, got {arr.shape[1]}")
    srt, dups = _canonical_sort(arr)
    if validate:
        if dups:
            raise ValueError("duplicate shell vectors")
        norms = (arr.astype(np.int64) ** 2).sum(axis=1)
        if not (norms == SHELL_NORM).all():
            bad = int(np.flatnonzero(norms != SHELL_NORM)[0])
            raise ValueError(f"vector {bad} has s.s = {int(norms[bad])}, expected 32")
        neg_sorted, _ = _canonical_sort(-srt)
        if not np.array_equal(neg_sorted, srt):
            raise ValueError("shell is not closed under negation")
    srt.setflags(write=False)
    return Shell(srt, dim, source)


def _precheck(c: BinaryCode):
    report = code_report(c)
    if c.length != 32 or c.dimension != 16:
        raise ValueError(f"need a [32,16] code, got [{c.length},{c.dimension}]")
    if not report.self_dual:
        raise ValueError("code is not self-dual")
    if not report.doubly_even:
        raise ValueError("code is not doubly even")
    return report


def check_extremal(c: BinaryCode) -> bool:
    """Whether the lattice built from c has an empty norm-2 layer.

    Shape analysis: a norm-2 vector would have a single +-2 coordinate
    (coordinate sum +-2, not divisible by 4), or four +-1 coordinates on a
    weight-4 codeword, or lie in the half-vector coset (norm >= 4 there).
    Only the weight-4 case can occur, so extremality is exactly the absence
    of weight-4 words.
    """
    report = _precheck(c)
    return report.weight_enumerator.get(4, 0) == 0


def build_shell(c: BinaryCode) -> Shell:
    """Enumerate all 146880 norm-4 vectors of the lattice built from c."""
    report = _precheck(c)
    if report.weight_enumerator.get(4, 0) != 0:
        raise ValueError("code has weight-4 words; lattice is not extremal")
    if report.min_distance != 8:
        raise ValueError(f"need minimum distance 8, got {report.min_distance}")

    blocks = []

    # (i) two coordinates +-4
    pair_rows = []
    for i in range(32):
        for j in range(i + 1, 32):
            for si in (4, -4):
                for sj in (4, -4):
                    row = np.zeros(32, dtype=np.int8)
                    row[i] = si
                    row[j] = sj
                    pair_rows.append(row)
    blocks.append(np.array(pair_rows, dtype=np.int8))

    # (ii) eight coordinates +-2 on each weight-8 codeword, even minus count
    words = c.codeword_masks()
    eight = [w for w in words if w.bit_count() == 8]
    sign_patterns = np.array(
        [
            [2 - 4 * ((m >> b) & 1) for b in range(8)]
            for m in range(256)
            if (m.bit_count() % 2) == 0
        ],
        dtype=np.int8,
    )  # (128, 8)
    for w in eight:
        support = [b for b in range(32) if (w >> b) & 1]
        rows = np.zeros((128, 32), dtype=np.int8)
        rows[:, support] = sign_patterns
        blocks.append(rows)

    # (iii) the half-vector coset: all +-1, minus signs on a codeword
    masks = np.array(words, dtype=np.uint32)
    bits = ((masks[:, None] >> np.arange(32, dtype=np.uint32)) & 1).astype(np.int8)
    blocks.append(1 - 2 * bits)

    vectors = np.concatenate(blocks, axis=0)
    shell = make_shell(vectors, 32, source=c.name)
    assert shell.count == 1984 + 128 * len(eight) + len(words)
    return shell


def lattice_ip(x, z) -> int:
    """Lattice inner product of two shell vectors (s_x.s_z / 8); exact."""
    d = int(np.asarray(x, dtype=np.int64) @ np.asarray(z, dtype=np.int64))
    if d % 8:
        raise ValueError(f"s-coordinate dot {d} is not a multiple of 8")
    return d // 8


def venkov_e22(shell: Shell, x, z) -> int:
    """Number of shell vectors y with lattice inner product 2 with both of
    the orthogonal minimal vectors x and z (the Venkov pair statistic)."""
    x = np.asarray(x, dtype=np.int64)
    z = np.asarray(z, dtype=np.int64)
    if shell.index_of(x) < 0 or shell.index_of(z) < 0:
        raise ValueError("x and z must be shell vectors")
    if int(x @ z) != 0:
        raise ValueError(
            f"invalid Venkov pair: lattice inner product is {int(x @ z) // 8}, not 0"
        )
    D = shell.vectors.astype(np.int32) @ np.stack([x, z]).T.astype(np.int32)
    return int(np.count_nonzero((D[:, 0] == 16) & (D[:, 1] == 16)))


def witness_pair():
    """The explicit orthogonal pair attaining e_{2,2} = 60: in s-coordinates
    (0,...,0,4,4) and (0,...,0,-4,4)."""
    x = np.zeros(32, dtype=np.int8)
    z = np.zeros(32, dtype=np.int8)
    x[30] = x[31] = 4
    z[30] = -4
    z[31] = 4
    return x, z


def venkov_sample(shell: Shell, count: int, seed: int) -> list:
    """Seeded sample of e_{2,2} values over random orthogonal shell pairs."""
    if count < 1:
        raise ValueError("count must be >= 1")
    rng = random.Random(seed)
    vecs = shell.vectors.astype(np.int64)
    n = shell.count
    values = []
    budget = 10000 * count
    while len(values) < count:
        if budget <= 0:
            raise ValueError("no orthogonal pair found within budget; malformed shell")
        budget -= 1
        i = rng.randrange(n)
        j = rng.randrange(n)
        if i == j:
            continue
        if int(vecs[i] @ vecs[j]) != 0:
            continue
        values.append(venkov_e22(shell, vecs[i], vecs[j]))
    return values


# ---------------------------------------------------------------------------
# Shell files

_HEADER = "latcert-shell v1"


def save_shell(shell: Shell, path) -> None:
    with open(path, "w") as fh:
        fh.write(f"{_HEADER} n={shell.dim} count={shell.count} scale=2sqrt2\n")
        for row in shell.vectors:
            fh.write(" ".join(str(int(v)) for v in row) + "\n")


def load_shell(path) -> Shell:
    with open(path) as fh:
        header = fh.readline().strip()
        parts = header.split()
        if parts[:2] != _HEADER.split() or len(parts) != 5:
            raise ValueError(f"{path}: bad shell header {header!r}")
        fields = dict(p.split("=", 1) for p in parts[2:])
        if fields.get("scale") != "2sqrt2":
            raise ValueError(f"{path}: unsupported scale {fields.get('scale')!r}")
        dim = int(fields["n"])
        count = int(fields["count"])
        rows = []
        for lineno, line in enumerate(fh, 2):
            if not line.strip():
                continue
            vals = [int(v) for v in line.split()]
            if len(vals) != dim:
                raise ValueError(f"{path}:{lineno}: expected {dim} coordinates")
            rows.append(vals)
    if len(rows) != count:
        raise ValueError(f"{path}: header says {count} vectors, found {len(rows)}")
    arr = np.array(rows, dtype=np.int8)
    parities = np.abs(arr) % 2
    mixed = (parities.min(axis=1) != parities.max(axis=1)).any()
    if mixed:
        raise ValueError(f"{path}: vector with mixed even/odd coordinates")
    return make_shell(arr, dim, source=str(path))
