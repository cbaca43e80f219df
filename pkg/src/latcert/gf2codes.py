"""Binary linear codes: built-in [32,16,8] constructions and exact reports.

Codewords are enumerated exhaustively (2^k words, Gray-code order), which is
the oracle for minimum distance and the weight enumerator at these sizes.
Rows are kept both as a 0/1 matrix and as integer bitmasks; bit j of a mask
is coordinate j.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

# Exhaustive enumeration guard: 2^k words.
MAX_ENUM_DIMENSION = 28


@dataclass(frozen=True)
class BinaryCode:
    length: int
    dimension: int
    generator: np.ndarray  # (k, n) uint8, rows linearly independent
    name: str = "code"

    def row_masks(self) -> list:
        return [_mask_of_row(row) for row in self.generator]

    def codeword_masks(self) -> list:
        """All 2^k codewords as bitmask integers (Gray-code enumeration order)."""
        if self.dimension > MAX_ENUM_DIMENSION:
            raise ValueError(
                f"refusing to enumerate 2^{self.dimension} codewords "
                f"(guard is k <= {MAX_ENUM_DIMENSION})"
            )
        rows = self.row_masks()
        words = [0] * (1 << self.dimension)
        cur = 0
        for m in range(1, 1 << self.dimension):
            cur ^= rows[(m & -m).bit_length() - 1]
            words[m] = cur
        return words

    def same_codewords(self, other: "BinaryCode") -> bool:
        if (self.length, self.dimension) != (other.length, other.dimension):
            return False
        return sorted(self.codeword_masks()) == sorted(other.codeword_masks())


@dataclass(frozen=True)
class CodeReport:
    self_dual: bool
    doubly_even: bool
    min_distance: int
    weight_enumerator: dict  # weight -> count


def _mask_of_row(row) -> int:
    m = 0
    for j, b in enumerate(row):
        if b:
            m |= 1 << j
    return m


def gf2_rank(masks: list) -> tuple:
    """Row rank over GF(2), plus (for each dependent row) the set of earlier
    row indices whose XOR reproduces it."""
    pivots = {}  # pivot bit -> (reduced mask, combo bitmask over original rows)
    dependencies = []
    for idx, mask in enumerate(masks):
        combo = 1 << idx
        while mask:
            top = mask.bit_length() - 1
            if top not in pivots:
                pivots[top] = (mask, combo)
                break
            pm, pc = pivots[top]
            mask ^= pm
            combo ^= pc
        else:
            dependencies.append(sorted(i for i in range(idx + 1) if (combo >> i) & 1))
    return len(pivots), dependencies


def _make_code(rows, name: str) -> BinaryCode:
    G = np.array(rows, dtype=np.uint8)
    k, n = G.shape
    rank, deps = gf2_rank([_mask_of_row(r) for r in G])
    if rank != k:
        raise ValueError(f"generator rows dependent: rows {deps[0]}")
    G.setflags(write=False)
    return BinaryCode(n, k, G, name)


def reed_muller_2_5() -> BinaryCode:
    """Second-order Reed-Muller code of length 32.

    Rows are the evaluations, over all 32 points of GF(2)^5, of the monomials
    of degree <= 2 in the five coordinate bits: 1, x_i, x_i x_j.  That is
    1 + 5 + 10 = 16 rows, giving a [32, 16, 8] doubly-even self-dual code.
    """
    pts = [[(p >> v) & 1 for v in range(5)] for p in range(32)]
    rows = [[1] * 32]
    for i in range(5):
        rows.append([pt[i] for pt in pts])
    for i in range(5):
        for j in range(i + 1, 5):
            rows.append([pt[i] & pt[j] for pt in pts])
    return _make_code(rows, "rm2_5")


def _gf32_mul(a: int, b: int) -> int:
    # GF(2^5) with the primitive polynomial x^5 + x^2 + 1
    r = 0
    while b:
        if b & 1:
            r ^= a
        b >>= 1
        a <<= 1
        if a & 32:
            a ^= 0b100101
    return r


def _gf32_pow(a: int, e: int) -> int:
    r = 1
    while e:
        if e & 1:
            r = _gf32_mul(r, a)
        a = _gf32_mul(a, a)
        e >>= 1
    return r


def _min_poly_coeffs(r: int) -> list:
    """Coefficients of prod_{j in coset(r)} (x - alpha^j) over GF(2)."""
    coset = []
    j = r
    while j not in coset:
        coset.append(j)
        j = (2 * j) % 31
    poly = [1]  # GF(32) coefficients, ascending degree
    for j in coset:
        root = _gf32_pow(2, j)  # alpha = x, encoded as 2
        nxt = [0] * (len(poly) + 1)
        for d, c in enumerate(poly):
            nxt[d + 1] ^= c
            nxt[d] ^= _gf32_mul(c, root)
        poly = nxt
    assert all(c in (0, 1) for c in poly), "minimal polynomial not over GF(2)"
    return poly


def extended_quadratic_residue_32() -> BinaryCode:
    """Extended binary quadratic residue code of length 32.

    The length-31 QR code is the cyclic code whose generator polynomial is
    the product of the minimal polynomials of alpha^r for r in the quadratic
    residue classes {1, 5, 7} mod 31 (degree 15, so dimension 16); appending
    an overall parity bit yields a [32, 16, 8] doubly-even self-dual code.
    """
    g = [1]
    for r in (1, 5, 7):
        m = _min_poly_coeffs(r)
        nxt = [0] * (len(g) + len(m) - 1)
        for i, a in enumerate(g):
            if a:
                for j, b in enumerate(m):
                    nxt[i + j] ^= b
        g = nxt
    assert len(g) == 16 and g[0] == 1 and g[15] == 1  # degree-15 generator
    rows = []
    for shift in range(16):
        row = [0] * 31
        for d, c in enumerate(g):
            row[(d + shift) % 31] = c
        row.append(sum(row) % 2)  # overall parity bit
        rows.append(row)
    return _make_code(rows, "xqr32")


def load_generator_matrix(path) -> BinaryCode:
    """Read a generator matrix: one row per line of '0'/'1' characters,
    whitespace ignored.  Rejects ragged rows, dependent rows, and dimensions
    above n/2 (no self-orthogonal pipeline input can exceed half the length)."""
    rows = []
    with open(path) as fh:
        for lineno, line in enumerate(fh, 1):
            bits = line.split()
            flat = "".join(bits)
            if not flat:
                continue
            if set(flat) - {"0", "1"}:
                raise ValueError(f"{path}:{lineno}: row has non-binary characters")
            rows.append([int(ch) for ch in flat])
    if not rows:
        raise ValueError(f"{path}: no generator rows found")
    n = len(rows[0])
    for i, r in enumerate(rows):
        if len(r) != n:
            raise ValueError(f"{path}: row {i} has length {len(r)}, expected {n}")
    k = len(rows)
    if 2 * k > n:
        raise ValueError(
            f"{path}: dimension {k} exceeds n/2 = {n // 2}; not a valid input shape"
        )
    rank, deps = gf2_rank([_mask_of_row(r) for r in rows])
    if rank != k:
        raise ValueError(f"{path}: rank-deficient generator; dependent rows {deps[0]}")
    return _make_code(rows, "loaded")


def save_generator_matrix(code: BinaryCode, path) -> None:
    with open(path, "w") as fh:
        for row in code.generator:
            fh.write("".join(str(int(b)) for b in row) + "\n")


def code_report(c: BinaryCode) -> CodeReport:
    """Exact report from full codeword enumeration."""
    if c.dimension > MAX_ENUM_DIMENSION:
        raise ValueError(
            f"refusing to enumerate 2^{c.dimension} codewords "
            f"(guard is k <= {MAX_ENUM_DIMENSION})"
        )
    enum: dict[int, int] = {}
    for w in c.codeword_masks():
        wt = w.bit_count()
        enum[wt] = enum.get(wt, 0) + 1
    nonzero = [wt for wt in enum if wt > 0]
    min_distance = min(nonzero) if nonzero else 0
    G = c.generator.astype(np.int64)
    self_orthogonal = not ((G @ G.T) % 2).any()
    self_dual = self_orthogonal and 2 * c.dimension == c.length
    doubly_even = all(wt % 4 == 0 for wt in enum)
    return CodeReport(self_dual, doubly_even, min_distance, dict(sorted(enum.items())))


def report_to_json(r: CodeReport) -> dict:
    return {
        "self_dual": r.self_dual,
        "doubly_even": r.doubly_even,
        "min_distance": r.min_distance,
        "weight_enumerator": {str(w): c for w, c in r.weight_enumerator.items()},
    }
