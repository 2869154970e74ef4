"""Bit-packed linear algebra over F2.

Rows and vectors are Python ints used as bitsets: bit j of a row is
column j.  Ints are arbitrary precision, so a row is always one word
and XOR is the whole row operation.
"""

from __future__ import annotations

from typing import Dict, List, Optional, Sequence, Tuple


class Inconsistent(ValueError):
    """Linear system has no solution."""


class Word:
    """Length-n vector over F2, packed into one int."""

    __slots__ = ("bits", "n")

    def __init__(self, bits: int, n: int) -> None:
        if bits >> n:
            raise ValueError("set bits beyond vector length")
        self.bits = bits
        self.n = n

    @classmethod
    def zero(cls, n: int) -> "Word":
        return cls(0, n)

    @classmethod
    def from_indices(cls, n: int, indices) -> "Word":
        bits = 0
        for i in indices:
            if not 0 <= i < n:
                raise ValueError(f"index {i} out of range for length {n}")
            bits |= 1 << i
        return cls(bits, n)

    @property
    def weight(self) -> int:
        return self.bits.bit_count()

    def indices(self) -> Tuple[int, ...]:
        out = []
        b = self.bits
        while b:
            low = b & -b
            out.append(low.bit_length() - 1)
            b ^= low
        return tuple(out)

    def bit(self, i: int) -> int:
        return (self.bits >> i) & 1

    def __xor__(self, other: "Word") -> "Word":
        if self.n != other.n:
            raise ValueError("length mismatch")
        return Word(self.bits ^ other.bits, self.n)

    def __eq__(self, other) -> bool:
        return isinstance(other, Word) and self.bits == other.bits and self.n == other.n

    def __hash__(self) -> int:
        return hash((self.bits, self.n))

    def __repr__(self) -> str:
        return f"Word(0x{self.bits:x}, n={self.n})"

    def to_json(self) -> Dict:
        return {"hex": format(self.bits, "0{}x".format((self.n + 3) // 4)), "bits": self.n}

    @classmethod
    def from_json(cls, obj: Dict) -> "Word":
        return cls(int(obj["hex"], 16), obj["bits"])


class BitMatrix:
    """rows x cols matrix over F2; each row is one int."""

    __slots__ = ("nrows", "ncols", "rows")

    def __init__(self, nrows: int, ncols: int, rows: Optional[List[int]] = None) -> None:
        if rows is None:
            rows = [0] * nrows
        if len(rows) != nrows:
            raise ValueError("row count mismatch")
        mask = (1 << ncols) - 1
        for r in rows:
            if r & ~mask:
                raise ValueError("set bits beyond column count")
        self.nrows = nrows
        self.ncols = ncols
        self.rows = rows

    @classmethod
    def identity(cls, k: int) -> "BitMatrix":
        return cls(k, k, [1 << i for i in range(k)])

    def copy(self) -> "BitMatrix":
        return BitMatrix(self.nrows, self.ncols, list(self.rows))

    def row_word(self, i: int) -> Word:
        return Word(self.rows[i], self.ncols)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, BitMatrix)
            and self.nrows == other.nrows
            and self.ncols == other.ncols
            and self.rows == other.rows
        )

    def __repr__(self) -> str:
        return f"BitMatrix({self.nrows}x{self.ncols})"

    def to_json(self) -> Dict:
        w = (self.ncols + 3) // 4
        return {
            "rows": self.nrows,
            "cols": self.ncols,
            "data": [format(r, "0{}x".format(w)) for r in self.rows],
        }

    @classmethod
    def from_json(cls, obj: Dict) -> "BitMatrix":
        return cls(obj["rows"], obj["cols"], [int(r, 16) for r in obj["data"]])


def mat_mul(a: BitMatrix, b: BitMatrix) -> BitMatrix:
    """a @ b; row i of the product XORs the rows of b picked by row i of a."""
    if a.ncols != b.nrows:
        raise ValueError("shape mismatch")
    brows = b.rows
    out = []
    for r in a.rows:
        acc = 0
        while r:
            low = r & -r
            acc ^= brows[low.bit_length() - 1]
            r ^= low
        out.append(acc)
    return BitMatrix(a.nrows, b.ncols, out)


def vec_mat_T(v: Word, m: BitMatrix) -> Word:
    """v @ m^T: bit j of the result is <v, row_j(m)>."""
    if v.n != m.ncols:
        raise ValueError("shape mismatch")
    bits = 0
    vb = v.bits
    for j, row in enumerate(m.rows):
        if (vb & row).bit_count() & 1:
            bits |= 1 << j
    return Word(bits, m.nrows)


def transpose(m: BitMatrix) -> BitMatrix:
    out = [0] * m.ncols
    for i, row in enumerate(m.rows):
        while row:
            low = row & -row
            out[low.bit_length() - 1] |= 1 << i
            row ^= low
    return BitMatrix(m.ncols, m.nrows, out)


def f2_rref(m: BitMatrix) -> Tuple[BitMatrix, Tuple[int, ...]]:
    """Reduced row echelon form and its pivot columns."""
    rows = list(m.rows)
    pivots = []
    rank = 0
    for col in range(m.ncols):
        bit = 1 << col
        pivot = next((r for r in range(rank, len(rows)) if rows[r] & bit), None)
        if pivot is None:
            continue
        rows[rank], rows[pivot] = rows[pivot], rows[rank]
        prow = rows[rank]
        for r in range(len(rows)):
            if r != rank and rows[r] & bit:
                rows[r] ^= prow
        pivots.append(col)
        rank += 1
        if rank == len(rows):
            break
    return BitMatrix(m.nrows, m.ncols, rows), tuple(pivots)


def f2_rank(m: BitMatrix) -> int:
    return len(f2_rref(m)[1])


def f2_kernel_basis(m: BitMatrix) -> List[Word]:
    """Basis of the right kernel {v : m @ v^T = 0}; one vector per free column."""
    rref, pivots = f2_rref(m)
    pivot_set = set(pivots)
    basis = []
    for free in range(m.ncols):
        if free in pivot_set:
            continue
        bits = 1 << free
        fbit = 1 << free
        for r, pcol in enumerate(pivots):
            if rref.rows[r] & fbit:
                bits |= 1 << pcol
        basis.append(Word(bits, m.ncols))
    return basis


def f2_random_invertible(k: int, rng) -> BitMatrix:
    """Uniform over GL_k(F2) by rejection sampling."""
    if k < 1:
        raise ValueError("k must be positive")
    while True:
        rows = [rng.getrandbits(k) for _ in range(k)]
        m = BitMatrix(k, k, rows)
        if f2_rank(m) == k:
            return m


def _rref_with_transform(a: BitMatrix) -> Tuple[List[int], List[int], List[int]]:
    """Internal: rref rows of a, pivot columns, and combination masks."""
    rows = list(a.rows)
    trans = [1 << i for i in range(a.nrows)]
    pivots = []
    rank = 0
    for col in range(a.ncols):
        bit = 1 << col
        pivot = next((r for r in range(rank, len(rows)) if rows[r] & bit), None)
        if pivot is None:
            continue
        rows[rank], rows[pivot] = rows[pivot], rows[rank]
        trans[rank], trans[pivot] = trans[pivot], trans[rank]
        prow, ptr = rows[rank], trans[rank]
        for r in range(len(rows)):
            if r != rank and rows[r] & bit:
                rows[r] ^= prow
                trans[r] ^= ptr
        pivots.append(col)
        rank += 1
        if rank == len(rows):
            break
    return rows, pivots, trans


def f2_solve_left(a: BitMatrix, b: BitMatrix) -> BitMatrix:
    """x with x @ a = b; requires rowspace(b) inside rowspace(a)."""
    if a.ncols != b.ncols:
        raise ValueError("shape mismatch")
    rows, pivots, trans = _rref_with_transform(a)
    out = []
    for target in b.rows:
        mask = 0
        residue = target
        for r, pcol in enumerate(pivots):
            if (residue >> pcol) & 1:
                residue ^= rows[r]
                mask ^= trans[r]
        if residue:
            raise Inconsistent("row of b outside the row space of a")
        out.append(mask)
    return BitMatrix(b.nrows, a.nrows, out)


def f2_invert(m: BitMatrix) -> BitMatrix:
    """Inverse of a square invertible matrix."""
    if m.nrows != m.ncols:
        raise ValueError("not square")
    return f2_solve_left(m, BitMatrix.identity(m.nrows))


# -- permutations -------------------------------------------------------------
#
# A permutation perm encodes the matrix P with P[i][perm[i]] = 1, so
# (v @ P)[perm[i]] = v[i] and M @ P moves column i to column perm[i].


def random_permutation(n: int, rng) -> List[int]:
    perm = list(range(n))
    rng.shuffle(perm)
    return perm


def perm_matrix(perm: Sequence[int]) -> BitMatrix:
    n = len(perm)
    return BitMatrix(n, n, [1 << perm[i] for i in range(n)])


def perm_inverse(perm: Sequence[int]) -> List[int]:
    inv = [0] * len(perm)
    for i, j in enumerate(perm):
        inv[j] = i
    return inv


def apply_perm_word(v: Word, perm: Sequence[int]) -> Word:
    """v @ P for the permutation matrix encoded by perm."""
    bits = 0
    vb = v.bits
    while vb:
        low = vb & -vb
        bits |= 1 << perm[low.bit_length() - 1]
        vb ^= low
    return Word(bits, v.n)


def permute_cols(m: BitMatrix, perm: Sequence[int]) -> BitMatrix:
    """m @ P: column i moves to column perm[i]."""
    out = []
    for row in m.rows:
        bits = 0
        while row:
            low = row & -row
            bits |= 1 << perm[low.bit_length() - 1]
            row ^= low
        out.append(bits)
    return BitMatrix(m.nrows, m.ncols, out)


def apply_perm_seq(seq: Sequence, perm: Sequence[int]) -> list:
    """Sequence analogue of v @ P: element i lands at position perm[i]."""
    out = [None] * len(seq)
    for i, x in enumerate(seq):
        out[perm[i]] = x
    return out
