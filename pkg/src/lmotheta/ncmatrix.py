"""Square matrices over truncated noncommutative series."""
from __future__ import annotations

from fractions import Fraction
from typing import Mapping, Sequence

from .ncseries import NCSeries, PolicyMismatch, Truncation
from .scalars import RatMatrix, Singular, det_exact, inverse_exact, rat


class SingularAugmentation(ArithmeticError):
    pass


class ShapeMismatch(ValueError):
    pass


def _mul_into(out: dict, a: NCSeries, b: NCSeries, lim: tuple[int, ...]) -> None:
    bg = b.graded()
    if len(lim) == 2:
        l0, l1 = lim
        for w1, c1, g1 in a.graded():
            r0, r1 = l0 - g1[0], l1 - g1[1]
            for w2, c2, g2 in bg:
                if g2[0] > r0:
                    break
                if g2[1] > r1:
                    continue
                w = w1 + w2
                out[w] = out.get(w, 0) + c1 * c2
    else:
        for w1, c1, g1 in a.graded():
            for w2, c2, g2 in bg:
                if g1[0] + g2[0] > lim[0]:
                    break
                if any(x + y > m for x, y, m in zip(g1[1:], g2[1:], lim[1:])):
                    continue
                w = w1 + w2
                out[w] = out.get(w, 0) + c1 * c2


class NCMatrix:
    """n x n matrix of NCSeries sharing one truncation policy; immutable."""

    __slots__ = ("rows", "policy")

    def __init__(self, rows: Sequence[Sequence[object]], policy: Truncation):
        n = len(rows)
        conv = []
        for row in rows:
            if len(row) != n:
                raise ShapeMismatch("matrix must be square")
            r = []
            for x in row:
                if isinstance(x, NCSeries):
                    if x.policy != policy:
                        x = x.truncate(policy)
                    r.append(x)
                else:
                    r.append(NCSeries.const(x, policy))
            conv.append(tuple(r))
        self.rows = tuple(conv)
        self.policy = policy

    @property
    def n(self) -> int:
        return len(self.rows)

    @classmethod
    def identity(cls, n: int, policy: Truncation) -> "NCMatrix":
        return cls([[int(i == j) for j in range(n)] for i in range(n)], policy)

    @classmethod
    def zero(cls, n: int, policy: Truncation) -> "NCMatrix":
        return cls([[0] * n for _ in range(n)], policy)

    @classmethod
    def from_rat(cls, A: Sequence[Sequence[object]], policy: Truncation) -> "NCMatrix":
        return cls([[rat(x) for x in row] for row in A], policy)

    def __getitem__(self, ij) -> NCSeries:
        i, j = ij
        return self.rows[i][j]

    def _zip(self, other, op):
        if self.n != other.n:
            raise ShapeMismatch(f"{self.n} vs {other.n}")
        return NCMatrix([[op(a, b) for a, b in zip(r1, r2)] for r1, r2 in zip(self.rows, other.rows)], self.policy)

    def __add__(self, other):
        return self._zip(other, lambda a, b: a + b)

    def __sub__(self, other):
        return self._zip(other, lambda a, b: a - b)

    def __neg__(self):
        return NCMatrix([[-a for a in r] for r in self.rows], self.policy)

    def scale(self, s) -> "NCMatrix":
        return NCMatrix([[a.scale(s) for a in r] for r in self.rows], self.policy)

    def map(self, fn) -> "NCMatrix":
        return NCMatrix([[fn(a) for a in r] for r in self.rows], self.policy)

    def __mul__(self, other):
        if not isinstance(other, NCMatrix):
            return self.scale(other)
        if self.n != other.n:
            raise ShapeMismatch(f"{self.n} vs {other.n}")
        if self.policy != other.policy:
            raise PolicyMismatch(f"{self.policy} vs {other.policy}")
        lim = self.policy.limits
        n = self.n
        cols = [[other.rows[l][j] for l in range(n)] for j in range(n)]
        out_rows = []
        for i in range(n):
            row = self.rows[i]
            live = [(l, a) for l, a in enumerate(row) if a.terms]
            out_row = []
            for j in range(n):
                col = cols[j]
                acc: dict = {}
                for l, a in live:
                    b = col[l]
                    if b.terms:
                        _mul_into(acc, a, b, lim)
                out_row.append(NCSeries._raw({w: c for w, c in acc.items() if c}, self.policy))
            out_rows.append(tuple(out_row))
        res = NCMatrix.__new__(NCMatrix)
        res.rows = tuple(out_rows)
        res.policy = self.policy
        return res

    def __rmul__(self, other):
        return self.scale(other)

    def is_zero(self) -> bool:
        return all(a.is_zero() for r in self.rows for a in r)

    def __eq__(self, other):
        if not isinstance(other, NCMatrix):
            return NotImplemented
        return self.policy == other.policy and self.rows == other.rows

    def __hash__(self):
        return hash(self.rows)

    def __str__(self):
        return "\n".join("[" + ", ".join(str(a) for a in r) + "]" for r in self.rows)

    def __repr__(self):
        return f"NCMatrix(n={self.n})"

    def submatrix(self, idx: Sequence[int]) -> "NCMatrix":
        return NCMatrix([[self.rows[i][j] for j in idx] for i in idx], self.policy)

    def permute(self, perm: Sequence[int]) -> "NCMatrix":
        """P M P^T for the permutation sending position a to index perm[a]."""
        return self.submatrix(perm)


def rat_identity(n: int) -> RatMatrix:
    return tuple(tuple(Fraction(int(i == j)) for j in range(n)) for i in range(n))


def rat_mul(A: RatMatrix, B: RatMatrix) -> RatMatrix:
    n = len(A)
    m = len(B[0]) if B else 0
    return tuple(tuple(sum((A[i][l] * B[l][j] for l in range(len(B))), Fraction(0)) for j in range(m)) for i in range(n))


def rat_transpose(A: RatMatrix) -> RatMatrix:
    return tuple(zip(*A)) if A else ()


def augment(M: NCMatrix) -> RatMatrix:
    """Entrywise constant terms."""
    return tuple(tuple(a.constant_term() for a in r) for r in M.rows)


def det_rational(A: RatMatrix) -> Fraction:
    return det_exact(A)


def rat_inverse(A: RatMatrix) -> RatMatrix:
    try:
        return tuple(tuple(r) for r in inverse_exact(A))
    except Singular:
        raise SingularAugmentation("augmentation is not invertible over Q") from None


def normalized_deviation(M: NCMatrix) -> tuple[NCMatrix, RatMatrix]:
    """Return (E, M_eps^-1) with E = I - M M_eps^-1, which has zero augmentation."""
    Ainv = rat_inverse(augment(M))
    E = NCMatrix.identity(M.n, M.policy) - M * NCMatrix.from_rat(Ainv, M.policy)
    return E, Ainv


def nc_inverse(M: NCMatrix) -> NCMatrix:
    """M^-1 = M_eps^-1 * sum_l E^l with E = I - M M_eps^-1 (nilpotent modulo truncation)."""
    E, Ainv = normalized_deviation(M)
    n, policy = M.n, M.policy
    total = NCMatrix.identity(n, policy)
    power = total
    for _ in range(policy.max_word_length()):
        power = power * E
        if power.is_zero():
            break
        total = total + power
    return NCMatrix.from_rat(Ainv, policy) * total


def build_from_blocks(
    sizes: Sequence[int],
    blocks: Mapping[tuple[int, int], Sequence[Sequence[object]]],
    policy: Truncation,
) -> NCMatrix:
    """Assemble a square matrix from blocks; missing blocks are zero.

    ``sizes`` lists the diagonal block sizes; block (I, J) must be sizes[I] x sizes[J].
    Zero-size blocks are allowed.
    """
    offsets = [0]
    for s in sizes:
        if s < 0:
            raise ShapeMismatch("negative block size")
        offsets.append(offsets[-1] + s)
    n = offsets[-1]
    grid: list[list[object]] = [[0] * n for _ in range(n)]
    for (I, J), blk in blocks.items():
        if not (0 <= I < len(sizes) and 0 <= J < len(sizes)):
            raise ShapeMismatch(f"block index {(I, J)} out of range")
        if len(blk) != sizes[I] or any(len(r) != sizes[J] for r in blk):
            raise ShapeMismatch(f"block {(I, J)} should be {sizes[I]}x{sizes[J]}")
        for a, r in enumerate(blk):
            for b, x in enumerate(r):
                grid[offsets[I] + a][offsets[J] + b] = x
    return NCMatrix(grid, policy)
