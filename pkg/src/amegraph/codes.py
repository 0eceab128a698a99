"""Classical linear codes over Z_p and the code-to-AME-graph pipeline.

A code is stored by its n x k generator matrix G with codewords G x for
x in Z_p^k. A self-orthogonality-free MDS code with n = 2k and minimum
distance k + 1 yields a full stabilizer matrix [[G^T, 0], [0, H]] whose
graph reduction is an AME state on n qudits.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import gfp
from .graph import Graph
from .stabilizer import GeneratorMatrix, to_graph


class NotAmeCodeError(ValueError):
    pass


class PointsNotDistinctError(ValueError):
    pass


class LengthExceedsFieldError(ValueError):
    pass


class TooLargeError(ValueError):
    pass


@dataclass(frozen=True, eq=False)
class LinearCode:
    p: int
    gen: np.ndarray  # n x k, full column rank

    def __post_init__(self):
        gfp.ensure_prime(self.p)
        g = gfp.as_residues(self.gen, self.p)
        if g.ndim != 2:
            raise ValueError("generator must be 2-d")
        n, k = g.shape
        if k == 0 or k > n:
            raise ValueError("need 0 < k <= n")
        if gfp.mat_rank(g, self.p) != k:
            raise ValueError("generator columns must be independent")
        g.setflags(write=False)
        object.__setattr__(self, "gen", g)

    @property
    def n(self) -> int:
        return self.gen.shape[0]

    @property
    def k(self) -> int:
        return self.gen.shape[1]

    def __eq__(self, other) -> bool:
        if not isinstance(other, LinearCode):
            return NotImplemented
        return self.p == other.p and self.gen.shape == other.gen.shape \
            and bool((self.gen == other.gen).all())

    def __hash__(self) -> int:
        return hash((self.p, self.gen.tobytes()))


def parity_check(c: LinearCode) -> np.ndarray:
    """(n - k) x n matrix H of full row rank with H G = 0 mod p.

    Returned in reduced row echelon form, the canonical basis of the
    kernel of G^T.
    """
    basis = gfp.kernel_basis(c.gen.T, c.p)
    return gfp.row_reduce(basis, c.p)[0]


def message_words(p: int, k: int) -> np.ndarray:
    """All p^k message vectors as a (p^k, k) array, index little-endian."""
    idx = np.arange(p**k)
    out = np.empty((p**k, k), dtype=np.int64)
    for i in range(k):
        out[:, i] = (idx // p**i) % p
    return out


def min_distance(c: LinearCode, max_words: int = 10**7) -> int:
    """Minimum Hamming weight over nonzero codewords (equals the distance)."""
    total = c.p**c.k
    if total > max_words:
        raise TooLargeError(f"{total} codewords exceed the enumeration cap")
    best = c.n
    chunk = 1 << 16
    for lo in range(1, total, chunk):
        idx = np.arange(lo, min(lo + chunk, total))
        msgs = np.empty((idx.size, c.k), dtype=np.int64)
        for i in range(c.k):
            msgs[:, i] = (idx // c.p**i) % c.p
        words = (msgs @ c.gen.T) % c.p
        best = min(best, int(np.count_nonzero(words, axis=1).min()))
    return best


def is_mds(c: LinearCode, max_words: int = 10**7) -> bool:
    """Singleton bound met with equality: distance = n - k + 1."""
    return min_distance(c, max_words) == c.n - c.k + 1


def is_ame_code(c: LinearCode, max_words: int = 10**7) -> bool:
    """MDS with n = 2k, the shape that produces an AME state."""
    return c.n == 2 * c.k and is_mds(c, max_words)


def grs_code(p: int, n: int, k: int, points=None) -> LinearCode:
    """Polynomial-evaluation (generalized Reed-Solomon) code, MDS for n <= p.

    Row i of the generator is (x_i^0, ..., x_i^(k-1)) at evaluation point
    x_i; distinct points make every k x k minor a Vandermonde determinant.
    """
    gfp.ensure_prime(p)
    if n > p:
        raise LengthExceedsFieldError(f"need n <= p for {n} distinct points")
    pts = list(range(n)) if points is None else [int(x) % p for x in points]
    if len(set(pts)) != len(pts) or len(pts) != n:
        raise PointsNotDistinctError("evaluation points must be distinct")
    gen = np.empty((n, k), dtype=np.int64)
    for i, x in enumerate(pts):
        gen[i] = [pow(x, j, p) for j in range(k)]
    return LinearCode(p, gen)


def hamming433() -> LinearCode:
    """The ternary [4,2,3] Hamming code; self-dual, H = G^T."""
    return LinearCode(3, np.array([[1, 0], [0, 1], [1, 1], [2, 1]]))


def ame_generator_matrix(c: LinearCode) -> GeneratorMatrix:
    """Stabilizer matrix [[G^T, 0], [0, H]] of the codeword superposition.

    X-type rows shift by codewords; Z-type rows phase by parity checks.
    Only defined for codes with n = 2k and distance k + 1.
    """
    if not is_ame_code(c):
        raise NotAmeCodeError(f"[{c.n},{c.k}]_{c.p} code is not MDS with n = 2k")
    h = parity_check(c)
    zeros_top = np.zeros((c.k, c.n), dtype=np.int64)
    zeros_bot = np.zeros((c.n - c.k, c.n), dtype=np.int64)
    x = np.vstack([c.gen.T, zeros_bot])
    z = np.vstack([zeros_top, h])
    return GeneratorMatrix(c.p, x, z)


def code_to_ame_graph(c: LinearCode) -> Graph:
    """Graph-state form of the code's AME stabilizer state."""
    return to_graph(ame_generator_matrix(c))[0]


def get_code(name: str) -> LinearCode:
    """Registry lookup: `hamming433` or `grs:p,n,k`."""
    if name == "hamming433":
        return hamming433()
    if name.startswith("grs:"):
        try:
            p, n, k = (int(v) for v in name[4:].split(","))
        except ValueError as exc:
            raise ValueError(f"bad GRS spec {name!r}; use grs:p,n,k") from exc
        return grs_code(p, n, k)
    raise ValueError(f"unknown code {name!r}")


def format_code(c: LinearCode) -> str:
    """Text format: `p n k` header, then the k generator columns as rows."""
    lines = [f"{c.p} {c.n} {c.k}"]
    for col in range(c.k):
        lines.append(" ".join(str(int(v)) for v in c.gen[:, col]))
    return "\n".join(lines) + "\n"


def parse_code(text: str) -> LinearCode:
    rows = [ln.split() for ln in text.splitlines() if ln.strip() and not ln.lstrip().startswith("#")]
    if not rows or len(rows[0]) != 3:
        raise ValueError("header must be `p n k`")
    p, n, k = (int(v) for v in rows[0])
    if len(rows) != k + 1:
        raise ValueError(f"expected {k} generator columns")
    cols = []
    for parts in rows[1:]:
        if len(parts) != n:
            raise ValueError("each column needs n residues")
        cols.append([int(v) for v in parts])
    return LinearCode(p, np.array(cols, dtype=np.int64).T)
