"""Dense state-vector oracle for qudits of prime dimension.

Conventions, fixed once for the whole package:

- Amplitude index: qudit 0 is the least significant base-p digit, so
  basis state |k_{n-1} ... k_1 k_0> sits at index sum_i k_i p^i.
- Operations return new states; nothing mutates in place.
- Global phase is never stripped; compare states with |overlap| ~ 1.
- Dense objects are capped at DEFAULT_CAP amplitudes unless a larger
  cap is passed explicitly.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache, reduce

import numpy as np

from . import gfp
from .graph import Graph, LabeledGraph

DEFAULT_CAP = 1 << 20
_NORM_TOL = 1e-9


class TooLargeError(ValueError):
    pass


class ZeroProbabilityError(ValueError):
    pass


@dataclass(frozen=True, eq=False)
class StateVector:
    p: int
    n: int
    amps: np.ndarray

    def __post_init__(self):
        gfp.ensure_prime(self.p)
        a = np.ascontiguousarray(self.amps, dtype=np.complex128)
        if a.shape != (self.p**self.n,):
            raise ValueError(f"expected {self.p**self.n} amplitudes")
        if abs(np.vdot(a, a).real - 1.0) > _NORM_TOL:
            raise ValueError("state is not normalized")
        a.setflags(write=False)
        object.__setattr__(self, "amps", a)


@lru_cache(maxsize=None)
def omega_powers(p: int) -> np.ndarray:
    """Table of the p-th roots of unity, omega^k for k in [0, p)."""
    k = np.arange(p)
    table = np.exp(2j * np.pi * k / p)
    table.setflags(write=False)
    return table


@lru_cache(maxsize=64)
def _digits(p: int, n: int) -> np.ndarray:
    """(p^n, n) table: _digits(p, n)[idx, i] = base-p digit i of idx."""
    idx = np.arange(p**n)
    d = np.empty((p**n, n), dtype=np.int64)
    for i in range(n):
        d[:, i] = (idx // p**i) % p
    d.setflags(write=False)
    return d


def _check_cap(p: int, n: int, cap: int) -> None:
    if p**n > cap:
        raise TooLargeError(f"{p}^{n} amplitudes exceed the cap of {cap}")


def _axis(n: int, i: int) -> int:
    # reshape([p]*n) is row-major, so qudit i lives on axis n-1-i
    return n - 1 - i


def basis_state(p: int, n: int, digits) -> StateVector:
    digits = list(digits)
    idx = sum(int(d) % p * p**i for i, d in enumerate(digits))
    amps = np.zeros(p**n, dtype=np.complex128)
    amps[idx] = 1.0
    return StateVector(p, n, amps)


def uniform_state(p: int, n: int, cap: int = DEFAULT_CAP) -> StateVector:
    """|0bar>^n: every qudit in the Fourier-conjugate zero state."""
    _check_cap(p, n, cap)
    amps = np.full(p**n, p ** (-n / 2), dtype=np.complex128)
    return StateVector(p, n, amps)


def apply_z(s: StateVector, i: int, power: int = 1) -> StateVector:
    w = omega_powers(s.p)
    d = _digits(s.p, s.n)[:, i]
    return StateVector(s.p, s.n, s.amps * w[(power * d) % s.p])


def apply_x(s: StateVector, i: int, power: int = 1) -> StateVector:
    t = s.amps.reshape([s.p] * s.n)
    t = np.roll(t, shift=power % s.p, axis=_axis(s.n, i))
    return StateVector(s.p, s.n, t.reshape(-1))


def _apply_single(s: StateVector, i: int, mat: np.ndarray) -> StateVector:
    ax = _axis(s.n, i)
    t = np.moveaxis(s.amps.reshape([s.p] * s.n), ax, 0)
    t = np.tensordot(mat, t, axes=(1, 0))
    t = np.moveaxis(t, 0, ax)
    return StateVector(s.p, s.n, t.reshape(-1))


def fourier_matrix(p: int) -> np.ndarray:
    """F[k, l] = omega^(k l) / sqrt(p)."""
    k = np.arange(p)
    return omega_powers(p)[np.outer(k, k) % p] / np.sqrt(p)


def apply_f(s: StateVector, i: int) -> StateVector:
    return _apply_single(s, i, fourier_matrix(s.p))


def apply_cz(s: StateVector, i: int, j: int, power: int = 1) -> StateVector:
    if i == j:
        raise ValueError("CZ needs two distinct qudits")
    w = omega_powers(s.p)
    d = _digits(s.p, s.n)
    phase = (power * d[:, i] * d[:, j]) % s.p
    return StateVector(s.p, s.n, s.amps * w[phase])


def graph_state_amplitudes(g: Graph, label=None) -> np.ndarray:
    """Raw amplitude array of a (labeled) graph state, without cap checks."""
    p, n = g.p, g.n
    d = _digits(p, n)
    expo = np.zeros(p**n, dtype=np.int64)
    for i, j, w in g.edges():
        expo += w * d[:, i] * d[:, j]
    if label is not None:
        expo += d @ gfp.as_residues(label, p)
    return omega_powers(p)[expo % p] * p ** (-n / 2)


def build_graph_state(g: Graph, cap: int = DEFAULT_CAP) -> StateVector:
    """|G>: all qudits in |0bar>, then CZ^w per weighted edge."""
    _check_cap(g.p, g.n, cap)
    return StateVector(g.p, g.n, graph_state_amplitudes(g))


def build_labeled(s: LabeledGraph, cap: int = DEFAULT_CAP) -> StateVector:
    g = s.graph
    _check_cap(g.p, g.n, cap)
    return StateVector(g.p, g.n, graph_state_amplitudes(g, s.label))


def _split_axes(s: StateVector, keep) -> np.ndarray:
    """Reshape to (p^m, p^(n-m)) with the kept qudits little-endian in rows."""
    keep = sorted(keep)
    rest = [q for q in range(s.n) if q not in set(keep)]
    axes = [_axis(s.n, q) for q in reversed(keep)] + [_axis(s.n, q) for q in reversed(rest)]
    t = s.amps.reshape([s.p] * s.n).transpose(axes)
    return t.reshape(s.p ** len(keep), -1)


def reduced_density(s: StateVector, keep) -> np.ndarray:
    """Reduced density matrix of the qudits in `keep` (sorted ascending)."""
    m = _split_axes(s, keep)
    return m @ m.conj().T


def entropy_edits(rho: np.ndarray, p: int) -> float:
    """Von Neumann entropy of a density matrix in units of log p."""
    vals = np.linalg.eigvalsh(rho)
    vals = vals[vals > 1e-12]
    return float(-(vals * np.log(vals)).sum() / np.log(p))


def cut_entropy_edits(s: StateVector, cut) -> float:
    """Entanglement entropy across (cut, rest) in edits, via singular values."""
    sv = np.linalg.svd(_split_axes(s, cut), compute_uv=False)
    lam = sv**2
    lam = lam[lam > 1e-12]
    return float(-(lam * np.log(lam)).sum() / np.log(s.p))


def z_measure_dense(s: StateVector, i: int, outcome: int) -> tuple[float, StateVector]:
    """Project qudit i onto Z-value `outcome`; drop the measured qudit.

    Returns (probability, renormalized post state on the n-1 survivors,
    which keep their relative order).
    """
    t = s.amps.reshape([s.p] * s.n)
    sl = t.take(int(outcome) % s.p, axis=_axis(s.n, i)).reshape(-1)
    prob = float(np.vdot(sl, sl).real)
    if prob < 1e-12:
        raise ZeroProbabilityError("projection annihilates the state")
    return prob, StateVector(s.p, s.n - 1, sl / np.sqrt(prob))


def bell_measure(s: StateVector, pair, g: int, h: int) -> tuple[float, StateVector]:
    """Project the qudit pair onto the generalized Bell state Psi_gh.

    Psi_gh = p^(-1/2) sum_j omega^(jg) |j>|j+h>, first the pair's first
    qudit; both measured qudits are removed from the returned state.
    """
    q1, q2 = pair
    if q1 == q2:
        raise ValueError("Bell measurement needs two distinct qudits")
    p = s.p
    w = omega_powers(p)
    t = np.moveaxis(
        s.amps.reshape([p] * s.n), (_axis(s.n, q1), _axis(s.n, q2)), (0, 1)
    )
    out = np.zeros(t.shape[2:], dtype=np.complex128)
    for j in range(p):
        out += w[(-j * g) % p] * t[j, (j + h) % p]
    out = out.reshape(-1) / np.sqrt(p)
    prob = float(np.vdot(out, out).real)
    if prob < 1e-12:
        raise ZeroProbabilityError("Bell projection annihilates the state")
    return prob, StateVector(p, s.n - 2, out / np.sqrt(prob))


def ugh_matrix(p: int, g: int, h: int) -> np.ndarray:
    """U_gh = sum_j omega^(jg) |j><j+h|, the Bell-outcome correction."""
    w = omega_powers(p)
    u = np.zeros((p, p), dtype=np.complex128)
    for j in range(p):
        u[j, (j + h) % p] = w[(j * g) % p]
    return u


def apply_ugh(s: StateVector, i: int, g: int, h: int) -> StateVector:
    return _apply_single(s, i, ugh_matrix(s.p, g, h))


def bell_state(p: int, g: int, h: int) -> StateVector:
    w = omega_powers(p)
    amps = np.zeros(p * p, dtype=np.complex128)
    for j in range(p):
        amps[j + p * ((j + h) % p)] = w[(j * g) % p]
    return StateVector(p, 2, amps / np.sqrt(p))


def overlap(a: StateVector, b: StateVector) -> complex:
    if (a.p, a.n) != (b.p, b.n):
        raise ValueError("states live on different systems")
    return complex(np.vdot(a.amps, b.amps))


def _single_site_op(p: int, a: int, b: int) -> np.ndarray:
    """X^a Z^b on one qudit, with the order-p phase normalization.

    For p = 2 an X^a Z^b with a = b = 1 squares to -I, so the operator is
    rescaled by i^(ab); for odd p the bare product already has order p.
    """
    w = omega_powers(p)
    op = np.zeros((p, p), dtype=np.complex128)
    for k in range(p):
        op[(k + a) % p, k] = w[(b * k) % p]
    if p == 2 and a % 2 and b % 2:
        op = 1j * op
    return op


def pauli_operator(p: int, xvec, zvec) -> np.ndarray:
    """Tensor product over sites of normalized X^a Z^b factors."""
    xvec = gfp.as_residues(xvec, p)
    zvec = gfp.as_residues(zvec, p)
    ops = [_single_site_op(p, int(a), int(b)) for a, b in zip(xvec, zvec)]
    # qudit 0 is least significant, so it goes last in the kron chain
    return reduce(np.kron, reversed(ops))


def stabilizer_state(p: int, x: np.ndarray, z: np.ndarray, cap: int = DEFAULT_CAP) -> StateVector:
    """Unique +1 joint eigenvector of the generators rows of (x | z).

    Built by applying the eigenvalue-1 projector of each generator to a
    basis seed. Requires a valid full stabilizer (n independent, mutually
    commuting rows).
    """
    x = gfp.as_residues(x, p)
    z = gfp.as_residues(z, p)
    k, n = x.shape
    _check_cap(p, n, cap)
    dim = p**n
    ops = [pauli_operator(p, x[row], z[row]) for row in range(k)]
    psi = None
    for seed in range(dim):
        v = np.zeros(dim, dtype=np.complex128)
        v[seed] = 1.0
        for op in ops:
            acc = v.copy()
            cur = v
            for _ in range(p - 1):
                cur = op @ cur
                acc += cur
            v = acc / p
        norm = np.linalg.norm(v)
        if norm > 1e-8:
            psi = v / norm
            break
    if psi is None:
        raise ValueError("no +1 joint eigenvector found; invalid stabilizer?")
    return StateVector(p, n, psi)


def format_state(s: StateVector) -> str:
    """Debug dump: `p n` header then one `re im` line per amplitude."""
    lines = [f"{s.p} {s.n}"]
    lines += [f"{a.real:.17g} {a.imag:.17g}" for a in s.amps]
    return "\n".join(lines) + "\n"
