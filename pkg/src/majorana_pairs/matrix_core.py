"""
Dense complex linear algebra kernel.

Matrices are plain ``numpy.ndarray`` objects of dtype ``complex128``.
Everything here is a pure function of its inputs; the only stateful
object is :class:`RandomSource`, which must not be shared between threads
(use :meth:`RandomSource.split` instead).
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import BadDimension, DimensionMismatch, NoConvergence, NonSquare, NotHermitian

DEFAULT_TOL = 1e-10
MAX_SWEEPS = 100


def _frozen(m):
    m = np.array(m, dtype=np.complex128)
    m.setflags(write=False)
    return m


IDENTITY_2 = _frozen([[1, 0], [0, 1]])
SIGMA_1 = _frozen([[0, 1], [1, 0]])
SIGMA_2 = _frozen([[0, -1j], [1j, 0]])
SIGMA_3 = _frozen([[1, 0], [0, -1]])
PAULI = (SIGMA_1, SIGMA_2, SIGMA_3)


def as_matrix(x, name="matrix"):
    """Coerce ``x`` to a finite 2-D complex128 array."""
    m = np.asarray(x, dtype=np.complex128)
    if m.ndim != 2 or m.shape[0] < 1 or m.shape[1] < 1:
        raise BadDimension(f"{name} must be a non-empty 2-D matrix, got shape {m.shape}")
    if not np.all(np.isfinite(m)):
        raise ValueError(f"{name} has non-finite entries")
    return m


def as_square(x, name="matrix"):
    m = as_matrix(x, name)
    if m.shape[0] != m.shape[1]:
        raise NonSquare(f"{name} must be square, got shape {m.shape}")
    return m


def identity(n):
    return np.eye(n, dtype=np.complex128)


def frobenius(x):
    return float(np.linalg.norm(x))


def default_tol(*mats):
    """Verification tolerance ``1e-10 * max(1, ||M||_F)`` over ``mats``."""
    return DEFAULT_TOL * max([1.0] + [frobenius(m) for m in mats])


def dagger(x):
    return np.conj(np.transpose(x))


def kron(x, y):
    """Kronecker product; block ``(i, j)`` of the result is ``x[i, j] * y``."""
    return np.kron(as_matrix(x, "x"), as_matrix(y, "y"))


def direct_sum(x, y):
    """Block-diagonal matrix ``[[x, 0], [0, y]]`` of two square matrices."""
    x = as_square(x, "x")
    y = as_square(y, "y")
    n, m = x.shape[0], y.shape[0]
    out = np.zeros((n + m, n + m), dtype=np.complex128)
    out[:n, :n] = x
    out[n:, n:] = y
    return out


def star_embed(x):
    """
    Interleaved 4x4 embedding of a 2x2 matrix::

        [[x11, 0,   0,   x12],
         [0,   x11, x12, 0  ],
         [0,   x21, x22, 0  ],
         [x21, 0,   0,   x22]]

    It is permutation-equivalent to ``direct_sum(x, x)``.
    """
    x = as_matrix(x, "x")
    if x.shape != (2, 2):
        raise BadDimension(f"star embedding needs a 2x2 matrix, got {x.shape}")
    (a11, a12), (a21, a22) = x
    out = np.zeros((4, 4), dtype=np.complex128)
    out[0, 0] = out[1, 1] = a11
    out[0, 3] = out[1, 2] = a12
    out[2, 1] = out[3, 0] = a21
    out[2, 2] = out[3, 3] = a22
    return out


def hermitian_residual(x):
    return frobenius(x - dagger(x))


def involution_residual(x):
    return frobenius(x @ x - identity(x.shape[0]))


@dataclass(frozen=True)
class SpectralDecomposition:
    """Ascending real eigenvalues and the matching unit eigenvector columns."""

    values: np.ndarray
    vectors: np.ndarray

    def reconstruct(self):
        return (self.vectors * self.values) @ dagger(self.vectors)


def _round_robin(n):
    """Yield ``n - 1`` (or ``n`` for odd n) rounds of disjoint index pairs covering every pair once."""
    players = list(range(n)) + ([None] if n % 2 else [])
    m = len(players)
    for _ in range(m - 1):
        pairs = [(players[i], players[m - 1 - i]) for i in range(m // 2)]
        pairs = [(min(p, q), max(p, q)) for p, q in pairs if p is not None and q is not None]
        if pairs:
            yield np.array(pairs, dtype=np.intp).T
        players = [players[0], players[-1]] + players[1:-1]


def _off_diagonal(a):
    return frobenius(a - np.diag(np.diag(a)))


def hermitian_eig(h, tol=DEFAULT_TOL):
    """
    Eigendecomposition of a Hermitian matrix by cyclic complex Jacobi rotations.

    Each sweep visits every off-diagonal pair once, grouped into rounds of
    disjoint pairs whose rotations commute and are applied together.

    Parameters
    ----------
    h : array_like
        Square matrix with ``||h - h*||_F <= tol * ||h||_F``.
    tol : float
        Hermiticity tolerance and convergence threshold: iteration stops once
        the off-diagonal Frobenius norm is at most ``tol * ||h||_F``.

    Returns
    -------
    SpectralDecomposition
        Eigenvalues in ascending order; column ``j`` of ``vectors`` belongs
        to ``values[j]``.

    Raises
    ------
    NotHermitian
        If ``h`` is not Hermitian within ``tol``.
    NoConvergence
        If the off-diagonal norm is still above threshold after 100 sweeps.
    """
    h = as_square(h, "h")
    n = h.shape[0]
    scale = frobenius(h)
    if hermitian_residual(h) > tol * scale:
        raise NotHermitian(f"||H - H*||_F = {hermitian_residual(h):.3e} exceeds {tol:g} * ||H||_F")
    a = (h + dagger(h)) / 2
    v = identity(n)
    threshold = tol * scale
    # entries this small are below roundoff of the matrix; rotating on them risks overflow
    negligible = np.finfo(float).eps ** 2 * scale
    rounds = list(_round_robin(n))

    for _ in range(MAX_SWEEPS):
        if _off_diagonal(a) <= threshold:
            break
        for p, q in rounds:
            apq = a[p, q]
            b = np.abs(apq)
            active = b > negligible
            a[p[~active], q[~active]] = 0
            a[q[~active], p[~active]] = 0
            if not active.any():
                continue
            p, q, apq, b = p[active], q[active], apq[active], b[active]
            phase = np.conj(apq) / b  # e^{-i arg(apq)}
            theta = (a[q, q].real - a[p, p].real) / (2 * b)
            with np.errstate(over="ignore", divide="ignore"):
                t = np.where(
                    np.abs(theta) < 1e150,
                    1.0 / (np.abs(theta) + np.sqrt(theta * theta + 1.0)),
                    0.5 / np.abs(theta),
                )
            t = np.where(theta < 0, -t, t)
            c = 1.0 / np.sqrt(t * t + 1.0)
            s = t * c

            # columns: A <- A U, V <- V U
            for m in (a, v):
                cp, cq = m[:, p].copy(), m[:, q].copy()
                m[:, p] = c * cp - (s * phase) * cq
                m[:, q] = s * cp + (c * phase) * cq
            # rows: A <- U* A
            rp, rq = a[p, :].copy(), a[q, :].copy()
            a[p, :] = c[:, None] * rp - (s * np.conj(phase))[:, None] * rq
            a[q, :] = s[:, None] * rp + (c * np.conj(phase))[:, None] * rq
            a[p, q] = 0
            a[q, p] = 0
            diag = np.arange(n)
            a[diag, diag] = a[diag, diag].real
    else:
        if _off_diagonal(a) > threshold:
            raise NoConvergence(
                f"off-diagonal norm {_off_diagonal(a):.3e} above {threshold:.3e} after {MAX_SWEEPS} sweeps"
            )

    values = np.diag(a).real.copy()
    order = np.argsort(values, kind="stable")
    return SpectralDecomposition(values=values[order], vectors=v[:, order])


def _split(a, axis):
    """
    Error-free split ``a = hi + lo`` along rows (axis=1) or columns (axis=0).

    ``hi`` keeps about half the mantissa, scaled per row or column, so that a
    product ``hi @ hi'`` of two such slices is exact in double precision.
    """
    beta = math.ceil((53 + math.log2(a.shape[axis])) / 2)
    _, exps = np.frexp(np.max(np.abs(a), axis=axis, keepdims=True))
    sigma = np.ldexp(0.75, exps + beta)
    hi = (a + sigma) - sigma
    return hi, a - hi


def _two_sum(x, y):
    s = x + y
    t = s - x
    return s, (x - (s - t)) + (y - t)


def _real_block(r):
    # complex R as the real matrix [[Re, -Im], [Im, Re]]
    n = r.shape[0]
    out = np.empty((2 * n, 2 * n))
    out[:n, :n] = out[n:, n:] = r.real
    out[n:, :n] = r.imag
    out[:n, n:] = -r.imag
    return out


def _real_stack(r):
    return np.vstack([r.real, r.imag])


def _square_step(hi, lo):
    """
    ``2R + R @ R`` for ``R = hi + lo`` kept as an unevaluated sum.

    ``hi @ hi`` is formed from an exact partial product plus a small
    correction; terms involving ``lo`` are tiny and computed directly.
    Returns the new ``(hi, lo)``.
    """
    n = hi.shape[0]
    left = _real_block(hi)
    right = _real_stack(hi)
    l_hi, l_lo = _split(left, 1)
    r_hi, r_lo = _split(right, 0)
    exact = l_hi @ r_hi
    small = l_hi @ r_lo + l_lo @ right + _real_stack(2 * lo + hi @ lo + lo @ hi)
    total, err = _two_sum(2 * right, exact)
    total, err = _two_sum(total, err + small)
    return total[:n] + 1j * total[n:], err[:n] + 1j * err[n:]


def expm_oracle(x):
    """
    Matrix exponential by scaling and squaring of a Taylor series.

    ``x`` is scaled by ``2**-s`` until its Frobenius norm is at most 0.5,
    the series is summed until a term drops below ``1e-18`` of the partial
    sum (at most 60 terms), and the result is squared ``s`` times. It shares
    no code with the closed-form exponentials it is used to check.

    The squaring runs on ``R = e^X - I`` as ``R <- 2R + R @ R``, with ``R``
    carried as a pair of doubles and each product split into exactly
    representable partial products. Plain double squaring loses roughly
    ``eps * ||X||^2`` per step, which dominates for strongly non-normal
    inputs such as large multiples of a nilpotent.
    """
    x = as_square(x, "x")
    n = x.shape[0]
    norm = frobenius(x)
    s = max(0, math.ceil(math.log2(norm / 0.5))) if norm > 0.5 else 0
    xs = x / (2.0 ** s)
    eye = identity(n)
    term = xs
    rest = xs.copy()  # partial sum minus the identity
    for k in range(2, 61):
        term = term @ xs / k
        rest = rest + term
        if frobenius(term) < 1e-18 * frobenius(eye + rest):
            break
    lo = np.zeros_like(rest)
    for _ in range(s):
        rest, lo = _square_step(rest, lo)
    return eye + (rest + lo)


def determinant(x):
    """Determinant via LU factorisation with partial pivoting (LAPACK getrf)."""
    return complex(np.linalg.det(as_square(x, "x")))


class RandomSource:
    """
    Seeded generator backed by the counter-based Philox bit generator.

    Streams depend only on the 64-bit seed. :meth:`split` derives
    independent child streams for parallel work.
    """

    def __init__(self, seed, _seq=None):
        seed = int(seed)
        if not 0 <= seed < 2 ** 64:
            raise ValueError(f"seed must be a 64-bit unsigned integer, got {seed}")
        self.seed = seed
        self._seq = _seq if _seq is not None else np.random.SeedSequence(seed)
        self.generator = np.random.Generator(np.random.Philox(self._seq))

    def split(self, k):
        return [RandomSource(self.seed, _seq=child) for child in self._seq.spawn(k)]

    def complex_normal(self, shape):
        """Standard complex Gaussian samples, ``E|z|^2 = 1``."""
        re = self.generator.standard_normal(shape)
        im = self.generator.standard_normal(shape)
        return (re + 1j * im) / math.sqrt(2.0)

    def __repr__(self):
        return f"RandomSource(seed={self.seed})"


def haar_unitary(n, rng):
    """
    Haar-distributed ``n x n`` unitary.

    QR of a complex Ginibre matrix, with each column of Q rescaled by the
    phase of the matching diagonal entry of R so that R has a positive
    real diagonal.
    """
    if n < 1:
        raise BadDimension(f"n must be positive, got {n}")
    z = rng.complex_normal((n, n))
    q, r = np.linalg.qr(z)
    d = np.diag(r)
    mag = np.abs(d)
    phases = np.where(mag > 0, d / np.where(mag > 0, mag, 1), 1)
    return q * phases


def check_same_square(x, y, names=("x", "y")):
    """Return ``x, y`` as square matrices of equal size or raise DimensionMismatch."""
    x = as_matrix(x, names[0])
    y = as_matrix(y, names[1])
    if x.shape[0] != x.shape[1] or y.shape != x.shape:
        raise DimensionMismatch(
            f"{names[0]} and {names[1]} must be square of equal size, got {x.shape} and {y.shape}"
        )
    return x, y
