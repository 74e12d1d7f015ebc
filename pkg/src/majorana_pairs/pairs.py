"""
Anticommuting Hermitian involution pairs.

A pair ``(A, B)`` of ``n x n`` matrices is *certified* when both are
Hermitian, ``A @ A = B @ B = I`` and ``A @ B + B @ A = 0`` hold to within a
stated Frobenius tolerance. Such pairs exist only for even ``n``.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import (
    BadDimension,
    NotCertified,
    NotHermitian,
    NotInvolution,
    OddDimension,
    UnbalancedSpectrum,
)
from .matrix_core import (
    SIGMA_1,
    SIGMA_2,
    SIGMA_3,
    as_square,
    check_same_square,
    dagger,
    default_tol,
    direct_sum,
    frobenius,
    haar_unitary,
    hermitian_eig,
    hermitian_residual,
    identity,
    involution_residual,
    kron,
    star_embed,
)

# eigenvalues this close to +1 / -1 are assigned to that eigenspace
CLUSTER_TOL = 1e-6
# Jacobi converges quadratically, so a tight stop costs about one extra sweep
EIG_TOL = 1e-14


@dataclass(frozen=True)
class VerificationReport:
    residual_hermitian_a: float
    residual_hermitian_b: float
    residual_involution_a: float
    residual_involution_b: float
    residual_anticommute: float
    trace_ab_abs: float
    passed: bool
    tol: float

    RESIDUALS = (
        "residual_hermitian_a",
        "residual_hermitian_b",
        "residual_involution_a",
        "residual_involution_b",
        "residual_anticommute",
    )

    def residuals(self):
        return {name: getattr(self, name) for name in self.RESIDUALS}

    def max_residual(self):
        return max(self.residuals().values())


@dataclass(frozen=True, eq=False)
class InvolutionPair:
    """
    A certified pair; build it with :meth:`certify` or one of the
    constructors below rather than directly.

    Unpacks as ``a, b = pair``.
    """

    a: np.ndarray
    b: np.ndarray
    n: int
    certified_tol: float

    @classmethod
    def certify(cls, a, b, tol=None):
        a, b = check_same_square(a, b, ("a", "b"))
        n = a.shape[0]
        if n % 2:
            raise OddDimension(n)
        report = verify_pair(a, b, tol)
        if not report.passed:
            raise NotCertified(report)
        a, b = a.copy(), b.copy()
        a.setflags(write=False)
        b.setflags(write=False)
        return cls(a=a, b=b, n=n, certified_tol=report.tol)

    def __iter__(self):
        yield self.a
        yield self.b

    def report(self):
        return verify_pair(self.a, self.b, self.certified_tol)


def anticommutator(x, y):
    """``x @ y + y @ x`` for square matrices of equal size."""
    x, y = check_same_square(x, y)
    return x @ y + y @ x


def verify_pair(a, b, tol=None):
    """
    Residuals of the pair conditions.

    Never raises on a failed check; inspect ``passed`` on the report.
    ``tol=None`` means ``1e-10 * max(1, ||A||_F, ||B||_F)``.
    """
    a, b = check_same_square(a, b, ("a", "b"))
    if tol is None:
        tol = default_tol(a, b)
    ab = a @ b
    residuals = dict(
        residual_hermitian_a=hermitian_residual(a),
        residual_hermitian_b=hermitian_residual(b),
        residual_involution_a=involution_residual(a),
        residual_involution_b=involution_residual(b),
        residual_anticommute=frobenius(ab + b @ a),
    )
    return VerificationReport(
        **residuals,
        trace_ab_abs=float(abs(np.trace(ab))),
        passed=all(r <= tol for r in residuals.values()),
        tol=float(tol),
    )


def _require_even(n):
    if n < 1:
        raise BadDimension(f"dimension must be positive, got {n}")
    if n % 2:
        raise OddDimension(n)


def _canonical_matrices(n):
    half = n // 2
    a = np.diag(np.r_[np.ones(half), -np.ones(half)]).astype(np.complex128)
    b = np.zeros((n, n), dtype=np.complex128)
    j = np.arange(half)
    b[j, j + half] = 1
    b[j + half, j] = 1
    return a, b


def canonical_pair(n, tol=None):
    """
    ``A = diag(+1 ... +1, -1 ... -1)`` and ``B`` swapping ``e_j`` with
    ``e_{j + n/2}``. For ``n = 2`` this is ``(sigma_3, sigma_1)``.
    """
    _require_even(n)
    return InvolutionPair.certify(*_canonical_matrices(n), tol)


def pauli_chain_pair(n, tol=None):
    """
    ``(sigma_3 x ... x sigma_3 x sigma_1, -sigma_3 x ... x sigma_3 x sigma_2)``
    for ``n`` a power of two, built by repeated :func:`lift_kron` with sigma_3.
    """
    _require_even(n)
    if n & (n - 1):
        raise BadDimension(f"pauli chain needs a power-of-two size, got {n}")
    pair = InvolutionPair.certify(SIGMA_1, -SIGMA_2, tol)
    while pair.n < n:
        a, b = kron(SIGMA_3, pair.a), kron(SIGMA_3, pair.b)
        pair = InvolutionPair.certify(a, b, pair.certified_tol)
    return pair


def random_pair(n, rng, tol=None):
    """Conjugate :func:`canonical_pair` by a Haar unitary drawn from ``rng``."""
    _require_even(n)
    a0, b0 = _canonical_matrices(n)
    u = haar_unitary(n, rng)
    ud = dagger(u)
    return InvolutionPair.certify(u @ a0 @ ud, u @ b0 @ ud, tol)


def random_involution(n, rng, plus=None):
    """Random Hermitian involution ``U diag(+-1) U*``; ``plus`` eigenvalues equal +1 (default n // 2)."""
    if plus is None:
        plus = n // 2
    signs = np.r_[np.ones(plus), -np.ones(n - plus)]
    u = haar_unitary(n, rng)
    return (u * signs) @ dagger(u)


def _orthonormalize(vectors):
    """Modified Gram-Schmidt on the columns."""
    q = np.array(vectors, dtype=np.complex128)
    for j in range(q.shape[1]):
        for i in range(j):
            q[:, j] -= np.vdot(q[:, i], q[:, j]) * q[:, i]
        q[:, j] /= np.linalg.norm(q[:, j])
    return q


def derive_partner(a, tol=None):
    """
    Build a partner ``B`` for a traceless Hermitian involution ``A``.

    With ``v+_j`` and ``v-_j`` orthonormal eigenvectors for +1 and -1,
    ``B = sum_j (v+_j v-_j* + v-_j v+_j*)``. Eigenvectors are paired in the
    order the eigensolver returns them.

    Raises
    ------
    OddDimension
        ``A`` has odd size.
    NotHermitian, NotInvolution
        ``A`` is not a Hermitian involution within ``tol``.
    UnbalancedSpectrum
        ``tr A != 0``, so the +1 and -1 eigenspaces differ in dimension and
        no partner exists.
    """
    a = as_square(a, "a")
    n = a.shape[0]
    if n % 2:
        raise OddDimension(n)
    if tol is None:
        tol = default_tol(a)
    if hermitian_residual(a) > tol:
        raise NotHermitian(f"||A - A*||_F = {hermitian_residual(a):.3e} exceeds {tol:g}")
    if involution_residual(a) > tol:
        raise NotInvolution(f"||A^2 - I||_F = {involution_residual(a):.3e} exceeds {tol:g}")
    trace = np.trace(a)
    if abs(trace) > tol * n:
        raise UnbalancedSpectrum(f"tr A = {trace.real:g}: eigenspaces of +1 and -1 differ in dimension")

    spec = hermitian_eig(a, tol=EIG_TOL)
    plus = np.abs(spec.values - 1) <= CLUSTER_TOL
    minus = np.abs(spec.values + 1) <= CLUSTER_TOL
    if plus.sum() + minus.sum() != n:
        raise NotInvolution("eigenvalues away from +1 and -1")
    if plus.sum() != minus.sum():
        raise UnbalancedSpectrum(f"{plus.sum()} eigenvalues +1 versus {minus.sum()} eigenvalues -1")

    vp = _orthonormalize(spec.vectors[:, plus])
    vm = _orthonormalize(spec.vectors[:, minus])
    cross = vp @ dagger(vm)
    return cross + dagger(cross)


def _lift_tol(pair, tol=None):
    base = pair.certified_tol if tol is None else max(tol, pair.certified_tol)
    return 10 * base


def lift_kron(c, pair, tol=None):
    """``(C x A, C x B)`` for a Hermitian involution ``C`` of any size."""
    c = as_square(c, "c")
    if tol is None:
        tol = default_tol(c)
    if hermitian_residual(c) > tol:
        raise NotHermitian(f"||C - C*||_F = {hermitian_residual(c):.3e} exceeds {tol:g}")
    if involution_residual(c) > tol:
        raise NotInvolution(f"||C^2 - I||_F = {involution_residual(c):.3e} exceeds {tol:g}")
    return InvolutionPair.certify(kron(c, pair.a), kron(c, pair.b), _lift_tol(pair, tol))


def lift_direct_sum(pair):
    """``(A + A, B + B)`` as block-diagonal matrices of twice the size."""
    return InvolutionPair.certify(
        direct_sum(pair.a, pair.a), direct_sum(pair.b, pair.b), _lift_tol(pair)
    )


def lift_star(pair):
    if pair.n != 2:
        raise BadDimension(f"star lift is defined for 2x2 pairs only, got n = {pair.n}")
    return InvolutionPair.certify(star_embed(pair.a), star_embed(pair.b), _lift_tol(pair))


def nilpotent(pair):
    """``N = A + iB``; ``N @ N = 0`` and ``N* N - N N* = 4i AB``."""
    a, b = pair
    return np.asarray(a) + 1j * np.asarray(b)


def kron_anticommutator_table(pair):
    """
    Differences between both sides of the three Kronecker anticommutator identities
    ``{A x A, B x B} = 2 AB x AB``, ``{A x B, A x B} = 2 I x I`` and
    ``{A x B, B x A} = -2 AB x AB``, as Frobenius norms.
    """
    a, b = pair
    ab = a @ b
    n = a.shape[0]
    abab = kron(ab, ab)
    return (
        frobenius(anticommutator(kron(a, a), kron(b, b)) - 2 * abab),
        frobenius(anticommutator(kron(a, b), kron(a, b)) - 2 * identity(n * n)),
        frobenius(anticommutator(kron(a, b), kron(b, a)) + 2 * abab),
    )

