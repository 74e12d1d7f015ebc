"""
Closed-form exponentials for involution pairs and the anticommutator series.

For a Hermitian involution ``A`` and a certified pair ``(A, B)``::

    exp(zA)        = cosh(z) I + sinh(z) A
    exp(zAB)       = cos(z) I + sin(z) AB          since (AB)^2 = -I
    exp(z A x B)   = cosh(z) I + sinh(z) A x B
    exp(z(A + iB)) = I + z(A + iB)                 since (A + iB)^2 = 0

and ``e^X Y e^X`` expands as ``sum_k ad(X)^k(Y) / k!`` with
``ad(X)(Y) = XY + YX``.
"""
from __future__ import annotations

import cmath
import warnings
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .errors import NotInvolution, TruncationNotConverged
from .matrix_core import (
    as_square,
    check_same_square,
    default_tol,
    expm_oracle,
    frobenius,
    identity,
    involution_residual,
    kron,
)
from .pairs import nilpotent


@dataclass(frozen=True)
class SeriesTruncation:
    max_terms: int = 40
    term_tol: float = 1e-16

    def __post_init__(self):
        if self.max_terms < 1:
            raise ValueError("max_terms must be at least 1")
        if not self.term_tol > 0:
            raise ValueError("term_tol must be positive")


class SeriesResult(NamedTuple):
    value: np.ndarray
    terms: int
    converged: bool


class ConjugationResiduals(NamedTuple):
    """Frobenius residuals of the three conjugation identities."""

    right: float    # ||e^A B e^-A - B e^-2A||
    left: float     # ||e^A B e^-A - e^2A B||
    inverse: float  # ||e^-A - B e^A B||

    def max(self):
        return max(self)


def exp_involution(a, z, tol=None):
    """``cosh(z) I + sinh(z) A``; raises NotInvolution unless ``A @ A = I`` within ``tol``."""
    a = as_square(a, "a")
    if tol is None:
        tol = default_tol(a)
    res = involution_residual(a)
    if res > tol:
        raise NotInvolution(f"||A^2 - I||_F = {res:.3e} exceeds {tol:g}")
    return _cosh_sinh(a, z)


def _cosh_sinh(a, z):
    z = complex(z)
    return cmath.cosh(z) * identity(a.shape[0]) + cmath.sinh(z) * a


def exp_product(pair, z):
    a, b = pair
    z = complex(z)
    return cmath.cos(z) * identity(a.shape[0]) + cmath.sin(z) * (a @ b)


def exp_kron_pair(pair, z):
    a, b = pair
    z = complex(z)
    n = a.shape[0]
    return cmath.cosh(z) * identity(n * n) + cmath.sinh(z) * kron(a, b)


def exp_nilpotent(pair, z):
    """``I + zN`` with ``N = A + iB``; exact because ``N @ N = 0``."""
    n_mat = nilpotent(pair)
    return identity(n_mat.shape[0]) + complex(z) * n_mat


def anticomm_series_info(x, y, trunc=None):
    """
    Truncated series for ``e^X Y e^X`` together with the number of terms
    used and whether the term tolerance was met.
    """
    x, y = check_same_square(x, y)
    trunc = trunc or SeriesTruncation()
    total = y.copy()
    term = y
    for k in range(1, trunc.max_terms + 1):
        term = (x @ term + term @ x) / k
        total = total + term
        term_norm = frobenius(term)
        if term_norm == 0 or term_norm < trunc.term_tol * frobenius(total):
            return SeriesResult(total, k, True)
    warnings.warn(
        f"anticommutator series not converged after {trunc.max_terms} terms "
        f"(last term norm {term_norm:.3e})",
        TruncationNotConverged,
        stacklevel=2,
    )
    return SeriesResult(total, trunc.max_terms, False)


def anticomm_series(x, y, trunc=None):
    """
    ``Y + [X,Y] + [X,[X,Y]]/2! + ...`` with ``[X,Y] = XY + YX``, which sums to
    ``e^X Y e^X``.

    Issues a :class:`TruncationNotConverged` warning (and still returns the
    partial sum) when ``trunc.term_tol`` is not met within ``trunc.max_terms``.
    Truncation defaults are sized for ``||X||_F <= 4``.
    """
    return anticomm_series_info(x, y, trunc).value


def conjugate(x, y, side="right", trunc=None, tol=None):
    """
    ``e^X Y e^-X``.

    For an involution ``X`` this is the series times ``e^{-2X}`` on the right
    (``side="right"``) or ``e^{2X}`` times the series in ``-X`` on the left
    (``side="left"``), with the exponential factors in closed form. Any other
    ``X`` goes through :func:`expm_oracle`.
    """
    x, y = check_same_square(x, y)
    if tol is None:
        tol = default_tol(x)
    if involution_residual(x) > tol:
        return expm_oracle(x) @ y @ expm_oracle(-x)
    if side == "right":
        return anticomm_series(x, y, trunc) @ exp_involution(x, -2, tol)
    if side == "left":
        return exp_involution(x, 2, tol) @ anticomm_series(-x, y, trunc)
    raise ValueError(f"side must be 'right' or 'left', got {side!r}")


def conjugation_identities(pair):
    """
    Residuals of ``e^A B e^-A = B e^-2A``, ``e^A B e^-A = e^2A B`` and
    ``e^-A = B e^A B``, every exponential in closed form.

    ``pair`` may be an :class:`InvolutionPair` or any ``(A, B)`` tuple; an
    uncertified tuple simply yields large residuals.
    """
    a, b = pair
    a = as_square(a, "a")
    e = {k: _cosh_sinh(a, k) for k in (-2, -1, 1, 2)}
    lhs = e[1] @ b @ e[-1]
    return ConjugationResiduals(
        right=frobenius(lhs - b @ e[-2]),
        left=frobenius(lhs - e[2] @ b),
        inverse=frobenius(e[-1] - b @ e[1] @ b),
    )
