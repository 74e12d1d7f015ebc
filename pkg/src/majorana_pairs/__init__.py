"""Anticommuting Hermitian involution pairs: construction, lifts and closed-form exponentials."""

__version__ = "0.1.0"

from .errors import *  # noqa: E402,F401,F403
from .matrix_core import (  # noqa: E402
    IDENTITY_2,
    SIGMA_1,
    SIGMA_2,
    SIGMA_3,
    RandomSource,
    SpectralDecomposition,
    determinant,
    direct_sum,
    expm_oracle,
    haar_unitary,
    hermitian_eig,
    kron,
    star_embed,
)
from .pairs import (  # noqa: E402
    InvolutionPair,
    VerificationReport,
    anticommutator,
    canonical_pair,
    derive_partner,
    lift_direct_sum,
    lift_kron,
    lift_star,
    nilpotent,
    pauli_chain_pair,
    random_pair,
    verify_pair,
)
from .closed_form import (  # noqa: E402
    SeriesTruncation,
    anticomm_series,
    conjugation_identities,
    exp_involution,
    exp_kron_pair,
    exp_nilpotent,
    exp_product,
)
from .io_format import read_matrix, read_report, write_matrix, write_report  # noqa: E402
