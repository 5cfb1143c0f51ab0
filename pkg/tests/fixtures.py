"""Shared literal reference tables for the test suite.

Every full table is a five-row probability matrix over the contexts C0..C4
in the canonical cell order, written as exact rational strings.  Tables are
named after the recipe that produces the box (noise family, or state +
observable choice).  Term lists describe convex mixtures of deterministic
vertices as ``(label, weight)`` pairs.

These tables are transcribed independently of the library code so that
construction routines can be checked against fixed literal data.
"""

from __future__ import annotations

from fractions import Fraction

from boxlab.scenario import Box, BellMarginal, validate_bell_marginal, validate_box
from boxlab.vertices import DetBoxId, parse_det_label


def build_box(rows, label: str | None = None) -> Box:
    return validate_box(rows, label=label)


def build_marginal(rows, label: str | None = None) -> BellMarginal:
    return validate_bell_marginal(rows, label=label)


def build_terms(items) -> tuple[tuple[DetBoxId, Fraction], ...]:
    return tuple((parse_det_label(lbl), Fraction(w)) for lbl, w in items)


# ---------------------------------------------------------------------------
# Noise family
# ---------------------------------------------------------------------------

# Ideal parity box: perfect C0/C3 correlation, even C1/C2 parity, D != E.
PERES_TABLE = [
    ["1/2", "0", "0", "1/2"],
    ["1/4", "0", "0", "1/4", "0", "1/4", "1/4", "0"],
    ["1/4", "0", "0", "1/4", "0", "1/4", "1/4", "0"],
    ["1/2", "0", "0", "1/2"],
    ["0", "1/2", "1/2", "0"],
]

# Noise endpoint of the family: uniform C0/C3/C4, even-parity C1/C2.
NOISE_TABLE = [
    ["1/4", "1/4", "1/4", "1/4"],
    ["1/4", "0", "0", "1/4", "0", "1/4", "1/4", "0"],
    ["1/4", "0", "0", "1/4", "0", "1/4", "1/4", "0"],
    ["1/4", "1/4", "1/4", "1/4"],
    ["1/4", "1/4", "1/4", "1/4"],
]

# Mixture at weight 1/3 on the parity box.
NOISY_THIRD_TABLE = [
    ["1/3", "1/6", "1/6", "1/3"],
    ["1/4", "0", "0", "1/4", "0", "1/4", "1/4", "0"],
    ["1/4", "0", "0", "1/4", "0", "1/4", "1/4", "0"],
    ["1/3", "1/6", "1/6", "1/3"],
    ["1/6", "1/3", "1/3", "1/6"],
]

# Same as NOISY_THIRD_TABLE except the C4 row is reversed (correlated rather
# than anticorrelated).  This is the box actually reconstructed by
# NOISY_THIRD_MODEL_16_LISTED below.
NOISY_THIRD_C4_FLIPPED_TABLE = [
    ["1/3", "1/6", "1/6", "1/3"],
    ["1/4", "0", "0", "1/4", "0", "1/4", "1/4", "0"],
    ["1/4", "0", "0", "1/4", "0", "1/4", "1/4", "0"],
    ["1/3", "1/6", "1/6", "1/3"],
    ["1/3", "1/6", "1/6", "1/3"],
]

# The sixteen vertices whose zeros are compatible with the noisy family at
# any mixing weight below 1.
NOISY_SUPPORT_LABELS_16 = (
    "(0000)(00)", "(0101)(00)", "(1011)(00)", "(1110)(00)",
    "(0010)(10)", "(0111)(10)", "(1001)(10)", "(1100)(10)",
    "(0011)(01)", "(0110)(01)", "(1000)(01)", "(1101)(01)",
    "(0001)(11)", "(0100)(11)", "(1010)(11)", "(1111)(11)",
)

# Sixteen-term mixture quoted for the weight-1/3 box: 1/8 on four vertices
# and 1/24 on the remaining twelve.  Its reconstruction flips the C4 row,
# so it does NOT reproduce NOISY_THIRD_TABLE (see the C4-flipped table).
NOISY_THIRD_MODEL_16_LISTED = (
    ("(0000)(00)", "1/8"), ("(0101)(00)", "1/8"),
    ("(1011)(00)", "1/24"), ("(1110)(00)", "1/24"),
    ("(0010)(10)", "1/24"), ("(0111)(10)", "1/24"),
    ("(1001)(10)", "1/24"), ("(1100)(10)", "1/24"),
    ("(0011)(01)", "1/24"), ("(0110)(01)", "1/24"),
    ("(1000)(01)", "1/24"), ("(1101)(01)", "1/24"),
    ("(0001)(11)", "1/24"), ("(0100)(11)", "1/24"),
    ("(1010)(11)", "1/8"), ("(1111)(11)", "1/8"),
)

# Four-term uniform model quoted for the noise endpoint.  The middle two
# labels carry swapped (de) suffixes and the mixture does not reconstruct
# NOISE_TABLE; NOISE_MODEL_4 below is the corrected set.
NOISE_MODEL_4_LISTED = (
    ("(0000)(00)", "1/4"), ("(0110)(10)", "1/4"),
    ("(0111)(01)", "1/4"), ("(0001)(11)", "1/4"),
)

NOISE_MODEL_4 = (
    ("(0000)(00)", "1/4"), ("(0110)(01)", "1/4"),
    ("(0111)(10)", "1/4"), ("(0001)(11)", "1/4"),
)


# ---------------------------------------------------------------------------
# Max-entangled state with product observables
# ---------------------------------------------------------------------------

# Reference table with uniform middle contexts (D independent of B1).
ME_PRODUCT_REFERENCE_TABLE = [
    ["1/2", "0", "0", "1/2"],
    ["1/8", "1/8", "1/8", "1/8", "1/8", "1/8", "1/8", "1/8"],
    ["1/8", "1/8", "1/8", "1/8", "1/8", "1/8", "1/8", "1/8"],
    ["1/2", "0", "0", "1/2"],
    ["1/2", "0", "0", "1/2"],
]

# Box the quantum recipe actually produces: with the product observable set,
# D acts identically to B1 (and E to A1), so the middle contexts correlate
# those outcomes instead of leaving D and E uniform and independent.
ME_PRODUCT_QUANTUM_TABLE = [
    ["1/2", "0", "0", "1/2"],
    ["1/4", "0", "1/4", "0", "0", "1/4", "0", "1/4"],
    ["1/4", "1/4", "0", "0", "0", "0", "1/4", "1/4"],
    ["1/2", "0", "0", "1/2"],
    ["1/2", "0", "0", "1/2"],
]

# Eight-term uniform mixture reconstructing ME_PRODUCT_REFERENCE_TABLE.
ME_PRODUCT_MODEL_8 = (
    ("(0000)(00)", "1/8"), ("(0101)(00)", "1/8"),
    ("(1010)(00)", "1/8"), ("(1111)(00)", "1/8"),
    ("(0000)(11)", "1/8"), ("(0101)(11)", "1/8"),
    ("(1010)(11)", "1/8"), ("(1111)(11)", "1/8"),
)


# ---------------------------------------------------------------------------
# Rank-2 separable state with the parity observables
# ---------------------------------------------------------------------------

RANK2_PERES_TABLE = [
    ["5/8", "1/8", "1/8", "1/8"],
    ["1/2", "0", "0", "0", "0", "1/4", "1/4", "0"],
    ["1/2", "0", "0", "0", "0", "1/4", "1/4", "0"],
    ["5/8", "1/8", "1/8", "1/8"],
    ["1/4", "1/4", "1/4", "1/4"],
]

# Seven-term model reconstructing RANK2_PERES_TABLE (weight 1/4 on the
# first vertex, 1/8 on the rest).
RANK2_MODEL_7 = (
    ("(0000)(00)", "1/4"),
    ("(0010)(10)", "1/8"), ("(0011)(01)", "1/8"),
    ("(1000)(01)", "1/8"), ("(1010)(11)", "1/8"),
    ("(1100)(10)", "1/8"), ("(1111)(11)", "1/8"),
)


# ---------------------------------------------------------------------------
# Classically correlated state
# ---------------------------------------------------------------------------

# With the parity observables.
CC_PERES_TABLE = [
    ["1/2", "0", "0", "1/2"],
    ["1/4", "0", "0", "1/4", "0", "1/4", "1/4", "0"],
    ["1/4", "0", "0", "1/4", "0", "1/4", "1/4", "0"],
    ["1/4", "1/4", "1/4", "1/4"],
    ["1/4", "1/4", "1/4", "1/4"],
]

CC_PERES_MODEL_4 = (
    ("(0000)(00)", "1/4"), ("(0111)(10)", "1/4"),
    ("(1101)(01)", "1/4"), ("(1010)(11)", "1/4"),
)

# With the rotated (diagonal/antidiagonal) observables.
CC_ROTATED_TABLE = [
    ["3/8", "1/8", "1/8", "3/8"],
    ["3/8", "0", "0", "3/8", "0", "1/8", "1/8", "0"],
    ["3/8", "0", "0", "3/8", "0", "1/8", "1/8", "0"],
    ["3/8", "1/8", "1/8", "3/8"],
    ["1/2", "1/4", "1/4", "0"],
]

CC_ROTATED_MODEL_6 = (
    ("(0000)(00)", "1/4"), ("(0101)(00)", "1/4"),
    ("(0010)(10)", "1/8"), ("(0111)(10)", "1/8"),
    ("(0011)(01)", "1/8"), ("(0110)(01)", "1/8"),
)


# ---------------------------------------------------------------------------
# Rank-3 separable states with the parity observables
# ---------------------------------------------------------------------------

# From the rank-3 state mixing |00>, |++> and the +1 eigenstate of Y (x) Y.
RANK3_SIGMA_PERES_TABLE = [
    ["1/2", "1/6", "1/6", "1/6"],
    ["5/12", "0", "0", "1/12", "0", "1/4", "1/4", "0"],
    ["5/12", "0", "0", "1/12", "0", "1/4", "1/4", "0"],
    ["1/2", "1/6", "1/6", "1/6"],
    ["1/6", "1/3", "1/3", "1/6"],
]

# Noncontextual remainder left after removing the maximal parity-box
# component (weight 1/3) from RANK3_SIGMA_PERES_TABLE.
RANK3_SIGMA_RESIDUAL_TABLE = [
    ["1/2", "1/4", "1/4", "0"],
    ["1/2", "0", "0", "0", "0", "1/4", "1/4", "0"],
    ["1/2", "0", "0", "0", "0", "1/4", "1/4", "0"],
    ["1/2", "1/4", "1/4", "0"],
    ["1/4", "1/4", "1/4", "1/4"],
]

# From the Bell-diagonal rank-3 state mixing |00>, |++>, |11>, |-->.
RANK3_RHO_PERES_TABLE = [
    ["3/8", "1/8", "1/8", "3/8"],
    ["1/4", "0", "0", "1/4", "0", "1/4", "1/4", "0"],
    ["1/4", "0", "0", "1/4", "0", "1/4", "1/4", "0"],
    ["3/8", "1/8", "1/8", "3/8"],
    ["1/4", "1/4", "1/4", "1/4"],
]


# ---------------------------------------------------------------------------
# Deterministic vertex tables (transcribed literal matrices)
# ---------------------------------------------------------------------------

# Six full vertex tables spanning three different (de) sectors.
DET_TABLES = {
    "(0110)(00)": [
        ["0", "0", "1", "0"],
        ["0", "0", "0", "1", "0", "0", "0", "0"],
        ["0", "0", "1", "0", "0", "0", "0", "0"],
        ["0", "0", "0", "1"],
        ["1", "0", "0", "0"],
    ],
    "(1010)(00)": [
        ["1", "0", "0", "0"],
        ["0", "1", "0", "0", "0", "0", "0", "0"],
        ["0", "0", "1", "0", "0", "0", "0", "0"],
        ["0", "0", "0", "1"],
        ["1", "0", "0", "0"],
    ],
    "(0000)(10)": [
        ["1", "0", "0", "0"],
        ["0", "0", "0", "0", "1", "0", "0", "0"],
        ["1", "0", "0", "0", "0", "0", "0", "0"],
        ["1", "0", "0", "0"],
        ["0", "0", "1", "0"],
    ],
    "(1011)(10)": [
        ["0", "1", "0", "0"],
        ["0", "0", "0", "0", "1", "0", "0", "0"],
        ["0", "0", "0", "1", "0", "0", "0", "0"],
        ["0", "0", "1", "0"],
        ["0", "0", "1", "0"],
    ],
    "(0010)(01)": [
        ["1", "0", "0", "0"],
        ["0", "1", "0", "0", "0", "0", "0", "0"],
        ["0", "0", "0", "0", "1", "0", "0", "0"],
        ["0", "1", "0", "0"],
        ["0", "1", "0", "0"],
    ],
    "(1100)(01)": [
        ["0", "0", "1", "0"],
        ["0", "0", "1", "0", "0", "0", "0", "0"],
        ["0", "0", "0", "0", "1", "0", "0", "0"],
        ["1", "0", "0", "0"],
        ["0", "1", "0", "0"],
    ],
}

# All sixteen deterministic Bell-marginal tables, rows ordered
# (A0B0, A0B1, A1B0, A1B1).
LOCAL_DET_TABLES = {
    "0000": [["1", "0", "0", "0"]] * 4,
    "0001": [["0", "1", "0", "0"]] * 4,
    "0010": [["1", "0", "0", "0"], ["0", "1", "0", "0"],
             ["1", "0", "0", "0"], ["0", "1", "0", "0"]],
    "0011": [["0", "1", "0", "0"], ["1", "0", "0", "0"],
             ["0", "1", "0", "0"], ["1", "0", "0", "0"]],
    "0100": [["0", "0", "1", "0"]] * 4,
    "0101": [["0", "0", "0", "1"]] * 4,
    "0110": [["0", "0", "1", "0"], ["0", "0", "0", "1"],
             ["0", "0", "1", "0"], ["0", "0", "0", "1"]],
    "0111": [["0", "0", "0", "1"], ["0", "0", "1", "0"],
             ["0", "0", "0", "1"], ["0", "0", "1", "0"]],
    "1000": [["1", "0", "0", "0"], ["1", "0", "0", "0"],
             ["0", "0", "1", "0"], ["0", "0", "1", "0"]],
    "1001": [["0", "1", "0", "0"], ["0", "1", "0", "0"],
             ["0", "0", "0", "1"], ["0", "0", "0", "1"]],
    "1010": [["1", "0", "0", "0"], ["0", "1", "0", "0"],
             ["0", "0", "1", "0"], ["0", "0", "0", "1"]],
    "1011": [["0", "1", "0", "0"], ["1", "0", "0", "0"],
             ["0", "0", "0", "1"], ["0", "0", "1", "0"]],
    "1100": [["0", "0", "1", "0"], ["0", "0", "1", "0"],
             ["1", "0", "0", "0"], ["1", "0", "0", "0"]],
    "1101": [["0", "0", "0", "1"], ["0", "0", "0", "1"],
             ["0", "1", "0", "0"], ["0", "1", "0", "0"]],
    "1110": [["0", "0", "1", "0"], ["0", "0", "0", "1"],
             ["1", "0", "0", "0"], ["0", "1", "0", "0"]],
    "1111": [["0", "0", "0", "1"], ["0", "0", "1", "0"],
             ["0", "1", "0", "0"], ["1", "0", "0", "0"]],
}


# ---------------------------------------------------------------------------
# Hand-built diagnostic boxes
# ---------------------------------------------------------------------------

# Bit-flip relabelling of the parity box: anticorrelated C0/C3/C4 and odd
# C1/C2 parity.  Contextual, but carries no positive parity-box component.
PERES_RELABELLED_TABLE = [
    ["0", "1/2", "1/2", "0"],
    ["0", "1/4", "1/4", "0", "1/4", "0", "0", "1/4"],
    ["0", "1/4", "1/4", "0", "1/4", "0", "0", "1/4"],
    ["0", "1/2", "1/2", "0"],
    ["0", "1/2", "1/2", "0"],
]

# Noncontextual cousin of the relabelled box (C4 correlated instead).
PERES_RELABELLED_C4_CORR_TABLE = [
    ["0", "1/2", "1/2", "0"],
    ["0", "1/4", "1/4", "0", "1/4", "0", "0", "1/4"],
    ["0", "1/4", "1/4", "0", "1/4", "0", "0", "1/4"],
    ["0", "1/2", "1/2", "0"],
    ["1/2", "0", "0", "1/2"],
]
