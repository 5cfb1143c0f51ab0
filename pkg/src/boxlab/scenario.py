"""Five-context measurement scenario with exact-rational probability boxes.

The scenario has six two-outcome observables A0, A1, B0, B1, D, E grouped into
five jointly measurable contexts::

    C0 = (A0, B0)      4 outcomes
    C1 = (A0, B1, D)   8 outcomes
    C2 = (A1, B0, E)   8 outcomes
    C3 = (A1, B1)      4 outcomes
    C4 = (D, E)        4 outcomes

A :class:`Box` stores one exact-rational probability distribution per context
(28 entries total).  Every observable appears in exactly two contexts; a valid
box satisfies the no-disturbance condition that its single-observable marginal
is the same whichever hosting context it is computed from.

Outcome indexing
----------------
Outcomes are bit tuples in the order the context lists its observables.  Bit 0
maps to measurement result +1 and bit 1 to -1 in all expectation values.
Four-outcome contexts index outcome (o1, o2) at ``2*o1 + o2``.  Eight-outcome
contexts use the fixed column order::

    000, 010, 100, 110, 001, 011, 101, 111

i.e. outcome (o1, o2, o3) lives at flat index ``4*o3 + 2*o1 + o2``.  All
serialization follows this order.
"""

from __future__ import annotations

import decimal
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from .errors import (
    BoxParseError,
    NegativeEntry,
    NoDisturbanceViolation,
    NotNormalized,
    ParameterOutOfRange,
)

Rational = Fraction

CONTEXT_IDS: tuple[str, ...] = ("C0", "C1", "C2", "C3", "C4")

CONTEXT_OBSERVABLES: dict[str, tuple[str, ...]] = {
    "C0": ("A0", "B0"),
    "C1": ("A0", "B1", "D"),
    "C2": ("A1", "B0", "E"),
    "C3": ("A1", "B1"),
    "C4": ("D", "E"),
}

CONTEXT_SIZES: dict[str, int] = {c: 2 ** len(o) for c, o in CONTEXT_OBSERVABLES.items()}

#: Each observable's two hosting contexts with its position in their outcome tuples.
OBSERVABLE_HOSTS: dict[str, tuple[tuple[str, int], tuple[str, int]]] = {
    "A0": (("C0", 0), ("C1", 0)),
    "B0": (("C0", 1), ("C2", 1)),
    "B1": (("C1", 1), ("C3", 1)),
    "A1": (("C2", 0), ("C3", 0)),
    "D": (("C1", 2), ("C4", 0)),
    "E": (("C2", 2), ("C4", 1)),
}

_ORDER4: tuple[tuple[int, int], ...] = ((0, 0), (0, 1), (1, 0), (1, 1))
_ORDER8: tuple[tuple[int, int, int], ...] = (
    (0, 0, 0), (0, 1, 0), (1, 0, 0), (1, 1, 0),
    (0, 0, 1), (0, 1, 1), (1, 0, 1), (1, 1, 1),
)

#: Outcome tuples of each context in flat-index order.
OUTCOME_ORDERS: dict[str, tuple[tuple[int, ...], ...]] = {
    c: (_ORDER8 if CONTEXT_SIZES[c] == 8 else _ORDER4) for c in CONTEXT_IDS
}


def outcome_index(context: str, outcome: Sequence[int]) -> int:
    """Flat index of an outcome bit tuple within its context's distribution."""
    bits = tuple(outcome)
    if len(bits) == 2:
        return 2 * bits[0] + bits[1]
    return 4 * bits[2] + 2 * bits[0] + bits[1]


_RATIONAL_RE = re.compile(r"^[+-]?\d+(/\d+)?$")


def as_rational(value) -> Fraction:
    """Convert ``value`` to an exact :class:`~fractions.Fraction`.

    Accepts Fractions, ints, and strings like ``"1/3"`` or ``"2"``.  Floats and
    decimal strings are rejected to protect exactness.
    """
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise BoxParseError(f"not a rational value: {value!r}")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        text = value.strip()
        if not _RATIONAL_RE.match(text):
            raise BoxParseError(
                f"not an exact rational string: {value!r} (use 'num/den')"
            )
        try:
            return Fraction(text)
        except ZeroDivisionError:
            raise BoxParseError(f"zero denominator in {value!r}") from None
    if isinstance(value, float):
        raise BoxParseError(
            f"float {value!r} rejected: boxes are exact-rational (use 'num/den')"
        )
    raise BoxParseError(f"not a rational value: {value!r}")


def format_rational(value: Fraction) -> str:
    """Canonical string for a rational: ``'1/3'``, ``'0'``, ``'1'``."""
    return str(value)


def rational_to_decimal(value: Fraction, digits: int = 12) -> str:
    """Deterministic decimal rendering to ``digits`` significant digits."""
    with decimal.localcontext() as ctx:
        ctx.prec = digits
        quotient = decimal.Decimal(value.numerator) / decimal.Decimal(
            value.denominator)
    return str(quotient)


@dataclass(frozen=True)
class Box:
    """Immutable probability box: one exact distribution per context.

    Instances are produced by :func:`validate_box` (or helpers that build
    already-valid boxes) and satisfy nonnegativity, per-context normalization,
    and no-disturbance exactly.
    """

    contexts: tuple[tuple[Fraction, ...], ...]
    label: str | None = None

    def context(self, context_id: str) -> tuple[Fraction, ...]:
        """The distribution of one context, in flat-index order."""
        return self.contexts[CONTEXT_IDS.index(context_id)]

    def entries(self) -> tuple[Fraction, ...]:
        """All 28 entries concatenated in context order."""
        return tuple(p for dist in self.contexts for p in dist)

    def with_label(self, label: str | None) -> "Box":
        return Box(self.contexts, label)


def _marginal_from(dist: Sequence[Fraction], context: str, position: int) -> tuple[Fraction, Fraction]:
    p0 = sum((p for o, p in zip(OUTCOME_ORDERS[context], dist) if o[position] == 0),
             Fraction(0))
    p1 = sum((p for o, p in zip(OUTCOME_ORDERS[context], dist) if o[position] == 1),
             Fraction(0))
    return (p0, p1)


def validate_box(raw, label: str | None = None) -> Box:
    """Validate raw per-context probability vectors and return a :class:`Box`.

    ``raw`` is a sequence of five vectors with lengths (4, 8, 8, 4, 4), or a
    mapping from context id to vector.  Entries may be Fractions, ints, or
    exact rational strings.  All checks are exact; no tolerances.

    Raises
    ------
    NegativeEntry, NotNormalized, NoDisturbanceViolation, BoxParseError
    """
    if isinstance(raw, Mapping):
        try:
            vectors = [raw[c] for c in CONTEXT_IDS]
        except KeyError as missing:
            raise BoxParseError(f"missing context {missing} in box data") from None
    else:
        vectors = list(raw)
    if len(vectors) != 5:
        raise BoxParseError(f"expected 5 context vectors, got {len(vectors)}")

    dists: list[tuple[Fraction, ...]] = []
    for context_id, vector in zip(CONTEXT_IDS, vectors):
        values = tuple(as_rational(v) for v in vector)
        if len(values) != CONTEXT_SIZES[context_id]:
            raise BoxParseError(
                f"context {context_id} needs {CONTEXT_SIZES[context_id]} entries, "
                f"got {len(values)}"
            )
        for index, p in enumerate(values):
            if p < 0:
                raise NegativeEntry(context_id, index, p)
        total = sum(values)
        if total != 1:
            raise NotNormalized(context_id, total)
        dists.append(values)

    box = Box(tuple(dists), label)
    for observable, ((ctx_a, pos_a), (ctx_b, pos_b)) in OBSERVABLE_HOSTS.items():
        left = _marginal_from(box.context(ctx_a), ctx_a, pos_a)
        right = _marginal_from(box.context(ctx_b), ctx_b, pos_b)
        if left != right:
            raise NoDisturbanceViolation(observable, (ctx_a, ctx_b), left, right)
    return box


def single_marginal(box: Box, observable: str) -> tuple[Fraction, Fraction]:
    """``(p(0|O), p(1|O))`` for one observable.

    No-disturbance guarantees the result is identical whichever hosting
    context is used; the first host is read.
    """
    if observable not in OBSERVABLE_HOSTS:
        raise KeyError(f"unknown observable {observable!r}")
    context_id, position = OBSERVABLE_HOSTS[observable][0]
    return _marginal_from(box.context(context_id), context_id, position)


def expectation(box: Box, context_id: str) -> Fraction:
    """Parity expectation of a context: sum of (-1)^(outcome bit sum) * p."""
    dist = box.context(context_id)
    return sum(
        (p if sum(o) % 2 == 0 else -p
         for o, p in zip(OUTCOME_ORDERS[context_id], dist)),
        Fraction(0),
    )


def inequality_lhs(box: Box) -> Fraction:
    """Left-hand side ``<C0> + <C1> + <C2> + <C3> - <C4>``.

    Values above 3 certify contextuality (a sufficient witness; boxes at or
    below 3 may still be contextual).  The maximum over valid boxes is 5.
    """
    return (
        expectation(box, "C0")
        + expectation(box, "C1")
        + expectation(box, "C2")
        + expectation(box, "C3")
        - expectation(box, "C4")
    )


# ---------------------------------------------------------------------------
# Bell marginal: the four two-observable distributions {A_x B_y}
# ---------------------------------------------------------------------------

#: Setting pairs (x, y) of the Bell marginal, in serialization order.
BELL_SETTINGS: tuple[tuple[int, int], ...] = ((0, 0), (0, 1), (1, 0), (1, 1))


@dataclass(frozen=True)
class BellMarginal:
    """Four exact distributions p(a b | A_x B_y), each indexed at ``2a + b``."""

    dists: tuple[tuple[Fraction, ...], ...]
    label: str | None = None

    def dist(self, x: int, y: int) -> tuple[Fraction, ...]:
        return self.dists[2 * x + y]


def validate_bell_marginal(raw, label: str | None = None) -> BellMarginal:
    """Validate four length-4 vectors (order A0B0, A0B1, A1B0, A1B1).

    Checks nonnegativity, normalization, and no-signaling exactly.
    """
    vectors = list(raw)
    if len(vectors) != 4:
        raise BoxParseError(f"expected 4 distributions, got {len(vectors)}")
    dists: list[tuple[Fraction, ...]] = []
    for (x, y), vector in zip(BELL_SETTINGS, vectors):
        values = tuple(as_rational(v) for v in vector)
        name = f"A{x}B{y}"
        if len(values) != 4:
            raise BoxParseError(f"{name} needs 4 entries, got {len(values)}")
        for index, p in enumerate(values):
            if p < 0:
                raise NegativeEntry(name, index, p)
        total = sum(values)
        if total != 1:
            raise NotNormalized(name, total)
        dists.append(values)
    marginal = BellMarginal(tuple(dists), label)
    for x in (0, 1):
        if _alice_marginal(marginal, x, 0) != _alice_marginal(marginal, x, 1):
            raise NoDisturbanceViolation(
                f"A{x}", (f"A{x}B0", f"A{x}B1"),
                _alice_marginal(marginal, x, 0), _alice_marginal(marginal, x, 1),
            )
    for y in (0, 1):
        if _bob_marginal(marginal, 0, y) != _bob_marginal(marginal, 1, y):
            raise NoDisturbanceViolation(
                f"B{y}", (f"A0B{y}", f"A1B{y}"),
                _bob_marginal(marginal, 0, y), _bob_marginal(marginal, 1, y),
            )
    return marginal


def _alice_marginal(marginal: BellMarginal, x: int, y: int) -> tuple[Fraction, Fraction]:
    d = marginal.dist(x, y)
    return (d[0] + d[1], d[2] + d[3])


def _bob_marginal(marginal: BellMarginal, x: int, y: int) -> tuple[Fraction, Fraction]:
    d = marginal.dist(x, y)
    return (d[0] + d[2], d[1] + d[3])


def bell_marginal(box: Box) -> BellMarginal:
    """The Bell marginal of a box.

    A0B0 and A1B1 are copied from C0 and C3; A0B1 sums C1 over D's outcome;
    A1B0 sums C2 over E's outcome.  The result satisfies no-signaling because
    the box satisfies no-disturbance.
    """
    a0b1 = [Fraction(0)] * 4
    for o, p in zip(OUTCOME_ORDERS["C1"], box.context("C1")):
        a0b1[2 * o[0] + o[1]] += p
    a1b0 = [Fraction(0)] * 4
    for o, p in zip(OUTCOME_ORDERS["C2"], box.context("C2")):
        a1b0[2 * o[0] + o[1]] += p
    return BellMarginal(
        (box.context("C0"), tuple(a0b1), tuple(a1b0), box.context("C3")),
        box.label,
    )


def bell_correlator(marginal: BellMarginal, x: int, y: int) -> Fraction:
    """``<A_x B_y>`` with the bit 0 -> +1, bit 1 -> -1 convention."""
    d = marginal.dist(x, y)
    return d[0] - d[1] - d[2] + d[3]


def bell_single(marginal: BellMarginal, party: str, setting: int) -> Fraction:
    """``<A_x>`` (party 'A') or ``<B_y>`` (party 'B')."""
    if party == "A":
        p0, p1 = _alice_marginal(marginal, setting, 0)
    elif party == "B":
        p0, p1 = _bob_marginal(marginal, 0, setting)
    else:
        raise KeyError(f"party must be 'A' or 'B', got {party!r}")
    return p0 - p1


def mix_boxes(terms: Iterable[tuple[Fraction | int | str, Box]],
              label: str | None = None) -> Box:
    """Exact convex mixture of boxes; weights must sum to exactly 1."""
    pairs = [(as_rational(w), b) for w, b in terms]
    total = sum((w for w, _ in pairs), Fraction(0))
    if total != 1:
        raise ParameterOutOfRange(f"mixture weights sum to {total}, expected 1")
    for w, _ in pairs:
        if w < 0:
            raise ParameterOutOfRange(f"negative mixture weight {w}")
    dists = []
    for i, context_id in enumerate(CONTEXT_IDS):
        size = CONTEXT_SIZES[context_id]
        acc = [Fraction(0)] * size
        for w, b in pairs:
            for j, p in enumerate(b.contexts[i]):
                acc[j] += w * p
        dists.append(tuple(acc))
    # Mixtures of valid boxes are valid (all constraints are affine).
    return Box(tuple(dists), label)


# ---------------------------------------------------------------------------
# JSON interface
# ---------------------------------------------------------------------------

def box_to_json_dict(box: Box) -> dict:
    """Canonical JSON-ready dict: contexts C0..C4 as rational strings."""
    data: dict = {
        "contexts": {
            c: [format_rational(p) for p in box.context(c)] for c in CONTEXT_IDS
        }
    }
    if box.label is not None:
        data["label"] = box.label
    return data


def box_from_json_dict(data) -> Box:
    """Parse and validate a box from its JSON dict form.

    Floats anywhere in the entries are rejected.
    """
    if not isinstance(data, Mapping):
        raise BoxParseError("box JSON must be an object")
    if "contexts" not in data:
        raise BoxParseError("box JSON must have a 'contexts' key")
    contexts = data["contexts"]
    if not isinstance(contexts, Mapping):
        raise BoxParseError("'contexts' must map C0..C4 to entry arrays")
    unknown = set(contexts) - set(CONTEXT_IDS)
    if unknown:
        raise BoxParseError(f"unknown context keys: {sorted(unknown)}")
    label = data.get("label")
    if label is not None and not isinstance(label, str):
        raise BoxParseError("'label' must be a string")
    return validate_box(contexts, label=label)
