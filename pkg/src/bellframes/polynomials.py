"""Mermin, Mermin-Klyshko (MK) and Svetlichny polynomials and their bounds.

A full-correlation Bell polynomial on ``n`` parties is stored as a sorted
tuple of ``(prime_mask, coefficient)`` terms. Bit ``k-1`` of ``prime_mask``
is set when party ``k`` contributes its primed setting ``A'_k``; every party
contributes exactly one operator to every term. Coefficients are exact
dyadic rationals (``fractions.Fraction``), so construction is drift-free and
polynomial-identity checks are exact; they are converted to floats only when
a polynomial is evaluated.

All three families are normalized so the local-hidden-variable bound is 1,
which :func:`lhv_deterministic_max` verifies by exhaustive enumeration of
deterministic strategies.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

FAMILY_MERMIN = "mermin"
FAMILY_MK = "mk"
FAMILY_SVETLICHNY = "svetlichny"
FAMILIES = (FAMILY_MERMIN, FAMILY_MK, FAMILY_SVETLICHNY)

# Polynomial construction cap; term count 2^(n-1) stays trivial up to here.
MAX_PARTIES = 8
# Exhaustive lhv enumeration cap (4^n deterministic strategies).
MAX_LHV_PARTIES = 5
# The fine-grained GME(m) ladder for MK is only offered up to here; beyond,
# only the biseparable bound 2^(n/2-1) certifying GME(n) is exposed.
MAX_GME_LADDER_PARTIES = 5

LHV_BOUND = 1.0


def _check_party_count(n: int) -> None:
    if not 2 <= n <= MAX_PARTIES:
        raise ValueError(f"party count {n} outside [2, {MAX_PARTIES}]")


def _check_family(family: str) -> None:
    if family not in FAMILIES:
        raise ValueError(f"unknown family {family!r}; expected one of {FAMILIES}")


@dataclass(frozen=True)
class BellPolynomial:
    """A full-correlation Bell polynomial in canonical (merged, sorted) form."""

    n: int
    family: str
    terms: tuple[tuple[int, Fraction], ...]

    def evaluate(self, expectations) -> float:
        """Bell value ``|sum_t coeff_t * E(mask_t)|``.

        ``expectations`` maps a prime mask to the expectation value of the
        corresponding product of settings, either as a mapping or a callable.
        """
        get = expectations if callable(expectations) else expectations.__getitem__
        total = 0.0
        for mask, coeff in self.terms:
            total += float(coeff) * get(mask)
        return abs(total)

    def algebraic_max(self) -> float:
        """Sum of absolute coefficients: the largest conceivable Bell value."""
        return float(sum(abs(c) for _, c in self.terms))

    def coefficient_tensor(self) -> np.ndarray:
        """Dense coefficients with shape ``(2,)*n``; axis k indexes party k+1's prime bit."""
        dense = np.zeros((2,) * self.n)
        for mask, coeff in self.terms:
            idx = tuple((mask >> k) & 1 for k in range(self.n))
            dense[idx] = float(coeff)
        return dense

    def term_strings(self) -> list[str]:
        """Human-readable terms like ``+1/2 a1 a2'``, in mask order."""
        out = []
        for mask, coeff in self.terms:
            ops = " ".join(
                f"a{k + 1}'" if (mask >> k) & 1 else f"a{k + 1}" for k in range(self.n)
            )
            sign = "+" if coeff > 0 else "-"
            out.append(f"{sign}{abs(coeff)} {ops}")
        return out


def _normalize(terms: dict[int, Fraction], n: int, family: str) -> BellPolynomial:
    kept = tuple(sorted((m, c) for m, c in terms.items() if c != 0))
    return BellPolynomial(n=n, family=family, terms=kept)


def _mk_terms(n: int) -> dict[int, Fraction]:
    """MK_n by the two-channel recursion from the single-party base a_1."""
    mk = {0: Fraction(1)}
    half = Fraction(1, 2)
    for k in range(1, n):
        bit = 1 << k
        swap_mask = (1 << k) - 1
        mk_swapped = {mask ^ swap_mask: c for mask, c in mk.items()}
        nxt: dict[int, Fraction] = {}
        for mask, c in mk.items():
            nxt[mask] = nxt.get(mask, Fraction(0)) + half * c
            nxt[mask | bit] = nxt.get(mask | bit, Fraction(0)) + half * c
        for mask, c in mk_swapped.items():
            nxt[mask] = nxt.get(mask, Fraction(0)) + half * c
            nxt[mask | bit] = nxt.get(mask | bit, Fraction(0)) - half * c
        mk = nxt
    return mk


def mk_polynomial(n: int) -> BellPolynomial:
    """Mermin-Klyshko polynomial MK_n; MK_2 is the CHSH polynomial."""
    _check_party_count(n)
    return _normalize(_mk_terms(n), n, FAMILY_MK)


def prime_swap(p: BellPolynomial) -> BellPolynomial:
    """Exchange primed and unprimed settings of every party."""
    full = (1 << p.n) - 1
    return _normalize({mask ^ full: c for mask, c in p.terms}, p.n, p.family)


def mermin_polynomial(n: int) -> BellPolynomial:
    """Mermin polynomial M_n.

    For even ``n``, expands to the terms whose primed count ``p`` is odd,
    with coefficient ``+N`` for ``p = 1 mod 4`` and ``-N`` for
    ``p = 3 mod 4``, where ``N = 2^(-n/2)``. For odd ``n`` the Mermin and
    MK polynomials coincide, so the MK_n term list is returned.
    """
    _check_party_count(n)
    if n % 2 == 1:
        return _normalize(_mk_terms(n), n, FAMILY_MERMIN)
    unit = Fraction(1, 2 ** (n // 2))
    terms: dict[int, Fraction] = {}
    for mask in range(1 << n):
        p = bin(mask).count("1")
        if p % 2 == 1:
            terms[mask] = unit if p % 4 == 1 else -unit
    return _normalize(terms, n, FAMILY_MERMIN)


def svetlichny_polynomial(n: int) -> BellPolynomial:
    """Svetlichny polynomial ``S_n``.

    ``S_n = (MK_n + MK'_n)/2`` for odd ``n``; for even ``n`` the Svetlichny
    and MK polynomials coincide, so the MK_n term list is returned.
    """
    _check_party_count(n)
    mk = _mk_terms(n)
    if n % 2 == 0:
        return _normalize(mk, n, FAMILY_SVETLICHNY)
    full = (1 << n) - 1
    half = Fraction(1, 2)
    terms: dict[int, Fraction] = {}
    for mask, c in mk.items():
        terms[mask] = terms.get(mask, Fraction(0)) + half * c
        terms[mask ^ full] = terms.get(mask ^ full, Fraction(0)) + half * c
    return _normalize(terms, n, FAMILY_SVETLICHNY)


def make_polynomial(family: str, n: int) -> BellPolynomial:
    _check_family(family)
    if family == FAMILY_MERMIN:
        return mermin_polynomial(n)
    if family == FAMILY_MK:
        return mk_polynomial(n)
    return svetlichny_polynomial(n)


def lhv_deterministic_max(p: BellPolynomial) -> float:
    """True lhv bound by exhaustive enumeration of deterministic strategies.

    Scans all assignments ``a_k, a'_k in {-1, +1}`` (the extreme points of
    the local model) and returns the maximum ``|sum coeff * product|``. The
    accumulation is exact rational arithmetic, so the result is exact.
    """
    if p.n > MAX_LHV_PARTIES:
        raise ValueError(f"lhv enumeration capped at {MAX_LHV_PARTIES} parties")
    best = Fraction(0)
    for outcomes in itertools.product((1, -1), repeat=2 * p.n):
        total = Fraction(0)
        for mask, coeff in p.terms:
            prod = 1
            for k in range(p.n):
                prod *= outcomes[2 * k + ((mask >> k) & 1)]
            total += coeff * prod
        best = max(best, abs(total))
    return float(best)


@dataclass(frozen=True)
class BoundsTable:
    """Violation thresholds for one (family, party count) pair.

    ``thresholds`` holds ``(label, value)`` pairs. A value is the quantity a
    Bell value must strictly exceed to demonstrate the labelled property:
    ``GME(m)`` genuine m-party entanglement, ``Sep(l)`` that no partition
    into more than ``l`` groups admits a local model. ``AlgebraicMax`` and
    ``GhzQuantumValue`` are reference ceilings, not demonstration targets.
    """

    n: int
    family: str
    lhv_bound: float
    thresholds: tuple[tuple[str, float], ...]

    def threshold(self, label: str) -> float:
        for lab, value in self.thresholds:
            if lab == label:
                return value
        raise KeyError(label)


def _ghz_quantum_value(family: str, n: int) -> float:
    if family == FAMILY_MK:
        return 2.0 ** ((n - 1) / 2)
    if family == FAMILY_MERMIN:
        return 2.0 ** ((n - 1) / 2) if n % 2 == 1 else 2.0 ** (n / 2 - 1)
    return 2.0 ** ((n - 1) / 2) if n % 2 == 0 else 2.0 ** ((n - 2) / 2)


def _sep_membership_bound(n: int, m: int) -> float:
    # A fully local model (m = n groups) is bounded by the lhv bound itself;
    # the closed-form odd-n exponent is only valid for coarser partitions.
    if m >= n:
        return LHV_BOUND
    if n % 2 == 0:
        return 2.0 ** ((n - m) / 2)
    return 2.0 ** ((n - m - 1) / 2)


def bounds_table(n: int, family: str) -> BoundsTable:
    """Demonstration thresholds for the given family and party count.

    For MK (and Mermin at odd ``n``, where the term lists coincide) the
    entanglement ladder ``GME(m)`` has threshold ``2^((m-2)/2)`` for
    ``m = 2..n``; the ladder is exposed only for ``n <= 5``, beyond which
    just the biseparable bound ``GME(n) = 2^(n/2-1)`` is kept. For
    Svetlichny, ``Sep(l)`` is demonstrated by exceeding the membership bound
    of ``Sep(l+1)`` models. Mermin at even ``n`` carries no ladder.
    """
    _check_party_count(n)
    _check_family(family)
    thresholds: list[tuple[str, float]] = []
    ladder = family == FAMILY_MK or (family == FAMILY_MERMIN and n % 2 == 1)
    if ladder:
        if n <= MAX_GME_LADDER_PARTIES:
            for m in range(2, n + 1):
                thresholds.append((f"GME({m})", 2.0 ** ((m - 2) / 2)))
        else:
            thresholds.append((f"GME({n})", 2.0 ** (n / 2 - 1)))
    elif family == FAMILY_SVETLICHNY:
        for m in range(1, n):
            thresholds.append((f"Sep({m})", _sep_membership_bound(n, m + 1)))
    poly = make_polynomial(family, n)
    thresholds.append(("AlgebraicMax", poly.algebraic_max()))
    thresholds.append(("GhzQuantumValue", _ghz_quantum_value(family, n)))
    return BoundsTable(n=n, family=family, lhv_bound=LHV_BOUND, thresholds=tuple(thresholds))
