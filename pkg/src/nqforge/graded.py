"""Graded bundles, sections, and the combinatorics they need.

A GradedBundle records a negatively graded vector bundle over a polynomial
base chart by naming a frame for each piece.  Labels are shared between a
bundle and its degree shift: the same label names a frame of the unshifted
piece of degree -a and, on the shifted side, a frame of degree -(a-1).
Sections store frame coefficients as exact polynomials.

Sign helpers live in signs.py; this module re-exports the ones that belong
to the graded calculus (koszul_sign, chi_sign, suspension signs) and adds
shuffle enumeration and tuple normalization.
"""

from __future__ import annotations

import itertools

from .polyring import Polynomial
from .signs import (
    sign_pow,
    chi_sign,
    koszul_sign,
    perm_sign,
    suspension_power_sign,
    suspend_tuple_sign,
)

__all__ = [
    "GradedBundle",
    "Section",
    "koszul_sign",
    "chi_sign",
    "perm_sign",
    "suspension_power_sign",
    "suspend_tuple_sign",
    "shuffles",
    "canonical_tuples",
    "normalize_tuple",
    "suspend_tuple",
    "desuspend_tuple",
]


class GradedBundle:
    """Frame data of a split graded bundle over a polynomial base chart.

    labels_by_magnitude maps a = 1..n to the frame labels of the piece whose
    unshifted degree is -a.  side is "E" (unshifted, degrees -1..-n) or "sE"
    (shifted, degrees 0..-(n-1)).  Labels must be globally unique and
    distinct from base coordinates.
    """

    def __init__(self, base_coordinates, labels_by_magnitude, side="E"):
        if side not in ("E", "sE"):
            raise ValueError("side must be 'E' or 'sE'")
        self.base_coordinates = tuple(base_coordinates)
        self.side = side
        self.labels_by_magnitude = {}
        seen = set(self.base_coordinates)
        mags = sorted(int(a) for a in labels_by_magnitude)
        if mags and (mags[0] < 1 or mags != list(range(1, mags[-1] + 1))):
            raise ValueError("degree magnitudes must be 1..n without gaps")
        for a in mags:
            labels = tuple(labels_by_magnitude[a])
            for lab in labels:
                if lab in seen:
                    raise ValueError("duplicate label %r" % lab)
                seen.add(lab)
            self.labels_by_magnitude[a] = labels
        self.n = mags[-1] if mags else 0
        self.label_index = {}
        order = 0
        for a in mags:
            for pos, lab in enumerate(self.labels_by_magnitude[a]):
                self.label_index[lab] = (a, pos, order)
                order += 1

    # ----- label bookkeeping -----

    def labels(self):
        """All labels in canonical order (by magnitude, then position)."""
        out = []
        for a in sorted(self.labels_by_magnitude):
            out.extend(self.labels_by_magnitude[a])
        return out

    def magnitude(self, label):
        """Positive degree magnitude a of the unshifted piece the label
        frames."""
        return self.label_index[label][0]

    def degree(self, label):
        """Effective degree of the frame section named by label on this
        side: -a unshifted, 1-a shifted."""
        a = self.magnitude(label)
        return -a if self.side == "E" else 1 - a

    def generator_degree(self, label):
        """Standard degree of the dual generator named by label: always the
        magnitude a, regardless of side."""
        return self.magnitude(label)

    def rank(self, a):
        return len(self.labels_by_magnitude.get(a, ()))

    def over_point(self):
        return not self.base_coordinates

    def shifted(self):
        """The same frames viewed on the other side of the degree shift."""
        other = "sE" if self.side == "E" else "E"
        return GradedBundle(self.base_coordinates, self.labels_by_magnitude, other)

    def same_frames(self, other):
        return (
            self.base_coordinates == other.base_coordinates
            and self.labels_by_magnitude == other.labels_by_magnitude
        )

    # ----- section constructors -----

    def zero_section(self):
        return Section(self, {})

    def frame_section(self, label):
        if label not in self.label_index:
            raise KeyError("unknown label %r" % label)
        one = Polynomial.constant(1, self.base_coordinates)
        return Section(self, {label: one})

    def __repr__(self):
        body = ", ".join(
            "-%d: %r" % (a, list(v)) for a, v in sorted(self.labels_by_magnitude.items())
        )
        return "GradedBundle(side=%s, %s)" % (self.side, body)


class Section:
    """A section of a graded bundle: polynomial coefficient per frame label."""

    def __init__(self, bundle, components):
        self.bundle = bundle
        self.components = {}
        for label, poly in components.items():
            if label not in bundle.label_index:
                raise KeyError("unknown label %r" % label)
            if poly.coordinates != bundle.base_coordinates:
                raise ValueError(
                    "coefficient of %r lives on the wrong chart" % label
                )
            if not poly.is_zero():
                self.components[label] = poly

    def coefficient(self, label):
        zero = Polynomial.zero(self.bundle.base_coordinates)
        return self.components.get(label, zero)

    def is_zero(self):
        return not self.components

    def degrees(self):
        return sorted({self.bundle.degree(lab) for lab in self.components})

    def is_homogeneous(self):
        return len(self.degrees()) <= 1

    def degree(self):
        degs = self.degrees()
        if len(degs) != 1:
            raise ValueError("section is not homogeneous: degrees %r" % degs)
        return degs[0]

    def homogeneous_part(self, degree):
        return Section(
            self.bundle,
            {
                lab: poly
                for lab, poly in self.components.items()
                if self.bundle.degree(lab) == degree
            },
        )

    def __add__(self, other):
        if not isinstance(other, Section):
            return NotImplemented
        if self.bundle is not other.bundle and not (
            self.bundle.same_frames(other.bundle)
            and self.bundle.side == other.bundle.side
        ):
            raise ValueError("sections live on different bundles")
        comps = dict(self.components)
        for lab, poly in other.components.items():
            comps[lab] = comps.get(lab, Polynomial.zero(poly.coordinates)) + poly
        return Section(self.bundle, comps)

    def __neg__(self):
        return Section(self.bundle, {lab: -p for lab, p in self.components.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, factor):
        """Multiply by a Polynomial or a rational constant."""
        if isinstance(factor, Polynomial):
            return Section(
                self.bundle,
                {lab: factor * p for lab, p in self.components.items()},
            )
        return Section(
            self.bundle,
            {lab: p * factor for lab, p in self.components.items()},
        )

    def __eq__(self, other):
        if not isinstance(other, Section):
            return NotImplemented
        return (
            self.bundle.same_frames(other.bundle)
            and self.bundle.side == other.bundle.side
            and self.components == other.components
        )

    def reside(self, bundle):
        """The same frame data viewed on another bundle with equal frames
        (used to move a section across the degree shift: the shift does not
        touch single sections, only tuples pick up signs)."""
        if not self.bundle.same_frames(bundle):
            raise ValueError("bundles do not share frames")
        return Section(bundle, dict(self.components))

    def __repr__(self):
        if not self.components:
            return "Section(0)"
        body = " + ".join(
            "(%s)*%s" % (poly, lab)
            for lab, poly in sorted(
                self.components.items(),
                key=lambda kv: self.bundle.label_index[kv[0]],
            )
        )
        return "Section(%s)" % body


def shuffles(*block_sizes):
    """Shuffle permutations splitting positions 0..r-1 into ordered groups
    of the given sizes, each group strictly increasing, as 0-based
    permutation tuples in lexicographic order.

    The tuple lists group 1's positions in increasing order, then group 2's,
    and so on: the convention in which a sum over (p, q)-shuffles picks the
    p arguments fed to the first map.  shuffles(p, q) has binomial(p+q, p)
    entries; shuffles(1, 1) is [(0, 1), (1, 0)].
    """
    total = sum(block_sizes)
    results = []

    def choose(available, sizes, prefix):
        if not sizes:
            results.append(tuple(prefix))
            return
        for combo in itertools.combinations(available, sizes[0]):
            taken = set(combo)
            rest = [i for i in available if i not in taken]
            choose(rest, sizes[1:], prefix + list(combo))

    choose(list(range(total)), list(block_sizes), [])
    results.sort()
    return results


def canonical_tuples(labels, r):
    """Nondecreasing r-tuples over an ordered label list, with repetition."""
    return list(itertools.combinations_with_replacement(labels, r))


def normalize_tuple(labels, bundle, symmetric=True):
    """Sort a frame-label tuple into canonical bundle order, returning
    (sorted tuple, sign).

    symmetric=True uses Koszul signs of the bundle-side degrees; False uses
    signature times Koszul.  The sign is 0 when the canonical form repeats a
    label whose symmetry forces the value to vanish (odd degree on the
    symmetric side, even degree on the antisymmetric side).
    """
    arr = list(labels)
    key = lambda lab: bundle.label_index[lab]
    sign = 1
    for i in range(len(arr)):
        for j in range(len(arr) - 1 - i):
            if key(arr[j]) > key(arr[j + 1]):
                da = bundle.degree(arr[j])
                db = bundle.degree(arr[j + 1])
                swap = sign_pow(da * db)
                if not symmetric:
                    swap = -swap
                sign *= swap
                arr[j], arr[j + 1] = arr[j + 1], arr[j]
    for j in range(len(arr) - 1):
        if arr[j] == arr[j + 1]:
            d = bundle.degree(arr[j])
            if symmetric and d % 2 != 0:
                return tuple(arr), 0
            if not symmetric and d % 2 == 0:
                return tuple(arr), 0
    return tuple(arr), sign


def suspend_tuple(sections):
    """Move a tuple of unshifted homogeneous sections across the degree
    shift: returns (sign, list of shifted sections).

    The sign is the product rule of the i-fold shift hitting the tuple,
    suspend_tuple_sign of the unshifted entry degrees.
    """
    if not sections:
        return 1, []
    if any(sec.bundle.side != "E" for sec in sections):
        raise ValueError("suspend_tuple expects unshifted sections")
    degrees = [sec.degree() for sec in sections]
    sign = suspend_tuple_sign(degrees)
    shifted = [sec.reside(sec.bundle.shifted()) for sec in sections]
    return sign, shifted


def desuspend_tuple(sections):
    """Inverse of suspend_tuple: shifted sections back to unshifted ones,
    with the sign computed from the unshifted degrees (the two directions
    carry the same sign, which is what makes the round trip exact)."""
    if not sections:
        return 1, []
    if any(sec.bundle.side != "sE" for sec in sections):
        raise ValueError("desuspend_tuple expects shifted sections")
    lowered = [sec.reside(sec.bundle.shifted()) for sec in sections]
    degrees = [sec.degree() for sec in lowered]
    sign = suspend_tuple_sign(degrees)
    return sign, lowered
