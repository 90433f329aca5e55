"""Homotopy bracket families on both sides of the degree shift.

AntialgebraStructure holds graded symmetric brackets of degree +1 on the
unshifted bundle (degrees -1..-n); AlgebraStructure holds graded
antisymmetric brackets of degree 2-i on the shifted bundle (degrees
0..-(n-1)).  Both store structure functions per arity on canonically
ordered frame tuples, evaluate on arbitrary sections by multilinear
expansion, and verify their homotopy Jacobi identities on frame tuples.

Evaluation is C-infinity-multilinear unless an anchor is passed, in which
case the binary bracket gains the usual directional-derivative corrections;
the bare structures here stay anchor-free, the algebroid layer passes its
anchor in.

The transfer functions convert between the two sides with the suspension
sign bookkeeping done once in signs.bracket_transfer_sign; converting back
and forth is the identity on the nose.
"""

from __future__ import annotations

import itertools

from .polyring import Polynomial
from .graded import (
    GradedBundle,
    Section,
    canonical_tuples,
    chi_sign,
    koszul_sign,
    normalize_tuple,
    shuffles,
)
from .signs import algebra_identity_sign, bracket_transfer_sign, sign_pow
from .coalgebra import Coderivation, MultilinearMap, TensorWord


def apply_anchor(anchor, label, poly):
    """Directional derivative of a base polynomial along the anchor image
    of the named frame; labels without an anchor row act by zero."""
    row = anchor.get(label)
    if not row:
        return Polynomial.zero(poly.coordinates)
    out = Polynomial.zero(poly.coordinates)
    for coord, comp in row.items():
        out = out + comp * poly.partial(coord)
    return out


class _BracketFamily:
    """Shared storage/evaluation for both symmetry types.

    tables: {arity: {canonical label tuple: {target label: Polynomial}}}.
    Subclasses fix the symmetry used for normalization and the anchored
    correction signs of the binary bracket.
    """

    symmetric = True

    def __init__(self, bundle, tables):
        self.bundle = bundle
        self.tables = {}
        for arity, table in tables.items():
            arity = int(arity)
            clean = {}
            for key, targets in table.items():
                canon, sign = normalize_tuple(tuple(key), bundle, self.symmetric)
                if canon != tuple(key):
                    raise ValueError(
                        "bracket key %r is not canonically ordered" % (key,)
                    )
                if sign == 0:
                    raise ValueError(
                        "bracket key %r vanishes by symmetry" % (key,)
                    )
                out_degree = self._output_degree(canon)
                entry = {}
                for lab, poly in targets.items():
                    if poly.is_zero():
                        continue
                    if self.bundle.degree(lab) != out_degree:
                        raise ValueError(
                            "bracket on %r targets %r of degree %d, expected %d"
                            % (key, lab, self.bundle.degree(lab), out_degree)
                        )
                    entry[lab] = poly
                if entry:
                    clean[canon] = entry
            if clean:
                self.tables[arity] = clean

    def _output_degree(self, labels):
        raise NotImplementedError

    def max_arity(self):
        return max(self.tables, default=0)

    def arities(self):
        return sorted(self.tables)

    def value(self, labels):
        """Bracket value on a frame-label tuple, any order, as a Section."""
        canon, sign = normalize_tuple(tuple(labels), self.bundle, self.symmetric)
        table = self.tables.get(len(labels), {})
        targets = table.get(canon)
        if sign == 0 or not targets:
            return self.bundle.zero_section()
        sec = Section(self.bundle, dict(targets))
        return sec.scale(sign) if sign != 1 else sec

    def evaluate(self, sections, anchor=None):
        """Multilinear extension to sections; with an anchor, the binary
        bracket differentiates coefficients the way a bracket with that
        anchor must."""
        bundle = self.bundle
        out = bundle.zero_section()
        choices = [list(sec.components.items()) for sec in sections]
        for combo in itertools.product(*choices):
            labels = tuple(lab for lab, _ in combo)
            coeff = None
            for _, c in combo:
                coeff = c if coeff is None else coeff * c
            val = self.value(labels)
            if not val.is_zero():
                out = out + val.scale(coeff)
        if anchor is not None and len(sections) == 2:
            first, second = sections
            for la, fa in first.components.items():
                if bundle.magnitude(la) != 1:
                    continue
                for lb, gb in second.components.items():
                    d = apply_anchor(anchor, la, gb)
                    if not d.is_zero():
                        out = out + bundle.frame_section(lb).scale(fa * d)
            for lb, gb in second.components.items():
                if bundle.magnitude(lb) != 1:
                    continue
                for la, fa in first.components.items():
                    d = apply_anchor(anchor, lb, fa)
                    if not d.is_zero():
                        sign = self._second_slot_sign(la)
                        out = out + bundle.frame_section(la).scale(gb * d * sign)
        return out

    def is_zero(self):
        return not self.tables


class AntialgebraStructure(_BracketFamily):
    """Graded symmetric brackets of degree +1 on the unshifted bundle."""

    symmetric = True

    def __init__(self, bundle, tables):
        if bundle.side != "E":
            raise ValueError("symmetric brackets live on the unshifted side")
        super().__init__(bundle, tables)

    def _output_degree(self, labels):
        return sum(self.bundle.degree(lab) for lab in labels) + 1

    def _second_slot_sign(self, first_label):
        # from graded symmetry: the correction in which the second entry
        # acts carries (-1)^(degree of the first entry)
        return sign_pow(self.bundle.magnitude(first_label))


class AlgebraStructure(_BracketFamily):
    """Graded antisymmetric brackets of degree 2-i on the shifted bundle."""

    symmetric = False

    def __init__(self, bundle, tables):
        if bundle.side != "sE":
            raise ValueError("antisymmetric brackets live on the shifted side")
        super().__init__(bundle, tables)

    def _output_degree(self, labels):
        return sum(self.bundle.degree(lab) for lab in labels) + 2 - len(labels)

    def _second_slot_sign(self, first_label):
        # antisymmetry against a degree-0 acting entry always gives -1
        return -1


class StructureReport:
    """Outcome of a homotopy-identity sweep: ok, or the first failing
    (arity, frame tuple) with its residual section."""

    def __init__(self, ok, witness=None, residual=None):
        self.ok = ok
        self.witness = witness
        self.residual = residual

    def __bool__(self):
        return self.ok

    def __repr__(self):
        if self.ok:
            return "StructureReport(ok)"
        return "StructureReport(fail at %r: %r)" % (self.witness, self.residual)


def homotopy_residual_symmetric(struct, labels, anchor=None):
    """Left side of the degree-+1 symmetric homotopy identity at one frame
    tuple: sum over i+j = t+1 and (i, t-i)-shuffles of Koszul-signed
    nestings."""
    bundle = struct.bundle
    t = len(labels)
    degs = [bundle.degree(lab) for lab in labels]
    frames = [bundle.frame_section(lab) for lab in labels]
    total = bundle.zero_section()
    for i in range(1, t + 1):
        for perm in shuffles(i, t - i):
            eps = koszul_sign(perm, degs)
            inner = struct.evaluate([frames[p] for p in perm[:i]], anchor)
            if inner.is_zero():
                continue
            outer = struct.evaluate(
                [inner] + [frames[p] for p in perm[i:]], anchor
            )
            if not outer.is_zero():
                total = total + outer.scale(eps)
    return total


def homotopy_residual_antisymmetric(struct, labels, anchor=None):
    """Left side of the antisymmetric homotopy identity at one frame tuple,
    weighted by (-1)^(i(j-1)) times the signed Koszul sign."""
    bundle = struct.bundle
    t = len(labels)
    degs = [bundle.degree(lab) for lab in labels]
    frames = [bundle.frame_section(lab) for lab in labels]
    total = bundle.zero_section()
    for i in range(1, t + 1):
        j = t + 1 - i
        w = algebra_identity_sign(i, j)
        for perm in shuffles(i, t - i):
            chi = chi_sign(perm, degs)
            inner = struct.evaluate([frames[p] for p in perm[:i]], anchor)
            if inner.is_zero():
                continue
            outer = struct.evaluate(
                [inner] + [frames[p] for p in perm[i:]], anchor
            )
            if not outer.is_zero():
                total = total + outer.scale(w * chi)
    return total


def _sweep(struct, residual_fn, r_max, anchor):
    labels = struct.bundle.labels()
    for t in range(1, r_max + 1):
        for key in canonical_tuples(labels, t):
            res = residual_fn(struct, key, anchor)
            if not res.is_zero():
                return StructureReport(False, witness=(t, key), residual=res)
    return StructureReport(True)


def verify_antialgebra(struct, r_max=None, anchor=None):
    """Check the symmetric homotopy identities on all frame multisets of
    arity 1..r_max (default n+2)."""
    if r_max is None:
        r_max = struct.bundle.n + 2
    return _sweep(struct, homotopy_residual_symmetric, r_max, anchor)


def verify_algebra(struct, r_max=None, anchor=None):
    """Check the antisymmetric homotopy identities on all frame multisets
    of arity 1..r_max (default n+2)."""
    if r_max is None:
        r_max = struct.bundle.n + 2
    return _sweep(struct, homotopy_residual_antisymmetric, r_max, anchor)


def transfer_to_algebra(anti):
    """Antisymmetric brackets on the shifted side equivalent to the given
    symmetric family; exact inverse of transfer_to_antialgebra."""
    bundle = anti.bundle
    shifted = bundle.shifted()
    tables = {}
    for arity, table in anti.tables.items():
        out = {}
        for key, targets in table.items():
            mags = [bundle.magnitude(lab) for lab in key]
            sign = bracket_transfer_sign(mags)
            out[key] = {lab: poly * sign for lab, poly in targets.items()}
        tables[arity] = out
    return AlgebraStructure(shifted, tables)


def transfer_to_antialgebra(alg):
    """Symmetric brackets on the unshifted side equivalent to the given
    antisymmetric family; exact inverse of transfer_to_algebra."""
    bundle = alg.bundle
    unshifted = bundle.shifted()
    tables = {}
    for arity, table in alg.tables.items():
        out = {}
        for key, targets in table.items():
            mags = [unshifted.magnitude(lab) for lab in key]
            sign = bracket_transfer_sign(mags)
            out[key] = {lab: poly * sign for lab, poly in targets.items()}
        tables[arity] = out
    return AntialgebraStructure(unshifted, tables)


def antialgebra_coderivation(anti):
    """The coderivation of the word coalgebra whose corestrictions are the
    symmetric brackets; squaring to zero on words is equivalent to the
    homotopy identities."""
    bundle = anti.bundle

    def make_fn(r):
        def fn(labels):
            return TensorWord.from_section(anti.value(labels))

        return fn

    cores = {}
    for r in anti.arities():
        cores[r] = MultilinearMap(bundle, bundle, r, 1, make_fn(r))
    return Coderivation(bundle, cores)


def basis_words(bundle, max_length):
    """All nonvanishing canonical frame words of length 1..max_length."""
    one = Polynomial.constant(1, bundle.base_coordinates)
    words = []
    for ln in range(1, max_length + 1):
        for key in canonical_tuples(bundle.labels(), ln):
            canon, sign = normalize_tuple(key, bundle, symmetric=True)
            if sign == 0:
                continue
            words.append(TensorWord(bundle, {key: one}))
    return words
