"""Split Lie n-algebroids: bracket data, the differential it generates, and
the checks tying the two presentations together.

A LieNAlgebroid carries antisymmetric brackets on the shifted bundle plus an
anchor on the degree-0 frames; a LieNAntialgebroid is the same structure
moved to the unshifted side, where brackets are symmetric of degree +1 and
the differential lives.  ce_differential builds the degree-+1 vector field
on the function algebra from bracket and anchor data, extract_algebroid
inverts it, and verify_algebroid cross-examines a candidate structure three
ways: the field squares to zero on algebra generators, the frame-level
homotopy identities with anchor corrections (plus anchor compatibility)
hold, and the identity residuals are function-linear in every slot.  The
three verdicts agreeing on every fixture is the correspondence this package
exists to certify.

Sign conventions come from signs.py; the dictionary between elements and
multilinear maps from superalg.evaluate_element and its inverse.
"""

from __future__ import annotations

import itertools

from .polyring import Polynomial
from .graded import (
    GradedBundle,
    Section,
    canonical_tuples,
    normalize_tuple,
)
from .signs import ce_prefactor, derived_to_symmetric_sign, sign_pow, suspension_power_sign
from .superalg import (
    Derivation,
    SuperFunction,
    check_homological,
    element_from_values,
    evaluate_element,
)
from .linfty import (
    AlgebraStructure,
    AntialgebraStructure,
    apply_anchor,
    homotopy_residual_symmetric,
    transfer_to_algebra,
    transfer_to_antialgebra,
    verify_antialgebra,
)
from .derived import DerivedSetup


def _validate_anchor(bundle, anchor):
    clean = {}
    for label, row in anchor.items():
        if label not in bundle.label_index:
            raise KeyError("anchor on unknown frame %r" % label)
        if bundle.magnitude(label) != 1:
            raise ValueError(
                "anchor may only act through the top-degree frames, got %r"
                % label
            )
        out = {}
        for coord, poly in row.items():
            if coord not in bundle.base_coordinates:
                raise KeyError("anchor row mentions unknown coordinate %r" % coord)
            if not poly.is_zero():
                out[coord] = poly
        if out:
            clean[label] = out
    return clean


class LieNAlgebroid:
    """Bracket presentation on the shifted side: n, antisymmetric brackets
    of degree 2-i, and an anchor on the degree-0 frames."""

    def __init__(self, bundle, brackets, anchor):
        if bundle.side != "sE":
            raise ValueError("algebroid data lives on the shifted bundle")
        if bundle.n < 1:
            raise ValueError("need at least one graded piece")
        if not isinstance(brackets, AlgebraStructure):
            brackets = AlgebraStructure(bundle, brackets)
        if brackets.bundle is not bundle and not brackets.bundle.same_frames(bundle):
            raise ValueError("brackets live on a different bundle")
        if bundle.n == 1 and 1 in brackets.tables:
            raise ValueError(
                "a unary bracket has nowhere to land when n = 1"
            )
        self.bundle = bundle
        self.n = bundle.n
        self.brackets = brackets
        self.anchor = _validate_anchor(bundle, anchor)

    def __repr__(self):
        return "LieNAlgebroid(n=%d, arities=%r)" % (self.n, self.brackets.arities())


class LieNAntialgebroid:
    """The same structure on the unshifted side: symmetric brackets of
    degree +1 and the anchor acting through the degree -1 frames."""

    def __init__(self, bundle, brackets, anchor):
        if bundle.side != "E":
            raise ValueError("antialgebroid data lives on the unshifted bundle")
        if bundle.n < 1:
            raise ValueError("need at least one graded piece")
        if not isinstance(brackets, AntialgebraStructure):
            brackets = AntialgebraStructure(bundle, brackets)
        if bundle.n == 1 and 1 in brackets.tables:
            raise ValueError(
                "a unary bracket has nowhere to land when n = 1"
            )
        self.bundle = bundle
        self.n = bundle.n
        self.brackets = brackets
        self.anchor = _validate_anchor(bundle, anchor)

    def __repr__(self):
        return "LieNAntialgebroid(n=%d, arities=%r)" % (
            self.n,
            self.brackets.arities(),
        )


def to_antialgebroid(algebroid):
    """Move bracket data across the degree shift (anchor rows carry over
    verbatim; the frames are shared)."""
    anti_bundle = algebroid.bundle.shifted()
    anti_brackets = transfer_to_antialgebra(algebroid.brackets)
    return LieNAntialgebroid(anti_bundle, anti_brackets, algebroid.anchor)


def to_algebroid(anti):
    """Inverse of to_antialgebroid, exact on the nose."""
    s_bundle = anti.bundle.shifted()
    s_brackets = transfer_to_algebra(anti.brackets)
    return LieNAlgebroid(s_bundle, s_brackets, anti.anchor)


def _as_antialgebroid(a):
    if isinstance(a, LieNAntialgebroid):
        return a
    if isinstance(a, LieNAlgebroid):
        return to_antialgebroid(a)
    raise TypeError("expected an algebroid or antialgebroid, got %r" % type(a))


# ----- the differential -----


def ce_differential(a):
    """The degree-+1 vector field encoding the bracket data.

    On a base coordinate: minus the sum over degree -1 frames of the anchor
    action times the dual generator.  On a generator of standard degree k:
    the element whose arity-r values on frame tuples are (-1)^k times the
    generator's coefficient in the arity-r bracket of the tuple.  (The
    anchor-derivation term of the defining formula differentiates the
    pairing with the generator, which is constant on frame tuples, so it
    contributes only through the base-coordinate images here; the section-
    level defining formula is exercised against this field in the tests.)
    """
    anti = _as_antialgebroid(a)
    bundle = anti.bundle
    images = {}
    for coord in bundle.base_coordinates:
        img = SuperFunction.zero(bundle)
        for label, row in anti.anchor.items():
            comp = row.get(coord)
            if comp is not None and not comp.is_zero():
                img = img - comp * SuperFunction.generator(label, bundle)
        if not img.is_zero():
            images[coord] = img
    labels = bundle.labels()
    for target in labels:
        k = bundle.magnitude(target)
        values = {}
        for r in range(1, bundle.n + 2):
            for key in canonical_tuples(labels, r):
                if sum(bundle.magnitude(lab) for lab in key) != k + 1:
                    continue
                canon, sign = normalize_tuple(key, bundle, symmetric=True)
                if sign == 0:
                    continue
                sec = anti.brackets.value(key)
                comp = sec.coefficient(target)
                if comp.is_zero():
                    continue
                values[key] = comp * ce_prefactor(k)
        if values:
            images[target] = element_from_values(bundle, values)
    return Derivation(bundle, images)


def extract_algebroid(bundle, q):
    """Read bracket and anchor data off a degree-+1 vector field; exact
    inverse of ce_differential.

    The field need not square to zero (that is what verify_algebroid is
    for), but it must be homogeneous of standard degree +1.
    """
    if bundle.side != "E":
        raise ValueError("extraction works on the unshifted bundle")
    deg = q.std_degree()
    if deg not in (None, 1):
        raise ValueError("field has standard degree %r, expected 1" % deg)
    anchor = {}
    for label in bundle.labels_by_magnitude.get(1, ()):
        row = {}
        for coord in bundle.base_coordinates:
            comp = -q.image(coord).coefficient((label,))
            if not comp.is_zero():
                row[coord] = comp
        if row:
            anchor[label] = row
    tables = {}
    labels = bundle.labels()
    for target in labels:
        k = bundle.magnitude(target)
        img = q.image(target)
        for r, part in img.homological_parts().items():
            if r < 1:
                continue
            for key in canonical_tuples(labels, r):
                if sum(bundle.magnitude(lab) for lab in key) != k + 1:
                    continue
                canon, sign = normalize_tuple(key, bundle, symmetric=True)
                if sign == 0:
                    continue
                frames = [bundle.frame_section(lab) for lab in key]
                v = evaluate_element(part, frames)
                if v.is_zero():
                    continue
                comp = v * ce_prefactor(k)
                tables.setdefault(r, {}).setdefault(key, {})[target] = comp
    brackets = AntialgebraStructure(bundle, tables)
    return LieNAntialgebroid(bundle, brackets, anchor)


# ----- verification -----


class CheckOutcome:
    def __init__(self, ok, witness=None, detail="", vacuous=False):
        self.ok = ok
        self.witness = witness
        self.detail = detail
        self.vacuous = vacuous

    def __bool__(self):
        return self.ok

    def __repr__(self):
        status = "ok" if self.ok else "fail"
        if self.vacuous:
            status += " (vacuous)"
        body = status if not self.witness else "%s at %r" % (status, self.witness)
        return "CheckOutcome(%s)" % body


class AlgebroidReport:
    """Three routes to validity: the field squares to zero, the anchored
    frame identities (with anchor compatibility) hold, and the identity
    residuals are function-linear slotwise.  agrees records whether the
    verdicts coincide, which the correspondence theorem demands."""

    def __init__(self, square, identities, linearity):
        self.square = square
        self.identities = identities
        self.linearity = linearity
        if linearity.vacuous:
            self.agrees = square.ok == identities.ok
        else:
            self.agrees = square.ok == identities.ok == linearity.ok
        self.ok = square.ok and identities.ok and linearity.ok

    def __bool__(self):
        return self.ok

    def __repr__(self):
        return (
            "AlgebroidReport(square=%r, identities=%r, linearity=%r, agrees=%r)"
            % (self.square, self.identities, self.linearity, self.agrees)
        )


def anchor_compatibility(anti):
    """The anchor conditions forced by a vanishing square: the anchor
    annihilates unary-bracket images of degree -2 frames, and the anchor of
    a binary bracket of degree -1 frames is the commutator of the anchors.

    Returns (ok, witness); witnesses name the offending frames and
    coordinate.
    """
    bundle = anti.bundle
    anchor = anti.anchor
    zero = Polynomial.zero(bundle.base_coordinates)
    # unary images have anchor zero
    for label in bundle.labels_by_magnitude.get(2, ()):
        sec = anti.brackets.value((label,))
        for coord in bundle.base_coordinates:
            total = zero
            for lab, comp in sec.components.items():
                row = anchor.get(lab, {})
                total = total + comp * row.get(coord, zero)
            if not total.is_zero():
                return False, ("unary", label, coord, total)
    # binary brackets anchor to commutators
    ones = bundle.labels_by_magnitude.get(1, ())
    for la, lb in itertools.combinations_with_replacement(ones, 2):
        sec = anti.brackets.value((la, lb))
        rowa = anchor.get(la, {})
        rowb = anchor.get(lb, {})
        for coord in bundle.base_coordinates:
            lhs = zero
            for lab, comp in sec.components.items():
                if bundle.magnitude(lab) == 1:
                    lhs = lhs + comp * anchor.get(lab, {}).get(coord, zero)
            xc = Polynomial.variable(coord, bundle.base_coordinates)
            rhs = apply_anchor(anchor, la, rowb.get(coord, zero)) - apply_anchor(
                anchor, lb, rowa.get(coord, zero)
            )
            if lhs != rhs:
                return False, ("representation", la, lb, coord, lhs - rhs)
    return True, None


def _linearity_probes(bundle):
    coords = bundle.base_coordinates
    probes = [Polynomial.variable(c, coords) for c in coords]
    probes += [
        Polynomial.variable(c, coords) * Polynomial.variable(d, coords)
        for c, d in itertools.combinations_with_replacement(coords, 2)
    ]
    return probes


def residual_linearity(anti, r_max=None):
    """Slotwise function-linearity of the homotopy-identity residuals.

    For each arity, frame tuple, slot, and probe polynomial, the residual
    with one frame scaled by the probe must equal the probe times the plain
    residual.  Over a rank-zero base there is nothing to scale by and the
    outcome is vacuous.
    """
    bundle = anti.bundle
    if r_max is None:
        r_max = bundle.n + 2
    if not bundle.base_coordinates:
        return CheckOutcome(True, vacuous=True, detail="rank-zero base")
    probes = _linearity_probes(bundle)
    labels = bundle.labels()
    struct = anti.brackets
    anchor = anti.anchor
    for t in range(1, r_max + 1):
        for key in canonical_tuples(labels, t):
            frames = [bundle.frame_section(lab) for lab in key]
            plain = homotopy_residual_symmetric(struct, key, anchor)
            for slot in range(t):
                for probe in probes:
                    scaled = list(frames)
                    scaled[slot] = scaled[slot].scale(probe)
                    bent = _residual_on_sections(struct, scaled, anchor)
                    defect = bent - plain.scale(probe)
                    if not defect.is_zero():
                        return CheckOutcome(
                            False,
                            witness=(t, key, slot, str(probe)),
                            detail=repr(defect),
                        )
    return CheckOutcome(True)


def _residual_on_sections(struct, sections, anchor):
    """The symmetric homotopy residual evaluated on arbitrary homogeneous
    sections: the same shuffle sum as the frame-tuple version in linfty,
    with the same Koszul signs (scaling by a base polynomial does not move
    the degree, so the signs agree with the frame computation)."""
    from .graded import shuffles
    from .signs import koszul_sign

    bundle = struct.bundle
    t = len(sections)
    degs = [sec.degree() for sec in sections]
    total = bundle.zero_section()
    for i in range(1, t + 1):
        for perm in shuffles(i, t - i):
            eps = koszul_sign(perm, degs)
            inner = struct.evaluate([sections[p] for p in perm[:i]], anchor)
            if inner.is_zero():
                continue
            outer = struct.evaluate(
                [inner] + [sections[p] for p in perm[i:]], anchor
            )
            if not outer.is_zero():
                total = total + outer.scale(eps)
    return total


def verify_algebroid(a, r_max=None):
    """Cross-examine an algebroid three ways; see AlgebroidReport."""
    anti = _as_antialgebroid(a)
    bundle = anti.bundle
    if r_max is None:
        r_max = bundle.n + 2

    q = ce_differential(anti)
    sq = check_homological(q)
    square = CheckOutcome(sq.ok, witness=None if sq.ok else (sq.witness, str(sq.residual)))

    ids = verify_antialgebra(anti.brackets, r_max=r_max, anchor=anti.anchor)
    if ids.ok:
        comp_ok, comp_witness = anchor_compatibility(anti)
        identities = CheckOutcome(comp_ok, witness=comp_witness)
    else:
        identities = CheckOutcome(False, witness=ids.witness, detail=repr(ids.residual))

    linearity = residual_linearity(anti, r_max=r_max)
    return AlgebroidReport(square, identities, linearity)


# ----- consequences -----


class ConsequenceReport:
    def __init__(self, rows):
        self.rows = rows
        self.ok = all(ok for _, ok, _ in rows)

    def __bool__(self):
        return self.ok

    def __repr__(self):
        body = "; ".join(
            "%s:%s" % (name, "ok" if ok else "FAIL") for name, ok, _ in self.rows
        )
        return "ConsequenceReport(%s)" % body


def consequence_checks(a):
    """Identities that follow from validity, each checked directly:
    the anchor kills unary-bracket images, the anchor represents the binary
    bracket by vector-field commutators, the nested-commutator brackets of
    the differential reproduce the symmetric brackets up to (-1)^r, and the
    contraction-of-the-differential anchor matches the declared one."""
    anti = _as_antialgebroid(a)
    bundle = anti.bundle
    rows = []

    comp_ok, comp_witness = anchor_compatibility(anti)
    rows.append(("anchor-compatibility", comp_ok, comp_witness))

    q = ce_differential(anti)
    setup = DerivedSetup(bundle, q)
    labels = bundle.labels()

    ok = True
    witness = None
    for r in range(1, bundle.n + 2):
        for key in canonical_tuples(labels, r):
            frames = [bundle.frame_section(lab) for lab in key]
            derived = setup.bracket(frames)
            declared = anti.brackets.value(key).scale(derived_to_symmetric_sign(r))
            if derived != declared:
                ok = False
                witness = (r, key, repr(derived - declared))
                break
        if not ok:
            break
    rows.append(("derived-brackets-match", ok, witness))

    ok = True
    witness = None
    for label in bundle.labels_by_magnitude.get(1, ()):
        u = bundle.frame_section(label)
        row = anti.anchor.get(label, {})
        for coord in bundle.base_coordinates:
            got = setup.anchor_action(
                u, Polynomial.variable(coord, bundle.base_coordinates)
            )
            want = row.get(coord, Polynomial.zero(bundle.base_coordinates))
            if got != want:
                ok = False
                witness = (label, coord, str(got), str(want))
                break
        if not ok:
            break
    rows.append(("derived-anchor-matches", ok, witness))

    ok = True
    witness = None
    for label in labels:
        if bundle.magnitude(label) < 2:
            continue
        u = bundle.frame_section(label)
        for coord in bundle.base_coordinates:
            got = setup.anchor_action(
                u, Polynomial.variable(coord, bundle.base_coordinates)
            )
            if not got.is_zero():
                ok = False
                witness = (label, coord, str(got))
                break
        if not ok:
            break
    rows.append(("lower-degree-anchor-vanishes", ok, witness))

    return ConsequenceReport(rows)


# ----- the n = 1 comparison with the classical operator -----


class DeRhamReport:
    """Outcome of the three-route comparison on a classical (n = 1)
    algebroid: the transported differential, the shifted-side formula, and
    the textbook alternating-sum formula.

    transport_matches_formula must always hold; relation records how the
    pair relates to the textbook operator: "opposite" means the transported
    operator is exactly minus the textbook one on every form and tuple
    (the global convention mirror), "textbook" would mean equality.
    """

    def __init__(self, ok, relation, witness=None):
        self.ok = ok
        self.relation = relation
        self.witness = witness

    def __bool__(self):
        return self.ok

    def __repr__(self):
        return "DeRhamReport(ok=%r, relation=%r, witness=%r)" % (
            self.ok,
            self.relation,
            self.witness,
        )


def _form_tuples(labels, s):
    return list(itertools.combinations(labels, s))


def _standard_test_forms(bundle, s):
    """Deterministic polynomial-valued antisymmetric s-forms on the shifted
    frames: every delta form plus one with shifting polynomial values."""
    labels = list(bundle.labels_by_magnitude.get(1, ()))
    coords = bundle.base_coordinates
    tuples = _form_tuples(labels, s)
    forms = []
    for t in tuples:
        forms.append({t: Polynomial.constant(1, coords)})
    if coords and tuples:
        rich = {}
        for idx, t in enumerate(tuples):
            c = coords[idx % len(coords)]
            rich[t] = Polynomial.variable(c, coords) + Polynomial.constant(
                idx + 1, coords
            )
        forms.append(rich)
    return forms


def _form_value(form, labels_tuple, zero):
    """Antisymmetric lookup of a strictly-increasing-keyed form table."""
    arr = list(labels_tuple)
    sign = 1
    for i in range(len(arr)):
        for j in range(len(arr) - 1 - i):
            if arr[j] > arr[j + 1]:
                arr[j], arr[j + 1] = arr[j + 1], arr[j]
                sign = -sign
    for j in range(len(arr) - 1):
        if arr[j] == arr[j + 1]:
            return zero
    got = form.get(tuple(arr), zero)
    return got if sign == 1 else -got


def de_rham_compare(algd, max_form_degree=3):
    """Three expansions of the differential on antisymmetric forms of a
    classical algebroid, compared tuple by tuple.

    Route one transports the form through the suspension dictionary,
    applies the vector field of ce_differential, and transports back.
    Route two expands the shifted-side formula: bracket insertions summed
    over 2-subsets with plain signatures, minus the anchor sum over
    1-subsets with plain signatures.  Route three is the textbook operator
    with 0-based alternating signs.  Routes one and two must agree exactly;
    the report records whether they equal the textbook operator or its
    global negative (they are its global negative under this package's
    conventions, and the comparison fails unless one relation holds
    uniformly).
    """
    if algd.n != 1:
        raise ValueError("the classical comparison needs n = 1")
    anti = to_antialgebroid(algd)
    bundle = anti.bundle
    q = ce_differential(anti)
    coords = bundle.base_coordinates
    zero = Polynomial.zero(coords)
    labels = list(bundle.labels_by_magnitude.get(1, ()))
    anchor = algd.anchor
    brackets = algd.brackets

    relations = set()
    for s in range(0, max_form_degree + 1):
        for form in _standard_test_forms(bundle, s) if s > 0 else [
            {(): Polynomial.variable(c, coords)} for c in coords
        ] + [{(): Polynomial.constant(3, coords)}]:
            # route one: transport through the suspension dictionary
            values = {}
            for t, val in form.items():
                if s == 0:
                    continue
                values[t] = val * suspension_power_sign(s)
            if s == 0:
                element = SuperFunction.from_polynomial(
                    form[()], bundle
                )
            else:
                element = element_from_values(bundle, values)
            image = q.apply(element).homological_part(s + 1)
            route_one = {}
            for t in _form_tuples(labels, s + 1):
                frames = [bundle.frame_section(lab) for lab in t]
                v = evaluate_element(image, frames) * suspension_power_sign(s + 1)
                route_one[t] = v

            # route two: shifted-formula expansion on the shifted side
            route_two = {}
            for t in _form_tuples(labels, s + 1):
                total = zero
                for pair in itertools.combinations(range(s + 1), 2):
                    rest = [i for i in range(s + 1) if i not in pair]
                    perm = list(pair) + rest
                    sig = 1
                    arr = list(perm)
                    for i in range(len(arr)):
                        for j in range(len(arr) - 1 - i):
                            if arr[j] > arr[j + 1]:
                                arr[j], arr[j + 1] = arr[j + 1], arr[j]
                                sig = -sig
                    br = brackets.value((t[pair[0]], t[pair[1]]))
                    contrib = zero
                    for lab, comp in br.components.items():
                        contrib = contrib + comp * _form_value(
                            form, (lab,) + tuple(t[i] for i in rest), zero
                        )
                    total = total + contrib * sig
                for one in range(s + 1):
                    rest = [i for i in range(s + 1) if i != one]
                    sig = sign_pow(one)  # moving slot `one` to the front
                    val = _form_value(form, tuple(t[i] for i in rest), zero)
                    d = apply_anchor(anchor, t[one], val)
                    total = total - d * sig
                route_two[t] = total

            # route three: textbook 0-based alternating formula
            route_three = {}
            for t in _form_tuples(labels, s + 1):
                total = zero
                for one in range(s + 1):
                    rest = [i for i in range(s + 1) if i != one]
                    val = _form_value(form, tuple(t[i] for i in rest), zero)
                    d = apply_anchor(anchor, t[one], val)
                    total = total + d * sign_pow(one)
                for i, j in itertools.combinations(range(s + 1), 2):
                    rest = [x for x in range(s + 1) if x not in (i, j)]
                    br = brackets.value((t[i], t[j]))
                    contrib = zero
                    for lab, comp in br.components.items():
                        contrib = contrib + comp * _form_value(
                            form, (lab,) + tuple(t[x] for x in rest), zero
                        )
                    total = total + contrib * sign_pow(i + j)
                route_three[t] = total

            for t in _form_tuples(labels, s + 1):
                if route_one[t] != route_two[t]:
                    return DeRhamReport(
                        False,
                        relation=None,
                        witness=("transport-vs-formula", s, t,
                                 str(route_one[t]), str(route_two[t])),
                    )
                a_val, c_val = route_one[t], route_three[t]
                if a_val.is_zero() and c_val.is_zero():
                    continue
                if a_val == c_val:
                    relations.add("textbook")
                elif a_val == -c_val:
                    relations.add("opposite")
                else:
                    return DeRhamReport(
                        False,
                        relation=None,
                        witness=("vs-textbook", s, t, str(a_val), str(c_val)),
                    )
    if len(relations) > 1:
        return DeRhamReport(False, relation=None, witness=("mixed", relations))
    relation = relations.pop() if relations else "textbook"
    return DeRhamReport(True, relation=relation)
