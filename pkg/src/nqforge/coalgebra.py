"""Symmetric words on a graded bundle, their coproduct, and the operators
that make the bracket-to-coderivation and morphism-to-cohomomorphism
translations precise.

A TensorWord is a polynomial-coefficient element of the free graded
symmetric algebra on the frame sections of a bundle; letters are frame
labels, reordering costs Koszul signs in the section degrees, and a repeated
odd letter kills the word.  The deconcatenation-style coproduct splits words
through shuffles.  Coderivations are determined by corestrictions (one map
per arity), cohomomorphisms by corestrictions of a degree-zero family, with
the 1/s! normalization realized as a sum over unordered set partitions.
"""

from __future__ import annotations

from fractions import Fraction

from .polyring import Polynomial
from .graded import GradedBundle, normalize_tuple, shuffles
from .signs import koszul_sign, sign_pow


def _word_normal_order(labels, bundle):
    arr = list(labels)
    key = lambda lab: bundle.label_index[lab]
    sign = 1
    for i in range(len(arr)):
        for j in range(len(arr) - 1 - i):
            if key(arr[j]) > key(arr[j + 1]):
                sign *= sign_pow(
                    bundle.degree(arr[j]) * bundle.degree(arr[j + 1])
                )
                arr[j], arr[j + 1] = arr[j + 1], arr[j]
    for j in range(len(arr) - 1):
        if arr[j] == arr[j + 1] and bundle.degree(arr[j]) % 2 != 0:
            return tuple(arr), 0
    return tuple(arr), sign


class TensorWord:
    """Sparse element of the symmetric word algebra on a bundle's frames."""

    __slots__ = ("bundle", "terms")

    def __init__(self, bundle, terms=None):
        self.bundle = bundle
        clean = {}
        if terms:
            for labels, coeff in terms.items():
                if not isinstance(coeff, Polynomial):
                    coeff = Polynomial.constant(coeff, bundle.base_coordinates)
                if coeff.is_zero():
                    continue
                key, sign = _word_normal_order(tuple(labels), bundle)
                if sign == 0:
                    continue
                if sign == -1:
                    coeff = -coeff
                if key in clean:
                    clean[key] = clean[key] + coeff
                    if clean[key].is_zero():
                        del clean[key]
                else:
                    clean[key] = coeff
        self.terms = clean

    @classmethod
    def zero(cls, bundle):
        return cls(bundle, {})

    @classmethod
    def letter(cls, label, bundle):
        one = Polynomial.constant(1, bundle.base_coordinates)
        return cls(bundle, {(label,): one})

    @classmethod
    def from_section(cls, section):
        return cls(section.bundle, {(lab,): c for lab, c in section.components.items()})

    def to_section(self):
        from .graded import Section

        comps = {}
        for key, coeff in self.terms.items():
            if len(key) != 1:
                raise ValueError("word is not a single letter: %r" % (key,))
            comps[key[0]] = comps.get(
                key[0], Polynomial.zero(self.bundle.base_coordinates)
            ) + coeff
        return Section(self.bundle, comps)

    def is_zero(self):
        return not self.terms

    def word_degree(self, key):
        return sum(self.bundle.degree(lab) for lab in key)

    def __add__(self, other):
        if not isinstance(other, TensorWord):
            return NotImplemented
        terms = dict(self.terms)
        for key, coeff in other.terms.items():
            if key in terms:
                s = terms[key] + coeff
                if s.is_zero():
                    del terms[key]
                else:
                    terms[key] = s
            else:
                terms[key] = coeff
        out = TensorWord.__new__(TensorWord)
        out.bundle = self.bundle
        out.terms = terms
        return out

    def __neg__(self):
        out = TensorWord.__new__(TensorWord)
        out.bundle = self.bundle
        out.terms = {k: -c for k, c in self.terms.items()}
        return out

    def __sub__(self, other):
        return self + (-other)

    def scale(self, factor):
        return TensorWord(
            self.bundle, {k: c * factor for k, c in self.terms.items()}
        )

    def __mul__(self, other):
        """Symmetric product of words."""
        if not isinstance(other, TensorWord):
            return NotImplemented
        out = TensorWord.zero(self.bundle)
        acc = {}
        for k1, c1 in self.terms.items():
            for k2, c2 in other.terms.items():
                key, sign = _word_normal_order(k1 + k2, self.bundle)
                if sign == 0:
                    continue
                c = c1 * c2
                if sign == -1:
                    c = -c
                acc[key] = acc.get(key, Polynomial.zero(c.coordinates)) + c
        out.terms = {k: c for k, c in acc.items() if not c.is_zero()}
        return out

    def __eq__(self, other):
        if not isinstance(other, TensorWord):
            return NotImplemented
        return self.bundle.same_frames(other.bundle) and self.terms == other.terms

    def __repr__(self):
        if not self.terms:
            return "TensorWord(0)"
        body = " + ".join(
            "(%s)*%s" % (c, "&".join(k) if k else "1")
            for k, c in sorted(self.terms.items())
        )
        return "TensorWord(%s)" % body


class TensorPair:
    """Element of (words) tensor (words), for stating the coalgebra laws."""

    __slots__ = ("left_bundle", "right_bundle", "terms")

    def __init__(self, left_bundle, right_bundle, terms=None):
        self.left_bundle = left_bundle
        self.right_bundle = right_bundle
        self.terms = {}
        if terms:
            for key, coeff in terms.items():
                if not coeff.is_zero():
                    self.terms[key] = (
                        self.terms.get(
                            key, Polynomial.zero(coeff.coordinates)
                        )
                        + coeff
                    )
            self.terms = {k: c for k, c in self.terms.items() if not c.is_zero()}

    def add_term(self, lkey, rkey, coeff):
        if coeff.is_zero():
            return
        key = (lkey, rkey)
        cur = self.terms.get(key)
        total = coeff if cur is None else cur + coeff
        if total.is_zero():
            self.terms.pop(key, None)
        else:
            self.terms[key] = total

    def __add__(self, other):
        out = TensorPair(self.left_bundle, self.right_bundle, dict(self.terms))
        for (lk, rk), c in other.terms.items():
            out.add_term(lk, rk, c)
        return out

    def __sub__(self, other):
        out = TensorPair(self.left_bundle, self.right_bundle, dict(self.terms))
        for (lk, rk), c in other.terms.items():
            out.add_term(lk, rk, -c)
        return out

    def is_zero(self):
        return not self.terms

    def __eq__(self, other):
        if not isinstance(other, TensorPair):
            return NotImplemented
        return self.terms == other.terms

    def __repr__(self):
        if not self.terms:
            return "TensorPair(0)"
        body = " + ".join(
            "(%s)*(%s | %s)" % (c, "&".join(lk) if lk else "1", "&".join(rk) if rk else "1")
            for (lk, rk), c in sorted(self.terms.items())
        )
        return "TensorPair(%s)" % body


def coproduct(word):
    """Shuffle coproduct including the two trivial splittings.

    On a word x_1 ... x_r returns the sum over k and (k, r-k)-shuffles of
    Koszul-signed splittings (first block) tensor (second block).
    """
    bundle = word.bundle
    out = TensorPair(bundle, bundle)
    for key, coeff in word.terms.items():
        degs = [bundle.degree(lab) for lab in key]
        r = len(key)
        for k in range(r + 1):
            for perm in shuffles(k, r - k):
                sign = koszul_sign(perm, degs)
                left = tuple(key[i] for i in perm[:k])
                right = tuple(key[i] for i in perm[k:])
                out.add_term(left, right, coeff * sign)
    return out


class MultilinearMap:
    """Graded symmetric multilinear map on frame tuples, valued in words on
    a target bundle (the same bundle for brackets, a different one for
    morphism components).

    fn is only consulted on canonically ordered tuples; evaluation on any
    other order goes through Koszul normalization, and tuples whose
    symmetrization vanishes return zero without consulting fn.
    """

    def __init__(self, source_bundle, target_bundle, arity, degree, fn):
        self.source_bundle = source_bundle
        self.target_bundle = target_bundle
        self.arity = int(arity)
        self.degree = int(degree)
        self.fn = fn

    def value(self, labels):
        if len(labels) != self.arity:
            raise ValueError(
                "map of arity %d applied to %d entries" % (self.arity, len(labels))
            )
        canon, sign = normalize_tuple(labels, self.source_bundle, symmetric=True)
        if sign == 0:
            return TensorWord.zero(self.target_bundle)
        out = self.fn(canon)
        if sign == -1:
            out = -out
        return out


def product_of_maps(f, g):
    """Graded symmetric product of two multilinear maps.

    (f . g)(v) = sum over (r_f, r_g)-shuffles of
    (-1)^(deg g * deg of first block) * Koszul * f(first block) * g(second
    block), with the product of the output words on the shared target.
    """
    if f.source_bundle is not g.source_bundle and not f.source_bundle.same_frames(
        g.source_bundle
    ):
        raise ValueError("maps have different sources")
    arity = f.arity + g.arity
    degree = f.degree + g.degree

    def fn(labels):
        bundle = f.source_bundle
        degs = [bundle.degree(lab) for lab in labels]
        out = TensorWord.zero(f.target_bundle)
        for perm in shuffles(f.arity, g.arity):
            eps = koszul_sign(perm, degs)
            first = [labels[i] for i in perm[: f.arity]]
            second = [labels[i] for i in perm[f.arity:]]
            cross = sign_pow(g.degree * sum(degs[i] for i in perm[: f.arity]))
            piece = f.value(first) * g.value(second)
            piece = piece.scale(Fraction(eps * cross))
            out = out + piece
        return out

    return MultilinearMap(f.source_bundle, f.target_bundle, arity, degree, fn)


class Coderivation:
    """Coderivation of the word coalgebra, given by corestrictions.

    corestrictions maps arity k to a MultilinearMap with source and target
    on the same bundle; all must share one degree.  Acting on a word sums,
    over k and (k, r-k)-shuffles, the Koszul-signed replacement of the first
    block by its corestriction value.
    """

    def __init__(self, bundle, corestrictions):
        self.bundle = bundle
        self.corestrictions = dict(corestrictions)
        degrees = {m.degree for m in self.corestrictions.values()}
        if len(degrees) > 1:
            raise ValueError("corestrictions of mixed degree: %r" % degrees)
        self.degree = degrees.pop() if degrees else 0

    def apply_key(self, key, coeff):
        bundle = self.bundle
        out = TensorWord.zero(bundle)
        degs = [bundle.degree(lab) for lab in key]
        r = len(key)
        for k, cor in self.corestrictions.items():
            if k > r:
                continue
            for perm in shuffles(k, r - k):
                eps = koszul_sign(perm, degs)
                first = [key[i] for i in perm[:k]]
                rest = tuple(key[i] for i in perm[k:])
                head = cor.value(first)
                if head.is_zero():
                    continue
                tail = TensorWord(
                    bundle, {rest: Polynomial.constant(1, bundle.base_coordinates)}
                )
                out = out + (head * tail).scale(Fraction(eps)).scale(coeff)
        return out

    def apply(self, word):
        out = TensorWord.zero(self.bundle)
        for key, coeff in word.terms.items():
            out = out + self.apply_key(key, coeff)
        return out


def _set_partitions(items):
    """All partitions of a list into unordered nonempty blocks; blocks keep
    the input order inside, and the block list is ordered by first element."""
    if not items:
        yield []
        return
    head, rest = items[0], items[1:]
    for part in _set_partitions(rest):
        yield [[head]] + part
        for i in range(len(part)):
            yield part[:i] + [[head] + part[i]] + part[i + 1:]


class Cohomomorphism:
    """Coalgebra morphism between word coalgebras, given by a degree-zero
    family of corestrictions (arity r maps source tuples to target words).

    Acting on a word sums over unordered set partitions of the letters, one
    corestriction per block; the 1/s! of the ordered-composition picture is
    exactly the passage to unordered partitions, which is well defined
    because degree-zero maps make every summand independent of block order.
    """

    def __init__(self, source_bundle, target_bundle, corestrictions):
        self.source_bundle = source_bundle
        self.target_bundle = target_bundle
        if source_bundle.base_coordinates != target_bundle.base_coordinates:
            raise ValueError(
                "word-level cohomomorphisms assume a shared base chart"
            )
        self.corestrictions = dict(corestrictions)
        for m in self.corestrictions.values():
            if m.degree != 0:
                raise ValueError("cohomomorphism corestrictions must have degree 0")

    def apply_key(self, key, coeff):
        bundle = self.source_bundle
        degs = {i: bundle.degree(lab) for i, lab in enumerate(key)}
        out = TensorWord.zero(self.target_bundle)
        if not key:
            # the empty word is grouplike and maps to the empty word
            return TensorWord(self.target_bundle, {(): coeff})
        for blocks in _set_partitions(list(range(len(key)))):
            piece = None
            ok = True
            # Koszul sign of regrouping the word into the ordered blocks
            flat = [i for block in blocks for i in block]
            perm_degs = [degs[i] for i in range(len(key))]
            eps = koszul_sign(flat, perm_degs)
            for block in blocks:
                size = len(block)
                cor = self.corestrictions.get(size)
                if cor is None:
                    ok = False
                    break
                val = cor.value([key[i] for i in block])
                if val.is_zero():
                    ok = False
                    break
                piece = val if piece is None else piece * val
            if not ok or piece is None:
                continue
            out = out + piece.scale(Fraction(eps)).scale(coeff)
        return out

    def apply(self, word):
        out = TensorWord.zero(self.target_bundle)
        for key, coeff in word.terms.items():
            out = out + self.apply_key(key, coeff)
        return out


# ----- law checks -----


class LawReport:
    def __init__(self, ok, witness=None, residual=None):
        self.ok = ok
        self.witness = witness
        self.residual = residual

    def __bool__(self):
        return self.ok

    def __repr__(self):
        if self.ok:
            return "LawReport(ok)"
        return "LawReport(fail at %r)" % (self.witness,)


def _pair_apply_left(pair, op):
    """Apply a word operator to the left leg of a pair, no crossing sign."""
    out = TensorPair(pair.left_bundle, pair.right_bundle)
    for (lk, rk), c in pair.terms.items():
        word = TensorWord(
            pair.left_bundle,
            {lk: Polynomial.constant(1, pair.left_bundle.base_coordinates)},
        )
        img = op.apply(word)
        for key, cc in img.terms.items():
            out.add_term(key, rk, c * cc)
    return out


def _pair_apply_right(pair, op, op_degree):
    """Apply a word operator to the right leg, crossing the left leg with
    the operator's degree."""
    out = TensorPair(pair.left_bundle, pair.right_bundle)
    for (lk, rk), c in pair.terms.items():
        ldeg = sum(pair.left_bundle.degree(lab) for lab in lk)
        sign = sign_pow(op_degree * ldeg)
        word = TensorWord(
            pair.right_bundle,
            {rk: Polynomial.constant(1, pair.right_bundle.base_coordinates)},
        )
        img = op.apply(word)
        for key, cc in img.terms.items():
            out.add_term(lk, key, c * cc * sign)
    return out


def _pair_coproduct_left(pair):
    """(coproduct tensor id) of a pair viewed as already-split words."""
    out = {}
    for (lk, rk), c in pair.terms.items():
        word = TensorWord(
            pair.left_bundle,
            {lk: Polynomial.constant(1, pair.left_bundle.base_coordinates)},
        )
        split = coproduct(word)
        for (k1, k2), cc in split.terms.items():
            key = (k1, k2, rk)
            out[key] = out.get(key, Polynomial.zero(c.coordinates)) + c * cc
    return {k: v for k, v in out.items() if not v.is_zero()}


def _pair_coproduct_right(pair):
    out = {}
    for (lk, rk), c in pair.terms.items():
        word = TensorWord(
            pair.right_bundle,
            {rk: Polynomial.constant(1, pair.right_bundle.base_coordinates)},
        )
        split = coproduct(word)
        for (k1, k2), cc in split.terms.items():
            key = (lk, k1, k2)
            out[key] = out.get(key, Polynomial.zero(c.coordinates)) + c * cc
    return {k: v for k, v in out.items() if not v.is_zero()}


def check_coassociativity(bundle, words):
    """(coproduct tensor id) after coproduct equals (id tensor coproduct)
    after coproduct on each given word."""
    for word in words:
        left = _pair_coproduct_left(coproduct(word))
        right = _pair_coproduct_right(coproduct(word))
        keys = set(left) | set(right)
        for key in sorted(keys):
            zero = Polynomial.zero(bundle.base_coordinates)
            if left.get(key, zero) != right.get(key, zero):
                return LawReport(False, witness=(word, key))
    return LawReport(True)


def check_coderivation_law(delta, words):
    """coproduct after delta equals (delta tensor id + id tensor delta)
    after coproduct on each given word."""
    for word in words:
        lhs = coproduct(delta.apply(word))
        split = coproduct(word)
        rhs = _pair_apply_left(split, delta) + _pair_apply_right(
            split, delta, delta.degree
        )
        if not (lhs - rhs).is_zero():
            return LawReport(False, witness=word, residual=lhs - rhs)
    return LawReport(True)


def check_cohomomorphism_law(phi, words):
    """Target coproduct after phi equals (phi tensor phi) after the source
    coproduct on each given word."""
    for word in words:
        lhs = coproduct(phi.apply(word))
        split = coproduct(word)
        rhs = TensorPair(phi.target_bundle, phi.target_bundle)
        for (lk, rk), c in split.terms.items():
            lw = TensorWord(
                phi.source_bundle,
                {lk: Polynomial.constant(1, phi.source_bundle.base_coordinates)},
            )
            rw = TensorWord(
                phi.source_bundle,
                {rk: Polynomial.constant(1, phi.source_bundle.base_coordinates)},
            )
            li = phi.apply(lw)
            ri = phi.apply(rw)
            for k1, c1 in li.terms.items():
                for k2, c2 in ri.terms.items():
                    rhs.add_term(k1, k2, c * c1 * c2)
        if not (lhs - rhs).is_zero():
            return LawReport(False, witness=word, residual=lhs - rhs)
    return LawReport(True)
