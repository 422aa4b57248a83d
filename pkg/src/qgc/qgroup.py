"""The two-parameter quantum group of type B_n.

Elements are kept in triangular normal form: each term is a lowering word, a
toral monomial w'_eta w_phi, a raising word, and a scalar, with both words
drawn from graded-basis representatives of the halves modulo the Serre
ideal.  Products are straightened by moving torals and resolving raising /
lowering adjacencies, then reducing the pure words degreewise by linear
algebra over the scalar field.
"""

from __future__ import annotations

import json
import os
from fractions import Fraction

from . import linalg
from .errors import (
    NonIntegralSecondArgument,
    NotInPositiveCone,
    RankMismatch,
)
from .rootdata import RootSystemB
from .scalars import ONE, ZERO, Scalar

_CACHE_FORMAT = "qgc-basis-1"


def _zero_vec(n):
    return (0,) * n


def _vec_add(a, b):
    return tuple(x + y for x, y in zip(a, b))


def _vec_neg(a):
    return tuple(-x for x in a)


def word_content(n, word):
    out = [0] * n
    for i in word:
        out[i - 1] += 1
    return tuple(out)


class GradedBasis:
    """Basis of one graded slice of a triangular half, with its reduction map.

    words: representative words, ascending lex.
    reduction: every word of this content -> {representative: Scalar}.
    """

    __slots__ = ("sign", "nu", "words", "reduction")

    def __init__(self, sign, nu, words, reduction):
        self.sign = sign
        self.nu = nu
        self.words = words
        self.reduction = reduction

    @property
    def dim(self):
        return len(self.words)


class Element:
    """Algebra element in triangular normal form.

    terms maps (fword, eta, phi, eword) -> Scalar; no zero scalars are
    stored, so equality is term-map equality.  Instances are immutable.
    """

    __slots__ = ("algebra", "terms")

    def __init__(self, algebra, terms):
        self.algebra = algebra
        self.terms = {k: c for k, c in terms.items() if not c.is_zero()}

    def is_zero(self):
        return not self.terms

    def __add__(self, other):
        self._compat(other)
        terms = dict(self.terms)
        for k, c in other.terms.items():
            c2 = terms.get(k, ZERO) + c
            if c2.is_zero():
                terms.pop(k, None)
            else:
                terms[k] = c2
        return Element(self.algebra, terms)

    def __sub__(self, other):
        return self + (-other)

    def __neg__(self):
        return Element(self.algebra, {k: -c for k, c in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, Element):
            self._compat(other)
            return self.algebra.straighten(self, other)
        return self.scale(other)

    def __rmul__(self, other):
        # scalars commute with everything
        return self.scale(other)

    def scale(self, c):
        c = Scalar._coerce(c)
        if c is NotImplemented:
            return NotImplemented
        if c.is_zero():
            return Element(self.algebra, {})
        return Element(self.algebra, {k: v * c for k, v in self.terms.items()})

    def __eq__(self, other):
        return isinstance(other, Element) and self.algebra is other.algebra \
            and self.terms == other.terms

    def _compat(self, other):
        if self.algebra is not other.algebra:
            raise RankMismatch("elements belong to different algebras")

    def letters(self):
        """The generator letters of each term, left to right."""
        for (fw, eta, phi, ew), c in self.terms.items():
            letters = [("F", i) for i in fw]
            if any(eta) or any(phi):
                letters.append(("T", eta, phi))
            letters += [("E", i) for i in ew]
            yield letters, c

    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda kv: kv[0])

    def to_json(self):
        return [{"f": list(fw), "eta": list(eta), "phi": list(phi),
                 "e": list(ew), "coeff": c.to_json()}
                for (fw, eta, phi, ew), c in self.sorted_terms()]

    def __str__(self):
        if not self.terms:
            return "0"
        chunks = []
        for (fw, eta, phi, ew), c in self.sorted_terms():
            parts = [f"({c})"]
            if fw:
                parts.append("F[" + ",".join(map(str, fw)) + "]")
            if any(eta):
                parts.append("W'[" + ",".join(map(str, eta)) + "]")
            if any(phi):
                parts.append("W[" + ",".join(map(str, phi)) + "]")
            if ew:
                parts.append("E[" + ",".join(map(str, ew)) + "]")
            if len(parts) == 1:
                parts.append("1")
            chunks.append(" ".join(parts))
        return "  +  ".join(chunks)

    def __repr__(self):
        return f"Element({self})"


class TensorElement:
    """Sum of two-leg tensors with Scalar coefficients, legs in normal form."""

    __slots__ = ("algebra", "terms")

    def __init__(self, algebra, terms):
        self.algebra = algebra
        self.terms = {k: c for k, c in terms.items() if not c.is_zero()}

    def __add__(self, other):
        terms = dict(self.terms)
        for k, c in other.terms.items():
            c2 = terms.get(k, ZERO) + c
            if c2.is_zero():
                terms.pop(k, None)
            else:
                terms[k] = c2
        return TensorElement(self.algebra, terms)

    def __sub__(self, other):
        return self + TensorElement(self.algebra,
                                    {k: -c for k, c in other.terms.items()})

    def mul_pair(self, left: Element, right: Element):
        """Right-multiply by (left tensor right)."""
        alg = self.algebra
        out = {}
        for (k1, k2), c in self.terms.items():
            p1 = alg.element_from_term(k1) * left
            p2 = alg.element_from_term(k2) * right
            for kk1, c1 in p1.terms.items():
                for kk2, c2 in p2.terms.items():
                    key = (kk1, kk2)
                    acc = out.get(key, ZERO) + c * c1 * c2
                    if acc.is_zero():
                        out.pop(key, None)
                    else:
                        out[key] = acc
        return TensorElement(self.algebra, out)

    def __eq__(self, other):
        return isinstance(other, TensorElement) and self.terms == other.terms

    def is_zero(self):
        return not self.terms


_RANK = {"F": 0, "T": 1, "E": 2}


class Algebra:
    """Presentation-level data and normal-form arithmetic at rank n."""

    def __init__(self, n: int):
        self.n = n
        self.rs = RootSystemB(n)
        # exponents (a_ij, b_ij) with <w'_i, w_j> = r^a s^b over simple roots
        self._gr = [[0] * n for _ in range(n)]
        self._gs = [[0] * n for _ in range(n)]
        for i in range(n):
            alpha_i = self.rs.simple_roots[i]
            for j in range(n):
                if j < n - 1:
                    self._gr[i][j] = int(2 * self._eps_dot_alpha(j, alpha_i))
                    self._gs[i][j] = int(2 * self._eps_dot_alpha(j + 1, alpha_i))
                elif i < n - 1:
                    self._gr[i][j] = int(2 * self._eps_dot_alpha(n - 1, alpha_i))
                    self._gs[i][j] = 0
                else:
                    self._gr[i][j] = 1
                    self._gs[i][j] = -1
        self._basis_cache = {}
        self._reduce_cache = {}
        self._normalize_cache = {}
        self._zero = _zero_vec(n)

    def _eps_dot_alpha(self, eps_index, alpha_doubled):
        # (eps_k, alpha) with alpha in doubled coordinates
        return Fraction(alpha_doubled[eps_index], 2)

    # -- scalars of the presentation ---------------------------------------

    def root_norm(self, i: int) -> int:
        alpha = self.rs.simple_roots[i - 1]
        return int(self.rs.inner(alpha, alpha))

    def r_i(self, i: int) -> Scalar:
        return Scalar.monomial(2 * self.root_norm(i), 0)

    def s_i(self, i: int) -> Scalar:
        return Scalar.monomial(0, 2 * self.root_norm(i))

    def qint(self, m: int, i: int) -> Scalar:
        """[m]_i = (r_i^m - s_i^m) / (r_i - s_i)."""
        if m < 0:
            raise ValueError("quantum integer needs m >= 0")
        num = self.r_i(i) ** m - self.s_i(i) ** m
        return num / (self.r_i(i) - self.s_i(i))

    # -- group-like pairing -------------------------------------------------

    def gpair(self, eta, phi) -> Scalar:
        """<w'_eta, w_phi> extended bimultiplicatively over alpha coordinates.

        The second slot must be integral (the toral generator w_phi only
        exists for root-lattice phi); the first may carry half-integers.
        """
        if len(eta) != self.n or len(phi) != self.n:
            raise RankMismatch("alpha-coordinate length mismatch")
        if any(Fraction(p).denominator != 1 for p in phi):
            raise NonIntegralSecondArgument(f"{phi} is not in the root lattice")
        return self._gpair_any(eta, phi)

    def _gpair_any(self, eta, phi) -> Scalar:
        ru = Fraction(0)
        sv = Fraction(0)
        for i, ei in enumerate(eta):
            if not ei:
                continue
            ei = Fraction(ei)
            for j, pj in enumerate(phi):
                if not pj:
                    continue
                pj = Fraction(pj)
                c = ei * pj
                ru += self._gr[i][j] * c
                sv += self._gs[i][j] * c
        ue, ve = 2 * ru, 2 * sv
        if ue.denominator != 1 or ve.denominator != 1:
            raise ValueError("pairing value leaves the half-power lattice")
        return Scalar.monomial(int(ue), int(ve))

    def chi(self, eta, phi, eta1, phi1) -> Scalar:
        """Toral character value <w'_eta, w_phi1> <w'_eta1, w_phi>."""
        return self._gpair_any(eta, phi1) * self._gpair_any(eta1, phi)

    # -- literal conjugation tables of the presentation ---------------------

    def conj_omega_e(self, j: int, i: int) -> Scalar:
        """Scalar c with w_j e_i w_j^-1 = c e_i, from the defining tables."""
        n = self.n
        alpha_i = self.rs.simple_roots[i - 1]
        if j < n:
            a = self._eps_dot_alpha(j - 1, alpha_i)
            b = self._eps_dot_alpha(j, alpha_i)
            return _pow(self.r_i(j), a) * _pow(self.s_i(j), b)
        if i < n:
            return _pow(self.r_i(n), 2 * self._eps_dot_alpha(n - 1, alpha_i))
        e = self._eps_dot_alpha(n - 1, alpha_i)
        return _pow(self.r_i(n), e) * _pow(self.s_i(n), -e)

    def conj_omega_prime_e(self, j: int, i: int) -> Scalar:
        """Scalar c with w'_j e_i w'_j^-1 = c e_i, from the defining tables."""
        n = self.n
        alpha_i = self.rs.simple_roots[i - 1]
        if j < n:
            a = self._eps_dot_alpha(j - 1, alpha_i)
            b = self._eps_dot_alpha(j, alpha_i)
            return _pow(self.s_i(j), a) * _pow(self.r_i(j), b)
        if i < n:
            return _pow(self.s_i(n), 2 * self._eps_dot_alpha(n - 1, alpha_i))
        e = self._eps_dot_alpha(n - 1, alpha_i)
        return _pow(self.s_i(n), e) * _pow(self.r_i(n), -e)

    # -- element constructors -----------------------------------------------

    def zero(self) -> Element:
        return Element(self, {})

    def one(self) -> Element:
        return Element(self, {((), self._zero, self._zero, ()): ONE})

    def scalar(self, c) -> Element:
        c = Scalar._coerce(c)
        return Element(self, {((), self._zero, self._zero, ()): c})

    def e(self, i: int) -> Element:
        self._check_index(i)
        return Element(self, {((), self._zero, self._zero, (i,)): ONE})

    def f(self, i: int) -> Element:
        self._check_index(i)
        return Element(self, {((i,), self._zero, self._zero, ()): ONE})

    def toral(self, eta, phi) -> Element:
        eta, phi = tuple(eta), tuple(phi)
        if len(eta) != self.n or len(phi) != self.n:
            raise RankMismatch("toral exponent length mismatch")
        return Element(self, {((), eta, phi, ()): ONE})

    def omega(self, i: int, power: int = 1) -> Element:
        self._check_index(i)
        phi = [0] * self.n
        phi[i - 1] = power
        return self.toral(self._zero, phi)

    def omega_prime(self, i: int, power: int = 1) -> Element:
        self._check_index(i)
        eta = [0] * self.n
        eta[i - 1] = power
        return self.toral(eta, self._zero)

    def element_from_term(self, key, coeff=ONE) -> Element:
        return Element(self, {key: coeff})

    def fword_element(self, word, coeff=ONE) -> Element:
        out = {}
        for rep, c in self.reduce_word("-", tuple(word)).items():
            out[(rep, self._zero, self._zero, ())] = c * coeff
        return Element(self, out)

    def eword_element(self, word, coeff=ONE) -> Element:
        out = {}
        for rep, c in self.reduce_word("+", tuple(word)).items():
            out[((), self._zero, self._zero, rep)] = c * coeff
        return Element(self, out)

    def _check_index(self, i):
        if not 1 <= i <= self.n:
            raise RankMismatch(f"generator index {i} out of 1..{self.n}")

    # -- Serre relators and graded bases -------------------------------------

    def serre_relators(self, sign):
        """Degree-homogeneous relators of one triangular half, as word maps."""
        n = self.n
        rels = []
        for i in range(1, n + 1):
            for j in range(i + 2, n + 1):
                rels.append({(i, j): ONE, (j, i): -ONE})
        for i in range(1, n):
            a = self.r_i(i) + self.s_i(i)
            b = self.r_i(i) * self.s_i(i)
            if sign == "+":
                rels.append({(i, i, i + 1): ONE, (i, i + 1, i): -a,
                             (i + 1, i, i): b})
            else:
                rels.append({(i + 1, i, i): ONE, (i, i + 1, i): -a,
                             (i, i, i + 1): b})
        for j in range(1, n - 1):
            a = self.r_i(j + 1).inverse() + self.s_i(j + 1).inverse()
            b = (self.r_i(j + 1) * self.s_i(j + 1)).inverse()
            if sign == "+":
                rels.append({(j + 1, j + 1, j): ONE, (j + 1, j, j + 1): -a,
                             (j, j + 1, j + 1): b})
            else:
                rels.append({(j, j + 1, j + 1): ONE, (j + 1, j, j + 1): -a,
                             (j + 1, j + 1, j): b})
        if n >= 2:
            rn_inv = self.r_i(n).inverse()
            sn_inv = self.s_i(n).inverse()
            big = rn_inv ** 2 + rn_inv * sn_inv + sn_inv ** 2
            prod = rn_inv * sn_inv
            if sign == "+":
                rels.append({
                    (n, n, n, n - 1): ONE,
                    (n, n, n - 1, n): -big,
                    (n, n - 1, n, n): prod * big,
                    (n - 1, n, n, n): -(prod ** 3),
                })
            else:
                rels.append({
                    (n - 1, n, n, n): ONE,
                    (n, n - 1, n, n): -big,
                    (n, n, n - 1, n): prod * big,
                    (n, n, n, n - 1): -(prod ** 3),
                })
        return rels

    def words_of_content(self, nu):
        """All words over 1..n with the given alpha-coordinate content."""
        out = []

        def rec(prefix, remaining):
            if all(c == 0 for c in remaining):
                out.append(tuple(prefix))
                return
            for i in range(self.n):
                if remaining[i]:
                    remaining[i] -= 1
                    prefix.append(i + 1)
                    rec(prefix, remaining)
                    prefix.pop()
                    remaining[i] += 1

        rec([], list(nu))
        return out

    def graded_basis(self, sign, nu) -> GradedBasis:
        nu = tuple(nu)
        if len(nu) != self.n:
            raise RankMismatch("content length mismatch")
        if any(c < 0 for c in nu):
            raise NotInPositiveCone(f"{nu} is not in the positive cone")
        key = (sign, nu)
        hit = self._basis_cache.get(key)
        if hit is not None:
            return hit
        basis = self._load_disk_basis(sign, nu)
        if basis is None:
            basis = self._build_graded_basis(sign, nu)
            self._store_disk_basis(basis)
        self._basis_cache[key] = basis
        return basis

    def _build_graded_basis(self, sign, nu):
        words = self.words_of_content(nu)
        # pivot selection prefers lex-greater words, so sort columns descending
        words.sort(reverse=True)
        index = {w: k for k, w in enumerate(words)}
        rows = []
        for rel in self.serre_relators(sign):
            rel_content = word_content(self.n, next(iter(rel)))
            rest = tuple(a - b for a, b in zip(nu, rel_content))
            if any(c < 0 for c in rest):
                continue
            for left in self._splits(rest):
                right = tuple(a - b for a, b in zip(rest, left))
                for u in self.words_of_content(left):
                    for w in self.words_of_content(right):
                        row = [ZERO] * len(words)
                        for mid, c in rel.items():
                            row[index[u + mid + w]] = c
                        rows.append(row)
        if rows:
            reduced, pivots = linalg.rref(rows)
        else:
            reduced, pivots = [], []
        pivot_set = set(pivots)
        reps = sorted(w for w, k in index.items() if k not in pivot_set)
        reduction = {w: {w: ONE} for w in reps}
        for rrow, pcol in zip(reduced, pivots):
            expansion = {}
            for k, c in enumerate(rrow):
                if k != pcol and not c.is_zero():
                    expansion[words[k]] = -c
            reduction[words[pcol]] = expansion
        return GradedBasis(sign, nu, reps, reduction)

    def _splits(self, total):
        """All componentwise splits 0 <= left <= total."""
        ranges = [range(c + 1) for c in total]
        out = [()]
        for r in ranges:
            out = [t + (x,) for t in out for x in r]
        return out

    def reduce_word(self, sign, word):
        word = tuple(word)
        if len(word) <= 1:
            return {word: ONE}
        key = (sign, word)
        hit = self._reduce_cache.get(key)
        if hit is None:
            nu = word_content(self.n, word)
            hit = self.graded_basis(sign, nu).reduction[word]
            self._reduce_cache[key] = hit
        return hit

    def graded_dim(self, sign, nu) -> int:
        return self.graded_basis(sign, nu).dim

    # -- on-disk memoization of graded bases ---------------------------------

    def _cache_path(self, sign, nu):
        root = os.environ.get("QGC_CACHE_DIR")
        if not root:
            return None
        tag = "p" if sign == "+" else "m"
        name = f"{_CACHE_FORMAT}-n{self.n}-{tag}-" + "_".join(map(str, nu)) + ".json"
        return os.path.join(root, name)

    def _load_disk_basis(self, sign, nu):
        path = self._cache_path(sign, nu)
        if not path or not os.path.exists(path):
            return None
        try:
            with open(path, "r", encoding="utf-8") as fh:
                data = json.load(fh)
            if data["format"] != _CACHE_FORMAT or data["n"] != self.n:
                return None
            words = [tuple(w) for w in data["words"]]
            reduction = {}
            for wstr, expansion in data["reduction"].items():
                w = tuple(int(x) for x in wstr.split(",")) if wstr else ()
                reduction[w] = {tuple(rw): Scalar.from_json(cj)
                                for rw, cj in expansion}
            return GradedBasis(sign, tuple(nu), words, reduction)
        except Exception:
            return None

    def _store_disk_basis(self, basis):
        path = self._cache_path(basis.sign, basis.nu)
        if not path:
            return
        try:
            os.makedirs(os.path.dirname(path), exist_ok=True)
            data = {
                "format": _CACHE_FORMAT,
                "n": self.n,
                "sign": basis.sign,
                "nu": list(basis.nu),
                "words": [list(w) for w in basis.words],
                "reduction": {
                    ",".join(map(str, w)): [[list(rw), c.to_json()]
                                            for rw, c in expansion.items()]
                    for w, expansion in basis.reduction.items()
                },
            }
            with open(path, "w", encoding="utf-8") as fh:
                json.dump(data, fh)
        except OSError:
            pass

    # -- straightening --------------------------------------------------------

    def straighten(self, x: Element, y: Element) -> Element:
        out = {}
        for lx, cx in x.letters():
            for ly, cy in y.letters():
                c = cx * cy
                for key, cw in self._normalize(tuple(lx + ly)).items():
                    acc = out.get(key, ZERO) + c * cw
                    if acc.is_zero():
                        out.pop(key, None)
                    else:
                        out[key] = acc
        return Element(self, out)

    def _normalize(self, letters):
        """Normal form of a product of generator letters, fully memoized.

        Rewrites the leftmost inversion of the F < T < E letter order; the
        raising/lowering adjacency branches through the commutator, so
        memoizing every intermediate word shares the bulk of the work across
        products with common tails.
        """
        hit = self._normalize_cache.get(letters)
        if hit is not None:
            return hit
        idx = None
        for k in range(len(letters) - 1):
            a, b = letters[k][0], letters[k + 1][0]
            if _RANK[a] > _RANK[b] or (a == "T" and b == "T"):
                idx = k
                break
        if idx is None:
            out = {}
            self._emit(letters, ONE, out)
            out = {k: c for k, c in out.items() if not c.is_zero()}
            self._normalize_cache[letters] = out
            return out
        x, y = letters[idx], letters[idx + 1]
        branches = []
        if x[0] == "T" and y[0] == "T":
            merged = ("T", _vec_add(x[1], y[1]), _vec_add(x[2], y[2]))
            branches.append((letters[:idx] + (merged,) + letters[idx + 2:], ONE))
        elif x[0] == "T" and y[0] == "F":
            m = self._move_scalar(x[1], x[2], y[1])
            branches.append((letters[:idx] + (y, x) + letters[idx + 2:], m))
        elif x[0] == "E" and y[0] == "T":
            m = self._move_scalar(y[1], y[2], x[1])
            branches.append((letters[:idx] + (y, x) + letters[idx + 2:], m))
        else:  # E then F: resolve the raising/lowering adjacency
            i, j = x[1], y[1]
            branches.append((letters[:idx] + (y, x) + letters[idx + 2:], ONE))
            if i == j:
                c = ONE / (self.r_i(i) - self.s_i(i))
                unit = tuple(1 if k == i - 1 else 0 for k in range(self.n))
                head, tail = letters[:idx], letters[idx + 2:]
                branches.append((head + (("T", self._zero, unit),) + tail, c))
                branches.append((head + (("T", unit, self._zero),) + tail, -c))
        out = {}
        for word, coeff in branches:
            for key, cw in self._normalize(word).items():
                acc = out.get(key, ZERO) + coeff * cw
                if acc.is_zero():
                    out.pop(key, None)
                else:
                    out[key] = acc
        self._normalize_cache[letters] = out
        return out

    def _move_scalar(self, eta, phi, i) -> Scalar:
        """<w'_eta, w_i> <w'_i, w_phi>^-1, the toral crossing factor."""
        unit = tuple(1 if k == i - 1 else 0 for k in range(self.n))
        return self._gpair_any(eta, unit) * self._gpair_any(unit, phi).inverse()

    def _emit(self, word, coeff, out):
        fw = tuple(i for t, i in ((l[0], l[1]) for l in word) if t == "F")
        ew = tuple(l[1] for l in word if l[0] == "E")
        torals = [l for l in word if l[0] == "T"]
        if torals:
            eta, phi = torals[0][1], torals[0][2]
        else:
            eta, phi = self._zero, self._zero
        for fw_rep, cf in self.reduce_word("-", fw).items():
            cf2 = coeff * cf
            for ew_rep, ce in self.reduce_word("+", ew).items():
                key = (fw_rep, eta, phi, ew_rep)
                acc = out.get(key, ZERO) + cf2 * ce
                if acc.is_zero():
                    out.pop(key, None)
                else:
                    out[key] = acc

    # -- Hopf structure --------------------------------------------------------

    def comultiply(self, x: Element) -> TensorElement:
        one_key = ((), self._zero, self._zero, ())
        total = TensorElement(self, {})
        for letters, c in x.letters():
            acc = TensorElement(self, {(one_key, one_key): c})
            for letter in letters:
                pieces = None
                if letter[0] == "F":
                    i = letter[1]
                    pieces = [(self.one(), self.f(i)),
                              (self.f(i), self.omega_prime(i))]
                elif letter[0] == "E":
                    i = letter[1]
                    pieces = [(self.e(i), self.one()),
                              (self.omega(i), self.e(i))]
                else:
                    t = self.toral(letter[1], letter[2])
                    pieces = [(t, t)]
                nxt = TensorElement(self, {})
                for left, right in pieces:
                    nxt = nxt + acc.mul_pair(left, right)
                acc = nxt
            total = total + acc
        return total

    def antipode(self, x: Element) -> Element:
        out = self.zero()
        for letters, c in x.letters():
            prod = self.one()
            for letter in reversed(letters):
                if letter[0] == "F":
                    i = letter[1]
                    unit = tuple(1 if k == i - 1 else 0 for k in range(self.n))
                    img = Element(self, {((i,), _vec_neg(unit), self._zero, ()): -ONE})
                elif letter[0] == "E":
                    i = letter[1]
                    unit = tuple(1 if k == i - 1 else 0 for k in range(self.n))
                    img = Element(self, {((), self._zero, _vec_neg(unit), (i,)): -ONE})
                else:
                    img = self.toral(_vec_neg(letter[1]), _vec_neg(letter[2]))
                prod = prod * img
            out = out + prod.scale(c)
        return out

    def counit(self, x: Element) -> Scalar:
        total = ZERO
        for (fw, eta, phi, ew), c in x.terms.items():
            if not fw and not ew:
                total = total + c
        return total

    # -- adjoint action ----------------------------------------------------------

    def ad(self, x: Element, z: Element) -> Element:
        out = self.zero()
        for letters, c in x.letters():
            w = z
            for letter in reversed(letters):
                w = self._ad_letter(letter, w)
                if w.is_zero():
                    break
            out = out + w.scale(c)
        return out

    def _ad_letter(self, letter, z: Element) -> Element:
        if letter[0] == "E":
            i = letter[1]
            return self.e(i) * z - self.omega(i) * z * self.omega(i, -1) * self.e(i)
        if letter[0] == "F":
            i = letter[1]
            return (self.f(i) * z - z * self.f(i)) * self.omega_prime(i, -1)
        t = self.toral(letter[1], letter[2])
        t_inv = self.toral(_vec_neg(letter[1]), _vec_neg(letter[2]))
        return t * z * t_inv

    def __repr__(self):
        return f"Algebra(B{self.n})"


def _pow(base: Scalar, exp) -> Scalar:
    exp = Fraction(exp)
    if exp.denominator != 1:
        raise ValueError("non-integral power of a presentation scalar")
    return base ** int(exp)
