"""Weight modules as explicit matrices over the scalar field.

Truncated highest-weight modules are spanned by the graded-basis
representative words of the lowering half up to a depth bound; irreducible
quotients are cut out by the lowering-closure of the singular vectors
f_i^((lam, a_i^vee)+1) v.  Generator actions are sparse column maps; the
grading operator acts on a weight-mu vector by (r s^-1)^(-2 (rho, mu)).
"""

from __future__ import annotations

from .errors import NotDominant, RankMismatch, TruncationOverflow
from .qgroup import Algebra, Element, word_content
from .scalars import ONE, ZERO, Scalar, rs_ratio_power


def char_value(alg: Algebra, lam, mu, eta, phi) -> Scalar:
    """Character of the toral monomial w'_eta w_phi at the pair (lam, mu).

    The first index acts through the group-like pairing, the second through
    (r s^-1) raised to the pairing of eta + phi with mu.
    """
    lam_alpha = alg.rs.alpha_coords(lam)
    val = alg._gpair_any(eta, lam_alpha).inverse() * alg._gpair_any(lam_alpha, phi)
    if any(mu):
        shift = alg.rs.from_alpha(tuple(a + b for a, b in zip(eta, phi)))
        val = val * rs_ratio_power(alg.rs.inner(shift, mu))
    return val


class ColMatrix:
    """Sparse square matrix stored as columns of {row: Scalar}."""

    __slots__ = ("dim", "cols")

    def __init__(self, dim, cols=None):
        self.dim = dim
        self.cols = cols if cols is not None else [dict() for _ in range(dim)]

    @staticmethod
    def identity(dim):
        return ColMatrix(dim, [{r: ONE} for r in range(dim)])

    def entry(self, r, c) -> Scalar:
        return self.cols[c].get(r, ZERO)

    def compose(self, other: "ColMatrix") -> "ColMatrix":
        """self applied after other."""
        out = ColMatrix(self.dim)
        for c in range(self.dim):
            acc = out.cols[c]
            for mid, v in other.cols[c].items():
                for r, w in self.cols[mid].items():
                    nv = acc.get(r, ZERO) + v * w
                    if nv.is_zero():
                        acc.pop(r, None)
                    else:
                        acc[r] = nv
        return out

    def add_scaled(self, other: "ColMatrix", c: Scalar) -> "ColMatrix":
        out = ColMatrix(self.dim, [dict(col) for col in self.cols])
        for j, col in enumerate(other.cols):
            acc = out.cols[j]
            for r, v in col.items():
                nv = acc.get(r, ZERO) + c * v
                if nv.is_zero():
                    acc.pop(r, None)
                else:
                    acc[r] = nv
        return out

    def scale(self, c: Scalar) -> "ColMatrix":
        if c.is_zero():
            return ColMatrix(self.dim)
        return ColMatrix(self.dim, [{r: v * c for r, v in col.items()}
                                    for col in self.cols])

    def __sub__(self, other):
        return self.add_scaled(other, -ONE)

    def __eq__(self, other):
        return isinstance(other, ColMatrix) and self.dim == other.dim \
            and self.cols == other.cols

    def is_zero(self):
        return all(not col for col in self.cols)

    def scalar_of_identity(self):
        """The scalar c with self = c * id, or None."""
        if self.dim == 0:
            return ONE
        c = self.cols[0].get(0, ZERO)
        for j, col in enumerate(self.cols):
            if set(col) - {j}:
                return None
            if col.get(j, ZERO) != c:
                return None
        return c

    def trace_against_diag(self, diag) -> Scalar:
        total = ZERO
        for j, col in enumerate(self.cols):
            v = col.get(j)
            if v is not None:
                total = total + v * diag[j]
        return total

    def to_dense(self):
        return [[self.entry(r, c) for c in range(self.dim)]
                for r in range(self.dim)]


def _heights(n, h):
    """All nonnegative integer vectors of length n summing to h."""
    if n == 1:
        yield (h,)
        return
    for first in range(h + 1):
        for rest in _heights(n - 1, h - first):
            yield (first,) + rest


class WeightModule:
    """Weight-graded module given by sparse generator columns.

    Rows are labelled by (nu, k): the k-th representative lowering word of
    content nu applied to the highest-weight vector.  ``exact`` is False for
    depth-truncated modules, where lowering at the boundary is dropped.
    """

    def __init__(self, alg: Algebra, lam, mu, depth, exact):
        self.algebra = alg
        self.lam = tuple(lam)
        self.mu = tuple(mu)
        self.depth = depth
        self.exact = exact
        self.labels = []
        self.index = {}
        self.weights = []
        self._char_cache = {}
        self._ecols = {}
        self._fcols = {}
        self._overflow = set()
        self._act_cache = {}

    @property
    def dim(self):
        return len(self.labels)

    def _add_label(self, label):
        self.index[label] = len(self.labels)
        self.labels.append(label)
        nu, _ = label
        self.weights.append(tuple(a - b for a, b in
                                  zip(self.lam, self.algebra.rs.from_alpha(nu))))

    # -- generator columns ---------------------------------------------------

    def e_col(self, i, col):
        cached = self._ecols.get((i, col))
        if cached is not None:
            return cached
        out = self._compute_e_col(i, col)
        self._ecols[(i, col)] = out
        return out

    def f_col(self, i, col):
        cached = self._fcols.get((i, col))
        if cached is not None:
            return cached
        out = self._compute_f_col(i, col)
        self._fcols[(i, col)] = out
        return out

    def char_diag(self, eta, phi):
        key = (tuple(eta), tuple(phi))
        cached = self._char_cache.get(key)
        if cached is None:
            cached = [char_value(self.algebra, w, self.mu, key[0], key[1])
                      for w in self.weights]
            self._char_cache[key] = cached
        return cached

    # -- the action of a normal-form element ----------------------------------

    def apply(self, x: Element, vec, strict=False):
        """Image of a coordinate vector {row: Scalar} under x."""
        out = {}
        for (fw, eta, phi, ew), c in x.terms.items():
            cur = dict(vec)
            for i in reversed(ew):
                cur = self._apply_cols(self.e_col, i, cur, strict)
                if not cur:
                    break
            if not cur:
                continue
            if any(eta) or any(phi):
                diag = self.char_diag(eta, phi)
                cur = {r: v * diag[r] for r, v in cur.items()}
            skip = False
            for i in reversed(fw):
                cur = self._apply_cols(self.f_col, i, cur, strict)
                if not cur:
                    skip = True
                    break
            if skip:
                continue
            for r, v in cur.items():
                nv = out.get(r, ZERO) + c * v
                if nv.is_zero():
                    out.pop(r, None)
                else:
                    out[r] = nv
        return out

    def _apply_cols(self, colfun, i, vec, strict):
        out = {}
        lowering = colfun == self.f_col
        for r, v in vec.items():
            col = colfun(i, r)
            if strict and lowering and not self.exact and (i, r) in self._overflow:
                raise TruncationOverflow(
                    f"lowering by {i} leaves the depth-{self.depth} truncation")
            for r2, w in col.items():
                nv = out.get(r2, ZERO) + v * w
                if nv.is_zero():
                    out.pop(r2, None)
                else:
                    out[r2] = nv
        return out

    def act(self, x: Element, strict=False) -> ColMatrix:
        key = None
        if not strict:
            key = tuple(sorted(x.terms.items(), key=lambda kv: kv[0]))
            cached = self._act_cache.get(key)
            if cached is not None:
                return cached
        mat = ColMatrix(self.dim)
        for cidx in range(self.dim):
            mat.cols[cidx] = self.apply(x, {cidx: ONE}, strict)
        if key is not None:
            self._act_cache[key] = mat
        return mat

    def weight_multiplicities(self):
        out = {}
        for w in self.weights:
            out[w] = out.get(w, 0) + 1
        return out


class VermaModule(WeightModule):
    """Depth-truncated universal highest-weight module for a character pair."""

    def __init__(self, alg: Algebra, lam, mu, depth):
        super().__init__(alg, lam, mu, depth, exact=False)
        for h in range(depth + 1):
            for nu in _heights(alg.n, h):
                basis = alg.graded_basis("-", nu)
                for k in range(basis.dim):
                    self._add_label((nu, k))
        self._words = {}
        for nu_set in {lab[0] for lab in self.labels}:
            self._words[nu_set] = alg.graded_basis("-", nu_set).words

    def _rep_word(self, label):
        nu, k = label
        return self._words[nu][k]

    def _compute_f_col(self, i, col):
        alg = self.algebra
        nu, k = self.labels[col]
        word = (i,) + self._rep_word((nu, k))
        nu2 = word_content(alg.n, word)
        out = {}
        if sum(nu2) > self.depth:
            self._overflow.add((i, col))
            return out
        for rep, c in alg.reduce_word("-", word).items():
            if c.is_zero():
                continue
            row = self.index[(nu2, self._words[nu2].index(rep))]
            out[row] = out.get(row, ZERO) + c
        return {r: v for r, v in out.items() if not v.is_zero()}

    def _compute_e_col(self, i, col):
        alg = self.algebra
        word = self._rep_word(self.labels[col])
        letters = (("E", i),) + tuple(("F", j) for j in word)
        out = {}
        for (fw, eta, phi, ew), c in alg._normalize(letters).items():
            if ew:
                continue
            val = c * char_value(alg, self.lam, self.mu, eta, phi)
            if val.is_zero():
                continue
            nu2 = word_content(alg.n, fw)
            row = self.index[(nu2, self._words[nu2].index(fw))]
            nv = out.get(row, ZERO) + val
            if nv.is_zero():
                out.pop(row, None)
            else:
                out[row] = nv
        return out


class QuotientModule(WeightModule):
    """Quotient of a truncated highest-weight module by a lowering-closed span."""

    def __init__(self, parent: VermaModule, reduction, kept_labels):
        super().__init__(parent.algebra, parent.lam, parent.mu,
                         parent.depth, exact=True)
        self.parent = parent
        self._reduction = reduction
        for label in kept_labels:
            self._add_label(label)

    def _project(self, parent_vec):
        out = {}
        for prow, v in parent_vec.items():
            label = self.parent.labels[prow]
            for qlabel, c in self._reduction[label].items():
                row = self.index[qlabel]
                nv = out.get(row, ZERO) + v * c
                if nv.is_zero():
                    out.pop(row, None)
                else:
                    out[row] = nv
        return out

    def _compute_f_col(self, i, col):
        prow = self.parent.index[self.labels[col]]
        return self._project(self.parent.f_col(i, prow))

    def _compute_e_col(self, i, col):
        prow = self.parent.index[self.labels[col]]
        return self._project(self.parent.e_col(i, prow))


def verma(alg: Algebra, lam, mu, depth: int) -> VermaModule:
    """Truncated universal module with highest-weight character pair (lam, mu)."""
    if depth < 0:
        raise ValueError("depth must be nonnegative")
    if len(lam) != alg.n or len(mu) != alg.n:
        raise RankMismatch("weight length mismatch")
    return VermaModule(alg, lam, mu, depth)


def irreducible(alg: Algebra, lam) -> QuotientModule:
    """The finite-dimensional irreducible module of a dominant weight.

    Quotients the truncated universal module at depth ht(2 lam) by the
    lowering-closure of the singular vectors; the result has the
    multiplicities of the classical recursion and total dimension given by
    the product formula.
    """
    lam = tuple(lam)
    if not alg.rs.in_weight_lattice(lam) or not alg.rs.is_dominant(lam):
        raise NotDominant(f"{lam} is not a dominant lattice weight")
    cache = getattr(alg, "_irr_cache", None)
    if cache is None:
        cache = alg._irr_cache = {}
    hit = cache.get(lam)
    if hit is not None:
        return hit
    two_lam = tuple(2 * x for x in lam)
    depth = int(sum(alg.rs.alpha_coords(two_lam)))
    parent = VermaModule(alg, lam, (0,) * alg.n, depth)

    pivots = {}  # pivot label -> vector {label: Scalar}, Gauss-Jordan reduced

    def reduce_vec(vec):
        vec = dict(vec)
        changed = True
        while changed:
            changed = False
            for label in list(vec):
                if label in pivots:
                    c = vec.pop(label)
                    for lab2, c2 in pivots[label].items():
                        if lab2 == label:
                            continue
                        nv = vec.get(lab2, ZERO) - c * c2
                        if nv.is_zero():
                            vec.pop(lab2, None)
                        else:
                            vec[lab2] = nv
                    changed = True
        return vec

    work = []
    for i in range(1, alg.n + 1):
        m = int(alg.rs.coroot_pair(lam, i))
        if m + 1 > depth:
            continue
        nu = tuple((m + 1) if k == i - 1 else 0 for k in range(alg.n))
        work.append({(nu, 0): ONE})
    while work:
        vec = reduce_vec(work.pop())
        if not vec:
            continue
        lead = min(vec)
        inv = vec[lead].inverse()
        vec = {lab: c * inv for lab, c in vec.items()}
        for plab, pvec in pivots.items():
            if lead in pvec and plab != lead:
                c = pvec.pop(lead)
                for lab2, c2 in vec.items():
                    if lab2 == lead:
                        continue
                    nv = pvec.get(lab2, ZERO) - c * c2
                    if nv.is_zero():
                        pvec.pop(lab2, None)
                    else:
                        pvec[lab2] = nv
        pivots[lead] = vec
        for i in range(1, alg.n + 1):
            img = {}
            for label, c in vec.items():
                prow = parent.index[label]
                for row2, v in parent.f_col(i, prow).items():
                    lab2 = parent.labels[row2]
                    nv = img.get(lab2, ZERO) + c * v
                    if nv.is_zero():
                        img.pop(lab2, None)
                    else:
                        img[lab2] = nv
            if img:
                work.append(img)

    kept = [lab for lab in parent.labels if lab not in pivots]
    reduction = {lab: {lab: ONE} for lab in kept}
    for plab, pvec in pivots.items():
        reduction[plab] = {lab: -c for lab, c in pvec.items() if lab != plab}
    module = QuotientModule(parent, reduction, kept)
    expect = alg.rs.weyl_dim(lam)
    if module.dim != expect:
        raise ArithmeticError(
            f"irreducible quotient came out {module.dim}-dimensional, "
            f"product formula gives {expect}")
    cache[lam] = module
    return module


def act(x: Element, module: WeightModule, strict=False) -> ColMatrix:
    """Matrix of x on the module basis; multiplicative within the truncation."""
    if x.algebra is not module.algebra:
        raise RankMismatch("element and module belong to different algebras")
    return module.act(x, strict=strict)


def theta(module: WeightModule):
    """Diagonal of the grading operator (r s^-1)^(-2 (rho, weight))."""
    rs = module.algebra.rs
    rho = rs.rho
    return [rs_ratio_power(-2 * rs.inner(rho, w)) for w in module.weights]


def trace_fn(alg: Algebra, lam, x: Element) -> Scalar:
    """Trace of x composed with the grading operator on the irreducible module."""
    module = irreducible(alg, lam)
    return act(x, module).trace_against_diag(theta(module))


def matrix_coeff(module: WeightModule, f_idx: int, m_idx: int, x: Element) -> Scalar:
    """Coordinate functional f_idx of x acting on basis vector m_idx."""
    return act(x, module).entry(f_idx, m_idx)


def qint_action_identity(alg: Algebra, lam, mu, i: int) -> bool:
    """Check the lowering-string identity on the highest-weight column.

    With m = (lam, alpha_i^vee), applying e_i to f_i^(m+1) v must equal
    [m+1]_i (r_i^-m w_i - s_i^-m w'_i)/(r_i - s_i) evaluated at the highest
    weight, times f_i^m v.
    """
    m = alg.rs.coroot_pair(lam, i)
    if m.denominator != 1 or m < 0:
        raise NotDominant(f"(lam, alpha_{i}^vee) = {m} must be a nonneg integer")
    m = int(m)
    module = verma(alg, lam, mu, depth=m + 1)
    vec = {0: ONE}
    for _ in range(m + 1):
        vec = module._apply_cols(module.f_col, i, vec, strict=True)
    lhs = module._apply_cols(module.e_col, i, vec, strict=True)
    eta = tuple(1 if k == i - 1 else 0 for k in range(alg.n))
    w_val = char_value(alg, lam, mu, (0,) * alg.n, eta)
    wp_val = char_value(alg, lam, mu, eta, (0,) * alg.n)
    scalar = alg.qint(m + 1, i) * \
        (alg.r_i(i) ** (-m) * w_val - alg.s_i(i) ** (-m) * wp_val) / \
        (alg.r_i(i) - alg.s_i(i))
    rhs = {0: ONE}
    for _ in range(m):
        rhs = module._apply_cols(module.f_col, i, rhs, strict=True)
    rhs = {r: v * scalar for r, v in rhs.items() if not (v * scalar).is_zero()}
    lhs = {r: v for r, v in lhs.items() if not v.is_zero()}
    return lhs == rhs
