"""q-linearized polynomials over F_{q^m}.

A :class:`QLinPoly` stores ``coeffs[i]``, the coefficient of ``X^{q^i}``, as
raw tower ints with trailing zeros stripped.
"""

from . import extlinalg as la
from ._core import kernels
from .errors import DependentEmbedding, DimMismatch, TowerMismatch
from .ffield import FieldTower
from .fqspace import fq_null_space, fq_rref, span_of


class QLinPoly:
    __slots__ = ("tower", "coeffs")

    def __init__(self, tower, coeffs=()):
        c = [int(x) for x in coeffs]
        while c and c[-1] == 0:
            c.pop()
        for x in c:
            tower.check(x)
        self.tower = tower
        self.coeffs = tuple(c)

    @classmethod
    def x_power(cls, tower, i, coeff=1):
        """coeff * X^{q^i}."""
        return cls(tower, [0] * i + [coeff])

    @classmethod
    def identity(cls, tower):
        return cls(tower, [1])

    @property
    def q_degree(self):
        """Highest index with nonzero coefficient; None for the zero polynomial."""
        return len(self.coeffs) - 1 if self.coeffs else None

    def is_zero(self):
        return not self.coeffs

    def is_monic(self):
        return bool(self.coeffs) and self.coeffs[-1] == 1

    def coeff(self, i):
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else 0

    def eval(self, a):
        t = self.tower
        acc = 0
        x = a
        for i, c in enumerate(self.coeffs):
            if i:
                x = t.frob(x, 1)
            if c and x:
                acc = t.add(acc, t.mul(c, x))
        return acc

    __call__ = eval

    def _check(self, other):
        if not isinstance(other, QLinPoly):
            raise TypeError("expected a QLinPoly")
        if other.tower != self.tower:
            raise TowerMismatch("polynomials over different towers")

    def __add__(self, other):
        self._check(other)
        t = self.tower
        n = max(len(self.coeffs), len(other.coeffs))
        return QLinPoly(t, [t.add(self.coeff(i), other.coeff(i)) for i in range(n)])

    def __sub__(self, other):
        self._check(other)
        t = self.tower
        n = max(len(self.coeffs), len(other.coeffs))
        return QLinPoly(t, [t.sub(self.coeff(i), other.coeff(i)) for i in range(n)])

    def __neg__(self):
        return QLinPoly(self.tower, [self.tower.neg(c) for c in self.coeffs])

    def scale(self, a):
        """Left multiplication by the constant ``a`` (a·f)."""
        t = self.tower
        return QLinPoly(t, [t.mul(a, c) for c in self.coeffs])

    def compose(self, f):
        """self ∘ f, via h_k = sum_{i+j=k} g_i f_j^{q^i}."""
        return compose(self, f)

    def __eq__(self, other):
        return isinstance(other, QLinPoly) and self.tower == other.tower and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.tower, self.coeffs))

    def __repr__(self):
        if not self.coeffs:
            return "QLinPoly(0)"
        terms = [f"{c}*X^(q^{i})" for i, c in enumerate(self.coeffs) if c]
        return "QLinPoly(" + " + ".join(terms) + ")"

    def to_json(self):
        t = self.tower
        return {"q_desc": t.to_json(), "coeffs": [t.residues(c) for c in self.coeffs]}

    @classmethod
    def from_json(cls, d):
        t = FieldTower.from_json(d["q_desc"])
        return cls(t, [t.from_residues(c) for c in d["coeffs"]])


def compose(g, f):
    g._check(f)
    t = g.tower
    if g.is_zero() or f.is_zero():
        return QLinPoly(t)
    out = [0] * (len(g.coeffs) + len(f.coeffs) - 1)
    for i, gi in enumerate(g.coeffs):
        if not gi:
            continue
        for j, fj in enumerate(f.coeffs):
            if fj:
                out[i + j] = t.add(out[i + j], t.mul(gi, t.frob(fj, i)))
    return QLinPoly(t, out)


def frobenius_shift(f, s):
    """X^{q^s} ∘ f: coefficients raised to q^s and shifted up by s."""
    t = f.tower
    if f.is_zero():
        return f
    return QLinPoly(t, [0] * s + [t.frob(c, s) for c in f.coeffs])


def moore_matrix(t, alphas, rows=None):
    """Entry (i, j) = alpha_j^{q^i}, i = 0..rows-1."""
    alphas = list(alphas)
    if rows is None:
        rows = len(alphas)
    out = []
    cur = list(alphas)
    for i in range(rows):
        if i:
            cur = [t.frob(a, 1) for a in cur]
        out.append(list(cur))
    return out


def moore_det(t, alphas):
    return la.det(t, moore_matrix(t, alphas))


def moore_det_nonzero(t, alphas):
    return moore_det(t, alphas) != 0


def embed_vector(t, v, alphas):
    """sigma(v) = sum v_j alpha_j with v over the embedded F_q."""
    if len(v) != len(alphas):
        raise DimMismatch(f"vector of length {len(v)} vs {len(alphas)} embedding points")
    acc = 0
    for c, a in zip(v, alphas):
        if c:
            acc = t.add(acc, t.scale(c, a))
    return acc


def annihilator_of_points(t, ws):
    """Monic q-linearized f of q-degree len(ws) vanishing on span_Fq(ws).

    Coefficients come from cofactor expansion of the Moore determinant of
    (w_1, ..., w_d, X) along its last column.
    """
    ws = list(ws)
    d = len(ws)
    if d == 0:
        return QLinPoly.identity(t)
    M = moore_matrix(t, ws, d + 1)
    lead = la.det(t, M[:d])
    if lead == 0:
        raise DependentEmbedding("embedded basis vectors are F_q-dependent")
    inv = t.inv(lead)
    coeffs = []
    for i in range(d + 1):
        minor = la.det(t, M[:i] + M[i + 1 :])
        if (d - i) % 2:
            minor = t.neg(minor)
        coeffs.append(t.mul(minor, inv))
    return QLinPoly(t, coeffs)


def annihilator(t, V, alphas):
    """Monic annihilator of the embedded subspace sigma(V)."""
    ws = [embed_vector(t, b, alphas) for b in V.basis]
    return annihilator_of_points(t, ws)


def power_compose_annihilator(t, V, alphas, s):
    """annihilator(V)^{q^s} written as a q-linearized polynomial."""
    if s < 0:
        raise ValueError("s must be nonnegative")
    return frobenius_shift(annihilator(t, V, alphas), s)


def kernel_of(f, domain, alphas):
    """{v in domain : f(sigma(v)) = 0}, solved as an F_q-linear system."""
    t = f.tower
    if domain.n != len(alphas):
        raise DimMismatch("domain ambient dim does not match the embedding")
    if domain.field != t.fq:
        raise TowerMismatch("domain field differs from the tower's F_q")
    F = t.fq
    images = [t.coords(f.eval(embed_vector(t, b, alphas))) for b in domain.basis]
    if not images:
        return span_of([], domain.n, F)
    rows = [tuple(img[r] for img in images) for r in range(t.m)]
    null = fq_null_space(F, rows, len(images))
    vecs = []
    for c in null:
        out = [0] * domain.n
        for ci, b in zip(c, domain.basis):
            if ci:
                out = [F.add(x, F.mul(ci, y)) for x, y in zip(out, b)]
        vecs.append(out)
    return span_of(vecs, domain.n, F)


def fq_rank_of_elements(t, elems):
    """dim_Fq span of a sequence of F_{q^m} elements."""
    elems = list(elems)
    if not elems:
        return 0
    if t.is_binary:
        return kernels.f2_rank(elems)
    return len(fq_rref(t.fq, [t.coords(a) for a in elems], t.m)[1])

