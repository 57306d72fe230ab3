"""Exact arithmetic in the tower F_p ⊂ F_q ⊂ F_{q^m}.

Elements of F_{q^m} are plain ints.  The int ``v`` encodes the flattened
little-endian residue vector: writing ``v = sum r_t p^t`` for t < e*m, the
residue ``r_{i*e+j}`` is the coefficient of ``y^j x^i`` where ``y`` generates
F_q over F_p (root of ``base_modulus``) and ``x`` generates F_{q^m} over F_q
(root of ``ext_modulus``).  Consequences used throughout the package:

* 0 and 1 encode zero and one;
* the embedded subfield F_q is exactly the ints ``0 <= c < q``;
* increasing int order is the canonical element order.

:class:`Elt` wraps an int together with its tower for operator syntax and
tower-mismatch checks.  Library internals work on raw ints for speed.
"""

import operator
import random

from . import _guard
from ._core import BINARY_MAX_M, kernels
from .errors import DivisionByZero, NoIrreducibleFound, NonPrime, SizeGuardExceeded, TowerMismatch

ENUM_LIMIT = 1 << 64
# Full log/exp tables are built for non-binary fields up to this order.
TABLE_LIMIT = 1 << 16


def is_prime(n):
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


def _prime_factors(n):
    out = []
    f = 2
    while f * f <= n:
        if n % f == 0:
            out.append(f)
            while n % f == 0:
                n //= f
        f += 1
    if n > 1:
        out.append(n)
    return out


# ---------------------------------------------------------------------------
# F_q and polynomials over it
# ---------------------------------------------------------------------------


class SmallField:
    """The field F_q = F_p[y]/(modulus) with elements encoded as ints < q."""

    __slots__ = ("p", "e", "q", "modulus", "_add", "_mul", "_exp", "_log", "_neg")

    def __init__(self, p, e=1, modulus=None):
        if not is_prime(p):
            raise NonPrime(p)
        self.p = p
        self.e = e
        self.q = p**e
        if e == 1:
            self.modulus = (0, 1)
            self._exp = self._log = None
            return
        prime = SmallField(p)
        if modulus is None:
            modulus = first_irreducible(prime, e)
        else:
            modulus = tuple(int(c) % p for c in modulus)
            if len(modulus) != e + 1 or modulus[-1] != 1 or not is_irreducible(prime, modulus):
                raise ValueError(f"base modulus {modulus} is not a monic irreducible of degree {e}")
        self.modulus = tuple(modulus)
        self._build_tables(prime)

    def _build_tables(self, prime):
        p, e, q = self.p, self.e, self.q

        def digits(a):
            out = []
            for _ in range(e):
                a, r = divmod(a, p)
                out.append(r)
            return out

        def undigits(ds):
            v = 0
            for d in reversed(ds):
                v = v * p + d
            return v

        mod = list(self.modulus)

        def slow_mul(a, b):
            prod = poly_mul(prime, digits(a), digits(b))
            return undigits(_pad(poly_mod(prime, prod, mod), e))

        self._neg = [undigits([(-d) % p for d in digits(a)]) for a in range(q)]
        self._add = [[undigits([(x + y) % p for x, y in zip(digits(a), digits(b))]) for b in range(q)] for a in range(q)]
        gen = _find_generator(q, slow_mul)
        exp = [0] * (2 * q)
        log = [0] * q
        v = 1
        for i in range(q - 1):
            exp[i] = v
            log[v] = i
            v = slow_mul(v, gen)
        for i in range(q - 1, 2 * q):
            exp[i] = exp[i - (q - 1)]
        self._exp, self._log = exp, log

    def __eq__(self, other):
        return isinstance(other, SmallField) and (self.p, self.e, self.modulus) == (other.p, other.e, other.modulus)

    def __hash__(self):
        return hash((self.p, self.e, self.modulus))

    def __repr__(self):
        return f"SmallField(p={self.p}, e={self.e})"

    @property
    def desc(self):
        return {"p": self.p, "e": self.e, "modulus": list(self.modulus)}

    def add(self, a, b):
        if self.e == 1:
            return (a + b) % self.p
        return self._add[a][b]

    def neg(self, a):
        if self.e == 1:
            return (-a) % self.p
        return self._neg[a]

    def sub(self, a, b):
        return self.add(a, self.neg(b))

    def mul(self, a, b):
        if self.e == 1:
            return (a * b) % self.p
        if a == 0 or b == 0:
            return 0
        return self._exp[self._log[a] + self._log[b]]

    def inv(self, a):
        if a == 0:
            raise DivisionByZero("inverse of zero in F_q")
        if self.e == 1:
            return pow(a, self.p - 2, self.p)
        return self._exp[(self.q - 1 - self._log[a]) % (self.q - 1)]

    def elements(self):
        return range(self.q)


_FIELD_CACHE = {}


def gf(q):
    """Canonical F_q for a prime power ``q`` (first irreducible modulus)."""
    if isinstance(q, SmallField):
        return q
    f = _FIELD_CACHE.get(q)
    if f is None:
        p, e = _prime_power(q)
        f = _FIELD_CACHE[q] = SmallField(p, e)
    return f


def _prime_power(q):
    for p in range(2, q + 1):
        if q % p == 0:
            if not is_prime(p):
                break
            e, r = 0, q
            while r % p == 0:
                r //= p
                e += 1
            if r == 1:
                return p, e
            break
    raise NonPrime(f"{q} is not a prime power")


def _find_generator(order, mul):
    factors = _prime_factors(order - 1)

    def power(a, n):
        r = 1
        while n:
            if n & 1:
                r = mul(r, a)
            a = mul(a, a)
            n >>= 1
        return r

    for g in range(2 if order > 2 else 1, order):
        if all(power(g, (order - 1) // r) != 1 for r in factors):
            return g
    raise NoIrreducibleFound("no multiplicative generator; modulus is not irreducible")


def _pad(c, n):
    c = list(c)
    return c + [0] * (n - len(c))


def _trim(c):
    c = list(c)
    while c and c[-1] == 0:
        c.pop()
    return c


def poly_mul(F, a, b):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                if y:
                    out[i + j] = F.add(out[i + j], F.mul(x, y))
    return _trim(out)


def poly_divmod(F, a, b):
    a = _trim(a)
    b = _trim(b)
    if not b:
        raise DivisionByZero("polynomial division by zero")
    inv_lead = F.inv(b[-1])
    quo = [0] * max(len(a) - len(b) + 1, 0)
    while len(a) >= len(b):
        shift = len(a) - len(b)
        f = F.mul(a[-1], inv_lead)
        quo[shift] = f
        for i, y in enumerate(b):
            if y:
                a[i + shift] = F.sub(a[i + shift], F.mul(f, y))
        a = _trim(a)
    return _trim(quo), a


def poly_mod(F, a, b):
    return poly_divmod(F, a, b)[1]


def poly_gcd(F, a, b):
    a, b = _trim(a), _trim(b)
    while b:
        a, b = b, poly_mod(F, a, b)
    return a


def _poly_powmod(F, base, n, mod):
    result = [1]
    base = poly_mod(F, base, mod)
    while n:
        if n & 1:
            result = poly_mod(F, poly_mul(F, result, base), mod)
        n >>= 1
        if n:
            base = poly_mod(F, poly_mul(F, base, base), mod)
    return result


def is_irreducible(F, f):
    """Ben-Or test: gcd(X^{q^i} - X, f) = 1 for all i <= deg(f)/2."""
    f = _trim(f)
    d = len(f) - 1
    if d < 1:
        return False
    if d == 1:
        return True
    if f[0] == 0:
        return False
    t = [0, 1]
    for _ in range(d // 2):
        t = _poly_powmod(F, t, F.q, f)
        diff = _pad(t, max(len(t), 2))
        diff[1] = F.sub(diff[1], 1)
        if len(poly_gcd(F, f, diff)) > 1:
            return False
    return True


def is_irreducible_bruteforce(F, f):
    """Trial division by every monic polynomial of degree 1..deg(f)//2."""
    f = _trim(f)
    d = len(f) - 1
    if d < 1:
        return False
    for deg in range(1, d // 2 + 1):
        for idx in range(F.q**deg):
            low = []
            for _ in range(deg):
                idx, r = divmod(idx, F.q)
                low.append(r)
            if not poly_mod(F, f, low + [1]):
                return False
    return True


def monic_candidates(F, degree):
    """Monic polynomials of ``degree`` in canonical order.

    The lower coefficients ``c_0..c_{d-1}`` are read as the base-q integer
    ``sum c_i q^i`` and enumerated in increasing order.
    """
    for idx in range(F.q**degree):
        low = []
        for _ in range(degree):
            idx, r = divmod(idx, F.q)
            low.append(r)
        yield tuple(low) + (1,)


def first_irreducible(F, degree):
    for cand in monic_candidates(F, degree):
        if is_irreducible(F, cand):
            return cand
    raise NoIrreducibleFound(f"no irreducible of degree {degree} over F_{F.q}")


# ---------------------------------------------------------------------------
# F_{q^m}
# ---------------------------------------------------------------------------


class FieldTower:
    """F_p ⊂ F_q ⊂ F_{q^m}; immutable, arithmetic on int encodings.

    The arithmetic strategy is chosen at construction: bit-packed kernels for
    p = 2, e = 1; log/exp tables for other fields of order <= ``TABLE_LIMIT``;
    schoolbook polynomial arithmetic over F_q otherwise.
    """

    def __init__(self, p, e=1, m=1, base_modulus=None, ext_modulus=None):
        if not is_prime(p):
            raise NonPrime(p)
        if e < 1 or m < 1:
            raise ValueError("e and m must be positive")
        self.fq = SmallField(p, e, base_modulus)
        self.p, self.e, self.m = p, e, m
        self.q = self.fq.q
        self.order = self.q**m
        if ext_modulus is None:
            ext_modulus = first_irreducible(self.fq, m)
        else:
            ext_modulus = tuple(int(c) for c in ext_modulus)
            if len(ext_modulus) != m + 1 or ext_modulus[-1] != 1 or not is_irreducible(self.fq, ext_modulus):
                raise ValueError(f"extension modulus {ext_modulus} is not a monic irreducible of degree {m}")
        self.ext_modulus = tuple(ext_modulus)
        self.base_modulus = self.fq.modulus
        self._key = (p, e, m, self.base_modulus, self.ext_modulus)
        self._setup_arithmetic()

    # -- construction helpers -------------------------------------------
    def _setup_arithmetic(self):
        p, e, m = self.p, self.e, self.m
        self.is_binary = p == 2 and e == 1 and m <= BINARY_MAX_M
        if p == 2:
            self.add = self.sub = operator.xor
            self.neg = _identity
        else:
            self.add, self.sub, self.neg = self._generic_add, self._generic_sub, self._generic_neg
        if self.is_binary:
            mod = sum(1 << i for i, c in enumerate(self.ext_modulus) if c)
            self.bin_modulus = mod
            k = kernels

            def mul(a, b):
                return k.bin_mul(a, b, mod, m)

            def inv(a):
                if a == 0:
                    raise DivisionByZero("inverse of zero")
                return k.bin_inv(a, mod, m)

            def frob(a, j=1):
                j %= m
                return k.bin_frob(a, j, mod, m) if j else a

            self.mul, self.inv, self.frob = mul, inv, frob
            self.kind = "binary"
        elif self.order <= TABLE_LIMIT:
            self._build_tables()
            self.kind = "table"
        else:
            self.mul = self.generic_mul
            self.inv = self._generic_inv
            self.frob = self._generic_frob
            self.kind = "generic"

    def _build_tables(self):
        order = self.order
        gen = _find_generator(order, self.generic_mul)
        exp = [0] * (2 * order)
        log = [0] * order
        v = 1
        for i in range(order - 1):
            exp[i] = v
            log[v] = i
            v = self.generic_mul(v, gen)
        for i in range(order - 1, 2 * order):
            exp[i] = exp[i - (order - 1)]
        n1 = order - 1
        q, m = self.q, self.m

        def mul(a, b):
            if a == 0 or b == 0:
                return 0
            return exp[log[a] + log[b]]

        def inv(a):
            if a == 0:
                raise DivisionByZero("inverse of zero")
            return exp[(n1 - log[a]) % n1]

        def frob(a, j=1):
            if a == 0:
                return 0
            return exp[(log[a] * pow(q, j % m, n1)) % n1]

        self.mul, self.inv, self.frob = mul, inv, frob

    # -- coordinates --------------------------------------------------------
    def coords(self, a):
        """The m F_q-coordinates of ``a`` (ints < q), little-endian."""
        q = self.q
        out = []
        for _ in range(self.m):
            a, r = divmod(a, q)
            out.append(r)
        return out

    def from_coords(self, cs):
        v = 0
        for c in reversed(list(cs)):
            v = v * self.q + c
        return v

    def residues(self, a):
        """Flattened length e*m list of F_p residues (the serialization)."""
        p = self.p
        out = []
        for _ in range(self.e * self.m):
            a, r = divmod(a, p)
            out.append(r)
        return out

    def from_residues(self, rs):
        rs = list(rs)
        if len(rs) != self.e * self.m or any(not 0 <= r < self.p for r in rs):
            raise ValueError(f"expected {self.e * self.m} residues in [0, {self.p})")
        v = 0
        for r in reversed(rs):
            v = v * self.p + r
        return v

    def check(self, a):
        if not (isinstance(a, int) and 0 <= a < self.order):
            raise TowerMismatch(f"{a!r} is not an element of {self}")
        return a

    # -- generic arithmetic ------------------------------------------------
    def _generic_add(self, a, b):
        p = self.p
        out, place = 0, 1
        while a or b:
            a, x = divmod(a, p)
            b, y = divmod(b, p)
            out += ((x + y) % p) * place
            place *= p
        return out

    def _generic_neg(self, a):
        p = self.p
        out, place = 0, 1
        while a:
            a, x = divmod(a, p)
            out += ((-x) % p) * place
            place *= p
        return out

    def _generic_sub(self, a, b):
        return self._generic_add(a, self._generic_neg(b))

    def generic_mul(self, a, b):
        """Schoolbook product modulo ``ext_modulus``; the reference multiply."""
        F = self.fq
        prod = poly_mul(F, _trim(self.coords(a)), _trim(self.coords(b)))
        return self.from_coords(_pad(poly_mod(F, prod, list(self.ext_modulus)), self.m))

    def _generic_inv(self, a):
        if a == 0:
            raise DivisionByZero("inverse of zero")
        return self.pow(a, self.order - 2)

    def _generic_frob(self, a, j=1):
        return self.pow(a, self.q ** (j % self.m))

    def pow(self, a, n):
        if n < 0:
            a, n = self.inv(a), -n
        result = 1
        mul = self.mul
        while n:
            if n & 1:
                result = mul(result, a)
            n >>= 1
            if n:
                a = mul(a, a)
        return result

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def frobenius_q(self, a, j):
        """a^{q^j}; the identity for j = 0 and j = m."""
        return self.frob(a, j)

    def scale(self, c, a):
        """Multiply by an F_q scalar ``c`` (int < q)."""
        if c == 0:
            return 0
        if c == 1:
            return a
        return self.mul(c, a)

    # -- enumeration / sampling -------------------------------------------
    def elements(self):
        _guard.check(self.order, "enumerate F_{q^m}", default=ENUM_LIMIT - 1)
        return range(self.order)

    def random_element(self, rng):
        return rng.randrange(self.order)

    def random_nonzero(self, rng):
        return rng.randrange(1, self.order)

    def elt(self, v):
        return Elt(self, v)

    # -- identity / serialization -------------------------------------------
    def __eq__(self, other):
        return isinstance(other, FieldTower) and self._key == other._key

    def __hash__(self):
        return hash(self._key)

    def __repr__(self):
        return f"FieldTower(p={self.p}, e={self.e}, m={self.m})"

    def to_json(self):
        return {
            "p": self.p,
            "e": self.e,
            "m": self.m,
            "base_modulus": list(self.base_modulus),
            "ext_modulus": [self.fq_residues(c) for c in self.ext_modulus],
        }

    def fq_residues(self, c):
        out = []
        for _ in range(self.e):
            c, r = divmod(c, self.p)
            out.append(r)
        return out

    @classmethod
    def from_json(cls, d):
        p, e = d["p"], d["e"]
        ext = []
        for c in d["ext_modulus"]:
            if isinstance(c, int):
                ext.append(c)
            else:
                v = 0
                for r in reversed(c):
                    v = v * p + r
                ext.append(v)
        return cached_tower(p, e, d["m"], tuple(d["base_modulus"]), tuple(ext))


def _identity(a):
    return a


_TOWER_CACHE = {}


def cached_tower(p, e, m, base_modulus=None, ext_modulus=None):
    key = (p, e, m, base_modulus, ext_modulus)
    t = _TOWER_CACHE.get(key)
    if t is None:
        t = _TOWER_CACHE[key] = FieldTower(p, e, m, base_modulus, ext_modulus)
    return t


def tower_create(p, e=1, m=1, seed=0, base_modulus=None, ext_modulus=None):
    """Build F_p ⊂ F_{p^e} ⊂ F_{p^{em}} with canonical moduli.

    The moduli are the first irreducibles in :func:`monic_candidates` order
    unless given explicitly.  ``seed`` drives a short randomized self-test of
    the field axioms; it does not influence the construction.
    """
    if not is_prime(p):
        raise NonPrime(p)
    if (p**e) ** m >= _guard.limit(ENUM_LIMIT):
        raise SizeGuardExceeded(f"q^m = {p}^{e * m} is beyond the 2^64 element-count guard")
    t = cached_tower(
        p,
        e,
        m,
        tuple(base_modulus) if base_modulus is not None else None,
        tuple(ext_modulus) if ext_modulus is not None else None,
    )
    _self_test(t, random.Random(seed))
    return t


def _self_test(t, rng, rounds=16):
    for _ in range(rounds):
        a, b, c = (t.random_element(rng) for _ in range(3))
        if t.mul(a, t.add(b, c)) != t.add(t.mul(a, b), t.mul(a, c)):
            raise NoIrreducibleFound("distributivity failed; arithmetic is broken")
        if t.frob(a, t.m) != a:
            raise NoIrreducibleFound("a^{q^m} != a; modulus is not irreducible")
        if a and t.mul(a, t.inv(a)) != 1:
            raise NoIrreducibleFound("inverse check failed")


def enumerate_elements(t):
    return t.elements()


class Elt:
    """An element of a specific tower, with operator syntax."""

    __slots__ = ("tower", "value")

    def __init__(self, tower, value):
        self.tower = tower
        self.value = tower.check(int(value))

    def _other(self, other):
        if isinstance(other, Elt):
            if other.tower != self.tower:
                raise TowerMismatch(f"{self.tower} vs {other.tower}")
            return other.value
        if isinstance(other, int):
            return self.tower.check(other)
        return NotImplemented

    def _wrap(self, v):
        return Elt(self.tower, v)

    def __add__(self, other):
        o = self._other(other)
        return NotImplemented if o is NotImplemented else self._wrap(self.tower.add(self.value, o))

    __radd__ = __add__

    def __sub__(self, other):
        o = self._other(other)
        return NotImplemented if o is NotImplemented else self._wrap(self.tower.sub(self.value, o))

    def __rsub__(self, other):
        o = self._other(other)
        return NotImplemented if o is NotImplemented else self._wrap(self.tower.sub(o, self.value))

    def __mul__(self, other):
        o = self._other(other)
        return NotImplemented if o is NotImplemented else self._wrap(self.tower.mul(self.value, o))

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._other(other)
        return NotImplemented if o is NotImplemented else self._wrap(self.tower.div(self.value, o))

    def __neg__(self):
        return self._wrap(self.tower.neg(self.value))

    def __pow__(self, n):
        return self._wrap(self.tower.pow(self.value, n))

    def inv(self):
        return self._wrap(self.tower.inv(self.value))

    def frobenius(self, j=1):
        return self._wrap(self.tower.frob(self.value, j))

    def __eq__(self, other):
        if isinstance(other, Elt):
            return self.tower == other.tower and self.value == other.value
        if isinstance(other, int):
            return self.value == other
        return NotImplemented

    def __hash__(self):
        return hash((self.tower, self.value))

    def __bool__(self):
        return self.value != 0

    def __int__(self):
        return self.value

    @property
    def coeffs(self):
        """m F_q-coordinates, each a tuple of e F_p residues."""
        t = self.tower
        return tuple(tuple(t.fq_residues(c)) for c in t.coords(self.value))

    def to_json(self):
        return self.tower.residues(self.value)

    def __repr__(self):
        return f"Elt({self.value}, {self.tower!r})"
