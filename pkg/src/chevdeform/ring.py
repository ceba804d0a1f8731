"""Finite local coefficient rings: F_q, W_2(F_q) and truncated polynomial rings.

Elements are stored as non-negative integer codes.  A ring of F-length ``len``
over F_q has codes ``sum_j c_j * q**j`` where ``c_j`` is the field code of the
j-th coordinate, and a field code is ``sum_i a_i * p**i`` for the polynomial
basis ``1, x, ..., x^(f-1)``.  Coordinates are ordered by level (the Witt
component, or the monomial degree), so reduction modulo ``m^i`` is simply
``code % q**len_i`` and the residue is ``code % q``.
"""
from __future__ import annotations

import itertools
import json
from dataclasses import dataclass
from functools import lru_cache

FIELD_CAP = 2 ** 16
RING_CAP = 2 ** 24
TABLE_CAP = 2 ** 10


class RingError(ValueError):
    pass


class NonPrime(RingError):
    pass


class DegreeTooLarge(RingError):
    pass


class InvalidMonomial(RingError):
    pass


class LevelOutOfRange(RingError):
    pass


def is_prime(n):
    if n < 2:
        return False
    i = 2
    while i * i <= n:
        if n % i == 0:
            return False
        i += 1
    return True


# polynomials over F_p as coefficient tuples, low degree first

def _poly_trim(a):
    a = list(a)
    while a and a[-1] == 0:
        a.pop()
    return a


def _poly_mod(a, b, p):
    a = _poly_trim(a)
    b = _poly_trim(b)
    inv = pow(b[-1], -1, p)
    while len(a) >= len(b):
        c = a[-1] * inv % p
        s = len(a) - len(b)
        for i, bi in enumerate(b):
            a[s + i] = (a[s + i] - c * bi) % p
        a = _poly_trim(a)
    return a


def _monic_polys(p, deg):
    for coeffs in itertools.product(range(p), repeat=deg):
        yield list(coeffs) + [1]


def is_irreducible(modulus, p):
    """Trial division by every monic polynomial of degree at most deg/2."""
    f = len(modulus) - 1
    if f < 1 or modulus[-1] != 1:
        return False
    for deg in range(1, f // 2 + 1):
        for g in _monic_polys(p, deg):
            if not _poly_mod(modulus, g, p):
                return False
    return True


def least_irreducible(p, f):
    # lexicographic order on (c_0, c_1, ..., c_{f-1}), constant term first
    for coeffs in itertools.product(range(p), repeat=f):
        cand = list(coeffs) + [1]
        if is_irreducible(cand, p):
            return tuple(cand)
    raise RingError(f"no irreducible polynomial of degree {f} over F_{p}")


@dataclass(frozen=True)
class FieldDesc:
    p: int
    f: int
    modulus: tuple

    @property
    def q(self):
        return self.p ** self.f

    @property
    def cardinality(self):
        return self.q

    def __post_init__(self):
        if not is_prime(self.p):
            raise NonPrime(self.p)
        if self.f < 1 or self.p ** self.f > FIELD_CAP:
            raise DegreeTooLarge((self.p, self.f))
        if len(self.modulus) != self.f + 1 or not is_irreducible(list(self.modulus), self.p):
            raise RingError(f"modulus {self.modulus} is not monic irreducible of degree {self.f}")

    def __str__(self):
        return f"F{self.q}"


def make_field(p, f=1):
    if not is_prime(p):
        raise NonPrime(p)
    if f < 1 or p ** f > FIELD_CAP:
        raise DegreeTooLarge((p, f))
    return FieldDesc(p, f, least_irreducible(p, f))


class FieldArith:
    """Log/antilog based arithmetic on field codes."""

    def __init__(self, desc: FieldDesc):
        self.desc = desc
        p, f, q = desc.p, desc.f, desc.q
        self.p, self.f, self.q = p, f, q
        mod = desc.modulus
        # multiplication by x on codes, then build powers of a primitive element
        self._digits = [self._to_digits(c) for c in range(q)] if q <= FIELD_CAP else None
        gen = None
        for cand in range(1, q):
            exp = self._powers(cand, mod)
            if exp is not None:
                gen, self.exp = cand, exp
                break
        self.gen = gen
        self.log = [0] * q
        for i, c in enumerate(self.exp[: q - 1]):
            self.log[c] = i
        if q <= TABLE_CAP:
            self.add_table = [[self._add(a, b) for b in range(q)] for a in range(q)]
        else:
            self.add_table = None
        self.neg_table = [self._neg(a) for a in range(q)]
        self.inv_table = [0] + [self.exp[(q - 1 - self.log[a]) % (q - 1)] for a in range(1, q)]
        self.frob_table = [self.pow(a, p) for a in range(q)]

    def _to_digits(self, c):
        out = []
        for _ in range(self.f):
            out.append(c % self.p)
            c //= self.p
        return out

    def _from_digits(self, d):
        c = 0
        for x in reversed(d):
            c = c * self.p + x
        return c

    def _polymul_code(self, a, b, mod):
        p, f = self.p, self.f
        da, db = self._digits[a], self._digits[b]
        prod = [0] * (2 * f - 1)
        for i, x in enumerate(da):
            if x:
                for j, y in enumerate(db):
                    prod[i + j] = (prod[i + j] + x * y) % p
        r = _poly_mod(prod, list(mod), p)
        return self._from_digits(r + [0] * (f - len(r)))

    def _powers(self, g, mod):
        q = self.q
        exp = [1]
        cur = 1
        for i in range(1, q - 1):
            cur = self._polymul_code(cur, g, mod)
            if cur == 1:
                return None
            exp.append(cur)
        exp.append(1)
        return exp if len(set(exp[: q - 1])) == q - 1 else None

    def _add(self, a, b):
        if self.p == 2:
            return a ^ b
        da, db = self._digits[a], self._digits[b]
        return self._from_digits([(x + y) % self.p for x, y in zip(da, db)])

    def _neg(self, a):
        return self._from_digits([(-x) % self.p for x in self._digits[a]])

    def add(self, a, b):
        if self.add_table is not None:
            return self.add_table[a][b]
        return self._add(a, b)

    def sub(self, a, b):
        return self.add(a, self.neg_table[b])

    def neg(self, a):
        return self.neg_table[a]

    def mul(self, a, b):
        if a == 0 or b == 0:
            return 0
        return self.exp[(self.log[a] + self.log[b]) % (self.q - 1)]

    def inv(self, a):
        if a == 0:
            raise ZeroDivisionError("inverse of 0 in a field")
        return self.inv_table[a]

    def pow(self, a, e):
        if e == 0:
            return 1
        if a == 0:
            return 0
        return self.exp[(self.log[a] * e) % (self.q - 1)]

    def frob(self, a):
        return self.frob_table[a]

    def from_int(self, n):
        return n % self.p

    def digits(self, a):
        return list(self._digits[a])

    def from_digits(self, d):
        return self._from_digits([x % self.p for x in d])


@lru_cache(maxsize=None)
def field_arith(desc: FieldDesc) -> FieldArith:
    return FieldArith(desc)


def _graded_monomials(d, k, extra):
    """Exponent tuples of degree < k, graded, x1 > x2 > ... within a degree,
    skipping multiples of the extra monomials."""
    out = []
    for deg in range(k):
        layer = [e for e in itertools.product(range(deg + 1), repeat=d) if sum(e) == deg]
        layer.sort(reverse=True)
        for e in layer:
            if any(all(ei >= xi for ei, xi in zip(e, x)) for x in extra):
                continue
            out.append(e)
    return out


@dataclass(frozen=True)
class LocalRingDesc:
    kind: str  # "Field" | "Witt2" | "TruncPoly"
    base: FieldDesc
    d: int = 0
    k: int = 1
    extra: tuple = ()

    @property
    def p(self):
        return self.base.p

    @property
    def q(self):
        return self.base.q

    def __str__(self):
        if self.kind == "Field":
            return str(self.base)
        if self.kind == "Witt2":
            return f"W2({self.base})"
        if self.d == 1 and self.k == 2 and not self.extra:
            return f"{self.base}[eps]"
        gens = ",".join(f"x{i + 1}" for i in range(self.d))
        s = f"{self.base}[{gens}]/m^{self.k}"
        if self.extra:
            s += "+" + "+".join(_mono_str(e) for e in self.extra)
        return s

    def to_json(self):
        return {"kind": self.kind, "p": self.base.p, "f": self.base.f,
                "modulus": list(self.base.modulus), "d": self.d, "k": self.k,
                "extra": [list(e) for e in self.extra]}

    def dumps(self):
        return json.dumps(self.to_json(), sort_keys=True, separators=(",", ":"))


def _mono_str(e):
    parts = []
    for i, a in enumerate(e):
        if a == 1:
            parts.append(f"x{i + 1}")
        elif a > 1:
            parts.append(f"x{i + 1}^{a}")
    return "*".join(parts) or "1"


def ring_from_json(obj) -> LocalRingDesc:
    if isinstance(obj, str):
        obj = json.loads(obj)
    base = FieldDesc(obj["p"], obj["f"], tuple(obj["modulus"]))
    kind = obj["kind"]
    if kind == "Field":
        return field_ring(base)
    if kind == "Witt2":
        return make_witt2(base)
    if kind == "TruncPoly":
        return make_trunc_poly(base, obj["d"], obj["k"], [tuple(e) for e in obj.get("extra", [])])
    raise RingError(f"unknown ring kind {kind!r}")


def field_ring(base: FieldDesc) -> LocalRingDesc:
    return LocalRingDesc("Field", base)


def make_witt2(base: FieldDesc) -> LocalRingDesc:
    if base.q ** 2 > RING_CAP:
        raise DegreeTooLarge("ring cardinality above cap")
    return LocalRingDesc("Witt2", base, 0, 2)


def make_trunc_poly(base: FieldDesc, d, k, extra=None) -> LocalRingDesc:
    if d < 0 or k < 2:
        raise InvalidMonomial(f"need d >= 0 and k >= 2, got d={d}, k={k}")
    extra = tuple(tuple(int(a) for a in e) for e in (extra or ()))
    for e in extra:
        if len(e) != d or any(a < 0 for a in e) or not (0 < sum(e) < k):
            raise InvalidMonomial(e)
    n = len(_graded_monomials(d, k, extra))
    if base.q ** n > RING_CAP:
        raise DegreeTooLarge("ring cardinality above cap")
    return LocalRingDesc("TruncPoly", base, d, k, tuple(sorted(set(extra))))


def dual_numbers(base: FieldDesc) -> LocalRingDesc:
    return make_trunc_poly(base, 1, 2)


class Ring:
    """Arithmetic on integer codes of a LocalRingDesc."""

    def __init__(self, desc: LocalRingDesc):
        self.desc = desc
        self.F = field_arith(desc.base)
        F = self.F
        self.p, self.q = F.p, F.q
        if desc.kind == "Field":
            self.monomials = [()]
            self.levels = [0]
            self.nil = 1
        elif desc.kind == "Witt2":
            self.monomials = [(0,), (1,)]
            self.levels = [0, 1]
            self.nil = 2
        else:
            self.monomials = _graded_monomials(desc.d, desc.k, desc.extra)
            self.levels = [sum(e) for e in self.monomials]
            self.nil = max(self.levels) + 1
        self.len = len(self.monomials)
        self.size = self.q ** self.len
        # len_i = F-length of R/m^i
        self.len_at = [sum(1 for l in self.levels if l < i) for i in range(self.nil + 1)]
        self.one = 1
        self.zero = 0
        if desc.kind == "TruncPoly":
            idx = {e: i for i, e in enumerate(self.monomials)}
            self._mono_mul = {}
            for i, a in enumerate(self.monomials):
                for j, b in enumerate(self.monomials):
                    c = tuple(x + y for x, y in zip(a, b))
                    if c in idx:
                        self._mono_mul[(i, j)] = idx[c]
        if desc.kind == "Witt2":
            self._carry = self._witt_carry_table()
        self.mul_table = self.add_table = None
        if self.size <= TABLE_CAP:
            s = range(self.size)
            self.add_table = [[self._add(a, b) for b in s] for a in s]
            self.mul_table = [[self._mul(a, b) for b in s] for a in s]
        self.neg_table = [self._neg(a) for a in range(self.size)] if self.size <= FIELD_CAP else None
        self._inv_cache = {}
        if self.mul_table is not None:
            # exhaustive search is cheap at this size
            for a in range(self.size):
                row = self.mul_table[a]
                for b in range(self.size):
                    if row[b] == 1:
                        self._inv_cache[a] = b
                        break

    # coordinates -------------------------------------------------------
    def coords(self, a):
        q = self.q
        out = []
        for _ in range(self.len):
            out.append(a % q)
            a //= q
        return out

    def from_coords(self, cs):
        a = 0
        for c in reversed(cs):
            a = a * self.q + c
        return a

    def fp_coords(self, a):
        out = []
        for c in self.coords(a):
            out.extend(self.F.digits(c))
        return out

    def from_fp_coords(self, v):
        f = self.F.f
        return self.from_coords([self.F.from_digits(v[i * f:(i + 1) * f]) for i in range(self.len)])

    def embed(self, c):
        """Field code -> ring code of the Teichmueller/constant lift."""
        return c

    def residue(self, a):
        return a % self.q

    def reduce(self, a, i):
        """Image in R/m^i, as a code of the quotient ring."""
        return a % (self.q ** self.len_at[i])

    # arithmetic --------------------------------------------------------
    def _witt_carry_table(self):
        F, p = self.F, self.p
        from math import comb
        coeffs = [(i, comb(p, i) // p % p) for i in range(1, p)]
        tab = {}
        for a in range(self.q):
            for b in range(self.q):
                s = 0
                for i, c in coeffs:
                    if c:
                        term = F.mul(F.pow(a, i), F.pow(b, p - i))
                        for _ in range(c):
                            s = F.add(s, term)
                tab[(a, b)] = s
        return tab

    def _add(self, a, b):
        F, q = self.F, self.q
        if self.desc.kind == "Witt2":
            a0, a1 = a % q, a // q
            b0, b1 = b % q, b // q
            c1 = F.sub(F.add(a1, b1), self._carry[(a0, b0)])
            return F.add(a0, b0) + q * c1
        if self.p == 2:
            return a ^ b
        ca, cb = self.coords(a), self.coords(b)
        return self.from_coords([F.add(x, y) for x, y in zip(ca, cb)])

    def _neg(self, a):
        F, q = self.F, self.q
        if self.desc.kind == "Witt2":
            a0, a1 = a % q, a // q
            n0 = F.neg(a0)
            return n0 + q * F.sub(self._carry[(a0, n0)], a1)
        return self.from_coords([F.neg(x) for x in self.coords(a)])

    def _mul(self, a, b):
        F, q = self.F, self.q
        kind = self.desc.kind
        if kind == "Field":
            return F.mul(a, b)
        if kind == "Witt2":
            a0, a1 = a % q, a // q
            b0, b1 = b % q, b // q
            c1 = F.add(F.mul(F.frob(a0), b1), F.mul(F.frob(b0), a1))
            return F.mul(a0, b0) + q * c1
        ca, cb = self.coords(a), self.coords(b)
        out = [0] * self.len
        for i, x in enumerate(ca):
            if x:
                for j, y in enumerate(cb):
                    if y:
                        k = self._mono_mul.get((i, j))
                        if k is not None:
                            out[k] = F.add(out[k], F.mul(x, y))
        return self.from_coords(out)

    def add(self, a, b):
        t = self.add_table
        return t[a][b] if t is not None else self._add(a, b)

    def mul(self, a, b):
        t = self.mul_table
        return t[a][b] if t is not None else self._mul(a, b)

    def neg(self, a):
        t = self.neg_table
        return t[a] if t is not None else self._neg(a)

    def sub(self, a, b):
        return self.add(a, self.neg(b))

    def is_unit(self, a):
        return a % self.q != 0

    def inv(self, a):
        if a in self._inv_cache:
            return self._inv_cache[a]
        if a % self.q == 0:
            raise ZeroDivisionError("non-unit in local ring")
        # Newton iteration y <- y(2 - ay) doubles the m-adic precision
        y = self.F.inv(a % self.q)
        two = self.add(1, 1)
        for _ in range(self.nil.bit_length() + 1):
            y = self.mul(y, self.sub(two, self.mul(a, y)))
        self._inv_cache[a] = y
        return y

    def from_int(self, n):
        """Image of the integer n."""
        r = 0
        sign = n < 0
        for _ in range(abs(n)):
            r = self.add(r, 1)
        return self.neg(r) if sign else r

    def scalar(self, c):
        """Field element c, lifted (Teichmueller lift for W2, constant otherwise)."""
        return c

    # ideal filtration --------------------------------------------------
    def level_basis(self, i):
        """Codes of the F-basis elements of m^i / m^{i+1}."""
        return [self.q ** j for j, l in enumerate(self.levels) if l == i]

    def level_of(self, a):
        """Largest i with a in m^i (nil for a = 0)."""
        cs = self.coords(a)
        for j, c in enumerate(cs):
            if c:
                return self.levels[j]
        return self.nil

    def fp_basis(self):
        """Codes of an F_p-basis of (R, +) when that group is elementary, else
        additive generators (for W2 the group is (Z/p^2)^f)."""
        f, p = self.F.f, self.p
        out = []
        for j in range(self.len):
            if self.desc.kind == "Witt2" and j == 1:
                continue
            for i in range(f):
                out.append((p ** i) * (self.q ** j))
        return out

    def elements(self):
        return range(self.size)

    def quotient_desc(self, i):
        """LocalRingDesc of R/m^i."""
        if i < 1 or i > self.nil:
            raise LevelOutOfRange(i)
        d = self.desc
        if i == self.nil:
            return d
        if i == 1:
            return field_ring(d.base)
        return make_trunc_poly(d.base, d.d, i, [e for e in d.extra if sum(e) < i])


@lru_cache(maxsize=None)
def get_ring(desc: LocalRingDesc) -> Ring:
    return Ring(desc)


@dataclass(frozen=True)
class RingElement:
    ring: LocalRingDesc
    code: int

    @property
    def coords(self):
        return get_ring(self.ring).fp_coords(self.code)

    def _other(self, o):
        if isinstance(o, RingElement):
            if o.ring != self.ring:
                raise RingError("elements of different rings")
            return o.code
        return get_ring(self.ring).from_int(o)

    def __add__(self, o):
        return RingElement(self.ring, get_ring(self.ring).add(self.code, self._other(o)))

    __radd__ = __add__

    def __sub__(self, o):
        return RingElement(self.ring, get_ring(self.ring).sub(self.code, self._other(o)))

    def __neg__(self):
        return RingElement(self.ring, get_ring(self.ring).neg(self.code))

    def __mul__(self, o):
        return RingElement(self.ring, get_ring(self.ring).mul(self.code, self._other(o)))

    __rmul__ = __mul__

    def inverse(self):
        return RingElement(self.ring, get_ring(self.ring).inv(self.code))

    def is_unit(self):
        return get_ring(self.ring).is_unit(self.code)

    def __repr__(self):
        return f"RingElement({self.ring}, {get_ring(self.ring).coords(self.code)})"


def element(ring: LocalRingDesc, coords) -> RingElement:
    """Build an element from F_p coordinates (length len*f)."""
    R = get_ring(ring)
    if len(coords) != R.len * R.F.f:
        raise RingError("coordinate length mismatch")
    return RingElement(ring, R.from_fp_coords(list(coords)))


def residue(x: RingElement) -> RingElement:
    R = get_ring(x.ring)
    return RingElement(field_ring(x.ring.base), R.residue(x.code))


def nilpotency_degree(ring: LocalRingDesc):
    return get_ring(ring).nil


def ideal_power_basis(ring: LocalRingDesc, i):
    R = get_ring(ring)
    if i < 0 or i > R.nil:
        raise LevelOutOfRange(i)
    return [RingElement(ring, R.q ** j) for j, l in enumerate(R.levels) if l >= i]


def parse_ring(text: str) -> LocalRingDesc:
    """Parse short ring names used on the command line.

    Accepted: ``q=7`` or ``field:q=7``, ``witt2:q=5``, ``dual:q=7``,
    ``trunc:q=2,d=2,k=3``.
    """
    kind, _, rest = text.partition(":")
    if not rest:
        kind, rest = "field", kind
    params = {}
    for part in rest.split(","):
        if part:
            key, _, val = part.partition("=")
            params[key.strip()] = int(val)
    base = field_of_order(params["q"])
    kind = kind.lower()
    if kind == "field":
        return field_ring(base)
    if kind == "witt2":
        return make_witt2(base)
    if kind == "dual":
        return dual_numbers(base)
    if kind == "trunc":
        return make_trunc_poly(base, params.get("d", 1), params.get("k", 2))
    raise RingError(f"unknown ring kind {kind!r}")


def field_of_order(q):
    for p in range(2, q + 1):
        if q % p == 0:
            f, r = 0, q
            while r % p == 0:
                r //= p
                f += 1
            if r != 1:
                raise NonPrime(q)
            return make_field(p, f)
    raise NonPrime(q)
