"""Exact scalar fields.

Two kinds of field are provided:

* :class:`Rationals` -- elements are :class:`fractions.Fraction`.
* :class:`GF` -- the finite field with ``p**e`` elements.  Elements are the
  integers ``0 .. q-1``; for ``e > 1`` the integer is read as the base-``p``
  digit string of a polynomial reduced modulo a fixed irreducible polynomial
  (see :data:`IRREDUCIBLE`).

Only prime fields and the rationals can serve as coefficient fields for the
linear algebra in :mod:`flagmod.exactlinalg`; non-prime ``GF(p, e)`` exists so
that matrix groups over ``F_q`` can be built.
"""

from __future__ import annotations

from fractions import Fraction
from functools import cached_property

import numpy as np

# Fixed irreducible polynomials, coefficients listed from the constant term up.
IRREDUCIBLE = {
    (2, 2): (1, 1, 1),        # x^2 + x + 1
    (2, 3): (1, 1, 0, 1),     # x^3 + x + 1
    (2, 4): (1, 1, 0, 0, 1),  # x^4 + x + 1
    (3, 2): (1, 0, 1),        # x^2 + 1
    (3, 3): (1, 2, 0, 1),     # x^3 + 2x + 1
    (5, 2): (2, 0, 1),        # x^2 + 2
    (7, 2): (1, 0, 1),        # x^2 + 1
}

# Keeps p*p*n inside int64 for dense products of dimension n < 2**20.
MAX_LINALG_PRIME = 1 << 20


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


def next_prime(n: int) -> int:
    """Least prime strictly greater than ``n``."""
    m = n + 1
    while not is_prime(m):
        m += 1
    return m


class Rationals:
    """The field of rational numbers."""

    characteristic = 0
    dtype = object
    name = "QQ"

    def __call__(self, x) -> Fraction:
        return Fraction(x)

    def __repr__(self):
        return "QQ"

    def __eq__(self, other):
        return isinstance(other, Rationals)

    def __hash__(self):
        return hash("QQ")

    @property
    def zero(self):
        return Fraction(0)

    @property
    def one(self):
        return Fraction(1)

    def inv(self, x):
        if x == 0:
            raise ZeroDivisionError("inverse of zero")
        return 1 / Fraction(x)

    def array(self, values) -> np.ndarray:
        arr = np.array(values, dtype=object)
        flat = arr.reshape(-1)
        for k in range(flat.size):
            flat[k] = Fraction(flat[k])
        return arr

    def zeros(self, shape) -> np.ndarray:
        arr = np.empty(shape, dtype=object)
        arr.fill(Fraction(0))
        return arr

    def normalize(self, arr):
        return arr

    def from_int(self, n: int) -> Fraction:
        return Fraction(n)

    def random(self, rng, size=None, nonzero=False):
        # Small numerators and denominators keep test vectors readable.
        def draw():
            while True:
                x = Fraction(int(rng.integers(-9, 10)), int(rng.integers(1, 5)))
                if x or not nonzero:
                    return x
        if size is None:
            return draw()
        out = np.empty(size, dtype=object)
        flat = out.reshape(-1)
        for k in range(flat.size):
            flat[k] = draw()
        return out

    def to_str(self, x) -> str:
        return str(Fraction(x))


QQ = Rationals()


class GF:
    """Finite field ``GF(p**e)`` with integer-coded elements."""

    dtype = np.int64

    def __init__(self, p: int, e: int = 1):
        if not is_prime(p):
            raise ValueError(f"GF: {p} is not prime")
        if e < 1:
            raise ValueError("GF: extension degree must be positive")
        if e > 1 and (p, e) not in IRREDUCIBLE:
            raise ValueError(f"GF({p}^{e}): no irreducible polynomial on file")
        self.p = p
        self.e = e
        self.q = p**e
        self.characteristic = p
        self.name = f"GF({self.q})"

    def __repr__(self):
        return self.name

    def __eq__(self, other):
        return isinstance(other, GF) and (self.p, self.e) == (other.p, other.e)

    def __hash__(self):
        return hash(("GF", self.p, self.e))

    @property
    def is_prime_field(self) -> bool:
        return self.e == 1

    @property
    def zero(self):
        return 0

    @property
    def one(self):
        return 1

    def elements(self) -> range:
        return range(self.q)

    # -- polynomial encoding for e > 1 -----------------------------------

    def _digits(self, a: int) -> list[int]:
        out = []
        for _ in range(self.e):
            out.append(a % self.p)
            a //= self.p
        return out

    def _undigits(self, ds) -> int:
        a = 0
        for d in reversed(ds):
            a = a * self.p + d
        return a

    @cached_property
    def _tables(self):
        p, e, q = self.p, self.e, self.q
        modpoly = IRREDUCIBLE[(p, e)]
        add = np.zeros((q, q), dtype=np.int64)
        mul = np.zeros((q, q), dtype=np.int64)
        digits = [self._digits(a) for a in range(q)]
        for a in range(q):
            for b in range(q):
                add[a, b] = self._undigits([(x + y) % p for x, y in zip(digits[a], digits[b])])
                prod = [0] * (2 * e - 1)
                for i, x in enumerate(digits[a]):
                    for j, y in enumerate(digits[b]):
                        prod[i + j] = (prod[i + j] + x * y) % p
                for k in range(2 * e - 2, e - 1, -1):
                    c = prod[k]
                    if c:
                        for t in range(e + 1):
                            prod[k - e + t] = (prod[k - e + t] - c * modpoly[t]) % p
                mul[a, b] = self._undigits(prod[:e])
        neg = np.array([self._undigits([(-x) % p for x in digits[a]]) for a in range(q)])
        inv = np.zeros(q, dtype=np.int64)
        for a in range(1, q):
            inv[a] = int(np.nonzero(mul[a] == 1)[0][0])
        return add, mul, neg, inv

    # -- scalar arithmetic ------------------------------------------------

    def __call__(self, x) -> int:
        if self.e == 1:
            if isinstance(x, Fraction):
                return (x.numerator * pow(x.denominator, -1, self.p)) % self.p
            return int(x) % self.p
        x = int(x)
        if not 0 <= x < self.q:
            raise ValueError(f"{x} is not an element code of {self.name}")
        return x

    def from_int(self, n: int) -> int:
        """Image of the integer ``n`` under the canonical ring map."""
        return int(n) % self.p

    def add(self, a: int, b: int) -> int:
        if self.e == 1:
            return (a + b) % self.p
        return int(self._tables[0][a, b])

    def neg(self, a: int) -> int:
        if self.e == 1:
            return (-a) % self.p
        return int(self._tables[2][a])

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg(b))

    def mul(self, a: int, b: int) -> int:
        if self.e == 1:
            return (a * b) % self.p
        return int(self._tables[1][a, b])

    def inv(self, a: int) -> int:
        a = int(a)
        if a % self.q == 0:
            raise ZeroDivisionError(f"inverse of zero in {self.name}")
        if self.e == 1:
            return pow(a, self.p - 2, self.p)
        return int(self._tables[3][a])

    def div(self, a: int, b: int) -> int:
        return self.mul(a, self.inv(b))

    def power(self, a: int, k: int) -> int:
        if k < 0:
            a, k = self.inv(a), -k
        out = 1
        while k:
            if k & 1:
                out = self.mul(out, a)
            a = self.mul(a, a)
            k >>= 1
        return out

    @cached_property
    def primitive_element(self) -> int:
        """Least element code generating the multiplicative group."""
        order = self.q - 1
        factors = [d for d in range(2, order + 1) if order % d == 0 and is_prime(d)]
        for g in range(1, self.q):
            if all(self.power(g, order // d) != 1 for d in factors):
                return g
        raise AssertionError("no primitive element found")

    def additive_basis(self) -> list[int]:
        """Basis of ``GF(q)`` over its prime field: ``1, x, ..., x**(e-1)``."""
        return [self.p**k for k in range(self.e)]

    # -- array interface (prime fields only) ------------------------------

    def _require_prime(self):
        if self.e != 1:
            raise TypeError(f"{self.name} is not a prime field; linear algebra needs GF(r) or QQ")
        if self.p >= MAX_LINALG_PRIME:
            raise ValueError(f"prime {self.p} too large for int64 dense linear algebra")

    def array(self, values) -> np.ndarray:
        self._require_prime()
        if isinstance(values, np.ndarray) and values.dtype != object:
            return values.astype(np.int64) % self.p
        arr = np.array(values, dtype=object)
        flat = arr.reshape(-1)
        for k in range(flat.size):
            flat[k] = self(flat[k])
        return arr.astype(np.int64)

    def zeros(self, shape) -> np.ndarray:
        self._require_prime()
        return np.zeros(shape, dtype=np.int64)

    def normalize(self, arr):
        return arr % self.p

    def random(self, rng, size=None, nonzero=False):
        lo = 1 if nonzero else 0
        if size is None:
            return int(rng.integers(lo, self.p))
        return rng.integers(lo, self.p, size=size).astype(np.int64)

    def to_str(self, x) -> str:
        return str(int(x))


def parse_field(label: str):
    """Parse ``"QQ"``/``"0"`` or a prime (``"5"``, ``"GF5"``, ``"GF(5)"``)."""
    s = label.strip().upper().replace("(", "").replace(")", "")
    if s in ("QQ", "Q", "0"):
        return QQ
    if s.startswith("GF"):
        s = s[2:]
    n = int(s)
    if not is_prime(n):
        raise ValueError(f"coefficient field must be QQ or a prime field, got {label!r}")
    return GF(n)
