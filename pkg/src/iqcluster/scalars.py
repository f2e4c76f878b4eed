"""Exact arithmetic in Z[q^(1/2), q^(-1/2)] and its fraction field Q(q^(1/2)).

Exponents of q are stored doubled, so a key ``e2`` stands for q^(e2/2) and
every exponent is an exact half-integer.  Coefficients are Python ints, so
there is no precision ceiling and no floating point anywhere.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd


class QLaurent:
    """Laurent polynomial in q^(1/2) with integer coefficients.

    Immutable.  ``coeffs`` maps doubled exponents to nonzero integers.
    """

    __slots__ = ("_c", "_hash")

    def __init__(self, coeffs: dict[int, int] | None = None):
        c = {}
        if coeffs:
            for e2, v in coeffs.items():
                if v:
                    c[e2] = v
        self._c = c
        self._hash = None

    # -- constructors -------------------------------------------------

    @staticmethod
    def from_int(n: int) -> "QLaurent":
        return QLaurent({0: n})

    @staticmethod
    def q_power(e2: int, coeff: int = 1) -> "QLaurent":
        """coeff * q^(e2/2)."""
        return QLaurent({e2: coeff})

    # -- queries -------------------------------------------------------

    def is_zero(self) -> bool:
        return not self._c

    def is_one(self) -> bool:
        return self._c == {0: 1}

    def items(self):
        return self._c.items()

    def min_e2(self) -> int:
        return min(self._c)

    def max_e2(self) -> int:
        return max(self._c)

    def content(self) -> int:
        """gcd of the integer coefficients (0 for the zero polynomial)."""
        g = 0
        for v in self._c.values():
            g = gcd(g, v)
        return g

    def leading_coeff(self) -> int:
        """Coefficient of the highest power of q^(1/2)."""
        return self._c[self.max_e2()]

    def as_monomial(self) -> tuple[int, int] | None:
        """Return (coeff, e2) if the polynomial has a single term."""
        if len(self._c) != 1:
            return None
        ((e2, v),) = self._c.items()
        return v, e2

    # -- arithmetic ----------------------------------------------------

    def __add__(self, other: "QLaurent") -> "QLaurent":
        c = dict(self._c)
        for e2, v in other._c.items():
            w = c.get(e2, 0) + v
            if w:
                c[e2] = w
            elif e2 in c:
                del c[e2]
        out = QLaurent.__new__(QLaurent)
        out._c = c
        out._hash = None
        return out

    def __neg__(self) -> "QLaurent":
        out = QLaurent.__new__(QLaurent)
        out._c = {e2: -v for e2, v in self._c.items()}
        out._hash = None
        return out

    def __sub__(self, other: "QLaurent") -> "QLaurent":
        return self + (-other)

    def __mul__(self, other: "QLaurent") -> "QLaurent":
        c: dict[int, int] = {}
        for e1, v1 in self._c.items():
            for e2, v2 in other._c.items():
                e = e1 + e2
                w = c.get(e, 0) + v1 * v2
                if w:
                    c[e] = w
                elif e in c:
                    del c[e]
        out = QLaurent.__new__(QLaurent)
        out._c = c
        out._hash = None
        return out

    def scale(self, n: int) -> "QLaurent":
        if n == 0:
            return QLaurent()
        out = QLaurent.__new__(QLaurent)
        out._c = {e2: n * v for e2, v in self._c.items()}
        out._hash = None
        return out

    def shift(self, e2: int) -> "QLaurent":
        """Multiply by q^(e2/2)."""
        if e2 == 0:
            return self
        out = QLaurent.__new__(QLaurent)
        out._c = {e + e2: v for e, v in self._c.items()}
        out._hash = None
        return out

    def bar(self) -> "QLaurent":
        """The involution q -> q^(-1): every exponent is negated."""
        out = QLaurent.__new__(QLaurent)
        out._c = {-e: v for e, v in self._c.items()}
        out._hash = None
        return out

    def exact_div_int(self, n: int) -> "QLaurent":
        out = QLaurent.__new__(QLaurent)
        out._c = {}
        for e, v in self._c.items():
            q, r = divmod(v, n)
            if r:
                raise ValueError("integer content division is not exact")
            out._c[e] = q
        out._hash = None
        return out

    # -- comparisons ---------------------------------------------------

    def __eq__(self, other) -> bool:
        return isinstance(other, QLaurent) and self._c == other._c

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(tuple(sorted(self._c.items())))
        return self._hash

    def __repr__(self):
        return f"QLaurent({self._c!r})"

    # -- conversion to dense coefficient list --------------------------

    def dense(self) -> tuple[int, list[int]]:
        """Return (offset, coeffs) with self = q^(offset/2) * sum coeffs[i] q^(i/2)."""
        if not self._c:
            return 0, []
        lo, hi = self.min_e2(), self.max_e2()
        out = [0] * (hi - lo + 1)
        for e2, v in self._c.items():
            out[e2 - lo] = v
        return lo, out

    @staticmethod
    def from_dense(offset: int, coeffs: list[int]) -> "QLaurent":
        return QLaurent({offset + i: v for i, v in enumerate(coeffs) if v})


# -- integer polynomial helpers (dense, ascending) ----------------------


def _strip(p: list[int]) -> list[int]:
    while p and p[-1] == 0:
        p.pop()
    return p


def _content(p: list[int]) -> int:
    g = 0
    for v in p:
        g = gcd(g, v)
    return g


def _primitive(p: list[int]) -> list[int]:
    g = _content(p)
    if g in (0, 1):
        return list(p)
    return [v // g for v in p]


def _poly_mul(a: list[int], b: list[int]) -> list[int]:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return _strip(out)


def _poly_exact_div(a: list[int], b: list[int]) -> list[int]:
    """Exact division of integer polynomials (raises if not exact)."""
    a = list(a)
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    out = [0] * (len(a) - len(b) + 1)
    for i in range(len(a) - len(b), -1, -1):
        c, r = divmod(a[i + len(b) - 1], b[-1])
        if r:
            raise ValueError("polynomial division is not exact")
        out[i] = c
        if c:
            for j, y in enumerate(b):
                a[i + j] -= c * y
    if any(a):
        raise ValueError("polynomial division is not exact")
    return _strip(out)


def _poly_pseudo_rem(a: list[int], b: list[int]) -> list[int]:
    """Pseudo-remainder of a by b (leading coefficient powers absorbed)."""
    a = list(a)
    d = len(b) - 1
    lb = b[-1]
    while len(a) - 1 >= d and a:
        k = len(a) - 1 - d
        la = a[-1]
        a = [v * lb for v in a]
        for j in range(len(b)):
            a[k + j] -= la * b[j]
        a = _strip(a)
    return a


def _poly_gcd(a: list[int], b: list[int]) -> list[int]:
    """Primitive gcd over Z via primitive pseudo-remainder sequence."""
    a, b = _primitive(_strip(list(a))), _primitive(_strip(list(b)))
    if not a:
        return b
    if not b:
        return a
    while b:
        r = _primitive(_poly_pseudo_rem(a, b))
        a, b = b, r
    if a and a[-1] < 0:
        a = [-v for v in a]
    return a


class QScalar:
    """Element of Q(q^(1/2)) stored as a reduced fraction num/den of
    integer-coefficient Laurent polynomials in q^(1/2).

    Canonical form: den is a genuine polynomial with nonzero constant term,
    positive leading coefficient, gcd(num, den) = 1 over Q, and the integer
    contents of num and den are coprime.  Equality of canonical forms is
    exact equality in the field.
    """

    __slots__ = ("num", "den")

    def __init__(self, num: QLaurent, den: QLaurent | None = None, *, _canonical: bool = False):
        if den is None:
            den = _QL_ONE
        if _canonical:
            self.num = num
            self.den = den
            return
        if den.is_zero():
            raise ZeroDivisionError("QScalar with zero denominator")
        if num.is_zero():
            self.num = _QL_ZERO
            self.den = _QL_ONE
            return
        dm = den.as_monomial()
        if dm is not None:
            dc, de2 = dm
            num = num.shift(-de2)
            if dc < 0:
                num, dc = -num, -dc
            if dc != 1:
                g = gcd(num.content(), dc)
                if g > 1:
                    num = num.exact_div_int(g)
                    dc //= g
            self.num = num
            self.den = _QL_ONE if dc == 1 else QLaurent.from_int(dc)
            return
        # full reduction
        noff, npoly = num.dense()
        doff, dpoly = den.dense()
        noff -= doff
        g = _poly_gcd(npoly, dpoly)
        if len(g) > 1:
            npoly = _poly_exact_div(_primitive(npoly), g)
            # scale back the content of num
            cn = _content(num.dense()[1])
            npoly = [v * cn for v in npoly]
            dpoly = _poly_exact_div(_primitive(dpoly), g)
            cd = _content(den.dense()[1])
            dpoly = [v * cd for v in dpoly]
        cn, cd = _content(npoly), _content(dpoly)
        c = gcd(cn, cd)
        if dpoly[-1] < 0:
            c = -c
        if c != 1:
            npoly = [v // c for v in npoly]
            dpoly = [v // c for v in dpoly]
        self.num = QLaurent.from_dense(noff, npoly)
        self.den = QLaurent.from_dense(0, dpoly)

    # -- constructors ----------------------------------------------------

    @staticmethod
    def from_int(n: int) -> "QScalar":
        return QScalar(QLaurent.from_int(n), _QL_ONE, _canonical=True)

    @staticmethod
    def from_fraction(f: Fraction) -> "QScalar":
        return QScalar(
            QLaurent.from_int(f.numerator), QLaurent.from_int(f.denominator), _canonical=True
        )

    @staticmethod
    def q(e2: int = 2, coeff: int = 1) -> "QScalar":
        """coeff * q^(e2/2); QScalar.q() is q itself."""
        return QScalar(QLaurent.q_power(e2, coeff), _QL_ONE, _canonical=True)

    # -- queries -----------------------------------------------------------

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def is_one(self) -> bool:
        return self.num.is_one() and self.den.is_one()

    def is_integral(self) -> bool:
        """True iff the canonical denominator is 1, i.e. the value lies in
        Z[q^(1/2), q^(-1/2)]."""
        return self.den.is_one()

    def as_q_monomial(self) -> tuple[Fraction, int] | None:
        """Return (r, e2) with self = r * q^(e2/2), r rational, or None."""
        nm = self.num.as_monomial()
        dm = self.den.as_monomial()
        if nm is None or dm is None:
            return None
        (nc, ne2), (dc, _) = nm, dm
        return Fraction(nc, dc), ne2

    # -- arithmetic --------------------------------------------------------

    def __add__(self, other: "QScalar") -> "QScalar":
        if self.den.is_one() and other.den.is_one():
            s = self.num + other.num
            if s.is_zero():
                return ZERO
            return QScalar(s, _QL_ONE, _canonical=True)
        return QScalar(self.num * other.den + other.num * self.den, self.den * other.den)

    def __neg__(self) -> "QScalar":
        return QScalar(-self.num, self.den, _canonical=True)

    def __sub__(self, other: "QScalar") -> "QScalar":
        return self + (-other)

    def __mul__(self, other: "QScalar") -> "QScalar":
        if self.den.is_one() and other.den.is_one():
            return QScalar(self.num * other.num, _QL_ONE, _canonical=True)
        return QScalar(self.num * other.num, self.den * other.den)

    def __truediv__(self, other: "QScalar") -> "QScalar":
        if other.is_zero():
            raise ZeroDivisionError("division by zero QScalar")
        return QScalar(self.num * other.den, self.den * other.num)

    def inverse(self) -> "QScalar":
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero QScalar")
        return QScalar(self.den, self.num)

    def bar(self) -> "QScalar":
        """The involution q -> q^(-1)."""
        return QScalar(self.num.bar(), self.den.bar())

    def shift_q(self, e2: int) -> "QScalar":
        """Multiply by q^(e2/2) (exact, stays canonical)."""
        return QScalar(self.num.shift(e2), self.den, _canonical=True)

    # -- comparisons ---------------------------------------------------

    def __eq__(self, other) -> bool:
        if isinstance(other, int):
            other = QScalar.from_int(other)
        return isinstance(other, QScalar) and self.num == other.num and self.den == other.den

    def __hash__(self):
        return hash((self.num, self.den))

    def __repr__(self):
        return f"QScalar({render_qscalar(self)!r})"


_QL_ZERO = QLaurent()
_QL_ONE = QLaurent.from_int(1)

ZERO = QScalar.from_int(0)
ONE = QScalar.from_int(1)
Q = QScalar.q(2)
QINV = QScalar.q(-2)
QHALF = QScalar.q(1)


def q_int(n: int) -> QScalar:
    """The balanced q-integer q^(n-1) + q^(n-3) + ... + q^(1-n)."""
    return QScalar(QLaurent({2 * k: 1 for k in range(-(n - 1), n, 2)}))


def bar(a: QScalar) -> QScalar:
    return a.bar()


def is_integral(a: QScalar) -> bool:
    return a.is_integral()


# -- rendering -----------------------------------------------------------


def _render_exponent(e2: int) -> str:
    if e2 % 2 == 0:
        e = e2 // 2
        return str(e) if e >= 0 else f"({e})"
    return f"({e2}/2)"


def render_qlaurent(p: QLaurent) -> str:
    if p.is_zero():
        return "0"
    parts = []
    for e2 in sorted(p._c, reverse=True):
        v = p._c[e2]
        if e2 == 0:
            body = str(abs(v))
        else:
            qpow = "q" if e2 == 2 else f"q^{_render_exponent(e2)}"
            body = qpow if abs(v) == 1 else f"{abs(v)}*{qpow}"
        if not parts:
            parts.append(body if v > 0 else f"-{body}")
        else:
            parts.append(f"+ {body}" if v > 0 else f"- {body}")
    return " ".join(parts)


def render_qscalar(a: QScalar) -> str:
    if a.den.is_one():
        return render_qlaurent(a.num)
    return f"({render_qlaurent(a.num)})/({render_qlaurent(a.den)})"


# -- parsing -------------------------------------------------------------


class _Tokens:
    def __init__(self, text: str):
        self.toks: list[str] = []
        i = 0
        while i < len(text):
            ch = text[i]
            if ch.isspace():
                i += 1
            elif ch.isdigit():
                j = i
                while j < len(text) and text[j].isdigit():
                    j += 1
                self.toks.append(text[i:j])
                i = j
            elif ch.isalpha():
                j = i
                while j < len(text) and (text[j].isalnum() or text[j] == "_"):
                    j += 1
                self.toks.append(text[i:j])
                i = j
            elif ch in "+-*/^()[],:":
                self.toks.append(ch)
                i += 1
            else:
                raise ValueError(f"unexpected character {ch!r} in scalar expression")
        self.pos = 0

    def peek(self) -> str | None:
        return self.toks[self.pos] if self.pos < len(self.toks) else None

    def next(self) -> str:
        t = self.peek()
        if t is None:
            raise ValueError("unexpected end of scalar expression")
        self.pos += 1
        return t

    def expect(self, t: str):
        got = self.next()
        if got != t:
            raise ValueError(f"expected {t!r}, got {got!r}")


def parse_qscalar(text: str) -> QScalar:
    """Parse expressions like ``3*q^(1/2) - q^(-2)`` or
    ``(q^2 - q^(-2))/(q - q^(-1))`` into a QScalar."""
    toks = _Tokens(text)
    v = _parse_sum(toks)
    if toks.peek() is not None:
        raise ValueError(f"trailing input {toks.peek()!r} in scalar expression")
    return v


def _parse_sum(toks: _Tokens) -> QScalar:
    v = _parse_product(toks)
    while toks.peek() in ("+", "-"):
        op = toks.next()
        w = _parse_product(toks)
        v = v + w if op == "+" else v - w
    return v


def _parse_product(toks: _Tokens) -> QScalar:
    v = _parse_power(toks)
    while toks.peek() in ("*", "/"):
        op = toks.next()
        w = _parse_power(toks)
        v = v * w if op == "*" else v / w
    return v


def _parse_power(toks: _Tokens) -> QScalar:
    v = _parse_atom(toks)
    if toks.peek() == "^":
        toks.next()
        e2 = _parse_exponent(toks)
        m = v.as_q_monomial()
        if m is not None:
            r, base_e2 = m
            if e2 % 2 == 0:
                k = e2 // 2
                return QScalar.from_fraction(r**k) * QScalar.q(base_e2 * k)
            if r == 1 and (base_e2 * e2) % 2 == 0:
                return QScalar.q(base_e2 * e2 // 2)
            raise ValueError("half-integer power of a non-q base")
        if e2 % 2 or e2 < 0:
            raise ValueError("general powers must be nonnegative integers")
        out = ONE
        for _ in range(e2 // 2):
            out = out * v
        return out
    return v


def _parse_exponent(toks: _Tokens) -> int:
    """Return a doubled exponent; accepts n, (n), (-n), (p/2), (-p/2)."""
    if toks.peek() == "(":
        toks.next()
        sign = 1
        if toks.peek() == "-":
            toks.next()
            sign = -1
        p = int(toks.next())
        if toks.peek() == "/":
            toks.next()
            d = int(toks.next())
            if d not in (1, 2):
                raise ValueError("q-exponents must be half-integers")
            e2 = 2 * p // d
        else:
            e2 = 2 * p
        toks.expect(")")
        return sign * e2
    sign = 1
    if toks.peek() == "-":
        toks.next()
        sign = -1
    return sign * 2 * int(toks.next())


def _parse_atom(toks: _Tokens) -> QScalar:
    t = toks.next()
    if t == "(":
        v = _parse_sum(toks)
        toks.expect(")")
        return v
    if t == "-":
        return -_parse_power(toks)
    if t == "q":
        return Q
    if t.isdigit():
        return QScalar.from_int(int(t))
    raise ValueError(f"unexpected token {t!r} in scalar expression")
