"""Rank-one Drinfeld double, quantum dilogarithm, and the quasi K-matrix.

Elements of the rank-one double are kept in the triangular normal form
F^a K^b K'^c E^d with exact coefficients; products are rewritten through

    E F = F E + (q - 1/q)(K' - K),   K E = q^2 E K,   K' E = q^(-2) E K',
    K F = q^(-2) F K,                K' F = q^2 F K',

so that the series identity defining the quasi K-matrix can be checked
degree by degree.  The quantum dilogarithm Psi_q(x) is the power series
with constant term 1 satisfying Psi(q^2 x) = (1 + q x) Psi_q(x).
"""

from __future__ import annotations

import time
from dataclasses import dataclass

from .reports import Report
from .scalars import ONE, QScalar, ZERO, render_qscalar

Word = tuple[int, int, int, int]  # (a, b, c, d) standing for F^a K^b K'^c E^d


class RankOneElement:
    """Normal-form element of the rank-one double."""

    __slots__ = ("terms",)

    def __init__(self, terms: dict[Word, QScalar] | None = None):
        t = {}
        if terms:
            for w, c in terms.items():
                if not c.is_zero():
                    t[w] = c
        self.terms = t

    @staticmethod
    def zero() -> "RankOneElement":
        return RankOneElement()

    @staticmethod
    def basis(a=0, b=0, c=0, d=0, coeff: QScalar = ONE) -> "RankOneElement":
        return RankOneElement({(a, b, c, d): coeff})

    @staticmethod
    def one() -> "RankOneElement":
        return RankOneElement.basis()

    def __add__(self, other):
        t = dict(self.terms)
        for w, c in other.terms.items():
            s = t.get(w)
            if s is None:
                t[w] = c
            else:
                s = s + c
                if s.is_zero():
                    del t[w]
                else:
                    t[w] = s
        return RankOneElement(t)

    def __neg__(self):
        return RankOneElement({w: -c for w, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c: QScalar) -> "RankOneElement":
        return RankOneElement({w: v * c for w, v in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, QScalar):
            return self.scale(other)
        out: dict[Word, QScalar] = {}
        for (a, b, c, d), x in self.terms.items():
            for (a2, b2, c2, d2), y in other.terms.items():
                coeff = x * y
                mid = _e_pow_f(d, a2)
                for (al, be, ga, de), t in mid.terms.items():
                    # F^a K^b K'^c (F^al K^be K'^ga E^de) K^b2 K'^c2 E^d2
                    v = coeff * t
                    v = v.shift_q(4 * al * (c - b))  # K^b K'^c across F^al
                    v = v.shift_q(4 * de * (c2 - b2))  # E^de across K^b2 K'^c2
                    w = (a + al, b + be + b2, c + ga + c2, de + d2)
                    s = out.get(w)
                    if s is None:
                        if not v.is_zero():
                            out[w] = v
                    else:
                        s = s + v
                        if s.is_zero():
                            del out[w]
                        else:
                            out[w] = s
        return RankOneElement(out)

    def __rmul__(self, other):
        if isinstance(other, QScalar):
            return self.scale(other)
        return NotImplemented

    def truncate_e_degree(self, bound: int) -> "RankOneElement":
        """Drop every term with E-degree exceeding ``bound``."""
        return RankOneElement(
            {w: c for w, c in self.terms.items() if w[3] <= bound}
        )

    def is_zero(self) -> bool:
        return not self.terms

    def __eq__(self, other):
        return isinstance(other, RankOneElement) and self.terms == other.terms

    def __repr__(self):
        if not self.terms:
            return "RankOneElement(0)"
        bits = []
        for w in sorted(self.terms):
            a, b, c, d = w
            mono = "".join(
                f"{s}^{p}" if p != 1 else s
                for s, p in (("F", a), ("K", b), ("K'", c), ("E", d))
                if p
            ) or "1"
            bits.append(f"({render_qscalar(self.terms[w])})*{mono}")
        return "RankOneElement(" + " + ".join(bits) + ")"


F = RankOneElement.basis(a=1)
K = RankOneElement.basis(b=1)
KPRIME = RankOneElement.basis(c=1)
E = RankOneElement.basis(d=1)

_EF_CACHE: dict[tuple[int, int], RankOneElement] = {}


def _e_pow_f(d: int, a: int) -> RankOneElement:
    """Normal form of E^d F^a."""
    if d == 0 or a == 0:
        return RankOneElement.basis(a=a, d=d)
    key = (d, a)
    cached = _EF_CACHE.get(key)
    if cached is not None:
        return cached
    # E * (E^(d-1) F^a), with E moved through each normal term
    prev = _e_pow_f(d - 1, a)
    out = RankOneElement.zero()
    for (al, be, ga, de), t in prev.terms.items():
        moved = _e_f_pow(al)  # E F^al in normal form
        for (a2, b2, c2, d2), s in moved.terms.items():
            v = t * s
            v = v.shift_q(4 * d2 * (ga - be))  # E^d2 across K^be K'^ga
            w = (a2, b2 + be, c2 + ga, d2 + de)
            cur = out.terms.get(w)
            if cur is None:
                if not v.is_zero():
                    out.terms[w] = v
            else:
                cur = cur + v
                if cur.is_zero():
                    del out.terms[w]
                else:
                    out.terms[w] = cur
    _EF_CACHE[key] = out
    return out


_EFP_CACHE: dict[int, RankOneElement] = {}


def _e_f_pow(a: int) -> RankOneElement:
    """Normal form of E F^a."""
    if a == 0:
        return RankOneElement.basis(d=1)
    cached = _EFP_CACHE.get(a)
    if cached is not None:
        return cached
    qmqi = QScalar.q(2) - QScalar.q(-2)
    # E F^a = F (E F^(a-1)) + (q - 1/q)(K' - K) F^(a-1)
    #       = F (E F^(a-1)) + (q - 1/q)(q^(2(a-1)) F^(a-1) K'
    #                                   - q^(-2(a-1)) F^(a-1) K)
    rec = _e_f_pow(a - 1)
    out = RankOneElement.zero()
    for (al, be, ga, de), t in rec.terms.items():
        out = out + RankOneElement.basis(al + 1, be, ga, de, t)
    out = out + RankOneElement.basis(
        a - 1, 0, 1, 0, qmqi.shift_q(4 * (a - 1))
    )
    out = out + RankOneElement.basis(
        a - 1, 1, 0, 0, (-qmqi).shift_q(-4 * (a - 1))
    )
    _EFP_CACHE[a] = out
    return out


# -- quantum dilogarithm ---------------------------------------------------------


@dataclass
class DilogSeries:
    """Truncated Psi_base(x) = sum c_n x^n with
    c_n = base^(-n(n-1)/2) / prod_{j<=n} (base^j - base^(-j))."""

    base_e2: int  # doubled exponent of the base: 2 for q, 4 for q^2
    order: int
    coeffs: list[QScalar]

    def coefficient(self, k: int) -> QScalar:
        return self.coeffs[k]


def psi_series(base_e2: int, order: int) -> DilogSeries:
    coeffs = [ONE]
    for k in range(1, order + 1):
        num = QScalar.q(-base_e2 * k * (k - 1) // 2)
        den = ONE
        for j in range(1, k + 1):
            den = den * (QScalar.q(base_e2 * j) - QScalar.q(-base_e2 * j))
        coeffs.append(num / den)
    return DilogSeries(base_e2, order, coeffs)


def psi_difference_reports(base_e2: int, order: int) -> list[Report]:
    """Psi(base^2 x) = (1 + base x) Psi(x), coefficient by coefficient:
    c_k base^(2k) = c_k + base c_{k-1}."""
    s = psi_series(base_e2, order)
    reports = []
    for k in range(1, order + 1):
        t0 = time.perf_counter()
        lhs = s.coeffs[k].shift_q(2 * base_e2 * k)
        rhs = s.coeffs[k] + s.coeffs[k - 1].shift_q(base_e2)
        ok = lhs == rhs
        reports.append(
            Report(
                "dilog-difference",
                0,
                {"base_e2": base_e2, "order": k},
                ok,
                None if ok else render_qscalar(lhs - rhs),
                (time.perf_counter() - t0) * 1000,
            )
        )
    return reports


def quasi_k_coeffs(order: int) -> list[QScalar]:
    """a_0, a_2, ..., a_{2 order} with a_0 = 1 and
    a_{2n} = -q^(-2n+2) / (q^(2n) - q^(-2n)) * a_{2n-2}."""
    out = [ONE]
    for k in range(1, order + 1):
        num = QScalar.q(2 * (-2 * k + 2), -1)
        den = QScalar.q(4 * k) - QScalar.q(-4 * k)
        out.append(num / den * out[-1])
    return out


def quasi_k_matrix(order: int) -> RankOneElement:
    """The truncation sum a_{2n} E^{2n}, n <= order."""
    coeffs = quasi_k_coeffs(order)
    return RankOneElement({(0, 0, 0, 2 * k): c for k, c in enumerate(coeffs)})


def verify_klog(order: int) -> list[Report]:
    """(a) the recursion coefficients match Psi_{q^2}(-E^2);
    (b) the intertwining identity B Y = Y (F - q E K) holds modulo
    E-degrees above 2*order, with B = F - q^(-1) E K';
    (c) the defining difference relation of Psi holds at every computed
    order (for the base q and the base q^2);
    (d) the closed form of F E^{2n} used in the derivation is exact."""
    reports: list[Report] = []
    t0 = time.perf_counter()
    a = quasi_k_coeffs(order)
    psi2 = psi_series(4, order)
    for k in range(order + 1):
        expected = psi2.coeffs[k] if k % 2 == 0 else -psi2.coeffs[k]
        ok = a[k] == expected
        reports.append(
            Report(
                "klog-coefficient",
                0,
                {"order": k},
                ok,
                None if ok else f"{render_qscalar(a[k])} != psi coefficient",
                (time.perf_counter() - t0) * 1000,
            )
        )
        t0 = time.perf_counter()

    upsilon = quasi_k_matrix(order)
    b = F - (E * KPRIME).scale(QScalar.q(-2))
    rhs_gen = F - (E * K).scale(QScalar.q(2))
    t0 = time.perf_counter()
    diff = b * upsilon - upsilon * rhs_gen
    resid = diff.truncate_e_degree(2 * order)
    ok = resid.is_zero()
    reports.append(
        Report(
            "klog-intertwiner",
            0,
            {"order": order, "modulo_e_degree": 2 * order + 1},
            ok,
            None if ok else repr(resid),
            (time.perf_counter() - t0) * 1000,
        )
    )

    reports.extend(psi_difference_reports(2, order))
    reports.extend(psi_difference_reports(4, order))

    for k in range(1, order + 1):
        t0 = time.perf_counter()
        lhs = F * RankOneElement.basis(d=2 * k)
        rhs = (
            RankOneElement.basis(d=2 * k) * F
            + (RankOneElement.basis(d=2 * k - 1) * K).scale(
                QScalar.q(2 * (4 * k - 1)) - QScalar.q(-2)
            )
            + (RankOneElement.basis(d=2 * k - 1) * KPRIME).scale(
                QScalar.q(2 * (-4 * k + 1)) - QScalar.q(2)
            )
        )
        ok = lhs == rhs
        reports.append(
            Report(
                "klog-fe-commutation",
                0,
                {"order": k},
                ok,
                None if ok else repr(lhs - rhs),
                (time.perf_counter() - t0) * 1000,
            )
        )
    return reports


# -- tensor square of the rank-one double (for the coproduct derivation) ---------


class RankOneTensor:
    """Element of the tensor square of the rank-one double."""

    __slots__ = ("terms",)

    def __init__(self, terms: dict[tuple[Word, Word], QScalar] | None = None):
        t = {}
        if terms:
            for w, c in terms.items():
                if not c.is_zero():
                    t[w] = c
        self.terms = t

    @staticmethod
    def of(x: RankOneElement, y: RankOneElement) -> "RankOneTensor":
        out = RankOneTensor()
        for w1, c1 in x.terms.items():
            for w2, c2 in y.terms.items():
                out.terms[(w1, w2)] = c1 * c2
        return out

    def __add__(self, other):
        t = dict(self.terms)
        for w, c in other.terms.items():
            s = t.get(w, ZERO) + c
            if s.is_zero():
                t.pop(w, None)
            else:
                t[w] = s
        return RankOneTensor(t)

    def __sub__(self, other):
        return self + other.scale(-ONE)

    def scale(self, c: QScalar):
        return RankOneTensor({w: v * c for w, v in self.terms.items()})

    def __mul__(self, other):
        out = RankOneTensor()
        for (l1, r1), c1 in self.terms.items():
            for (l2, r2), c2 in other.terms.items():
                left = RankOneElement.basis(*l1) * RankOneElement.basis(*l2)
                right = RankOneElement.basis(*r1) * RankOneElement.basis(*r2)
                for wl, cl in left.terms.items():
                    for wr, cr in right.terms.items():
                        w = (wl, wr)
                        s = out.terms.get(w, ZERO) + c1 * c2 * cl * cr
                        if s.is_zero():
                            out.terms.pop(w, None)
                        else:
                            out.terms[w] = s
        return out

    def is_zero(self):
        return not self.terms

    def __eq__(self, other):
        return isinstance(other, RankOneTensor) and self.terms == other.terms


def coproduct_expansion_check() -> bool:
    """Derive Delta(B) = B (x) K' + 1 (x) F - q^(-1) k (x) E K' from the
    coproducts of the double's generators, symbolically."""
    dE = RankOneTensor.of(E, RankOneElement.one()) + RankOneTensor.of(K, E)
    dF = RankOneTensor.of(F, KPRIME) + RankOneTensor.of(RankOneElement.one(), F)
    dKp = RankOneTensor.of(KPRIME, KPRIME)
    lhs = dF - (dE * dKp).scale(QScalar.q(-2))
    b = F - (E * KPRIME).scale(QScalar.q(-2))
    k = K * KPRIME
    rhs = (
        RankOneTensor.of(b, KPRIME)
        + RankOneTensor.of(RankOneElement.one(), F)
        - RankOneTensor.of(k, E * KPRIME).scale(QScalar.q(-2))
    )
    return (lhs - rhs).is_zero()
