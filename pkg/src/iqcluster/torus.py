"""The quantum torus algebra of a seed.

Generators X_i (one per vertex) obey X_i X_j = q^(2 eps_ji) X_j X_i.  An
element is kept in normal form: a finite sum of coefficients times
monomials X_1^{a_1} ... X_m^{a_m} taken in the fixed global vertex order,
stored as a map from exponent vectors to QScalar coefficients.  Reordering
a product into normal form contributes the exact q-power

    X^a * X^b = q^E X^{a+b},   E = sum_{i>j} weight2[j][i] a_i b_j,

which is always an integer power of q because half-integer weights occur
only between frozen vertices whose exponents are integers.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from .errors import (
    NoGluingRecord,
    NotDivisible,
    NotMonomial,
    NoUniformLeadingTerm,
    SeedMismatch,
)
from .quivers import Seed
from .scalars import ONE, QScalar, ZERO

Exponents = tuple  # one integer per vertex


class TorusElement:
    """Normal-form noncommutative Laurent polynomial over a seed."""

    __slots__ = ("seed", "terms")

    def __init__(self, seed: Seed, terms: Mapping[Exponents, QScalar] | None = None):
        self.seed = seed
        t: dict[Exponents, QScalar] = {}
        if terms:
            for e, c in terms.items():
                if not c.is_zero():
                    t[e] = c
        self.terms = t

    # -- constructors ------------------------------------------------------

    @staticmethod
    def zero(seed: Seed) -> "TorusElement":
        return TorusElement(seed)

    @staticmethod
    def one(seed: Seed) -> "TorusElement":
        return TorusElement(seed, {(0,) * seed.size: ONE})

    @staticmethod
    def scalar(seed: Seed, c: QScalar) -> "TorusElement":
        return TorusElement(seed, {(0,) * seed.size: c})

    @staticmethod
    def generator(seed: Seed, v: int, power: int = 1) -> "TorusElement":
        e = [0] * seed.size
        e[v] = power
        return TorusElement(seed, {tuple(e): ONE})

    @staticmethod
    def monomial(seed: Seed, exps: Exponents, coeff: QScalar = ONE) -> "TorusElement":
        return TorusElement(seed, {tuple(exps): coeff})

    # -- helpers ------------------------------------------------------------

    def _require_same_seed(self, other: "TorusElement"):
        if self.seed is not other.seed and self.seed != other.seed:
            raise SeedMismatch("torus elements live over different seeds")

    def is_zero(self) -> bool:
        return not self.terms

    def term_count(self) -> int:
        return len(self.terms)

    def support(self) -> list[Exponents]:
        return sorted(self.terms)

    def coefficient(self, exps: Exponents) -> QScalar:
        return self.terms.get(tuple(exps), ZERO)

    def coefficients(self) -> Iterable[QScalar]:
        return self.terms.values()

    # -- ring operations -----------------------------------------------------

    def __add__(self, other: "TorusElement") -> "TorusElement":
        self._require_same_seed(other)
        t = dict(self.terms)
        for e, c in other.terms.items():
            s = t.get(e)
            if s is None:
                t[e] = c
            else:
                s = s + c
                if s.is_zero():
                    del t[e]
                else:
                    t[e] = s
        out = TorusElement.__new__(TorusElement)
        out.seed = self.seed
        out.terms = t
        return out

    def __neg__(self) -> "TorusElement":
        out = TorusElement.__new__(TorusElement)
        out.seed = self.seed
        out.terms = {e: -c for e, c in self.terms.items()}
        return out

    def __sub__(self, other: "TorusElement") -> "TorusElement":
        return self + (-other)

    def reorder_power(self, a: Exponents, b: Exponents) -> int:
        """Doubled q-exponent of the correction in X^a X^b = q^E X^{a+b}."""
        w = self.seed.weight2
        e2 = 0
        nz_b = [(j, bj) for j, bj in enumerate(b) if bj]
        for i, ai in enumerate(a):
            if not ai:
                continue
            row = w[i]
            for j, bj in nz_b:
                if j < i:
                    e2 += row[j] * ai * bj  # weight2[j][i] a_i b_j, sign via skew
        return -2 * e2  # row[j] = w[i][j] = -w[j][i]

    def __mul__(self, other):
        if isinstance(other, QScalar):
            return self.scale(other)
        self._require_same_seed(other)
        t: dict[Exponents, QScalar] = {}
        for a, ca in self.terms.items():
            for b, cb in other.terms.items():
                e = tuple(x + y for x, y in zip(a, b))
                c = (ca * cb).shift_q(self.reorder_power(a, b))
                s = t.get(e)
                if s is None:
                    if not c.is_zero():
                        t[e] = c
                else:
                    s = s + c
                    if s.is_zero():
                        del t[e]
                    else:
                        t[e] = s
        out = TorusElement.__new__(TorusElement)
        out.seed = self.seed
        out.terms = t
        return out

    def __rmul__(self, other):
        if isinstance(other, QScalar):
            return self.scale(other)
        return NotImplemented

    def scale(self, c: QScalar) -> "TorusElement":
        if c.is_zero():
            return TorusElement.zero(self.seed)
        out = TorusElement.__new__(TorusElement)
        out.seed = self.seed
        out.terms = {e: v * c for e, v in self.terms.items()}
        return out

    def __pow__(self, n: int) -> "TorusElement":
        if n < 0:
            return self.monomial_inverse() ** (-n)
        out = TorusElement.one(self.seed)
        for _ in range(n):
            out = out * self
        return out

    def commutator(self, other: "TorusElement") -> "TorusElement":
        return self * other - other * self

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, TorusElement)
            and self.seed == other.seed
            and self.terms == other.terms
        )

    def __hash__(self):
        return hash((self.seed, tuple(sorted((e, c) for e, c in self.terms.items()))))

    def __repr__(self):
        return f"TorusElement({render_element(self)})"

    # -- star structure ------------------------------------------------------

    def star_power(self, a: Exponents) -> int:
        """Doubled q-exponent E2 with *(X^a) = q^(E2/2) X^a."""
        w = self.seed.weight2
        nz = [(i, ai) for i, ai in enumerate(a) if ai]
        e2 = 0
        for s, (i, ai) in enumerate(nz):
            for j, aj in nz[s + 1 :]:
                e2 += w[i][j] * ai * aj
        return 2 * e2

    def star(self) -> "TorusElement":
        """The anti-automorphism fixing the generators and sending q to 1/q."""
        out = TorusElement.__new__(TorusElement)
        out.seed = self.seed
        out.terms = {
            e: c.bar().shift_q(self.star_power(e)) for e, c in self.terms.items()
        }
        return out

    def renormalize(self) -> "TorusElement":
        """The unique q^(Z/2)-multiple of a monomial fixed by star.

        For a monomial r q^(s/2) X^a (r rational) the result is
        r q^(E(a)/2) X^a where *(X^a) = q^(E(a)/2) ... q^(E(a)) X^a; the
        correction exponent may be a half-integer for seeds with
        half-integer frozen weights, which is permitted.
        """
        if len(self.terms) != 1:
            raise NotMonomial("renormalize applies to single-term elements")
        ((e, c),) = self.terms.items()
        m = c.as_q_monomial()
        if m is None:
            raise NotMonomial("coefficient is not a rational multiple of a q-power")
        r, _ = m
        # star_power is the doubled exponent of *(X^a)/X^a; the star-fixed
        # multiple carries half of it (possibly a half-integer power of q).
        coeff = QScalar.from_fraction(r).shift_q(self.star_power(e) // 2)
        return TorusElement(self.seed, {e: coeff})

    def is_star_fixed(self) -> bool:
        return self.star() == self

    # -- monomial utilities ----------------------------------------------------

    def as_monomial(self) -> tuple[Exponents, QScalar]:
        if len(self.terms) != 1:
            raise NotMonomial("element is not a monomial")
        ((e, c),) = self.terms.items()
        return e, c

    def monomial_inverse(self) -> "TorusElement":
        e, c = self.as_monomial()
        inv = tuple(-x for x in e)
        coeff = c.inverse().shift_q(-self.reorder_power(e, inv))
        return TorusElement(self.seed, {inv: coeff})

    def leading_term(self) -> tuple[Exponents, QScalar]:
        """The unique term whose exponent vector is componentwise <= all
        others; the element then factors as c X^a (1 + R) with R supported
        on nonnegative shifts."""
        if not self.terms:
            raise NoUniformLeadingTerm("zero element has no leading term")
        exps = list(self.terms)
        best = exps[0]
        for e in exps[1:]:
            best = tuple(min(x, y) for x, y in zip(best, e))
        if best not in self.terms:
            raise NoUniformLeadingTerm(
                "no single term divides every term of the element"
            )
        return best, self.terms[best]

    # -- substitution -----------------------------------------------------------

    def substitute(
        self, target: Seed, images: Sequence["TorusElement"]
    ) -> "TorusElement":
        """Algebra-map image given per-generator images in a target torus.

        Negative exponents require the corresponding image to be an
        invertible monomial.
        """
        out = TorusElement.zero(target)
        for e, c in self.terms.items():
            acc = TorusElement.scalar(target, c)
            for v, av in enumerate(e):
                if av == 0:
                    continue
                img = images[v]
                if av < 0:
                    img = img.monomial_inverse()
                    av = -av
                for _ in range(av):
                    acc = acc * img
            out = out + acc
        return out


def qcommutator(f: TorusElement, g: TorusElement) -> TorusElement:
    """(q^(1/2) f g - q^(-1/2) g f) / (q - q^(-1)), exact.

    Every coefficient of the numerator must be divisible by q - q^(-1)
    inside Z[q^(1/2), q^(-1/2)]; otherwise NotDivisible is raised.
    """
    num = f * g * QScalar.q(1) - g * f * QScalar.q(-1)
    den = QScalar.q(2) - QScalar.q(-2)
    out: dict[Exponents, QScalar] = {}
    for e, c in num.terms.items():
        d = c / den
        if not d.is_integral():
            raise NotDivisible(
                f"coefficient {c!r} is not divisible by q - q^(-1)"
            )
        out[e] = d
    return TorusElement(f.seed, out)


def ren_product(seed: Seed, vertices: Sequence[int], sign: int = 1) -> TorusElement:
    """Renormalized monomial of the product of the given generators
    (with multiplicity): the unique star-fixed q-multiple."""
    e = [0] * seed.size
    for v in vertices:
        e[v] += 1
    base = TorusElement.monomial(
        seed, tuple(e), QScalar.from_int(sign)
    )
    return base.renormalize()


def ren_exponents(seed: Seed, exps: Exponents, sign: int = 1) -> TorusElement:
    base = TorusElement.monomial(seed, tuple(exps), QScalar.from_int(sign))
    return base.renormalize()


# -- rendering ---------------------------------------------------------------


def render_term(
    seed: Seed, exps: Exponents, coeff: QScalar, names: Mapping[int, str] | None = None
) -> str:
    from .scalars import render_qscalar

    factors = []
    for v, a in enumerate(exps):
        if a == 0:
            continue
        name = names[v] if names else seed.labels[v]
        factors.append(name if a == 1 else f"{name}^{a}" if a > 0 else f"{name}^({a})")
    body = "*".join(factors)
    cs = render_qscalar(coeff)
    if not body:
        return cs
    if cs == "1":
        return body
    if cs == "-1":
        return f"-{body}"
    if " " in cs or "/" in cs and not cs.startswith("("):
        cs = f"({cs})"
    return f"{cs}*{body}"


def render_element(
    f: TorusElement, names: Mapping[int, str] | None = None
) -> str:
    if not f.terms:
        return "0"
    parts = []
    for e in sorted(f.terms):
        s = render_term(f.seed, e, f.terms[e], names)
        if parts and not s.startswith("-"):
            parts.append(f"+ {s}")
        elif parts:
            parts.append(f"- {s[1:]}")
        else:
            parts.append(s)
    return " ".join(parts)


# -- tensor products -----------------------------------------------------------


class TensorElement:
    """Element of T_A (x) T_B for two seeds, in bi-normal form."""

    __slots__ = ("seed_a", "seed_b", "terms")

    def __init__(
        self,
        seed_a: Seed,
        seed_b: Seed,
        terms: Mapping[tuple[Exponents, Exponents], QScalar] | None = None,
    ):
        self.seed_a = seed_a
        self.seed_b = seed_b
        t = {}
        if terms:
            for e, c in terms.items():
                if not c.is_zero():
                    t[e] = c
        self.terms = t

    @staticmethod
    def of(x: TorusElement, y: TorusElement) -> "TensorElement":
        out = TensorElement(x.seed, y.seed)
        for a, ca in x.terms.items():
            for b, cb in y.terms.items():
                out.terms[(a, b)] = ca * cb
        return out

    def __add__(self, other: "TensorElement") -> "TensorElement":
        t = dict(self.terms)
        for e, c in other.terms.items():
            s = t.get(e)
            if s is None:
                t[e] = c
            else:
                s = s + c
                if s.is_zero():
                    del t[e]
                else:
                    t[e] = s
        return TensorElement(self.seed_a, self.seed_b, t)

    def __neg__(self):
        return TensorElement(
            self.seed_a, self.seed_b, {e: -c for e, c in self.terms.items()}
        )

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, QScalar):
            return TensorElement(
                self.seed_a, self.seed_b, {e: c * other for e, c in self.terms.items()}
            )
        proto_a = TorusElement.zero(self.seed_a)
        proto_b = TorusElement.zero(self.seed_b)
        t: dict[tuple[Exponents, Exponents], QScalar] = {}
        for (a1, b1), c1 in self.terms.items():
            for (a2, b2), c2 in other.terms.items():
                e = (
                    tuple(x + y for x, y in zip(a1, a2)),
                    tuple(x + y for x, y in zip(b1, b2)),
                )
                corr = proto_a.reorder_power(a1, a2) + proto_b.reorder_power(b1, b2)
                c = (c1 * c2).shift_q(corr)
                s = t.get(e)
                if s is None:
                    if not c.is_zero():
                        t[e] = c
                else:
                    s = s + c
                    if s.is_zero():
                        del t[e]
                    else:
                        t[e] = s
        return TensorElement(self.seed_a, self.seed_b, t)

    def is_zero(self) -> bool:
        return not self.terms

    def term_count(self) -> int:
        return len(self.terms)

    def __eq__(self, other):
        return (
            isinstance(other, TensorElement)
            and self.seed_a == other.seed_a
            and self.seed_b == other.seed_b
            and self.terms == other.terms
        )

    def __repr__(self):
        return f"TensorElement({len(self.terms)} terms)"


def tensor_embed(f: TorusElement, seed_a: Seed, seed_b: Seed) -> TensorElement:
    """Embedding T_Q -> T_{Q1} (x) T_{Q2} for an amalgamated seed.

    Generators map to X_i (x) X_{phi(i)}, X_i (x) 1 or 1 (x) X_{phi(i)}
    according to the glue record of ``f.seed``; the map is an algebra
    homomorphism, and the q-power normal-form corrections on both sides are
    accumulated exactly.
    """
    seed = f.seed
    if seed.glue is None:
        raise NoGluingRecord("seed carries no gluing record")
    one_a = (0,) * seed_a.size
    one_b = (0,) * seed_b.size
    gen_images = []
    for a, b in seed.glue:
        ea = list(one_a)
        eb = list(one_b)
        if a is not None:
            ea[a] = 1
        if b is not None:
            eb[b] = 1
        gen_images.append(
            TensorElement(seed_a, seed_b, {(tuple(ea), tuple(eb)): ONE})
        )
    out = TensorElement(seed_a, seed_b)
    for e, c in f.terms.items():
        acc = TensorElement(seed_a, seed_b, {(one_a, one_b): c})
        for v, av in enumerate(e):
            if av == 0:
                continue
            img = gen_images[v]
            if av > 0:
                for _ in range(av):
                    acc = acc * img
            else:
                ((ia, ib),) = img.terms
                inv_a = TorusElement.monomial(seed_a, ia).monomial_inverse()
                inv_b = TorusElement.monomial(seed_b, ib).monomial_inverse()
                inv = TensorElement.of(inv_a, inv_b)
                for _ in range(-av):
                    acc = acc * inv
        out = out + acc
    return out
