"""Cluster mutation on torus elements and quasi-cluster automorphisms.

A mutation at an unfrozen vertex k re-expresses an element of the torus of
one seed in the torus of the mutated seed.  Generators substitute as

    X_k -> X_k^(-1),
    X_i -> X_i * prod_{r=1..eps'_{ki}} (1 + q^(2r-1) X_k^(-1))^(-1)   (eps' >= 0)
    X_i -> X_i * prod_{r=1..-eps'_{ki}} (1 + q^(2r-1) X_k)            (eps' <= 0)

with eps' the weights of the chart the result lives in.  All binomial
factors lie in the single variable X_k, so they commute with each other;
moving a generator past them rescales X_k by an integer power of q.  The
image of an element is therefore one torus element times the inverse of a
single Laurent polynomial in X_k, and clearing that denominator is an exact
division along the X_k-degree axis; a nonzero remainder certifies that the
image is not Laurent in the target chart.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import BadIndex, NotDivisible, NotLaurent
from .quivers import Seed, coxeter_permutation, mutate_seed
from .reports import Report
from .scalars import ONE, QScalar, ZERO
from .torus import TorusElement

# -- denominators in a single variable ----------------------------------------


def _expand_binomials(factors) -> dict[int, QScalar]:
    """Expand prod (1 + q^(s2/2) X_k^e) as {X_k-degree: coefficient}."""
    poly = {0: ONE}
    for _, e, s2 in factors:
        new: dict[int, QScalar] = {}
        for m, c in poly.items():
            new[m] = new.get(m, ZERO) + c
            new[m + e] = new.get(m + e, ZERO) + c.shift_q(s2)
        poly = {m: c for m, c in new.items() if not c.is_zero()}
    return poly


def _divide_by_xk_poly(
    num: TorusElement, k: int, den: dict[int, QScalar]
) -> TorusElement:
    """Exact division Q with Q * den = num, den scalar-coefficient in X_k.

    Grouping the terms of num by their exponents away from k, each group
    divides independently: moving X_k^e across the group's residual monomial
    rescales it by a fixed power of q, so the division is an ordinary
    univariate convolution with a twisted copy of den.
    """
    seed = num.seed
    if not den:
        raise ZeroDivisionError("division by zero denominator")
    unit = tuple(1 if v == k else 0 for v in range(seed.size))
    groups: dict[tuple, dict[int, QScalar]] = {}
    for e, c in num.terms.items():
        cls = tuple(0 if v == k else x for v, x in enumerate(e))
        groups.setdefault(cls, {})[e[k]] = c
    out: dict[tuple, QScalar] = {}
    proto = TorusElement.zero(seed)
    for cls, profile in groups.items():
        kappa = proto.reorder_power(cls, unit)  # doubled q-shift per X_k
        tden = {e: c.shift_q(kappa * e) for e, c in den.items()}
        lo_d, hi_d = min(tden), max(tden)
        lead = tden[lo_d]
        top = max(profile)
        prof = dict(profile)
        while prof:
            m = min(prof)
            mq = m - lo_d
            if mq + hi_d > top:
                raise NotLaurent(
                    "exact division failed: the image is not Laurent"
                )
            qc = prof.pop(m) / lead
            for dm, dc in tden.items():
                if dm == lo_d:
                    continue
                t = mq + dm
                v = prof.get(t, ZERO) - qc * dc
                if v.is_zero():
                    prof.pop(t, None)
                else:
                    prof[t] = v
            e = list(cls)
            e[k] = mq
            out[tuple(e)] = qc
    return TorusElement(seed, out)


@dataclass
class FactoredElement:
    """numerator * prod(1 + q^(s2/2) X_k^e)^(-1) over a seed.

    Denominator factors are recorded as (k, e, s2) with e = +-1 and s2 a
    doubled q-power; within one mutation image they all share the vertex k
    and commute, and the inverse sits on the right of the numerator.
    """

    seed: Seed
    numerator: TorusElement
    denominators: list[tuple[int, int, int]]

    def clear(self) -> TorusElement:
        if not self.denominators:
            return self.numerator
        k = self.denominators[0][0]
        if any(kk != k for kk, _, _ in self.denominators):
            raise NotDivisible("denominator factors must share one vertex")
        return _divide_by_xk_poly(
            self.numerator, k, _expand_binomials(self.denominators)
        )


# -- one mutation -------------------------------------------------------------


def mutate_element_factored(f: TorusElement, k: int) -> FactoredElement:
    """Image of f in the chart mutated at k, denominators not yet cleared."""
    src = f.seed
    tgt = mutate_seed(src, k)
    m = src.size
    w = tgt.weight2

    # per-generator baggage in X_k, from the target weights
    baggage: list[list[tuple[int, int, int]]] = []
    bag_sign: list[int] = []
    for i in range(m):
        eps2 = w[k][i]
        if i == k or eps2 == 0:
            baggage.append([])
            bag_sign.append(1)
        elif eps2 > 0:
            # product of (1 + q^(2r-1) X_k^(-1))^(-1), r = 1..eps'
            baggage.append([(k, -1, 2 * (2 * r - 1)) for r in range(1, eps2 // 2 + 1)])
            bag_sign.append(-1)
        else:
            baggage.append([(k, 1, 2 * (2 * r - 1)) for r in range(1, -eps2 // 2 + 1)])
            bag_sign.append(1)

    # first pass: per-term monomial prefix and pending fraction in X_k
    per_term = []
    den_count: dict[tuple[int, int, int], int] = {}
    proto = TorusElement.zero(tgt)
    for exps, coeff in f.terms.items():
        acc = [0] * m
        acc_c = coeff
        num_fac: list[tuple[int, int, int]] = []  # commuting binomials in X_k
        den_fac: list[tuple[int, int, int]] = []

        for j in range(m):
            a = exps[j]
            if a == 0:
                continue
            # move X_j^a left past all pending factors: each factor
            # (1 + q^(s2/2) X_k^e) becomes (1 + q^(s2/2 + 2 a eps'_{jk} e) X_k^e)
            tw = 2 * a * w[j][k]  # doubled exponent of the X_k rescaling
            if tw:
                num_fac = [(kk, e, s2 + tw * e) for kk, e, s2 in num_fac]
                den_fac = [(kk, e, s2 + tw * e) for kk, e, s2 in den_fac]
            # multiply the accumulated monomial by the image head
            head = -a if j == k else a
            acc_c = acc_c.shift_q(proto.reorder_power(tuple(acc), _unit(m, j, head)))
            acc[j] += head
            # append the baggage of X_j, once per unit power
            if baggage[j]:
                if a > 0:
                    # (X_j D_j)^a = X_j^a * prod_t D_j twisted by the copies
                    # of X_j still to the right of the t-th baggage block
                    for t in range(a):
                        tw2 = 2 * (a - 1 - t) * w[j][k]
                        fs = [(kk, e, s2 + tw2 * e) for kk, e, s2 in baggage[j]]
                        if bag_sign[j] > 0:
                            num_fac.extend(fs)
                        else:
                            den_fac.extend(fs)
                else:
                    # (D_j^(-1) X_j^(-1))^|a| = X_j^a * prod_t D_j^(-1) with
                    # the t-th block crossed by t+1 copies of X_j^(-1)
                    for t in range(-a):
                        tw2 = 2 * (a + t) * w[j][k]
                        fs = [(kk, e, s2 + tw2 * e) for kk, e, s2 in baggage[j]]
                        if bag_sign[j] > 0:
                            den_fac.extend(fs)
                        else:
                            num_fac.extend(fs)
        per_term.append((tuple(acc), acc_c, num_fac, den_fac))
        seen: dict[tuple[int, int, int], int] = {}
        for fac in den_fac:
            seen[fac] = seen.get(fac, 0) + 1
        for fac, cnt in seen.items():
            den_count[fac] = max(den_count.get(fac, 0), cnt)

    # second pass: bring every term over the common denominator and expand
    common = []
    for fac, cnt in sorted(den_count.items()):
        common.extend([fac] * cnt)
    numerator = TorusElement.zero(tgt)
    for acc, acc_c, num_fac, den_fac in per_term:
        fill = list(num_fac)
        remaining = dict(den_count)
        for fac in den_fac:
            remaining[fac] -= 1
        for fac, cnt in sorted(remaining.items()):
            fill.extend([fac] * cnt)
        poly = _expand_binomials(fill)
        for deg, c in poly.items():
            e = list(acc)
            coeff = (acc_c * c).shift_q(
                proto.reorder_power(tuple(e), _unit(m, k, deg))
            )
            e[k] += deg
            numerator = numerator + TorusElement.monomial(tgt, tuple(e), coeff)
    return FactoredElement(tgt, numerator, common)


def _unit(m: int, j: int, a: int) -> tuple:
    return tuple(a if v == j else 0 for v in range(m))


def mutate_element(f: TorusElement, k: int) -> TorusElement:
    """Image of f in the chart mutated at k; raises NotLaurent if the
    denominators do not divide out exactly."""
    return mutate_element_factored(f, k).clear()


def one_step_laurent_check(f: TorusElement) -> list[Report]:
    """Attempt a single mutation at every unfrozen vertex; failures are
    reported, not raised."""
    reports = []
    for k in f.seed.unfrozen():
        try:
            mutate_element(f, k)
            reports.append(Report("one-step-laurent", 0, {"vertex": k}, True))
        except NotLaurent:
            reports.append(
                Report(
                    "one-step-laurent",
                    0,
                    {"vertex": k},
                    False,
                    witness=f"mutation at vertex {k} leaves the Laurent ring",
                )
            )
    return reports


# -- general exact division (for identity checking) ---------------------------


def _dominant_term(f: TorusElement):
    exps = list(f.terms)
    best = exps[0]
    for e in exps[1:]:
        best = tuple(min(x, y) for x, y in zip(best, e))
    return best if best in f.terms else None


def divide_right(f: TorusElement, u: TorusElement) -> TorusElement:
    """g with g * u = f, for u with a dominant (componentwise minimal) term.

    The quotient is built by eliminating dominance-minimal terms; the result
    is verified by re-multiplication, and NotDivisible is raised otherwise.
    """
    return _divide(f, u, right=True)


def divide_left(u: TorusElement, f: TorusElement) -> TorusElement:
    """g with u * g = f."""
    return _divide(f, u, right=False)


def _divide(f: TorusElement, u: TorusElement, right: bool) -> TorusElement:
    if u.is_zero():
        raise ZeroDivisionError("division by zero element")
    seed = f.seed
    du = _dominant_term(u)
    if du is None:
        raise NotDivisible("divisor has no dominant term")
    cu = u.terms[du]
    rem = f
    budget = 64 * (len(f.terms) + 1) * (len(u.terms) + 1) + 256
    quot = TorusElement.zero(seed)
    proto = TorusElement.zero(seed)
    while not rem.is_zero():
        budget -= 1
        if budget < 0:
            raise NotDivisible("division did not terminate within its budget")
        dr = _dominant_term(rem)
        if dr is None:
            # fall back to the lexicographically smallest term
            dr = min(rem.terms)
        e = tuple(x - y for x, y in zip(dr, du))
        if right:
            corr = proto.reorder_power(e, du)
            c = rem.terms[dr] / cu.shift_q(corr)
            t = TorusElement.monomial(seed, e, c)
            rem = rem - t * u
        else:
            corr = proto.reorder_power(du, e)
            c = rem.terms[dr] / cu.shift_q(corr)
            t = TorusElement.monomial(seed, e, c)
            rem = rem - u * t
        quot = quot + t
    check = quot * u if right else u * quot
    if not (check - f).is_zero():
        raise NotDivisible("division produced a wrong quotient")
    return quot


# -- chains: products of Laurent elements and their inverses -------------------


def chain_inverse(chain: list[tuple[TorusElement, int]]) -> list:
    return [(g, -s) for g, s in reversed(chain)]


def chain_reduce(chain: list[tuple[TorusElement, int]]) -> TorusElement:
    """Multiply out a chain of factors g^(+-1), absorbing inverses by exact
    division wherever an adjacent pair divides exactly.  Progress is always
    verified by re-multiplication, so a successful reduction is a proof of
    the product's value; NotDivisible signals that no absorption order
    succeeded."""
    work: list[tuple[TorusElement, int]] = []
    for g, s in chain:
        # invertible monomials absorb immediately
        if s == -1 and len(g.terms) == 1:
            g, s = g.monomial_inverse(), 1
        if s == -1 and work and work[-1][1] == -1:
            h, _ = work.pop()
            work.append((g * h, -1))
        elif s == 1 and work and work[-1][1] == 1:
            h, _ = work.pop()
            work.append((h * g, 1))
        else:
            work.append((g, s))
    while len(work) > 1:
        progress = False
        for idx in range(len(work) - 1):
            (g, sg), (h, sh) = work[idx], work[idx + 1]
            merged = None
            if sg == 1 and sh == 1:
                merged = (g * h, 1)
            elif sg == -1 and sh == -1:
                merged = (h * g, -1)
            else:
                try:
                    if sg == 1 and sh == -1:
                        merged = (divide_right(g, h), 1)
                    else:
                        merged = (divide_left(g, h), 1)
                except NotDivisible:
                    merged = None
            if merged is not None:
                work[idx : idx + 2] = [merged]
                progress = True
                break
        if not progress:
            raise NotDivisible(
                "chain did not reduce: no adjacent pair divides exactly"
            )
    g, s = work[0]
    return g if s == 1 else g.monomial_inverse()


def mutate_chain(chain: list[tuple[TorusElement, int]], k: int) -> list:
    """Push a chain through one mutation, factor by factor; no divisions
    are performed, so non-Laurent stages are representable."""
    out = []
    for g, s in chain:
        fe = mutate_element_factored(g, k)
        den_factors = fe.denominators
        den_poly = (
            None
            if not den_factors
            else TorusElement(
                fe.seed,
                {
                    _unit(fe.seed.size, k, deg): c
                    for deg, c in _expand_binomials(den_factors).items()
                },
            )
        )
        if s == 1:
            out.append((fe.numerator, 1))
            if den_poly is not None:
                out.append((den_poly, -1))
        else:
            if den_poly is not None:
                out.append((den_poly, 1))
            out.append((fe.numerator, -1))
    return out


# -- quasi-cluster maps ---------------------------------------------------------


class Atom:
    source: Seed
    target: Seed

    def apply(self, f: TorusElement) -> TorusElement:  # pragma: no cover
        raise NotImplementedError

    def apply_chain(self, chain):  # default: strict factors
        out = []
        for g, s in chain:
            out.append((self.apply(g), s))
        return out

    def inverse(self) -> "Atom":  # pragma: no cover
        raise NotImplementedError


@dataclass
class Mutation(Atom):
    source: Seed
    vertex: int

    def __post_init__(self):
        self.target = mutate_seed(self.source, self.vertex)

    def apply(self, f):
        if f.seed != self.source:
            raise NotLaurent("element lives over the wrong chart")
        return mutate_element(f, self.vertex)

    def apply_chain(self, chain):
        return mutate_chain(chain, self.vertex)

    def inverse(self):
        return Mutation(self.target, self.vertex)

    def describe(self):
        return f"mutate@{self.source.labels[self.vertex]}"


@dataclass
class Permutation(Atom):
    source: Seed
    perm: tuple  # perm[v] = image vertex

    def __post_init__(self):
        m = self.source.size
        w = [[0] * m for _ in range(m)]
        labels = [""] * m
        for i in range(m):
            labels[self.perm[i]] = self.source.labels[i]
            for j in range(m):
                w[self.perm[i]][self.perm[j]] = self.source.weight2[i][j]
        coords = {
            key: (
                tuple(self.perm[x] for x in v) if isinstance(v, tuple) else self.perm[v]
            )
            for key, v in self.source.coords.items()
        }
        self.target = Seed(
            labels, {self.perm[v] for v in self.source.frozen}, w, coords
        )

    def apply(self, f):
        out = {}
        m = self.source.size
        for e, c in f.terms.items():
            img = [0] * m
            for v, a in enumerate(e):
                img[self.perm[v]] = a
            # reorder the relabelled product into the target normal order
            corr = 0
            nz = [(v, a) for v, a in enumerate(e) if a]
            for s, (v, a) in enumerate(nz):
                for w_, b in nz[s + 1 :]:
                    if self.perm[v] > self.perm[w_]:
                        corr += 2 * self.target.weight2[self.perm[w_]][self.perm[v]] * a * b
            out_e = tuple(img)
            c2 = c.shift_q(corr)
            out[out_e] = out.get(out_e, ZERO) + c2
        return TorusElement(self.target, out)

    def inverse(self):
        inv = [0] * len(self.perm)
        for v, w_ in enumerate(self.perm):
            inv[w_] = v
        return Permutation(self.target, tuple(inv))

    def describe(self):
        moved = [
            f"{self.source.labels[v]}->{self.source.labels[self.perm[v]]}"
            for v in range(len(self.perm))
            if self.perm[v] != v
        ]
        return "swap(" + ",".join(moved) + ")" if moved else "id"


@dataclass
class MonomialMap(Atom):
    """Generator-wise map X_v -> coeff_v X^{E_v} into a target torus.

    The images must q-commute exactly as the source generators do; this is
    validated at construction time.
    """

    source: Seed
    target: Seed
    images: list  # list[TorusElement] over target, one monomial each

    def __post_init__(self):
        if len(self.images) != self.source.size:
            raise BadIndex("one image per source generator is required")
        for img in self.images:
            img.as_monomial()  # raises NotMonomial otherwise
        for v in range(self.source.size):
            for w_ in range(v + 1, self.source.size):
                lhs = self.images[v] * self.images[w_]
                rhs = (self.images[w_] * self.images[v]).scale(
                    QScalar.q(2 * self.source.weight2[w_][v])
                )
                if lhs != rhs:
                    raise NotDivisible(
                        "monomial map does not respect the source relations "
                        f"between vertices {v} and {w_}"
                    )

    def apply(self, f):
        if f.seed != self.source:
            raise NotLaurent("element lives over the wrong chart")
        return f.substitute(self.target, self.images)

    def inverse(self):
        m = self.source.size
        rows = []
        coeffs = []
        for img in self.images:
            e, c = img.as_monomial()
            rows.append(list(e))
            coeffs.append(c)
        inv_rows = _integer_matrix_inverse(rows)
        # candidate inverse with unit coefficients, then fix scalars so that
        # inverse(image(X_v)) = X_v
        cand = [
            TorusElement.monomial(self.source, tuple(r)) for r in inv_rows
        ]
        fix = MonomialMap.__new__(MonomialMap)
        fix.source = self.target
        fix.target = self.source
        fix.images = cand
        scale = []
        for v in range(m):
            back = fix.apply(self.images[v])
            e, c = back.as_monomial()
            if e != _unit(m, v, 1):
                raise NotDivisible("monomial map is not invertible")
            scale.append(c)
        # scale[v] = prod over u of d_u^{E_vu} must become 1: solve for d
        d = _solve_monomial_scalars(rows, inv_rows, scale)
        images = [img.scale(d[u]) for u, img in enumerate(cand)]
        return MonomialMap(self.target, self.source, images)

    def describe(self):
        from .torus import render_element

        moved = []
        for v, img in enumerate(self.images):
            e, c = img.as_monomial()
            if e != _unit(self.source.size, v, 1) or not c.is_one():
                moved.append(f"{self.source.labels[v]}->{render_element(img)}")
        return "monomial(" + "; ".join(moved) + ")"


def _integer_matrix_inverse(rows: list[list[int]]) -> list[list[int]]:
    m = len(rows)
    a = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(m)] for i, row in enumerate(rows)]
    for col in range(m):
        piv = next((r for r in range(col, m) if a[r][col]), None)
        if piv is None:
            raise NotDivisible("monomial map exponent matrix is singular")
        a[col], a[piv] = a[piv], a[col]
        inv = 1 / a[col][col]
        a[col] = [x * inv for x in a[col]]
        for r in range(m):
            if r != col and a[r][col]:
                f = a[r][col]
                a[r] = [x - f * y for x, y in zip(a[r], a[col])]
    out = []
    for r in range(m):
        row = a[r][m:]
        if any(x.denominator != 1 for x in row):
            raise NotDivisible("monomial map is not invertible over the integers")
        out.append([int(x) for x in row])
    return out


def _solve_monomial_scalars(rows, inv_rows, scale):
    """Solve prod_u d_u^{E[v][u]} = scale[v]^(-1) for +-q-power scalars d."""
    m = len(rows)
    sgn = []
    e2s = []
    for c in scale:
        mono = c.as_q_monomial()
        if mono is None or abs(mono[0]) != 1:
            raise NotDivisible("monomial map coefficients must be +-q-powers")
        sgn.append(0 if mono[0] == 1 else 1)
        e2s.append(mono[1])
    d = []
    for u in range(m):
        t = -sum(inv_rows[u][v] * e2s[v] for v in range(m))
        s = sum(inv_rows[u][v] * sgn[v] for v in range(m)) % 2
        d.append(QScalar.q(t, -1 if s else 1))
    return d


class QuasiClusterMap:
    """Composition of mutations, vertex permutations and monomial maps.

    Atoms are applied first-to-last; sources and targets must chain, which
    is checked at construction time.
    """

    def __init__(self, atoms: list[Atom], name: str = ""):
        if not atoms:
            raise BadIndex("a quasi-cluster map needs at least one atom")
        for a, b in zip(atoms, atoms[1:]):
            if a.target != b.source:
                raise NotLaurent("atom charts do not chain")
        self.atoms = atoms
        self.name = name

    @property
    def source(self) -> Seed:
        return self.atoms[0].source

    @property
    def target(self) -> Seed:
        return self.atoms[-1].target

    def apply(self, f: TorusElement) -> TorusElement:
        for stage, atom in enumerate(self.atoms):
            try:
                f = atom.apply(f)
            except NotLaurent as exc:
                raise NotLaurent(
                    f"stage {stage} ({atom.describe()}) is not Laurent", stage
                ) from exc
        return f

    def apply_chain(self, chain):
        for atom in self.atoms:
            chain = atom.apply_chain(chain)
        return chain

    def then(self, other: "QuasiClusterMap") -> "QuasiClusterMap":
        return QuasiClusterMap(
            self.atoms + other.atoms, f"{other.name} o {self.name}"
        )

    def inverse(self) -> "QuasiClusterMap":
        return QuasiClusterMap(
            [a.inverse() for a in reversed(self.atoms)], f"({self.name})^-1"
        )

    def __repr__(self):
        return f"QuasiClusterMap({self.name or len(self.atoms)} atoms)"


def identity_map(seed: Seed) -> QuasiClusterMap:
    return QuasiClusterMap(
        [Permutation(seed, tuple(range(seed.size)))], "id"
    )


def apply_quasi_cluster(qmap: QuasiClusterMap, f: TorusElement) -> TorusElement:
    return qmap.apply(f)


# -- the braid composite and the rotation ---------------------------------------


_BRAID_CACHE: dict[tuple[int, int], "QuasiClusterMap"] = {}
_COXETER_CACHE: dict[int, "QuasiClusterMap"] = {}


def braid_cl(n: int, i: int) -> QuasiClusterMap:
    """The quasi-cluster braid map of index i on the torus of Sigma_n:
    the palindromic mutation sequence at X_{i,2}..X_{i,n}..X_{i,2}, the swap
    of X_{i,1} with X_{i,n}, then the monomial renormalization of the frozen
    column."""
    cached = _BRAID_CACHE.get((n, i))
    if cached is not None:
        return cached
    from .embedding import build_generators

    if not 1 <= i <= n:
        raise BadIndex(f"braid index {i} out of range for rank {n}")
    tab = build_generators(n)
    seed = tab.seed
    atoms: list[Atom] = []
    cur = seed
    order = list(range(2, n + 1)) + list(range(n - 1, 1, -1))
    for t in order:
        mut = Mutation(cur, seed.vertex(("X", i, t)))
        atoms.append(mut)
        cur = mut.target
    v1, vn = seed.vertex(("X", i, 1)), seed.vertex(("X", i, n))
    perm = list(range(seed.size))
    perm[v1], perm[vn] = vn, v1
    swap = Permutation(cur, tuple(perm))
    atoms.append(swap)
    cur = swap.target
    images = [TorusElement.generator(seed, v) for v in range(seed.size)]
    images[seed.vertex(("X", i, 0))] = (
        tab.X[(i, 0)] * tab.C[i].monomial_inverse()
    )
    if i >= 2:
        images[seed.vertex(("X", i - 1, 0))] = (
            tab.X[(i - 1, 0)] * tab.X[(i, 0)]
        ).scale(QScalar.q(1))
    if i <= n - 1:
        images[seed.vertex(("X", i + 1, 0))] = (
            tab.X[(i, 0)] * tab.X[(i + 1, 0)] * tab.X[(i + 1, 1)]
        ).scale(QScalar.q(1))
    atoms.append(MonomialMap(cur, seed, images))
    out = QuasiClusterMap(atoms, f"T{i}^cl")
    _BRAID_CACHE[(n, i)] = out
    return out


def coxeter_map(n: int) -> QuasiClusterMap:
    """The rotation automorphism of the torus of Sigma_n: permute the loops
    cyclically and send X_{n,0} to the inverse of the renormalized product
    of all generators."""
    cached = _COXETER_CACHE.get(n)
    if cached is not None:
        return cached
    from .embedding import build_generators
    from .quivers import build_sigma_prime

    tab = build_generators(n)
    seed = tab.seed
    sp = build_sigma_prime(n)
    rho = coxeter_permutation(n)
    x0 = sp.vertex(("X0",))
    back = {}
    for key, v in sp.coords.items():
        back[v] = key
    images = [None] * seed.size
    for v in range(sp.size):
        if v == x0:
            continue
        src = seed.vertex(back[v])
        img_vertex = rho[v]
        if img_vertex == x0:
            images[src] = tab.M.monomial_inverse()
        else:
            images[src] = TorusElement.generator(seed, seed.vertex(back[img_vertex]))
    if any(img is None for img in images):
        raise BadIndex("rotation images do not cover the seed")  # pragma: no cover
    out = QuasiClusterMap([MonomialMap(seed, seed, images)], "rho")
    _COXETER_CACHE[n] = out
    return out
