"""Generators of the AI-type iquantum group inside the torus of Sigma_n.

The generator B_i maps to the sum of the renormalized prefix products
P_{i,k} = :X_{i,0} X_{i,1} ... X_{i,k}: of the i-th loop, and k_i maps to
minus the central monomial C_i = :X_{i,0}^2 X_{i,1} ... X_{i,n}:.  The
one-step braid operators act on these images by q-commutators, which is
all that is needed to verify the defining relations and to compare with
the mutation composites.
"""

from __future__ import annotations

import time

from .errors import BadIndex, BadRank, UntrackedElement
from .quivers import Seed, build_sigma, sigma_figure_names
from .reports import Report
from .scalars import ONE, QScalar
from .torus import TorusElement, qcommutator, render_element


class GeneratorTable:
    """Images of the generators of rank n, built once and shared read-only.

    Attributes
    ----------
    seed : Seed                  the quiver Sigma_n
    P : P[i][k], 1-based i       renormalized prefix monomials
    W : W[i][k]                  sum of the first k+1 plain prefix products
    C : C[i]                     central monomials
    iota_B, iota_k : images of B_i and k_i
    """

    def __init__(self, n: int):
        if n < 1:
            raise BadRank(f"rank must be >= 1, got {n}")
        self.n = n
        seed = build_sigma(n)
        self.seed = seed
        self.figure_names = sigma_figure_names(seed, n)
        q = QScalar.q(2)

        self.X = {}
        for i in range(1, n + 1):
            for t in range(n + 1):
                self.X[(i, t)] = TorusElement.generator(seed, seed.vertex(("X", i, t)))

        self.P: dict[int, dict[int, TorusElement]] = {}
        self.W: dict[int, dict[int, TorusElement]] = {}
        self.C: dict[int, TorusElement] = {}
        self.iota_B: dict[int, TorusElement] = {}
        self.iota_k: dict[int, TorusElement] = {}
        for i in range(1, n + 1):
            prefix = TorusElement.one(seed)
            qpow = ONE
            self.P[i] = {}
            self.W[i] = {}
            acc_w = TorusElement.zero(seed)
            for t in range(n + 1):
                prefix = prefix * self.X[(i, t)]
                self.P[i][t] = prefix.renormalize()
                acc_w = acc_w + prefix.scale(qpow)
                self.W[i][t] = acc_w
                qpow = qpow * q
            self.iota_B[i] = sum_elements(self.P[i][t] for t in range(n + 1))
            c = self.X[(i, 0)] * prefix  # X_{i,0}^2 X_{i,1} ... X_{i,n}
            self.C[i] = c.renormalize()
            self.iota_k[i] = -self.C[i]
            self._check_central(self.C[i], i)

        everything = TorusElement.monomial(seed, (1,) * seed.size)
        self.M = everything.renormalize()

    def _check_central(self, c: TorusElement, i: int) -> None:
        for v in range(self.seed.size):
            g = TorusElement.generator(self.seed, v)
            if not (c * g - g * c).is_zero():
                raise BadIndex(
                    f"C_{i} fails to be central against generator {v}"
                )  # pragma: no cover

    def generator_image(self, kind: str, i: int, power: int = 1) -> TorusElement:
        """Image of B_i, k_i or k_i^{-1} (kind in 'B', 'k')."""
        if not 1 <= i <= self.n:
            raise BadIndex(f"generator index {i} out of range for rank {self.n}")
        if kind == "B":
            if power != 1:
                raise UntrackedElement("B_i images are tracked at power 1")
            return self.iota_B[i]
        if kind == "k":
            img = self.iota_k[i]
            if power < 0:
                img = img.monomial_inverse()
                power = -power
            return img**power
        raise UntrackedElement(f"unknown generator kind {kind!r}")


def sum_elements(items) -> TorusElement:
    items = list(items)
    out = items[0]
    for x in items[1:]:
        out = out + x
    return out


_TABLE_CACHE: dict[int, GeneratorTable] = {}


def build_generators(n: int) -> GeneratorTable:
    """Build (and cache) the generator table of rank n; centrality of the
    C_i is verified at construction time."""
    tab = _TABLE_CACHE.get(n)
    if tab is None:
        tab = GeneratorTable(n)
        _TABLE_CACHE[n] = tab
    return tab


# -- the defining relations ---------------------------------------------------


def verify_relations(n: int) -> list[Report]:
    """Exact checks of the defining relations in the torus of Sigma_n:

    (R0)  k_i is invertible and central among the images;
    (R1)  [B_i, B_j] = 0 for |i - j| > 1;
    (R2)  B_j B_i^2 - (q + 1/q) B_i B_j B_i + B_i^2 B_j = (q - 1/q)^2 B_j k_i
          for |i - j| = 1.
    """
    tab = build_generators(n)
    q = QScalar.q(2)
    qi = QScalar.q(-2)
    reports = []

    def record(check, params, diff):
        t0 = time.perf_counter()
        ok = diff.is_zero()
        reports.append(
            Report(
                check,
                n,
                params,
                ok,
                None if ok else render_element(diff),
                (time.perf_counter() - t0) * 1000,
            )
        )

    for i in range(1, n + 1):
        k = tab.iota_k[i]
        kinv = k.monomial_inverse()
        record("R0:inverse", {"i": i}, k * kinv - TorusElement.one(tab.seed))
        for j in range(1, n + 1):
            record("R0:k-central", {"i": i, "j": j}, k.commutator(tab.iota_B[j]))
            record("R0:k-commute", {"i": i, "j": j}, k.commutator(tab.iota_k[j]))
    for i in range(1, n + 1):
        for j in range(1, n + 1):
            if abs(i - j) > 1:
                record("R1", {"i": i, "j": j}, tab.iota_B[i].commutator(tab.iota_B[j]))
    for i in range(1, n + 1):
        for j in (i - 1, i + 1):
            if not 1 <= j <= n:
                continue
            bi, bj = tab.iota_B[i], tab.iota_B[j]
            lhs = bj * bi * bi - (bi * bj * bi).scale(q + qi) + bi * bi * bj
            rhs = (bj * tab.iota_k[i]).scale((q - qi) * (q - qi))
            record("R2", {"i": i, "j": j}, lhs - rhs)
    return reports


# -- one-step braid operators ---------------------------------------------------


def braid_T(n: int, i: int, x: tuple) -> TorusElement:
    """Image of the braid operator T_i on a tracked generator.

    ``x`` is ("B", j) or ("k", j, power); the value is evaluated directly
    in the torus:

        T_i(B_i) = -k_i^{-1} B_i,
        T_i(B_j) = (q^(1/2) B_i B_j - q^(-1/2) B_j B_i) / (q - q^(-1))
                   for |i - j| = 1,
        T_i(B_j) = B_j otherwise;
        T_i(k_i) = k_i^{-1},  T_i(k_j) = -k_i k_j for |i - j| = 1,
        T_i(k_j) = k_j otherwise.
    """
    tab = build_generators(n)
    if not 1 <= i <= n:
        raise BadIndex(f"braid index {i} out of range for rank {n}")
    kind = x[0]
    j = x[1]
    if not 1 <= j <= n:
        raise BadIndex(f"generator index {j} out of range for rank {n}")
    if kind == "B":
        if i == j:
            return -(tab.iota_k[i].monomial_inverse() * tab.iota_B[i])
        if abs(i - j) == 1:
            return qcommutator(tab.iota_B[i], tab.iota_B[j])
        return tab.iota_B[j]
    if kind == "k":
        power = x[2] if len(x) > 2 else 1
        if i == j:
            base = tab.iota_k[i].monomial_inverse()
        elif abs(i - j) == 1:
            base = -(tab.iota_k[i] * tab.iota_k[j])
        else:
            base = tab.iota_k[j]
        if power < 0:
            base = base.monomial_inverse()
            power = -power
        return base**power
    raise UntrackedElement(f"cannot apply a braid operator to {x!r}")
