"""The coideal structure as amalgamation.

The quantum group of rank n embeds into the torus of the double quiver D_n:
E_i is the sum of the proper prefix products of the row through V_i, K_i the
renormalized full row, and F_i, K'_i the same on the opposite row, which
starts at L_{n+1-i} by the half-turn symmetry of the quiver.  Gluing Sigma_n
to D_n along X_{i,0} = V_i realises the coproduct of the coideal generators:
the image of Delta(B_i) is the sum of the renormalized prefix products of
one closed path of length 3n+4 through the glued quiver.
"""

from __future__ import annotations

import time

from .embedding import build_generators, sum_elements
from .errors import BadRank
from .quivers import Seed, build_dn, build_sigma, build_zn, coideal_paths
from .reports import Report
from .scalars import QScalar
from .torus import TensorElement, TorusElement, tensor_embed


class DoubleGeneratorTable:
    """Images of E_i, F_i, K_i, K'_i in the torus of D_n."""

    def __init__(self, n: int):
        if n < 1:
            raise BadRank(f"rank must be >= 1, got {n}")
        self.n = n
        seed = build_dn(n)
        self.seed = seed
        self.E: dict[int, TorusElement] = {}
        self.F: dict[int, TorusElement] = {}
        self.K: dict[int, TorusElement] = {}
        self.Kp: dict[int, TorusElement] = {}
        for i in range(1, n + 1):
            vrow = seed.coords[("Vrow", i)]
            lrow = seed.coords[("Lrow", n + 1 - i)]
            self.E[i] = sum_elements(
                _prefix_monomial(seed, vrow[: r + 1]) for r in range(len(vrow) - 1)
            )
            self.K[i] = _prefix_monomial(seed, vrow)
            self.F[i] = sum_elements(
                _prefix_monomial(seed, lrow[: r + 1]) for r in range(len(lrow) - 1)
            )
            self.Kp[i] = _prefix_monomial(seed, lrow)


def _prefix_monomial(seed: Seed, vertices) -> TorusElement:
    exps = [0] * seed.size
    for v in vertices:
        exps[v] += 1
    return TorusElement.monomial(seed, tuple(exps)).renormalize()


_T_CACHE: dict[int, DoubleGeneratorTable] = {}


def build_t(n: int) -> DoubleGeneratorTable:
    tab = _T_CACHE.get(n)
    if tab is None:
        tab = DoubleGeneratorTable(n)
        _T_CACHE[n] = tab
    return tab


def verify_t_relations(n: int) -> list[Report]:
    """The full defining-relation list of the rank-n quantum group holds
    for the images in the torus of D_n, exactly."""
    tab = build_t(n)
    one = TorusElement.one(tab.seed)
    q = QScalar.q(2)
    qi = QScalar.q(-2)
    reports = []

    def record(check, params, diff):
        t0 = time.perf_counter()
        ok = diff.is_zero()
        reports.append(
            Report(check, n, params, ok, None if ok else "nonzero difference",
                   (time.perf_counter() - t0) * 1000)
        )

    def cartan(i, j):
        if i == j:
            return 2
        if abs(i - j) == 1:
            return -1
        return 0

    for i in range(1, n + 1):
        record("tqg:K-inverse", {"i": i},
               tab.K[i] * tab.K[i].monomial_inverse() - one)
        record("tqg:Kp-inverse", {"i": i},
               tab.Kp[i] * tab.Kp[i].monomial_inverse() - one)
        for j in range(1, n + 1):
            record("tqg:KK", {"i": i, "j": j}, tab.K[i].commutator(tab.K[j]))
            record("tqg:KpKp", {"i": i, "j": j}, tab.Kp[i].commutator(tab.Kp[j]))
            record("tqg:KKp", {"i": i, "j": j}, tab.K[i].commutator(tab.Kp[j]))
            a = cartan(i, j)
            record("tqg:KE", {"i": i, "j": j},
                   tab.K[i] * tab.E[j] - (tab.E[j] * tab.K[i]).scale(QScalar.q(2 * a)))
            record("tqg:KpE", {"i": i, "j": j},
                   tab.Kp[i] * tab.E[j] - (tab.E[j] * tab.Kp[i]).scale(QScalar.q(-2 * a)))
            record("tqg:KF", {"i": i, "j": j},
                   tab.K[i] * tab.F[j] - (tab.F[j] * tab.K[i]).scale(QScalar.q(-2 * a)))
            record("tqg:KpF", {"i": i, "j": j},
                   tab.Kp[i] * tab.F[j] - (tab.F[j] * tab.Kp[i]).scale(QScalar.q(2 * a)))
            diff = tab.E[i].commutator(tab.F[j])
            if i == j:
                diff = diff - (tab.Kp[i] - tab.K[i]).scale(q - qi)
            record("tqg:EF", {"i": i, "j": j}, diff)
            if abs(i - j) == 1:
                ee, ff = tab.E, tab.F
                for name, g in (("E-serre", ee), ("F-serre", ff)):
                    lhs = (
                        g[i] * g[i] * g[j]
                        - (g[i] * g[j] * g[i]).scale(q + qi)
                        + g[j] * g[i] * g[i]
                    )
                    record(f"tqg:{name}", {"i": i, "j": j}, lhs)
            elif i != j:
                record("tqg:EE", {"i": i, "j": j}, tab.E[i].commutator(tab.E[j]))
                record("tqg:FF", {"i": i, "j": j}, tab.F[i].commutator(tab.F[j]))
    return reports


# -- the coideal check -----------------------------------------------------------


def delta_images(n: int, i: int) -> tuple[TensorElement, TensorElement]:
    """The coproduct images of B_i and k_i in T_Sigma (x) T_D, expanded from
    the coproduct of the double:

        Delta(B_i) = B_i (x) K'_i + 1 (x) F_i - q^(-1) k_i (x) E_i K'_i,
        Delta(k_i) = k_i (x) K_i K'_i.
    """
    sig = build_generators(n)
    dob = build_t(n)
    one_s = TorusElement.one(sig.seed)
    lhs = (
        TensorElement.of(sig.iota_B[i], dob.Kp[i])
        + TensorElement.of(one_s, dob.F[i])
        - TensorElement.of(sig.iota_k[i], dob.E[i] * dob.Kp[i]) * QScalar.q(-2)
    )
    k_img = TensorElement.of(sig.iota_k[i], dob.K[i] * dob.Kp[i])
    return lhs, k_img


def path_images(n: int, i: int) -> tuple[TensorElement, TensorElement]:
    """The same coproduct images computed from the closed path in Z_n:
    Delta(B_i) is the sum of the renormalized prefix products of the first
    p-1 vertices, Delta(k_i) is minus the renormalized full product."""
    zn = build_zn(n)
    sigma = build_sigma(n)
    dn = build_dn(n)
    path = coideal_paths(n)[i - 1]
    prefixes = sum_elements(
        _prefix_monomial(zn, path[: r + 1]) for r in range(len(path) - 1)
    )
    full = -_prefix_monomial(zn, path)
    return (
        tensor_embed(prefixes, sigma, dn),
        tensor_embed(full, sigma, dn),
    )


def verify_coideal(n: int) -> list[Report]:
    """Exact agreement of the path formula with the tensor-expanded
    coproduct for every i, with a term-count pre-check."""
    reports = []
    for i in range(1, n + 1):
        t0 = time.perf_counter()
        expanded_b, expanded_k = delta_images(n, i)
        from_path_b, from_path_k = path_images(n, i)
        counts_match = expanded_b.term_count() == from_path_b.term_count()
        reports.append(
            Report(
                "coideal-term-count",
                n,
                {"i": i, "terms": from_path_b.term_count()},
                counts_match,
                None if counts_match else
                f"{expanded_b.term_count()} != {from_path_b.term_count()}",
                (time.perf_counter() - t0) * 1000,
            )
        )
        t0 = time.perf_counter()
        ok_b = (expanded_b - from_path_b).is_zero()
        reports.append(
            Report("coideal-B", n, {"i": i}, ok_b,
                   None if ok_b else "path sum differs from expanded coproduct",
                   (time.perf_counter() - t0) * 1000)
        )
        t0 = time.perf_counter()
        ok_k = (expanded_k - from_path_k).is_zero()
        reports.append(
            Report("coideal-k", n, {"i": i}, ok_k,
                   None if ok_k else "path product differs from k (x) K K'",
                   (time.perf_counter() - t0) * 1000)
        )
    return reports
