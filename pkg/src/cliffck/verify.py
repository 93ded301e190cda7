"""Verification suites and the machine-readable report.

Each check yields an entry ``{suite, check, m, k, status, detail}`` where
``status`` is ``pass``, ``fail`` or ``deviation``. A deviation records a
printed formula that disagrees with the computed one; it is informational
and never counts as a failure. Reports are deterministic: entries are
sorted by ``(suite, check, m, k)`` and no timings are recorded.
"""
from __future__ import annotations

import json
import math
import os
import random
from concurrent.futures import ThreadPoolExecutor
from fractions import Fraction
from math import comb, factorial, prod

from gmpy2 import mpq

from . import __version__
from .algebra import CliffordElement, blade_indices, blade_product, clifford_mul, grade_project, paravector_conjugate
from .axial import (
    AxialPair,
    RadialPolynomial,
    axial_decompose,
    intrinsic_components,
    radial_power,
    radial_to_polynomial,
    vekua_residual,
)
from .ck import c_const, gck_extend, hgck_extend, hgck_gck_split, recover_initial, series_coefficients
from .exceptions import CliffckError
from .families import (
    coeff,
    family_poly,
    gamma_m,
    gegenbauer_paravector,
    h1_explicit,
    riesz_partial_sum,
)
from .fueter import fueter_suite
from .numeric import (
    EXAMPLES,
    INTERIOR_POINTS,
    TEST_BOX,
    bessel_tilde,
    closed_form,
    example_residual,
    hermite,
    hermite_recurrence,
    resolve_normalization,
    riesz_eval,
)
from .planewave import (
    even_moment_from_power_identity,
    odd_moment_from_power_identity,
    planewave_mc,
    planewave_reconstruct,
    sphere_moment,
)
from .polynomial import (
    CliffordPolynomial,
    Op,
    apply_operator,
    dirac,
    laplacian,
    vector_op_product,
    vector_power,
)
from .univariate import UnivariatePoly, x0_power

SUITES = ("algebra", "polynomial", "axial", "ck", "families", "fueter", "planewave", "numeric")

DEFAULT_M = {
    "algebra": (1, 2, 3, 4, 5, 6),
    "polynomial": (2, 3, 4, 5, 6, 7),
    "axial": (3, 5, 7),
    "ck": (2, 3, 4, 5, 6, 7, 9),
    "families": (3, 5, 7, 9),
    "fueter": (3, 5, 7),
    "planewave": (2, 3, 4, 5, 6, 7),
    "numeric": (3,),
}

DEFAULT_TOLERANCES = {
    "bessel": 1e-10,
    "riesz": 1e-8,
    "ex31": 1e-10,
    "examples": 1e-8,
    "mc_sigma": 3.0,
    "mc_ratio_band": 0.10,
}


def entry(suite: str, check: str, m, k, ok: bool, detail="") -> dict:
    return {"suite": suite, "check": check, "m": m, "k": k, "status": "pass" if ok else "fail", "detail": detail}


def deviation(suite: str, check: str, m, k, detail) -> dict:
    return {"suite": suite, "check": check, "m": m, "k": k, "status": "deviation", "detail": detail}


def _compare(suite, check, m, k, lhs, rhs, note="exact equality") -> dict:
    if lhs == rhs:
        return entry(suite, check, m, k, True, note)
    return entry(suite, check, m, k, False, {"lhs": _ser(lhs), "rhs": _ser(rhs)})


def _ser(x):
    if hasattr(x, "to_json"):
        return x.to_json()
    return str(x)


# random inputs


def random_element(rng: random.Random, m: int, nterms: int = 3, max_grade: int | None = None) -> CliffordElement:
    terms = {}
    for _ in range(nterms):
        mask = rng.randrange(1 << m)
        if max_grade is not None and mask.bit_count() > max_grade:
            continue
        terms[mask] = mpq(rng.randint(-5, 5), rng.randint(1, 4))
    return CliffordElement(m, terms)


def random_polynomial(rng: random.Random, m: int, degree: int, nterms: int = 4) -> CliffordPolynomial:
    terms = {}
    for _ in range(nterms):
        exps = [0] * (m + 1)
        for _ in range(rng.randint(0, degree)):
            exps[rng.randrange(m + 1)] += 1
        terms[tuple(exps)] = random_element(rng, m, 2)
    return CliffordPolynomial(m, terms)


def random_vector_field(rng: random.Random, m: int, degree: int) -> CliffordPolynomial:
    out = CliffordPolynomial.zero(m)
    for j in range(1, m + 1):
        scalar = random_polynomial(rng, m, degree, 3).grade_project(0)
        out = out + scalar * CliffordElement.basis(m, j)
    return out


def brute_force_blade_product(a: tuple, b: tuple) -> tuple[int, tuple]:
    """Multiply index words by bubble sort and cancellation of equal neighbours."""
    word = list(a) + list(b)
    sign = 1
    changed = True
    while changed:
        changed = False
        for i in range(len(word) - 1):
            if word[i] > word[i + 1]:
                word[i], word[i + 1] = word[i + 1], word[i]
                sign = -sign
                changed = True
            elif word[i] == word[i + 1]:
                del word[i:i + 2]
                sign = -sign
                changed = True
                break
    return sign, tuple(word)


# suites


def suite_algebra(ms, kmax, seed, tol) -> list[dict]:
    S = "algebra"
    out = []
    rng = random.Random(seed)
    for m in ms:
        gens = [CliffordElement.basis(m, j) for j in range(1, m + 1)]
        ok = all(
            (gens[j] * gens[l] + gens[l] * gens[j]) == (-2 if j == l else 0) for j in range(m) for l in range(m)
        )
        out.append(entry(S, "anticommutation", m, None, ok, f"{m * m} generator pairs"))
        if m <= 5:
            bad = []
            for a in range(1 << m):
                for b in range(1 << m):
                    s, word = brute_force_blade_product(blade_indices(a), blade_indices(b))
                    s2, mask = blade_product(a, b)
                    if (s, word) != (s2, blade_indices(mask)):
                        bad.append([a, b])
            out.append(entry(S, "sign_oracle", m, None, not bad, bad[:5] or f"{4 ** m} blade pairs"))
            fails = 0
            for _ in range(250):
                a, b, c = (random_element(rng, m) for _ in range(3))
                if (a * b) * c != a * (b * c):
                    fails += 1
            out.append(entry(S, "associativity", m, None, fails == 0, f"250 seeded triples, {fails} failures"))
        fails = 0
        for _ in range(50):
            u = [mpq(rng.randint(-4, 4), rng.randint(1, 3)) for _ in range(m)]
            v = [mpq(rng.randint(-4, 4), rng.randint(1, 3)) for _ in range(m)]
            U, V = CliffordElement.vector(u), CliffordElement.vector(v)
            dot = sum(x * y for x, y in zip(u, v))
            wedge = CliffordElement(
                m,
                {(1 << i) | (1 << j): u[i] * v[j] - u[j] * v[i] for i in range(m) for j in range(i + 1, m)},
            )
            if U * V + V * U != -2 * dot or U * V - V * U != wedge * 2:
                fails += 1
            x = CliffordElement.paravector(u[0], v)
            if x * paravector_conjugate(x) != u[0] ** 2 + sum(t * t for t in v):
                fails += 1
            total = CliffordElement(m)
            for g in range(m + 1):
                total = total + grade_project(U * V, g)
            if total != U * V:
                fails += 1
        out.append(entry(S, "vector_identities", m, None, fails == 0, f"50 seeded vector pairs, {fails} failures"))
    return out


def suite_polynomial(ms, kmax, seed, tol) -> list[dict]:
    S = "polynomial"
    out = []
    rng = random.Random(seed)
    small = [m for m in ms if m <= 4] or [2, 3, 4]
    fails = 0
    count = 0
    for i in range(210):
        m = small[i % len(small)]
        p = random_polynomial(rng, m, 4)
        lap = apply_operator(Op.LAPLACIAN, p)
        a = apply_operator(Op.CR, apply_operator(Op.CRBAR, p))
        b = apply_operator(Op.CRBAR, apply_operator(Op.CR, p))
        count += 1
        if not (lap == a == b):
            fails += 1
    out.append(entry(S, "factorization", None, None, fails == 0, f"{count} seeded polynomials, {fails} failures"))
    for m in ms:
        bad = []
        for j in range(2, 11):
            lhs = laplacian(vector_power(m, j), range(1, m + 1))
            if lhs != vector_power(m, j - 2).scale(c_const(m, j)):
                bad.append(j)
        out.append(entry(S, "vector_power_laplacian", m, None, not bad, bad or "2 <= j <= 10"))
    fails = 0
    for i in range(60):
        m = small[i % len(small)]
        F = random_vector_field(rng, m, 3)
        D = dirac(F)
        if D.grade_project(0) != -vector_op_product("inner", F) or D.grade_project(2) != vector_op_product("wedge", F):
            fails += 1
        if D.grades() - {0, 2}:
            fails += 1
    out.append(entry(S, "dirac_grade_split", None, None, fails == 0, f"60 seeded vector fields, {fails} failures"))
    fails = 0
    for i in range(60):
        m = small[i % len(small)]
        p, q = random_polynomial(rng, m, 4), random_polynomial(rng, m, 4)
        c = mpq(rng.randint(-5, 5), rng.randint(1, 5))
        for op in Op:
            if apply_operator(op, p + q.scale(c)) != apply_operator(op, p) + apply_operator(op, q).scale(c):
                fails += 1
        if dirac(p.derivative(0)) != dirac(p).derivative(0):
            fails += 1
    out.append(entry(S, "linearity_commutation", None, None, fails == 0, f"60 seeded pairs, {fails} failures"))
    return out


def suite_axial(ms, kmax, seed, tol) -> list[dict]:
    S = "axial"
    out = []
    bad = []
    for n in range(21):
        for s in range(0, 11):
            g = RadialPolynomial(3, "even" if n % 2 == 0 else "odd", {(0, n): 1})
            kind = "lower" if n % 2 == 0 else "raise"
            j = n // 2
            expected = (
                RadialPolynomial(3, g.parity, {(0, n - 2 * s): mpq(2 ** s * factorial(j), factorial(j - s))})
                if j >= s
                else RadialPolynomial.zero(3, g.parity)
            )
            if radial_power(kind, s, g) != expected:
                bad.append([n, s])
    out.append(entry(S, "radial_power_closed_form", None, None, not bad, bad[:5] or "r^n, n <= 20, s <= 10"))
    kmax = 8 if kmax is None else kmax
    for m in ms:
        bad_vek = []
        bad_round = []
        for k in range(kmax + 1):
            g = gck_extend(x0_power(m, k), m)
            pair = axial_decompose(g)
            r1, r2 = vekua_residual(pair)
            if not (r1.is_zero() and r2.is_zero()):
                bad_vek.append(k)
            if radial_to_polynomial(pair) != g or axial_decompose(radial_to_polynomial(pair)) != pair:
                bad_round.append(k)
        out.append(entry(S, "vekua_gck", m, kmax, not bad_vek, bad_vek or f"f0 = x0^k, k <= {kmax}"))
        out.append(entry(S, "round_trip", m, kmax, not bad_round, bad_round or f"GCK profiles, k <= {kmax}"))
        if m % 2 == 1 and m >= 5:
            bad = []
            for k in range(kmax + 1):
                alpha, beta = intrinsic_components(x0_power(m, k))
                zero_a = RadialPolynomial.zero(m, "even")
                zero_b = RadialPolynomial.zero(m, "odd")
                fa = radial_to_polynomial(AxialPair(alpha, zero_b, m))
                fb = radial_to_polynomial(AxialPair(zero_a, beta, m))
                for j in range((m - 1) // 2 + 1):
                    factor = prod(m - 2 * l + 1 for l in range(1, j + 1))
                    rhs_a = radial_to_polynomial(AxialPair(radial_power("lower", j, alpha), zero_b, m)).scale(factor)
                    rhs_b = radial_to_polynomial(AxialPair(zero_a, radial_power("raise", j, beta), m)).scale(factor)
                    if fa != rhs_a or fb != rhs_b:
                        bad.append([k, j])
                    fa, fb = laplacian(fa), laplacian(fb)
            out.append(entry(S, "laplacian_radial_lemma", m, kmax, not bad, bad or "alpha and omega*beta profiles"))
    return out


def suite_ck(ms, kmax, seed, tol) -> list[dict]:
    S = "ck"
    out = []
    kmax = 10 if kmax is None else kmax
    rng = random.Random(seed)
    for m in ms:
        zero = UnivariatePoly.zero(m)
        bad = {"harmonic": [], "monogenic": [], "recursion": [], "recovery": [], "split_H1": [], "split_H2": [], "dbar_monogenic": []}
        for k in range(kmax + 1):
            xk = x0_power(m, k)
            h0 = hgck_extend(xk, zero, m)
            h1 = hgck_extend(zero, xk, m)
            g = gck_extend(xk, m)
            if not (laplacian(h0).is_zero() and laplacian(h1).is_zero()):
                bad["harmonic"].append(k)
            if not apply_operator(Op.CR, g).is_zero():
                bad["monogenic"].append(k)
            both = hgck_extend(xk, x0_power(m, max(k - 1, 0)), m)
            series = series_coefficients(both)
            for j in range(max(series, default=0) + 1):
                a_j = series.get(j, zero)
                a_next = series.get(j + 2, zero)
                if a_next != a_j.derivative(2).scale(-1 / c_const(m, j + 2)):
                    bad["recursion"].append([k, j])
            for f, pair in ((h0, (xk, zero)), (h1, (zero, xk)), (both, (xk, x0_power(m, max(k - 1, 0))))):
                if recover_initial(f, m) != pair:
                    bad["recovery"].append(k)
            try:
                hgck_gck_split(xk, x0_power(m, max(k - 1, 0)), m)
            except CliffckError:
                bad["split_H1"].append(k)
            if g != h0 + hgck_extend(zero, xk.derivative(), m).scale(mpq(1, m)):
                bad["split_H2"].append(k)
            if not apply_operator(Op.CR, apply_operator(Op.CRBAR, both)).is_zero():
                bad["dbar_monogenic"].append(k)
        for name, b in bad.items():
            out.append(entry(S, name, m, kmax, not b, b or f"x0^k, k <= {kmax}"))
        c = mpq(rng.randint(1, 9), rng.randint(1, 9))
        out.append(
            entry(S, "primitive_constant", m, None, gck_extend(UnivariatePoly(m, {0: c}), m).grade_project(1).is_zero(), f"c = {c}")
        )
    return out


def _printed_system_checks(k: int, m: int):
    """Computed derivative system versus the printed one, for index k >= 1."""
    H0 = lambda j: family_poly("H0", j, m) if j >= 0 else CliffordPolynomial.zero(m)
    H1 = lambda j: family_poly("H1", j, m) if j >= 0 else CliffordPolynomial.zero(m)
    pinned = {
        "dx0_H0": (H0(k).derivative(0), H0(k - 1).scale(k)),
        "dx0_H1": (H1(k - 1).derivative(0), H1(k - 2).scale(k - 1)),
        "inner_H1": (vector_op_product("inner", H1(k - 1)), H0(k - 1).scale(m)),
        "wedge_H1": (vector_op_product("wedge", H1(k - 1)), CliffordPolynomial.zero(m)),
        "dirac_H0": (dirac(H0(k)), H1(k - 2).scale(mpq(-k * (k - 1), m))),
    }
    printed = {
        "printed_dx0_H0_minus_k": (H0(k).derivative(0), H0(k - 1).scale(-k)),
        "printed_dx0_H1_minus": (H1(k - 1).derivative(0), H1(k - 2).scale(-(k - 1))),
        "printed_inner_H1_factor_k": (vector_op_product("inner", H1(k - 1)), H0(k - 1).scale(k)),
        "printed_theorem_dx0_H0": (H0(k).derivative(0), -vector_op_product("inner", H1(k - 1))),
        "printed_theorem_dirac_H0": (dirac(H0(k)), H1(k - 1).derivative(0).scale(mpq(k, m))),
    }
    return pinned, printed


def suite_families(ms, kmax, seed, tol) -> list[dict]:
    S = "families"
    out = []
    kmax = 8 if kmax is None else kmax
    rng = random.Random(seed)
    for m in ms:
        for k in range(kmax + 1):
            P, Qk = family_poly("P", k, m), family_poly("Q", k, m)
            out.append(entry(S, "harmonic_P", m, k, laplacian(P).is_zero()))
            out.append(entry(S, "monogenic_Q", m, k, apply_operator(Op.CR, Qk).is_zero()))
            T = [coeff("harmonic", k, s, m) for s in range(k + 1)]
            out.append(entry(S, "lemma_sum_total", m, k, sum(T) == 1, f"sum = {sum(T)}"))
            out.append(entry(S, "lemma_sum_symmetry", m, k, all(T[s] == T[k - s] for s in range(k + 1))))
            ok = (m - 1) * coeff("harmonic", k, k, m) == (k + m - 1) * coeff("appell", k, k, m) and all(
                (m - 1) * coeff("harmonic", k, s, m)
                == (k + m - 1) * coeff("appell", k, s, m) - k * coeff("appell", k - 1, s, m)
                for s in range(k)
            )
            out.append(entry(S, "coefficient_identities", m, k, ok))
            if k >= 1:
                x = CliffordPolynomial.variable(m, 0) + vector_power(m, 1)
                lhs = P.scale(m - 1)
                rhs = Qk.scale(k + m - 1) - (x * family_poly("Q", k - 1, m)).scale(k)
                out.append(_compare(S, "rell", m, k, lhs, rhs))
                appell = apply_operator(Op.CRBAR, Qk).scale(mpq(1, 2))
                out.append(_compare(S, "appell_property", m, k, appell, family_poly("Q", k - 1, m).scale(k)))
            try:
                pair = axial_decompose(P)
                ok = pair.B.is_zero() and pair.A.is_real()
            except CliffckError:
                ok = False
            out.append(entry(S, "real_valued_P", m, k, ok))
            out.append(_compare(S, "H1_explicit", m, k, family_poly("H1", k, m), h1_explicit(k, m)))
            out.append(_compare(S, "P_equals_hgck", m, k, P, hgck_extend(x0_power(m, k), 0, m)))
            if m % 2 == 1:
                out.append(_compare(S, "gegenbauer_scalar", m, k, gegenbauer_paravector(k, m, "scalar"), P))
            if k >= 1:
                pinned, printed = _printed_system_checks(k, m)
                for name, (lhs, rhs) in pinned.items():
                    out.append(_compare(S, f"system_{name}", m, k, lhs, rhs))
        a = [mpq(rng.randint(-6, 6), rng.randint(1, 5)) for _ in range(kmax + 1)]
        b = [mpq(rng.randint(-6, 6), rng.randint(1, 5)) for _ in range(kmax + 1)]
        lhs = hgck_extend(UnivariatePoly(m, dict(enumerate(a))), UnivariatePoly(m, dict(enumerate(b))), m)
        rhs = CliffordPolynomial.zero(m)
        for j in range(kmax + 1):
            rhs = rhs + family_poly("H0", j, m).scale(a[j]) + family_poly("H1", j, m).scale(b[j])
        out.append(_compare(S, "basis_reconstruction", m, kmax, lhs, rhs, "random rational combination"))
        if m % 2 == 1:
            out.append(entry(S, "gamma_m", m, None, gamma_m(m) == _gamma_m_oracle(m), str(gamma_m(m))))
            failing = [k for k in range(kmax + 1) if gegenbauer_paravector(k, m, "paravector") != family_poly("P", k, m)]
            if failing:
                out.append(deviation(S, "gegenbauer_paravector_reading", m, None, {
                    "note": "C_k evaluated at the paravector x/|x| does not reproduce P_k; the scalar x0/|x| does",
                    "failing_k": failing,
                }))
        devs: dict[str, list] = {}
        for k in range(1, kmax + 1):
            _, printed = _printed_system_checks(k, m)
            for name, (lhs, rhs) in printed.items():
                if lhs != rhs:
                    devs.setdefault(name, []).append(k)
        for name, ks in devs.items():
            out.append(deviation(S, name, m, None, {"note": PRINTED_NOTES[name], "failing_k": ks}))
    out.append(_riesz_real_line())
    return out


PRINTED_NOTES = {
    "printed_dx0_H0_minus_k": "printed d/dx0 H0_k = -k H0_(k-1); computed +k H0_(k-1)",
    "printed_dx0_H1_minus": "printed d/dx0 H1_(k-1) = -(k-1) H1_(k-2); computed +(k-1) H1_(k-2)",
    "printed_inner_H1_factor_k": "printed <d_x, H1_(k-1)> = k H0_(k-1); computed m H0_(k-1)",
    "printed_theorem_dx0_H0": "printed d/dx0 H0_k = -<d_x, H1_(k-1)>; computed (k/m) <d_x, H1_(k-1)>",
    "printed_theorem_dirac_H0": "printed d_x H0_k = (k/m) d/dx0 H1_(k-1); computed -(k/m) d/dx0 H1_(k-1)",
}


def _gamma_m_oracle(m: int) -> Fraction:
    # Gamma((m+1)/2) = ((m-1)/2)! for odd m
    h = (m - 1) // 2
    return Fraction((-1) ** h * 2 ** (m - 1), factorial(m - 1)) * factorial(h) ** 2


def _riesz_real_line() -> dict:
    t = mpq(1, 3)
    got = riesz_partial_sum(12, 3, (t, 0, 0, 0))
    want = sum((k + 1) * t ** k for k in range(13))
    return entry("families", "riesz_real_line", 3, 12, got == want, f"sum (k+1) t^k at t = {t}")


def suite_fueter(ms, kmax, seed, tol) -> list[dict]:
    return fueter_suite([m for m in ms if m % 2 == 1 and m >= 3], kmax)


def suite_planewave(ms, kmax, seed, tol) -> list[dict]:
    S = "planewave"
    out = []
    deg = 6 if kmax is None else min(kmax, 6)
    for m in ms:
        if m < 2:
            continue
        bad = []
        for a in range(-1, deg + 1):
            for b in range(-1, deg + 1):
                A0 = x0_power(m, a) if a >= 0 else UnivariatePoly.zero(m)
                A1 = x0_power(m, b) if b >= 0 else UnivariatePoly.zero(m)
                try:
                    planewave_reconstruct(A0, A1, m)
                except CliffckError:
                    bad.append([a, b])
        out.append(entry(S, "reconstruct_equals_hgck", m, deg, not bad, bad or f"monomial pairs up to degree {deg}"))
        ok = all(
            sphere_moment(2 * j, 0, m).value == even_moment_from_power_identity(j, m)
            and sphere_moment(2 * j + 1, 1, m).value == odd_moment_from_power_identity(j, m)
            for j in range(7)
        )
        out.append(entry(S, "moment_consistency", m, 6, ok, "j <= 6"))
    mom = sphere_moment(2, 0, 3).value
    out.append(entry(S, "moment_spot_value", 3, 2, (mom.coef, mom.pi_exp) == (mpq(4, 3), 1), str(mom)))
    r1 = planewave_mc(x0_power(3, 2), 0, 3, 100_000, seed, (1, mpq(1, 2), 0, 0))
    r4 = planewave_mc(x0_power(3, 2), 0, 3, 400_000, seed, (1, mpq(1, 2), 0, 0))
    est, se = r1.estimate.coefficient(0), r1.stderr.coefficient(0)
    exact = 11 / 12
    out.append(entry(S, "mc_within_sigma", 3, 2, abs(est - exact) <= tol["mc_sigma"] * se,
                     {"estimate": round(est, 12), "stderr": round(se, 12), "exact": "11/12"}))
    ratio = se / r4.stderr.coefficient(0)
    out.append(entry(S, "mc_stderr_scaling_x4", 3, 2, abs(ratio - 2) <= 2 * tol["mc_ratio_band"], {"ratio": round(ratio, 6)}))
    r2 = planewave_mc(x0_power(3, 2), 0, 3, 200_000, seed, (1, mpq(1, 2), 0, 0))
    ratio = se / r2.stderr.coefficient(0)
    out.append(entry(S, "mc_stderr_scaling_x2", 3, 2, abs(ratio - math.sqrt(2)) <= math.sqrt(2) * tol["mc_ratio_band"], {"ratio": round(ratio, 6)}))
    return out


def suite_numeric(ms, kmax, seed, tol) -> list[dict]:
    S = "numeric"
    out = []
    closed = {
        0.5: lambda r: math.sqrt(2 / math.pi) * (math.sin(r) / r if r else 1.0),
        1.5: lambda r: math.sqrt(2 / math.pi) * ((math.sin(r) - r * math.cos(r)) / r ** 3 if r else 1 / 3),
        2.5: lambda r: math.sqrt(2 / math.pi)
        * (((3 - r * r) * math.sin(r) - 3 * r * math.cos(r)) / r ** 5 if r else 1 / 15),
    }
    for nu, f in closed.items():
        worst = max(abs(bessel_tilde(nu, r, 30) - f(r)) for r in [0.1 * i for i in range(1, 21)])
        out.append(entry(S, f"bessel_tilde_nu={nu}", None, None, worst <= tol["bessel"], {"max_error": float(f"{worst:.3e}")}))
    worst = max(abs(hermite(n, x) - hermite_recurrence(n, x)) / max(1.0, abs(hermite_recurrence(n, x)))
                for n in range(15) for x in (-1.5, -0.3, 0.0, 0.7, 2.0))
    out.append(entry(S, "hermite_recurrence", None, None, worst <= 1e-12, {"max_rel_error": float(f"{worst:.3e}")}))
    point = (0, mpq(3, 10), 0, 0)
    target = riesz_eval(3, (0.0, 0.3, 0.0, 0.0))
    errs = [abs(float(riesz_partial_sum(N, 3, point).scalar_part()) - target) for N in range(5, 26)]
    out.append(entry(S, "riesz_partial_sum", 3, 25, errs[-1] <= tol["riesz"], {"error_N25": float(f"{errs[-1]:.3e}")}))
    # on a purely vector point the odd-degree terms vanish, so compare every second N
    out.append(entry(S, "riesz_monotone", 3, 25, all(b < a for a, b in zip(errs, errs[2:])), "N = 5..25, step 2"))
    r = example_residual("ex31", (0.5, 0.5, 0.0, 0.0), 25, 3)
    out.append(entry(S, "ex31_residual", 3, 25, r <= tol["ex31"], {"residual": float(f"{r:.3e}")}))
    for which in EXAMPLES:
        res = resolve_normalization(which)
        norm = "consistent" if res["resolved"] in ("consistent", "both") else res["resolved"]
        if norm not in ("consistent", "printed"):
            out.append(entry(S, f"{which}_normalization", 3, 25, False, res))
            continue
        worst = max(example_residual(which, p, 25, 3, norm) for p in TEST_BOX + INTERIOR_POINTS)
        out.append(entry(S, f"{which}_residual_bound", 3, 25, worst <= tol["examples"], {"max_residual": float(f"{worst:.3e}"), "normalization": norm}))
        dec = [list(p) for p in TEST_BOX if not example_residual(which, p, 25, 3, norm) < example_residual(which, p, 10, 3, norm)]
        out.append(entry(S, f"{which}_residual_decreases", 3, 25, not dec, dec or "n = 10 -> 25 at every test-box point"))
    p = (0.2, 0.0, 0.3, 0.0)
    gap = closed_form("ex33", p, 3, printed=True).max_abs_diff(closed_form("ex33", p, 3))
    out.append(deviation(S, "ex33_printed_bessel_prefactor", 3, None, {
        "note": "the vector term needs the factor 2^(m/2-1) carried by the exp(x0) extension",
        "difference_at_0.2+0.3e2": float(f"{gap:.6e}"),
    }))
    return out


SUITE_FUNCS = {
    "algebra": suite_algebra,
    "polynomial": suite_polynomial,
    "axial": suite_axial,
    "ck": suite_ck,
    "families": suite_families,
    "fueter": suite_fueter,
    "planewave": suite_planewave,
    "numeric": suite_numeric,
}


def normalization_resolutions() -> list[dict]:
    out = []
    for which in EXAMPLES:
        res = resolve_normalization(which)
        out.append({
            "example": which,
            "resolved": res["resolved"],
            "max_residual": {k: float(f"{v:.3e}") for k, v in res["max_residual"].items()},
        })
    return out


def _sort_key(e: dict):
    return (e["suite"], e["check"], -1 if e["m"] is None else e["m"], -1 if e["k"] is None else e["k"])


def run_suites(suites, ms=None, kmax=None, seed: int = 0, tolerances=None, threads: int | None = None) -> dict:
    """Run suites in a thread pool and assemble a deterministic report."""
    if suites == "all" or suites == ["all"]:
        suites = list(SUITES)
    elif isinstance(suites, str):
        suites = [suites]
    tol = dict(DEFAULT_TOLERANCES)
    tol.update(tolerances or {})
    if threads is None:
        threads = int(os.environ.get("CK_THREADS", "0") or 0) or min(4, os.cpu_count() or 1)
    tasks = []
    for name in suites:
        if name not in SUITE_FUNCS:
            raise ValueError(f"unknown suite {name!r}")
        mlist = tuple(ms) if ms else DEFAULT_M[name]
        tasks.append((name, mlist))
    # one task per (suite, m) so the pool has work to spread
    jobs = []
    for name, mlist in tasks:
        if name in ("polynomial", "numeric"):
            jobs.append((name, mlist))
        else:
            jobs.extend((name, (m,)) for m in mlist)
    shared = [j for j in jobs if j[0] == "planewave"]
    if shared:
        # spot values and MC run once, attached to the first planewave job
        jobs = [j for j in jobs if j[0] != "planewave"] + [("planewave", tuple(m for _, (m,) in shared))]

    def run(job):
        name, mlist = job
        return SUITE_FUNCS[name](mlist, kmax, seed, tol)

    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            parts = list(pool.map(run, jobs))
    else:
        parts = [run(j) for j in jobs]
    unique = sorted((e for part in parts for e in part), key=_sort_key)
    summary = {s: sum(1 for e in unique if e["status"] == s) for s in ("pass", "fail", "deviation")}
    summary["total"] = len(unique)
    report = {
        "header": {
            "tool": "cliffck",
            "version": __version__,
            "seed": seed,
            "suites": list(suites),
            "m": list(ms) if ms else None,
            "kmax": kmax,
            "tolerances": tol,
        },
        "entries": unique,
        "summary": summary,
        "deviations": [e for e in unique if e["status"] == "deviation"],
        "failures": [e for e in unique if e["status"] == "fail"],
    }
    if "numeric" in suites:
        report["resolutions"] = normalization_resolutions()
    return report


def report_json(report: dict) -> str:
    return json.dumps(report, indent=2, sort_keys=True, default=str) + "\n"


def report_ok(report: dict) -> bool:
    return report["summary"]["fail"] == 0
