"""Checkable certificates for the excess-one non-existence argument.

Matrix-level checks take a :class:`QuotientPseudodigraph`; the arithmetic
scans and structural filters work on ``(d, k)`` alone, always with
``N = M(d, k) + 1``.
"""

from __future__ import annotations

from typing import Optional

from .exact import IntMatrix, IntPolynomial, char_poly, geometric_sum, two_plus_geometric
from .geodecity import moore_bound
from .permutation import PermutationStructure
from .quotient import QuotientPseudodigraph
from .report import CertificateReport, StructuralCaseReport

MIN_WINDOW = (12, 10)
SCAN_D0, SCAN_K0 = 3, 5  # smaller d, k are settled by earlier results


class WindowTooSmall(ValueError):
    pass


class ScanTruncated(RuntimeError):
    """The scan window might hide further solutions near its edge."""


def _echo(Q: QuotientPseudodigraph, k: int, d: Optional[int] = None) -> dict:
    return {"d": Q.d if d is None else d, "k": k, "w": Q.w, "N": Q.N}


def orbit_size_matrix(sizes) -> IntMatrix:
    """``B``: every row is the vector of orbit sizes."""
    return IntMatrix.of([list(sizes) for _ in sizes])


def check_main_equation(Q: QuotientPseudodigraph, k: int) -> CertificateReport:
    """``I + A + ... + A**k == B - I`` exactly."""
    lhs = geometric_sum(Q.mult, k)
    rhs = orbit_size_matrix(Q.orbit_sizes) - IntMatrix.identity(Q.w)
    inputs = _echo(Q, k)
    for i in range(Q.w):
        for j in range(Q.w):
            if lhs[i, j] != rhs[i, j]:
                return CertificateReport.failed(
                    "main_equation", inputs, entry=[i, j], lhs=lhs[i, j], rhs=rhs[i, j],
                    lhs_matrix=lhs.tolist(), rhs_matrix=rhs.tolist(),
                )
    return CertificateReport.ok("main_equation", inputs, lhs_matrix=lhs.tolist())


def expected_char_poly(d: int, k: int, a: int) -> IntPolynomial:
    return IntPolynomial.of(-d, 1) * two_plus_geometric(k) ** a


def check_charpoly_form(Q: QuotientPseudodigraph, d: int, k: int) -> CertificateReport:
    inputs = _echo(Q, k, d)
    if (Q.w - 1) % k:
        return CertificateReport.failed(
            "charpoly_form", inputs, reason="k does not divide w-1", remainder=(Q.w - 1) % k,
        )
    a = (Q.w - 1) // k
    inputs["a"] = a
    got = char_poly(Q.mult)
    want = expected_char_poly(d, k, a)
    if got != want:
        return CertificateReport.failed("charpoly_form", inputs, computed=str(got), expected=str(want))
    return CertificateReport.ok("charpoly_form", inputs, char_poly=str(got))


def expected_traces(d: int, k: int, a: int) -> list[int]:
    """``d**l - a`` for ``l = 1..k-1``."""
    return [d**l - a for l in range(1, k)]


def check_trace_identities(Q: QuotientPseudodigraph, d: int, k: int) -> CertificateReport:
    """Trace identities for ``A**l``, plus ``a <= d`` and ``w <= 1 + d k``."""
    inputs = _echo(Q, k, d)
    if (Q.w - 1) % k:
        return CertificateReport.failed(
            "trace_identities", inputs, reason="k does not divide w-1", remainder=(Q.w - 1) % k,
        )
    a = (Q.w - 1) // k
    inputs["a"] = a
    traces = []
    P = IntMatrix.identity(Q.w)
    for l, want in enumerate(expected_traces(d, k, a), start=1):
        P = P @ Q.mult
        t = P.trace()
        traces.append(t)
        if t != want:
            return CertificateReport.failed("trace_identities", inputs, power=l, trace=t, expected=want)
    if a > d:
        return CertificateReport.failed("trace_identities", inputs, reason="a > d", traces=traces)
    if Q.w > 1 + d * k:
        return CertificateReport.failed("trace_identities", inputs, reason="w > 1 + d*k", traces=traces)
    return CertificateReport.ok("trace_identities", inputs, traces=traces)


def check_trace_bound(Q: QuotientPseudodigraph, k: int) -> CertificateReport:
    """``tr(A + ... + A**h) <= h w`` with ``h = k // 2``."""
    h = k // 2
    total = 0
    P = IntMatrix.identity(Q.w)
    for _ in range(h):
        P = P @ Q.mult
        total += P.trace()
    inputs = _echo(Q, k)
    if total > h * Q.w:
        return CertificateReport.failed("trace_bound", inputs, trace_sum=total, bound=h * Q.w)
    return CertificateReport.ok("trace_bound", inputs, trace_sum=total, bound=h * Q.w)


def _power_sum(d: int, h: int) -> int:
    return sum(d**i for i in range(1, h + 1))


def inequality_one(d: int, k: int, a: int) -> bool:
    h = k // 2
    return _power_sum(d, h) - h * a <= h * (1 + a * k)


def inequality_two_sides(d: int, k: int) -> tuple[int, int]:
    h = k // 2
    return _power_sum(d, h), h * (1 + d + d * k)


def inequality_two(d: int, k: int) -> bool:
    lhs, rhs = inequality_two_sides(d, k)
    return lhs <= rhs


def exceptional_pairs(d_max: int = 50, k_max: int = 50) -> list[tuple[int, int]]:
    """All ``(d, k)`` with ``3 <= d <= d_max``, ``5 <= k <= k_max`` passing :func:`inequality_two`.

    Raises :class:`ScanTruncated` unless the survivors are bounded away from
    the window edge: along every row of fixed ``k`` and along every column of
    fixed ``d`` restricted to one parity of ``k``, the failures form a
    suffix, and the last ``d`` and last ``k`` of the window fail everywhere.
    """
    if d_max < MIN_WINDOW[0] or k_max < MIN_WINDOW[1]:
        raise WindowTooSmall(f"window ({d_max}, {k_max}) smaller than {MIN_WINDOW}")
    ds = range(SCAN_D0, d_max + 1)
    ks = range(SCAN_K0, k_max + 1)
    grid = {(d, k): inequality_two(d, k) for d in ds for k in ks}
    for k in ks:
        _assert_suffix_fails([grid[d, k] for d in ds], f"k={k}")
    for d in ds:
        for parity in (0, 1):
            _assert_suffix_fails([grid[d, k] for k in ks if k % 2 == parity], f"d={d}, k%2={parity}")
    if any(grid[d_max, k] for k in ks) or any(grid[d, k_max] for d in ds):
        raise ScanTruncated("survivors reach the edge of the scan window")
    return sorted(((d, k) for (d, k), ok in grid.items() if ok), key=lambda p: (p[1], p[0]))


def _assert_suffix_fails(line: list[bool], label: str):
    seen_fail = False
    for ok in line:
        if not ok:
            seen_fail = True
        elif seen_fail:
            raise ScanTruncated(f"non-monotone survivors along {label}")


def exceptional_table(d_max: int = 50, k_max: int = 50) -> list[dict]:
    rows = []
    for d, k in exceptional_pairs(d_max, k_max):
        lhs, rhs = inequality_two_sides(d, k)
        rows.append({"d": d, "k": k, "lhs": lhs, "rhs": rhs})
    return rows


def _divisors(m: int) -> list[int]:
    small, large = [], []
    i = 1
    while i * i <= m:
        if m % i == 0:
            small.append(i)
            if i * i != m:
                large.append(m // i)
        i += 1
    return small + large[::-1]


def outlier_regular_filter(d: int, k: int) -> StructuralCaseReport:
    """All orbits share one length ``omega``: ``w = N / omega``, ``a = (w - 1) / k``."""
    N = moore_bound(d, k) + 1
    candidates = []
    satisfying = None
    for omega in _divisors(N):
        if omega < 2:
            continue
        w = N // omega
        cand = {"omega": omega, "w": w}
        if (w - 1) % k:
            cand.update(a=None, ok=False, reason="k does not divide w-1")
        else:
            a = (w - 1) // k
            cand["a"] = a
            if a > d:
                cand.update(ok=False, reason="a > d")
            elif not inequality_one(d, k, a):
                cand.update(ok=False, reason="inequality one fails")
            else:
                cand.update(ok=True, reason="feasible")
        candidates.append(cand)
        if cand["ok"] and satisfying is None:
            satisfying = cand
    return StructuralCaseReport("OutlierRegular", d, k, N, satisfying is not None, candidates, satisfying)


def _orbit_count_candidate(N_rest: int, l: int, k: int, d: int, **extra) -> dict:
    """Remaining ``N_rest`` vertices in orbits of length ``l``; ``a = N_rest / (l k)``."""
    cand = dict(extra, l=l)
    if N_rest % (l * k):
        cand.update(a=None, ok=False, reason="a not integral", remainder=N_rest % (l * k))
    else:
        a = N_rest // (l * k)
        cand.update(a=a, ok=a <= d, reason="feasible" if a <= d else "a > d")
    return cand


def type_a_filter(d: int, k: int) -> StructuralCaseReport:
    """One ``(k+2)``-orbit plus orbits of a length ``l > k+2`` dividing ``(k+2)(d-1)``."""
    N = moore_bound(d, k) + 1
    candidates = []
    for l in _divisors((k + 2) * (d - 1)):
        if l > k + 2:
            candidates.append(_orbit_count_candidate(N - k - 2, l, k, d))
    satisfying = next((c for c in candidates if c["ok"]), None)
    bound = k + 2 + k * (k + 2) * (d - 1) * d
    return StructuralCaseReport(
        "TypeA", d, k, N, satisfying is not None, candidates, satisfying,
        {"global_bound": bound, "N_within_bound": N <= bound},
    )


def type_b_filter(d: int, k: int, min_length_exclusive: int = 3) -> StructuralCaseReport:
    """A single transposition; the other orbit lengths divide ``2t`` with ``t | d``, ``t > 1``.

    Two-length case: every other orbit has one length ``l > min_length_exclusive``.
    Three-length case: lengths ``2 < k+2 < l3``, both dividing ``2t``; orbit
    counts are solved exactly for each ``a <= d``.
    """
    N = moore_bound(d, k) + 1
    candidates = []
    for t in _divisors(d):
        if t <= 1:
            continue
        for l in _divisors(2 * t):
            if l > min_length_exclusive:
                candidates.append(_orbit_count_candidate(N - 2, l, k, d, t=t, lengths=2))
        if (2 * t) % (k + 2) == 0:
            for l3 in _divisors(2 * t):
                if l3 > k + 2:
                    candidates.append(_three_length_candidate(N, d, k, t, l3))
    satisfying = next((c for c in candidates if c["ok"]), None)
    return StructuralCaseReport(
        "TypeB", d, k, N, satisfying is not None, candidates, satisfying,
        {
            "bound": 2 + d * d * k,
            "conservative_bound": 2 + 2 * d * d * k,
            "N_within_conservative_bound": N <= 2 + 2 * d * d * k,
            "min_length_exclusive": min_length_exclusive,
        },
    )


def _three_length_candidate(N: int, d: int, k: int, t: int, l3: int) -> dict:
    # N - 2 = (k+2) x + l3 y with x, y >= 1 and x + y = a k = w - 1
    l2 = k + 2
    for a in range(1, d + 1):
        s = a * k
        num = l3 * s - (N - 2)
        if num % (l3 - l2) == 0:
            x = num // (l3 - l2)
            if 1 <= x <= s - 1:
                return {"t": t, "lengths": 3, "l2": l2, "l3": l3, "a": a,
                        "m_l2": x, "m_l3": s - x, "ok": True, "reason": "feasible"}
    return {"t": t, "lengths": 3, "l2": l2, "l3": l3, "a": None, "ok": False,
            "reason": "no a <= d solves the orbit count"}


def order_structure_filter(ps: PermutationStructure, k: int) -> tuple[bool, str]:
    lengths = ps.lengths
    if len(lengths) > 3:
        return False, f"{len(lengths)} distinct orbit lengths"
    if len(lengths) == 3 and lengths[:2] != [2, k + 2]:
        return False, f"three lengths {lengths} but the two smallest must be 2 and {k + 2}"
    return True, "ok"


def structural_verdicts(d: int, k: int) -> dict[str, StructuralCaseReport]:
    return {
        "outlier_regular": outlier_regular_filter(d, k),
        "type_a": type_a_filter(d, k),
        "type_b": type_b_filter(d, k),
    }


def quotient_certificates(Q: QuotientPseudodigraph, d: int, k: int) -> list[CertificateReport]:
    """The full matrix-level chain for one quotient."""
    return [
        check_main_equation(Q, k),
        check_charpoly_form(Q, d, k),
        check_trace_identities(Q, d, k),
        check_trace_bound(Q, k),
    ]
