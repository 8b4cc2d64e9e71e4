"""Exact integer matrices and polynomials.

Everything here works on Python ints (and :class:`fractions.Fraction` where
Newton's identities divide); there is no floating point in this module.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from math import gcd
from typing import Iterable, Sequence

MAX_IRREDUCIBILITY_DEGREE = 12


class DimensionMismatch(ValueError):
    pass


class NotMonicNormalizable(ValueError):
    pass


class DegreeTooLarge(ValueError):
    pass


@dataclass(frozen=True)
class IntMatrix:
    rows: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        rows = tuple(tuple(int(x) for x in r) for r in self.rows)
        if any(len(r) != len(rows) for r in rows):
            raise DimensionMismatch("matrix must be square")
        object.__setattr__(self, "rows", rows)

    @classmethod
    def of(cls, rows: Iterable[Iterable[int]]) -> "IntMatrix":
        return cls(tuple(tuple(r) for r in rows))

    @classmethod
    def identity(cls, w: int) -> "IntMatrix":
        return cls(tuple(tuple(int(i == j) for j in range(w)) for i in range(w)))

    @classmethod
    def zero(cls, w: int) -> "IntMatrix":
        return cls(tuple((0,) * w for _ in range(w)))

    @classmethod
    def block_diagonal(cls, blocks: Sequence["IntMatrix"]) -> "IntMatrix":
        w = sum(b.w for b in blocks)
        rows = [[0] * w for _ in range(w)]
        off = 0
        for b in blocks:
            for i in range(b.w):
                for j in range(b.w):
                    rows[off + i][off + j] = b.rows[i][j]
            off += b.w
        return cls.of(rows)

    @property
    def w(self) -> int:
        return len(self.rows)

    def __getitem__(self, ij: tuple[int, int]) -> int:
        i, j = ij
        return self.rows[i][j]

    def _check(self, other: "IntMatrix"):
        if self.w != other.w:
            raise DimensionMismatch(f"{self.w}x{self.w} vs {other.w}x{other.w}")

    def __add__(self, other: "IntMatrix") -> "IntMatrix":
        self._check(other)
        return IntMatrix(tuple(tuple(a + b for a, b in zip(r, s)) for r, s in zip(self.rows, other.rows)))

    def __sub__(self, other: "IntMatrix") -> "IntMatrix":
        self._check(other)
        return IntMatrix(tuple(tuple(a - b for a, b in zip(r, s)) for r, s in zip(self.rows, other.rows)))

    def scale(self, c: int) -> "IntMatrix":
        return IntMatrix(tuple(tuple(c * a for a in r) for r in self.rows))

    def __matmul__(self, other: "IntMatrix") -> "IntMatrix":
        self._check(other)
        cols = list(zip(*other.rows))
        return IntMatrix(tuple(
            tuple(sum(a * b for a, b in zip(r, c)) for c in cols) for r in self.rows
        ))

    def __pow__(self, e: int) -> "IntMatrix":
        if e < 0:
            raise ValueError("negative matrix power")
        result = IntMatrix.identity(self.w)
        base = self
        while e:
            if e & 1:
                result = result @ base
            e >>= 1
            if e:
                base = base @ base
        return result

    def trace(self) -> int:
        return sum(self.rows[i][i] for i in range(self.w))

    def is_zero(self) -> bool:
        return all(x == 0 for r in self.rows for x in r)

    def tolist(self) -> list[list[int]]:
        return [list(r) for r in self.rows]

    def __str__(self) -> str:
        return "\n".join(" ".join(str(x) for x in r) for r in self.rows)


def mat_add(A: IntMatrix, B: IntMatrix) -> IntMatrix:
    return A + B


def mat_mul(A: IntMatrix, B: IntMatrix) -> IntMatrix:
    return A @ B


def mat_pow(A: IntMatrix, e: int) -> IntMatrix:
    return A ** e


def geometric_sum(M: IntMatrix, k: int) -> IntMatrix:
    """``I + M + M**2 + ... + M**k``, by Horner: ``S <- I + M S``."""
    if k < 0:
        raise ValueError("k must be >= 0")
    eye = IntMatrix.identity(M.w)
    S = eye
    for _ in range(k):
        S = eye + M @ S
    return S


@dataclass(frozen=True)
class IntPolynomial:
    """Integer polynomial, coefficients in ascending powers, no trailing zeros."""

    coeffs: tuple[int, ...]

    def __post_init__(self):
        c = [int(x) for x in self.coeffs]
        while c and c[-1] == 0:
            c.pop()
        object.__setattr__(self, "coeffs", tuple(c))

    @classmethod
    def of(cls, *coeffs: int) -> "IntPolynomial":
        return cls(tuple(coeffs))

    @classmethod
    def x(cls) -> "IntPolynomial":
        return cls((0, 1))

    @property
    def degree(self) -> int:
        """Degree; the zero polynomial has degree -1."""
        return len(self.coeffs) - 1

    @property
    def leading(self) -> int:
        return self.coeffs[-1] if self.coeffs else 0

    def is_zero(self) -> bool:
        return not self.coeffs

    def __add__(self, other: "IntPolynomial") -> "IntPolynomial":
        a, b = self.coeffs, other.coeffs
        m = max(len(a), len(b))
        return IntPolynomial(tuple(
            (a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0) for i in range(m)
        ))

    def __neg__(self) -> "IntPolynomial":
        return IntPolynomial(tuple(-c for c in self.coeffs))

    def __sub__(self, other: "IntPolynomial") -> "IntPolynomial":
        return self + (-other)

    def __mul__(self, other: "IntPolynomial") -> "IntPolynomial":
        if self.is_zero() or other.is_zero():
            return IntPolynomial(())
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return IntPolynomial(tuple(out))

    def __pow__(self, e: int) -> "IntPolynomial":
        result = IntPolynomial((1,))
        base = self
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result

    def __call__(self, x):
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def eval_matrix(self, M: IntMatrix) -> IntMatrix:
        acc = IntMatrix.zero(M.w)
        eye = IntMatrix.identity(M.w)
        for c in reversed(self.coeffs):
            acc = acc @ M + eye.scale(c)
        return acc

    def content(self) -> int:
        g = 0
        for c in self.coeffs:
            g = gcd(g, c)
        return g

    def __str__(self) -> str:
        if not self.coeffs:
            return "0"
        terms = []
        for i, c in enumerate(self.coeffs):
            if c == 0:
                continue
            mag = abs(c)
            if i == 0:
                body = str(mag)
            else:
                power = "x" if i == 1 else f"x^{i}"
                body = power if mag == 1 else f"{mag}*{power}"
            if not terms:
                terms.append(body if c > 0 else f"-{body}")
            else:
                terms.append(("+ " if c > 0 else "- ") + body)
        return " ".join(terms)


def companion_matrix(p: IntPolynomial) -> IntMatrix:
    """Companion matrix of a monic ``p``; its characteristic polynomial is ``p``."""
    if p.leading != 1 or p.degree < 1:
        raise ValueError("companion matrix needs a monic polynomial of degree >= 1")
    n = p.degree
    rows = [[0] * n for _ in range(n)]
    for i in range(1, n):
        rows[i][i - 1] = 1
    for i in range(n):
        rows[i][n - 1] = -p.coeffs[i]
    return IntMatrix.of(rows)


def char_poly(M: IntMatrix) -> IntPolynomial:
    """``det(xI - M)`` by the Berkowitz algorithm (division-free)."""
    rows = M.rows
    n = M.w
    if n == 0:
        return IntPolynomial((1,))
    # coefficient vectors below are highest power first
    C = [1, -rows[0][0]]
    for r in range(1, n):
        R = rows[r][:r]
        v = [rows[i][r] for i in range(r)]
        col = [1, -rows[r][r]]
        for _ in range(r):
            col.append(-sum(a * b for a, b in zip(R, v)))
            v = [sum(rows[i][j] * v[j] for j in range(r)) for i in range(r)]
        # lower-triangular Toeplitz (r+2)x(r+1) times C
        C = [
            sum(col[i - j] * C[j] for j in range(max(0, i - r - 1), min(i, r) + 1))
            for i in range(r + 2)
        ]
    return IntPolynomial(tuple(reversed(C)))


def newton_power_sums(p: IntPolynomial, L: int) -> list[Fraction]:
    """Power sums ``p_1..p_L`` of the roots of ``p`` via Newton's identities."""
    if p.degree < 1:
        raise NotMonicNormalizable("need a polynomial of degree >= 1")
    if L < 1:
        raise ValueError("L must be >= 1")
    n = p.degree
    lead = Fraction(p.leading)
    # monic form x^n + c[n-1] x^(n-1) + ... + c[0]
    c = [Fraction(a) / lead for a in p.coeffs]
    sums: list[Fraction] = []
    for m in range(1, L + 1):
        s = Fraction(0)
        for i in range(1, min(m - 1, n) + 1):
            s -= c[n - i] * sums[m - i - 1]
        if m <= n:
            s -= m * c[n - m]
        sums.append(s)
    return sums


def _divmod_poly(a: Sequence[Fraction], b: Sequence[Fraction]) -> tuple[list[Fraction], list[Fraction]]:
    """Polynomial long division over Q, ascending coefficient lists."""
    a = list(a)
    q = [Fraction(0)] * max(len(a) - len(b) + 1, 1)
    while len(a) >= len(b) and any(a):
        shift = len(a) - len(b)
        f = a[-1] / b[-1]
        q[shift] = f
        for i, bc in enumerate(b):
            a[shift + i] -= f * bc
        while a and a[-1] == 0:
            a.pop()
    return q, a


def _divisors(m: int) -> list[int]:
    m = abs(m)
    small, large = [], []
    i = 1
    while i * i <= m:
        if m % i == 0:
            small.append(i)
            if i * i != m:
                large.append(m // i)
        i += 1
    return small + large[::-1]


def _find_factor_of_degree(p: IntPolynomial, s: int) -> IntPolynomial | None:
    """Kronecker search for an integer factor of exact degree ``s``.

    The factor is pinned down by its values at ``s + 1`` integer nodes, each a
    divisor of ``p`` at that node. Candidates are built one node at a time in
    Newton form; integer polynomials have integer Newton coefficients on
    integer nodes, which prunes most branches early.
    """
    # nodes with small |p(x)| keep the divisor lists short
    # roots are skipped; linear factors surface through the other nodes
    pool = [x for x in range(-(s + 4), s + 5) if p(x) != 0]
    nodes = sorted(pool, key=lambda x: (abs(p(x)), abs(x), x))[: s + 1]
    values = [p(x) for x in nodes]
    choices = []
    for i, val in enumerate(values):
        ds = _divisors(val)
        # g and -g are both factors: fix the sign of g at the first node
        choices.append(ds if i == 0 else ds + [-x for x in ds])
    lead = p.leading

    def extend(newton: list[int], picked: list[int]):
        j = len(picked)
        if j == s + 1:
            return newton
        xj = nodes[j]
        for yj in choices[j]:
            # divided difference of order j through nodes[0..j]
            val = yj
            prod = 1
            acc = 0
            for i in range(j):
                acc += newton[i] * prod
                prod *= xj - nodes[i]
            num = val - acc
            if num % prod:
                continue
            cj = num // prod
            if j == s and (cj == 0 or lead % cj):
                continue
            found = extend(newton + [cj], picked + [yj])
            if found is not None:
                g = _newton_to_poly(found, nodes)
                q, r = _divmod_poly([Fraction(c) for c in p.coeffs], [Fraction(c) for c in g.coeffs])
                if not r and all(x.denominator == 1 for x in q):
                    return found
        return None

    res = extend([], [])
    return None if res is None else _newton_to_poly(res, nodes)


def _newton_to_poly(newton: Sequence[int], nodes: Sequence[int]) -> IntPolynomial:
    poly = IntPolynomial(())
    basis = IntPolynomial((1,))
    for i, c in enumerate(newton):
        poly = poly + basis * IntPolynomial((c,))
        basis = basis * IntPolynomial((-nodes[i], 1))
    return poly


def is_irreducible_small(p: IntPolynomial) -> bool:
    """Irreducibility over Q by exhaustive integer factor search.

    Degree 0 (units and zero) counts as not irreducible. Capped at degree
    :data:`MAX_IRREDUCIBILITY_DEGREE`.
    """
    if p.degree > MAX_IRREDUCIBILITY_DEGREE:
        raise DegreeTooLarge(f"degree {p.degree} > {MAX_IRREDUCIBILITY_DEGREE}")
    if p.degree < 1:
        return False
    if p.degree == 1:
        return True
    g = p.content()
    prim = IntPolynomial(tuple(c // g for c in p.coeffs))
    # rational root test
    a0, an = prim.coeffs[0], prim.leading
    if a0 == 0:
        return False
    for num in _divisors(a0):
        for den in _divisors(an):
            for sign in (1, -1):
                r = Fraction(sign * num, den)
                if sum(Fraction(c) * r ** i for i, c in enumerate(prim.coeffs)) == 0:
                    return False
    for s in range(2, prim.degree // 2 + 1):
        if _find_factor_of_degree(prim, s) is not None:
            return False
    return True


def find_factor(p: IntPolynomial) -> IntPolynomial | None:
    """A nontrivial integer factor of the primitive part of ``p``, if any."""
    g = p.content()
    prim = IntPolynomial(tuple(c // g for c in p.coeffs))
    for s in range(1, prim.degree // 2 + 1):
        f = _find_factor_of_degree(prim, s)
        if f is not None:
            return f
    return None


def two_plus_geometric(k: int) -> IntPolynomial:
    """``2 + x + x**2 + ... + x**k``."""
    return IntPolynomial((2,) + (1,) * k)
