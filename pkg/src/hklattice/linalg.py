"""Exact integer and rational matrix algebra.

Matrices are tuples of row tuples holding Python ints (``IntMatrix``) or
``fractions.Fraction`` values (``RatMatrix``).  Every routine here is exact;
no floating point is used anywhere.  Pivot choices are deterministic
(smallest nonzero absolute value, then lowest index) so that all normal
forms are reproducible.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Sequence, Tuple

IntMatrix = Tuple[Tuple[int, ...], ...]
RatMatrix = Tuple[Tuple[Fraction, ...], ...]
Poly = Tuple[int, ...]  # ascending coefficients, c0 + c1 x + ...


class LinalgError(ValueError):
    pass


def as_int_matrix(rows: Sequence[Sequence[int]]) -> IntMatrix:
    out = tuple(tuple(int(x) for x in r) for r in rows)
    if out and len({len(r) for r in out}) != 1:
        raise LinalgError("ragged matrix")
    for r in rows:
        for x in r:
            if isinstance(x, Fraction) and x.denominator != 1:
                raise LinalgError(f"non-integral entry {x}")
    return out


def as_rat_matrix(rows) -> RatMatrix:
    return tuple(tuple(Fraction(x) for x in r) for r in rows)


def shape(A) -> Tuple[int, int]:
    return len(A), (len(A[0]) if A else 0)


def identity(n: int) -> IntMatrix:
    return tuple(tuple(int(i == j) for j in range(n)) for i in range(n))


def zeros(m: int, n: int) -> IntMatrix:
    return tuple((0,) * n for _ in range(m))


def transpose(A):
    return tuple(zip(*A)) if A else ()


def matmul(A, B):
    Bt = transpose(B)
    return tuple(tuple(sum(a * b for a, b in zip(row, col)) for col in Bt) for row in A)


def matvec(A, v):
    return tuple(sum(a * x for a, x in zip(row, v)) for row in A)


def vecmat(v, A):
    return tuple(sum(x * a for x, a in zip(v, col)) for col in transpose(A))


def dot(u, v):
    return sum(a * b for a, b in zip(u, v))


def scale(A, s):
    return tuple(tuple(s * x for x in r) for r in A)


def add(A, B):
    return tuple(tuple(a + b for a, b in zip(r, s)) for r, s in zip(A, B))


def sub(A, B):
    return tuple(tuple(a - b for a, b in zip(r, s)) for r, s in zip(A, B))


def block_diag(*blocks) -> IntMatrix:
    n = sum(len(b) for b in blocks)
    out = [[0] * n for _ in range(n)]
    k = 0
    for b in blocks:
        for i, row in enumerate(b):
            for j, x in enumerate(row):
                out[k + i][k + j] = x
        k += len(b)
    return tuple(tuple(r) for r in out)


def is_symmetric(A) -> bool:
    return all(A[i][j] == A[j][i] for i in range(len(A)) for j in range(i))


def matpow(A, k: int):
    result = identity(len(A))
    base = A
    while k:
        if k & 1:
            result = matmul(result, base)
        base = matmul(base, base)
        k >>= 1
    return result


def _check_square(A):
    m, n = shape(A)
    if m != n:
        raise LinalgError(f"expected a square matrix, got {m}x{n}")
    return m


# ---------------------------------------------------------------------------
# Hermite and Smith normal forms


def hnf(A) -> Tuple[IntMatrix, IntMatrix]:
    """Row Hermite normal form.

    Returns ``(H, U)`` with ``U`` unimodular and ``U·A = H``.  ``H`` is in row
    echelon form with positive pivots, entries above each pivot reduced into
    ``[0, pivot)``, and zero rows at the bottom.
    """
    m, n = shape(A)
    H = [list(r) for r in A]
    U = [list(r) for r in identity(m)]
    r = 0
    for j in range(n):
        if r == m:
            break
        while True:
            rows = [i for i in range(r, m) if H[i][j] != 0]
            if not rows:
                break
            p = min(rows, key=lambda i: (abs(H[i][j]), i))
            H[r], H[p] = H[p], H[r]
            U[r], U[p] = U[p], U[r]
            piv = H[r][j]
            done = True
            for i in range(r + 1, m):
                if H[i][j]:
                    q = H[i][j] // piv
                    H[i] = [a - q * b for a, b in zip(H[i], H[r])]
                    U[i] = [a - q * b for a, b in zip(U[i], U[r])]
                    if H[i][j]:
                        done = False
            if done:
                break
        if H[r][j] == 0:
            continue
        if H[r][j] < 0:
            H[r] = [-a for a in H[r]]
            U[r] = [-a for a in U[r]]
        piv = H[r][j]
        for i in range(r):
            q = H[i][j] // piv
            if q:
                H[i] = [a - q * b for a, b in zip(H[i], H[r])]
                U[i] = [a - q * b for a, b in zip(U[i], U[r])]
        r += 1
    return tuple(map(tuple, H)), tuple(map(tuple, U))


def hnf_rows(rows) -> IntMatrix:
    """HNF of the row span with zero rows dropped."""
    if not rows:
        return ()
    H, _ = hnf(rows)
    return tuple(r for r in H if any(r))


@dataclass(frozen=True)
class SmithDecomposition:
    U: IntMatrix
    D: IntMatrix
    V: IntMatrix

    @property
    def diagonal(self) -> Tuple[int, ...]:
        return tuple(self.D[i][i] for i in range(min(shape(self.D))))


def snf(A) -> SmithDecomposition:
    """Smith normal form ``U·A·V = D`` with unimodular ``U``, ``V``."""
    m, n = shape(A)
    D = [list(r) for r in A]
    U = [list(r) for r in identity(m)]
    V = [list(r) for r in identity(n)]

    def swap_cols(M, a, b):
        for row in M:
            row[a], row[b] = row[b], row[a]

    def col_axpy(M, dst, src, q):
        # column dst -= q * column src
        for row in M:
            row[dst] -= q * row[src]

    t = 0
    while t < min(m, n):
        best = None
        for i in range(t, m):
            for j in range(t, n):
                if D[i][j]:
                    key = (abs(D[i][j]), i, j)
                    if best is None or key < best:
                        best = key
        if best is None:
            break
        _, pi, pj = best
        D[t], D[pi] = D[pi], D[t]
        U[t], U[pi] = U[pi], U[t]
        swap_cols(D, t, pj)
        swap_cols(V, t, pj)
        piv = D[t][t]
        clean = True
        for i in range(t + 1, m):
            if D[i][t]:
                q = D[i][t] // piv
                D[i] = [a - q * b for a, b in zip(D[i], D[t])]
                U[i] = [a - q * b for a, b in zip(U[i], U[t])]
                if D[i][t]:
                    clean = False
        for j in range(t + 1, n):
            if D[t][j]:
                q = D[t][j] // piv
                col_axpy(D, j, t, q)
                col_axpy(V, j, t, q)
                if D[t][j]:
                    clean = False
        if not clean:
            continue
        bad = next(
            (i for i in range(t + 1, m) for j in range(t + 1, n) if D[i][j] % piv),
            None,
        )
        if bad is not None:
            D[t] = [a + b for a, b in zip(D[t], D[bad])]
            U[t] = [a + b for a, b in zip(U[t], U[bad])]
            continue
        if piv < 0:
            D[t] = [-a for a in D[t]]
            U[t] = [-a for a in U[t]]
        t += 1
    return SmithDecomposition(tuple(map(tuple, U)), tuple(map(tuple, D)), tuple(map(tuple, V)))


# ---------------------------------------------------------------------------
# determinants, kernels, inverses


def det_exact(A) -> int:
    """Determinant by Bareiss fraction-free elimination."""
    n = _check_square(A)
    if n == 0:
        return 1
    M = [list(r) for r in A]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if M[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if M[i][k]), None)
            if swap is None:
                return 0
            M[k], M[swap] = M[swap], M[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                M[i][j] = (M[i][j] * M[k][k] - M[i][k] * M[k][j]) // prev
        prev = M[k][k]
    return sign * M[n - 1][n - 1]


def kernel_basis(A, ncols: int | None = None) -> Tuple[Tuple[int, ...], ...]:
    """Saturated basis of ``{x in Z^n : A·x = 0}``, HNF-reduced."""
    m, n = shape(A)
    if m == 0:
        return identity(ncols or 0)
    H, U = hnf(transpose(A))
    ker = [U[i] for i in range(n) if not any(H[i])]
    return hnf_rows(ker)


def rank(A) -> int:
    if not A:
        return 0
    return len(hnf_rows(A))


def inverse_rational(A) -> RatMatrix:
    n = _check_square(A)
    M = [[Fraction(x) for x in r] + [Fraction(int(i == j)) for j in range(n)] for i, r in enumerate(A)]
    for c in range(n):
        p = next((i for i in range(c, n) if M[i][c] != 0), None)
        if p is None:
            raise LinalgError("singular matrix")
        M[c], M[p] = M[p], M[c]
        pv = M[c][c]
        M[c] = [x / pv for x in M[c]]
        for i in range(n):
            if i != c and M[i][c] != 0:
                f = M[i][c]
                M[i] = [a - f * b for a, b in zip(M[i], M[c])]
    return tuple(tuple(r[n:]) for r in M)


def solve_rational(A, b) -> Tuple[Fraction, ...]:
    return matvec(inverse_rational(A), b)


def is_integral(A) -> bool:
    return all(Fraction(x).denominator == 1 for r in A for x in r)


def to_int(A) -> IntMatrix:
    if not is_integral(A):
        raise LinalgError("matrix has non-integral entries")
    return tuple(tuple(int(x) for x in r) for r in A)


def common_denominator(rows) -> int:
    d = 1
    for r in rows:
        for x in r:
            q = Fraction(x).denominator
            d = d * q // gcd(d, q)
    return d


def vector_gcd(v) -> int:
    g = 0
    for x in v:
        g = gcd(g, int(x))
    return g


# ---------------------------------------------------------------------------
# polynomials


def char_poly(A) -> Poly:
    """Characteristic polynomial det(xI - A), ascending coefficients.

    Faddeev-LeVerrier recursion; every division is exact over Z.
    """
    n = _check_square(A)
    coeffs = [0] * (n + 1)
    coeffs[n] = 1
    M = zeros(n, n)
    for k in range(1, n + 1):
        M = add(matmul(A, M), scale(identity(n), coeffs[n - k + 1]))
        AM = matmul(A, M)
        tr = sum(AM[i][i] for i in range(n))
        if tr % k:
            raise LinalgError("non-integral characteristic polynomial")
        coeffs[n - k] = -tr // k
    return tuple(coeffs)


def poly_trim(p) -> Poly:
    p = list(p)
    while len(p) > 1 and p[-1] == 0:
        p.pop()
    return tuple(p)


def poly_mul(p, q) -> Poly:
    out = [0] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        if a:
            for j, b in enumerate(q):
                out[i + j] += a * b
    return poly_trim(out)


def poly_divmod(p, d) -> Tuple[Poly, Poly]:
    """Division by a monic polynomial over Z."""
    d = poly_trim(d)
    if d[-1] != 1:
        raise LinalgError("divisor must be monic")
    p = list(poly_trim(p))
    if len(p) < len(d):
        return (0,), tuple(p)
    q = [0] * (len(p) - len(d) + 1)
    for k in range(len(q) - 1, -1, -1):
        c = p[k + len(d) - 1]
        q[k] = c
        if c:
            for j, b in enumerate(d):
                p[k + j] -= c * b
    return poly_trim(q), poly_trim(p[: len(d) - 1] or [0])


def poly_eval_matrix(p, A) -> IntMatrix:
    """Horner evaluation of an integer polynomial at a square matrix."""
    n = _check_square(A)
    R = zeros(n, n)
    for c in reversed(p):
        R = add(matmul(R, A), scale(identity(n), c))
    return R


def cyclotomic(e: int) -> Poly:
    if e < 1:
        raise LinalgError("cyclotomic index must be positive")
    p = (-1,) + (0,) * (e - 1) + (1,)
    for d in range(1, e):
        if e % d == 0:
            p, r = poly_divmod(p, cyclotomic(d))
            assert not any(r)
    return p


def companion(p) -> IntMatrix:
    """Companion matrix of a monic polynomial given in ascending order."""
    p = poly_trim(p)
    n = len(p) - 1
    return tuple(
        tuple((1 if i == j + 1 else 0) if j < n - 1 else -p[i] for j in range(n))
        for i in range(n)
    )


def multiplicity(p, d) -> int:
    k = 0
    while len(poly_trim(p)) >= len(poly_trim(d)):
        q, r = poly_divmod(p, d)
        if any(r):
            break
        p = q
        k += 1
    return k


# ---------------------------------------------------------------------------
# inertia


def inertia(G) -> Tuple[int, int]:
    """Signature ``(n_plus, n_minus)`` of a nondegenerate symmetric matrix.

    Symmetric Gaussian elimination over Q: a nonzero diagonal pivot is used
    when available, otherwise a congruence ``x_i += x_j`` creates one.
    """
    n = _check_square(G)
    if not is_symmetric(G):
        raise LinalgError("matrix is not symmetric")
    if det_exact(G) == 0:
        raise LinalgError("degenerate Gram matrix")
    M = [[Fraction(x) for x in r] for r in G]
    live = list(range(n))
    plus = minus = 0
    while live:
        diag = [i for i in live if M[i][i] != 0]
        if not diag:
            i, j = next((i, j) for i in live for j in live if M[i][j] != 0)
            for k in range(n):
                M[i][k] += M[j][k]
            for k in range(n):
                M[k][i] += M[k][j]
            continue
        p = min(diag, key=lambda i: (abs(M[i][i]), i))
        piv = M[p][p]
        if piv > 0:
            plus += 1
        else:
            minus += 1
        live.remove(p)
        for i in live:
            f = M[i][p] / piv
            if f:
                for k in live:
                    M[i][k] -= f * M[p][k]
    return plus, minus
