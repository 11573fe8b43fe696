"""Independent reference computations used as test oracles.

Nothing here imports the package's own arithmetic: mutation uses the
sign-case form of the exchange rule, conjugation multiplies explicit
permutation matrices, derivatives are central differences, and closed
forms are evaluated in mpmath.
"""

import mpmath
import numpy as np


def naive_mutate(B, k):
    """Sign-case matrix mutation at 0-based node ``k``."""
    B = [list(r) for r in B]
    n = len(B)
    out = [[0] * n for _ in range(n)]
    for i in range(n):
        for j in range(n):
            if i == k or j == k:
                out[i][j] = -B[i][j]
            elif B[i][k] > 0 and B[k][j] > 0:
                out[i][j] = B[i][j] + B[i][k] * B[k][j]
            elif B[i][k] < 0 and B[k][j] < 0:
                out[i][j] = B[i][j] - B[i][k] * B[k][j]
            else:
                out[i][j] = B[i][j]
    return out


def sigma(n):
    s = np.zeros((n, n), dtype=object)
    for i in range(n - 1):
        s[i, i + 1] = 1
    s[n - 1, 0] = 1
    return s


def naive_conjugate(B, m):
    """``sigma^-m B sigma^m`` by explicit products (``sigma^-1 = sigma^T``)."""
    n = len(B)
    s = sigma(n)
    p = np.identity(n, dtype=object)
    for _ in range(m):
        p = p.dot(s)
    return (p.T.dot(np.array(B, dtype=object)).dot(p)).tolist()


def naive_is_period(B, m):
    cur = [list(r) for r in B]
    for j in range(m):
        cur = naive_mutate(cur, j % len(B))
    return cur == naive_conjugate(B, m)


def naive_exchange(B, k, u):
    """Linear-domain exchange relation at 0-based node ``k`` in mpmath."""
    u = [mpmath.mpf(x) for x in u]
    plus = mpmath.mpf(1)
    minus = mpmath.mpf(1)
    for j, b in enumerate(B[k]):
        if b > 0:
            plus *= u[j] ** b
        elif b < 0:
            minus *= u[j] ** (-b)
    out = list(u)
    out[k] = (plus + minus) / u[k]
    return out


def naive_phi(B, m, u):
    cur = [list(r) for r in B]
    u = list(u)
    n = len(B)
    for j in range(m):
        u = naive_exchange(cur, j % n, u)
        cur = naive_mutate(cur, j % n)
    s = m % n
    return u[s:] + u[:s]


def fd_log_jacobian(f, u, h=1e-6):
    """Central differences of ``log f`` with respect to ``log u``."""
    v = np.log(np.asarray(u, dtype=float))
    cols = []
    for i in range(len(v)):
        e = np.zeros_like(v)
        e[i] = h
        hi = np.log(np.asarray(f(np.exp(v + e)), dtype=float))
        lo = np.log(np.asarray(f(np.exp(v - e)), dtype=float))
        cols.append((hi - lo) / (2 * h))
    return np.array(cols).T


def random_skew(rng, n, bound=5):
    a = rng.integers(-bound, bound + 1, size=(n, n))
    b = np.triu(a, 1)
    return (b - b.T).tolist()


def mp_monomial(exponents, u):
    out = mpmath.mpf(1)
    for e, x in zip(exponents, u):
        e = mpmath.mpf(e.numerator) / e.denominator if hasattr(e, "numerator") else mpmath.mpf(e)
        out *= mpmath.mpf(x) ** e
    return out


# Closed-form reduced maps, evaluated in mpmath.

def phi_hat_51(f1, f2):
    f1, f2 = mpmath.mpf(f1), mpmath.mpf(f2)
    a = 1 + f1**2
    return (
        f2 ** mpmath.mpf(0.75) * (f2 + a**2) ** mpmath.mpf(2.5) / (f1 ** mpmath.mpf(2.5) * a ** mpmath.mpf(6.5)),
        f2 ** mpmath.mpf(3.5) * (f2 + a**2) ** 13 / (f1**13 * a**33),
    )


def phi_hat_52(f1, f2, f3, f4):
    f1, f2, f3, f4 = map(mpmath.mpf, (f1, f2, f3, f4))
    return (
        f3**8 * (1 + f1 + f2) ** 2 / (f1**2 * f2 * (1 + f1)),
        f2**3 * f4 * (1 + f1 + f2) / (f1 * (1 + f1) ** 4),
        f3**4 * (1 + f1 + f2) / (f1 * f2 * f4 ** mpmath.mpf(0.125)),
        f3**8 * (1 + f1) ** 8 / (f2**8 * f4**2),
    )


def phi_hat_53(f1, f2):
    f1, f2 = mpmath.mpf(f1), mpmath.mpf(f2)
    return (f2, (1 + f2**2) / (f1 * f2**3))
