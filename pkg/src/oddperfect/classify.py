"""Classifying integers against structural divisor-sum theorems.

Covers integer abundancy (k-perfect numbers), the decomposition
N = m * q^alpha with sigma(m) = q^alpha, the Euler form of odd perfect
candidates, 2-adic valuation bookkeeping for sigma, and the product
sigma(3^2)*sigma(5^2)*... used to bound the special prime's contribution.
"""
from __future__ import annotations

import json
import math
from dataclasses import dataclass

import numpy as np

from .arith import (
    factorize,
    first_odd_primes,
    isqrt_exact,
    sigma,
    sigma_prime_power,
    vp,
)
from .errors import ConsistencyError


def abundancy(n: int) -> tuple[int, int | None]:
    """(sigma(n), k) with k = sigma(n)/n when that ratio is an integer.

    >>> abundancy(6)
    (12, 2)
    >>> abundancy(10)
    (18, None)
    """
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    s = sigma(factorize(n))
    k, rem = divmod(s, n)
    return s, (k if rem == 0 else None)


def sigma_table(limit: int) -> np.ndarray:
    """sigma(n) for every n <= limit, as an int64 array (index 0 unused).

    Divisor-pair accumulation: each d <= sqrt(limit) stamps itself on its
    multiples (small side) and stamps the cofactor on the same cells (large
    side), so the loop is sqrt(limit) numpy slice-adds instead of a scan.
    """
    if limit < 1:
        raise ValueError(f"limit must be >= 1, got {limit}")
    t = np.zeros(limit + 1, dtype=np.int64)
    for d in range(1, math.isqrt(limit) + 1):
        t[d * d :: d] += d
        m_hi = limit // d
        if m_hi > d:
            t[d * (d + 1) :: d] += np.arange(d + 1, m_hi + 1, dtype=np.int64)
    return t


def enumerate_multiperfect(limit: int) -> list[tuple[int, int]]:
    """All (n, k) with n <= limit and sigma(n) = k*n, ascending in n."""
    if limit < 1:
        raise ValueError(f"limit must be >= 1, got {limit}")
    t = sigma_table(limit)
    n_vals = np.arange(1, limit + 1, dtype=np.int64)
    s_vals = t[1:]
    hits = np.nonzero(s_vals % n_vals == 0)[0]
    return [(int(n_vals[i]), int(s_vals[i] // n_vals[i])) for i in hits]


def _odd_sigma_segment(lo: int, hi: int) -> np.ndarray:
    """sigma(n) for odd n in [lo, hi); entries at even offsets are garbage.

    Only odd d are stamped (every divisor of an odd number is odd), which
    also halves the work against the full-table sieve.
    """
    t = np.zeros(hi - lo, dtype=np.int64)
    top = hi - 1
    for d in range(1, math.isqrt(top) + 1, 2):
        m_hi = top // d
        m0 = max(d, -(-lo // d))
        if m0 % 2 == 0:
            m0 += 1
        if m0 <= m_hi:
            t[d * m0 - lo : d * m_hi - lo + 1 : 2 * d] += d
        m1 = max(d + 2, m0)
        if m1 % 2 == 0:
            m1 += 1
        if m1 <= m_hi:
            t[d * m1 - lo : d * m_hi - lo + 1 : 2 * d] += np.arange(
                m1, m_hi + 1, 2, dtype=np.int64
            )
    return t


def odd_multiperfect_upto(limit: int, segment_size: int = 1 << 22) -> list[tuple[int, int]]:
    """All odd (n, k) with n <= limit and sigma(n) = k*n, by segmented sieve.

    Exists to run the desk-scale emptiness scan (no odd multiperfect number
    except 1) at limits where a full sigma table would not fit in memory.
    """
    if limit < 1:
        raise ValueError(f"limit must be >= 1, got {limit}")
    out: list[tuple[int, int]] = []
    lo = 1
    while lo <= limit:
        hi = min(lo + segment_size, limit + 1)
        t = _odd_sigma_segment(lo, hi)
        n_vals = np.arange(lo if lo % 2 else lo + 1, hi, 2, dtype=np.int64)
        s_vals = t[n_vals - lo]
        for i in np.nonzero(s_vals % n_vals == 0)[0]:
            n = int(n_vals[i])
            out.append((n, int(s_vals[i]) // n))
        lo = hi
    return out


def dhp_decompose(n: int) -> tuple[int, int, int] | None:
    """Write n = m * q^alpha with sigma(m) = q^alpha and q not dividing m.

    Scans the unitary prime-power divisors q^alpha of n in ascending q and
    returns the first (m, q, alpha) that works, or None.
    """
    if n < 2:
        raise ValueError(f"n must be >= 2, got {n}")
    for q, alpha in factorize(n):
        m = n // q**alpha
        if m > 1 and sigma(factorize(m)) == q**alpha:
            return m, q, alpha
    return None


def dhp_scan(limit: int) -> list[int]:
    """Multiperfect n <= limit admitting the sigma(m) = q^alpha decomposition.

    The structural theorem says this list is exactly the even perfect numbers
    plus 672, so the scan doubles as a desk-scale check of that statement.
    """
    if limit < 2:
        raise ValueError(f"limit must be >= 2, got {limit}")
    return [
        n for n, _k in enumerate_multiperfect(limit) if n >= 2 and dhp_decompose(n)
    ]


def euler_form(n: int) -> tuple[int, int, int] | None:
    """Recognize n = n0^2 * q^alpha with q prime to n0 and q = alpha = 1 mod 4.

    This is the shape every odd perfect number must take; present iff exactly
    one prime in n has odd exponent and that prime and its exponent are both
    1 mod 4.  Returns (n0, q, alpha) or None.
    """
    if n < 1 or n % 2 == 0:
        raise ValueError(f"n must be odd and >= 1, got {n}")
    odd_exp = [(p, e) for p, e in factorize(n) if e % 2]
    if len(odd_exp) != 1:
        return None
    q, alpha = odd_exp[0]
    if q % 4 != 1 or alpha % 4 != 1:
        return None
    n0 = isqrt_exact(n // q**alpha)
    if n0 is None:
        raise ConsistencyError(f"cofactor of {n} by {q}^{alpha} is not a square")
    return n0, q, alpha


@dataclass(frozen=True)
class ChenLuoRecord:
    """2-adic budget for sigma(n) of odd n.

    For each odd-exponent prime p with exponent a, the lifting-the-exponent
    identity gives v2(sigma(p^a)) = v2(p+1) + v2(a+1) - 1; writing
    a_i = v2(p_i+1) - 1 and b_i = v2(alpha_i+1) - 1 the total is
    v2(sigma(n)) = s + sum(a_i) + sum(b_i) with s the count of such primes.
    """

    s: int
    terms: tuple[tuple[int, int, int, int], ...]  # (p, alpha, a, b)
    v2_sigma: int

    def as_dict(self) -> dict:
        return {
            "s": self.s,
            "terms": [
                {"p": p, "alpha": alpha, "a": a, "b": b}
                for p, alpha, a, b in self.terms
            ],
            "v2_sigma": self.v2_sigma,
        }


def chenluo_check(n: int) -> ChenLuoRecord:
    """Verify the 2-adic bookkeeping of sigma(n) for odd n >= 3.

    The per-prime ledger must reproduce the directly computed v2(sigma(n));
    a mismatch would break the lifting-the-exponent identity and raises a
    consistency error (it never should).
    """
    if n < 3 or n % 2 == 0:
        raise ValueError(f"n must be odd and >= 3, got {n}")
    f = factorize(n)
    terms = tuple(
        (p, e, vp(2, p + 1) - 1, vp(2, e + 1) - 1) for p, e in f if e % 2
    )
    s = len(terms)
    budget = s + sum(a for _, _, a, _ in terms) + sum(b for _, _, _, b in terms)
    direct = vp(2, sigma(f))
    if budget != direct:
        raise ConsistencyError(
            f"valuation ledger {budget} != direct v2(sigma({n})) = {direct}"
        )
    return ChenLuoRecord(s=s, terms=terms, v2_sigma=direct)


def omega_bound_product(count: int) -> int:
    """Product of sigma(p^2) over the first `count` odd primes.

    Lower-bounds sigma(n^2) for squarefree-kernel reasons when n has at
    least `count` distinct odd prime factors; with count = 8 this is the
    constant that rules out alpha = 1 below the published omega bound.
    """
    if not 1 <= count <= 1000:
        raise ValueError(f"count must be in [1, 1000], got {count}")
    product = 1
    for p in first_odd_primes(count):
        product *= sigma_prime_power(p, 2)
    return product


@dataclass(frozen=True)
class ClassifyReport:
    """Everything this module can say about one integer."""

    n: int
    sigma: int
    k: int | None
    euler_form: tuple[int, int, int] | None
    dhp: tuple[int, int, int] | None
    chenluo: ChenLuoRecord | None

    def as_dict(self) -> dict:
        def triple(value, names):
            return dict(zip(names, value)) if value is not None else None

        return {
            "n": self.n,
            "sigma": self.sigma,
            "k": self.k,
            "euler_form": triple(self.euler_form, ("n0", "q", "alpha")),
            "dhp": triple(self.dhp, ("m", "q", "alpha")),
            "chenluo": self.chenluo.as_dict() if self.chenluo else None,
        }

    def to_json(self) -> str:
        return json.dumps(self.as_dict(), sort_keys=True, separators=(",", ":"))


def classify_report(n: int) -> ClassifyReport:
    """Run every applicable classifier on n and collect the results."""
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    s, k = abundancy(n)
    return ClassifyReport(
        n=n,
        sigma=s,
        k=k,
        euler_form=euler_form(n) if n % 2 else None,
        dhp=dhp_decompose(n) if n >= 2 else None,
        chenluo=chenluo_check(n) if n % 2 and n >= 3 else None,
    )
