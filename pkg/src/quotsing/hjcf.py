"""Hirzebruch-Jung continued fractions and critical pairs.

The expansion of n/d is the string (a_0, ..., a_r), all a_i >= 2, with
n/d = a_0 - 1/(a_1 - 1/(...)). A pair (n, d) is *critical* when its
expansion is a palindrome of odd length whose central term is even.
"""
from __future__ import annotations

from fractions import Fraction
from math import gcd

from .errors import ConsistencyError, InvalidTerm, NotCoprime, NotCritical, OutOfRange

HJExpansion = tuple[int, ...]


def _check_pair(n: int, d: int, strict: bool) -> None:
    if n < 1 or d < 1 or d > n:
        raise OutOfRange(f"need 1 <= d <= n, got n={n}, d={d}")
    if strict and d == n:
        raise OutOfRange(f"need d < n, got n={n}, d={d}")
    if gcd(n, d) != 1:
        raise NotCoprime(f"gcd({n}, {d}) = {gcd(n, d)}")


def hj_expand(n: int, d: int) -> HJExpansion:
    """Expansion of n/d; the empty tuple for the smooth case n = 1."""
    _check_pair(n, d, strict=False)
    terms = []
    while d:
        a = -(-n // d)
        terms.append(a)
        n, d = d, a * d - n
    if terms == [1]:
        return ()
    return tuple(terms)


def hj_eval(terms) -> Fraction:
    """Evaluate a_0 - 1/(a_1 - ...) exactly; () evaluates to 1."""
    terms = tuple(terms)
    for a in terms:
        if a < 2:
            raise InvalidTerm(f"expansion term {a} < 2")
    if not terms:
        return Fraction(1)
    value = Fraction(terms[-1])
    for a in reversed(terms[:-1]):
        value = a - 1 / value
    return value


def resolution_string(terms) -> tuple[int, ...]:
    """Self-intersection numbers of the exceptional curves."""
    return tuple(-a for a in terms)


def is_palindrome(terms) -> bool:
    terms = tuple(terms)
    return terms == terms[::-1]


def is_critical_pair(n: int, d: int) -> bool:
    _check_pair(n, d, strict=True)
    e = hj_expand(n, d)
    return is_palindrome(e) and len(e) % 2 == 1 and e[len(e) // 2] % 2 == 0


def two_adic_part(n: int) -> int:
    """Largest power of 2 dividing n."""
    return n & -n


def is_critical_pair_arith(n: int, d: int) -> bool:
    _check_pair(n, d, strict=True)
    return critical_mod(n, d)


def critical_mod(n: int, d: int) -> bool:
    """Arithmetic criticality for any integer d, read modulo n.

    False when gcd(n, d) > 1 or n is odd; this is the form in which the
    classification table states its conditions.
    """
    if n < 1:
        raise OutOfRange(f"need n >= 1, got {n}")
    if n % 2 or gcd(n, d) != 1:
        return False
    if (d * d - 1) % n:
        return False
    p = two_adic_part(n)
    return (d - 1) % p == 0 or (d + 1) % p == 0


def mod_inverse(d: int, n: int) -> int:
    """The unique b in [1, n] with b*d = 1 mod n."""
    if n < 1:
        raise OutOfRange(f"modulus must be positive, got {n}")
    if gcd(d, n) != 1:
        raise NotCoprime(f"{d} is not invertible modulo {n}")
    return pow(d, -1, n) or n


def nonlift_divisibility_witness(n: int, d: int) -> int:
    """Additive order o of d - 1 mod n, checking that 2o divides n and d + 1."""
    if not is_critical_pair(n, d):
        raise NotCritical(f"({n}, {d}) is not a critical pair")
    o = n // gcd(n, d - 1)
    if n % (2 * o) or (d + 1) % (2 * o):
        raise ConsistencyError(f"2*{o} fails to divide both {n} and {d + 1}")
    return o
