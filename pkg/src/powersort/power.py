"""Boundary powers: the integer rule that drives the merge policy.

Map the array onto the unit interval and mark, for each boundary between
two adjacent runs, the half-open interval from the midpoint of the left run
(exclusive) to the midpoint of the right run (inclusive).  The power of the
boundary is the least p >= 1 such that that interval contains a multiple of
k**-p.  Equivalently: the least p with floor(a * k**p) < floor(b * k**p),
where a and b are the two midpoints divided by n.

Everything here is exact integer arithmetic.  With run bounds b1 < e1 = b2
< e2 the doubled midpoints are A = b1 + e1 and B = b2 + e2, and the
floor comparison becomes (A * k**p) // (2n) < (B * k**p) // (2n).  Floating
point would mis-rank boundaries for large n; the merge tree depends on
these values being exact.

p = 0 can never satisfy the condition: both midpoints lie strictly inside
(0, 1) for an interior boundary, so both floors are 0.  The search
therefore starts at p = 1.
"""

from __future__ import annotations


def ceil_log(k: int, n: int) -> int:
    """Smallest m >= 0 with k**m >= n, computed without floating point."""
    if k < 2:
        raise ValueError("ceil_log needs k >= 2")
    if n < 1:
        raise ValueError("ceil_log needs n >= 1")
    m, p = 0, 1
    while p < n:
        p *= k
        m += 1
    return m


def run_stack_capacity(k: int, n: int) -> int:
    """Height bound ``(k-1) * (ceil(log_k n) + 1)`` for the pending-run stack.

    Powers of interior boundaries fall in 1..ceil(log_k n)+1 and at most k-1
    pending runs can share a power, so a sort of n elements can never stack
    more runs than this.
    """
    return (k - 1) * (ceil_log(k, n) + 1)


def node_power(k: int, n: int, b1: int, e1: int, b2: int, e2: int) -> int:
    """Power of the boundary between adjacent runs [b1, e1) and [b2, e2).

    ``n`` is the total array length.  Exact; raises ``ValueError`` for
    k outside {2, 3, 4} or malformed bounds.
    """
    if k not in (2, 3, 4):
        raise ValueError("node_power supports k in {2, 3, 4}, got %r" % (k,))
    return _node_power_any(k, n, b1, e1, b2, e2)


def _node_power_any(k: int, n: int, b1: int, e1: int, b2: int, e2: int) -> int:
    # Generic in k >= 2; used by analysis helpers that probe other arities.
    if k < 2:
        raise ValueError("boundary power needs k >= 2")
    if not (0 <= b1 < e1 == b2 < e2 <= n):
        raise ValueError(
            "malformed run bounds: need 0 <= b1 < e1 == b2 < e2 <= n, got "
            "b1=%r e1=%r b2=%r e2=%r n=%r" % (b1, e1, b2, e2, n)
        )
    doubled_left_mid = b1 + e1    # 2n * (midpoint of left run / n)
    doubled_right_mid = b2 + e2
    two_n = 2 * n
    p, k_pow = 1, k
    while (doubled_left_mid * k_pow) // two_n == (doubled_right_mid * k_pow) // two_n:
        p += 1
        k_pow *= k
    return p


def boundary_powers(lengths, k: int) -> list[int]:
    """Powers of all r-1 interior boundaries of a run-length profile.

    ``lengths`` is the left-to-right list of run lengths; element j of the
    result is the power of the boundary between runs j and j+1.  Generic in
    k >= 2 so that analysis code can compare arities.
    """
    if not lengths:
        raise ValueError("a run profile has at least one run")
    if any(length < 1 for length in lengths):
        raise ValueError("run lengths must be positive")
    n = sum(lengths)
    powers = []
    left = 0
    for j in range(len(lengths) - 1):
        mid = left + lengths[j]
        right = mid + lengths[j + 1]
        powers.append(_node_power_any(k, n, left, mid, mid, right))
        left = mid
    return powers
