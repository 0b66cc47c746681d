import math


def bisect_decreasing(f, lo: float, hi: float, rtol: float = 1e-15, maxiter: int = 400) -> float:
    """Root of a strictly decreasing ``f`` on ``[lo, hi]`` with ``f(lo) >= 0 >= f(hi)``.

    Runs until the bracket width falls below ``rtol * max(|lo|, |hi|, tiny)``
    or the midpoint stops moving in floating point.
    """
    flo, fhi = f(lo), f(hi)
    if flo < 0 or fhi > 0:
        raise ValueError(f"no sign change on [{lo}, {hi}]: f={flo}, {fhi}")
    if flo == 0:
        return lo
    if fhi == 0:
        return hi
    for _ in range(maxiter):
        mid = 0.5 * (lo + hi)
        if mid <= lo or mid >= hi:
            break
        fm = f(mid)
        if fm == 0:
            return mid
        if fm > 0:
            lo = mid
        else:
            hi = mid
        if hi - lo <= rtol * max(abs(lo), abs(hi), math.ulp(1.0)):
            break
    return 0.5 * (lo + hi)
