"""Exact evaluation of the letter-method parameters and bounds.

Everything here is integer or :class:`fractions.Fraction` arithmetic; t-th
roots are bracketed by integer bisection and rounded in the direction that
keeps each bound valid (upper bounds round up, the letter count ``r`` rounds
down).

Explicit constant for the K_{H,t} bound
---------------------------------------
With the factorial constant c = 8 the lettering parameters are

    k = ceil(2c * n^(d(1-1/t)) * ex^(1/t)),   r = floor((t/c) * (n^d / ex)^(1/t)).

Write x = (t/c)(n^d/ex)^(1/t). If x >= 1 then r >= x/2, so k*r >= t*n^d, and
a K_{H,t}-free lettered hypergraph has at most r - 1 < x letters of
multiplicity k. Combining with ex_{d+1} <= k (f + n):

    ex_{d+1}(n, K_{H,t}) <= (16 n^(d(1-1/t)) ex^(1/t) + 1)(x + n)
                         <= 16 ex^(1/t) n^(d+1-d/t) + (2 + 1/8 + 1/2) t n^d.

If x < 1 then ex^(1/t) > (t/8) n^(d/t), so 16 ex^(1/t) n^(d+1-d/t) > 2t n^(d+1),
which already exceeds C(n, d+1). Either way the bound
``C * (ex^(1/t) n^(d+1-d/t) + t n^d)`` holds with ``C = 16``
(:data:`THEOREM3_C`), for every n and every ex >= 1.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb, factorial

from .errors import DegenerateEx

E_UPPER = Fraction(27182818285, 10**10)  # exceeds e = 2.71828182845904...
THEOREM3_C = 16
THEOREM6_C = 1


# ---------------------------------------------------------------------------
# integer roots
# ---------------------------------------------------------------------------


def iroot_floor(a: int, t: int) -> int:
    """Largest y >= 0 with y**t <= a."""
    if a < 0 or t < 1:
        raise ValueError("need a >= 0 and t >= 1")
    if a < 2 or t == 1:
        return a
    lo, hi = 0, 1 << (a.bit_length() // t + 1)
    while lo < hi:
        mid = (lo + hi + 1) // 2
        if mid**t <= a:
            lo = mid
        else:
            hi = mid - 1
    return lo


def iroot_ceil(a: int, t: int) -> int:
    y = iroot_floor(a, t)
    return y if y**t == a else y + 1


def root_floor(x: Fraction, t: int) -> int:
    """floor(x^(1/t)) for a non-negative rational x."""
    x = Fraction(x)
    if x < 0:
        raise ValueError("negative radicand")
    p, q = x.numerator, x.denominator
    # y <= x^(1/t)  iff  y^t q <= p
    y = iroot_floor(p // q, t)
    while (y + 1) ** t * q <= p:
        y += 1
    while y > 0 and y**t * q > p:
        y -= 1
    return y


def root_ceil(x: Fraction, t: int) -> int:
    x = Fraction(x)
    y = root_floor(x, t)
    return y if Fraction(y**t) == x else y + 1


# ---------------------------------------------------------------------------
# lettering parameters
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class BoundParams:
    n: int
    d: int
    t: int
    ex_value: int
    constant_c: Fraction
    mode: str
    k: int
    r: int

    def to_record(self) -> dict:
        return {
            "n": self.n, "d": self.d, "t": self.t, "ex_value": self.ex_value,
            "constant_c": str(self.constant_c), "mode": self.mode, "k": self.k, "r": self.r,
        }


def kst_parameters(n: int, d: int, t: int, ex_value: int, constant_c=8,
                   mode: str = "c") -> BoundParams:
    """Exact k and r for the counting contradiction.

    ``mode="c"`` uses the rational ``constant_c`` (default 8). ``mode="e"``
    uses :data:`E_UPPER`, a rational just above e; a larger constant rounds k
    up and r down, so both stay on the safe side.
    """
    if t < 2:
        raise ValueError("t must be >= 2")
    if ex_value < 1:
        raise DegenerateEx(f"ex_value must be >= 1, got {ex_value}")
    if mode == "e":
        c = E_UPPER
    elif mode == "c":
        c = Fraction(constant_c)
    else:
        raise ValueError(f"unknown mode {mode!r}")
    if c <= 0:
        raise ValueError("constant must be positive")
    # k^t >= (2c)^t n^(d(t-1)) ex
    k = root_ceil((2 * c) ** t * n ** (d * (t - 1)) * ex_value, t)
    # r^t <= t^t n^d / (c^t ex)
    r = root_floor(Fraction(t**t * n**d) / (c**t * ex_value), t)
    return BoundParams(n, d, t, ex_value, c, mode, max(k, 1), r)


@dataclass(frozen=True)
class CountingChain:
    """The contradiction arithmetic for concrete parameters."""

    params: BoundParams
    kr: int
    tuple_cap: int
    power_cap: Fraction
    large_enough: bool
    contradiction: bool

    def to_record(self) -> dict:
        return {
            "params": self.params.to_record(), "kr": self.kr, "tuple_cap": self.tuple_cap,
            "power_cap": str(self.power_cap), "large_enough": self.large_enough,
            "contradiction": self.contradiction,
        }


def counting_chain(params: BoundParams) -> CountingChain:
    """Evaluate k r - C(r,t) ex against (t-1) C(n,d).

    ``contradiction`` says the numbers rule out an K_{H,t}-free lettered
    hypergraph with r letters of multiplicity k. ``large_enough`` is the
    condition r >= (t/2c)(n^d/ex)^(1/t) under which the chain is guaranteed.
    """
    P = params
    kr = P.k * P.r
    tuple_cap = comb(P.r, P.t) * P.ex_value
    power_cap = Fraction(P.r**P.t * P.ex_value, factorial(P.t))
    half = Fraction(P.t**P.t * P.n**P.d) / ((2 * P.constant_c) ** P.t * P.ex_value)
    large_enough = Fraction(P.r) ** P.t >= half
    contradiction = kr - tuple_cap > (P.t - 1) * comb(P.n, P.d)
    return CountingChain(P, kr, tuple_cap, power_cap, large_enough, contradiction)


def letter_count_bound(n: int, d: int, t: int, ex_value: int, C=1) -> Fraction:
    """Upward evaluation of C * t * (n^d / ex)^(1/t)."""
    if ex_value < 1:
        raise DegenerateEx(f"ex_value must be >= 1, got {ex_value}")
    return Fraction(C) * t * root_ceil(Fraction(n**d, ex_value), t)


# ---------------------------------------------------------------------------
# closed-form bounds
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Bound:
    value: Fraction
    hypothesis_ok: bool

    def to_record(self) -> dict:
        return {"value": str(self.value), "ceil": -(-self.value.numerator // self.value.denominator),
                "hypothesis_ok": self.hypothesis_ok}


def theorem3_bound(n: int, d: int, t: int, ex_value: int, C=THEOREM3_C) -> Bound:
    """Upper evaluation of C (ex^(1/t) n^(d+1-d/t) + t n^d).

    ``hypothesis_ok`` is False when ex_value >= n^d, which is outside the
    regime the bound is meant for (it then says nothing useful).
    """
    if t < 2:
        raise ValueError("t must be >= 2")
    if ex_value < 0:
        raise ValueError("ex_value must be >= 0")
    main = iroot_ceil(ex_value * n ** ((d + 1) * t - d), t)
    return Bound(Fraction(C) * (main + t * n**d), ex_value < n**d)


def theorem6_bound(n: int, d: int, t: int, ex_value: int, C=THEOREM6_C) -> Bound:
    """Upper evaluation of C ex n^(2-1/t)."""
    if t < 2:
        raise ValueError("t must be >= 2")
    return Bound(Fraction(C) * ex_value * iroot_ceil(n ** (2 * t - 1), t), ex_value < n**d)


def theorem6_power_bound(n: int, d: int, t: int, C=THEOREM6_C) -> Bound:
    """Upper evaluation of C n^(d+1-1/t), the form for ex = O(n^(d-1))."""
    if t < 2:
        raise ValueError("t must be >= 2")
    return Bound(Fraction(C) * iroot_ceil(n ** ((d + 1) * t - 1), t), True)


# ---------------------------------------------------------------------------
# factorial inequality
# ---------------------------------------------------------------------------


@dataclass
class FactorialReport:
    t_max: int
    checked: int
    first_failure: int | None
    failures: list[tuple[int, str]]

    @property
    def passed(self) -> bool:
        return not self.failures

    def to_record(self) -> dict:
        return {
            "t_max": self.t_max, "checked": self.checked, "first_failure": self.first_failure,
            "failures": [{"t": t, "check": name} for t, name in self.failures],
            "passed": self.passed,
        }


def factorial_bound_check(t_max: int) -> FactorialReport:
    """Check t! > (t/8)^t, i.e. 8^t t! > t^t, for 2 <= t <= t_max, and the
    links of the doubling induction for every t with 2t+1 <= t_max:

      (2t)!   > (t/4)^t 4^t (t/8)^t = (t/4)^(2t) 2^t > (t/4)^(2t)
      (2t+1)! > (t/4)^(2t) 2^t (2t+1) > (t/4)^(2t) (1+1/(2t))^(2t) (2t+1)/8
              = ((2t+1)/8)^(2t+1)
    """
    if t_max < 2:
        raise ValueError("t_max must be >= 2")
    failures: list[tuple[int, str]] = []
    fact = [1] * (t_max + 1)
    for i in range(1, t_max + 1):
        fact[i] = fact[i - 1] * i
    for t in range(2, t_max + 1):
        if not 8**t * fact[t] > t**t:
            failures.append((t, "direct"))
    for t in range(1, t_max // 2 + 1):
        quarter = Fraction(t, 4) ** (2 * t)
        prod = Fraction(t, 4) ** t * 4**t * Fraction(t, 8) ** t
        doubled = quarter * 2**t
        checks = {
            "even_hypothesis": fact[t] > Fraction(t, 8) ** t,
            "even_product": fact[2 * t] > prod,
            "even_identity": prod == doubled,
            "even_drop": doubled > quarter,
            "even_target": fact[2 * t] > quarter,
        }
        if 2 * t + 1 <= t_max:
            step1 = doubled * (2 * t + 1)
            step2 = quarter * Fraction(2 * t + 1, 2 * t) ** (2 * t) * Fraction(2 * t + 1, 8)
            target = Fraction(2 * t + 1, 8) ** (2 * t + 1)
            checks.update({
                "odd_product": fact[2 * t + 1] > step1,
                "odd_growth": step1 > step2,
                "odd_identity": step2 == target,
                "odd_target": fact[2 * t + 1] > target,
            })
        failures.extend((t, name) for name, ok in checks.items() if not ok)
    failures.sort()
    first = failures[0][0] if failures else None
    return FactorialReport(t_max, t_max - 1, first, failures)
