"""Exact checks of the guaranteed induced-path orders.

Polynomial bounds are rearranged into big-integer inequalities.  Bounds that
involve ``log2 n`` to a fractional power are decided with interval arithmetic
(mpmath ``iv``) at increasing precision; a comparison the intervals cannot
settle is reported as *not* satisfied, so a certificate is never accepted on
rounding luck.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Callable, Mapping

from mpmath import iv

from .errors import InputError

PRECISIONS = (64, 128, 256, 1024, 4096)


def ceil_log2(n: int) -> int:
    """Smallest integer ``m`` with ``2**m >= n`` (0 for n <= 1)."""
    return max(0, (n - 1).bit_length())


def as_fraction(x) -> Fraction:
    try:
        return Fraction(x)
    except (TypeError, ValueError, ZeroDivisionError) as exc:
        raise InputError(f"not a rational number: {x!r}") from exc


def _is_pow2(n: int) -> bool:
    return n >= 1 and n & (n - 1) == 0


def _decide(diff: Callable[[], object]) -> bool:
    """True iff the interval returned by ``diff`` is provably >= 0."""
    saved = iv.prec
    try:
        for prec in PRECISIONS:
            iv.prec = prec
            x = diff()
            if x.a >= 0:
                return True
            if x.b < 0:
                return False
        return False
    finally:
        iv.prec = saved


def _iv_frac(q: Fraction):
    return iv.mpf(q.numerator) / q.denominator


def _iv_log2(n: int):
    return iv.log(iv.mpf(n)) / iv.log(iv.mpf(2))


def _rational_root_ge(lhs: Fraction, base: Fraction, e: Fraction) -> bool:
    """Exact ``lhs >= base ** e`` for ``base >= 0`` and rational ``e > 0``."""
    if lhs < 0:
        return False
    p, q = e.numerator, e.denominator
    return lhs ** q >= base ** p


def log_power_ge(lhs, c, n: int, e) -> bool:
    """Decide ``lhs >= c * (log2 n) ** e`` for rational ``c >= 0`` and ``e > 0``."""
    lhs, c, e = as_fraction(lhs), as_fraction(c), as_fraction(e)
    if n < 1:
        raise InputError("n must be positive")
    if n == 1 or c == 0:
        return lhs >= 0
    if _is_pow2(n):
        # log2 n is an integer; compare (lhs / c) ** q >= m ** p exactly
        return _rational_root_ge(lhs / c, Fraction(n.bit_length() - 1), e)
    return _decide(lambda: _iv_frac(lhs) - _iv_frac(c) * _iv_log2(n) ** _iv_frac(e))


def big_bag(size: int, n: int, eps) -> bool:
    """Decide ``size >= n ** (1 / (log2 n) ** eps)``.

    Equivalent to ``(log2 n) ** eps * log2 size >= log2 n``.  Undecided
    comparisons count as *not* big, i.e. the threshold rounds up.
    """
    eps = as_fraction(eps)
    if size < 1 or n < 2:
        return size >= n
    if _is_pow2(n) and _is_pow2(size):
        m, s = n.bit_length() - 1, size.bit_length() - 1
        return m ** eps.numerator * s ** eps.denominator >= m ** eps.denominator
    return _decide(lambda: _iv_log2(n) ** _iv_frac(eps) * _iv_log2(size) - _iv_log2(n))


# -- individual bounds ----------------------------------------------------------
def pathwidth_ok(L: int, n: int, k: int) -> bool:
    """(3L)^k >= n."""
    return (3 * L) ** k >= n


def treewidth_ok(L: int, n: int, k: int) -> bool:
    """2^((4L)^k) >= n, without materialising the power when it is obviously huge."""
    t = (4 * L) ** k
    if t >= n.bit_length():
        return True
    return 2 ** t >= n


def bounded_degree_ok(L: int, n: int, delta: int) -> bool:
    """delta^L >= n; for delta <= 1 the graph is a single vertex or edge, so L >= n."""
    if delta <= 1:
        return L >= n
    return delta ** L >= n


def subpolynomial_degree_ok(L: int, n: int, c, d) -> bool:
    """c * L >= (log2 n)^(1 - d)."""
    c, d = as_fraction(c), as_fraction(d)
    if d >= 1:
        return c * L >= 1 or n <= 2
    return log_power_ge(c * L, 1, n, 1 - d)


def adhesion_ok(L: int, ell: int, a: int) -> bool:
    """(3L)^(2a) >= ell."""
    return (3 * L) ** (2 * a) >= ell


def vortex_ok(L: int, n: int, k: int) -> bool:
    """(3L)^k >= ceil(log2 n)."""
    return (3 * L) ** k >= ceil_log2(n)


def modulator_segment_ok(n: int, x_size: int, n_seg: int) -> bool:
    """n_seg * (|X| + 1) >= n - |X|: the longest segment is at least the average."""
    return n_seg * (x_size + 1) >= n - x_size


def tree_composition_exponent(a: int, d) -> Fraction:
    d = as_fraction(d)
    return d / (4 * a * d + 1)


def tree_composition_epsilon(a: int, d) -> Fraction:
    d = as_fraction(d)
    return 4 * a * d / (4 * a * d + 1)


def check_bound(kind: str, params: Mapping, L: int) -> bool:
    """Evaluate the exact inequality named by ``kind`` for a path of order ``L``.

    Raises :class:`InputError` when ``params`` lack a required field.
    """
    try:
        if kind == "pathwidth":
            return pathwidth_ok(L, int(params["n"]), int(params["k"]))
        if kind == "treewidth":
            return treewidth_ok(L, int(params["n"]), int(params["k"]))
        if kind == "bounded-degree":
            return bounded_degree_ok(L, int(params["n"]), int(params["delta"]))
        if kind == "subpolynomial-degree":
            return bounded_degree_ok(L, int(params["n"]), int(params["delta"])) and \
                subpolynomial_degree_ok(L, int(params["n"]), params["c"], params["d"])
        if kind == "log-power":
            return L >= 1 and log_power_ge(L, params["c"], int(params["n"]), params["d"])
        if kind == "adhesion":
            return adhesion_ok(L, int(params["ell"]), int(params["a"]))
        if kind == "vortex":
            return vortex_ok(L, int(params["n"]), int(params["k"]))
        if kind == "modulator":
            base = params["base"]
            return (modulator_segment_ok(int(params["n"]), int(params["x_size"]), int(params["n_seg"]))
                    and int(base["params"]["n"]) == int(params["n_seg"])
                    and check_bound(base["bound_kind"], base["params"], L))
        if kind == "tree-composition":
            e = tree_composition_exponent(int(params["a"]), params["d"])
            return L >= 1 and log_power_ge(L, params["c"], int(params["n"]), e)
    except (KeyError, TypeError, ValueError) as exc:
        raise InputError(f"malformed parameters for bound {kind!r}: {exc}") from exc
    raise InputError(f"unknown bound kind {kind!r}")


def bound_value(kind: str, params: Mapping) -> float:
    """Approximate right-hand side of the bound, for reports only."""
    import math

    n = int(params.get("n", params.get("ell", 1)))
    if kind == "pathwidth":
        return n ** (1 / int(params["k"])) / 3
    if kind == "treewidth":
        return math.log2(max(n, 1)) ** (1 / int(params["k"])) / 4
    if kind in ("bounded-degree", "subpolynomial-degree"):
        delta = int(params["delta"])
        return float(n) if delta <= 1 else math.log2(max(n, 1)) / math.log2(delta)
    if kind == "log-power":
        return float(Fraction(params["c"])) * math.log2(max(n, 1)) ** float(Fraction(params["d"]))
    if kind == "adhesion":
        return n ** (1 / (2 * int(params["a"]))) / 3
    if kind == "vortex":
        return ceil_log2(n) ** (1 / int(params["k"])) / 3
    if kind == "modulator":
        return bound_value(params["base"]["bound_kind"], params["base"]["params"])
    if kind == "tree-composition":
        e = tree_composition_exponent(int(params["a"]), params["d"])
        return float(Fraction(params["c"])) * math.log2(max(n, 1)) ** float(e)
    raise InputError(f"unknown bound kind {kind!r}")
