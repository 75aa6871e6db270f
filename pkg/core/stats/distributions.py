"""
F 分布相关函数：正则化不完全 Beta 函数、F 分布累积/生存函数与临界值。

不完全 Beta 函数用 Lentz 连分式求值，x > (a+1)/(a+b+2) 时利用
I_x(a, b) = 1 - I_{1-x}(b, a) 保证收敛。
"""

import math

from core.exceptions import ParameterError

CF_EPS = 1e-15
CF_TINY = 1e-300
CF_MAX_ITER = 10000
CRIT_UPPER = 1e6
CRIT_TOL = 1e-8


def _beta_cf(x: float, a: float, b: float) -> float:
    """不完全 Beta 函数的连分式部分（修正 Lentz 方法）。"""
    qab = a + b
    qap = a + 1.0
    qam = a - 1.0
    c = 1.0
    d = 1.0 - qab * x / qap
    if abs(d) < CF_TINY:
        d = CF_TINY
    d = 1.0 / d
    h = d
    for m in range(1, CF_MAX_ITER + 1):
        m2 = 2 * m
        aa = m * (b - m) * x / ((qam + m2) * (a + m2))
        d = 1.0 + aa * d
        if abs(d) < CF_TINY:
            d = CF_TINY
        c = 1.0 + aa / c
        if abs(c) < CF_TINY:
            c = CF_TINY
        d = 1.0 / d
        h *= d * c
        aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2))
        d = 1.0 + aa * d
        if abs(d) < CF_TINY:
            d = CF_TINY
        c = 1.0 + aa / c
        if abs(c) < CF_TINY:
            c = CF_TINY
        d = 1.0 / d
        delta = d * c
        h *= delta
        if abs(delta - 1.0) < CF_EPS:
            return h
    raise ParameterError(f"Incomplete beta did not converge for x={x}, a={a}, b={b}")


def _front_factor(x: float, a: float, b: float) -> float:
    log_bt = (
        math.lgamma(a + b) - math.lgamma(a) - math.lgamma(b)
        + a * math.log(x) + b * math.log1p(-x)
    )
    return math.exp(log_bt)


def reg_inc_beta(x: float, a: float, b: float) -> float:
    """
    正则化不完全 Beta 函数 I_x(a, b)。

    Args:
        x: 0 <= x <= 1
        a: > 0
        b: > 0
    """
    if not (a > 0 and b > 0):
        raise ParameterError(f"Beta parameters must be positive, got a={a}, b={b}")
    if not 0.0 <= x <= 1.0:
        raise ParameterError(f"x must lie in [0, 1], got {x}")
    if x == 0.0:
        return 0.0
    if x == 1.0:
        return 1.0
    bt = _front_factor(x, a, b)
    if x < (a + 1.0) / (a + b + 2.0):
        return bt * _beta_cf(x, a, b) / a
    return 1.0 - bt * _beta_cf(1.0 - x, b, a) / b


def _check_f_args(x: float, d1: float, d2: float) -> None:
    if d1 < 1 or d2 < 1:
        raise ParameterError(f"Degrees of freedom must be >= 1, got d1={d1}, d2={d2}")
    if math.isnan(x) or x < 0:
        raise ParameterError(f"F statistic must be >= 0, got {x}")


def f_cdf(x: float, d1: float, d2: float) -> float:
    """F(d1, d2) 分布的累积分布函数。"""
    _check_f_args(x, d1, d2)
    if math.isinf(x):
        return 1.0
    return reg_inc_beta(d1 * x / (d1 * x + d2), d1 / 2.0, d2 / 2.0)


def f_sf(x: float, d1: float, d2: float) -> float:
    """F(d1, d2) 分布的上尾概率，直接由互补形式计算以保留小 P 值精度。"""
    _check_f_args(x, d1, d2)
    if math.isinf(x):
        return 0.0
    return reg_inc_beta(d2 / (d2 + d1 * x), d2 / 2.0, d1 / 2.0)


def f_critical(alpha: float, d1: float, d2: float) -> float:
    """在 [0, 1e6] 上二分求解 f_cdf(x) = 1 - alpha，精度 1e-8。"""
    if not 0.0 < alpha < 1.0:
        raise ParameterError(f"alpha must lie in (0, 1), got {alpha}")
    target = 1.0 - alpha
    lo, hi = 0.0, CRIT_UPPER
    while hi - lo > CRIT_TOL:
        mid = 0.5 * (lo + hi)
        if f_cdf(mid, d1, d2) < target:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)
