"""
Bessel functions J0, J1 and the propagator kernels

    K_t(y) = sqrt(t/y) J0'(2 sqrt(t y)) = -t G(t y),   J_t(y) = J0(2 sqrt(t y)),

with G(x) = J1(2 sqrt(x)) / sqrt(x) = sum_m (-x)^m / (m! (m+1)!).

Arguments |z| <= 8 use the power series (Horner form in -(z/2)^2); larger
arguments use the Hankel asymptotic form with the rational approximations of
the Cephes library (absolute error ~1e-16).
"""

from math import factorial
from typing import Iterable, List

import numpy as np
from scipy import integrate

from error_handling import DomainError, InvalidInputError
from models.data_models import KernelBoundsRow, KernelSample

SERIES_SWITCH = 8.0
_SERIES_TERMS = 34

_SQ2OPI = 7.9788456080286535587989e-1  # sqrt(2/pi)
_PIO4 = 7.85398163397448309616e-1
_THPIO4 = 2.35619449019234492885

# J0, x > 5
_PP = np.array([
    7.96936729297347051624e-4, 8.28352392107440799803e-2, 1.23953371646414299388e0,
    5.44725003058768775090e0, 8.74716500199817011941e0, 5.30324038235394892183e0,
    9.99999999999999997821e-1,
])
_PQ = np.array([
    9.24408810558863637013e-4, 8.56288474354474431428e-2, 1.25352743901058953537e0,
    5.47097740330417105182e0, 8.76190883237069594232e0, 5.30605288235394617618e0,
    1.00000000000000000218e0,
])
_QP = np.array([
    -1.13663838898469149931e-2, -1.28252718670509318512e0, -1.95539544257735972385e1,
    -9.32060152123768231369e1, -1.77681167980488050595e2, -1.47077505154951170175e2,
    -5.14105326766599330220e1, -6.05014350600728481186e0,
])
_QQ = np.array([
    1.0, 6.43178256118178023184e1, 8.56430025976980587198e2, 3.88240183605401609683e3,
    7.24046774195652478189e3, 5.93072701187316984827e3, 2.06209331660327847417e3,
    2.42005740240291393179e2,
])

# J1, x > 5
_PP1 = np.array([
    7.62125616208173112003e-4, 7.31397056940917570436e-2, 1.12719608129684925192e0,
    5.11207951146807644818e0, 8.42404590141772420927e0, 5.21451598682361504063e0,
    1.00000000000000000254e0,
])
_PQ1 = np.array([
    5.71323128072548699714e-4, 6.88455908754495404082e-2, 1.10514232634061696926e0,
    5.07386386128601488557e0, 8.39985554327604159757e0, 5.20982848682361821619e0,
    9.99999999999999997461e-1,
])
_QP1 = np.array([
    5.10862594750176621635e-2, 4.98213872951233449420e0, 7.58238284132545283818e1,
    3.66779609360150777800e2, 7.10856304998926107277e2, 5.97489612400613639965e2,
    2.11688757100572135698e2, 2.52070205858023719784e1,
])
_QQ1 = np.array([
    1.0, 7.42373277035675149943e1, 1.05644886038262816351e3, 4.98641058337653607651e3,
    9.56231892404756170795e3, 7.99704160447350683650e3, 2.82619278517639096600e3,
    3.36093607810698293419e2,
])

# series coefficients, highest power first for np.polyval
_J0_SERIES = np.array([1.0 / factorial(m) ** 2 for m in range(_SERIES_TERMS)])[::-1]
_G_SERIES = np.array([1.0 / (factorial(m) * factorial(m + 1)) for m in range(_SERIES_TERMS)])[::-1]


def _j0_hankel(x: np.ndarray) -> np.ndarray:
    w = 5.0 / x
    z = w * w
    p = np.polyval(_PP, z) / np.polyval(_PQ, z)
    q = np.polyval(_QP, z) / np.polyval(_QQ, z)
    xn = x - _PIO4
    return _SQ2OPI * (p * np.cos(xn) - w * q * np.sin(xn)) / np.sqrt(x)


def _j1_hankel(x: np.ndarray) -> np.ndarray:
    w = 5.0 / x
    z = w * w
    p = np.polyval(_PP1, z) / np.polyval(_PQ1, z)
    q = np.polyval(_QP1, z) / np.polyval(_QQ1, z)
    xn = x - _THPIO4
    return _SQ2OPI * (p * np.cos(xn) - w * q * np.sin(xn)) / np.sqrt(x)


def _as_array(z) -> np.ndarray:
    array = np.asarray(z, dtype=float)
    if not np.all(np.isfinite(array)):
        raise InvalidInputError("z", "argument must be finite")
    return array


def _unwrap(result: np.ndarray, like):
    return float(result) if np.ndim(like) == 0 else result


def bessel_j0(z):
    """
    J0(z) for real z (scalar or array), absolute error below 1e-12.
    """
    array = _as_array(z)
    x = np.abs(array)
    out = np.empty_like(x)
    small = x <= SERIES_SWITCH
    out[small] = np.polyval(_J0_SERIES, -0.25 * x[small] ** 2)
    if np.any(~small):
        out[~small] = _j0_hankel(x[~small])
    return _unwrap(out, z)


def bessel_j1(z):
    """J1(z) for real z (odd function)."""
    array = _as_array(z)
    x = np.abs(array)
    out = np.empty_like(x)
    small = x <= SERIES_SWITCH
    out[small] = 0.5 * x[small] * np.polyval(_G_SERIES, -0.25 * x[small] ** 2)
    if np.any(~small):
        out[~small] = _j1_hankel(x[~small])
    return _unwrap(np.sign(array) * out, z)


def bessel_j0_prime(z):
    """J0'(z) = -J1(z)."""
    return -np.asarray(bessel_j1(z)) if np.ndim(z) else -bessel_j1(z)


def kernel_profile(x) -> np.ndarray:
    """
    G(x) = J1(2 sqrt(x)) / sqrt(x) for x >= 0, with G(0) = 1 and |G| <= 1.
    """
    x = np.asarray(x, dtype=float)
    out = np.empty_like(x)
    small = x <= 0.25 * SERIES_SWITCH ** 2
    out[small] = np.polyval(_G_SERIES, -x[small])
    if np.any(~small):
        root = np.sqrt(x[~small])
        out[~small] = _j1_hankel(2.0 * root) / root
    return out


def kernel_K(t: float, y):
    """
    K_t(y) = -sqrt(t/y) J1(2 sqrt(t y)) for t >= 0, y > 0.

    Raises:
        DomainError: t < 0 or y <= 0 (use kernel_K_limit for y -> 0+)
    """
    if t < 0:
        raise DomainError("kernel_K", f"t = {t}")
    y_array = _as_array(y)
    if np.any(y_array <= 0):
        raise DomainError("kernel_K", "y <= 0; the y -> 0+ limit is kernel_K_limit(t)")
    return _unwrap(-t * kernel_profile(t * y_array), y)


def kernel_K_limit(t: float) -> float:
    """K_t(0+) = -t."""
    return -float(t)


def kernel_J(t: float, y):
    """J_t(y) = J0(2 sqrt(t y)) for t, y >= 0."""
    y_array = _as_array(y)
    if t < 0 or np.any(y_array < 0):
        raise DomainError("kernel_J", "t and y must be non-negative")
    return bessel_j0(2.0 * np.sqrt(t * y_array)) if np.ndim(y) else float(bessel_j0(2.0 * np.sqrt(t * float(y))))


def kernel_taylor_K(t: float, n: int) -> float:
    """n-th y-derivative of K_t at 0+: (-1)^{n+1} t^{n+1} / (n+1)!."""
    return (-1.0) ** (n + 1) * t ** (n + 1) / factorial(n + 1)


def kernel_taylor_J(t: float, n: int) -> float:
    """n-th y-derivative of J_t at 0: (-1)^n t^n / n!."""
    return (-1.0) ** n * t ** n / factorial(n)


def sample_kernels(t: float, y: float) -> KernelSample:
    """Both kernels at one point, with the y = 0 limit of K_t."""
    k_value = kernel_K_limit(t) if y == 0 else kernel_K(t, y)
    return KernelSample(t=float(t), y=float(y), k_value=float(k_value), j_value=float(kernel_J(t, y)))


def kernel_window(t: float) -> float:
    """Quadrature window Y(t) = max(200, 400 t)."""
    return max(200.0, 400.0 * t)


def kernel_l2_tail(t: float, window: float) -> float:
    """
    Squared L^2 norm of K_t beyond the window, from the Hankel envelope:
    t / (pi sqrt(t Y)) = sqrt(t) / (pi sqrt(Y)).
    """
    return np.sqrt(t) / (np.pi * np.sqrt(window))


def kernel_l2_squared(t: float, window: float, points_per_unit: float = 80.0) -> float:
    """
    int_0^Y K_t(y)^2 dy via z = 2 sqrt(t y): 2 t int_0^Z J1(z)^2 / z dz.

    The integrand is z G(z^2/4)^2 / 4, smooth at z = 0.
    """
    if t == 0:
        return 0.0
    z_max = 2.0 * np.sqrt(t * window)
    n = int(max(4001, points_per_unit * z_max)) | 1
    z = np.linspace(0.0, z_max, n)
    integrand = 0.25 * z * kernel_profile(0.25 * z * z) ** 2
    return float(2.0 * t * integrate.simpson(integrand, x=z))


def kernel_bounds_report(t_list: Iterable[float], sup_samples: int = 4096) -> List[KernelBoundsRow]:
    """
    Numerical sup and L^2 norms of the kernels with fitted constants.

    Args:
        t_list: positive times
        sup_samples: number of logarithmically spaced y samples for the sup

    Returns:
        One KernelBoundsRow per t
    """
    rows = []
    for t in t_list:
        t = float(t)
        if t <= 0:
            raise InvalidInputError("t_list", "all times must be positive")
        window = kernel_window(t)
        y = np.geomspace(1e-12, window, sup_samples)
        sup_k = float(np.max(np.abs(kernel_K(t, y))))
        sup_j = float(np.max(np.abs(kernel_J(t, np.concatenate(([0.0], y))))))
        l2_sq = kernel_l2_squared(t, window)
        tail = kernel_l2_tail(t, window)
        rows.append(KernelBoundsRow(
            t=t,
            sup_K=sup_k,
            l2_K=float(np.sqrt(l2_sq)),
            sup_J=sup_j,
            C_inf_fit=sup_k / t,
            C_l2_fit=float(np.sqrt(l2_sq + tail) / np.sqrt(t)),
            window=window,
            tail_estimate=float(tail),
        ))
    return rows
