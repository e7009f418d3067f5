"""Ohmic bath: spectral density, noise power spectrum and response function.

The environment is described entirely by its spectral density

    J(w) = 2 pi hbar alpha w exp(-w / w_c)

together with the temperature. Derived from it are the noise power
spectrum S(w) = J(w) hbar coth(beta hbar w / 2) and the time-domain
response function

    gamma(t) = (1/pi) Int_0^inf dw J(w) [coth(beta hbar w / 2) cos(wt)
                                         - i sin(wt)],

whose width sets the bath memory time. gamma is evaluated by adaptive
quadrature; the oscillatory cos/sin factors are handled with dedicated
oscillatory weights so the accuracy target holds out to t of order 100 ps.
"""

import warnings
from dataclasses import dataclass
from functools import lru_cache

import numpy as np
from scipy.integrate import IntegrationWarning, quad

from .errors import NumericalError, SaturationError
from .units import HBAR, thermal_beta

# Integration window: the exponential cutoff makes the integrand beyond
# 50 w_c smaller than 1e-20 of the total.
_CUTOFF_MULTIPLE = 50.0
# The thermal feature coth(beta hbar w / 2) - 1 lives below w ~ 2/(beta hbar);
# it is narrow on the scale of the full window and must be split off so the
# adaptive scheme cannot step over it.
_THERMAL_SPLIT = 0.2


@dataclass(frozen=True)
class OhmicBath:
    """Ohmic environment with dimensionless coupling alpha and cutoff omega_c.

    Parameters
    ----------
    alpha : dimensionless dissipation strength (>= 0)
    omega_c : cutoff frequency in 1/ps (> 0)
    temperature : bath temperature in mK (> 0)
    """

    alpha: float
    omega_c: float
    temperature: float

    def __post_init__(self):
        if self.alpha < 0.0:
            raise ValueError(f"alpha must be >= 0, got {self.alpha}")
        if self.omega_c <= 0.0:
            raise ValueError(f"omega_c must be > 0, got {self.omega_c}")
        if self.temperature <= 0.0:
            raise ValueError(f"temperature must be > 0, got {self.temperature}")

    @property
    def beta(self) -> float:
        """Inverse thermal energy in 1/ueV."""
        return thermal_beta(self.temperature)


@dataclass(frozen=True)
class ResponseSample:
    """One point of the bath response function gamma(t)."""

    t: float
    re_gamma: float
    im_gamma: float


def spectral_density(bath: OhmicBath, omega: float) -> float:
    """J(omega) in ueV; zero at omega = 0 by the linear prefactor."""
    if omega < 0.0:
        raise ValueError(f"omega must be >= 0, got {omega}")
    return 2.0 * np.pi * HBAR * bath.alpha * omega * np.exp(-omega / bath.omega_c)


def power_spectrum(bath: OhmicBath, omega: float) -> float:
    """Noise power spectrum S(omega) = J(omega) hbar coth(beta hbar omega/2).

    Units ueV^2 ps. The omega -> 0 limit is finite (4 pi hbar alpha k_B T)
    but omega = 0 itself is rejected because of the coth pole.
    """
    if omega <= 0.0:
        raise ValueError(f"omega must be > 0, got {omega}")
    x = 0.5 * bath.beta * HBAR * omega
    return spectral_density(bath, omega) * HBAR / np.tanh(x)


def _x_coth_x(x):
    """x*coth(x), stable through x = 0."""
    x = np.asarray(x, dtype=float)
    small = np.abs(x) < 1e-4
    safe = np.where(small, 1.0, x)
    return np.where(small, 1.0 + x * x / 3.0, safe / np.tanh(safe))


def _re_integrand(omega, bath, b):
    # (1/pi) J(w) coth(b w) with the w -> 0 limit folded in:
    # = (2 hbar alpha / b) exp(-w/w_c) * (b w) coth(b w)
    return (2.0 * HBAR * bath.alpha / b) * np.exp(-omega / bath.omega_c) * _x_coth_x(b * omega)


def _im_integrand(omega, bath):
    # -(1/pi) J(w); enters under the sin(wt) oscillatory weight
    return -2.0 * HBAR * bath.alpha * omega * np.exp(-omega / bath.omega_c)


@lru_cache(maxsize=32)
def _re_gamma_zero(bath: OhmicBath) -> tuple[float, float]:
    """Re gamma(0) and its quadrature error estimate."""
    b = 0.5 * bath.beta * HBAR
    w_max = _CUTOFF_MULTIPLE * bath.omega_c
    pts = [p for p in (0.5 / b, 4.0 / b, 32.0 / b, bath.omega_c, 10.0 * bath.omega_c) if p < w_max]
    val, err = quad(_re_integrand, 0.0, w_max, args=(bath, b),
                    points=pts, limit=400, epsabs=1e-300, epsrel=1e-12)
    return val, err


def response_function(bath: OhmicBath, t: float, rtol: float = 1e-8) -> complex:
    """Bath response function gamma(t) in ueV/ps, for t >= 0.

    The accuracy target is ``rtol`` relative to the t = 0 real value; a
    NumericalError carrying the achieved residual is raised if the
    quadrature cannot certify it.
    """
    if t < 0.0:
        raise ValueError(f"t must be >= 0, got {t}")
    scale, err0 = _re_gamma_zero(bath)
    if bath.alpha == 0.0:
        return 0.0 + 0.0j
    budget = rtol * abs(scale)
    if t == 0.0:
        if err0 > budget:
            raise NumericalError("response quadrature residual above target at t=0",
                                 residual=err0 / abs(scale))
        return complex(scale, 0.0)

    b = 0.5 * bath.beta * HBAR
    w_max = _CUTOFF_MULTIPLE * bath.omega_c
    split = min(_THERMAL_SPLIT, w_max / 2.0)

    # Re part: plain adaptive panel over the narrow thermal feature, then an
    # oscillatory-weight (QAWO) panel over the remaining range. The residual
    # gate below supersedes scipy's roundoff warning.
    pts = [p for p in (0.5 / b, 4.0 / b, 32.0 / b) if p < split]
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", IntegrationWarning)
        re1, er1 = quad(lambda w: _re_integrand(w, bath, b) * np.cos(w * t), 0.0, split,
                        points=pts, limit=200, epsabs=0.25 * budget, epsrel=1e-12)
        re2, er2 = quad(_re_integrand, split, w_max, args=(bath, b), weight="cos", wvar=t,
                        limit=400, maxp1=80, limlst=400, epsabs=0.25 * budget, epsrel=1e-12)
        im, er3 = quad(_im_integrand, 0.0, w_max, args=(bath,), weight="sin", wvar=t,
                       limit=400, maxp1=80, limlst=400, epsabs=0.25 * budget, epsrel=1e-12)
    residual = er1 + er2 + er3
    if residual > budget:
        raise NumericalError(f"response quadrature residual {residual:.3e} above "
                             f"target {budget:.3e} at t={t}",
                             residual=residual / abs(scale))
    return complex(re1 + re2, im)


def response_samples(bath: OhmicBath, times) -> np.ndarray:
    """gamma(t) on an array of times; complex ndarray."""
    return np.array([response_function(bath, float(t)) for t in np.asarray(times, dtype=float)])


def memory_time(bath: OhmicBath, threshold: float, t_max: float = 100.0,
                t_step: float = 0.1) -> float:
    """Smallest grid time beyond which gamma has decayed below ``threshold``.

    Both |Re gamma| / Re gamma(0) and |Im gamma| / max|Im gamma| must stay
    below the threshold from the returned time to the end of the fixed grid
    (default step 0.1 ps on [0, 100 ps]). Raises SaturationError if the
    criterion is never met within the grid.
    """
    if not 0.0 < threshold < 1.0:
        raise ValueError(f"threshold must be in (0, 1), got {threshold}")
    times = np.arange(0.0, t_max + 0.5 * t_step, t_step)
    gamma = response_samples(bath, times)
    re0 = abs(gamma[0].real)
    # |Im gamma| peaks within ~1/w_c of the origin, below the grid resolution;
    # normalize by the true peak, not the coarse-grid maximum
    peak_times = np.linspace(0.0, min(3.0 / bath.omega_c, t_max), 151)
    im_max = max(np.abs(gamma.imag).max(),
                 np.abs(response_samples(bath, peak_times).imag).max())
    if re0 == 0.0:  # alpha = 0: no memory at all
        return times[1]
    re_ratio = np.abs(gamma.real) / re0
    im_ratio = np.abs(gamma.imag) / im_max if im_max > 0.0 else np.zeros_like(re_ratio)
    ok = (re_ratio < threshold) & (im_ratio < threshold)
    # require the condition to hold from t to the grid end
    ok_tail = np.flip(np.logical_and.accumulate(np.flip(ok)))
    idx = np.nonzero(ok_tail)[0]
    if idx.size == 0:
        raise SaturationError(
            f"gamma never stays below threshold {threshold} within [0, {t_max}] ps",
            grid_end=float(times[-1]))
    return float(times[idx[0]])
