"""Decoherence-time extraction: golden-rule Bloch rates and trajectory fits.

The Markovian baseline at the gate-charge sweet spot (B_z = 0) is

    1/tau_1 = 2/tau_2 = J(w_0) coth(beta hbar w_0 / 2) / (2 hbar),

with w_0 = B_x / hbar, so the dephasing time is exactly twice the
relaxation time. The non-Markovian number comes from fitting a decaying
exponential (with free asymptote) to an ITM trajectory observable; for
oscillatory observables the fit runs on the envelope of local extrema.
"""

from dataclasses import dataclass, field

import numpy as np
from scipy.optimize import least_squares

from .bath import OhmicBath, spectral_density
from .errors import ConfigError, NoDecayError, NumericalError
from .influence import eta_coefficients
from .itm import Trajectory, build_transfer_tensor, propagate
from .qubit import QubitParameters, initial_state, short_time_propagator
from .units import HBAR

US_PER_PS = 1e-6

FIT_OBSERVABLES = ("abs_rho01", "re_rho01", "im_rho01", "rho00", "rho11")
# envelope fitting kicks in when this many oscillation peaks are present
_MIN_PEAKS = 8


@dataclass(frozen=True)
class DecayFit:
    """Exponential-decay fit y(t) = c_inf + (c0 - c_inf) exp(-t / tau)."""

    tau: float  # microseconds
    c0: float
    c_inf: float
    rms_residual: float
    observable: str = "abs_rho01"
    envelope: bool = False


@dataclass(frozen=True)
class ComparisonReport:
    """Markovian vs ITM dephasing times (microseconds) and their ratio."""

    tau2_bloch: float
    tau2_itm: float
    ratio: float
    parameters: dict = field(default_factory=dict)


def bloch_decoherence_time(params: QubitParameters, bath: OhmicBath,
                           include_cutoff: bool = True) -> tuple[float, float]:
    """Golden-rule (tau_1, tau_2) in microseconds at the B_z = 0 working point.

    ``include_cutoff=False`` evaluates J(w_0) without the exponential cutoff
    factor, which moves tau_2 by about 1.6% at the default parameters.
    """
    if abs(params.b_z) > 1e-12:
        raise ConfigError(f"Bloch rates implemented at the sweet spot B_z = 0 only; "
                          f"got B_z = {params.b_z} ueV (n_g = {params.n_g})")
    if bath.alpha == 0.0:
        raise ConfigError("alpha = 0 gives an infinite decoherence time")
    omega0 = params.b_x / HBAR
    j_val = spectral_density(bath, omega0)
    if not include_cutoff:
        j_val = 2.0 * np.pi * HBAR * bath.alpha * omega0
    rate1 = j_val / np.tanh(0.5 * bath.beta * HBAR * omega0) / (2.0 * HBAR)
    tau1_ps = 1.0 / rate1
    return tau1_ps * US_PER_PS, 2.0 * tau1_ps * US_PER_PS


def _local_maxima(y: np.ndarray) -> np.ndarray:
    """Indices of 3-point-stencil local maxima (strict left, non-strict right)."""
    if len(y) < 3:
        return np.array([], dtype=int)
    return np.nonzero((y[1:-1] > y[:-2]) & (y[1:-1] >= y[2:]))[0] + 1


def _exp_model(p, t):
    c_inf, c0, tau = p
    return c_inf + (c0 - c_inf) * np.exp(-t / tau)


def fit_decay(trajectory: Trajectory, observable: str = "abs_rho01") -> DecayFit:
    """Fit the decay time of a trajectory observable.

    Needs at least 50 samples. Oscillatory data (enough local maxima of the
    magnitude spread over the window) is reduced to its extremum envelope
    before fitting. Non-decaying data raises NoDecayError; a diverged fit
    raises NumericalError carrying the residual.
    """
    if observable not in FIT_OBSERVABLES:
        raise ValueError(f"observable must be one of {FIT_OBSERVABLES}, got {observable!r}")
    t = np.asarray(trajectory.times, dtype=float)
    y = np.asarray(getattr(trajectory, observable), dtype=float)
    if len(y) < 50:
        raise ConfigError(f"need at least 50 samples to fit, got {len(y)}")

    span = t[-1] - t[0]
    z = np.abs(y)
    peaks = _local_maxima(z)
    envelope = len(peaks) >= _MIN_PEAKS and (t[peaks[-1]] - t[peaks[0]]) >= 0.5 * span
    if envelope:
        t_fit, y_fit = t[peaks], z[peaks]
    else:
        t_fit, y_fit = t, y

    scale = np.abs(y_fit).max()
    if scale == 0.0 or y_fit.std() < 1e-13 * max(scale, 1.0):
        raise NoDecayError(f"{observable} is constant over the window")

    tail = max(1, len(y_fit) // 10)
    c_inf0 = float(y_fit[-tail:].mean())
    c00 = float(y_fit[0])
    # log-linear seed for tau on the samples clearly above the asymptote
    resid = y_fit - c_inf0
    mask = np.abs(resid) > 0.05 * max(abs(c00 - c_inf0), 1e-30)
    if mask.sum() >= 2 and abs(c00 - c_inf0) > 0:
        sgn = np.sign(c00 - c_inf0)
        vals = sgn * resid[mask]
        ok = vals > 0
        if ok.sum() >= 2:
            slope = np.polyfit(t_fit[mask][ok], np.log(vals[ok]), 1)[0]
            tau0 = -1.0 / slope if slope < 0 else span
        else:
            tau0 = span / 3.0
    else:
        tau0 = span / 3.0
    tau0 = min(max(tau0, span * 1e-3), span * 1e3)

    result = least_squares(lambda p: _exp_model(p, t_fit) - y_fit,
                           x0=[c_inf0, c00, tau0], method="lm",
                           xtol=1e-15, ftol=1e-15, max_nfev=20000)
    c_inf, c0, tau = result.x
    residual = float(np.sqrt(np.mean(result.fun ** 2)))
    amplitude = abs(c0 - c_inf)
    rms = residual / amplitude if amplitude > 0 else np.inf

    if not np.isfinite([c_inf, c0, tau]).all() or not result.success:
        raise NumericalError("decay fit did not converge", residual=residual)
    if tau <= 0 or amplitude < 1e-12 * max(scale, 1.0):
        raise NoDecayError(f"{observable} shows no exponential decay on the window")
    if tau > 100.0 * span:
        raise NoDecayError(f"fitted time constant {tau * US_PER_PS:.3g} us exceeds "
                           f"100x the window span")
    return DecayFit(tau=float(tau) * US_PER_PS, c0=float(c0), c_inf=float(c_inf),
                    rms_residual=rms, observable=observable, envelope=envelope)


def compare(params: QubitParameters, bath: OhmicBath, dt: float, dk_max: int,
            t_max: float, sample_every: int = 64, initial: str = "zero",
            observable: str = "im_rho01", include_cutoff: bool = True,
            backend: str | None = None) -> ComparisonReport:
    """Run both estimators at one parameter point and report their ratio.

    The ITM side evolves ``initial`` (default the oscillating "zero" state,
    whose off-diagonal element shows the dephasing envelope directly) and
    fits the requested observable.
    """
    n_steps = max(1, int(np.floor(t_max / dt + 1e-9)))
    _, tau2_bloch = bloch_decoherence_time(params, bath, include_cutoff=include_cutoff)
    table = eta_coefficients(bath, dt, n_steps, dk_max)
    propagator = short_time_propagator(params, dt)
    transfer = build_transfer_tensor(propagator, table)
    trajectory = propagate(initial_state(initial), transfer, table, n_steps,
                           sample_every=sample_every, backend=backend)
    fit = fit_decay(trajectory, observable)
    echo = {
        "e_j_ueV": params.e_j, "e_c_ueV": params.e_c, "n_g": params.n_g,
        "alpha": bath.alpha, "omega_c_per_ps": bath.omega_c,
        "temperature_mK": bath.temperature, "dt_ps": dt, "dk_max": dk_max,
        "t_max_ps": t_max, "sample_every": sample_every,
        "initial_state": initial, "observable": observable,
        "bloch_cutoff": include_cutoff,
    }
    return ComparisonReport(tau2_bloch=tau2_bloch, tau2_itm=fit.tau,
                            ratio=fit.tau / tau2_bloch, parameters=echo)
