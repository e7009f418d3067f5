"""Discretized influence-functional coefficients and pairwise influence factors.

Paths are piecewise constant on cells of the time grid: interior points own
full cells [(k-1/2) dt, (k+1/2) dt], while the first and last points own
half cells ([0, dt/2] and [N dt - dt/2, N dt]) matching the half-step
system/bath splitting at the path ends. The coefficients are double time
integrals of the bath response function over the cells,

    eta_{kk'} = Int_{cell k} dt' Int_{cell k'} dt'' gamma(t' - t''),

with the self term integrated over the ordered triangle t'' < t'. They are
evaluated in the frequency domain: folding the cell geometry into the
omega-integrand gives window polynomials that are regular at omega -> 0,
and the integral is done on graded Gauss-Legendre panels (fine near zero
for the thermal feature, oscillation-limited width elsewhere).

A pair coefficient carries one of three classes depending on which cells it
connects: interior-interior, endpoint-interior or endpoint-endpoint.

The qubit couples to the bath through half the Pauli operator (the standard
gate-charge noise convention, the same normalization under which the
golden-rule dephasing formula used by the Bloch comparison holds), so every
influence exponent carries the squared coupling weight (1/2)^2.
"""

from dataclasses import dataclass

import numpy as np

from .bath import OhmicBath
from .units import HBAR

# Bath couples to (sigma_z / 2); exponents scale with the square.
COUPLING_WEIGHT = 0.5
_G2 = COUPLING_WEIGHT * COUPLING_WEIGHT

INTERIOR = "interior"
ENDPOINT = "endpoint"

# spin-pair index p = 2*b_plus + b_minus, basis index b -> s = 1 - 2b
SPIN_PLUS = np.array([1.0, 1.0, -1.0, -1.0])
SPIN_MINUS = np.array([1.0, -1.0, 1.0, -1.0])

_GL_NODES = 16


@dataclass(frozen=True)
class EtaTable:
    """Influence coefficients for one time grid and one memory span.

    ``eta_pair_*`` arrays are indexed by separation dk = 1 .. dk_max; the
    endpoint-interior entries apply to pairs with exactly one half cell and
    the endpoint-endpoint entries to the (first, last) pair.
    """

    dt: float
    n_steps: int
    dk_max: int
    eta_self_interior: complex
    eta_self_end: complex
    eta_pair_interior: np.ndarray
    eta_pair_end_interior: np.ndarray
    eta_pair_end_end: np.ndarray

    def eta_self(self, kind: str) -> complex:
        return self.eta_self_end if kind == ENDPOINT else self.eta_self_interior

    def eta_pair(self, dk: int, kind: str) -> complex:
        if not 1 <= dk <= self.dk_max:
            raise ValueError(f"dk must be in [1, {self.dk_max}], got {dk}")
        if kind == "ii":
            return complex(self.eta_pair_interior[dk - 1])
        if kind == "ei":
            return complex(self.eta_pair_end_interior[dk - 1])
        if kind == "ee":
            return complex(self.eta_pair_end_end[dk - 1])
        raise ValueError(f"unknown pair class {kind!r}")


def _panel_nodes(edges: np.ndarray, n: int = _GL_NODES):
    x, w = np.polynomial.legendre.leggauss(n)
    half = 0.5 * np.diff(edges)
    mid = edges[:-1] + half
    nodes = (mid[:, None] + half[:, None] * x[None, :]).ravel()
    weights = (half[:, None] * w[None, :]).ravel()
    return nodes, weights


def _omega_grid(bath: OhmicBath, t_scale: float):
    """Panel grid on [0, 50 w_c]: geometric near zero, oscillation-limited beyond."""
    w_max = 50.0 * bath.omega_c
    b = 0.5 * bath.beta * HBAR
    # resolve the thermal feature below ~ 1/b
    fine = []
    e = 0.01 / b
    while e < min(2.0 / max(t_scale, 1e-12), w_max, 4.0):
        fine.append(e)
        e *= 2.0
    # at most 1/6 of the fastest oscillation period per panel
    width = min(0.5 * bath.omega_c, (2.0 * np.pi / max(t_scale, 1e-12)) / 6.0)
    start = fine[-1] if fine else 0.0
    n_uniform = int(np.ceil((w_max - start) / width))
    edges = np.concatenate([[0.0], fine, np.linspace(start, w_max, n_uniform + 1)[1:]])
    return _panel_nodes(np.unique(edges))


def _sinc(x):
    return np.sinc(x / np.pi)


def _self_windows(omega, width):
    """(W_re, W_im)/omega^2 for the ordered triangle over one cell."""
    z = omega * width
    w_re = 0.5 * width * width * _sinc(0.5 * z) ** 2
    small = np.abs(z) < 1e-2
    zs = np.where(small, 1.0, z)
    frac = np.where(small, z / 6.0 - z**3 / 120.0 + z**5 / 5040.0,
                    (zs - np.sin(zs)) / (zs * zs))
    w_im = width * width * frac
    return w_re, w_im


def _pair_windows(omega, dt, dk, kind):
    """(W_re, W_im)/omega^2 for two cells at separation dk of the given class."""
    if kind == "ii":
        amp = dt * dt * _sinc(0.5 * omega * dt) ** 2
        phase = dk * dt
    elif kind == "ei":
        amp = 0.5 * dt * dt * _sinc(0.5 * omega * dt) * _sinc(0.25 * omega * dt)
        phase = (dk - 0.25) * dt
    elif kind == "ee":
        amp = 0.25 * dt * dt * _sinc(0.25 * omega * dt) ** 2
        phase = (dk - 0.5) * dt
    else:
        raise ValueError(f"unknown pair class {kind!r}")
    return amp * np.cos(omega * phase), amp * np.sin(omega * phase)


def _eta_from_windows(bath: OhmicBath, w_re_fn, w_im_fn, t_scale: float) -> complex:
    from .bath import _x_coth_x  # stable x*coth(x)

    nodes, weights = _omega_grid(bath, t_scale)
    b = 0.5 * bath.beta * HBAR
    decay = np.exp(-nodes / bath.omega_c)
    w_re, w_im = w_re_fn(nodes), w_im_fn(nodes)
    # (1/pi) J(w)/w^2 * coth(b w) * [w^2 W_re] = 2 hbar alpha e^{-w/w_c} xcothx(bw)/b * W_re
    re = np.sum(weights * (2.0 * HBAR * bath.alpha / b) * decay * _x_coth_x(b * nodes) * w_re)
    im = np.sum(weights * 2.0 * HBAR * bath.alpha * nodes * decay * w_im)
    return complex(re, -im)


def eta_coefficients(bath: OhmicBath, dt: float, n_steps: int, dk_max: int) -> EtaTable:
    """Build the full coefficient table for a grid of ``n_steps`` steps.

    Interior pair entries depend only on the separation dk, so one entry per
    dk and class covers the whole grid.
    """
    if dt <= 0.0:
        raise ValueError(f"dt must be positive, got {dt}")
    if not 1 <= dk_max <= n_steps:
        raise ValueError(f"dk_max must satisfy 1 <= dk_max <= n_steps, got {dk_max}")

    self_int = _eta_from_windows(
        bath, lambda w: _self_windows(w, dt)[0], lambda w: _self_windows(w, dt)[1], dt)
    self_end = _eta_from_windows(
        bath, lambda w: _self_windows(w, 0.5 * dt)[0], lambda w: _self_windows(w, 0.5 * dt)[1],
        0.5 * dt)

    pair = {kind: np.empty(dk_max, dtype=complex) for kind in ("ii", "ei", "ee")}
    for dk in range(1, dk_max + 1):
        for kind in ("ii", "ei", "ee"):
            pair[kind][dk - 1] = _eta_from_windows(
                bath,
                lambda w, d=dk, k=kind: _pair_windows(w, dt, d, k)[0],
                lambda w, d=dk, k=kind: _pair_windows(w, dt, d, k)[1],
                (dk + 1) * dt)

    return EtaTable(dt=dt, n_steps=n_steps, dk_max=dk_max,
                    eta_self_interior=self_int, eta_self_end=self_end,
                    eta_pair_interior=pair["ii"],
                    eta_pair_end_interior=pair["ei"],
                    eta_pair_end_end=pair["ee"])


def dump_eta_csv(table: EtaTable, path: str) -> None:
    """Debug dump: one row per coefficient, columns dk, class, re_eta, im_eta."""
    def fmt(x):
        return format(float(x), ".12g")

    with open(path, "w", encoding="utf-8", newline="") as fh:
        fh.write("dk,class,re_eta,im_eta\n")
        fh.write(f"0,{INTERIOR},{fmt(table.eta_self_interior.real)},"
                 f"{fmt(table.eta_self_interior.imag)}\n")
        fh.write(f"0,{ENDPOINT},{fmt(table.eta_self_end.real)},"
                 f"{fmt(table.eta_self_end.imag)}\n")
        for dk in range(1, table.dk_max + 1):
            for kind in ("ii", "ei", "ee"):
                eta = table.eta_pair(dk, kind)
                fh.write(f"{dk},{kind},{fmt(eta.real)},{fmt(eta.imag)}\n")


def _check_pair(pair):
    s_plus, s_minus = pair
    if s_plus not in (-1, 1) or s_minus not in (-1, 1):
        raise ValueError(f"spin pair values must be +-1, got {pair}")
    return float(s_plus), float(s_minus)


def influence_factor_I0(pair, eta_self: complex) -> complex:
    """Self-interaction factor of one time point for spin pair (s+, s-)."""
    sp, sm = _check_pair(pair)
    return np.exp(-_G2 / HBAR * (sp - sm) * (eta_self * sp - np.conj(eta_self) * sm))


def influence_factor_Idk(pair_early, pair_late, eta_pair: complex) -> complex:
    """Cross factor between an earlier and a later time point."""
    ep, em = _check_pair(pair_early)
    lp, lm = _check_pair(pair_late)
    return np.exp(-_G2 / HBAR * (lp - lm) * (eta_pair * ep - np.conj(eta_pair) * em))


def self_factor_table(eta_self: complex) -> np.ndarray:
    """I0 over the 4 spin-pair indices."""
    return np.exp(-_G2 / HBAR * (SPIN_PLUS - SPIN_MINUS)
                  * (eta_self * SPIN_PLUS - np.conj(eta_self) * SPIN_MINUS))


def pair_factor_table(eta_pair: complex) -> np.ndarray:
    """I_dk as a (4, 4) array indexed [early pair, late pair]."""
    early = eta_pair * SPIN_PLUS - np.conj(eta_pair) * SPIN_MINUS
    late = SPIN_PLUS - SPIN_MINUS
    return np.exp(-_G2 / HBAR * np.outer(early, late))


def pair_class(earlier: int, later: int, n_final: int) -> str:
    """Coefficient class for the pair (earlier, later) on a path ending at n_final."""
    if earlier == 0 and later == n_final:
        return "ee"
    if earlier == 0 or later == n_final:
        return "ei"
    return "ii"


def assemble_influence(path_plus, path_minus, table: EtaTable) -> complex:
    """Influence functional of one forward/backward path pair.

    Product of all self factors and all pair factors up to separation
    dk_max; with dk_max = N this is the complete discretized influence
    functional. Endpoint coefficient classes apply at the first and last
    points.
    """
    path_plus = list(path_plus)
    path_minus = list(path_minus)
    if len(path_plus) != len(path_minus):
        raise ValueError(f"path lengths differ: {len(path_plus)} vs {len(path_minus)}")
    n = len(path_plus) - 1
    if n < 0:
        raise ValueError("paths must contain at least one point")
    value = 1.0 + 0.0j
    for k in range(n + 1):
        kind = ENDPOINT if k in (0, n) else INTERIOR
        value *= influence_factor_I0((path_plus[k], path_minus[k]), table.eta_self(kind))
    for dk in range(1, min(n, table.dk_max) + 1):
        for e in range(0, n - dk + 1):
            eta = table.eta_pair(dk, pair_class(e, e + dk, n))
            value *= influence_factor_Idk((path_plus[e], path_minus[e]),
                                          (path_plus[e + dk], path_minus[e + dk]), eta)
    return value
