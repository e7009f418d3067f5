"""Hot numeric kernels: numba-jitted with a pure-numpy fallback.

Two loops dominate runtime: the windowed tensor iteration (hundreds of
thousands of steps for microsecond trajectories) and the exact path sum
(4^(N+1) paths). Both carry an @njit implementation and an equivalent
vectorized numpy one. Set ``JCQSIM_DISABLE_NUMBA=1`` to force the numpy
path; otherwise numba is used when importable.

State layout: the window tensor over M+1 consecutive time points is stored
flat, row-major, oldest point first. Viewed as (4^M, 4) the row indexes the
M older points and the column the newest; viewed as (4, 4^M) the first axis
is the oldest point alone.
"""

import os

import numpy as np

_DISABLE = os.environ.get("JCQSIM_DISABLE_NUMBA", "").strip().lower() in {"1", "true", "yes"}

try:
    if _DISABLE:
        raise ImportError("numba disabled by JCQSIM_DISABLE_NUMBA")
    from numba import njit

    NUMBA_ENABLED = True
except ImportError:
    NUMBA_ENABLED = False


def backend_name() -> str:
    return "numba" if NUMBA_ENABLED else "numpy"


def _evolve_np(e_flat, g_flat, c_flat, q, n_start, n_steps, sample_steps, guard):
    state = e_flat.copy()
    g2d = g_flat.reshape(q, 4)
    c2d = c_flat.reshape(q, 4)
    samples = np.zeros((len(sample_steps), 4), dtype=np.complex128)
    si = 0
    for n in range(n_start + 1, n_steps + 1):
        folded = state.reshape(4, q).sum(axis=0)
        e2d = folded[:, None] * g2d
        if np.abs(e2d).max() > guard:
            return samples, n
        state = e2d.reshape(-1)
        if si < len(sample_steps) and n == sample_steps[si]:
            samples[si] = (e2d * c2d).sum(axis=0)
            si += 1
    return samples, -1


def _brute_np(rho0v, k_tensor, self_end, self_int, f_ii, f_ei, f_ee, n, dk_max):
    total = 4 ** (n + 1)
    out = np.zeros(4, dtype=np.complex128)
    chunk = 1 << 18
    for start in range(0, total, chunk):
        idx = np.arange(start, min(start + chunk, total), dtype=np.int64)
        digits = np.empty((n + 1, idx.size), dtype=np.int64)
        rem = idx
        for k in range(n + 1):
            digits[k] = rem & 3
            rem = rem >> 2
        w = rho0v[digits[0]].copy()
        for k in range(n):
            w *= k_tensor[digits[k], digits[k + 1]]
        w *= self_end[digits[0]] * self_end[digits[n]]
        for k in range(1, n):
            w *= self_int[digits[k]]
        for dk in range(1, min(n, dk_max) + 1):
            for e in range(0, n - dk + 1):
                late = e + dk
                if e == 0 and late == n:
                    fac = f_ee
                elif e == 0 or late == n:
                    fac = f_ei
                else:
                    fac = f_ii
                w *= fac[dk - 1, digits[e], digits[late]]
        out += (np.bincount(digits[n], weights=w.real, minlength=4)
                + 1j * np.bincount(digits[n], weights=w.imag, minlength=4))
    return out


if NUMBA_ENABLED:

    @njit(cache=True)
    def _evolve_nb(e_flat, g_flat, c_flat, q, n_start, n_steps, sample_steps, guard):
        state = e_flat.copy()
        folded = np.empty(q, dtype=np.complex128)
        n_samp = sample_steps.shape[0]
        samples = np.zeros((n_samp, 4), dtype=np.complex128)
        si = 0
        guard_sq = guard * guard
        for n in range(n_start + 1, n_steps + 1):
            for j in range(q):
                folded[j] = state[j] + state[q + j] + state[2 * q + j] + state[3 * q + j]
            peak = 0.0
            for j in range(q):
                s = folded[j]
                base = 4 * j
                for y in range(4):
                    v = s * g_flat[base + y]
                    state[base + y] = v
                    mag = v.real * v.real + v.imag * v.imag
                    if mag > peak:
                        peak = mag
            if peak > guard_sq:
                return samples, n
            if si < n_samp and n == sample_steps[si]:
                r0 = 0.0 + 0.0j
                r1 = 0.0 + 0.0j
                r2 = 0.0 + 0.0j
                r3 = 0.0 + 0.0j
                for j in range(q):
                    base = 4 * j
                    r0 += state[base] * c_flat[base]
                    r1 += state[base + 1] * c_flat[base + 1]
                    r2 += state[base + 2] * c_flat[base + 2]
                    r3 += state[base + 3] * c_flat[base + 3]
                samples[si, 0] = r0
                samples[si, 1] = r1
                samples[si, 2] = r2
                samples[si, 3] = r3
                si += 1
        return samples, -1

    @njit(cache=True)
    def _brute_nb(rho0v, k_tensor, self_end, self_int, f_ii, f_ei, f_ee, n, dk_max):
        out = np.zeros(4, dtype=np.complex128)
        digits = np.empty(n + 1, dtype=np.int64)
        total = 4 ** (n + 1)
        span = min(n, dk_max)
        for idx in range(total):
            rem = idx
            for k in range(n + 1):
                digits[k] = rem & 3
                rem >>= 2
            w = rho0v[digits[0]]
            for k in range(n):
                w *= k_tensor[digits[k], digits[k + 1]]
            w *= self_end[digits[0]] * self_end[digits[n]]
            for k in range(1, n):
                w *= self_int[digits[k]]
            for dk in range(1, span + 1):
                for e in range(0, n - dk + 1):
                    late = e + dk
                    if e == 0 and late == n:
                        w *= f_ee[dk - 1, digits[e], digits[late]]
                    elif e == 0 or late == n:
                        w *= f_ei[dk - 1, digits[e], digits[late]]
                    else:
                        w *= f_ii[dk - 1, digits[e], digits[late]]
            out[digits[n]] += w
        return out


def _resolve_backend(backend: str | None) -> bool:
    if backend is None:
        return NUMBA_ENABLED
    if backend == "numba":
        if not NUMBA_ENABLED:
            raise RuntimeError("numba backend requested but unavailable or disabled")
        return True
    if backend == "numpy":
        return False
    raise ValueError(f"unknown backend {backend!r}")


def evolve_window(e_flat, g_flat, c_flat, n_start, n_steps, sample_steps,
                  guard: float = 4.0, backend: str | None = None):
    """Iterate the window tensor from ``n_start`` to ``n_steps``.

    ``e_flat`` is the flat (M+1)-point tensor after step ``n_start``;
    ``g_flat`` the steady one-step factor tensor and ``c_flat`` the steady
    readout correction, both flat over M+1 points. Corrected 4-vector
    readouts are recorded at each step in ``sample_steps`` (sorted, all
    > n_start). Returns (samples, bad_step): bad_step is -1 or the step at
    which the explosion guard tripped.
    """
    q = g_flat.size // 4
    e_flat = np.ascontiguousarray(e_flat, dtype=np.complex128)
    g_flat = np.ascontiguousarray(g_flat, dtype=np.complex128)
    c_flat = np.ascontiguousarray(c_flat, dtype=np.complex128)
    sample_steps = np.asarray(sample_steps, dtype=np.int64)
    fn = _evolve_nb if _resolve_backend(backend) else _evolve_np
    return fn(e_flat, g_flat, c_flat, q, int(n_start), int(n_steps), sample_steps,
              float(guard))


def brute_force_sum(rho0v, k_tensor, self_end, self_int, f_ii, f_ei, f_ee,
                    n_steps: int, dk_max: int, backend: str | None = None):
    """Sum over all 4^(N+1) forward/backward paths; returns the final 4-vector."""
    args = (np.ascontiguousarray(rho0v, dtype=np.complex128),
            np.ascontiguousarray(k_tensor, dtype=np.complex128),
            np.ascontiguousarray(self_end, dtype=np.complex128),
            np.ascontiguousarray(self_int, dtype=np.complex128),
            np.ascontiguousarray(f_ii, dtype=np.complex128),
            np.ascontiguousarray(f_ei, dtype=np.complex128),
            np.ascontiguousarray(f_ee, dtype=np.complex128),
            int(n_steps), int(dk_max))
    fn = _brute_nb if _resolve_backend(backend) else _brute_np
    return fn(*args)
