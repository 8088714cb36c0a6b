"""Vectorized per-item geometry for layout assembly.

Two interchangeable implementations of the same batch computation: a numba
``@njit`` kernel and a pure-numpy twin. The numba path is used when numba
is importable unless ``INTERCEPT_GRAPH_NUMBA=0`` (or ``false``/``off``/``no``)
forces the numpy fallback; ``benchmarks/bench_kernels.py`` compares the two.

All trigonometry is evaluated up front with numpy's ufuncs and only plain
IEEE arithmetic runs inside the jitted loop: LLVM's sin/cos lowering can
drift from libm by one ulp, which would let the two paths disagree about
residue flags right at a top-k cutoff. With the trig hoisted, both paths
are bit-identical.
"""

from __future__ import annotations

import os
from typing import NamedTuple

import numpy as np

try:
    from numba import njit

    HAS_NUMBA = True
except ImportError:  # pragma: no cover - exercised via the env flag instead
    njit = None
    HAS_NUMBA = False


class BatchGeometry(NamedTuple):
    theta: np.ndarray
    chord: np.ndarray
    intercepted: np.ndarray
    intercept_param: np.ndarray
    residue: np.ndarray
    ax: np.ndarray
    ay: np.ndarray
    bx: np.ndarray
    by: np.ndarray
    px: np.ndarray
    py: np.ndarray


def _assemble_numpy(cos_t, sin_pi, cos_pi, sin_pf, cos_pf, r, R, side_sign):
    chord = np.sqrt(r * r + R * R - 2.0 * r * R * cos_t)
    residue = r >= R * cos_t
    safe_chord = np.where(chord > 0.0, chord, 1.0)
    if r == R:
        # whole segment is a chord of the circle; avoid the c**2/c rounding
        ell = np.where(chord > 0.0, chord, 0.0)
    else:
        ell = np.where(
            residue & (chord > 0.0),
            2.0 * r * (r - R * cos_t) / safe_chord,
            0.0,
        )
        ell = np.minimum(np.maximum(ell, 0.0), chord)
    t = np.where(chord > 0.0, ell / safe_chord, 0.0)
    ax = side_sign * r * sin_pi
    ay = -r * cos_pi
    bx = side_sign * R * sin_pf
    by = -R * cos_pf
    px = ax + t * (bx - ax)
    py = ay + t * (by - ay)
    return chord, ell, t, residue, ax, ay, bx, by, px, py


def _assemble_loop(cos_t, sin_pi, cos_pi, sin_pf, cos_pf, r, R, side_sign,
                   chord, ell, t, residue, ax, ay, bx, by, px, py):
    n = cos_t.shape[0]
    for i in range(n):
        c = np.sqrt(r * r + R * R - 2.0 * r * R * cos_t[i])
        chord[i] = c
        res = r >= R * cos_t[i]
        residue[i] = res
        if r == R:
            length = c if c > 0.0 else 0.0
        elif res and c > 0.0:
            length = 2.0 * r * (r - R * cos_t[i]) / c
            if length < 0.0:
                length = 0.0
            elif length > c:
                length = c
        else:
            length = 0.0
        ell[i] = length
        t[i] = length / c if c > 0.0 else 0.0
        ax[i] = side_sign * r * sin_pi[i]
        ay[i] = -r * cos_pi[i]
        bx[i] = side_sign * R * sin_pf[i]
        by[i] = -R * cos_pf[i]
        px[i] = ax[i] + t[i] * (bx[i] - ax[i])
        py[i] = ay[i] + t[i] * (by[i] - ay[i])


if HAS_NUMBA:
    _assemble_jit = njit(cache=True)(_assemble_loop)


def _assemble_numba(cos_t, sin_pi, cos_pi, sin_pf, cos_pf, r, R, side_sign):
    n = cos_t.shape[0]
    chord = np.empty(n)
    ell = np.empty(n)
    t = np.empty(n)
    residue = np.empty(n, dtype=np.bool_)
    ax = np.empty(n)
    ay = np.empty(n)
    bx = np.empty(n)
    by = np.empty(n)
    px = np.empty(n)
    py = np.empty(n)
    _assemble_jit(cos_t, sin_pi, cos_pi, sin_pf, cos_pf,
                  float(r), float(R), float(side_sign),
                  chord, ell, t, residue, ax, ay, bx, by, px, py)
    return chord, ell, t, residue, ax, ay, bx, by, px, py


def numba_enabled() -> bool:
    """The env flag decides; absence of numba forces the numpy path."""
    flag = os.environ.get("INTERCEPT_GRAPH_NUMBA", "").strip().lower()
    if flag in ("0", "false", "off", "no"):
        return False
    return HAS_NUMBA


def active_backend() -> str:
    return "numba" if numba_enabled() else "numpy"


def batch_geometry(
    phi_initial: np.ndarray,
    phi_final: np.ndarray,
    theta: np.ndarray,
    r: float,
    R: float,
    side_sign: float,
) -> BatchGeometry:
    """Per-item chord, intercepted portion, residue flag, and endpoints for
    one side; ``side_sign`` is +1 for the right semicircle, -1 for the left.
    """
    phi_initial = np.ascontiguousarray(phi_initial, dtype=float)
    phi_final = np.ascontiguousarray(phi_final, dtype=float)
    theta = np.ascontiguousarray(theta, dtype=float)
    cos_t = np.cos(theta)
    sin_pi = np.sin(phi_initial)
    cos_pi = np.cos(phi_initial)
    sin_pf = np.sin(phi_final)
    cos_pf = np.cos(phi_final)
    assemble = _assemble_numba if numba_enabled() else _assemble_numpy
    out = assemble(cos_t, sin_pi, cos_pi, sin_pf, cos_pf,
                   float(r), float(R), float(side_sign))
    return BatchGeometry(theta, *out)
