"""Independent numerical flow oracle.

Integrates dp/dt = X(p) for p in C^2 along a polyline of complex time
starting at 0, with an embedded Dormand-Prince RK5(4) pair whose tableau is
fixed here as exact rationals.  Each complex segment is pulled back to a
real parameter: dp/dtau = d * X(p) with d the segment vector.

This module deliberately shares no code with the closed-form flow routines
it is used to cross-check.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction as F

import numpy as np

from .errors import EscapeError, NumericalError

# Dormand-Prince 5(4) tableau, exact
_A = [
    [],
    [F(1, 5)],
    [F(3, 40), F(9, 40)],
    [F(44, 45), F(-56, 15), F(32, 9)],
    [F(19372, 6561), F(-25360, 2187), F(64448, 6561), F(-212, 729)],
    [F(9017, 3168), F(-355, 33), F(46732, 5247), F(49, 176), F(-5103, 18656)],
    [F(35, 384), F(0), F(500, 1113), F(125, 192), F(-2187, 6784), F(11, 84)],
]
_B5 = [F(35, 384), F(0), F(500, 1113), F(125, 192), F(-2187, 6784), F(11, 84), F(0)]
_B4 = [F(5179, 57600), F(0), F(7571, 16695), F(393, 640), F(-92097, 339200),
       F(187, 2100), F(1, 40)]

A = [[float(x) for x in row] for row in _A]
B5 = np.array([float(x) for x in _B5])
B4 = np.array([float(x) for x in _B4])
ERR_W = B5 - B4

MIN_STEP_FACTOR = 1e-14  # step underflow threshold, relative to segment length


@dataclass(frozen=True)
class IntegrationSpec:
    """Tolerances and the complex-time polyline (waypoints after implicit 0)."""
    path: tuple = (1.0 + 0j,)
    rtol: float = 1e-10
    atol: float = 1e-12
    max_steps: int = 100_000


@dataclass(frozen=True)
class IntegrationResult:
    endpoint: tuple
    error_estimate: float
    steps: int
    rejected: int


def _segment(field, p, d, rtol, atol, budget, seg_index):
    """Integrate dp/dtau = d*X(p) over tau in [0,1]; returns (p, err, steps, rej)."""
    with np.errstate(over="ignore", invalid="ignore"):
        return _segment_inner(field, p, d, rtol, atol, budget, seg_index)


def _segment_inner(field, p, d, rtol, atol, budget, seg_index):
    # probing past a blow-up overflows on purpose; isfinite checks catch it
    y = np.array(p, dtype=complex)
    tau = 0.0
    h = 0.1
    steps = rejected = 0
    err_acc = 0.0
    k1 = np.array(field(*y), dtype=complex) * d
    while 1.0 - tau > 1e-14:
        if steps + rejected >= budget:
            raise NumericalError("max_steps exhausted at tau=%.6f" % tau)
        h = min(h, 1.0 - tau)
        if h < MIN_STEP_FACTOR:
            raise EscapeError(
                "escape/blow-up before segment end (tau=%.8f)" % tau,
                tau_reached=float(tau), segment_index=seg_index)
        ks = [k1]
        bad = False
        for i in range(1, 7):
            yi = y + h * sum(A[i][j] * ks[j] for j in range(i))
            if not np.all(np.isfinite(yi.view(float))):
                bad = True
                break
            ks.append(np.array(field(*yi), dtype=complex) * d)
        if not bad:
            ks = np.array(ks)
            y5 = y + h * (B5 @ ks)
            err_vec = h * (ERR_W @ ks)
            scale = atol + rtol * np.maximum(np.abs(y), np.abs(y5))
            finite = np.all(np.isfinite(y5.view(float)))
            err = np.sqrt(np.mean(np.abs(err_vec / scale) ** 2)) if finite else np.inf
        else:
            err = np.inf
        if err <= 1.0:
            tau += h
            y = y5
            k1 = ks[6]  # FSAL
            err_acc += float(np.sqrt(np.mean(np.abs(err_vec) ** 2)))
            steps += 1
            grow = 0.9 * err ** -0.2 if err > 0 else 5.0
            h *= min(5.0, max(0.2, grow))
        else:
            rejected += 1
            shrink = 0.9 * err ** -0.2 if np.isfinite(err) else 0.1
            h *= min(0.9, max(0.1, shrink))
    return y, err_acc, steps, rejected


def integrate(field, p0, spec: IntegrationSpec) -> IntegrationResult:
    """Flow p0 along the polyline 0 -> path[0] -> path[1] -> ...

    field(z, w) returns the complex pair (dz/dt, dw/dt).
    """
    p = (complex(p0[0]), complex(p0[1]))
    prev = 0j
    total_err = 0.0
    total_steps = total_rej = 0
    for seg_index, waypoint in enumerate(spec.path):
        d = complex(waypoint) - prev
        if d != 0:
            y, err, steps, rej = _segment(
                field, p, d, spec.rtol, spec.atol,
                spec.max_steps - total_steps - total_rej, seg_index)
            p = (complex(y[0]), complex(y[1]))
            total_err += err
            total_steps += steps
            total_rej += rej
        prev = complex(waypoint)
    return IntegrationResult(p, total_err, total_steps, total_rej)


def monodromy_check(field, p0, loop, rtol: float = 1e-10, atol: float = 1e-12):
    """Euclidean gap between p0 and its transport along a candidate-period path.

    The polyline is traversed exactly as given; a genuine period produces a
    gap at integrator accuracy, a non-period leaves a visible displacement.
    """
    loop = tuple(complex(t) for t in loop)
    res = integrate(field, p0, IntegrationSpec(path=loop, rtol=rtol, atol=atol))
    end = res.endpoint
    return float(np.hypot(abs(end[0] - p0[0]), abs(end[1] - p0[1])))
