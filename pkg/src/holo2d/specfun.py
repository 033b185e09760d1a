"""Hankel functions of the first kind for the radiation-field machinery.

Self-contained evaluation of H0 and H1 on the positive real axis and in the
closed lower half-plane, integer-order values by recurrence, the exact
large-argument expansion coefficients, and the zeros of H0 below the real
axis.

Evaluation regimes
------------------
* ascending power series (with the logarithmic Neumann part) for small
  arguments, in float64 up to |z| = 7 and in 40-digit arithmetic for
  complex arguments out to |z| = 18, where float64 cancellation would eat
  more digits than the accuracy contract allows;
* backward (Miller) recurrence for J0, J1 plus a complex continued
  fraction for (J0' + iY0')/(J0 + iY0), closed with the Wronskian, on the
  real axis between 7 and 30;
* the large-argument expansion beyond that, where its optimal truncation
  error is below machine precision.

All functions accept scalars or numpy arrays and are pure; results for
scalar input are returned as Python complex.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache

import mpmath as mp
import numpy as np

from .errors import DomainError, RangeError, RefinementError

__all__ = [
    "hankel0",
    "hankel1",
    "hankel_m",
    "asym_coeff",
    "multipole_asym_coeff",
    "hankel_asymptotic",
    "h0_zeros",
]

EULER_GAMMA = 0.57721566490153286060651209008240243104215933594

_SERIES_RADIUS = 7.0          # float64 ascending series below this
_ASYM_RADIUS_REAL = 30.0      # expansion on the real axis above this
_ASYM_RADIUS_COMPLEX = 18.0   # expansion off the axis above this
_MP_DPS = 40

_MAX_ORDER = 64
_MAX_ZEROS = 20


# ----------------------------------------------------------------------
# exact expansion coefficients
# ----------------------------------------------------------------------

@lru_cache(maxsize=None)
def _coeff_exact(order: int, j: int) -> tuple[Fraction, int]:
    """Exact large-argument coefficient as (rational, quarter-turn).

    The value is ``rational * (-i)**quarter_turn`` with quarter_turn = j mod 4.
    Built from the two Pochhammer products (1/2 - order)_j (order + 1/2)_j
    over j! 2^j, all in rational arithmetic.
    """
    num = Fraction(1)
    for i in range(j):
        num *= Fraction(1, 2) - order + i
        num *= order + Fraction(1, 2) + i
    den = Fraction(1)
    for i in range(1, j + 1):
        den *= i
    return num / den / 2**j, j % 4


def _coeff_complex(order: int, j: int) -> complex:
    q, turn = _coeff_exact(order, j)
    v = float(q)
    return (v, -1j * v, -v, 1j * v)[turn]


def asym_coeff(nu: int, j: int) -> complex:
    """Coefficient of r**-j in the large-argument expansion of H_nu, nu in {0, 1}.

    Evaluated once in exact rational arithmetic and cached; asym_coeff(nu, 0)
    is 1 for both orders.
    """
    if nu not in (0, 1):
        raise DomainError(f"asym_coeff is defined for orders 0 and 1, got {nu}")
    if j < 0 or j > 32:
        raise DomainError(f"coefficient index must be in [0, 32], got {j}")
    return _coeff_complex(nu, j)


def multipole_asym_coeff(m: int, j: int) -> complex:
    """Large-argument expansion coefficient for integer order m >= 0.

    Same rational closed form as asym_coeff extended along the integer-order
    ladder; used to build exact far-field coefficients of multipole fields.
    """
    if m < 0 or m > _MAX_ORDER:
        raise DomainError(f"order must be in [0, {_MAX_ORDER}], got {m}")
    if j < 0 or j > 32:
        raise DomainError(f"coefficient index must be in [0, 32], got {j}")
    return _coeff_complex(m, j)


# ----------------------------------------------------------------------
# evaluation regimes
# ----------------------------------------------------------------------

def _h01_series(z: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Ascending series for H0, H1; complex array input, |z| <= ~8."""
    z = np.asarray(z, dtype=complex)
    q = z * z / 4.0

    term = np.ones_like(z)
    j0 = term.copy()
    for k in range(1, 60):
        term = term * (-q) / (k * k)
        j0 += term
        if np.all(np.abs(term) <= 1e-20 * np.abs(j0)):
            break

    term = z / 2.0
    j1 = term.copy()
    for k in range(1, 60):
        term = term * (-q) / (k * (k + 1))
        j1 += term
        if np.all(np.abs(term) <= 1e-20 * np.abs(j1)):
            break

    log_half_z = np.log(z / 2.0)
    lead = log_half_z + EULER_GAMMA

    # Y0 = (2/pi) [ (log(z/2)+gamma) J0 + sum_{k>=1} (-1)^{k+1} h_k (z^2/4)^k / (k!)^2 ]
    term = np.ones_like(z)
    harmonic = 0.0
    acc0 = np.zeros_like(z)
    for k in range(1, 60):
        term = term * (-q) / (k * k)
        harmonic += 1.0 / k
        acc0 -= term * harmonic
        if np.all(np.abs(term) <= 1e-20):
            break
    y0 = (2.0 / np.pi) * (lead * j0 + acc0)

    # Y1 = (2/pi) [ (log(z/2)+gamma) J1 - 1/z
    #              - (z/4) sum_{k>=0} (-1)^k (h_k + h_{k+1}) (z^2/4)^k / (k! (k+1)!) ]
    term = np.ones_like(z)
    h_k = 0.0
    h_k1 = 1.0
    acc1 = (h_k + h_k1) * term
    for k in range(1, 60):
        term = term * (-q) / (k * (k + 1))
        h_k += 1.0 / k
        h_k1 += 1.0 / (k + 1)
        acc1 += (h_k + h_k1) * term
        if np.all(np.abs(term) <= 1e-20):
            break
    y1 = (2.0 / np.pi) * (lead * j1 - 1.0 / z - (z / 4.0) * acc1)

    return j0 + 1j * y0, j1 + 1j * y1


def _h01_series_mp(z: complex) -> tuple[complex, complex]:
    """The same ascending series in 40-digit arithmetic (scalar).

    Covers the complex annulus 7 < |z| < 18 where float64 cancellation in
    the series exceeds the accuracy contract; only zero-finding visits it.
    """
    with mp.workdps(_MP_DPS):
        zz = mp.mpc(z)
        if z.imag == 0 and z.real < 0:
            log_half = mp.log(-zz / 2) - 1j * mp.pi   # continuation from below
        else:
            log_half = mp.log(zz / 2)
        q = zz * zz / 4

        term = mp.mpc(1)
        j0 = term
        for k in range(1, 200):
            term = term * (-q) / (k * k)
            j0 += term
            if abs(term) < mp.mpf(10) ** (-_MP_DPS - 5):
                break

        term = zz / 2
        j1 = term
        for k in range(1, 200):
            term = term * (-q) / (k * (k + 1))
            j1 += term
            if abs(term) < mp.mpf(10) ** (-_MP_DPS - 5):
                break

        lead = log_half + mp.euler

        term = mp.mpc(1)
        harmonic = mp.mpf(0)
        acc0 = mp.mpc(0)
        for k in range(1, 200):
            term = term * (-q) / (k * k)
            harmonic += mp.mpf(1) / k
            acc0 -= term * harmonic
            if abs(term) < mp.mpf(10) ** (-_MP_DPS - 5):
                break
        y0 = 2 / mp.pi * (lead * j0 + acc0)

        term = mp.mpc(1)
        h_k = mp.mpf(0)
        h_k1 = mp.mpf(1)
        acc1 = (h_k + h_k1) * term
        for k in range(1, 200):
            term = term * (-q) / (k * (k + 1))
            h_k += mp.mpf(1) / k
            h_k1 += mp.mpf(1) / (k + 1)
            acc1 += (h_k + h_k1) * term
            if abs(term) < mp.mpf(10) ** (-_MP_DPS - 5):
                break
        y1 = 2 / mp.pi * (lead * j1 - 1 / zz - zz / 4 * acc1)

        h0 = j0 + 1j * y0
        h1 = j1 + 1j * y1
        return complex(h0), complex(h1)


def _h01_asym(z: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Large-argument expansion, terms summed to machine floor."""
    z = np.asarray(z, dtype=complex)
    out = []
    for mu in (0.0, 4.0):
        term = np.ones_like(z)
        acc = term.copy()
        for j in range(1, 80):
            term = term * ((2 * j - 1) ** 2 - mu) / (8j * j * z)
            acc = acc + term
            if np.all(np.abs(term) <= 1e-18 * np.abs(acc)):
                break
        out.append(acc)
    pref = np.sqrt(2.0 / (np.pi * z)) * np.exp(1j * (z - np.pi / 4))
    return pref * out[0], pref * out[1] * np.exp(-0.5j * np.pi)


def _j01_miller(x: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """J0, J1 by backward recurrence with the even-order normalization."""
    x = np.asarray(x, dtype=float)
    start = int(np.max(x) + 15.0 * np.sqrt(np.max(x)) + 22)
    if start % 2:
        start += 1
    jp = np.zeros_like(x)
    jc = np.full_like(x, 1e-30)
    total = np.zeros_like(x)
    j0 = np.zeros_like(x)
    j1 = np.zeros_like(x)
    for m in range(start, 0, -1):
        jm = (2.0 * m / x) * jc - jp
        jp, jc = jc, jm
        big = np.abs(jc) > 1e10
        if np.any(big):
            scale = np.where(big, 1e-10, 1.0)
            jp = jp * scale
            jc = jc * scale
            total = total * scale
            j0 = j0 * scale
            j1 = j1 * scale
        n = m - 1
        if n == 1:
            j1 = jc.copy()
        if n == 0:
            j0 = jc.copy()
        elif n % 2 == 0:
            total += 2.0 * jc
    norm = total + j0
    return j0 / norm, j1 / norm


def _cf2(x: np.ndarray, max_iter: int = 100) -> np.ndarray:
    """p + iq = (J0' + iY0')/(J0 + iY0) by a modified Lentz continued fraction.

    Converges for x >= 2; used on the 7..30 band where neither the series
    nor the expansion reaches full precision in float64.
    """
    x = np.asarray(x, dtype=float)
    tiny = 1e-290
    f = np.full(x.shape, tiny, dtype=complex)
    c = f.copy()
    d = np.zeros(x.shape, dtype=complex)
    for k in range(1, max_iter + 1):
        a_k = (k - 0.5) ** 2
        b_k = 2.0 * (x + 1j * k)
        d = 1.0 / (b_k + a_k * d)
        c = b_k + a_k / c
        delta = c * d
        f = f * delta
        if np.all(np.abs(delta - 1.0) < 1e-16):
            break
    return -1.0 / (2.0 * x) + 1j + (1j / x) * f


def _h01_mid_real(x: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    j0, j1 = _j01_miller(x)
    pq = _cf2(x)
    p, q = pq.real, pq.imag
    # J0' = -J1 = p J0 - q Y0 and Y0' = -Y1 = q J0 + p Y0
    y0 = (p * j0 + j1) / q
    y1 = -(q * j0 + p * y0)
    return j0 + 1j * y0, j1 + 1j * y1


def _h01(z) -> tuple[np.ndarray, np.ndarray, bool]:
    arr = np.asarray(z)
    scalar = arr.ndim == 0
    zz = np.atleast_1d(arr).astype(complex).copy()
    if np.any(zz == 0):
        raise DomainError("Hankel functions are singular at z = 0")
    if np.any(zz.imag > 0):
        raise DomainError("arguments must lie in the closed lower half-plane")
    # negative real axis: continue from below (arg -> -pi)
    on_cut = (zz.imag == 0) & (zz.real < 0)
    if np.any(on_cut):
        zz.imag[on_cut] = -0.0

    h0 = np.empty(zz.shape, dtype=complex)
    h1 = np.empty(zz.shape, dtype=complex)
    mod = np.abs(zz)
    real_pos = (zz.imag == 0) & (zz.real > 0) & ~np.signbit(zz.imag)

    small = mod <= _SERIES_RADIUS
    if np.any(small):
        h0[small], h1[small] = _h01_series(zz[small])

    mid_real = real_pos & (mod > _SERIES_RADIUS) & (mod < _ASYM_RADIUS_REAL)
    if np.any(mid_real):
        h0[mid_real], h1[mid_real] = _h01_mid_real(zz[mid_real].real)

    far_real = real_pos & (mod >= _ASYM_RADIUS_REAL)
    if np.any(far_real):
        h0[far_real], h1[far_real] = _h01_asym(zz[far_real])

    off_axis = ~real_pos & ~small
    far_c = off_axis & (mod >= _ASYM_RADIUS_COMPLEX)
    if np.any(far_c):
        h0[far_c], h1[far_c] = _h01_asym(zz[far_c])

    annulus = off_axis & (mod < _ASYM_RADIUS_COMPLEX)
    if np.any(annulus):
        vals = [_h01_series_mp(w) for w in zz[annulus]]
        h0[annulus] = [v[0] for v in vals]
        h1[annulus] = [v[1] for v in vals]

    if not (np.all(np.isfinite(h0)) and np.all(np.isfinite(h1))):
        raise RangeError("Hankel evaluation overflowed (argument too deep in the lower half-plane)")
    return h0, h1, scalar


def hankel0(z):
    """H0 of the first kind; z real positive or in the closed lower half-plane."""
    h0, _, scalar = _h01(z)
    return complex(h0[0]) if scalar else h0


def hankel1(z):
    """H1 of the first kind; same domain as hankel0.  Satisfies H0' = -H1."""
    _, h1, scalar = _h01(z)
    return complex(h1[0]) if scalar else h1


def hankel_m(m: int, r):
    """Integer-order H_m(r) for r > 0 by the three-term recurrence.

    Upward recurrence is stable for the Hankel family (the Neumann part is
    the dominant solution).  Raises RangeError if the recurrence overflows,
    which happens for r far below the order.
    """
    if not isinstance(m, (int, np.integer)) or m < 0:
        raise DomainError(f"order must be a non-negative integer, got {m!r}")
    if m > _MAX_ORDER:
        raise DomainError(f"order must not exceed {_MAX_ORDER}, got {m}")
    arr = np.asarray(r)
    scalar = arr.ndim == 0
    rr = np.atleast_1d(arr).astype(float)
    if np.any(rr <= 0):
        raise DomainError("hankel_m requires r > 0")
    h_prev, h_cur, _ = _h01(rr)
    if m == 0:
        out = h_prev
    elif m == 1:
        out = h_cur
    else:
        for n in range(1, m):
            h_prev, h_cur = h_cur, (2.0 * n / rr) * h_cur - h_prev
        out = h_cur
    if not np.all(np.isfinite(out)):
        raise RangeError(f"H_{m} recurrence overflowed for some r (r too small for the order)")
    return complex(out[0]) if scalar else out


def hankel_asymptotic(nu: int, z, terms: int):
    """Large-argument expansion of H_nu truncated after the r**-terms term.

    The exact evaluators agree with this truncation to roughly
    2 |C_{nu,terms+1}| / r**(terms+1) relative error at large r; exposed for
    consistency checks and demonstrations.
    """
    if nu not in (0, 1):
        raise DomainError("truncated expansion implemented for orders 0 and 1")
    arr = np.asarray(z)
    scalar = arr.ndim == 0
    zz = np.atleast_1d(arr).astype(complex)
    acc = np.zeros(zz.shape, dtype=complex)
    for j in range(terms + 1):
        acc += _coeff_complex(nu, j) / zz**j
    pref = np.sqrt(2.0 / (np.pi * zz)) * np.exp(1j * (zz - nu * np.pi / 2 - np.pi / 4))
    out = pref * acc
    return complex(out[0]) if scalar else out


# ----------------------------------------------------------------------
# zeros of H0 in the lower half-plane
# ----------------------------------------------------------------------

def _phase_increments(values: np.ndarray) -> np.ndarray:
    ph = np.angle(values)
    inc = np.diff(ph)
    return (inc + np.pi) % (2.0 * np.pi) - np.pi


def _winding_count(re_lo, re_hi, im_lo, im_hi, step=0.1, max_refine=4) -> int:
    """Zeros of H0 inside a rectangle, by the winding of arg H0 around it."""
    for attempt in range(max_refine + 1):
        pts = []
        n_b = max(8, int(np.ceil((re_hi - re_lo) / step)))
        n_s = max(8, int(np.ceil((im_hi - im_lo) / step)))
        pts.append(re_lo + np.linspace(0, re_hi - re_lo, n_b) + 1j * im_lo)
        pts.append(re_hi + 1j * (im_lo + np.linspace(0, im_hi - im_lo, n_s)))
        pts.append(re_hi - np.linspace(0, re_hi - re_lo, n_b) + 1j * im_hi)
        pts.append(re_lo + 1j * (im_hi - np.linspace(0, im_hi - im_lo, n_s)))
        boundary = np.concatenate(pts + [np.array([re_lo + 1j * im_lo])])
        vals = hankel0(boundary)
        inc = _phase_increments(vals)
        if np.max(np.abs(inc)) < 2.4:
            total = np.sum(inc) / (2.0 * np.pi)
            count = int(np.round(total))
            if abs(total - count) < 0.05:
                return count
        step *= 0.5
    raise RefinementError("winding count failed to stabilize on a scan box")


def _newton_zero(seed: complex) -> complex:
    z = complex(seed)
    for _ in range(60):
        h0 = hankel0(z)
        h1 = hankel1(z)
        delta = h0 / h1          # Newton step: z - H0/H0' with H0' = -H1
        z = z + delta
        if abs(delta) < 1e-13 * (1.0 + abs(z)):
            return z
    raise RefinementError(f"Newton refinement did not converge from seed {seed}")


def h0_zeros(count: int) -> list[complex]:
    """First `count` zeros of H0 in the open lower half-plane, by increasing |z|.

    Localizes each zero with an argument-principle scan of boxes walking
    along the band where the zeros accumulate (just below the negative real
    axis), then refines with Newton using H0' = -H1.  Each returned z
    satisfies |H0(z)| < 1e-10 and Im z < 0.
    """
    if not isinstance(count, (int, np.integer)) or count < 1:
        raise DomainError(f"count must be a positive integer, got {count!r}")
    if count > _MAX_ZEROS:
        raise DomainError(f"count must not exceed {_MAX_ZEROS}, got {count}")

    zeros: list[complex] = []
    im_lo, im_hi = -1.7, -0.015
    re_hi = -0.9
    width = np.pi
    while len(zeros) < count:
        re_lo = re_hi - width
        if re_lo < -90.0:
            raise RefinementError("zero scan walked out of its search band")
        n_inside = _winding_count(re_lo, re_hi, im_lo, im_hi)
        if n_inside > 0:
            # localize within the box on a coarse minimum-modulus grid
            gx = np.linspace(re_lo, re_hi, 13)
            gy = np.linspace(im_lo, im_hi, 9)
            gz = (gx[None, :] + 1j * gy[:, None]).ravel()
            mags = np.abs(hankel0(gz))
            order = np.argsort(mags)
            found_here = 0
            for idx in order:
                if found_here == n_inside:
                    break
                z = _newton_zero(gz[idx])
                if not (re_lo - 0.3 < z.real < re_hi + 0.3 and z.imag < 0):
                    continue
                if any(abs(z - w) < 1e-6 for w in zeros):
                    continue
                if abs(hankel0(z)) >= 1e-10:
                    raise RefinementError(f"refined zero near {z} fails the residual check")
                zeros.append(z)
                found_here += 1
            if found_here != n_inside:
                raise RefinementError(
                    f"located {found_here} of {n_inside} zeros in box "
                    f"[{re_lo:.2f}, {re_hi:.2f}] x [{im_lo:.2f}, {im_hi:.2f}]"
                )
        re_hi = re_lo
    zeros.sort(key=abs)
    return zeros[:count]
