# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled per-pixel kernels.

Signature-identical to ``numpy_backend``; selected by ``vplume.kernels``
when the extension is built.  Reductions use compensated (Kahan)
summation so results stay traversal-order-insensitive at double
precision.
"""

import numpy as np

cimport numpy as cnp
from libc.math cimport acos, cos, exp, fabs, floor, log1p, log10, pow, sqrt

cnp.import_array()

NAME = "native"

cdef double DEG = 180.0 / 3.14159265358979323846
cdef double RAD = 3.14159265358979323846 / 180.0
cdef double THIRD = 3.14159265358979323846 / 3.0  # 60 degrees in radians


cdef inline Py_ssize_t clampi(Py_ssize_t v, Py_ssize_t hi) nogil:
    if v < 0:
        return 0
    if v > hi:
        return hi
    return v


def box_filter(double[:, ::1] img, Py_ssize_t kernel):
    """Mean filter with edge replication: sliding running sums per axis."""
    cdef Py_ssize_t h = img.shape[0]
    cdef Py_ssize_t w = img.shape[1]
    cdef Py_ssize_t r = kernel // 2
    cdef Py_ssize_t y, x, d
    cdef double s, gmin, gmax, v
    out_arr = np.empty((h, w), dtype=np.float64)
    cdef double[:, ::1] out = out_arr

    if kernel == 1:
        out_arr[...] = np.asarray(img)
        return out_arr

    rows_arr = np.empty((h, w), dtype=np.float64)
    cdef double[:, ::1] rows = rows_arr

    gmin = img[0, 0]
    gmax = img[0, 0]
    for y in range(h):
        for x in range(w):
            v = img[y, x]
            if v < gmin:
                gmin = v
            if v > gmax:
                gmax = v

    # horizontal pass: window sums with clamped (replicated) columns
    for y in range(h):
        s = 0.0
        for d in range(-r, r + 1):
            s += img[y, clampi(d, w - 1)]
        rows[y, 0] = s
        for x in range(1, w):
            s += img[y, clampi(x + r, w - 1)] - img[y, clampi(x - 1 - r, w - 1)]
            rows[y, x] = s

    # vertical pass over the row sums, then normalize and clamp
    cdef double norm = 1.0 / (<double> kernel * <double> kernel)
    for x in range(w):
        s = 0.0
        for d in range(-r, r + 1):
            s += rows[clampi(d, h - 1), x]
        v = s * norm
        out[0, x] = gmin if v < gmin else (gmax if v > gmax else v)
        for y in range(1, h):
            s += rows[clampi(y + r, h - 1), x] - rows[clampi(y - 1 - r, h - 1), x]
            v = s * norm
            out[y, x] = gmin if v < gmin else (gmax if v > gmax else v)
    return out_arr


def rgb_to_hsi(double[:, :, ::1] rgb):
    cdef Py_ssize_t h = rgb.shape[0]
    cdef Py_ssize_t w = rgb.shape[1]
    cdef Py_ssize_t y, x
    cdef double r, g, b, total, mn, i, s, num, den, cosang, hue
    out_arr = np.empty((h, w, 3), dtype=np.float64)
    cdef double[:, :, ::1] out = out_arr

    for y in range(h):
        for x in range(w):
            r = rgb[y, x, 0]
            g = rgb[y, x, 1]
            b = rgb[y, x, 2]
            total = r + g + b
            i = total / 3.0
            mn = r
            if g < mn:
                mn = g
            if b < mn:
                mn = b
            if total > 0.0:
                s = 1.0 - 3.0 * mn / total
                if s < 0.0:
                    s = 0.0
                elif s > 1.0:
                    s = 1.0
            else:
                s = 0.0
            den = sqrt((r - g) * (r - g) + (r - b) * (g - b))
            if den > 0.0 and s > 0.0:
                num = 0.5 * ((r - g) + (r - b))
                cosang = num / den
                if cosang > 1.0:
                    cosang = 1.0
                elif cosang < -1.0:
                    cosang = -1.0
                hue = acos(cosang) * DEG
                if b > g:
                    hue = 360.0 - hue
                if hue >= 360.0:
                    hue = 0.0
            else:
                hue = 0.0
            out[y, x, 0] = hue
            out[y, x, 1] = s
            out[y, x, 2] = i
    return out_arr


def hsi_to_rgb(double[:, :, ::1] hsi):
    cdef Py_ssize_t h = hsi.shape[0]
    cdef Py_ssize_t w = hsi.shape[1]
    cdef Py_ssize_t y, x
    cdef double hue, s, i, hr, lead, mid, last, r, g, b
    out_arr = np.empty((h, w, 3), dtype=np.float64)
    cdef double[:, :, ::1] out = out_arr

    for y in range(h):
        for x in range(w):
            hue = hsi[y, x, 0]
            s = hsi[y, x, 1]
            i = hsi[y, x, 2]
            if hue < 0.0 or hue >= 360.0:
                hue = hue - 360.0 * floor(hue / 360.0)
            if hue < 120.0:
                hr = hue * RAD
                lead = i * (1.0 - s)
                mid = i * (1.0 + s * cos(hr) / cos(THIRD - hr))
                b = lead
                r = mid
                g = 3.0 * i - lead - mid
            elif hue < 240.0:
                hr = (hue - 120.0) * RAD
                lead = i * (1.0 - s)
                mid = i * (1.0 + s * cos(hr) / cos(THIRD - hr))
                r = lead
                g = mid
                b = 3.0 * i - lead - mid
            else:
                hr = (hue - 240.0) * RAD
                lead = i * (1.0 - s)
                mid = i * (1.0 + s * cos(hr) / cos(THIRD - hr))
                g = lead
                b = mid
                r = 3.0 * i - lead - mid
            out[y, x, 0] = 0.0 if r < 0.0 else (1.0 if r > 1.0 else r)
            out[y, x, 1] = 0.0 if g < 0.0 else (1.0 if g > 1.0 else g)
            out[y, x, 2] = 0.0 if b < 0.0 else (1.0 if b > 1.0 else b)
    return out_arr


def nonzero_sum_count(double[:, ::1] img):
    cdef Py_ssize_t h = img.shape[0]
    cdef Py_ssize_t w = img.shape[1]
    cdef Py_ssize_t y, x
    cdef Py_ssize_t count = 0
    cdef double total = 0.0, comp = 0.0, t, yy, v
    for y in range(h):
        for x in range(w):
            v = img[y, x]
            if v > 0.0:
                count += 1
                yy = v - comp
                t = total + yy
                comp = (t - total) - yy
                total = t
    return total, count


def bright_dark_stats(double[:, ::1] img, double tau):
    cdef Py_ssize_t h = img.shape[0]
    cdef Py_ssize_t w = img.shape[1]
    cdef Py_ssize_t y, x
    cdef Py_ssize_t n1 = 0, n2 = 0, nzero = 0
    cdef double phi1 = 0.0, c1 = 0.0, phi2 = 0.0, c2 = 0.0, t, yy, v
    for y in range(h):
        for x in range(w):
            v = img[y, x]
            if v > tau:
                n1 += 1
                yy = v - c1
                t = phi1 + yy
                c1 = (t - phi1) - yy
                phi1 = t
            elif v > 0.0:
                n2 += 1
                yy = v - c2
                t = phi2 + yy
                c2 = (t - phi2) - yy
                phi2 = t
            else:
                nzero += 1
    return phi1, phi2, n1, n2, nzero


def weighted_intensity(double[:, ::1] ib, double peak):
    cdef Py_ssize_t h = ib.shape[0]
    cdef Py_ssize_t w = ib.shape[1]
    cdef Py_ssize_t y, x
    cdef double wt
    out_arr = np.empty((h, w), dtype=np.float64)
    cdef double[:, ::1] out = out_arr
    for y in range(h):
        for x in range(w):
            wt = 1.0 + log1p(exp(peak - ib[y, x]))
            wt = wt * wt
            out[y, x] = wt * wt * ib[y, x]
    return out_arr


def illumination_map(double[:, ::1] a, double amax, double beta_sq, double theta):
    cdef Py_ssize_t h = a.shape[0]
    cdef Py_ssize_t w = a.shape[1]
    cdef Py_ssize_t y, x
    cdef double term
    out_arr = np.empty((h, w), dtype=np.float64)
    cdef double[:, ::1] out = out_arr
    for y in range(h):
        for x in range(w):
            term = fabs(log10(10.0 - 9.0 * ((amax - a[y, x]) / amax)))
            out[y, x] = 2.0 - pow(term, beta_sq) + theta
    return out_arr


def power_map(double[:, ::1] img, double exponent):
    cdef Py_ssize_t h = img.shape[0]
    cdef Py_ssize_t w = img.shape[1]
    cdef Py_ssize_t y, x
    out_arr = np.empty((h, w), dtype=np.float64)
    cdef double[:, ::1] out = out_arr
    for y in range(h):
        for x in range(w):
            out[y, x] = pow(img[y, x], exponent)
    return out_arr
