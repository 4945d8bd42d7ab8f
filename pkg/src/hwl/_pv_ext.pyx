# cython: boundscheck=False, wraparound=False, cdivision=True, language_level=3
"""Compiled inner loop of the principal-value quadrature engine.

Computes S_i = sum_{j>=1} (f[i-j] - f[i+j]) / j with out-of-range samples
treated as zero, written as the correlation S_i = sum_p f[p] * K[p - i]
against the precomputed odd reciprocal kernel K (K[m] = -1/m, K[0] = 0) so
the hot loop is a contiguous dot product.

Evaluation points are independent and may run on several OpenMP threads;
each point's sum uses a fixed four-accumulator order that does not depend
on the thread count, so outputs are bit-identical for any parallelism.
"""

from cython.parallel import prange


def pv_sum(const double[::1] f, const double[::1] kernel, double[::1] out,
           Py_ssize_t lo, Py_ssize_t hi, int n_threads=1):
    """Fill ``out`` with the antisymmetric harmonic sums of ``f``.

    ``kernel`` must have length 2*len(f) - 1 with entry u holding the weight
    for sample-minus-output offset m = u - (len(f) - 1).  ``lo`` and ``hi``
    bound the nonzero samples of ``f`` (inclusive); terms outside are zero
    and skipped.
    """
    cdef Py_ssize_t n = f.shape[0]
    cdef Py_ssize_t i, p, base, stop
    cdef double s0, s1, s2, s3
    if out.shape[0] != n:
        raise ValueError("output buffer has wrong length")
    if kernel.shape[0] != 2 * n - 1:
        raise ValueError("kernel must have length 2*n - 1")
    if n_threads < 1:
        n_threads = 1
    for i in prange(n, nogil=True, num_threads=n_threads, schedule="static"):
        base = n - 1 - i
        s0 = 0.0
        s1 = 0.0
        s2 = 0.0
        s3 = 0.0
        stop = hi - 3
        p = lo
        while p <= stop:
            s0 = s0 + f[p] * kernel[base + p]
            s1 = s1 + f[p + 1] * kernel[base + p + 1]
            s2 = s2 + f[p + 2] * kernel[base + p + 2]
            s3 = s3 + f[p + 3] * kernel[base + p + 3]
            p = p + 4
        while p <= hi:
            s0 = s0 + f[p] * kernel[base + p]
            p = p + 1
        out[i] = (s0 + s1) + (s2 + s3)
