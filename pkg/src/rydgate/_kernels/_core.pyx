# cython: boundscheck=False, wraparound=False, cdivision=True
"""LAPACK-backed propagation kernels.

Same interface as ``pure.py``: spectral-decomposition matrix exponentials of
small dense Hermitian matrices, sequence propagation and weighted population
integrals. Eigendecomposition goes straight to LAPACK's ``zheev`` so the
per-call Python/NumPy dispatch overhead disappears; everything downstream is
plain C loops (the matrices are at most 9x9, so BLAS would gain nothing).

Layout note: buffers are C-ordered, LAPACK is column-major, so ``zheev``
effectively diagonalizes conj(H). Its eigenvalues equal those of H and its
j-th eigenvector row is the elementwise conjugate of H's j-th eigenvector;
the reconstruction loops below account for that.
"""

import numpy as np

cimport numpy as cnp
from libc.math cimport cos, sin
from libc.stdlib cimport free, malloc
from scipy.linalg.cython_lapack cimport zheev

cnp.import_array()

name = "compiled"


cdef struct EighWork:
    double complex *a      # n*n matrix buffer (overwritten with eigenvectors)
    double *w              # n eigenvalues
    double complex *work
    double *rwork
    int *iwork
    double complex *scratch  # n*n temporary for products
    double complex *phases   # n phase factors
    int lwork
    int lrwork
    int liwork
    int n


cdef int _alloc_work(EighWork *ws, int n) except -1:
    ws.n = n
    ws.lwork = 2 * n + n * n
    ws.lrwork = 1 + 5 * n + 2 * n * n
    ws.liwork = 3 + 5 * n  # sized for either zheev or zheevd
    ws.a = <double complex *> malloc(n * n * sizeof(double complex))
    ws.w = <double *> malloc(n * sizeof(double))
    ws.work = <double complex *> malloc(ws.lwork * sizeof(double complex))
    ws.rwork = <double *> malloc(ws.lrwork * sizeof(double))
    ws.iwork = <int *> malloc(ws.liwork * sizeof(int))
    ws.scratch = <double complex *> malloc(n * n * sizeof(double complex))
    ws.phases = <double complex *> malloc(n * sizeof(double complex))
    if (ws.a == NULL or ws.w == NULL or ws.work == NULL or ws.rwork == NULL
            or ws.iwork == NULL or ws.scratch == NULL or ws.phases == NULL):
        _free_work(ws)
        raise MemoryError()
    return 0


cdef void _free_work(EighWork *ws) noexcept:
    free(ws.a)
    free(ws.w)
    free(ws.work)
    free(ws.rwork)
    free(ws.iwork)
    free(ws.scratch)
    free(ws.phases)


cdef int _eigh_inplace(EighWork *ws) noexcept nogil:
    cdef char jobz = b'V'
    cdef char uplo = b'L'
    cdef int info = 0
    zheev(&jobz, &uplo, &ws.n, ws.a, &ws.n, ws.w, ws.work, &ws.lwork,
          ws.rwork, &info)
    return info


cdef void _phases_from_eigvals(EighWork *ws, double t) noexcept nogil:
    cdef int j
    for j in range(ws.n):
        ws.phases[j] = cos(ws.w[j] * t) - 1j * sin(ws.w[j] * t)


cdef void _reconstruct_expm(EighWork *ws, double complex *out) noexcept nogil:
    # out[p,q] = sum_j phases[j] * conj(a[j,p]) * a[j,q]
    # (rows of `a` hold the conjugated eigenvectors, see module docstring)
    cdef int n = ws.n
    cdef int j, p, q
    cdef double complex tmp
    for p in range(n * n):
        out[p] = 0
    for j in range(n):
        for p in range(n):
            tmp = ws.phases[j] * (ws.a[j * n + p]).conjugate()
            for q in range(n):
                out[p * n + q] = out[p * n + q] + tmp * ws.a[j * n + q]


cdef void _matmul(double complex *a, double complex *b, double complex *out, int n) noexcept nogil:
    # out = a @ b, all C-ordered n x n
    cdef int i, j, k
    cdef double complex acc
    for i in range(n):
        for j in range(n):
            acc = 0
            for k in range(n):
                acc = acc + a[i * n + k] * b[k * n + j]
            out[i * n + j] = acc


def expm_hermitian(cnp.ndarray[cnp.complex128_t, ndim=2, mode="c"] h, double t):
    """exp(-i*h*t) of a Hermitian matrix via spectral decomposition."""
    cdef int n = h.shape[0]
    if h.shape[1] != n:
        raise ValueError("matrix must be square")
    cdef cnp.ndarray[cnp.complex128_t, ndim=2, mode="c"] out = np.empty((n, n), dtype=np.complex128)
    cdef EighWork ws
    _alloc_work(&ws, n)
    cdef int info
    cdef int i
    try:
        for i in range(n * n):
            ws.a[i] = (<double complex *> h.data)[i]
        with nogil:
            info = _eigh_inplace(&ws)
        if info != 0:
            raise np.linalg.LinAlgError(f"zheev failed with info={info}")
        with nogil:
            _phases_from_eigvals(&ws, t)
            _reconstruct_expm(&ws, <double complex *> out.data)
    finally:
        _free_work(&ws)
    return out


def sequence_product(cnp.ndarray[cnp.complex128_t, ndim=3, mode="c"] hams,
                     cnp.ndarray[cnp.float64_t, ndim=1, mode="c"] durations):
    """Time-ordered propagator of piecewise-constant Hamiltonians.

    U = exp(-i*h_k*t_k) ... exp(-i*h_1*t_1), first segment first.
    """
    cdef int k = hams.shape[0]
    cdef int n = hams.shape[1]
    if hams.shape[2] != n:
        raise ValueError("matrices must be square")
    if durations.shape[0] != k:
        raise ValueError("durations length must match number of segments")
    cdef cnp.ndarray[cnp.complex128_t, ndim=2, mode="c"] out = np.zeros((n, n), dtype=np.complex128)
    cdef double complex *u = <double complex *> out.data
    cdef double complex *step = <double complex *> malloc(n * n * sizeof(double complex))
    cdef double complex *acc = <double complex *> malloc(n * n * sizeof(double complex))
    if step == NULL or acc == NULL:
        free(step)
        free(acc)
        raise MemoryError()
    cdef EighWork ws
    cdef int info = 0
    cdef int s, i
    try:
        _alloc_work(&ws, n)
    except:  # noqa: E722 - re-raise after freeing the local buffers
        free(step)
        free(acc)
        raise
    try:
        with nogil:
            for i in range(n * n):
                u[i] = 0
            for i in range(n):
                u[i * n + i] = 1
            for s in range(k):
                for i in range(n * n):
                    ws.a[i] = (<double complex *> hams.data)[s * n * n + i]
                info = _eigh_inplace(&ws)
                if info != 0:
                    break
                _phases_from_eigvals(&ws, durations[s])
                _reconstruct_expm(&ws, step)
                _matmul(step, u, acc, n)
                for i in range(n * n):
                    u[i] = acc[i]
        if info != 0:
            raise np.linalg.LinAlgError(f"zheev failed with info={info}")
    finally:
        _free_work(&ws)
        free(step)
        free(acc)
    return out


def weighted_population_integral(cnp.ndarray[cnp.complex128_t, ndim=3, mode="c"] hams,
                                 cnp.ndarray[cnp.float64_t, ndim=1, mode="c"] durations,
                                 cnp.ndarray[cnp.complex128_t, ndim=1, mode="c"] psi0,
                                 cnp.ndarray[cnp.float64_t, ndim=1, mode="c"] weights,
                                 int samples_per_segment):
    """Trapezoidal time integral of a weighted population along a sequence.

    Returns ``(integral, final_state)``; see the pure backend for the exact
    quadrature contract.
    """
    cdef int k = hams.shape[0]
    cdef int n = hams.shape[1]
    if hams.shape[2] != n or psi0.shape[0] != n or weights.shape[0] != n:
        raise ValueError("inconsistent dimensions")
    if durations.shape[0] != k:
        raise ValueError("durations length must match number of segments")
    if samples_per_segment < 1:
        raise ValueError("samples_per_segment must be >= 1")
    cdef cnp.ndarray[cnp.complex128_t, ndim=1, mode="c"] psi = psi0.copy()
    cdef double complex *p = <double complex *> psi.data
    cdef double complex *c = <double complex *> malloc(n * sizeof(double complex))
    cdef double complex *amp = <double complex *> malloc(n * sizeof(double complex))
    if c == NULL or amp == NULL:
        free(c)
        free(amp)
        raise MemoryError()
    cdef EighWork ws
    cdef int info = 0
    cdef double total = 0.0, seg = 0.0, pop = 0.0, t = 0.0, dt = 0.0
    cdef int s, i, j, m
    cdef double complex acc, ph
    try:
        _alloc_work(&ws, n)
    except:  # noqa: E722
        free(c)
        free(amp)
        raise
    try:
        with nogil:
            for s in range(k):
                for i in range(n * n):
                    ws.a[i] = (<double complex *> hams.data)[s * n * n + i]
                info = _eigh_inplace(&ws)
                if info != 0:
                    break
                # c = conj(V)^T psi; rows of `a` are already conj(V) columns
                for j in range(n):
                    acc = 0
                    for i in range(n):
                        acc = acc + ws.a[j * n + i] * p[i]
                    c[j] = acc
                dt = durations[s] / samples_per_segment
                seg = 0.0
                for m in range(samples_per_segment + 1):
                    t = m * dt
                    for j in range(n):
                        ws.phases[j] = (cos(ws.w[j] * t) - 1j * sin(ws.w[j] * t)) * c[j]
                    pop = 0.0
                    for i in range(n):
                        acc = 0
                        for j in range(n):
                            acc = acc + (ws.a[j * n + i]).conjugate() * ws.phases[j]
                        amp[i] = acc
                        pop = pop + weights[i] * (acc.real * acc.real + acc.imag * acc.imag)
                    if m == 0 or m == samples_per_segment:
                        seg = seg + 0.5 * pop
                    else:
                        seg = seg + pop
                total = total + seg * dt
                for i in range(n):
                    p[i] = amp[i]
        if info != 0:
            raise np.linalg.LinAlgError(f"zheev failed with info={info}")
    finally:
        _free_work(&ws)
        free(c)
        free(amp)
    return total, psi
