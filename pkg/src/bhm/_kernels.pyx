# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled bicomplex scalar kernel.

Twin of ``bhm._kernels_py``; see that module for the conventions.  Keep the
two APIs in lockstep; the test suite runs the same parity checks on both.
"""

from libc.math cimport sqrt

from .errors import ZeroDivisorError

ZERO_DIVISOR_RTOL = 1e-12

BACKEND = "cython"

cdef double _RTOL = 1e-12


cdef inline double _abs2(double complex z) nogil:
    return z.real * z.real + z.imag * z.imag


cdef Bicomplex _new(double complex z1, double complex z2):
    cdef Bicomplex out = Bicomplex.__new__(Bicomplex)
    out.z1 = z1
    out.z2 = z2
    return out


cdef Bicomplex _coerce(object value):
    if isinstance(value, Bicomplex):
        return <Bicomplex> value
    if isinstance(value, (int, float, complex)):
        return _new(value, 0.0)
    z1 = getattr(value, "z1", None)
    if z1 is not None:
        return _new(z1, value.z2)
    return None


cdef class Bicomplex:
    cdef readonly double complex z1
    cdef readonly double complex z2

    def __init__(self, z1=0.0, z2=0.0):
        self.z1 = z1
        self.z2 = z2

    @property
    def x1(self):
        return self.z1.real

    @property
    def x2(self):
        return self.z1.imag

    @property
    def x3(self):
        return self.z2.real

    @property
    def x4(self):
        return self.z2.imag

    def __repr__(self):
        return f"Bicomplex({self.z1!r}, {self.z2!r})"

    def __eq__(self, other):
        cdef Bicomplex q = _coerce(other)
        if q is None:
            return NotImplemented
        return self.z1 == q.z1 and self.z2 == q.z2

    def __hash__(self):
        return hash((self.z1, self.z2))

    def __add__(self, other):
        cdef Bicomplex q = _coerce(other)
        if q is None:
            return NotImplemented
        return _new(self.z1 + q.z1, self.z2 + q.z2)

    def __radd__(self, other):
        cdef Bicomplex q = _coerce(other)
        if q is None:
            return NotImplemented
        return _new(self.z1 + q.z1, self.z2 + q.z2)

    def __sub__(self, other):
        cdef Bicomplex q = _coerce(other)
        if q is None:
            return NotImplemented
        return _new(self.z1 - q.z1, self.z2 - q.z2)

    def __rsub__(self, other):
        cdef Bicomplex q = _coerce(other)
        if q is None:
            return NotImplemented
        return _new(q.z1 - self.z1, q.z2 - self.z2)

    def __mul__(self, other):
        cdef Bicomplex q = _coerce(other)
        if q is None:
            return NotImplemented
        return _new(self.z1 * q.z1 - self.z2 * q.z2,
                    self.z1 * q.z2 + self.z2 * q.z1)

    def __rmul__(self, other):
        cdef Bicomplex q = _coerce(other)
        if q is None:
            return NotImplemented
        return _new(self.z1 * q.z1 - self.z2 * q.z2,
                    self.z1 * q.z2 + self.z2 * q.z1)

    def __truediv__(self, other):
        cdef Bicomplex q = _coerce(other)
        if q is None:
            return NotImplemented
        return self * q.inverse()

    def __rtruediv__(self, other):
        cdef Bicomplex q = _coerce(other)
        if q is None:
            return NotImplemented
        return q * self.inverse()

    def __neg__(self):
        return _new(-self.z1, -self.z2)

    def __pos__(self):
        return self

    def __pow__(self, n, modulo):
        if not isinstance(n, int):
            return NotImplemented
        cdef long long e = n
        cdef Bicomplex base = self
        if e < 0:
            base = self.inverse()
            e = -e
        cdef Bicomplex result = _new(1.0, 0.0)
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def __abs__(self):
        return sqrt(_abs2(self.z1) + _abs2(self.z2))

    def norm2(self):
        """Squared real norm |q|^2 = |z1|^2 + |z2|^2."""
        return _abs2(self.z1) + _abs2(self.z2)

    def cn(self):
        """Complex (square) norm CN(q) = z1^2 + z2^2."""
        return self.z1 * self.z1 + self.z2 * self.z2

    def conj(self):
        """Star conjugate q* = z1 - z2*i2; q*q^* = CN(q)."""
        return _new(self.z1, -self.z2)

    def is_unit(self, rtol=None):
        cdef double r = _RTOL if rtol is None else rtol
        cdef double complex c = self.z1 * self.z1 + self.z2 * self.z2
        cdef double n2 = _abs2(self.z1) + _abs2(self.z2)
        return sqrt(_abs2(c)) > r * (1.0 if n2 < 1.0 else n2)

    def inverse(self, rtol=None):
        cdef double r = _RTOL if rtol is None else rtol
        cdef double complex c = self.z1 * self.z1 + self.z2 * self.z2
        cdef double n2 = _abs2(self.z1) + _abs2(self.z2)
        if sqrt(_abs2(c)) <= r * (1.0 if n2 < 1.0 else n2):
            raise ZeroDivisorError(f"not a unit: CN(q) = {c!r} for q = {self!r}")
        return _new(self.z1 / c, -self.z2 / c)

    def ringleb(self):
        """Idempotent components (e, f) with q = e*(1-j)/2 + f*(1+j)/2."""
        cdef double complex i1 = 1j
        return (self.z1 + i1 * self.z2, self.z1 - i1 * self.z2)

    @classmethod
    def from_ringleb(cls, e, f):
        cdef double complex ec = e
        cdef double complex fc = f
        return _new((ec + fc) / 2.0, 1j * (fc - ec) / 2.0)

    def to_reals(self):
        """Coefficients [x1, x2, x3, x4] in the basis (1, i1, i2, j)."""
        return [self.z1.real, self.z1.imag, self.z2.real, self.z2.imag]

    @classmethod
    def from_reals(cls, vals):
        x1, x2, x3, x4 = vals
        return _new(complex(x1, x2), complex(x3, x4))
