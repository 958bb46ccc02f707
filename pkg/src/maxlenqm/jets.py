"""Truncated multivariate Taylor arithmetic ("jets"), vectorised over points.

A :class:`Jet` of order ``K`` in ``n`` variables stores the normalised Taylor
coefficients ``c_a = (d^a f)(x0) / a!`` for every multi-index ``a`` with
``|a| <= K``, at a whole array of expansion points at once.  Arithmetic and the
elementary functions below propagate these coefficients exactly (up to
rounding), so derivatives of composed operator actions carry no
differentiation error.

Differentiating a jet lowers its order by one.  Operators that need ``psi'``
therefore ask their input for one more order than they promise to return.
"""

from functools import lru_cache
import math

import numpy as np
from numpy.polynomial import polynomial as npoly


def _compositions(total, nvars):
    if nvars == 1:
        yield (total,)
        return
    for first in range(total, -1, -1):
        for rest in _compositions(total - first, nvars - 1):
            yield (first,) + rest


@lru_cache(maxsize=None)
def monomials(nvars, order):
    """Multi-indices of total degree <= order, graded (degree-major) ordering."""
    out = []
    for deg in range(order + 1):
        out.extend(_compositions(deg, nvars))
    return tuple(out)


@lru_cache(maxsize=None)
def _tables(nvars, order):
    monos = monomials(nvars, order)
    index = {m: i for i, m in enumerate(monos)}
    a_idx, b_idx, c_idx = [], [], []
    for i, ma in enumerate(monos):
        for j, mb in enumerate(monos):
            mc = tuple(p + q for p, q in zip(ma, mb))
            if sum(mc) <= order:
                a_idx.append(i)
                b_idx.append(j)
                c_idx.append(index[mc])
    # scatter[c, t] = 1 when pair t contributes to output coefficient c
    scatter = np.zeros((len(monos), len(c_idx)))
    scatter[c_idx, np.arange(len(c_idx))] = 1.0
    product = (np.array(a_idx), np.array(b_idx), scatter)

    lower = monomials(nvars, order - 1) if order > 0 else ()
    partials = []
    for var in range(nvars):
        src, fac = [], []
        for m in lower:
            up = list(m)
            up[var] += 1
            src.append(index[tuple(up)])
            fac.append(up[var])
        partials.append((np.array(src, dtype=int), np.array(fac, dtype=float)))
    factorials = np.array([math.prod(math.factorial(k) for k in m) for m in monos], dtype=float)
    return index, product, partials, factorials


def _expand(arr, ndim):
    return arr.reshape(arr.shape + (1,) * (ndim - arr.ndim))


def _broadcast_pair(a, b):
    # point shapes broadcast numpy-style; the leading coefficient axis never does
    nd = max(a.ndim, b.ndim)
    a = a.reshape(a.shape[:1] + (1,) * (nd - a.ndim) + a.shape[1:])
    b = b.reshape(b.shape[:1] + (1,) * (nd - b.ndim) + b.shape[1:])
    return a, b


class Jet:
    """Order-``order`` truncated Taylor expansion in ``nvars`` variables."""

    __slots__ = ("coeffs", "nvars", "order")
    __array_ufunc__ = None  # make ndarray <op> Jet defer to Jet's reflected ops

    def __init__(self, coeffs, nvars, order):
        coeffs = np.asarray(coeffs)
        if coeffs.shape[0] != len(monomials(nvars, order)):
            raise ValueError("coefficient count does not match (nvars, order)")
        self.coeffs = coeffs
        self.nvars = nvars
        self.order = order

    # construction -------------------------------------------------------
    @classmethod
    def variables(cls, points, order):
        """Independent-variable jets at ``points`` of shape ``(nvars, *pts)``."""
        points = np.asarray(points, dtype=float)
        nvars = points.shape[0]
        monos = monomials(nvars, order)
        out = []
        for var in range(nvars):
            coeffs = np.zeros((len(monos),) + points.shape[1:])
            coeffs[0] = points[var]
            if order >= 1:
                unit = tuple(1 if k == var else 0 for k in range(nvars))
                coeffs[monos.index(unit)] = 1.0
            out.append(cls(coeffs, nvars, order))
        return out

    @classmethod
    def variable(cls, x, order):
        """Univariate independent-variable jet at the points ``x``."""
        return cls.variables(np.asarray(x, dtype=float)[None], order)[0]

    @classmethod
    def constant(cls, value, nvars, order, shape=None):
        value = np.asarray(value)
        if shape is not None:
            value = np.broadcast_to(value, shape)
        coeffs = np.zeros((len(monomials(nvars, order)),) + value.shape, dtype=np.result_type(value, float))
        coeffs[0] = value
        return cls(coeffs, nvars, order)

    # inspection ---------------------------------------------------------
    @property
    def value(self):
        return self.coeffs[0]

    @property
    def shape(self):
        return self.coeffs.shape[1:]

    def derivative(self, multi_index):
        """The actual partial derivative d^a f at the expansion points."""
        index, _, _, factorials = _tables(self.nvars, self.order)
        k = index[tuple(multi_index)]
        return self.coeffs[k] * factorials[k]

    def derivs(self):
        """Univariate shortcut: ``[f, f', ..., f^(order)]``."""
        if self.nvars != 1:
            raise ValueError("derivs() is only defined for univariate jets")
        return [self.derivative((k,)) for k in range(self.order + 1)]

    def truncate(self, order):
        if order > self.order:
            raise ValueError("cannot raise the order of a jet")
        if order == self.order:
            return self
        return Jet(self.coeffs[: len(monomials(self.nvars, order))], self.nvars, order)

    def partial(self, var=0):
        """d/dx_var, returned as a jet of order ``order - 1``."""
        if self.order < 1:
            raise ValueError("cannot differentiate an order-0 jet")
        _, _, partials, _ = _tables(self.nvars, self.order)
        src, fac = partials[var]
        coeffs = self.coeffs[src] * _expand(fac, self.coeffs.ndim)
        return Jet(coeffs, self.nvars, self.order - 1)

    def conj(self):
        return Jet(np.conj(self.coeffs), self.nvars, self.order)

    @property
    def real(self):
        return Jet(self.coeffs.real, self.nvars, self.order)

    @property
    def imag(self):
        return Jet(self.coeffs.imag, self.nvars, self.order)

    def sum(self, axis):
        """Sum over a point axis (axis counts point dimensions only)."""
        return Jet(self.coeffs.sum(axis=axis + 1), self.nvars, self.order)

    # arithmetic ---------------------------------------------------------
    def _align(self, other):
        if isinstance(other, Jet):
            if other.nvars != self.nvars:
                raise ValueError("jets live in different numbers of variables")
            order = min(self.order, other.order)
            return self.truncate(order), other.truncate(order)
        return self, None

    def __add__(self, other):
        a, b = self._align(other)
        if b is None:
            ca, cb = _broadcast_pair(a.coeffs, np.asarray(other)[None])
            shape = np.broadcast_shapes(ca.shape[1:], cb.shape[1:])
            coeffs = np.array(np.broadcast_to(ca, ca.shape[:1] + shape), dtype=np.result_type(ca, cb))
            coeffs[0] += cb[0]
            return Jet(coeffs, a.nvars, a.order)
        ca, cb = _broadcast_pair(a.coeffs, b.coeffs)
        return Jet(ca + cb, a.nvars, a.order)

    __radd__ = __add__

    def __neg__(self):
        return Jet(-self.coeffs, self.nvars, self.order)

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        a, b = self._align(other)
        if b is None:
            ca, cb = _broadcast_pair(a.coeffs, np.asarray(other)[None])
            return Jet(ca * cb, a.nvars, a.order)
        _, (ia, ib, scatter), _, _ = _tables(a.nvars, a.order)
        ca, cb = _broadcast_pair(a.coeffs, b.coeffs)
        terms = ca[ia] * cb[ib]
        out = (scatter @ terms.reshape(terms.shape[0], -1)).reshape((scatter.shape[0],) + terms.shape[1:])
        return Jet(out, a.nvars, a.order)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, Jet):
            return self * reciprocal(other)
        ca, cb = _broadcast_pair(self.coeffs, np.asarray(other)[None])
        return Jet(ca / cb, self.nvars, self.order)

    def __rtruediv__(self, other):
        return reciprocal(self) * other

    def __pow__(self, p):
        if isinstance(p, (int, np.integer)) and p >= 0:
            out = Jet.constant(np.ones(self.shape), self.nvars, self.order)
            base = self
            while p:
                if p & 1:
                    out = out * base
                base = base * base
                p >>= 1
            return out
        return power(self, p)

    def compose(self, derivs):
        """Return f(self) given ``derivs[m] = f^(m)(self.value)`` for m <= order."""
        h = Jet(self.coeffs.copy(), self.nvars, self.order)
        h.coeffs[0] = 0
        res = Jet.constant(derivs[self.order] / math.factorial(self.order), self.nvars, self.order,
                           shape=self.shape)
        for m in range(self.order - 1, -1, -1):
            res = res * h + derivs[m] / math.factorial(m)
        return res

    def __repr__(self):
        return f"Jet(nvars={self.nvars}, order={self.order}, shape={self.shape})"


# elementary functions ---------------------------------------------------
# Each accepts a Jet or anything numpy understands.

def exp(a):
    if not isinstance(a, Jet):
        return np.exp(a)
    e = np.exp(a.value)
    return a.compose([e] * (a.order + 1))


def log(a):
    if not isinstance(a, Jet):
        return np.log(a)
    x = a.value
    derivs = [np.log(x)] + [(-1) ** (m - 1) * math.factorial(m - 1) / x**m for m in range(1, a.order + 1)]
    return a.compose(derivs)


def power(a, p):
    if not isinstance(a, Jet):
        return np.power(a, p)
    x = a.value
    derivs, coef = [], 1.0
    for m in range(a.order + 1):
        derivs.append(coef * x ** (p - m))
        coef *= p - m
    return a.compose(derivs)


def sqrt(a):
    if not isinstance(a, Jet):
        return np.sqrt(a)
    return power(a, 0.5)


def reciprocal(a):
    if not isinstance(a, Jet):
        return 1.0 / a
    x = a.value
    return a.compose([(-1) ** m * math.factorial(m) / x ** (m + 1) for m in range(a.order + 1)])


def sin(a):
    if not isinstance(a, Jet):
        return np.sin(a)
    s, c = np.sin(a.value), np.cos(a.value)
    cycle = [s, c, -s, -c]
    return a.compose([cycle[m % 4] for m in range(a.order + 1)])


def cos(a):
    if not isinstance(a, Jet):
        return np.cos(a)
    s, c = np.sin(a.value), np.cos(a.value)
    cycle = [c, -s, -c, s]
    return a.compose([cycle[m % 4] for m in range(a.order + 1)])


def tan(a):
    if not isinstance(a, Jet):
        return np.tan(a)
    t = np.tan(a.value)
    poly = np.array([0.0, 1.0])  # d^m tan = P_m(tan), P_{m+1} = P_m' (1 + t^2)
    derivs = []
    for _ in range(a.order + 1):
        derivs.append(npoly.polyval(t, poly))
        poly = npoly.polymul(npoly.polyder(poly), [1.0, 0.0, 1.0])
    return a.compose(derivs)


def arctan(a):
    if not isinstance(a, Jet):
        return np.arctan(a)
    x = a.value
    derivs = [np.arctan(x)]
    # d^k/dx^k 1/(1+x^2) = Q_k(x) / (1+x^2)^(k+1)
    q = np.array([1.0])
    one_plus = 1.0 + x * x
    for k in range(a.order):
        derivs.append(npoly.polyval(x, q) / one_plus ** (k + 1))
        q = npoly.polysub(npoly.polymul(npoly.polyder(q) if len(q) > 1 else [0.0], [1.0, 0.0, 1.0]),
                          npoly.polymul([0.0, 2.0 * (k + 1)], q))
    return a.compose(derivs)


def absolute(a):
    """|a| for real jets away from zero (sign is frozen at the expansion point)."""
    if not isinstance(a, Jet):
        return np.abs(a)
    return a * np.sign(a.value)


def value_of(a):
    return a.value if isinstance(a, Jet) else np.asarray(a)
