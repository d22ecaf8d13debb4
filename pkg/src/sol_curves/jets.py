"""Truncated Taylor series ("jets") for exact high-order derivatives.

A :class:`Jet` of order K stores the Taylor coefficients c_0..c_K of a scalar
function about a base parameter s0, so that f^(k)(s0) = k! * c_k.  Arithmetic
and the elementary functions propagate the coefficients with the usual
recurrences, which is forward-mode automatic differentiation to any finite
order.

Binary operators between jets of different order truncate to the smaller
order; :func:`jet_combine` is the strict form and rejects mismatched orders.
"""
from __future__ import annotations

import math
from numbers import Real

import numpy as np

from .errors import DivisionByZeroJet, DomainError, OrderExceeded, OrderExhausted

__all__ = [
    "Jet",
    "jet_constant",
    "jet_variable",
    "jet_combine",
    "jet_elementary",
    "jet_derivative",
]


class Jet:
    __slots__ = ("coeffs",)

    def __init__(self, coeffs):
        c = np.array(coeffs, dtype=float)
        if c.ndim != 1 or c.size == 0:
            raise ValueError("a jet needs a non-empty 1-d coefficient list")
        self.coeffs = c

    @property
    def order(self) -> int:
        return self.coeffs.size - 1

    @property
    def value(self) -> float:
        return float(self.coeffs[0])

    def __repr__(self):
        return f"Jet({self.coeffs.tolist()!r})"

    def __len__(self):
        return self.coeffs.size

    def truncate(self, order: int) -> "Jet":
        if order > self.order:
            raise OrderExceeded(f"cannot extend a jet of order {self.order} to {order}")
        return Jet(self.coeffs[: order + 1])

    def derivative(self, k: int) -> float:
        return jet_derivative(self, k)

    def derivatives(self) -> np.ndarray:
        """All derivatives f(s0), f'(s0), ..., f^(K)(s0)."""
        fact = np.array([math.factorial(k) for k in range(self.coeffs.size)], dtype=float)
        return self.coeffs * fact

    def diff(self) -> "Jet":
        """The jet of f' (one order lower)."""
        if self.order == 0:
            raise OrderExhausted("cannot differentiate a jet of order 0")
        k = np.arange(1, self.coeffs.size)
        return Jet(self.coeffs[1:] * k)

    def integrate(self, constant: float = 0.0) -> "Jet":
        """The jet of the antiderivative taking ``constant`` at s0 (one order higher)."""
        k = np.arange(1, self.coeffs.size + 1)
        return Jet(np.concatenate(([constant], self.coeffs / k)))

    # -- arithmetic -----------------------------------------------------

    def _coerce(self, other):
        if isinstance(other, Jet):
            n = min(self.coeffs.size, other.coeffs.size)
            return self.coeffs[:n], other.coeffs[:n]
        if isinstance(other, (Real, np.floating, np.integer)):
            b = np.zeros_like(self.coeffs)
            b[0] = float(other)
            return self.coeffs, b
        return None

    def __add__(self, other):
        pair = self._coerce(other)
        if pair is None:
            return NotImplemented
        return Jet(pair[0] + pair[1])

    __radd__ = __add__

    def __sub__(self, other):
        pair = self._coerce(other)
        if pair is None:
            return NotImplemented
        return Jet(pair[0] - pair[1])

    def __rsub__(self, other):
        pair = self._coerce(other)
        if pair is None:
            return NotImplemented
        return Jet(pair[1] - pair[0])

    def __neg__(self):
        return Jet(-self.coeffs)

    def __pos__(self):
        return self

    def __mul__(self, other):
        if isinstance(other, (Real, np.floating, np.integer)):
            return Jet(self.coeffs * float(other))
        pair = self._coerce(other)
        if pair is None:
            return NotImplemented
        a, b = pair
        return Jet(np.convolve(a, b)[: a.size])

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (Real, np.floating, np.integer)):
            if other == 0:
                raise DivisionByZeroJet("division of a jet by zero")
            return Jet(self.coeffs / float(other))
        pair = self._coerce(other)
        if pair is None:
            return NotImplemented
        return Jet(_series_div(*pair))

    def __rtruediv__(self, other):
        pair = self._coerce(other)
        if pair is None:
            return NotImplemented
        return Jet(_series_div(pair[1], pair[0]))

    def __pow__(self, n):
        if not isinstance(n, (int, np.integer)) or n < 0:
            return NotImplemented
        result = Jet(np.eye(1, self.coeffs.size).ravel())
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    # -- elementary functions ------------------------------------------

    def exp(self):
        return _exp(self)

    def log(self):
        return _log(self)

    def sqrt(self):
        return _sqrt(self)

    def sin(self):
        return _sincos(self)[0]

    def cos(self):
        return _sincos(self)[1]


def _series_div(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    if b[0] == 0.0:
        raise DivisionByZeroJet("divisor jet has zero constant term")
    q = np.empty_like(a)
    q[0] = a[0] / b[0]
    for k in range(1, a.size):
        q[k] = (a[k] - np.dot(b[1 : k + 1], q[k - 1 :: -1])) / b[0]
    return q


def _exp(a: Jet) -> Jet:
    c = a.coeffs
    k = np.arange(c.size, dtype=float)
    e = np.empty_like(c)
    e[0] = math.exp(c[0])
    for n in range(1, c.size):
        # e_n = (1/n) sum_{j=1}^n j c_j e_{n-j}
        e[n] = np.dot(k[1 : n + 1] * c[1 : n + 1], e[n - 1 :: -1][:n]) / n
    return Jet(e)


def _log(a: Jet) -> Jet:
    c = a.coeffs
    if c[0] <= 0.0:
        raise DomainError(f"log of a jet with constant term {c[0]!r}")
    k = np.arange(c.size, dtype=float)
    out = np.empty_like(c)
    out[0] = math.log(c[0])
    for n in range(1, c.size):
        acc = np.dot(k[1:n] * out[1:n], c[n - 1 : 0 : -1]) if n > 1 else 0.0
        out[n] = (c[n] - acc / n) / c[0]
    return Jet(out)


def _sqrt(a: Jet) -> Jet:
    c = a.coeffs
    if c[0] <= 0.0:
        raise DomainError(f"sqrt of a jet with constant term {c[0]!r}")
    r = np.empty_like(c)
    r[0] = math.sqrt(c[0])
    for n in range(1, c.size):
        acc = np.dot(r[1:n], r[n - 1 : 0 : -1]) if n > 1 else 0.0
        r[n] = (c[n] - acc) / (2.0 * r[0])
    return Jet(r)


def _sincos(a: Jet):
    c = a.coeffs
    k = np.arange(c.size, dtype=float)
    sn = np.empty_like(c)
    cs = np.empty_like(c)
    sn[0], cs[0] = math.sin(c[0]), math.cos(c[0])
    for n in range(1, c.size):
        w = k[1 : n + 1] * c[1 : n + 1]
        sn[n] = np.dot(w, cs[n - 1 :: -1][:n]) / n
        cs[n] = -np.dot(w, sn[n - 1 :: -1][:n]) / n
    return Jet(sn), Jet(cs)


def jet_constant(c: float, order: int) -> Jet:
    if order < 0:
        raise ValueError("jet order must be non-negative")
    coeffs = np.zeros(order + 1)
    coeffs[0] = c
    return Jet(coeffs)


def jet_variable(s0: float, order: int) -> Jet:
    """The identity function s -> s expanded about s0."""
    if order < 1:
        raise ValueError("a variable jet needs order >= 1")
    coeffs = np.zeros(order + 1)
    coeffs[0] = s0
    coeffs[1] = 1.0
    return Jet(coeffs)


_BINARY = {
    "add": lambda a, b: a + b,
    "sub": lambda a, b: a - b,
    "mul": lambda a, b: a * b,
    "div": lambda a, b: a / b,
}


def jet_combine(op: str, a: Jet, b: Jet) -> Jet:
    if op not in _BINARY:
        raise ValueError(f"unknown jet operation {op!r}")
    if a.order != b.order:
        raise ValueError(f"jet orders differ ({a.order} vs {b.order})")
    return _BINARY[op](a, b)


_ELEMENTARY = {
    "exp": _exp,
    "log": _log,
    "sqrt": _sqrt,
    "sin": lambda a: _sincos(a)[0],
    "cos": lambda a: _sincos(a)[1],
}


def jet_elementary(fn: str, a: Jet) -> Jet:
    try:
        f = _ELEMENTARY[fn]
    except KeyError:
        raise ValueError(f"unknown elementary function {fn!r}") from None
    return f(a)


def jet_derivative(a: Jet, k: int) -> float:
    if k < 0:
        raise ValueError("derivative order must be non-negative")
    if k > a.order:
        raise OrderExceeded(f"derivative {k} requested from a jet of order {a.order}")
    return float(math.factorial(k) * a.coeffs[k])
