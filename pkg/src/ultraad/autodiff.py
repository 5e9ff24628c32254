"""Minimal reverse-mode gradient engine over float64 numpy arrays.

Every operation carries a hand-derived vector-Jacobian product; the whole
model's computation graph is built from these nodes, so analytic gradients
for any parameter come from one backward() sweep. Finite-difference
verification lives in training.grad_check and the test suite.
"""

from __future__ import annotations

import numpy as np

Array = np.ndarray


def _unbroadcast(grad: Array, shape: tuple) -> Array:
    """Sum `grad` down to `shape`, inverting numpy broadcasting."""
    if grad.shape == shape:
        return grad
    extra = grad.ndim - len(shape)
    if extra > 0:
        grad = grad.sum(axis=tuple(range(extra)))
    axes = tuple(i for i, s in enumerate(shape) if s == 1 and grad.shape[i] != 1)
    if axes:
        grad = grad.sum(axis=axes, keepdims=True)
    return grad.reshape(shape)


class Tensor:
    """A node in the reverse-mode graph.

    `value` is always float64. Leaves have no parents; `backward()` on a
    scalar output populates `.grad` on every node that influenced it.
    """

    __slots__ = ("value", "grad", "_parents", "_vjp")

    def __init__(self, value, parents=(), vjp=None):
        self.value = np.asarray(value, dtype=np.float64)
        self.grad = None
        self._parents = parents
        self._vjp = vjp

    @property
    def shape(self):
        return self.value.shape

    @property
    def ndim(self):
        return self.value.ndim

    def item(self) -> float:
        return float(self.value)

    # -- graph construction -------------------------------------------------

    @staticmethod
    def _wrap(x) -> "Tensor":
        return x if isinstance(x, Tensor) else Tensor(x)

    def __neg__(self):
        return Tensor(-self.value, (self,), lambda g: (-g,))

    def __add__(self, other):
        other = Tensor._wrap(other)
        return Tensor(
            self.value + other.value,
            (self, other),
            lambda g: (_unbroadcast(g, self.shape), _unbroadcast(g, other.shape)),
        )

    __radd__ = __add__

    def __sub__(self, other):
        other = Tensor._wrap(other)
        return Tensor(
            self.value - other.value,
            (self, other),
            lambda g: (_unbroadcast(g, self.shape), _unbroadcast(-g, other.shape)),
        )

    def __rsub__(self, other):
        return Tensor._wrap(other) - self

    def __mul__(self, other):
        other = Tensor._wrap(other)
        return Tensor(
            self.value * other.value,
            (self, other),
            lambda g: (
                _unbroadcast(g * other.value, self.shape),
                _unbroadcast(g * self.value, other.shape),
            ),
        )

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = Tensor._wrap(other)
        return Tensor(
            self.value / other.value,
            (self, other),
            lambda g: (
                _unbroadcast(g / other.value, self.shape),
                _unbroadcast(-g * self.value / other.value**2, other.shape),
            ),
        )

    def __rtruediv__(self, other):
        return Tensor._wrap(other) / self

    def __pow__(self, p):
        if not np.isscalar(p):
            raise TypeError("only scalar exponents are supported")
        out = self.value**p
        return Tensor(out, (self,), lambda g: (g * p * self.value ** (p - 1),))

    def __matmul__(self, other):
        other = Tensor._wrap(other)
        a, b = self.value, other.value
        out = a @ b

        def vjp(g):
            if a.ndim == 2 and b.ndim == 2:
                return g @ b.T, a.T @ g
            if a.ndim == 1 and b.ndim == 2:
                return g @ b.T, np.outer(a, g)
            if a.ndim == 2 and b.ndim == 1:
                return np.outer(g, b), a.T @ g
            if a.ndim == 1 and b.ndim == 1:
                return g * b, g * a
            raise ValueError(f"unsupported matmul ranks {a.ndim} @ {b.ndim}")

        return Tensor(out, (self, other), vjp)

    def __getitem__(self, idx):
        out = self.value[idx]

        def vjp(g):
            full = np.zeros_like(self.value)
            full[idx] = g
            return (full,)

        return Tensor(out, (self,), vjp)

    @property
    def T(self):
        return Tensor(self.value.T, (self,), lambda g: (g.T,))

    def reshape(self, *shape):
        if len(shape) == 1 and isinstance(shape[0], (tuple, list)):
            shape = tuple(shape[0])
        orig = self.shape
        return Tensor(self.value.reshape(shape), (self,), lambda g: (g.reshape(orig),))

    # -- elementwise nonlinearities ------------------------------------------

    def exp(self):
        out = np.exp(self.value)
        return Tensor(out, (self,), lambda g: (g * out,))

    def log(self):
        return Tensor(np.log(self.value), (self,), lambda g: (g / self.value,))

    def tanh(self):
        out = np.tanh(self.value)
        return Tensor(out, (self,), lambda g: (g * (1.0 - out**2),))

    def sigmoid(self):
        x = self.value
        out = np.empty_like(x)
        pos = x >= 0
        out[pos] = 1.0 / (1.0 + np.exp(-x[pos]))
        ex = np.exp(x[~pos])
        out[~pos] = ex / (1.0 + ex)
        return Tensor(out, (self,), lambda g: (g * out * (1.0 - out),))

    def clip(self, lo: float, hi: float):
        out = np.clip(self.value, lo, hi)
        inside = (self.value > lo) & (self.value < hi)
        return Tensor(out, (self,), lambda g: (g * inside,))

    # -- reductions -----------------------------------------------------------

    def sum(self, axis=None, keepdims=False):
        out = self.value.sum(axis=axis, keepdims=keepdims)

        def vjp(g):
            g = np.asarray(g)
            if axis is not None and not keepdims:
                g = np.expand_dims(g, axis)
            return (np.broadcast_to(g, self.shape).copy(),)

        return Tensor(out, (self,), vjp)

    def mean(self, axis=None, keepdims=False):
        n = self.value.size if axis is None else self.value.shape[axis]
        return self.sum(axis=axis, keepdims=keepdims) / n

    # -- normalization and attention primitives -------------------------------

    def normalize(self, axis=-1):
        """L2-normalize along `axis`; rejects (near-)zero slices."""
        norms = np.linalg.norm(self.value, axis=axis, keepdims=True)
        if np.any(norms < 1e-30):
            raise ValueError("cannot normalize zero vector")
        out = self.value / norms

        def vjp(g):
            dot = (g * out).sum(axis=axis, keepdims=True)
            return ((g - out * dot) / norms,)

        return Tensor(out, (self,), vjp)

    def softmax(self, axis=-1):
        z = self.value - self.value.max(axis=axis, keepdims=True)
        e = np.exp(z)
        out = e / e.sum(axis=axis, keepdims=True)

        def vjp(g):
            dot = (g * out).sum(axis=axis, keepdims=True)
            return (out * (g - dot),)

        return Tensor(out, (self,), vjp)

    # -- backward pass ---------------------------------------------------------

    def backward(self):
        if self.value.shape != ():
            raise ValueError("backward() requires a scalar output")
        topo: list[Tensor] = []
        seen: set[int] = set()
        stack: list[tuple[Tensor, bool]] = [(self, False)]
        while stack:
            node, emitted = stack.pop()
            if emitted:
                topo.append(node)
                continue
            if id(node) in seen:
                continue
            seen.add(id(node))
            stack.append((node, True))
            for p in node._parents:
                stack.append((p, False))

        self.grad = np.ones((), dtype=np.float64)
        for node in reversed(topo):
            if node._vjp is None or node.grad is None:
                continue
            for parent, g in zip(node._parents, node._vjp(node.grad)):
                if g is None:
                    continue
                if parent.grad is None:
                    parent.grad = np.zeros_like(parent.value)
                parent.grad = parent.grad + g


def concat(tensors, axis=0) -> Tensor:
    tensors = [Tensor._wrap(t) for t in tensors]
    out = np.concatenate([t.value for t in tensors], axis=axis)
    sizes = [t.shape[axis] for t in tensors]
    splits = np.cumsum(sizes)[:-1]

    def vjp(g):
        return tuple(np.split(g, splits, axis=axis))

    return Tensor(out, tuple(tensors), vjp)


def logsumexp(t: Tensor, axis=-1) -> Tensor:
    """Numerically stable log-sum-exp.

    The max shift enters as a constant, which is exact: for any fixed c,
    lse(x) = c + log sum exp(x - c), and the gradient through the remaining
    graph is softmax(x).
    """
    shift = t.value.max(axis=axis, keepdims=True)
    inner = (t - Tensor(shift)).exp().sum(axis=axis).log()
    return inner + Tensor(np.squeeze(shift, axis=axis))
