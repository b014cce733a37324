"""Heisenberg group algebra and the Siegel model of complex hyperbolic space.

The Heisenberg group N of dimension 2n-1 consists of elements n_(s,v) with
s real and v a complex (n-1)-vector.  It acts on the Siegel model

    Omega = { (a, v) in C x C^(n-1) : 2 Re(a) + |v|^2 < 0 },

the unbounded realization of complex hyperbolic n-space, as the unipotent
stabilizer of the boundary point at infinity.  This module implements the
group law, the matrix model acting on C^(n+1), the ambient Hermitian form
of signature (n,1), horoballs centred at infinity, and the quotient of a
horoball by the center of N, which produces the punctured-disk coordinates
used by the cusp bundle module.

Conventions.  The Hermitian product on C^k is linear in the first argument
and conjugate-linear in the second.  All operations are pure; elements are
immutable after construction.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

__all__ = [
    "HeisenbergElement",
    "SiegelPoint",
    "HoroballParams",
    "hermitian_product",
    "identity_element",
    "compose",
    "inverse",
    "to_matrix",
    "hermitian_form",
    "orbit_coords",
    "horoball_contains",
    "quotient_to_omega",
    "lambda_const",
    "rescale",
]


def hermitian_product(v: np.ndarray, w: np.ndarray) -> complex:
    """Standard Hermitian product, linear in v, conjugate-linear in w."""
    return complex(np.vdot(w, v))


@dataclass(frozen=True, eq=False)
class HeisenbergElement:
    """A point n_(s,v) of the Heisenberg group.

    s is the central coordinate, v the horizontal complex (n-1)-vector.
    """

    s: float
    v: np.ndarray

    def __post_init__(self) -> None:
        v = np.asarray(self.v, dtype=complex).reshape(-1)
        object.__setattr__(self, "v", v)
        if not (math.isfinite(self.s) and np.all(np.isfinite(v.view(float)))):
            raise ValueError("HeisenbergElement entries must be finite")

    @property
    def n(self) -> int:
        return self.v.shape[0] + 1


@dataclass(frozen=True, eq=False)
class SiegelPoint:
    """A point (a, v) of the Siegel domain coordinates."""

    a: complex
    v: np.ndarray

    def __post_init__(self) -> None:
        object.__setattr__(self, "v", np.asarray(self.v, dtype=complex).reshape(-1))

    def defect(self) -> float:
        """2 Re(a) + |v|^2; negative exactly on the Siegel domain."""
        return 2.0 * self.a.real + float(np.vdot(self.v, self.v).real)

    def in_domain(self) -> bool:
        return self.defect() < 0.0


@dataclass(frozen=True)
class HoroballParams:
    """Horoball depth t0 and central translation length l > 0."""

    t0: float
    l: float = field(default=2.0 * math.pi)

    def __post_init__(self) -> None:
        if self.l <= 0.0:
            raise ValueError("central translation length l must be positive")


def identity_element(n: int) -> HeisenbergElement:
    return HeisenbergElement(0.0, np.zeros(n - 1, dtype=complex))


def compose(g: HeisenbergElement, h: HeisenbergElement) -> HeisenbergElement:
    """Group law n_(s,v) n_(s',v') = n_(s + s' + Im<v',v>, v + v')."""
    if g.v.shape != h.v.shape:
        raise ValueError("dimension mismatch in Heisenberg composition")
    twist = hermitian_product(h.v, g.v).imag
    return HeisenbergElement(g.s + h.s + twist, g.v + h.v)


def inverse(g: HeisenbergElement) -> HeisenbergElement:
    return HeisenbergElement(-g.s, -g.v)


def to_matrix(g: HeisenbergElement) -> np.ndarray:
    """Unipotent matrix of n_(s,v) acting on C^(n+1).

    In the basis (f1, ..., f_{n+1}) adapted to the isotropic flag, the
    matrix is the identity except for the first row and the second column:
    entry (1,2) is -|v|^2/2 - i s, entries (1, 2+j) are -conj(v_j) and
    entries (2+j, 2) are v_j.
    """
    n = g.n
    m = np.eye(n + 1, dtype=complex)
    nv2 = float(np.vdot(g.v, g.v).real)
    m[0, 1] = -0.5 * nv2 - 1j * g.s
    m[0, 2:] = -np.conj(g.v)
    m[2:, 1] = g.v
    return m


def hermitian_form(u: np.ndarray, w: np.ndarray) -> complex:
    """Ambient form of signature (n,1), H(u,u) = 2 Re(u1 conj(u2)) + |rest|^2.

    Polarized version, linear in u: H(u,w) = u1 conj(w2) + u2 conj(w1)
    plus the standard product of the remaining coordinates.
    """
    u = np.asarray(u, dtype=complex).reshape(-1)
    w = np.asarray(w, dtype=complex).reshape(-1)
    if u.shape != w.shape:
        raise ValueError("dimension mismatch in hermitian_form")
    head = u[0] * np.conj(w[1]) + u[1] * np.conj(w[0])
    return complex(head + hermitian_product(u[2:], w[2:]))


def orbit_coords(s: float, v: np.ndarray, t: float) -> SiegelPoint:
    """Coordinates of n_(s,v) a_t applied to the base point.

    The orbit map lands at (-|v|^2/2 - i s - e^(-2t), v), which always
    satisfies 2 Re(a) + |v|^2 = -2 e^(-2t) < 0.
    """
    v = np.asarray(v, dtype=complex).reshape(-1)
    nv2 = float(np.vdot(v, v).real)
    a = -0.5 * nv2 - 1j * s - math.exp(-2.0 * t)
    return SiegelPoint(a, v)


def horoball_contains(p: SiegelPoint, hb: HoroballParams) -> bool:
    """Membership in the horoball of depth t0: Re(a) < -|v|^2/2 - e^(-2 t0)."""
    nv2 = float(np.vdot(p.v, p.v).real)
    return p.a.real < -0.5 * nv2 - math.exp(-2.0 * hb.t0)


def quotient_to_omega(p: SiegelPoint, l: float) -> tuple[complex, np.ndarray]:
    """Quotient by the center <n_(l,0)>, acting as a -> a - i l.

    The map (a, v) -> (exp(2 pi a / l), v) is invariant under the center and
    sends the Siegel domain onto { 0 < |first| < exp(-pi |v|^2 / l) }.
    """
    if l <= 0.0:
        raise ValueError("central translation length l must be positive")
    if not p.in_domain():
        raise ValueError("point outside the Siegel domain")
    first = np.exp(2.0 * math.pi * complex(p.a) / l)
    return complex(first), p.v.copy()


def lambda_const(t0: float, l: float) -> float:
    """lambda(t0) = exp(-2 pi e^(-2 t0) / l), the horoball radius constant."""
    if l <= 0.0:
        raise ValueError("central translation length l must be positive")
    return math.exp(-2.0 * math.pi * math.exp(-2.0 * t0) / l)


def rescale(g: HeisenbergElement, l: float) -> HeisenbergElement:
    """Automorphism n_(s,v) -> n_(2 pi s / l, sqrt(2 pi / l) v).

    Normalizes the central period from l to 2 pi; the horizontal scaling
    by sqrt(2 pi / l) is what keeps the commutator twist consistent.
    """
    if l <= 0.0:
        raise ValueError("central translation length l must be positive")
    c = 2.0 * math.pi / l
    return HeisenbergElement(c * g.s, math.sqrt(c) * g.v)
