"""Exact arithmetic over imaginary quadratic fields and the Cayley
transform route into rational unitary groups.

Elements of Q(sqrt(-d)) are pairs of exact rationals; matrices over the
field support exact inverse, determinant, and Hermitian-form identities
with zero tolerance.  The Cayley transform S(N) = 2(I+N)^{-1} - I swaps
the unitary group of a diagonal form B with the linear space of matrices
satisfying tS B = -B conj(S), and that space is cut out by rational
linear constraints on real and imaginary parts.  Rationalizing a complex
matrix on the constraint side and mapping back therefore produces exact
unitary matrices arbitrarily close to a given one.
"""

from __future__ import annotations

import cmath
import json
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

import numpy as np

RationalLike = Fraction | int | str


def _frac(x: RationalLike) -> Fraction:
    return x if isinstance(x, Fraction) else Fraction(x)


_SQUAREFREE_CACHE: dict[int, bool] = {}


def _is_squarefree(d: int) -> bool:
    if d in _SQUAREFREE_CACHE:
        return _SQUAREFREE_CACHE[d]
    ok = d >= 1
    k = 2
    while ok and k * k <= d:
        if d % (k * k) == 0:
            ok = False
        k += 1
    _SQUAREFREE_CACHE[d] = ok
    return ok


@dataclass(frozen=True)
class QuadElem:
    """a + b*sqrt(-d) with exact rational a, b and squarefree d >= 1."""

    a: Fraction
    b: Fraction
    d: int

    def __post_init__(self) -> None:
        object.__setattr__(self, "a", _frac(self.a))
        object.__setattr__(self, "b", _frac(self.b))
        if not _is_squarefree(self.d):
            raise ValueError(f"d = {self.d} is not a squarefree positive integer")

    def _coerce(self, other) -> "QuadElem":
        if isinstance(other, QuadElem):
            if other.d != self.d:
                raise ValueError(f"mixed fields: d = {self.d} vs {other.d}")
            return other
        if isinstance(other, (int, Fraction)):
            return QuadElem(_frac(other), Fraction(0), self.d)
        return NotImplemented  # type: ignore[return-value]

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return QuadElem(self.a + o.a, self.b + o.b, self.d)

    __radd__ = __add__

    def __neg__(self) -> "QuadElem":
        return QuadElem(-self.a, -self.b, self.d)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return QuadElem(self.a - o.a, self.b - o.b, self.d)

    def __rsub__(self, other):
        return (-self).__add__(other)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        # (a + b w)(a' + b' w), w^2 = -d
        return QuadElem(
            self.a * o.a - self.d * self.b * o.b,
            self.a * o.b + self.b * o.a,
            self.d,
        )

    __rmul__ = __mul__

    def conj(self) -> "QuadElem":
        return QuadElem(self.a, -self.b, self.d)

    def norm(self) -> Fraction:
        """Field norm a^2 + d b^2; multiplicative and zero only at zero."""
        return self.a * self.a + self.d * self.b * self.b

    def inv(self) -> "QuadElem":
        n = self.norm()
        if n == 0:
            raise ZeroDivisionError("inverse of zero")
        return QuadElem(self.a / n, -self.b / n, self.d)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return self * o.inv()

    def __rtruediv__(self, other):
        return self.inv().__mul__(other)

    def is_zero(self) -> bool:
        return self.a == 0 and self.b == 0

    def is_rational(self) -> bool:
        return self.b == 0

    def is_integral(self) -> bool:
        """Membership in the ring of integers of Q(sqrt(-d))."""
        if self.d % 4 == 3:
            ta, tb = 2 * self.a, 2 * self.b
            return ta.denominator == 1 and tb.denominator == 1 and (ta - tb) % 2 == 0
        return self.a.denominator == 1 and self.b.denominator == 1

    def to_complex(self) -> complex:
        return complex(Fraction(self.a)) + 1j * float(self.b) * math.sqrt(self.d)

    def __repr__(self) -> str:
        return f"({self.a} + {self.b}*sqrt(-{self.d}))"


def qzero(d: int) -> QuadElem:
    return QuadElem(Fraction(0), Fraction(0), d)


def qone(d: int) -> QuadElem:
    return QuadElem(Fraction(1), Fraction(0), d)


def qomega(d: int) -> QuadElem:
    """The generator sqrt(-d)."""
    return QuadElem(Fraction(0), Fraction(1), d)


class QuadMatrix:
    """Square matrix over Q(sqrt(-d)) with exact arithmetic throughout."""

    __slots__ = ("entries", "m", "d")

    def __init__(self, entries: Sequence[Sequence[QuadElem]]):
        rows = [list(r) for r in entries]
        m = len(rows)
        if m == 0 or any(len(r) != m for r in rows):
            raise ValueError("square nonempty entry grid required")
        d = rows[0][0].d
        if any(e.d != d for r in rows for e in r):
            raise ValueError("all entries must share d")
        self.entries = rows
        self.m = m
        self.d = d

    @classmethod
    def identity(cls, m: int, d: int) -> "QuadMatrix":
        return cls(
            [[qone(d) if i == j else qzero(d) for j in range(m)] for i in range(m)]
        )

    @classmethod
    def zero(cls, m: int, d: int) -> "QuadMatrix":
        return cls([[qzero(d) for _ in range(m)] for _ in range(m)])

    @classmethod
    def diagonal(cls, diag: Sequence[RationalLike], d: int) -> "QuadMatrix":
        m = len(diag)
        out = cls.zero(m, d)
        for i, v in enumerate(diag):
            out.entries[i][i] = QuadElem(_frac(v), Fraction(0), d)
        return out

    def __getitem__(self, ij) -> QuadElem:
        i, j = ij
        return self.entries[i][j]

    def __eq__(self, other) -> bool:
        if not isinstance(other, QuadMatrix):
            return NotImplemented
        return (
            self.m == other.m
            and self.d == other.d
            and all(
                self.entries[i][j] == other.entries[i][j]
                for i in range(self.m)
                for j in range(self.m)
            )
        )

    def __add__(self, other: "QuadMatrix") -> "QuadMatrix":
        self._check(other)
        return QuadMatrix(
            [
                [self.entries[i][j] + other.entries[i][j] for j in range(self.m)]
                for i in range(self.m)
            ]
        )

    def __sub__(self, other: "QuadMatrix") -> "QuadMatrix":
        self._check(other)
        return QuadMatrix(
            [
                [self.entries[i][j] - other.entries[i][j] for j in range(self.m)]
                for i in range(self.m)
            ]
        )

    def _check(self, other: "QuadMatrix") -> None:
        if self.m != other.m or self.d != other.d:
            raise ValueError("size or field mismatch")

    def scale(self, c: QuadElem | RationalLike) -> "QuadMatrix":
        cc = c if isinstance(c, QuadElem) else QuadElem(_frac(c), Fraction(0), self.d)
        return QuadMatrix(
            [[cc * self.entries[i][j] for j in range(self.m)] for i in range(self.m)]
        )

    def __matmul__(self, other: "QuadMatrix") -> "QuadMatrix":
        self._check(other)
        m, d = self.m, self.d
        out = [[qzero(d) for _ in range(m)] for _ in range(m)]
        for i in range(m):
            row = self.entries[i]
            for j in range(m):
                acc = qzero(d)
                for k in range(m):
                    acc = acc + row[k] * other.entries[k][j]
                out[i][j] = acc
        return QuadMatrix(out)

    def transpose(self) -> "QuadMatrix":
        return QuadMatrix(
            [[self.entries[j][i] for j in range(self.m)] for i in range(self.m)]
        )

    def conj(self) -> "QuadMatrix":
        return QuadMatrix(
            [[self.entries[i][j].conj() for j in range(self.m)] for i in range(self.m)]
        )

    def conj_transpose(self) -> "QuadMatrix":
        return self.transpose().conj()

    def is_zero(self) -> bool:
        return all(e.is_zero() for r in self.entries for e in r)

    def apply(self, vec: Sequence[QuadElem]) -> list[QuadElem]:
        if len(vec) != self.m:
            raise ValueError("vector length mismatch")
        return [
            sum((self.entries[i][k] * vec[k] for k in range(self.m)), qzero(self.d))
            for i in range(self.m)
        ]

    def inverse(self) -> "QuadMatrix":
        m, d = self.m, self.d
        work = [list(r) for r in self.entries]
        aug = [
            [qone(d) if i == j else qzero(d) for j in range(m)] for i in range(m)
        ]
        for col in range(m):
            piv = next(
                (r for r in range(col, m) if not work[r][col].is_zero()), None
            )
            if piv is None:
                raise ZeroDivisionError("singular matrix")
            work[col], work[piv] = work[piv], work[col]
            aug[col], aug[piv] = aug[piv], aug[col]
            pinv = work[col][col].inv()
            work[col] = [pinv * e for e in work[col]]
            aug[col] = [pinv * e for e in aug[col]]
            for r in range(m):
                if r == col or work[r][col].is_zero():
                    continue
                factor = work[r][col]
                work[r] = [
                    work[r][j] - factor * work[col][j] for j in range(m)
                ]
                aug[r] = [aug[r][j] - factor * aug[col][j] for j in range(m)]
        return QuadMatrix(aug)

    def det(self) -> QuadElem:
        m, d = self.m, self.d
        work = [list(r) for r in self.entries]
        out = qone(d)
        for col in range(m):
            piv = next(
                (r for r in range(col, m) if not work[r][col].is_zero()), None
            )
            if piv is None:
                return qzero(d)
            if piv != col:
                work[col], work[piv] = work[piv], work[col]
                out = -out
            out = out * work[col][col]
            pinv = work[col][col].inv()
            for r in range(col + 1, m):
                if work[r][col].is_zero():
                    continue
                factor = work[r][col] * pinv
                work[r] = [
                    work[r][j] - factor * work[col][j] for j in range(m)
                ]
        return out

    def to_complex(self) -> np.ndarray:
        return np.array(
            [[e.to_complex() for e in row] for row in self.entries], dtype=complex
        )

    def to_json_dict(self) -> dict:
        def s(x: Fraction) -> str:
            return f"{x.numerator}/{x.denominator}"

        return {
            "d": self.d,
            "m": self.m,
            "entries": [[[s(e.a), s(e.b)] for e in row] for row in self.entries],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_json_dict())

    @classmethod
    def from_json_dict(cls, data: dict) -> "QuadMatrix":
        d = int(data["d"])
        return cls(
            [
                [QuadElem(Fraction(x), Fraction(y), d) for x, y in row]
                for row in data["entries"]
            ]
        )

    @classmethod
    def from_json(cls, text: str) -> "QuadMatrix":
        return cls.from_json_dict(json.loads(text))

    def __repr__(self) -> str:
        return f"QuadMatrix(m={self.m}, d={self.d})"


@dataclass(frozen=True)
class HermitianDiagForm:
    """Diagonal Hermitian form with positive rational entries b_1..b_m."""

    diag: tuple[Fraction, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "diag", tuple(_frac(b) for b in self.diag))
        if not self.diag or any(b <= 0 for b in self.diag):
            raise ValueError("diagonal entries must be positive rationals")

    @property
    def m(self) -> int:
        return len(self.diag)

    def matrix(self, d: int) -> QuadMatrix:
        return QuadMatrix.diagonal(self.diag, d)

    def matrix_float(self) -> np.ndarray:
        return np.diag([float(b) for b in self.diag])


# ---------------------------------------------------------------------------
# Group membership identities, exact and floating
# ---------------------------------------------------------------------------


def unitary_defect(M: QuadMatrix, H: QuadMatrix) -> QuadMatrix:
    """tM H conj(M) - H; zero iff M preserves the form H."""
    return (M.transpose() @ H @ M.conj()) - H


def in_unitary_group(M: QuadMatrix, H: QuadMatrix) -> bool:
    return unitary_defect(M, H).is_zero()


def skew_defect(S: QuadMatrix, B: HermitianDiagForm) -> QuadMatrix:
    """tS B + B conj(S); zero characterizes the Cayley image of U(B)."""
    Bm = B.matrix(S.d)
    return (S.transpose() @ Bm) + (Bm @ S.conj())


def in_cayley_image(S: QuadMatrix, B: HermitianDiagForm) -> bool:
    return skew_defect(S, B).is_zero()


def unitary_defect_float(M: np.ndarray, B: HermitianDiagForm) -> float:
    Bm = B.matrix_float()
    return float(np.max(np.abs(M.T @ Bm @ M.conj() - Bm)))


# ---------------------------------------------------------------------------
# Cayley transform
# ---------------------------------------------------------------------------


def cayley(N):
    """2(I+N)^{-1} - I, an involution; accepts complex arrays or QuadMatrix.

    Raises on singular I + N.
    """
    if isinstance(N, QuadMatrix):
        eye = QuadMatrix.identity(N.m, N.d)
        return ((eye + N).inverse()).scale(2) - eye
    A = np.asarray(N, dtype=complex)
    eye = np.eye(A.shape[0], dtype=complex)
    if abs(np.linalg.det(eye + A)) < 1e-14:
        raise ZeroDivisionError("singular I + N")
    return 2.0 * np.linalg.inv(eye + A) - eye


def constraint_fill(
    x_upper: dict[tuple[int, int], RationalLike],
    y_upper: dict[tuple[int, int], RationalLike],
    B: HermitianDiagForm,
    d: int,
) -> QuadMatrix:
    """Assemble S = X + Y sqrt(-d) with tS B = -B conj(S) from free data.

    Free data: x_upper and y_upper on positions j > i, plus y_upper on the
    diagonal.  The identity forces x_ji = -(b_ii/b_jj) x_ij,
    y_ji = (b_ii/b_jj) y_ij, and x_ii = 0.
    """
    m = B.m
    S = QuadMatrix.zero(m, d)
    for i in range(m):
        yi = _frac(y_upper.get((i, i), 0))
        S.entries[i][i] = QuadElem(Fraction(0), yi, d)
        for j in range(i + 1, m):
            x = _frac(x_upper.get((i, j), 0))
            y = _frac(y_upper.get((i, j), 0))
            ratio = B.diag[i] / B.diag[j]
            S.entries[i][j] = QuadElem(x, y, d)
            S.entries[j][i] = QuadElem(-ratio * x, ratio * y, d)
    return S


class ApproximationError(RuntimeError):
    """Requested tolerance not reachable; carries the rotation used."""

    def __init__(self, message: str, theta: float, achieved: float):
        super().__init__(message)
        self.theta = theta
        self.achieved = achieved


def approximate_in_Ul(
    M: np.ndarray, B: HermitianDiagForm, d: int, eps: float
) -> QuadMatrix:
    """Exactly B-unitary matrix over Q(sqrt(-d)) within eps of M.

    M must preserve B within 1e-10.  Route: rotate M off the singular set
    of the Cayley transform if needed (scalar rotations stay in U(B)),
    pass to S = cayley(M), rationalize the free entries of Re S and Im S
    by continued fractions, rebuild an exact constraint solution, and map
    back.  Exactness of tM'B conj(M') = B holds by construction and is
    re-verified; the eps bound is checked numerically and the
    rationalization is tightened until it holds.
    """
    M = np.asarray(M, dtype=complex)
    m = M.shape[0]
    if M.shape != (m, m) or m != B.m:
        raise ValueError("matrix and form sizes disagree")
    pre = unitary_defect_float(M, B)
    if pre > 1e-10:
        raise ValueError(f"input does not preserve B: defect {pre:.3e}")

    eye = np.eye(m)
    theta = 0.0
    if abs(np.linalg.det(eye + M)) < 1e-6:
        for k in range(60, -1, -1):
            cand = 2.0**-k
            if abs(np.linalg.det(eye + cmath.exp(1j * cand) * M)) >= 1e-6:
                theta = cand
                break
        else:
            raise ApproximationError(
                "no rotation clears det(I + M)", math.nan, math.inf
            )
    Mw = cmath.exp(1j * theta) * M if theta else M
    S = cayley(Mw)
    sqd = math.sqrt(d)

    delta = eps / (10.0 * m * m)
    achieved = math.inf
    for _ in range(6):
        cap = max(10, math.ceil(1.0 / delta) + 1)
        x_upper: dict[tuple[int, int], Fraction] = {}
        y_upper: dict[tuple[int, int], Fraction] = {}
        for i in range(m):
            y_upper[(i, i)] = Fraction(S[i, i].imag / sqd).limit_denominator(cap)
            for j in range(i + 1, m):
                x_upper[(i, j)] = Fraction(S[i, j].real).limit_denominator(cap)
                y_upper[(i, j)] = Fraction(S[i, j].imag / sqd).limit_denominator(cap)
        S_exact = constraint_fill(x_upper, y_upper, B, d)
        try:
            M_exact = cayley(S_exact)
        except ZeroDivisionError:
            delta /= 10.0
            continue
        if not in_unitary_group(M_exact, B.matrix(d)):
            raise AssertionError("constraint solution lost exact unitarity")
        achieved = float(np.max(np.abs(M_exact.to_complex() - M)))
        if achieved <= eps:
            return M_exact
        delta /= 10.0
    raise ApproximationError(
        f"could not reach eps = {eps:.3e} (achieved {achieved:.3e}, "
        f"rotation theta = {theta:.3e})",
        theta,
        achieved,
    )


# ---------------------------------------------------------------------------
# Fixed vectors of unipotent isometries
# ---------------------------------------------------------------------------


def _rref_kernel(A: QuadMatrix) -> list[list[QuadElem]]:
    """Exact kernel basis of A over Q(sqrt(-d))."""
    m, d = A.m, A.d
    work = [list(r) for r in A.entries]
    pivots: list[int] = []
    row = 0
    for col in range(m):
        piv = next(
            (r for r in range(row, m) if not work[r][col].is_zero()), None
        )
        if piv is None:
            continue
        work[row], work[piv] = work[piv], work[row]
        pinv = work[row][col].inv()
        work[row] = [pinv * e for e in work[row]]
        for r in range(m):
            if r == row or work[r][col].is_zero():
                continue
            factor = work[r][col]
            work[r] = [work[r][j] - factor * work[row][j] for j in range(m)]
        pivots.append(col)
        row += 1
        if row == m:
            break
    free = [c for c in range(m) if c not in pivots]
    basis = []
    for fc in free:
        vec = [qzero(d) for _ in range(m)]
        vec[fc] = qone(d)
        for r, pc in enumerate(pivots):
            vec[pc] = -work[r][fc]
        basis.append(vec)
    return basis


def form_value(H: QuadMatrix, u: Sequence[QuadElem], v: Sequence[QuadElem]) -> QuadElem:
    """H(u, v) = tu H conj(v), linear in the first argument."""
    Hvbar = H.apply([e.conj() for e in v])
    return sum((u[i] * Hvbar[i] for i in range(H.m)), qzero(H.d))


def _form_value_direct(
    H: QuadMatrix, u: Sequence[QuadElem], v: Sequence[QuadElem]
) -> QuadElem:
    acc = qzero(H.d)
    for i in range(H.m):
        for j in range(H.m):
            acc = acc + u[i] * H.entries[i][j] * v[j].conj()
    return acc


def unipotent_fixed_vector(
    M: QuadMatrix, H: QuadMatrix
) -> list[QuadElem]:
    """Exact fixed vector v of M with H(v, v) <= 0.

    Computes ker(M - I) exactly, then runs Gram-Schmidt with respect to H
    on the kernel, returning as soon as a vector of nonpositive H-square
    appears.  For a unipotent isometry of a signature (n,1) form the
    kernel meets the nonpositive cone, so the search succeeds; if every
    kernel direction has positive H-square the input was not
    unipotent-parabolic and a ValueError is raised.
    """
    if M.m != H.m or M.d != H.d:
        raise ValueError("matrix and form sizes disagree")
    kernel = _rref_kernel(M - QuadMatrix.identity(M.m, M.d))
    if not kernel:
        raise ValueError("no fixed vectors: kernel of M - I is trivial")
    basis = [list(v) for v in kernel]
    ortho: list[tuple[list[QuadElem], QuadElem]] = []
    for vec in basis:
        w = list(vec)
        for prev, prev_sq in ortho:
            coef = _form_value_direct(H, w, prev) * prev_sq.inv()
            w = [w[i] - coef * prev[i] for i in range(len(w))]
        if all(e.is_zero() for e in w):
            continue
        sq = _form_value_direct(H, w, w)
        if not sq.is_rational():
            raise AssertionError("Hermitian square must be rational")
        if sq.a <= 0:
            return w
        ortho.append((w, sq))
    raise ValueError("kernel of M - I is H-positive: not unipotent-parabolic")


def root_of_unity_power(
    M: QuadMatrix, x: Sequence[QuadElem], bound: int | None = None
) -> int:
    """Smallest k with M^k x = x, for an exact eigenvector x of M.

    The eigenvalue is read off from the first nonzero coordinate and
    verified on all of x.  Eigenvalues of isometries defined over the
    ring of integers are roots of unity; the search bound 6(n+1) covers
    the possible orders with room to spare.  Raises if x is not an
    eigenvector or no power works within the bound.
    """
    vals = M.apply(list(x))
    lead = next((i for i, e in enumerate(x) if not e.is_zero()), None)
    if lead is None:
        raise ValueError("zero vector")
    alpha = vals[lead] / x[lead]
    for i in range(M.m):
        if vals[i] != alpha * x[i]:
            raise ValueError("not an eigenvector of M")
    k_max = bound if bound is not None else 6 * M.m
    power = qone(M.d)
    for k in range(1, k_max + 1):
        power = power * alpha
        if power == qone(M.d):
            return k
    raise ValueError(f"eigenvalue is not a root of unity of order <= {k_max}")


# ---------------------------------------------------------------------------
# Exact Heisenberg isometries and the polarized form
# ---------------------------------------------------------------------------


def polarized_form_matrix(n: int, d: int) -> QuadMatrix:
    """Matrix of 2 Re(a conj(b)) + |v|^2 in the basis with two null vectors."""
    if n < 1:
        raise ValueError("n must be at least 1")
    H = QuadMatrix.zero(n + 1, d)
    H.entries[0][1] = qone(d)
    H.entries[1][0] = qone(d)
    for j in range(2, n + 1):
        H.entries[j][j] = qone(d)
    return H


def heisenberg_matrix_exact(
    q: RationalLike, v: Sequence[QuadElem], d: int
) -> QuadMatrix:
    """Exact matrix of the Heisenberg translation with center part q*sqrt(d).

    The vertical parameter s = q sqrt(d) makes -i s = -q sqrt(-d) an
    element of the field; v may be any vector over Q(sqrt(-d)).
    """
    qf = _frac(q)
    v = list(v)
    n = len(v) + 1
    M = QuadMatrix.identity(n + 1, d)
    nrm = sum((e.norm() for e in v), Fraction(0))
    M.entries[0][1] = QuadElem(-nrm / 2, -qf, d)
    for j, e in enumerate(v):
        M.entries[0][2 + j] = -e.conj()
        M.entries[2 + j][1] = e
    return M
