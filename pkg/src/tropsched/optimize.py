"""Minimize x~ A x over max-plus vectors x subject to B x <= x and g <= x <= h.

Two solvers cover the same problem shape.  solve_general handles any A by
enumerating bounded products of A and powers of B, which is exponential in
the dimension and meant for cross-checking at small sizes.  solve_rank_one
requires A = p q~ and assembles the optimum and its parametric solution
family in O(n^3) time.  Both return a SolutionFamily describing every
regular optimal solution as x = G u with g <= u <= u_high, u nonzero.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import product

from .semiring import (
    BOTTOM,
    ONE,
    PositiveCycleError,
    TropMatrix,
    TropScalar,
    TropVector,
    _scaled_outer_sum,
)

__all__ = [
    "InfeasibleError",
    "RankOneProblem",
    "GeneralProblem",
    "SolutionFamily",
    "solve_rank_one",
    "solve_general",
    "family_member",
    "family_contains",
]


class InfeasibleError(ValueError):
    """The constraints admit no regular solution.

    kind is "cycle" (the relation B x <= x forces an impossible loop;
    cycle carries the witness node indices) or "bounds" (the box [g, h]
    conflicts with the linear constraints).
    """

    def __init__(self, message, *, kind, cycle=None):
        super().__init__(message)
        self.kind = kind
        self.cycle = cycle


def _square_dim(mat, name):
    if not mat.is_square:
        raise ValueError(f"{name} must be square, got {mat.shape}")
    return mat.shape[0]


@dataclass(frozen=True)
class RankOneProblem:
    """Minimize (x~ p)(q~ x) subject to B x <= x and g <= x <= h."""

    p: TropVector
    q: TropVector
    B: TropMatrix
    g: TropVector
    h: TropVector

    def __post_init__(self):
        n = _square_dim(self.B, "B")
        for name in ("p", "q", "g", "h"):
            if len(getattr(self, name)) != n:
                raise ValueError(f"{name} must have length {n}")
        if not self.p.is_nonzero:
            raise ValueError("p must be a nonzero vector")
        if not self.q.is_nonzero:
            raise ValueError("q must be a nonzero vector")
        if not self.h.is_regular:
            raise ValueError("upper bound h must be regular")
        if (self.q.conj() @ self.p).is_bottom:
            raise ValueError("degenerate objective: q~ p is bottom")

    @property
    def n(self):
        return len(self.p)

    def objective(self, x):
        """Objective value (x~ p)(q~ x) of a regular vector x."""
        return (x.conj() @ self.p) * (self.q.conj() @ x)


@dataclass(frozen=True)
class GeneralProblem:
    """Minimize x~ A x subject to B x <= x and g <= x <= h."""

    A: TropMatrix
    B: TropMatrix
    g: TropVector
    h: TropVector

    def __post_init__(self):
        n = _square_dim(self.A, "A")
        if self.B.shape != (n, n):
            raise ValueError(f"B must be {n}x{n}")
        for name in ("g", "h"):
            if len(getattr(self, name)) != n:
                raise ValueError(f"{name} must have length {n}")
        if not self.h.is_regular:
            raise ValueError("upper bound h must be regular")
        if self.A.spectral_radius().is_bottom:
            raise ValueError("degenerate objective: A has bottom spectral radius")

    @property
    def n(self):
        return self.A.shape[0]

    def objective(self, x):
        """Objective value x~ A x of a regular vector x."""
        return x.conj() @ (self.A @ x)


@dataclass(frozen=True)
class SolutionFamily:
    """All regular optimal solutions: x = G u, u nonzero, u_low <= u <= u_high.

    The optimum is theta.  The defining constraint data (B, g, h) is kept
    so membership of candidate solutions can be re-checked later.
    """

    theta: TropScalar
    G: TropMatrix
    u_low: TropVector
    u_high: TropVector
    B: TropMatrix
    g: TropVector
    h: TropVector

    def __post_init__(self):
        if not (self.u_low <= self.u_high):
            raise ValueError("inconsistent bounds: u_low exceeds u_high")

    @property
    def n(self):
        return len(self.u_high)


def _constraint_star(B):
    try:
        return B.star()
    except PositiveCycleError as e:
        raise InfeasibleError(
            f"infeasible linear constraint: {e}", kind="cycle", cycle=e.cycle
        ) from e


def _check_box_gate(star, g, h):
    gate = (h.conj() @ star) @ g
    if not (gate <= ONE):
        raise InfeasibleError(
            f"box and linear constraints conflict (h~ B* g = {gate} > 0)",
            kind="bounds",
        )


def solve_rank_one(prob):
    """Closed-form O(n^3) solution family for a rank-one objective."""
    B, p, q, g, h = prob.B, prob.p, prob.q, prob.g, prob.h
    n = prob.n
    star = _constraint_star(B)
    _check_box_gate(star, g, h)
    hc = h.conj()
    qc = q.conj()

    vs = []  # B^i p   for i = 0..n-2
    ws = []  # q~ B^j  for j = 0..n-2
    cv, cw = p, qc
    for _ in range(n - 1):
        vs.append(cv)
        ws.append(cw)
        cv = B @ cv
        cw = cw @ B

    theta = (qc @ star) @ p
    if vs:
        a = [hc @ v for v in vs]
        b = [w @ g for w in ws]
        bpref = []
        cur = BOTTOM
        for val in b:
            cur = cur + val
            bpref.append(cur)
        for i in range(n - 1):
            theta = theta + a[i] * bpref[n - 2 - i]
    assert not theta.is_bottom, "optimal value fell to bottom"

    wpref = []
    cur = TropVector.zeros(n)
    for w in ws:
        cur = cur + w
        wpref.append(cur)
    pairs = [(vs[i], wpref[n - 2 - i]) for i in range(len(vs))]
    G = _scaled_outer_sum(star, theta.inv(), pairs)

    u_high = (hc @ G).conj()
    return SolutionFamily(
        theta=theta, G=G, u_low=g, u_high=u_high, B=B, g=g, h=h
    )


def solve_general(prob):
    """Enumerative solution family for an arbitrary objective matrix.

    Runs in time exponential in the dimension; intended as an oracle for
    small problems (dimension at most about 8).
    """
    A, B, g, h = prob.A, prob.B, prob.g, prob.h
    n = prob.n
    star = _constraint_star(B)
    _check_box_gate(star, g, h)
    hc = h.conj()

    powers = [TropMatrix.identity(n)]
    for _ in range(n - 1):
        powers.append(powers[-1] @ B)

    theta = BOTTOM
    for k in range(1, n + 1):
        # trace of the sum of A B^{i1} ... A B^{ik} over i1+...+ik <= n-k
        tr_k = BOTTOM
        limit = n - k
        for comb in product(range(limit + 1), repeat=k):
            if sum(comb) > limit:
                continue
            m = None
            for i in comb:
                seg = A @ powers[i] if i else A
                m = seg if m is None else m @ seg
            tr_k = tr_k + m.trace()
        theta = theta + tr_k ** Fraction(1, k)
    for k in range(1, n):
        # h~ B^{i0} A B^{i1} ... A B^{ik} g over i0+...+ik <= n-k-1
        val_k = BOTTOM
        limit = n - k - 1
        for comb in product(range(limit + 1), repeat=k + 1):
            if sum(comb) > limit:
                continue
            r = hc @ powers[comb[0]] if comb[0] else hc
            for i in comb[1:]:
                r = r @ A
                if i:
                    r = r @ powers[i]
            val_k = val_k + (r @ g)
        theta = theta + val_k ** Fraction(1, k)
    assert not theta.is_bottom, "optimal value fell to bottom"

    try:
        G = (theta.inv() * A + B).star()
    except PositiveCycleError as e:  # ruled out by the choice of theta
        raise AssertionError(f"generator star diverged: {e}") from e
    u_high = (hc @ G).conj()
    return SolutionFamily(
        theta=theta, G=G, u_low=g, u_high=u_high, B=B, g=g, h=h
    )


def family_member(fam, u):
    """Solution x = G u for an admissible parameter vector u."""
    if len(u) != fam.n:
        raise ValueError(f"parameter vector must have length {fam.n}")
    if not u.is_nonzero:
        raise ValueError("parameter vector must be nonzero")
    for i in range(fam.n):
        val = u[i]
        if val < fam.u_low[i]:
            raise ValueError(
                f"parameter u[{i}] = {val} is below the lower bound {fam.u_low[i]}"
            )
        if val > fam.u_high[i]:
            raise ValueError(
                f"parameter u[{i}] = {val} exceeds the upper bound {fam.u_high[i]}"
            )
    return fam.G @ u


def family_contains(fam, x, objective):
    """Whether the regular vector x is feasible with objective value theta."""
    if len(x) != fam.n:
        raise ValueError(f"candidate vector must have length {fam.n}")
    if not x.is_regular:
        raise ValueError("membership test needs a regular vector")
    if not ((fam.B @ x) <= x):
        return False
    if not (fam.g <= x):
        return False
    if not (x <= fam.h):
        return False
    return objective(x) == fam.theta
