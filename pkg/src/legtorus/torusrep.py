"""Closed-form computations for the (2,m) torus link representation category.

These are the explicit formulas: the determinant identity relating P_m and
Q_m, the five-case formula for mu_1, the reduced two-term complex computing
H^0/H^1, the P/Q intertwining identities, and the class-level composition
formulas

    mu2((u1',u2'), (u1,u2))   = -(u1 u1', u2 u2')
    mu2((u1',u2'), (w_j))     = -(w_1 u2', w_2 u1', w_3 u2', ...)
    mu2((w_j'),   (u1,u2))    = -(u1 w_1', u2 w_2', u1 w_3', ...)

Everything here is an independent oracle for the dualized-copy machinery in
ainfty; the two routes never share code beyond basic matrix arithmetic.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import exactalg as xa
from .ainfty import HomElement, Representation, hom_basis_order
from .freedga import pq_matrix


def sylvester_check(mats, p: int) -> bool:
    """det(P_m(A)) == (-1)^{mn} det(Q_m(A)); a theorem, exposed as an oracle."""
    mats = list(mats)
    m = len(mats)
    n = mats[0].shape[0] if mats else 1
    lhs = xa.det(pq_matrix("P", mats, p), p)
    rhs = (pow(-1, m * n, p) * xa.det(pq_matrix("Q", mats, p), p)) % p
    return lhs == rhs


def mu1_closed(rho: Representation, rho2: Representation, x: HomElement) -> HomElement:
    """The closed-form differential on Hom(rho, rho2)."""
    n, p, m = rho.n, rho.p, rho.m
    A, B = rho.A, rho2.A
    out: dict[str, np.ndarray] = {}

    def add(base, mat):
        out[base] = (out.get(base, 0) + mat) % p

    if x.degree == 2:
        return HomElement(n, p, 3, {})
    if x.degree == 1:
        for j in range(1, m + 1):
            w = x.coeffs.get(f"a{j}")
            if w is None:
                continue
            left = pq_matrix("P", A[:j - 1], p, n)
            right = pq_matrix("P", B[j:], p, n)
            add("b1", left @ w @ right % p)
            qleft = pq_matrix("Q", A[j:], p, n)
            qright = pq_matrix("Q", B[:j - 1], p, n)
            add("b2", (-qleft @ w @ qright) % p)
        v1 = x.coeffs.get("x1")
        if v1 is not None:
            add("b1", (-v1 @ rho2.T1_inv) % p)
        v2 = x.coeffs.get("x2")
        if v2 is not None:
            add("b2", rho.T2 @ v2 % p)
        return HomElement(n, p, 2, out)

    # degree 0
    u1 = x.coeffs.get("y1")
    u2 = x.coeffs.get("y2")
    odd = m % 2 == 1
    if u1 is not None:
        for j in range(1, m + 1):
            if j % 2 == 1:
                add(f"a{j}", u1 @ B[j - 1] % p)
            else:
                add(f"a{j}", (-A[j - 1] @ u1) % p)
        add("x1", (-u1) % p)
        if odd:
            add("x2", rho.T2_inv @ u1 @ rho2.T2 % p)
        else:
            add("x1", rho.T1_inv @ u1 @ rho2.T1 % p)
    if u2 is not None:
        for j in range(1, m + 1):
            if j % 2 == 1:
                add(f"a{j}", (-A[j - 1] @ u2) % p)
            else:
                add(f"a{j}", u2 @ B[j - 1] % p)
        add("x2", (-u2) % p)
        if odd:
            add("x1", rho.T1_inv @ u2 @ rho2.T1 % p)
        else:
            add("x2", rho.T2_inv @ u2 @ rho2.T2 % p)
    return HomElement(n, p, 1, out)


def pq_intertwine_check(A, Aprime, u1, u2, p: int) -> bool:
    """Intertwining identities for P_m and Q_m under the H^0 hypotheses.

    Raises if the hypotheses u1 A'_j = A_j u2 (j odd), A_j u1 = u2 A'_j
    (j even) fail; under them the identities are a theorem.
    """
    A, Aprime = list(A), list(Aprime)
    m = len(A)
    for j in range(1, m + 1):
        if j % 2 == 1:
            ok = not ((u1 @ Aprime[j - 1] - A[j - 1] @ u2) % p).any()
        else:
            ok = not ((A[j - 1] @ u1 - u2 @ Aprime[j - 1]) % p).any()
        if not ok:
            raise ValueError(f"intertwining hypothesis fails at j={j}")
    uj = u2 if m % 2 == 1 else u1
    ui = u1 if m % 2 == 1 else u2
    ok_p = not ((u1 @ pq_matrix("P", Aprime, p) - pq_matrix("P", A, p) @ uj) % p).any()
    ok_q = not ((pq_matrix("Q", A, p) @ u2 - ui @ pq_matrix("Q", Aprime, p)) % p).any()
    return ok_p and ok_q


# ---------------------------------------------------------------------------
# Cohomology via the reduced two-term complex

@dataclass
class H0Class:
    u1: np.ndarray
    u2: np.ndarray


@dataclass
class H1Class:
    w: tuple


def reduced_complex_matrix(rho: Representation, rho2: Representation) -> np.ndarray:
    """(u1, u2) -> (u1 A'_1 - A_1 u2, u2 A'_2 - A_2 u1, ...), vectorized."""
    n, p, m = rho.n, rho.p, rho.m
    n2 = n * n
    ident = xa.eye(n)
    mat = xa.zeros(m * n2, 2 * n2)
    for j in range(1, m + 1):
        row = (j - 1) * n2
        src, other = (0, 1) if j % 2 == 1 else (1, 0)
        # u_src A'_j - A_j u_other
        mat[row:row + n2, src * n2:(src + 1) * n2] = xa.kron(ident, rho2.A[j - 1].T, p)
        blk = mat[row:row + n2, other * n2:(other + 1) * n2]
        mat[row:row + n2, other * n2:(other + 1) * n2] = (blk - xa.kron(rho.A[j - 1], ident, p)) % p
    return mat


class TorusHomClosed:
    """H^0/H^1/H^2 of Hom(rho, rho2) from the reduced complex, with
    canonical coset representatives for degree-1 classes."""

    def __init__(self, rho: Representation, rho2: Representation):
        if (rho.m, rho.n, rho.p) != (rho2.m, rho2.n, rho2.p):
            raise ValueError("mismatched objects")
        self.rho, self.rho2 = rho, rho2
        self.n, self.p, self.m = rho.n, rho.p, rho.m
        self.matrix = reduced_complex_matrix(rho, rho2)
        rk, ker = xa.rank_kernel(self.matrix, self.p)
        self.h0_kernel = ker
        self.image_rows, self.image_pivots = xa.row_space(self.matrix.T, self.p)
        n2 = self.n * self.n
        self.dims = {0: ker.shape[1], 1: self.m * n2 - rk, 2: 0}

    def h0_basis(self) -> list[H0Class]:
        n, n2 = self.n, self.n * self.n
        return [H0Class(col[:n2].reshape(n, n) % self.p, col[n2:].reshape(n, n) % self.p)
                for col in self.h0_kernel.T]

    def h1_reduce(self, w) -> np.ndarray:
        v = np.concatenate([np.mod(np.array(wj, dtype=np.int64), self.p).reshape(-1)
                            for wj in w])
        return xa.coset_reduce(v, self.image_rows, self.image_pivots, self.p)

    def h1_class(self, w) -> H1Class:
        v = self.h1_reduce(w)
        n, n2 = self.n, self.n * self.n
        return H1Class(tuple(v[j * n2:(j + 1) * n2].reshape(n, n) for j in range(self.m)))

    def h1_basis(self) -> list[H1Class]:
        n2 = self.n * self.n
        reduced = np.vstack([
            self.h1_reduce([xa.zeros(self.n, self.n) if t != j else _unit_mat(self.n, a, b)
                            for t in range(self.m)])
            for j in range(self.m) for a in range(self.n) for b in range(self.n)
        ])
        rows, _ = xa.row_space(reduced, self.p)
        n = self.n
        return [H1Class(tuple(row[j * n2:(j + 1) * n2].reshape(n, n) for j in range(self.m)))
                for row in rows]

    def same_h1(self, w, w2) -> bool:
        return np.array_equal(self.h1_reduce(w), self.h1_reduce(w2))

    def cocycle_from_w(self, w) -> HomElement:
        """The unique mu_1-cocycle with the given a-part (x-parts forced)."""
        n, p, m = self.n, self.p, self.m
        A, B = self.rho.A, self.rho2.A
        s1 = xa.zeros(n, n)
        s2 = xa.zeros(n, n)
        for j in range(1, m + 1):
            wj = np.mod(np.array(w[j - 1], dtype=np.int64), p)
            s1 = (s1 + pq_matrix("P", A[:j - 1], p, n) @ wj @ pq_matrix("P", B[j:], p, n)) % p
            s2 = (s2 + pq_matrix("Q", A[j:], p, n) @ wj @ pq_matrix("Q", B[:j - 1], p, n)) % p
        v1 = s1 @ self.rho2.T1 % p              # solves v1 (T1')^{-1} = s1
        v2 = self.rho.T2_inv @ s2 % p           # solves T2 v2 = s2
        coeffs = {f"a{j}": np.mod(np.array(w[j - 1], dtype=np.int64), p) for j in range(1, m + 1)}
        coeffs["x1"] = v1
        coeffs["x2"] = v2
        return HomElement(n, p, 1, coeffs)

    def h0_to_element(self, cls: H0Class) -> HomElement:
        return HomElement(self.n, self.p, 0, {"y1": cls.u1, "y2": cls.u2})


def _unit_mat(n, a, b):
    m_ = xa.zeros(n, n)
    m_[a, b] = 1
    return m_


def cohomology_closed(rho: Representation, rho2: Representation) -> TorusHomClosed:
    return TorusHomClosed(rho, rho2)


def mu2_closed(x, y, p: int):
    """Class-level composition; x in Hom(rho',rho''), y in Hom(rho,rho')."""
    if isinstance(x, H0Class) and isinstance(y, H0Class):
        return H0Class((-y.u1 @ x.u1) % p, (-y.u2 @ x.u2) % p)
    if isinstance(x, H0Class) and isinstance(y, H1Class):
        return H1Class(tuple(
            (-(wj @ (x.u2 if j % 2 == 1 else x.u1))) % p
            for j, wj in enumerate(y.w, start=1)))
    if isinstance(x, H1Class) and isinstance(y, H0Class):
        return H1Class(tuple(
            (-((y.u1 if j % 2 == 1 else y.u2) @ wj)) % p
            for j, wj in enumerate(x.w, start=1)))
    raise ValueError("composition lands in degree 2, which vanishes")
