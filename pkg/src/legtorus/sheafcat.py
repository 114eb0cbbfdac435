"""Microlocal-rank-n sheaves on the rainbow-closure front, and the functor
from the representation side.

A sheaf object is coordinatized by a tuple (A_1..A_m) with P_m(A) invertible;
the leg maps phi_1..phi_{m+1} : V -> V^2 and psi : V^2 -> V are recovered by
composing the 2x2 block chain [[0,1],[1,A_j]], so that the final k arrows
give phi_k (+) phi_{k+1}.  Ext^0 is the space of chain morphisms, Ext^1 the
space of extensions in the normalized Omega-block form, and the compositions
follow the pullback/pushforward formulas.  The equivalence functor transposes
tuples, sends an H^0 class (u1,u2) to -(u2^T, u1^T) and an H^1 class to the
entrywise transpose.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import exactalg as xa
from .ainfty import Representation
from .freedga import pq_matrix
from .torusrep import H0Class, H1Class


class SheafObject:
    """A microlocal rank-n sheaf on the (2,m) torus link front."""

    def __init__(self, m: int, n: int, p: int, mats):
        self.m, self.n, self.p = m, n, xa.check_field(p)
        self.A = tuple(np.mod(np.array(a, dtype=np.int64), p) for a in mats)
        if len(self.A) != m or any(a.shape != (n, n) for a in self.A):
            raise ValueError("need m matrices of size n x n")
        if xa.det(pq_matrix("P", self.A, p, n), p) == 0:
            raise ValueError("P_m(A) singular: crossing condition fails")
        self._phi = None
        self._psi = None

    def key(self):
        return tuple(bytes(a.astype(np.int64)) for a in self.A)

    def __repr__(self):
        return f"SheafObject(m={self.m}, n={self.n}, p={self.p}, A={[a.tolist() for a in self.A]})"

    def omega(self, j: int) -> np.ndarray:
        """The 2x2 block [[0, 1], [1, A_j]]."""
        n, p = self.n, self.p
        return np.block([[xa.zeros(n, n), xa.eye(n)], [xa.eye(n), self.A[j - 1]]]) % p

    def _derive(self):
        n, p = self.n, self.p
        phis = [None] * (self.m + 2)
        acc = xa.eye(2 * n)
        # composing the final k arrows: acc_k = omega(1) ... omega(k)
        phis[1] = np.vstack([xa.zeros(n, n), xa.eye(n)])
        for k in range(1, self.m + 1):
            acc = (acc @ self.omega(k)) % p
            phis[k + 1] = acc[:, n:]
            if k == 1:
                phis[1] = acc[:, :n]
        self._phi = phis
        self._psi = np.hstack([xa.zeros(n, n), xa.eye(n)])

    @property
    def psi(self) -> np.ndarray:
        if self._psi is None:
            self._derive()
        return self._psi

    def phi(self, k: int) -> np.ndarray:
        if self._phi is None:
            self._derive()
        return self._phi[k]

    def check_invariants(self) -> bool:
        n, p = self.n, self.p
        if not np.array_equal((self.psi @ self.phi(1)) % p, xa.eye(n)):
            return False
        if xa.det((self.psi @ self.phi(self.m + 1)) % p, p) == 0:
            return False
        for i in range(1, self.m + 1):
            juxt = np.hstack([self.phi(i), self.phi(i + 1)])
            if xa.rank(juxt, p) != 2 * n:
                return False
        return True


def build_sheaf_object(mats, p: int) -> SheafObject:
    mats = [np.array(a, dtype=np.int64) for a in mats]
    n = mats[0].shape[0]
    return SheafObject(len(mats), n, p, mats)


def enumerate_sheaf_objects(m: int, n: int, p: int, budget: int = 2_000_000):
    import itertools
    total = p ** (n * n * m)
    if total > budget:
        raise RuntimeError(f"enumeration needs {total} tuples")
    out = []
    for flat in itertools.product(range(p), repeat=n * n * m):
        mats = [np.array(flat[i * n * n:(i + 1) * n * n], dtype=np.int64).reshape(n, n)
                for i in range(m)]
        if xa.det(pq_matrix("P", mats, p, n), p) != 0:
            out.append(SheafObject(m, n, p, mats))
    return out


# ---------------------------------------------------------------------------
# Ext^0

def _ext0_system(F: SheafObject, G: SheafObject) -> np.ndarray:
    """Rows of A'_k u_1 - u_2 A_k (k even) and A'_k u_2 - u_1 A_k (k odd)."""
    n, p, m = F.n, F.p, F.m
    n2 = n * n
    ident = xa.eye(n)
    mat = xa.zeros(m * n2, 2 * n2)
    for k in range(1, m + 1):
        row = (k - 1) * n2
        hit, other = (0, 1) if k % 2 == 0 else (1, 0)
        # A'_k u_hit - u_other A_k = 0   (hit slot multiplied on the left by A'_k)
        mat[row:row + n2, hit * n2:(hit + 1) * n2] = xa.kron(G.A[k - 1], ident, p)
        blk = mat[row:row + n2, other * n2:(other + 1) * n2]
        mat[row:row + n2, other * n2:(other + 1) * n2] = (blk - xa.kron(ident, F.A[k - 1].T, p)) % p
    return mat


def ext0(F: SheafObject, G: SheafObject) -> list[tuple[np.ndarray, np.ndarray]]:
    """Basis of Ext^0(F, G) as pairs (u1, u2)."""
    if (F.m, F.p) != (G.m, G.p):
        raise ValueError("objects on different fronts")
    n = F.n
    n2 = n * n
    _, ker = xa.rank_kernel(_ext0_system(F, G), F.p)
    return [(col[:n2].reshape(n, n) % F.p, col[n2:].reshape(n, n) % F.p)
            for col in ker.T]


def ext0_dim(F, G) -> int:
    return len(ext0(F, G))


def morphism_data(F: SheafObject, G: SheafObject, u):
    """Full chain data (u_0..u_{m+1}, v) of a morphism from (u1, u2)."""
    u1, u2 = u
    us = [u1]  # u_0 = u_1
    for k in range(1, F.m + 2):
        us.append(u1 if k % 2 == 1 else u2)
    v = np.block([[u2, xa.zeros(F.n, F.n)], [xa.zeros(F.n, F.n), u1]]) % F.p
    return us, v


def check_morphism(F: SheafObject, G: SheafObject, u) -> bool:
    """Verify the commuting chain diagram for a morphism (u1,u2): F -> G."""
    n, p, m = F.n, F.p, F.m
    us, v = morphism_data(F, G, u)
    # rightmost square: v . omega_F(1) = omega_G(1) . diag(u_1, u_2)
    lhs = (v @ F.omega(1)) % p
    rhs = (G.omega(1) @ _diag2(us[1], us[2], p)) % p
    if not np.array_equal(lhs, rhs):
        return False
    for k in range(2, m + 1):
        lhs = (_diag2(us[k - 1], us[k], p) @ F.omega(k)) % p
        rhs = (G.omega(k) @ _diag2(us[k], us[k + 1], p)) % p
        if not np.array_equal(lhs, rhs):
            return False
    # top square: u_0 psi = psi' v
    return np.array_equal((us[0] @ F.psi) % p, (G.psi @ v) % p)


def _diag2(a, b, p):
    n = a.shape[0]
    return np.block([[a, xa.zeros(n, n)], [xa.zeros(n, n), b]]) % p


def compose00(u2_, u1_, p: int):
    """(u' o u) for u: F -> G, u': G -> H, componentwise products."""
    return ((u2_[0] @ u1_[0]) % p, (u2_[1] @ u1_[1]) % p)


# ---------------------------------------------------------------------------
# Ext^1

class Ext1Space:
    """(End V)^m modulo the image subspace, with canonical coset reps."""

    def __init__(self, F: SheafObject, G: SheafObject):
        if (F.m, F.n, F.p) != (G.m, G.n, G.p):
            raise ValueError("mismatched objects")
        self.F, self.G = F, G
        self.n, self.p, self.m = F.n, F.p, F.m
        n, p, m = self.n, self.p, self.m
        n2 = n * n
        ident = xa.eye(n)
        # image: (u1 A_1 - A'_1 u2, u2 A_2 - A'_2 u1, ...) with parity alternation
        mat = xa.zeros(m * n2, 2 * n2)
        for k in range(1, m + 1):
            row = (k - 1) * n2
            hit, other = (0, 1) if k % 2 == 1 else (1, 0)
            # u_hit A_k - A'_k u_other
            mat[row:row + n2, hit * n2:(hit + 1) * n2] = xa.kron(ident, F.A[k - 1].T, p)
            blk = mat[row:row + n2, other * n2:(other + 1) * n2]
            mat[row:row + n2, other * n2:(other + 1) * n2] = (blk - xa.kron(G.A[k - 1], ident, p)) % p
        self.image_matrix = mat
        self.image_rows, self.image_pivots = xa.row_space(mat.T, p)
        self.dim = m * n2 - len(self.image_pivots)

    def reduce(self, w) -> np.ndarray:
        v = np.concatenate([np.mod(np.array(wj, dtype=np.int64), self.p).reshape(-1)
                            for wj in w])
        return xa.coset_reduce(v, self.image_rows, self.image_pivots, self.p)

    def cls(self, w):
        v = self.reduce(w)
        n, n2 = self.n, self.n * self.n
        return tuple(v[j * n2:(j + 1) * n2].reshape(n, n) for j in range(self.m))

    def same(self, w, w2) -> bool:
        return np.array_equal(self.reduce(w), self.reduce(w2))

    def basis(self):
        n, n2 = self.n, self.n * self.n
        rows = []
        for j in range(self.m):
            for a in range(n):
                for b in range(n):
                    w = [xa.zeros(n, n) for _ in range(self.m)]
                    w[j][a, b] = 1
                    rows.append(self.reduce(w))
        span, _ = xa.row_space(np.vstack(rows), self.p)
        return [tuple(row[j * n2:(j + 1) * n2].reshape(n, n) for j in range(self.m))
                for row in span]


def ext1(F: SheafObject, G: SheafObject) -> Ext1Space:
    return Ext1Space(F, G)


def ext1_dim(F, G) -> int:
    return Ext1Space(F, G).dim


def extension_from_class(w, F: SheafObject, G: SheafObject):
    """Middle object of the extension 0 -> G -> E -> F -> 0 with class w.

    Returns (middle, Psi, Omegas): the middle is the rank-2n sheaf object with
    block tuple [[A'_j, w_j], [0, A_j]], Psi is the fixed projection-normal
    form and Omegas the 4-block chain maps.
    """
    n, p, m = F.n, F.p, F.m
    if len(w) != m:
        raise ValueError("class needs m components")
    mid = SheafObject(m, 2 * n, p, [
        np.block([[G.A[j], np.mod(np.array(w[j], dtype=np.int64), p)],
                  [xa.zeros(n, n), F.A[j]]]) % p
        for j in range(m)
    ])
    omegas = [mid.omega(j) for j in range(1, m + 1)]
    psi_mid = mid.psi
    return mid, psi_mid, omegas


def extension_inclusion(n: int, p: int):
    """G -> middle component maps: V -> V^2 is (1;0), V^2 -> V^4 in blocks."""
    inc_v = np.vstack([xa.eye(n), xa.zeros(n, n)])
    inc_v2 = np.block([
        [xa.eye(n), xa.zeros(n, n)],
        [xa.zeros(n, n), xa.zeros(n, n)],
        [xa.zeros(n, n), xa.eye(n)],
        [xa.zeros(n, n), xa.zeros(n, n)],
    ]) % p
    return inc_v, inc_v2


def extension_projection(n: int, p: int):
    """middle -> F component maps: V^2 -> V is (0 1), V^4 -> V^2 in blocks."""
    proj_v = np.hstack([xa.zeros(n, n), xa.eye(n)])
    proj_v2 = np.block([
        [xa.zeros(n, n), xa.eye(n), xa.zeros(n, n), xa.zeros(n, n)],
        [xa.zeros(n, n), xa.zeros(n, n), xa.zeros(n, n), xa.eye(n)],
    ]) % p
    return proj_v, proj_v2


def check_extension_exact(w, F: SheafObject, G: SheafObject) -> bool:
    """Componentwise short exactness and chain compatibility of the middle."""
    n, p, m = F.n, F.p, F.m
    mid, psi_mid, _ = extension_from_class(w, F, G)
    inc_v, inc_v2 = extension_inclusion(n, p)
    proj_v, proj_v2 = extension_projection(n, p)
    # componentwise short exact: proj o inc = 0 with the right ranks
    if ((proj_v @ inc_v) % p).any() or ((proj_v2 @ inc_v2) % p).any():
        return False
    if xa.rank(inc_v, p) != n or xa.rank(proj_v, p) != n:
        return False
    if xa.rank(inc_v2, p) != 2 * n or xa.rank(proj_v2, p) != 2 * n:
        return False
    # inclusion and projection are chain maps against the Omega chains
    for j in range(1, m + 1):
        if not np.array_equal((mid.omega(j) @ inc_v2) % p, (inc_v2 @ G.omega(j)) % p):
            return False
        if not np.array_equal((proj_v2 @ mid.omega(j)) % p, (F.omega(j) @ proj_v2) % p):
            return False
    if not np.array_equal((psi_mid @ inc_v2) % p, (inc_v @ G.psi) % p):
        return False
    if not np.array_equal((proj_v @ psi_mid) % p, (F.psi @ proj_v2) % p):
        return False
    return mid.check_invariants()


# ---------------------------------------------------------------------------
# Compositions with Ext^1

def compose01(wprime, u, p: int):
    """e' o u: pullback of the extension e' = (w'_j) along u = (u1, u2)."""
    u1, u2 = u
    return tuple((wj @ (u2 if j % 2 == 1 else u1)) % p
                 for j, wj in enumerate(wprime, start=1))


def compose10(uprime, w, p: int):
    """u' o e: pushforward of e = (w_j) along u' = (u'_1, u'_2)."""
    u1, u2 = uprime
    return tuple(((u1 if j % 2 == 1 else u2) @ wj) % p
                 for j, wj in enumerate(w, start=1))


def pullback_check(wprime, u, F: SheafObject, G: SheafObject, H: SheafObject) -> bool:
    """Oracle for compose01: the pullback diagram with U_i = diag(1, u_i) and
    W = diag(1, u2, 1, u1) must commute against the normalized Omega chains.

    Here e' = (w'_j) is an extension of G by H and u = (u1, u2): F -> G; the
    pullback u*e' is the extension of F by H with data (w'_j u_{j+1}).
    """
    n, p, m = F.n, F.p, F.m
    u1, u2 = u
    w_pull = compose01(wprime, u, p)
    mid_orig, _, _ = extension_from_class(wprime, G, H)
    mid_pull, _, _ = extension_from_class(w_pull, F, H)
    big_w = np.block([
        [xa.eye(n), xa.zeros(n, n), xa.zeros(n, n), xa.zeros(n, n)],
        [xa.zeros(n, n), u2, xa.zeros(n, n), xa.zeros(n, n)],
        [xa.zeros(n, n), xa.zeros(n, n), xa.eye(n), xa.zeros(n, n)],
        [xa.zeros(n, n), xa.zeros(n, n), xa.zeros(n, n), u1],
    ]) % p

    def u_block(k):
        uk = u1 if k % 2 == 1 else u2
        return np.block([[xa.eye(n), xa.zeros(n, n)], [xa.zeros(n, n), uk]]) % p

    def node_map(k):
        # vertical map at chain node k: W at the head, diag(U_k, U_{k+1}) beyond
        if k == 0:
            return big_w
        z = np.zeros((2 * n, 2 * n), dtype=np.int64)
        return np.block([[u_block(k), z], [z, u_block(k + 1)]]) % p

    for k in range(1, m + 1):
        lhs = (node_map(k - 1) @ mid_pull.omega(k)) % p
        rhs = (mid_orig.omega(k) @ node_map(k)) % p
        if not np.array_equal(lhs, rhs):
            return False
    return True


# ---------------------------------------------------------------------------
# The equivalence functor

def transpose_tuple(mats, p: int):
    return tuple(a.T % p for a in mats)


def functor_obj(rho: Representation) -> SheafObject:
    """Objects: entrywise transpose of the defining tuple."""
    return SheafObject(rho.m, rho.n, rho.p, [a.T % rho.p for a in rho.A])


def functor_h0(cls: H0Class, p: int):
    """H^0 class (u1, u2) -> Ext^0 element -(u2^T, u1^T)."""
    return ((-cls.u2.T) % p, (-cls.u1.T) % p)


def functor_h1(cls: H1Class, p: int):
    """H^1 class (w_j) -> Ext^1 class (w_j^T)."""
    return tuple(w.T % p for w in cls.w)
