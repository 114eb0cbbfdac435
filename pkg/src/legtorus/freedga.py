"""Free noncommutative graded algebras with invertible generators.

A word is a reduced sequence of (generator name, exponent) letters, where
exponent -1 is only allowed on invertible generators and adjacent inverse
pairs cancel eagerly.  FreePoly is a finite F_p-linear combination of words.
A DGA assigns each generator a degree-(-1) differential extended by the
signed Leibniz rule.

The module also builds the concrete objects of interest: the continuant-style
polynomial families P_m / Q_m, the DGA of the Legendrian (2,m) torus link
with two base points, and the k-copy DGA construction.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .exactalg import check_field

Word = tuple[tuple[str, int], ...]


@dataclass(frozen=True)
class Generator:
    name: str
    degree: int
    invertible: bool = False
    r: int = 1  # link grading: component of the upper endpoint
    c: int = 1  # link grading: component of the lower endpoint

    def __post_init__(self):
        if self.invertible and self.degree != 0:
            raise ValueError("invertible generators must have degree 0")


def reduce_letters(letters) -> Word:
    """Cancel adjacent g g^-1 pairs (stack pass; confluent for unit exponents)."""
    out: list[tuple[str, int]] = []
    for name, exp in letters:
        if exp not in (1, -1):
            raise ValueError("letters carry exponent +1 or -1")
        if out and out[-1][0] == name and out[-1][1] == -exp:
            out.pop()
        else:
            out.append((name, exp))
    return tuple(out)


class FreePoly:
    """Finite map from reduced words to nonzero coefficients mod p."""

    __slots__ = ("p", "terms")

    def __init__(self, p: int, terms=None):
        self.p = p
        self.terms: dict[Word, int] = {}
        if terms:
            for w, c in terms.items():
                c %= p
                if c:
                    self.terms[w] = c

    @classmethod
    def zero(cls, p):
        return cls(p)

    @classmethod
    def one(cls, p):
        return cls(p, {(): 1})

    @classmethod
    def gen(cls, p, name, exp=1, coeff=1):
        return cls(p, {((name, exp),): coeff})

    def is_zero(self) -> bool:
        return not self.terms

    def __eq__(self, other):
        return isinstance(other, FreePoly) and self.p == other.p and self.terms == other.terms

    def __add__(self, other):
        out = FreePoly(self.p)
        out.terms = dict(self.terms)
        for w, c in other.terms.items():
            v = (out.terms.get(w, 0) + c) % self.p
            if v:
                out.terms[w] = v
            else:
                out.terms.pop(w, None)
        return out

    def __neg__(self):
        return self.scale(-1)

    def __sub__(self, other):
        return self + other.scale(-1)

    def scale(self, k: int) -> "FreePoly":
        k %= self.p
        out = FreePoly(self.p)
        if k:
            out.terms = {w: (c * k) % self.p for w, c in self.terms.items()}
        return out

    def __mul__(self, other: "FreePoly") -> "FreePoly":
        out = FreePoly(self.p)
        for w1, c1 in self.terms.items():
            for w2, c2 in other.terms.items():
                w = reduce_letters(w1 + w2)
                v = (out.terms.get(w, 0) + c1 * c2) % self.p
                if v:
                    out.terms[w] = v
                else:
                    out.terms.pop(w, None)
        return out

    def __repr__(self):
        return f"FreePoly(p={self.p}, {poly_str(self)})"


def poly_mul(f: FreePoly, g: FreePoly) -> FreePoly:
    if f.p != g.p:
        raise ValueError("mixed moduli")
    return f * g


def _word_sort_key(w: Word):
    # t-words first, then the constant, then chord words by (length, letters)
    has_t = any(n.startswith("t") for n, _ in w)
    return (0 if has_t and w else (1 if not w else 2), len(w), w)


def poly_str(f: FreePoly) -> str:
    if not f.terms:
        return "0"
    parts = []
    for w in sorted(f.terms, key=_word_sort_key):
        c = f.terms[w]
        letters = " ".join(n if e == 1 else f"{n}^-1" for n, e in w)
        if not w:
            parts.append(str(c))
        elif c == 1:
            parts.append(letters)
        else:
            parts.append(f"{c} {letters}")
    return " + ".join(parts)


class DGA:
    """Semi-free DGA: ordered generators plus a degree -1 differential."""

    def __init__(self, p: int, gens: list[Generator], diff: dict[str, FreePoly],
                 copy_info=None):
        self.p = check_field(p)
        self.gens: dict[str, Generator] = {}
        for g in gens:
            if g.name in self.gens:
                raise ValueError(f"duplicate generator {g.name}")
            self.gens[g.name] = g
        self.diff = dict(diff)
        self.copy_info = copy_info or {}
        for name, f in self.diff.items():
            tgt = self.gens[name].degree - 1
            if not all(self.word_degree(w) == tgt for w in f.terms):
                raise ValueError(f"differential of {name} is not homogeneous of degree {tgt}")

    def generator_names(self):
        return list(self.gens)

    def word_degree(self, w: Word) -> int:
        return sum(self.gens[n].degree * e for n, e in w)

    def poly_degree(self, f: FreePoly):
        """Common degree of a homogeneous polynomial (None for 0)."""
        degs = {self.word_degree(w) for w in f.terms}
        if len(degs) > 1:
            raise ValueError("inhomogeneous polynomial")
        return degs.pop() if degs else None

    def apply_diff(self, f: FreePoly) -> FreePoly:
        """Leibniz extension of the differential; input must be homogeneous."""
        self.poly_degree(f)
        out = FreePoly.zero(self.p)
        for w, c in f.terms.items():
            sign = 1
            for i, (name, exp) in enumerate(w):
                g = self.gens[name]
                if not g.invertible:
                    dg = self.diff[name]
                    if not dg.is_zero():
                        left = FreePoly(self.p, {w[:i]: (c * sign) % self.p})
                        right = FreePoly(self.p, {w[i + 1:]: 1})
                        out = out + left * dg * right
                sign *= (-1) ** g.degree
        return out

    def check_d_squared(self) -> bool:
        return all(self.apply_diff(f).is_zero() for f in self.diff.values())

    def to_json(self) -> dict:
        return {
            "p": self.p,
            "generators": [
                {"name": g.name, "degree": g.degree, "invertible": g.invertible,
                 "r": g.r, "c": g.c}
                for g in self.gens.values()
            ],
            "differentials": {
                name: {
                    "string": poly_str(f),
                    "terms": [
                        {"coeff": f.terms[w], "word": [[n, e] for n, e in w]}
                        for w in sorted(f.terms, key=_word_sort_key)
                    ],
                }
                for name, f in self.diff.items()
            },
        }


# ---------------------------------------------------------------------------
# P_m / Q_m polynomial families

def pq_polynomial(m: int, kind: str, p: int, letters=None) -> FreePoly:
    """P_m or Q_m in noncommuting letters (defaults a1..am)."""
    if m < 0:
        raise ValueError("m must be nonnegative")
    if letters is None:
        letters = [f"a{j}" for j in range(1, m + 1)]
    if len(letters) != m:
        raise ValueError("need one letter per index")
    return _pq(tuple(letters), kind, p)


def _pq(letters, kind, p) -> FreePoly:
    if kind not in ("P", "Q"):
        raise ValueError("kind is 'P' or 'Q'")
    if len(letters) == 0:
        return FreePoly.one(p)
    if len(letters) == 1:
        coeff = 1 if kind == "P" else -1
        return FreePoly.gen(p, letters[0], coeff=coeff)
    if kind == "P":
        return _pq(letters[:-1], "P", p) * FreePoly.gen(p, letters[-1]) + _pq(letters[:-2], "P", p)
    return (-_pq(letters[1:], "Q", p)) * FreePoly.gen(p, letters[0]) + _pq(letters[2:], "Q", p)


def pq_matrix(kind: str, mats, p: int, n: int | None = None) -> np.ndarray:
    """Same recurrences evaluated on square matrices (n sizes the empty case)."""
    mats = list(mats)
    if n is None:
        n = mats[0].shape[0] if mats else 1
    if len(mats) == 0:
        return np.eye(n, dtype=np.int64)
    if len(mats) == 1:
        return mats[0] % p if kind == "P" else (-mats[0]) % p
    if kind == "P":
        return (pq_matrix("P", mats[:-1], p, n) @ mats[-1] + pq_matrix("P", mats[:-2], p, n)) % p
    return (-pq_matrix("Q", mats[1:], p, n) @ mats[0] + pq_matrix("Q", mats[2:], p, n)) % p


# ---------------------------------------------------------------------------
# The (2,m) torus link DGA

def link_grading(m: int) -> dict[str, tuple[int, int]]:
    """(r, c) for every generator of the 2-base-point (2,m) torus link DGA."""
    odd = m % 2 == 1
    out = {}
    for j in (1, 2):
        out[f"b{j}"] = (1, 2) if odd else (j, j)
    for j in range(1, m + 1):
        out[f"a{j}"] = (1, 2) if j % 2 == 1 else (2, 1)
    out["t1"] = ((2 if odd else 1), 1)
    out["t2"] = ((1 if odd else 2), 2)
    return out


def build_lambda_dga(m: int, p: int) -> DGA:
    """DGA of the Legendrian (2,m) torus link, base points after each loop."""
    if m < 1:
        raise ValueError("m must be at least 1")
    lg = link_grading(m)
    gens = [Generator(f"b{j}", 1, r=lg[f"b{j}"][0], c=lg[f"b{j}"][1]) for j in (1, 2)]
    gens += [Generator(f"a{j}", 0, r=lg[f"a{j}"][0], c=lg[f"a{j}"][1]) for j in range(1, m + 1)]
    gens += [Generator(f"t{j}", 0, invertible=True, r=lg[f"t{j}"][0], c=lg[f"t{j}"][1]) for j in (1, 2)]
    diff = {g.name: FreePoly.zero(p) for g in gens}
    diff["b1"] = FreePoly.gen(p, "t1", exp=-1) + pq_polynomial(m, "P", p)
    diff["b2"] = FreePoly.gen(p, "t2") + pq_polynomial(m, "Q", p)
    return DGA(p, gens, diff)


@lru_cache(maxsize=None)
def lambda_dga(m: int, p: int) -> DGA:
    return build_lambda_dga(m, p)


# ---------------------------------------------------------------------------
# k-copy DGA

def _pm_mul(a, b, p):
    k = len(a)
    return [[_sum_polys([a[i][s] * b[s][j] for s in range(k)], p) for j in range(k)]
            for i in range(k)]


def _sum_polys(polys, p):
    out = FreePoly.zero(p)
    for f in polys:
        out = out + f
    return out


def kcopy_dga(dga: DGA, k: int) -> DGA:
    """The k-copy DGA: chords c^{ij}, invertibles t^i, Morse generators x, y.

    The differential follows the component formulas: the chord matrix C gets
    Phi(dc) + Y_r C - (-1)^{|c|} C Y_c, the Morse matrices get
    d(X) = Delta^-1 Y_r Delta X - X Y_c and d(Y) = Y^2, where Phi sends t to
    Delta X and t^-1 to X^-1 Delta^-1 (geometric series in the nilpotent
    upper part).
    """
    if k < 1:
        raise ValueError("k must be at least 1")
    p = dga.p
    chords = [g for g in dga.gens.values() if not g.invertible]
    ts = [g for g in dga.gens.values() if g.invertible]
    q = len(ts)
    t_index = {g.name: l for l, g in enumerate(ts, start=1)}

    gens: list[Generator] = []
    info: dict[str, tuple] = {}
    for g in chords:
        for i in range(1, k + 1):
            for j in range(1, k + 1):
                nm = f"{g.name}^{i}{j}"
                gens.append(Generator(nm, g.degree, r=g.r, c=g.c))
                info[nm] = ("chord", g.name, i, j)
    for g in ts:
        for i in range(1, k + 1):
            nm = f"{g.name}^{i}"
            gens.append(Generator(nm, 0, invertible=True, r=g.r, c=g.c))
            info[nm] = ("t", g.name, t_index[g.name], i)
    for fam, deg in (("x", 0), ("y", -1)):
        for l in range(1, q + 1):
            for i in range(1, k + 1):
                for j in range(i + 1, k + 1):
                    nm = f"{fam}{l}^{i}{j}"
                    tg = ts[l - 1]
                    gens.append(Generator(nm, deg, r=tg.r, c=tg.c))
                    info[nm] = (fam, l, i, j)

    one = FreePoly.one(p)
    zero = FreePoly.zero(p)

    def chord_mat(name):
        return [[FreePoly.gen(p, f"{name}^{i}{j}") for j in range(1, k + 1)]
                for i in range(1, k + 1)]

    def y_mat(l):
        return [[FreePoly.gen(p, f"y{l}^{i}{j}") if i < j else zero
                 for j in range(1, k + 1)] for i in range(1, k + 1)]

    def x_mat(l):
        return [[one if i == j else (FreePoly.gen(p, f"x{l}^{i}{j}") if i < j else zero)
                 for j in range(1, k + 1)] for i in range(1, k + 1)]

    def x_inv_mat(l):
        # (1 + N)^-1 = 1 - N + N^2 - ... with N strictly upper triangular
        n_mat = [[FreePoly.gen(p, f"x{l}^{i}{j}") if i < j else zero
                  for j in range(1, k + 1)] for i in range(1, k + 1)]
        out = [[one if i == j else zero for j in range(k)] for i in range(k)]
        power = [[one if i == j else zero for j in range(k)] for i in range(k)]
        sign = 1
        for _ in range(1, k):
            power = _pm_mul(power, n_mat, p)
            sign = -sign
            out = [[out[i][j] + power[i][j].scale(sign) for j in range(k)] for i in range(k)]
        return out

    def delta_mat(l, exp):
        tn = ts[l - 1].name
        return [[FreePoly.gen(p, f"{tn}^{i + 1}", exp=exp) if i == j else zero
                 for j in range(k)] for i in range(k)]

    def phi_word(word: Word):
        out = [[one if i == j else zero for j in range(k)] for i in range(k)]
        for name, exp in word:
            g = dga.gens[name]
            if g.invertible:
                l = t_index[name]
                m_ = _pm_mul(delta_mat(l, 1), x_mat(l), p) if exp == 1 \
                    else _pm_mul(x_inv_mat(l), delta_mat(l, -1), p)
            else:
                m_ = chord_mat(name)
            out = _pm_mul(out, m_, p)
        return out

    def phi_poly(f: FreePoly):
        out = [[zero] * k for _ in range(k)]
        for w, c in f.terms.items():
            m_ = phi_word(w)
            out = [[out[i][j] + m_[i][j].scale(c) for j in range(k)] for i in range(k)]
        return out

    diff: dict[str, FreePoly] = {}
    for g in chords:
        phi_dc = phi_poly(dga.diff[g.name])
        c_mat = chord_mat(g.name)
        yr, yc = y_mat(g.r), y_mat(g.c)
        lhs = _pm_mul(yr, c_mat, p)
        rhs = _pm_mul(c_mat, yc, p)
        sgn = -((-1) ** g.degree)
        for i in range(k):
            for j in range(k):
                diff[f"{g.name}^{i + 1}{j + 1}"] = phi_dc[i][j] + lhs[i][j] + rhs[i][j].scale(sgn)
    for g in ts:
        l = t_index[g.name]
        dx = _pm_mul(_pm_mul(_pm_mul(delta_mat(l, -1), y_mat(g.r), p), delta_mat(l, 1), p),
                     x_mat(l), p)
        dx2 = _pm_mul(x_mat(l), y_mat(g.c), p)
        ysq = _pm_mul(y_mat(l), y_mat(l), p)
        for i in range(1, k + 1):
            diff[f"{g.name}^{i}"] = zero
            for j in range(i + 1, k + 1):
                diff[f"x{l}^{i}{j}"] = dx[i - 1][j - 1] - dx2[i - 1][j - 1]
                diff[f"y{l}^{i}{j}"] = ysq[i - 1][j - 1]

    return DGA(p, gens, diff, copy_info=info)


@lru_cache(maxsize=None)
def lambda_copy_dga(m: int, p: int, k: int) -> DGA:
    return kcopy_dga(lambda_dga(m, p), k)


def check_d_squared(dga: DGA) -> bool:
    return dga.check_d_squared()
