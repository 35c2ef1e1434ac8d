"""Dense exterior algebra on a fixed 7-dimensional vector space.

Alternating k-forms are stored as coefficient vectors over the basis of
strictly increasing multi-indices in lexicographic order.  All operations
(wedge, interior product, metric inner products, Hodge star) are pure
functions; the sparse index tables they need are precomputed once per
degree pair and cached at module level.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from math import comb

import numpy as np

DIM = 7

# k-subsets of {0,...,6} in lexicographic order, one tuple per degree.
SUBSETS = tuple(
    tuple(itertools.combinations(range(DIM), k)) for k in range(DIM + 1)
)
SUBSET_INDEX = tuple(
    {s: i for i, s in enumerate(SUBSETS[k])} for k in range(DIM + 1)
)


def _merge_sign(a, b):
    """Sign of sorting the concatenation of two disjoint increasing tuples."""
    inversions = 0
    for x in a:
        for y in b:
            if x > y:
                inversions += 1
    return -1 if inversions % 2 else 1


def _wedge_table(k, l):
    """Sparse index table for the pairing Λ^k x Λ^l -> Λ^(k+l)."""
    ia, ib, iout, sgn = [], [], [], []
    for i, s in enumerate(SUBSETS[k]):
        set_s = set(s)
        for j, t in enumerate(SUBSETS[l]):
            if set_s & set(t):
                continue
            ia.append(i)
            ib.append(j)
            iout.append(SUBSET_INDEX[k + l][tuple(sorted(s + t))])
            sgn.append(_merge_sign(s, t))
    return (
        np.asarray(ia, dtype=np.intp),
        np.asarray(ib, dtype=np.intp),
        np.asarray(iout, dtype=np.intp),
        np.asarray(sgn, dtype=np.float64),
    )


def _contract_table(k):
    """Sparse index table for interior products on degree-k forms."""
    comp, iin, iout, sgn = [], [], [], []
    for i, s in enumerate(SUBSETS[k]):
        for pos, idx in enumerate(s):
            rest = s[:pos] + s[pos + 1:]
            comp.append(idx)
            iin.append(i)
            iout.append(SUBSET_INDEX[k - 1][rest])
            sgn.append((-1.0) ** pos)
    return (
        np.asarray(comp, dtype=np.intp),
        np.asarray(iin, dtype=np.intp),
        np.asarray(iout, dtype=np.intp),
        np.asarray(sgn, dtype=np.float64),
    )


def _complement_table(k):
    """For each k-subset: position of its complement in Λ^(7-k), and sign."""
    pos = np.empty(comb(DIM, k), dtype=np.intp)
    sgn = np.empty(comb(DIM, k), dtype=np.float64)
    for i, s in enumerate(SUBSETS[k]):
        c = tuple(sorted(set(range(DIM)) - set(s)))
        pos[i] = SUBSET_INDEX[DIM - k][c]
        sgn[i] = _merge_sign(s, c)
    return pos, sgn


_WEDGE_TABLES: dict = {}
_CONTRACT_TABLES: dict = {}
_COMPLEMENT_TABLES: dict = {}


def _wedge(k, l):
    if (k, l) not in _WEDGE_TABLES:
        _WEDGE_TABLES[(k, l)] = _wedge_table(k, l)
    return _WEDGE_TABLES[(k, l)]


def _contract(k):
    if k not in _CONTRACT_TABLES:
        _CONTRACT_TABLES[k] = _contract_table(k)
    return _CONTRACT_TABLES[k]


def _complement(k):
    if k not in _COMPLEMENT_TABLES:
        _COMPLEMENT_TABLES[k] = _complement_table(k)
    return _COMPLEMENT_TABLES[k]


@dataclass(frozen=True)
class KForm:
    """Alternating form of fixed degree on R^7.

    coeffs[i] multiplies the basis monomial e^{s} where s = SUBSETS[degree][i].
    Instances are immutable; arithmetic returns new forms.
    """

    degree: int
    coeffs: np.ndarray

    def __post_init__(self):
        if not 0 <= self.degree <= DIM:
            raise ValueError(f"degree must be in [0, {DIM}], got {self.degree}")
        c = np.asarray(self.coeffs, dtype=np.float64)
        if c.shape != (comb(DIM, self.degree),):
            raise ValueError(
                f"degree-{self.degree} form needs {comb(DIM, self.degree)} "
                f"coefficients, got shape {c.shape}"
            )
        c = c.copy()
        c.flags.writeable = False
        object.__setattr__(self, "coeffs", c)

    @staticmethod
    def zero(degree: int) -> "KForm":
        return KForm(degree, np.zeros(comb(DIM, degree)))

    @staticmethod
    def from_terms(degree: int, terms: dict) -> "KForm":
        """Build a form from {(1-based indices): coefficient} entries.

        Index tuples may be unsorted; the usual permutation sign applies.
        """
        c = np.zeros(comb(DIM, degree))
        for idx, val in terms.items():
            if isinstance(idx, str):
                idx = tuple(int(ch) for ch in idx)
            zero_based = tuple(i - 1 for i in idx)
            if len(set(zero_based)) != len(zero_based):
                continue
            srt = tuple(sorted(zero_based))
            sign = _perm_sign(zero_based)
            c[SUBSET_INDEX[degree][srt]] += sign * val
        return KForm(degree, c)

    def term(self, idx) -> float:
        """Coefficient of the (1-based, increasing) basis monomial idx."""
        if isinstance(idx, str):
            idx = tuple(int(ch) for ch in idx)
        zero_based = tuple(i - 1 for i in idx)
        return float(self.coeffs[SUBSET_INDEX[self.degree][zero_based]])

    def terms(self, tol: float = 0.0) -> dict:
        """Nonzero coefficients keyed by 1-based increasing index tuples."""
        out = {}
        for i, s in enumerate(SUBSETS[self.degree]):
            if abs(self.coeffs[i]) > tol:
                out[tuple(j + 1 for j in s)] = float(self.coeffs[i])
        return out

    def norm(self) -> float:
        """Euclidean norm of the coefficient vector (orthonormal-frame norm)."""
        return float(np.linalg.norm(self.coeffs))

    def __add__(self, other: "KForm") -> "KForm":
        if self.degree != other.degree:
            raise ValueError("cannot add forms of different degree")
        return KForm(self.degree, self.coeffs + other.coeffs)

    def __sub__(self, other: "KForm") -> "KForm":
        if self.degree != other.degree:
            raise ValueError("cannot subtract forms of different degree")
        return KForm(self.degree, self.coeffs - other.coeffs)

    def __mul__(self, scalar) -> "KForm":
        return KForm(self.degree, self.coeffs * float(scalar))

    __rmul__ = __mul__

    def __truediv__(self, scalar) -> "KForm":
        return KForm(self.degree, self.coeffs / float(scalar))

    def __neg__(self) -> "KForm":
        return KForm(self.degree, -self.coeffs)

    def __repr__(self):
        parts = [
            f"{v:+.6g}*e{''.join(str(i) for i in k)}"
            for k, v in self.terms(tol=0.0).items()
        ]
        body = " ".join(parts) if parts else "0"
        return f"KForm(deg={self.degree}: {body})"


def _perm_sign(seq) -> int:
    inversions = sum(
        1
        for i in range(len(seq))
        for j in range(i + 1, len(seq))
        if seq[i] > seq[j]
    )
    return -1 if inversions % 2 else 1


def wedge(a: KForm, b: KForm) -> KForm:
    """Wedge product a ∧ b."""
    if a.degree + b.degree > DIM:
        raise ValueError("degree exceeds 7")
    ia, ib, iout, sgn = _wedge(a.degree, b.degree)
    vals = sgn * a.coeffs[ia] * b.coeffs[ib]
    out = np.bincount(iout, weights=vals, minlength=comb(DIM, a.degree + b.degree))
    return KForm(a.degree + b.degree, out)


def wedge_many(*forms: KForm) -> KForm:
    out = forms[0]
    for f in forms[1:]:
        out = wedge(out, f)
    return out


def contract(v: np.ndarray, a: KForm) -> KForm:
    """Interior product of the vector v (7 components) into a."""
    if a.degree < 1:
        raise ValueError("cannot contract a 0-form")
    v = np.asarray(v, dtype=np.float64)
    comp, iin, iout, sgn = _contract(a.degree)
    vals = sgn * v[comp] * a.coeffs[iin]
    out = np.bincount(iout, weights=vals, minlength=comb(DIM, a.degree - 1))
    return KForm(a.degree - 1, out)


class Metric7:
    """Positive-definite metric on R^7 together with an orientation sign.

    Gram matrices on each Λ^k and the Hodge star matrices are built lazily
    and cached, so repeated stars against the same metric are cheap.
    """

    def __init__(self, g: np.ndarray, orientation: int = 1):
        g = np.asarray(g, dtype=np.float64)
        if g.shape != (DIM, DIM):
            raise ValueError("metric must be a 7x7 matrix")
        if np.max(np.abs(g - g.T)) > 1e-12 * max(1.0, np.max(np.abs(g))):
            raise ValueError("metric must be symmetric")
        if orientation not in (1, -1):
            raise ValueError("orientation must be +1 or -1")
        eigvals = np.linalg.eigvalsh(g)
        if eigvals[0] <= 0:
            raise ValueError("metric must be positive definite")
        self.g = 0.5 * (g + g.T)
        self.g.flags.writeable = False
        self.orientation = int(orientation)
        self._ginv = np.linalg.inv(self.g)
        self._sqrt_det = float(np.sqrt(np.linalg.det(self.g)))
        self._grams: dict = {}
        self._stars: dict = {}

    @staticmethod
    def identity(orientation: int = 1) -> "Metric7":
        return Metric7(np.eye(DIM), orientation)

    @property
    def ginv(self) -> np.ndarray:
        return self._ginv

    @property
    def volume_coeff(self) -> float:
        """Coefficient of e^{1...7} in the metric volume form."""
        return self.orientation * self._sqrt_det

    def volume_form(self) -> KForm:
        return KForm(DIM, np.array([self.volume_coeff]))

    def gram(self, k: int) -> np.ndarray:
        """Gram matrix of the induced inner product on Λ^k."""
        if k not in self._grams:
            self._grams[k] = _compound(self._ginv, k)
        return self._grams[k]

    def star_matrix(self, k: int) -> np.ndarray:
        """Matrix of the Hodge star Λ^k -> Λ^(7-k)."""
        if k not in self._stars:
            pos, sgn = _complement(k)
            gram = self.gram(k)
            mat = np.zeros((comb(DIM, DIM - k), comb(DIM, k)))
            # alpha ∧ ⋆beta = <alpha, beta> vol fixes row I^c of ⋆ as
            # sign(I, I^c) * vol_coeff * (gram row I).
            mat[pos, :] = (sgn * self.volume_coeff)[:, None] * gram
            self._stars[k] = mat
        return self._stars[k]


def _det_stack(sub: np.ndarray) -> np.ndarray:
    """Determinants of a (..., k, k) stack for k <= 3, by direct formula."""
    k = sub.shape[-1]
    if k == 0:
        return np.ones(sub.shape[:-2])
    if k == 1:
        return sub[..., 0, 0]
    if k == 2:
        return sub[..., 0, 0] * sub[..., 1, 1] - sub[..., 0, 1] * sub[..., 1, 0]
    if k == 3:
        a, b, c = sub[..., 0, 0], sub[..., 0, 1], sub[..., 0, 2]
        d, e, f = sub[..., 1, 0], sub[..., 1, 1], sub[..., 1, 2]
        g, h, i = sub[..., 2, 0], sub[..., 2, 1], sub[..., 2, 2]
        return a * (e * i - f * h) - b * (d * i - f * g) + c * (d * h - e * g)
    raise ValueError("direct determinant formula only up to k=3")


def _compound(a: np.ndarray, k: int) -> np.ndarray:
    """k-th compound matrix: entry (I, J) equals det(a[I, J]).

    For k >= 4 the complementary-minor identity
      det(a[I,J]) = det(a) * sign(I,I^c) * sign(J,J^c) * det(inv(a)[J^c,I^c])
    reduces the work to minors of size 7-k.
    """
    n = comb(DIM, k)
    if k <= 3:
        s = np.array(SUBSETS[k], dtype=np.intp).reshape(n, k)
        sub = a[s[:, None, :, None], s[None, :, None, :]]
        return _det_stack(sub)
    det_a = np.linalg.det(a)
    ainv = np.linalg.inv(a)
    minor = _compound(ainv, DIM - k)
    pos, sgn = _complement(k)
    out = np.empty((n, n))
    # out[I, J] = det(a) * sgn[I] * sgn[J] * minor[J^c, I^c]
    out[:, :] = det_a * sgn[:, None] * sgn[None, :] * minor[pos[:, None], pos[None, :]].T
    return out


def hodge_star(a: KForm, m: Metric7) -> KForm:
    """Hodge star of a with respect to m, satisfying α∧⋆β = <α,β> vol."""
    return KForm(DIM - a.degree, m.star_matrix(a.degree) @ a.coeffs)


def inner(a: KForm, b: KForm, m: Metric7) -> float:
    """Metric inner product of two forms of equal degree."""
    if a.degree != b.degree:
        raise ValueError("inner product requires forms of equal degree")
    return float(a.coeffs @ m.gram(a.degree) @ b.coeffs)


def norm_sq(a: KForm, m: Metric7) -> float:
    return inner(a, a, m)


def pullback(a: KForm, mat: np.ndarray) -> KForm:
    """Pullback of a along the linear map with matrix mat.

    (mat* a)(X_1,...,X_k) = a(mat X_1, ..., mat X_k); in coefficients this is
    the transpose of the k-th compound of mat.
    """
    k = a.degree
    if k == 0:
        return a
    if k <= 3:
        n = comb(DIM, k)
        s = np.array(SUBSETS[k], dtype=np.intp).reshape(n, k)
        sub = mat[s[:, None, :, None], s[None, :, None, :]]
        comp = _det_stack(sub)
    else:
        comp = _compound_general(mat, k)
    return KForm(k, comp.T @ a.coeffs)


def _compound_general(mat: np.ndarray, k: int) -> np.ndarray:
    """Compound matrix of a possibly singular matrix, via stacked dets."""
    n = comb(DIM, k)
    s = np.array(SUBSETS[k], dtype=np.intp).reshape(n, k)
    sub = mat[s[:, None, :, None], s[None, :, None, :]]
    return np.linalg.det(sub)


def random_form(degree: int, rng: np.random.Generator, scale: float = 1.0) -> KForm:
    return KForm(degree, scale * rng.standard_normal(comb(DIM, degree)))


def allclose(a: KForm, b: KForm, tol: float = 1e-12) -> bool:
    return a.degree == b.degree and bool(
        np.max(np.abs(a.coeffs - b.coeffs)) <= tol
    )
