"""7-dimensional Lie algebras given dually by structure equations.

An algebra is stored as the list of 2-forms de^1, ..., de^7; the
Chevalley-Eilenberg differential extends to all degrees as an
anti-derivation and is realized as cached matrices Λ^k -> Λ^(k+1).
"""

from __future__ import annotations

import json
from math import comb, sqrt

import numpy as np

from .forms import (
    DIM,
    SUBSETS,
    SUBSET_INDEX,
    KForm,
    _merge_sign,
    wedge,
)

JACOBI_TOL = 1e-12


class LieAlgebra7:
    """Lie algebra on R^7 defined by the differentials of the dual basis.

    d1[k] is the 2-form de^(k+1).  The Jacobi identity is checked at
    construction by verifying d(de^k) = 0 for every k.
    """

    def __init__(self, d1, check_jacobi: bool = True):
        d1 = tuple(d1)
        if len(d1) != DIM:
            raise ValueError("need the differentials of all 7 dual covectors")
        for a in d1:
            if a.degree != 2:
                raise ValueError("each de^k must be a 2-form")
        self.d1 = d1
        self._d_mats: dict = {}
        if check_jacobi:
            for k in range(DIM):
                dd = self.d(self.d1[k])
                if np.max(np.abs(dd.coeffs)) >= JACOBI_TOL:
                    raise ValueError(
                        f"structure constants violate the Jacobi identity "
                        f"(d(de^{k + 1}) != 0)"
                    )

    def d_matrix(self, k: int) -> np.ndarray:
        """Matrix of the exterior derivative on degree-k forms."""
        if k not in self._d_mats:
            mat = np.zeros((comb(DIM, k + 1), comb(DIM, k)))
            if k < DIM:
                for col, s in enumerate(SUBSETS[k]):
                    # d(e^{i1...ik}) = sum_p (-1)^(p) e^{i1..^ip..ik} ∧ de^{ip}
                    # with the monomial to the left of de^{ip}.
                    for p, idx in enumerate(s):
                        rest = s[:p] + s[p + 1:]
                        sign = (-1.0) ** p
                        dpart = self.d1[idx]
                        for j, two in enumerate(SUBSETS[2]):
                            c = dpart.coeffs[j]
                            if c == 0.0 or set(two) & set(rest):
                                continue
                            merged = tuple(sorted(rest + two))
                            mat[SUBSET_INDEX[k + 1][merged], col] += (
                                sign * c * _merge_sign(rest, two)
                            )
            self._d_mats[k] = mat
        return self._d_mats[k]

    def d(self, a: KForm) -> KForm:
        """Chevalley-Eilenberg exterior derivative (0 on 7-forms)."""
        if a.degree == DIM:
            return KForm.zero(DIM)
        return KForm(a.degree + 1, self.d_matrix(a.degree) @ a.coeffs)

    def bracket_norm(self) -> float:
        """Euclidean norm of the structure constants (via the de^k)."""
        return float(
            sqrt(sum(float(a.coeffs @ a.coeffs) for a in self.d1))
        )

    def to_json(self) -> str:
        return json.dumps({"d": [a.coeffs.tolist() for a in self.d1]})

    @staticmethod
    def from_json(text: str) -> "LieAlgebra7":
        data = json.loads(text)
        return LieAlgebra7(tuple(KForm(2, np.asarray(c)) for c in data["d"]))


def d(a: KForm, L: LieAlgebra7) -> KForm:
    """Exterior derivative of a on the algebra L."""
    return L.d(a)


def heisenberg7() -> LieAlgebra7:
    """The 7-dimensional Heisenberg algebra: de^7 spans the center dual."""
    c = sqrt(6.0) / 6.0
    de7 = KForm.from_terms(2, {(1, 2): c, (3, 4): c, (5, 6): c})
    d1 = tuple(KForm.zero(2) for _ in range(6)) + (de7,)
    return LieAlgebra7(d1)


def abelian7() -> LieAlgebra7:
    return LieAlgebra7(tuple(KForm.zero(2) for _ in range(DIM)))


def frame_brackets(frame: np.ndarray, L: LieAlgebra7) -> LieAlgebra7:
    """Structure constants of L in the coframe f^i = sum_j frame[i,j] e^j.

    This is the bracket-flow viewpoint: the forms stay fixed while the
    bracket moves with the frame.
    """
    frame = np.asarray(frame, dtype=np.float64)
    if frame.shape != (DIM, DIM):
        raise ValueError("frame must be a 7x7 matrix")
    if abs(np.linalg.det(frame)) < 1e-14:
        raise ValueError("frame is singular")
    inv = np.linalg.inv(frame)
    # 2-form coefficient change e-basis -> f-basis is the transposed
    # second compound of inv:  f^{ab} = sum det(frame[{a,b},{i,j}]) e^{ij}.
    pairs = SUBSETS[2]
    n2 = len(pairs)
    change = np.zeros((n2, n2))
    for r, (a_, b_) in enumerate(pairs):
        for c_, (i_, j_) in enumerate(pairs):
            change[r, c_] = (
                inv[i_, a_] * inv[j_, b_] - inv[i_, b_] * inv[j_, a_]
            )
    # note: coefficients transform with det(inv[{i,j},{a,b}]) summed over e-pairs
    new_d1 = []
    for k in range(DIM):
        # df^k = sum_j frame[k, j] de^j, expressed in the f-coframe.
        de_e = np.zeros(n2)
        for j in range(DIM):
            if frame[k, j] != 0.0:
                de_e += frame[k, j] * L.d1[j].coeffs
        new_d1.append(KForm(2, change @ de_e))
    return LieAlgebra7(tuple(new_d1), check_jacobi=False)
