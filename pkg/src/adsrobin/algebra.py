"""Finite-basis realization of the observable algebra.

Generators are smeared fields over a fixed list of admissible test
functions; the star product contracts slots with a constant pairing
matrix, so all algebraic identities reduce to finite combinatorics over
the precomputed Gram matrices.
"""

import itertools
import math
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from .errors import BasisConstructionError, DegreeError, DomainError
from .modes import BoundaryCondition, ModelParams
from .oracle.smear import QuadratureSpec, half_space_omega2_kernel, smear2
from .oracle.testfun import TestFunction

D_MAX = 4
N_B_MAX = 16

Monomial = Tuple[int, ...]  # sorted basis indices


@dataclass(frozen=True)
class GeneratorBasis:
    functions: Tuple[TestFunction, ...]
    Gmat: np.ndarray  # real antisymmetric commutator pairings
    Omat: np.ndarray  # complex two-point pairings (Hermitian)
    Hmat: np.ndarray  # Hadamard-ordered pairing (leading-order realization)
    params: ModelParams
    bc: BoundaryCondition

    @property
    def size(self):
        return len(self.functions)


def _smooth_remainder_kernel(params, bc, u_samples=(1.6, 2.0, 2.6, 3.4, 4.4)):
    """Leading-order smooth part of omega2: polynomial fit in 1/u on the
    spacelike region, used to subtract the non-singular background when
    forming the Hadamard-ordered pairing.  Symmetric by construction."""
    from .kernels import _omega2_of_u

    u = np.asarray(u_samples, dtype=float)
    vals = _omega2_of_u(params, bc, u.astype(complex))
    coeffs = np.polyfit(1.0 / u, vals, 2)
    d = params.d

    def kernel(dt, rho, z, zp, eps):
        dt = np.asarray(dt, dtype=float)
        sig = 0.5 * (-dt * dt + rho * rho + (z - zp) ** 2)
        u_real = 1.0 + sig / (2.0 * z * zp)
        u_safe = np.where(np.abs(u_real) < 1e-6, 1e-6, u_real)
        vals = np.polyval(coeffs, 1.0 / u_safe)
        return vals * (z * zp) ** (-(d - 1) / 2.0)

    return kernel


def build_basis(
    functions: Sequence[TestFunction],
    params: ModelParams,
    bc: BoundaryCondition,
    spec: Optional[QuadratureSpec] = None,
    positivity_tol: float = 1e-8,
) -> GeneratorBasis:
    """Assemble the Gram matrices of a generator family.

    The two-point matrix is computed for i <= j and completed by
    Hermiticity (exact for real test functions and a Schwarz-symmetric
    kernel); the commutator matrix is its imaginary part doubled, which
    realizes the pointwise identity G = 2 Im omega2 at quadrature level.

    Raises:
        BasisConstructionError: invariant violation (size, mixed alpha,
            positivity beyond tolerance).
    """
    n = len(functions)
    if n == 0 or n > N_B_MAX:
        raise BasisConstructionError(f"basis size must be in [1, {N_B_MAX}]")
    alphas = {f.alpha for f in functions}
    if len(alphas) > 1:
        raise BasisConstructionError("all basis functions must share the same alpha")
    if abs(functions[0].alpha - bc.alpha) > 1e-12:
        raise BasisConstructionError("basis functions carry a different alpha than bc")

    omega_kernel = half_space_omega2_kernel(params, bc)
    smooth_kernel = _smooth_remainder_kernel(params, bc)
    Omat = np.zeros((n, n), dtype=complex)
    Smat = np.zeros((n, n), dtype=complex)
    for i in range(n):
        for j in range(i, n):
            Omat[i, j] = smear2(omega_kernel, functions[i], functions[j], spec=spec).value
            Smat[i, j] = smear2(smooth_kernel, functions[i], functions[j], spec=spec).value
            if j > i:
                Omat[j, i] = np.conj(Omat[i, j])
                Smat[j, i] = Smat[i, j]
    Gmat = 2.0 * np.imag(Omat)
    Hmat = Omat - Smat

    herm = 0.5 * (Omat + Omat.conj().T)
    eigs = np.linalg.eigvalsh(herm)
    trace = float(np.real(np.trace(herm)))
    if eigs.min() < -positivity_tol * max(trace, 1e-300):
        raise BasisConstructionError(
            f"two-point Gram matrix not positive: min eig {eigs.min():.3e} vs trace {trace:.3e}"
        )
    return GeneratorBasis(
        functions=tuple(functions), Gmat=Gmat, Omat=Omat, Hmat=Hmat, params=params, bc=bc
    )


@dataclass
class PolyFunctional:
    """Polynomial in the smeared-field generators: multiset -> coefficient."""

    coeffs: Dict[Monomial, complex] = field(default_factory=dict)

    @staticmethod
    def constant(c=1.0):
        return PolyFunctional({(): complex(c)})

    @staticmethod
    def generator(i: int):
        return PolyFunctional({(int(i),): 1.0 + 0.0j})

    def degree(self):
        return max((len(m) for m in self.coeffs), default=0)

    def cleaned(self, tol=0.0):
        return PolyFunctional(
            {m: c for m, c in self.coeffs.items() if abs(c) > tol}
        )

    def __add__(self, other):
        out = dict(self.coeffs)
        for m, c in other.coeffs.items():
            out[m] = out.get(m, 0.0) + c
        return PolyFunctional(out)

    def __sub__(self, other):
        return self + other.scale(-1.0)

    def scale(self, s):
        return PolyFunctional({m: s * c for m, c in self.coeffs.items()})

    def coefficient_distance(self, other):
        keys = set(self.coeffs) | set(other.coeffs)
        return max(
            (abs(self.coeffs.get(k, 0.0) - other.coeffs.get(k, 0.0)) for k in keys),
            default=0.0,
        )


def pairing_matrix(basis: GeneratorBasis, kernel_choice: str) -> np.ndarray:
    """Contraction weight: (i/2) G for the commutator product, plus the
    symmetric Hadamard part for the Wick-ordered one."""
    if kernel_choice == "iG/2":
        return 0.5j * basis.Gmat.astype(complex)
    if kernel_choice.lower() == "hadamard":
        sym = 0.5 * (basis.Hmat + basis.Hmat.T)
        return 0.5j * basis.Gmat.astype(complex) + sym
    raise DomainError(f"unknown kernel choice {kernel_choice!r}")


def star_product(
    F: PolyFunctional,
    Fp: PolyFunctional,
    basis: GeneratorBasis,
    kernel_choice: str = "iG/2",
) -> PolyFunctional:
    """Deformation product: sum over slot contractions weighted by the
    pairing matrix; terminates after min(deg F, deg F') contractions.

    Raises:
        DegreeError: product degree would exceed D_MAX.
    """
    if F.degree() + Fp.degree() > D_MAX:
        raise DegreeError(f"product degree exceeds D_MAX = {D_MAX}")
    M = pairing_matrix(basis, kernel_choice)
    out: Dict[Monomial, complex] = {}
    for ma, ca in F.coeffs.items():
        for mb, cb in Fp.coeffs.items():
            base = ca * cb
            la, lb = len(ma), len(mb)
            for k in range(0, min(la, lb) + 1):
                for sel_a in itertools.combinations(range(la), k):
                    rest_a = [ma[i] for i in range(la) if i not in sel_a]
                    for sel_b in itertools.permutations(range(lb), k):
                        weight = base
                        for ia, ib in zip(sel_a, sel_b):
                            weight = weight * M[ma[ia], mb[ib]]
                        rest_b = [mb[i] for i in range(lb) if i not in set(sel_b)]
                        mono = tuple(sorted(rest_a + rest_b))
                        out[mono] = out.get(mono, 0.0) + weight
    return PolyFunctional(out)


def commutator(F, Fp, basis, kernel_choice="iG/2"):
    return star_product(F, Fp, basis, kernel_choice) - star_product(
        Fp, F, basis, kernel_choice
    )


def quasifree_n_point(Omat: np.ndarray, indices: Sequence[int]) -> complex:
    """Sum over ordered perfect matchings of products of Omat entries.

    The convention pairs (i_1 < j_1), ..., (i_n < j_n) with i_1 < i_2 <
    ...; odd lists give zero.  For 2n = 4 this is the familiar three-term
    Wick sum.
    """
    idx = list(indices)
    if len(idx) % 2 == 1:
        return 0.0 + 0.0j
    if not idx:
        return 1.0 + 0.0j

    def rec(positions):
        if not positions:
            return 1.0 + 0.0j
        first = positions[0]
        total = 0.0 + 0.0j
        for j in range(1, len(positions)):
            partner = positions[j]
            rest = positions[1:j] + positions[j + 1 :]
            total += Omat[idx[first], idx[partner]] * rec(rest)
        return total

    return complex(rec(list(range(len(idx)))))


def matching_count(two_n: int) -> int:
    """(2n-1)!! perfect matchings of 2n slots."""
    if two_n % 2 == 1:
        return 0
    out = 1
    for k in range(1, two_n, 2):
        out *= k
    return out


def state_eval(F: PolyFunctional, basis: GeneratorBasis) -> complex:
    """Quasifree state: linear extension of the matching sums."""
    total = 0.0 + 0.0j
    for mono, c in F.coeffs.items():
        total += c * quasifree_n_point(basis.Omat, mono)
    return complex(total)


def on_shell_quotient_check(
    phi: TestFunction,
    basis: GeneratorBasis,
    params: ModelParams,
    bc: BoundaryCondition,
    spec: Optional[QuadratureSpec] = None,
    tol: float = 1e-4,
):
    """Numerically verify that P_eta phi pairs to zero against the basis.

    Representatives f and f + P_eta phi then generate identical
    functionals; returns the worst pairing relative to the basis scale.
    """
    from .oracle.smear import half_space_g_kernel

    gk = half_space_g_kernel(params, bc)
    p_phi = phi.p_eta()
    worst = 0.0
    scale = max(abs(basis.Gmat).max(), 1e-30)
    for h in basis.functions:
        val = abs(smear2(gk, p_phi, h, spec=spec).value)
        worst = max(worst, val)
    return {"max_pairing": worst, "scale": scale, "passed": worst <= tol * max(scale, 1.0)}
