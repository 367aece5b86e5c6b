"""Generalized Gell-Mann generators of su(N) and their structure tensors.

Conventions
-----------
The N²-1 generators are traceless Hermitian matrices normalized so that
Tr[g_j g_k] = 2 δ_jk.  They are emitted in the ordering that reduces to
the Pauli triple at N = 2 and the standard Gell-Mann ordering at N = 3:
for each subspace size m = 2..N, first the off-diagonal pairs (u, m) for
u < m (symmetric matrix E_um + E_mu, then antisymmetric -i E_um + i E_mu),
then the diagonal generator

    sqrt(2 / (m (m-1))) * diag(1, ..., 1, -(m-1), 0, ..., 0)

with m-1 leading ones.

The antisymmetric tensor f and symmetric tensor d are defined through

    [g_j, g_k] = 2i Σ_l f_jkl g_l
    {g_j, g_k} = (4/N) δ_jk I + 2 Σ_l d_jkl g_l

equivalently f_jkl = Tr([g_j, g_k] g_l) / (4i) and
d_jkl = Tr({g_j, g_k} g_l) / 4.  Both tensors are stored sparsely, keyed
on ascending 1-based index triples: f on its strictly increasing triples
(a permutation carries the parity sign), d on its non-decreasing triples
(all permutations equal).  Entries below 1e-12 in magnitude are dropped.
"""

from __future__ import annotations

from itertools import permutations
from types import MappingProxyType

import numpy as np

from .errors import NumericsError
from .linalg import HermitianMatrix

__all__ = [
    "GeneratorBasis",
    "build_basis",
    "basis_for",
    "structure_f",
    "structure_d",
    "verify_algebra",
    "max_algebra_residual",
]

_SPARSE_CUTOFF = 1e-12

# Even permutations of three positions; everything else is odd.
_EVEN_ORDERS = {(0, 1, 2), (1, 2, 0), (2, 0, 1)}


class GeneratorBasis:
    """Immutable basis of su(N) generators plus its f and d tensors.

    Attributes
    ----------
    dim : int
        Hilbert-space dimension N.
    generators : tuple of HermitianMatrix
        The N²-1 generators in canonical order (1-based indexing in the
        tensor maps corresponds to position in this tuple).
    f_tensor, d_tensor : mapping
        Sparse structure-constant maps as described in the module
        docstring.
    """

    __slots__ = ("dim", "generators", "f_tensor", "d_tensor", "_stack", "_d_ordered")

    def __init__(self, dim, generators, f_tensor, d_tensor, stack, d_ordered):
        self.dim = dim
        self.generators = generators
        self.f_tensor = MappingProxyType(f_tensor)
        self.d_tensor = MappingProxyType(d_tensor)
        self._stack = stack
        self._d_ordered = d_ordered

    @property
    def n_generators(self) -> int:
        return self.dim * self.dim - 1

    def stacked(self) -> np.ndarray:
        """Generators as a read-only (N²-1, N, N) complex array."""
        return self._stack

    def d_contract(self, a: np.ndarray) -> np.ndarray:
        """Contract the symmetric tensor with a ⊗ a.

        Returns the vector with components Σ_jk a_j a_k d_jkl, which is
        the coefficient vector of the traceless part of the squared
        operator Σ_j a_j g_j.
        """
        a = np.asarray(a, dtype=np.float64)
        if a.shape != (self.n_generators,):
            raise ValueError(f"expected a vector of length {self.n_generators}")
        jj, kk, ll, vv = self._d_ordered
        out = np.zeros(self.n_generators)
        np.add.at(out, ll, a[jj] * a[kk] * vv)
        return out

    def __repr__(self) -> str:
        return f"GeneratorBasis(dim={self.dim})"


def _generator_arrays(n: int) -> list[np.ndarray]:
    mats: list[np.ndarray] = []
    for m in range(2, n + 1):
        for u in range(1, m):
            sym = np.zeros((n, n), dtype=np.complex128)
            sym[u - 1, m - 1] = 1.0
            sym[m - 1, u - 1] = 1.0
            mats.append(sym)
            asym = np.zeros((n, n), dtype=np.complex128)
            asym[u - 1, m - 1] = -1.0j
            asym[m - 1, u - 1] = 1.0j
            mats.append(asym)
        diag = np.zeros(n, dtype=np.complex128)
        diag[: m - 1] = 1.0
        diag[m - 1] = -(m - 1)
        mats.append(np.sqrt(2.0 / (m * (m - 1))) * np.diag(diag))
    return mats


def build_basis(n: int) -> GeneratorBasis:
    """Construct the canonical su(N) generator basis with its tensors.

    Raises ``ValueError`` for N < 2.  The returned object is immutable
    and safe to share; ``basis_for`` caches one instance per dimension.
    """
    if n < 2:
        raise ValueError(f"basis requires dimension >= 2, got {n}")
    mats = _generator_arrays(n)
    ngen = n * n - 1
    assert len(mats) == ngen
    stack = np.stack(mats)

    # Construction sanity: traceless and mutually orthogonal with norm 2.
    traces = np.abs(np.einsum("jaa->j", stack))
    if traces.max() > 1e-13:
        raise NumericsError(f"generator trace residual {traces.max():.3e}")
    gram = np.einsum("jab,kba->jk", stack, stack)
    if np.abs(gram - 2.0 * np.eye(ngen)).max() > 1e-12:
        raise NumericsError("generator orthogonality residual exceeds 1e-12")

    # T[j,k,l] = Tr[g_j g_k g_l]; commutator/anticommutator traces follow
    # from its antisymmetric/symmetric parts in (j, k).
    prod = np.einsum("jab,kbc->jkac", stack, stack)
    t = np.einsum("jkab,lba->jkl", prod, stack)
    f_dense = (t - t.transpose(1, 0, 2)) / 4.0j
    d_dense = (t + t.transpose(1, 0, 2)) / 4.0
    worst_imag = max(np.abs(f_dense.imag).max(), np.abs(d_dense.imag).max())
    if worst_imag > 1e-12:
        raise NumericsError(f"structure constants not real: residual {worst_imag:.3e}")
    f_dense = f_dense.real
    d_dense = d_dense.real

    f_tensor: dict[tuple[int, int, int], float] = {}
    d_tensor: dict[tuple[int, int, int], float] = {}
    for j in range(ngen):
        for k in range(j, ngen):
            for l in range(k, ngen):
                dv = d_dense[j, k, l]
                if abs(dv) >= _SPARSE_CUTOFF:
                    d_tensor[(j + 1, k + 1, l + 1)] = float(dv)
                if j < k < l:
                    fv = f_dense[j, k, l]
                    if abs(fv) >= _SPARSE_CUTOFF:
                        f_tensor[(j + 1, k + 1, l + 1)] = float(fv)

    # Ordered expansion of the d entries for fast a' contraction.
    jj: list[int] = []
    kk: list[int] = []
    ll: list[int] = []
    vv: list[float] = []
    for (a, b, c), value in d_tensor.items():
        for pa, pb, pc in set(permutations((a, b, c))):
            jj.append(pa - 1)
            kk.append(pb - 1)
            ll.append(pc - 1)
            vv.append(value)
    d_ordered = (
        np.array(jj, dtype=np.intp),
        np.array(kk, dtype=np.intp),
        np.array(ll, dtype=np.intp),
        np.array(vv, dtype=np.float64),
    )

    stack.setflags(write=False)
    generators = tuple(HermitianMatrix(m) for m in mats)
    return GeneratorBasis(n, generators, f_tensor, d_tensor, stack, d_ordered)


_BASIS_CACHE: dict[int, GeneratorBasis] = {}


def basis_for(n: int) -> GeneratorBasis:
    """Cached accessor for ``build_basis(n)``."""
    basis = _BASIS_CACHE.get(n)
    if basis is None:
        basis = build_basis(n)
        _BASIS_CACHE[n] = basis
    return basis


def _check_index(basis: GeneratorBasis, idx: int) -> None:
    if not 1 <= idx <= basis.n_generators:
        raise IndexError(f"generator index {idx} outside 1..{basis.n_generators}")


def _sorted_signed(j: int, k: int, l: int) -> tuple[tuple[int, int, int], float]:
    tagged = sorted(((j, 0), (k, 1), (l, 2)))
    order = tuple(pos for _, pos in tagged)
    sign = 1.0 if order in _EVEN_ORDERS else -1.0
    return (tagged[0][0], tagged[1][0], tagged[2][0]), sign


def structure_f(basis: GeneratorBasis, j: int, k: int, l: int) -> float:
    """Antisymmetric structure constant f_jkl (1-based indices)."""
    for idx in (j, k, l):
        _check_index(basis, idx)
    if j == k or k == l or j == l:
        return 0.0
    key, sign = _sorted_signed(j, k, l)
    return sign * basis.f_tensor.get(key, 0.0)


def structure_d(basis: GeneratorBasis, j: int, k: int, l: int) -> float:
    """Symmetric structure constant d_jkl (1-based indices)."""
    for idx in (j, k, l):
        _check_index(basis, idx)
    key = tuple(sorted((j, k, l)))
    return basis.d_tensor.get(key, 0.0)


def _dense_tensors(basis: GeneratorBasis) -> tuple[np.ndarray, np.ndarray]:
    ngen = basis.n_generators
    f = np.zeros((ngen, ngen, ngen))
    d = np.zeros((ngen, ngen, ngen))
    signed_orders = [
        ((0, 1, 2), 1.0),
        ((1, 2, 0), 1.0),
        ((2, 0, 1), 1.0),
        ((0, 2, 1), -1.0),
        ((2, 1, 0), -1.0),
        ((1, 0, 2), -1.0),
    ]
    for (a, b, c), value in basis.f_tensor.items():
        triple = (a - 1, b - 1, c - 1)
        for order, sign in signed_orders:
            f[triple[order[0]], triple[order[1]], triple[order[2]]] = sign * value
    for (a, b, c), value in basis.d_tensor.items():
        for pa, pb, pc in set(permutations((a - 1, b - 1, c - 1))):
            d[pa, pb, pc] = value
    return f, d


def max_algebra_residual(basis: GeneratorBasis) -> float:
    """Worst entrywise error when products g_j g_k are rebuilt from the
    stored tensors via g_j g_k = (2/N) δ_jk I + Σ_l (i f_jkl + d_jkl) g_l."""
    stack = basis.stacked()
    ngen = basis.n_generators
    f, d = _dense_tensors(basis)
    recon = np.einsum("jkl,lab->jkab", d + 1.0j * f, stack)
    recon[np.arange(ngen), np.arange(ngen)] += (2.0 / basis.dim) * np.eye(basis.dim)
    prod = np.einsum("jab,kbc->jkac", stack, stack)
    return float(np.abs(prod - recon).max())


def verify_algebra(basis: GeneratorBasis, tol: float = 1e-11) -> bool:
    """True iff every generator product is reproduced by the stored
    tensors to ``tol`` entrywise."""
    return max_algebra_residual(basis) <= tol
