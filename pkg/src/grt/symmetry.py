"""Index symmetry groups, orbit tables and symmetric parameterizations.

A group element acts on an index tuple ``s`` by ``(g s)[p] = s[perm[p]]``
followed, when ``flip`` is set, by ``s -> d - 1 - s`` on every leg.  A
symmetric tensor takes equal values on each orbit, so it is fixed by one
value per orbit representative.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np

from .errors import BudgetError, ConstraintError, DimensionError
from .tensor import DenseTensor

__all__ = [
    "SymmetrySpec",
    "OrbitTable",
    "ConstraintSystem",
    "pentagon_rotation",
    "hexagon_rotation",
    "hexagon_full",
    "orbits",
    "expand",
    "restrict",
    "symmetry_defect",
    "apply_local_rotation",
    "rotation_matrix",
    "constraint_equations",
]

MAX_GROUP_ORDER = 10_000


@dataclass(frozen=True)
class SymmetrySpec:
    """Generators of an index permutation and spin-flip group.

    Parameters
    ----------
    labels : tuple of int
        Leg labels in storage order.
    generators : tuple of (perm, flip)
        ``perm`` permutes storage positions ``0..n-1``.
    """

    labels: tuple
    generators: tuple

    def __post_init__(self):
        n = len(self.labels)
        gens = []
        for perm, flip in self.generators:
            perm = tuple(int(p) for p in perm)
            if sorted(perm) != list(range(n)):
                raise ConstraintError(f"{perm} is not a permutation of 0..{n - 1}")
            gens.append((perm, bool(flip)))
        object.__setattr__(self, "labels", tuple(self.labels))
        object.__setattr__(self, "generators", tuple(gens))

    @property
    def n(self) -> int:
        return len(self.labels)

    def elements(self) -> list:
        """Closure of the generators, identity first."""
        n = self.n
        identity = (tuple(range(n)), False)
        seen = {identity}
        out = [identity]
        frontier = [identity]
        while frontier:
            nxt = []
            for perm, flip in frontier:
                for gperm, gflip in self.generators:
                    # apply g after the current element
                    new = (tuple(perm[gperm[p]] for p in range(n)), flip ^ gflip)
                    if new not in seen:
                        seen.add(new)
                        out.append(new)
                        nxt.append(new)
                        if len(out) > MAX_GROUP_ORDER:
                            raise BudgetError("symmetry group order exceeds 10^4")
            frontier = nxt
        return out


def pentagon_rotation() -> SymmetrySpec:
    """Cyclic rotation of the five legs ``1..5``."""
    return SymmetrySpec(tuple(range(1, 6)), (((1, 2, 3, 4, 0), False),))


def hexagon_rotation() -> SymmetrySpec:
    """Cyclic rotation of bond legs ``1..6``; bulk leg ``0`` is fixed."""
    return SymmetrySpec(tuple(range(7)), (((0, 2, 3, 4, 5, 6, 1), False),))


def hexagon_full() -> SymmetrySpec:
    """Bond rotation, global spin flip, and the reflection fixing leg 1."""
    return SymmetrySpec(
        tuple(range(7)),
        (
            ((0, 2, 3, 4, 5, 6, 1), False),
            (tuple(range(7)), True),
            ((0, 1, 6, 5, 4, 3, 2), False),
        ),
    )


@dataclass(frozen=True, eq=False)
class OrbitTable:
    """Orbit partition of all index tuples.

    Attributes
    ----------
    representatives : list of tuple
        Lexicographically smallest member of each orbit, in ascending order.
    orbit_of : ndarray of int
        Orbit number of every flat (row-major) index.
    """

    labels: tuple
    local_dim: int
    representatives: list
    orbit_of: np.ndarray

    @property
    def n(self) -> int:
        return len(self.labels)

    @property
    def shape(self) -> tuple:
        return (self.local_dim,) * self.n

    def __len__(self) -> int:
        return len(self.representatives)

    def orbit_sizes(self) -> np.ndarray:
        return np.bincount(self.orbit_of, minlength=len(self))

    def representative(self, index_tuple) -> tuple:
        flat = np.ravel_multi_index(tuple(index_tuple), self.shape)
        return self.representatives[self.orbit_of[flat]]

    def position(self, index_tuple) -> int:
        """Orbit number of any member tuple."""
        flat = np.ravel_multi_index(tuple(index_tuple), self.shape)
        return int(self.orbit_of[flat])

    def expansion_matrix(self) -> np.ndarray:
        """0/1 matrix ``E`` with ``coeffs = E @ values``."""
        E = np.zeros((self.orbit_of.size, len(self)))
        E[np.arange(self.orbit_of.size), self.orbit_of] = 1.0
        return E


def orbits(spec: SymmetrySpec, local_dim: int = 2) -> OrbitTable:
    """Partition all ``d**n`` index tuples into orbits of the group."""
    n, d = spec.n, int(local_dim)
    group = spec.elements()
    shape = (d,) * n
    tuples = np.array(list(itertools.product(range(d), repeat=n)), dtype=np.int64)
    orbit_of = np.full(len(tuples), -1, dtype=np.int64)
    # images[g] holds the flat index of g applied to every tuple
    images = []
    for perm, flip in group:
        img = tuples[:, list(perm)]
        if flip:
            img = d - 1 - img
        images.append(np.ravel_multi_index(img.T, shape))
    images = np.array(images)
    reps = []
    for flat in range(len(tuples)):
        if orbit_of[flat] >= 0:
            continue
        members = images[:, flat]
        orbit_of[members] = len(reps)
        reps.append(tuple(int(x) for x in tuples[members.min()]))
    order = sorted(range(len(reps)), key=lambda k: reps[k])
    relabel = np.empty(len(reps), dtype=np.int64)
    relabel[order] = np.arange(len(reps))
    return OrbitTable(spec.labels, d, [reps[k] for k in order], relabel[orbit_of])


def _values_vector(values, table: OrbitTable) -> np.ndarray:
    if isinstance(values, dict):
        vec = np.zeros(len(table), dtype=complex)
        assigned = np.zeros(len(table), dtype=bool)
        for key, val in values.items():
            pos = table.position(key)
            vec[pos] = val
            assigned[pos] = True
        if not assigned.all():
            missing = [table.representatives[k] for k in np.flatnonzero(~assigned)]
            raise ConstraintError(f"no value for representatives {missing}")
        return vec
    vec = np.asarray(values, dtype=complex).ravel()
    if vec.size != len(table):
        raise DimensionError(f"{vec.size} values given for {len(table)} orbits")
    return vec


def expand(values, table: OrbitTable) -> DenseTensor:
    """Full tensor taking each orbit's value on every member.

    ``values`` is either a sequence in representative order or a mapping
    from any orbit member to its value.
    """
    vec = _values_vector(values, table)
    return DenseTensor(vec[table.orbit_of].reshape(table.shape), table.labels)


def restrict(T: DenseTensor, table: OrbitTable) -> np.ndarray:
    """Values at the representatives, in table order."""
    T = T.permute(table.labels)
    flat = T.coeffs
    return np.array([flat[np.ravel_multi_index(r, table.shape)] for r in table.representatives])


def symmetry_defect(T: DenseTensor, table: OrbitTable) -> float:
    """Largest spread of coefficient values inside one orbit."""
    flat = T.permute(table.labels).coeffs
    rep_vals = restrict(T, table)
    return float(np.max(np.abs(flat - rep_vals[table.orbit_of])))


def rotation_matrix(phi: float) -> np.ndarray:
    """Real form of ``exp(i phi Y)`` on one qubit."""
    c, s = np.cos(phi), np.sin(phi)
    return np.array([[c, s], [-s, c]])


def apply_local_rotation(T: DenseTensor, phi: float, legs=None) -> DenseTensor:
    """Apply the same single-qubit rotation to the chosen legs (default all)."""
    legs = T.labels if legs is None else tuple(legs)
    for lab in legs:
        if T.dim(lab) != 2:
            raise DimensionError(f"leg {lab} has dimension {T.dim(lab)}, not 2")
    S = rotation_matrix(phi)
    for lab in legs:
        T = T.apply(lab, S)
    return T


class ConstraintSystem:
    """Distinct quadratic residuals of ``rho_clique(x) - I = 0``.

    Each residual is ``x^T Q_k x - c_k`` for real component vectors ``x``.
    """

    def __init__(self, table: OrbitTable, clique, quads, consts, entries, trace_quad):
        self.table = table
        self.trace_quad = np.asarray(trace_quad)
        self.clique = tuple(clique)
        self.quads = np.asarray(quads)
        self.consts = np.asarray(consts, dtype=float)
        self.entries = list(entries)
        self.dim = table.local_dim ** len(self.clique)

    def __len__(self) -> int:
        return len(self.consts)

    def _scaled(self, x, normalize):
        x = np.asarray(x, dtype=float)
        if normalize:
            tr = float(x @ self.trace_quad @ x)
            x = x * np.sqrt(self.dim / tr)
        return x

    def __call__(self, x, normalize=False) -> np.ndarray:
        x = self._scaled(x, normalize)
        return np.einsum("kij,i,j->k", self.quads, x, x) - self.consts

    def jacobian(self, x, normalize=False) -> np.ndarray:
        x = self._scaled(x, normalize)
        return np.einsum("kij,j->ki", self.quads + self.quads.transpose(0, 2, 1), x)


def _reduction_quadratics(table: OrbitTable, clique):
    """Quadratic forms ``Q[a, b]`` with ``rho[a, b] = x^T Q[a, b] x``."""
    pos = [table.labels.index(c) for c in clique]
    rest = [p for p in range(table.n) if p not in pos]
    E = table.expansion_matrix().reshape(table.shape + (len(table),))
    D = table.local_dim ** len(pos)
    A = np.transpose(E, pos + rest + [table.n]).reshape(D, -1, len(table))
    return np.einsum("atr,bts->abrs", A, A)


def constraint_equations(spec: SymmetrySpec, clique, local_dim=2, tol=1e-9, seed=0):
    """Count the distinct scalar equations of ``rho_clique = I``.

    Returns
    -------
    count : int
    system : ConstraintSystem
        Evaluator of the distinct residuals (and their Jacobian).
    """
    clique = tuple(sorted(int(c) for c in clique))
    for c in clique:
        if c not in spec.labels:
            raise ConstraintError(f"clique label {c} not among {spec.labels}")
    table = orbits(spec, local_dim)
    Q = _reduction_quadratics(table, clique)
    D = Q.shape[0]
    rng = np.random.default_rng(seed)
    points = rng.uniform(-1, 1, size=(8, len(table)))
    quads, consts, entries, prints = [], [], [], []
    for a in range(D):
        for b in range(a, D):
            q = 0.5 * (Q[a, b] + Q[a, b].T)
            c = 1.0 if a == b else 0.0
            fp = np.einsum("pi,ij,pj->p", points, q, points) - c
            if np.max(np.abs(fp)) <= tol:
                continue
            if any(np.max(np.abs(fp - f)) <= tol for f in prints):
                continue
            prints.append(fp)
            quads.append(q)
            consts.append(c)
            entries.append((a, b))
    trace_quad = sum(Q[a, a] for a in range(D))
    return len(quads), ConstraintSystem(table, clique, quads, consts, entries, trace_quad)
