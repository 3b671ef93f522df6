"""Root data for the classical and exceptional Dynkin types, Weyl group
enumeration, and diagram automorphisms.

Coordinate conventions, used throughout the package:

* Cartan matrix entry ``C[i][j] = <alpha_j, acheck_i>``.
* adjoint isogeny: the character lattice X has the simple roots as its
  standard basis, so ``alpha_i = e_i`` and ``acheck_j`` is row j of C.
* simply connected isogeny: the cocharacter lattice has the simple coroots
  as its standard basis, so ``acheck_j = e_j`` and ``alpha_i`` is column i of C.
* the pairing of X with the cocharacter lattice is the coordinate dot product.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property, lru_cache
from math import lcm

from .exactmath import (
    IntMatrix,
    IntVec,
    identity_matrix,
    mat_mul,
    mat_vec,
)

WEYL_CAP_DEFAULT = 1_000_000

_TYPE_RE = re.compile(r"^([A-G])([0-9]+)$")

_RANK_RANGE = {
    "A": (1, 8),
    "B": (2, 8),
    "C": (2, 8),
    "D": (3, 8),
    "E": (6, 8),
    "F": (4, 4),
    "G": (2, 2),
}

ISOGENIES = ("adjoint", "simply_connected")


class RootDatumError(ValueError):
    pass


class WeylCapExceeded(RuntimeError):
    pass


def parse_descriptor(descriptor: str) -> tuple[tuple[str, int], ...]:
    parts = [p.strip() for p in descriptor.split("+")]
    out = []
    for part in parts:
        m = _TYPE_RE.match(part)
        if not m:
            raise RootDatumError(f"unrecognized Dynkin type {part!r}")
        letter, rank = m.group(1), int(m.group(2))
        lo, hi = _RANK_RANGE[letter]
        if not lo <= rank <= hi:
            raise RootDatumError(f"rank {rank} out of range for type {letter}")
        out.append((letter, rank))
    return tuple(out)


def cartan_matrix_component(letter: str, n: int) -> IntMatrix:
    c = [[2 if i == j else 0 for j in range(n)] for i in range(n)]

    def join(i, j, cij=-1, cji=-1):
        c[i][j] = cij
        c[j][i] = cji

    if letter == "A":
        for i in range(n - 1):
            join(i, i + 1)
    elif letter == "B":
        for i in range(n - 2):
            join(i, i + 1)
        join(n - 2, n - 1, -1, -2)
    elif letter == "C":
        for i in range(n - 2):
            join(i, i + 1)
        join(n - 2, n - 1, -2, -1)
    elif letter == "D":
        for i in range(n - 3):
            join(i, i + 1)
        join(n - 3, n - 2)
        join(n - 3, n - 1)
    elif letter == "E":
        chain = [0, 2, 3, 4, 5, 6, 7][: n - 1]
        for a, b in zip(chain, chain[1:]):
            join(a, b)
        join(1, 3)
    elif letter == "F":
        join(0, 1)
        join(1, 2, -1, -2)
        join(2, 3)
    elif letter == "G":
        join(0, 1, -1, -3)
    return tuple(tuple(row) for row in c)


def cartan_matrix(descriptor: str) -> IntMatrix:
    comps = parse_descriptor(descriptor)
    n = sum(r for _, r in comps)
    c = [[0] * n for _ in range(n)]
    base = 0
    for letter, rank in comps:
        block = cartan_matrix_component(letter, rank)
        for i in range(rank):
            for j in range(rank):
                c[base + i][base + j] = block[i][j]
        base += rank
    return tuple(tuple(row) for row in c)


ROOT_COUNTS = {
    "A": lambda n: n * (n + 1),
    "B": lambda n: 2 * n * n,
    "C": lambda n: 2 * n * n,
    "D": lambda n: 2 * n * (n - 1),
    "E": lambda n: {6: 72, 7: 126, 8: 240}[n],
    "F": lambda n: 48,
    "G": lambda n: 12,
}

WEYL_ORDERS = {
    "A": lambda n: _factorial(n + 1),
    "B": lambda n: 2**n * _factorial(n),
    "C": lambda n: 2**n * _factorial(n),
    "D": lambda n: 2 ** (n - 1) * _factorial(n),
    "E": lambda n: {6: 51840, 7: 2903040, 8: 696729600}[n],
    "F": lambda n: 1152,
    "G": lambda n: 12,
}


def _factorial(n: int) -> int:
    out = 1
    for k in range(2, n + 1):
        out *= k
    return out


def classical_root_count(descriptor: str) -> int:
    return sum(ROOT_COUNTS[l](r) for l, r in parse_descriptor(descriptor))


def classical_weyl_order(descriptor: str) -> int:
    out = 1
    for l, r in parse_descriptor(descriptor):
        out *= WEYL_ORDERS[l](r)
    return out


@dataclass(frozen=True)
class RootDatum:
    """Roots and coroots as integer vectors in perfect pairing.

    ``roots[k]`` pairs with ``coroots[k]``; ``coeffs[k]`` are the coordinates
    of the root in the simple-root basis and ``cocoeffs[k]`` those of the
    coroot in the simple-coroot basis.
    """

    descriptor: str
    isogeny: str
    cartan: IntMatrix
    roots: tuple[IntVec, ...]
    coroots: tuple[IntVec, ...]
    coeffs: tuple[IntVec, ...]
    cocoeffs: tuple[IntVec, ...]

    @property
    def rank(self) -> int:
        return len(self.cartan)

    @cached_property
    def root_index(self) -> dict:
        return {r: i for i, r in enumerate(self.roots)}

    @cached_property
    def simple_indices(self) -> tuple[int, ...]:
        want = []
        for i in range(self.rank):
            unit = tuple(1 if j == i else 0 for j in range(self.rank))
            want.append(self.coeffs.index(unit))
        return tuple(want)

    @cached_property
    def simple_roots(self) -> tuple[IntVec, ...]:
        return tuple(self.roots[i] for i in self.simple_indices)

    @cached_property
    def simple_coroots(self) -> tuple[IntVec, ...]:
        return tuple(self.coroots[i] for i in self.simple_indices)

    def coroot_of(self, root: IntVec) -> IntVec:
        return self.coroots[self.root_index[root]]

    def is_positive(self, root: IntVec) -> bool:
        return sum(self.coeffs[self.root_index[root]]) > 0

    def height(self, root: IntVec) -> int:
        return sum(self.coeffs[self.root_index[root]])

    @cached_property
    def positive_roots(self) -> tuple[IntVec, ...]:
        return tuple(r for r in self.roots if self.is_positive(r))

    @cached_property
    def rho_check(self) -> tuple[Fraction, ...]:
        n = self.rank
        acc = [Fraction(0)] * n
        for r in self.positive_roots:
            cr = self.coroot_of(r)
            for i in range(n):
                acc[i] += Fraction(cr[i], 2)
        return tuple(acc)


def pairing(chi, mu) -> int:
    return sum(a * b for a, b in zip(chi, mu))


def build_datum(descriptor: str, isogeny: str = "adjoint") -> RootDatum:
    """Construct the root datum of the given type with the chosen isogeny."""
    if isogeny not in ISOGENIES:
        raise RootDatumError(f"unsupported isogeny {isogeny!r}")
    cartan = cartan_matrix(descriptor)
    n = len(cartan)
    simples = []
    for i in range(n):
        if isogeny == "adjoint":
            alpha = tuple(1 if j == i else 0 for j in range(n))
            acheck = tuple(cartan[i])
        else:
            alpha = tuple(cartan[j][i] for j in range(n))
            acheck = tuple(1 if j == i else 0 for j in range(n))
        unit = tuple(1 if j == i else 0 for j in range(n))
        simples.append((alpha, acheck, unit, unit))

    seen = {entry[0]: entry for entry in simples}
    frontier = list(simples)
    while frontier:
        root, coroot, coeff, cocoeff = frontier.pop()
        for i, (alpha, acheck, unit, counit) in enumerate(simples):
            p = pairing(root, acheck)
            q = pairing(alpha, coroot)
            new_root = tuple(a - p * b for a, b in zip(root, alpha))
            new_coroot = tuple(a - q * b for a, b in zip(coroot, acheck))
            new_coeff = tuple(a - p * b for a, b in zip(coeff, unit))
            new_cocoeff = tuple(a - q * b for a, b in zip(cocoeff, counit))
            if new_root not in seen:
                entry = (new_root, new_coroot, new_coeff, new_cocoeff)
                seen[new_root] = entry
                frontier.append(entry)

    entries = sorted(seen.values(), key=lambda e: (sum(e[2]), e[2]))
    datum = RootDatum(
        descriptor=descriptor,
        isogeny=isogeny,
        cartan=cartan,
        roots=tuple(e[0] for e in entries),
        coroots=tuple(e[1] for e in entries),
        coeffs=tuple(e[2] for e in entries),
        cocoeffs=tuple(e[3] for e in entries),
    )
    expected = classical_root_count(descriptor)
    if len(datum.roots) != expected:
        raise RootDatumError(
            f"generated {len(datum.roots)} roots for {descriptor}, expected {expected}"
        )
    for r, cr in zip(datum.roots, datum.coroots):
        if pairing(r, cr) != 2:
            raise RootDatumError("root/coroot pairing is not 2")
    return datum


def simple_reflection_matrices(datum: RootDatum) -> tuple[IntMatrix, ...]:
    """Matrices of the simple reflections acting on X (column vectors)."""
    n = datum.rank
    out = []
    for alpha, acheck in zip(datum.simple_roots, datum.simple_coroots):
        m = [[1 if i == j else 0 for j in range(n)] for i in range(n)]
        for i in range(n):
            for j in range(n):
                m[i][j] -= alpha[i] * acheck[j]
        out.append(tuple(tuple(row) for row in m))
    return tuple(out)


@lru_cache(maxsize=None)
def weyl_elements(datum: RootDatum, cap: int = WEYL_CAP_DEFAULT) -> tuple[IntMatrix, ...]:
    """All Weyl group elements as matrices on X, by breadth-first closure."""
    gens = simple_reflection_matrices(datum)
    start = identity_matrix(datum.rank)
    found = {start}
    frontier = [start]
    while frontier:
        nxt = []
        for w in frontier:
            for g in gens:
                prod = mat_mul(g, w)
                if prod not in found:
                    found.add(prod)
                    nxt.append(prod)
                    if len(found) > cap:
                        raise WeylCapExceeded(
                            f"Weyl group larger than cap {cap} for {datum.descriptor}"
                        )
        frontier = nxt
    return tuple(sorted(found))


def dual_action(matrix: IntMatrix) -> IntMatrix:
    """Matrix of the contragredient action on the cocharacter lattice."""
    from .exactmath import invert_unimodular, transpose

    return transpose(invert_unimodular(matrix))


@dataclass(frozen=True)
class DiagramAutomorphism:
    """A Dynkin diagram symmetry as a lattice automorphism.

    ``matrix`` acts on X; the same matrix also gives the action on the
    cocharacter lattice in its standard coordinates (it is a permutation
    matrix in both conventions).
    """

    permutation: tuple[int, ...]
    matrix: IntMatrix
    order: int

    @property
    def is_identity(self) -> bool:
        return all(p == i for i, p in enumerate(self.permutation))


def _permutation_order(perm) -> int:
    order = 1
    n = len(perm)
    seen = [False] * n
    for i in range(n):
        if seen[i]:
            continue
        length = 0
        j = i
        while not seen[j]:
            seen[j] = True
            j = perm[j]
            length += 1
        order = lcm(order, length)
    return order


def build_automorphism(datum: RootDatum, node_permutation) -> DiagramAutomorphism:
    """Validate a node permutation as a diagram symmetry and build its matrix."""
    perm = tuple(int(p) for p in node_permutation)
    n = datum.rank
    if sorted(perm) != list(range(n)):
        raise RootDatumError("node permutation is not a permutation of the nodes")
    for i in range(n):
        for j in range(n):
            if datum.cartan[perm[i]][perm[j]] != datum.cartan[i][j]:
                raise RootDatumError(
                    "node permutation does not preserve the Cartan matrix"
                )
    matrix = tuple(
        tuple(1 if i == perm[j] else 0 for j in range(n)) for i in range(n)
    )
    image = {mat_vec(matrix, r) for r in datum.roots}
    if image != set(datum.roots):
        raise RootDatumError("automorphism does not permute the roots")
    return DiagramAutomorphism(perm, matrix, _permutation_order(perm))


def identity_automorphism(datum: RootDatum) -> DiagramAutomorphism:
    return build_automorphism(datum, tuple(range(datum.rank)))
