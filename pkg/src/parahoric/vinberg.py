"""Z/M-gradings of a Chevalley algebra under the composition of a pinned
diagram automorphism with a torus element, the degree-zero root set, and the
independent crosscheck against the filtration-quotient dimensions.

The grading is computed orbit by orbit: a twist orbit O of size k on the
roots, with weight sum c_O against the defining cocharacter and sign eps_O
(the sign of gamma-hat^k on any root vector of O), contributes one dimension
to every degree d with k*d = c_O + (M/2)*[eps_O = -1] mod M.  The Cartan
contributes the eigenvalue multiplicities of the twist on the cocharacter
lattice.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd

from .chevalley import ChevalleyAlgebra, PinnedAutomorphism, orbit_sign, pinned_automorphism, structure_constants
from .echelonnage import ApartmentPoint, TwistedDatum, point_order
from .mpquotient import mp_quotient, quotient_datum
from .rootdata import pairing


class GradingError(ValueError):
    pass


@dataclass(frozen=True)
class GradedDecomposition:
    modulus: int
    dims: tuple[int, ...]
    zero_degree_roots: frozenset
    negative_sign_orbits: tuple

    @property
    def total(self) -> int:
        return sum(self.dims)


def _twist_orbits(alg: ChevalleyAlgebra, pinned: PinnedAutomorphism):
    datum = alg.datum
    seen = set()
    orbits = []
    for r in datum.roots:
        if r in seen:
            continue
        orbit = [r]
        cur = pinned._image_root(r)
        while cur != r:
            orbit.append(cur)
            cur = pinned._image_root(cur)
        seen |= set(orbit)
        orbits.append(tuple(orbit))
    return orbits


def grading(
    alg: ChevalleyAlgebra,
    pinned: PinnedAutomorphism,
    lam,
    modulus: int,
) -> GradedDecomposition:
    """Graded dimensions for the order-M operator built from the pinned
    automorphism and the cocharacter lam (which must pair integrally with
    every root)."""
    lam = tuple(Fraction(c) for c in lam)
    datum = alg.datum
    m = int(modulus)
    if m <= 0:
        raise GradingError("modulus must be positive")
    for root in datum.roots:
        w = pairing(root, lam)
        if Fraction(w).denominator != 1:
            raise GradingError("cocharacter does not pair integrally with the roots")
    dims = [0] * m
    zero_roots = set()
    negative_orbits = []
    for orbit in _twist_orbits(alg, pinned):
        k = len(orbit)
        c = sum(int(pairing(root, lam)) for root in orbit)
        eps = orbit_sign(alg, pinned, orbit[0])
        shift = 0
        if eps == -1:
            if m % 2 != 0:
                raise GradingError(
                    "orbit with sign -1 requires an even modulus"
                )
            shift = m // 2
        hits = [d for d in range(m) if (k * d - c - shift) % m == 0]
        if len(hits) != k:
            raise GradingError(
                "orbit does not distribute over the expected degrees; "
                "the modulus must be a multiple of the twist order and point order"
            )
        for d in hits:
            dims[d] += 1
        if 0 in hits:
            key = tuple(
                Fraction(sum(v[i] for v in orbit), k) for i in range(datum.rank)
            )
            zero_roots.add(key)
        if eps == -1:
            negative_orbits.append(orbit[0])
    eigen = _twist_eigen_for_algebra(alg, pinned)
    for d in range(m):
        k_d = m // gcd(d, m)
        dims[d] += eigen.get(k_d, 0)
    total = len(datum.roots) + datum.rank
    if sum(dims) != total:
        raise GradingError("graded dimensions do not sum to the algebra dimension")
    return GradedDecomposition(
        modulus=m,
        dims=tuple(dims),
        zero_degree_roots=frozenset(zero_roots),
        negative_sign_orbits=tuple(sorted(negative_orbits)),
    )


def _twist_eigen_for_algebra(alg: ChevalleyAlgebra, pinned: PinnedAutomorphism):
    from .exactmath import cyclotomic_multiplicities

    return cyclotomic_multiplicities(pinned.twist.matrix)


def fixed_datum_roots(gd: GradedDecomposition) -> frozenset:
    return gd.zero_degree_roots


@dataclass(frozen=True)
class CrosscheckResult:
    ok: bool
    modulus: int
    dims: tuple[int, ...]
    quotient_dims: tuple[int, ...]
    first_mismatch: int | None
    roots_match: bool
    negative_sign_orbits: tuple

    def __bool__(self) -> bool:
        return self.ok


def crosscheck(td: TwistedDatum, x: ApartmentPoint, modulus: int) -> CrosscheckResult:
    """Compare the graded dimensions at x with the filtration quotients:
    degree (M - d) mod M against depth d/M, and the degree-zero root set
    against the reductive-quotient roots.  Requires a tame datum and a
    modulus divisible by both the twist order and the point order."""
    if not td.is_tame:
        raise GradingError(
            "crosscheck requires a tame datum (all lambda valuations zero); "
            "shift the point with companion_shift first"
        )
    m = int(modulus)
    e = td.twist.order
    order = point_order(td, x)
    if m % e != 0 or m % order != 0:
        raise GradingError(
            f"modulus {m} must be a common multiple of the twist order {e} "
            f"and the point order {order}"
        )
    alg = structure_constants(td.base)
    pinned = pinned_automorphism(alg, td.twist)
    lam = tuple(m * c for c in x.coords)
    gd = grading(alg, pinned, lam, m)
    quotient = [mp_quotient(td, x, Fraction(d, m)).total_dim for d in range(m)]
    first_mismatch = None
    for d in range(m):
        if gd.dims[(m - d) % m] != quotient[d]:
            first_mismatch = d
            break
    h = quotient_datum(td, x)
    roots_match = frozenset(h.roots) == gd.zero_degree_roots
    ok = first_mismatch is None and roots_match
    return CrosscheckResult(
        ok=ok,
        modulus=m,
        dims=gd.dims,
        quotient_dims=tuple(quotient),
        first_mismatch=first_mismatch,
        roots_match=roots_match,
        negative_sign_orbits=gd.negative_sign_orbits,
    )
