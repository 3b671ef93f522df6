"""Elliptic Z-regular elements in twisted Weyl cosets and the stable-vector
verdict: a point passes when it reduces to the distinguished barycenter
x0 + rho_check/m, its first jump is 1/m, and the twisted Weyl coset contains
an elliptic Z-regular element of order m.

Z-regularity is implemented as free action of the cyclic group on the roots,
with an independent eigenvector criterion (rational kernels of cyclotomic
evaluations against the root hyperplanes) used as a cross-check.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import lcm

from .echelonnage import (
    ApartmentPoint,
    TwistedDatum,
    alcove_reduce,
    apartment_point,
)
from .exactmath import (
    IntMatrix,
    cyclotomic_multiplicities,
    cyclotomic_polynomial,
    identity_matrix,
    kernel_basis,
    mat_mul,
    mat_vec,
    matrix_rank,
)
from .mpquotient import first_jump, mp_quotient
from .rootdata import DiagramAutomorphism, RootDatum, pairing, weyl_elements


class StabilityError(RuntimeError):
    pass


def is_semisimple(datum: RootDatum) -> bool:
    return matrix_rank([list(map(Fraction, r)) for r in datum.roots]) == datum.rank


def _coset_order_and_spectrum(a: IntMatrix):
    mult = cyclotomic_multiplicities(a)
    order = 1
    for k in mult:
        order = lcm(order, k)
    return order, mult


def acts_freely_on_roots(a: IntMatrix, datum: RootDatum, order: int) -> bool:
    """Every orbit of the cyclic group generated by a on the roots has full
    size equal to the order of a."""
    rootset = set(datum.roots)
    seen = set()
    for r in datum.roots:
        if r in seen:
            continue
        orbit = [r]
        cur = tuple(mat_vec(a, r))
        if cur not in rootset:
            raise StabilityError("matrix does not permute the roots")
        while cur != r:
            orbit.append(cur)
            cur = tuple(mat_vec(a, cur))
        if len(orbit) != order:
            return False
        seen |= set(orbit)
    return True


def regular_by_eigenvector(a: IntMatrix, datum: RootDatum, order: int) -> bool:
    """Eigenvector criterion: the spectrum contains a primitive eigenvalue of
    full order whose eigenspace avoids every root hyperplane.  Over the
    rationals this reads off the kernel of the cyclotomic evaluation: the
    eigenspace lies in a root hyperplane exactly when the whole kernel does
    (the hyperplane is rational and Galois permutes the eigenspaces)."""
    mult = cyclotomic_multiplicities(a)
    if mult.get(order, 0) == 0:
        return False
    n = len(a)
    phi = cyclotomic_polynomial(order)
    acc = [[Fraction(0)] * n for _ in range(n)]
    power = identity_matrix(n)
    for coeff in phi:
        if coeff:
            for i in range(n):
                for j in range(n):
                    acc[i][j] += coeff * power[i][j]
        power = mat_mul(power, a)
    kernel = kernel_basis(acc)
    if not kernel:
        return False
    for acheck in datum.coroots:
        if all(pairing(v, acheck) == 0 for v in kernel):
            return False
    return True


@lru_cache(maxsize=None)
def elliptic_zregular_orders(
    datum: RootDatum, twist: DiagramAutomorphism, cap: int = 1_000_000
) -> dict:
    """Map from attained order m to a witness matrix w*twist that is elliptic
    (no invariant vectors) and Z-regular (free on the roots); the smallest
    witness in lexicographic order is kept per order."""
    witnesses: dict[int, IntMatrix] = {}
    for w in weyl_elements(datum, cap):
        a = mat_mul(w, twist.matrix)
        order, mult = _coset_order_and_spectrum(a)
        if mult.get(1, 0):
            continue  # eigenvalue 1: not elliptic
        if not acts_freely_on_roots(a, datum, order):
            continue
        if order not in witnesses or a < witnesses[order]:
            witnesses[order] = a
    return witnesses


def zregularity_criteria_agree(
    datum: RootDatum, twist: DiagramAutomorphism, cap: int = 1_000_000
) -> bool:
    """Cross-validate the free-action and eigenvector readings of regularity
    on the whole coset; disagreement raises with a diagnostic."""
    for w in weyl_elements(datum, cap):
        a = mat_mul(w, twist.matrix)
        order, _ = _coset_order_and_spectrum(a)
        free = acts_freely_on_roots(a, datum, order)
        eigen = regular_by_eigenvector(a, datum, order)
        if free != eigen:
            raise StabilityError(
                f"Z-regularity criteria disagree on an element of order {order}: "
                f"free-action {free}, eigenvector {eigen}"
            )
    return True


@dataclass(frozen=True)
class StabilityVerdict:
    m: int
    conjugacy_ok: bool
    depth_ok: bool
    regular_ok: bool
    verdict: bool
    witness: IntMatrix | None
    reduced_point: tuple
    reduced_reference: tuple
    first_jump: Fraction


def stable_verdict(
    td: TwistedDatum, x: ApartmentPoint, cap: int = 1_000_000
) -> StabilityVerdict:
    """Stable-vector criterion at the first jump of x."""
    from .echelonnage import point_order

    if not is_semisimple(td.base):
        raise StabilityError(
            "stability verdicts need a semisimple datum; central directions "
            "make ellipticity vacuous"
        )
    m = point_order(td, x)
    reference = apartment_point(
        td, tuple(Fraction(c) / m for c in td.base.rho_check)
    )
    reduced_x = alcove_reduce(td, x)
    reduced_ref = alcove_reduce(td, reference)
    conjugacy_ok = reduced_x == reduced_ref
    jump = first_jump(td, x)
    depth_ok = jump == Fraction(1, m)
    orders = elliptic_zregular_orders(td.base, td.twist, cap)
    regular_ok = m in orders
    verdict = conjugacy_ok and depth_ok and regular_ok
    if verdict:
        report = mp_quotient(td, x, jump)
        if report.total_dim <= 0:
            raise StabilityError("verdict true but the first quotient is zero")
        from .echelonnage import restrict

        full_rank = matrix_rank(
            [list(map(Fraction, rr.key)) for rr in restrict(td)]
        )
        part_rank = matrix_rank([list(map(Fraction, k)) for k in report.root_part])
        if part_rank != full_rank:
            raise StabilityError(
                "verdict true but the first quotient weights do not span"
            )
    return StabilityVerdict(
        m=m,
        conjugacy_ok=conjugacy_ok,
        depth_ok=depth_ok,
        regular_ok=regular_ok,
        verdict=verdict,
        witness=orders.get(m),
        reduced_point=reduced_x.coords,
        reduced_reference=reduced_ref.coords,
        first_jump=jump,
    )
