"""Restricted root systems of twisted root data, their valuation sets,
apartment points, point order, alcove reduction, and the companion shift
that absorbs nonzero lambda-valuations into a point displacement.

A twisted datum is a root datum together with a diagram automorphism and a
lambda-valuation (a nonpositive rational in (1/e)Z) for each positive
multipliable restricted root; zero valuations model the tame situation.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import lcm

from .exactmath import (
    ValuationSet,
    Vec,
    kernel_basis,
    mat_vec,
    solve_linear,
)
from .rootdata import DiagramAutomorphism, RootDatum, identity_automorphism

ALCOVE_ITERATION_CAP = 100_000


class EchelonnageError(ValueError):
    pass


def _vec_add(a, b):
    return tuple(x + y for x, y in zip(a, b))


def _vec_sub(a, b):
    return tuple(x - y for x, y in zip(a, b))


def _vec_scale(c, a):
    return tuple(c * x for x in a)


def _frac_vec(v) -> Vec:
    return tuple(Fraction(x) for x in v)


def pair(chi, mu) -> Fraction:
    return sum((Fraction(a) * Fraction(b) for a, b in zip(chi, mu)), Fraction(0))


@dataclass(frozen=True)
class RestrictedRoot:
    """One restricted root: the orbit average of its fiber of absolute roots."""

    key: Vec
    fiber: tuple
    orbit_size: int
    cls: str  # plain | multipliable | divisible
    jump_set: ValuationSet
    positive: bool

    def negate_key(self) -> Vec:
        return tuple(-x for x in self.key)


@dataclass(frozen=True)
class _Scaffold:
    keys: tuple[Vec, ...]
    fibers: tuple[tuple, ...]
    orbit_sizes: tuple[int, ...]
    classes: tuple[str, ...]
    positives: tuple[bool, ...]
    positive_mult_keys: tuple[Vec, ...]


@lru_cache(maxsize=None)
def _scaffold(base: RootDatum, twist: DiagramAutomorphism) -> _Scaffold:
    orbits = []
    seen = set()
    for r in base.roots:
        if r in seen:
            continue
        orbit = [r]
        cur = mat_vec(twist.matrix, r)
        while cur != r:
            orbit.append(cur)
            cur = mat_vec(twist.matrix, cur)
        seen |= set(orbit)
        orbits.append(tuple(orbit))

    keyed: dict[Vec, tuple] = {}
    for orbit in orbits:
        n = len(orbit)
        key = tuple(
            Fraction(sum(r[i] for r in orbit), n) for i in range(base.rank)
        )
        if key in keyed:
            raise EchelonnageError(
                "two distinct twist orbits share a restriction; "
                "this configuration is not supported"
            )
        keyed[key] = orbit

    keys = sorted(keyed)
    keyset = set(keys)
    classes = []
    positives = []
    for key in keys:
        double = tuple(2 * x for x in key)
        half = tuple(x / 2 for x in key)
        if double in keyset:
            classes.append("multipliable")
        elif half in keyset:
            classes.append("divisible")
        else:
            classes.append("plain")
        positives.append(base.is_positive(keyed[key][0]))
    pos_mult = tuple(
        k for k, c, p in zip(keys, classes, positives) if c == "multipliable" and p
    )
    return _Scaffold(
        keys=tuple(keys),
        fibers=tuple(keyed[k] for k in keys),
        orbit_sizes=tuple(len(keyed[k]) for k in keys),
        classes=tuple(classes),
        positives=tuple(positives),
        positive_mult_keys=pos_mult,
    )


@dataclass(frozen=True)
class TwistedDatum:
    base: RootDatum
    twist: DiagramAutomorphism
    lambda_valuations: tuple[Fraction, ...]

    @property
    def is_tame(self) -> bool:
        return all(v == 0 for v in self.lambda_valuations)


def positive_multipliable_keys(base: RootDatum, twist: DiagramAutomorphism):
    return _scaffold(base, twist).positive_mult_keys


def twisted(
    base: RootDatum,
    twist: DiagramAutomorphism | None = None,
    lambda_valuations=None,
) -> TwistedDatum:
    """Assemble a twisted datum, validating the lambda-valuations.

    ``lambda_valuations`` maps the index of a positive multipliable restricted
    root (in sorted key order) to a nonpositive rational in (1/e)Z; missing
    entries default to zero.
    """
    if twist is None:
        twist = identity_automorphism(base)
    scaff = _scaffold(base, twist)
    count = len(scaff.positive_mult_keys)
    values = [Fraction(0)] * count
    if lambda_valuations:
        items = (
            lambda_valuations.items()
            if hasattr(lambda_valuations, "items")
            else enumerate(lambda_valuations)
        )
        for idx, val in items:
            idx = int(idx)
            if not 0 <= idx < count:
                raise EchelonnageError(
                    f"lambda valuation index {idx} out of range (have {count} "
                    "positive multipliable restricted roots)"
                )
            values[idx] = Fraction(val)
    for idx, val in enumerate(values):
        key = scaff.positive_mult_keys[idx]
        e = scaff.orbit_sizes[scaff.keys.index(key)]
        if val > 0:
            raise EchelonnageError("lambda valuation must be nonpositive")
        if (val * e).denominator != 1:
            raise EchelonnageError(
                f"lambda valuation {val} is not in (1/{e})Z"
            )
    return TwistedDatum(base, twist, tuple(values))


def _lambda_for_key(td: TwistedDatum, key: Vec) -> Fraction:
    scaff = _scaffold(td.base, td.twist)
    if key in scaff.positive_mult_keys:
        return td.lambda_valuations[scaff.positive_mult_keys.index(key)]
    neg = tuple(-x for x in key)
    if neg in scaff.positive_mult_keys:
        return td.lambda_valuations[scaff.positive_mult_keys.index(neg)]
    raise EchelonnageError("key is not a multipliable restricted root")


@lru_cache(maxsize=None)
def restrict(td: TwistedDatum) -> tuple[RestrictedRoot, ...]:
    """Restricted roots with their valuation sets.

    plain a:        (1/e_a) Z
    multipliable a: v(lambda)/2 + (1/e_a) Z
    divisible 2a:   (1/e) Z minus (v(lambda) + (2/e) Z), e the orbit size of
                    the multipliable root below; the difference is the single
                    progression v(lambda) + 1/e + (2/e) Z.
    """
    scaff = _scaffold(td.base, td.twist)
    out = []
    for key, fiber, e, cls, positive in zip(
        scaff.keys, scaff.fibers, scaff.orbit_sizes, scaff.classes, scaff.positives
    ):
        if cls == "plain":
            jumps = ValuationSet.lattice(Fraction(1, e))
        elif cls == "multipliable":
            lam = _lambda_for_key(td, key)
            jumps = ValuationSet.from_components([(lam / 2, Fraction(1, e))])
        else:
            half = tuple(x / 2 for x in key)
            e_mult = scaff.orbit_sizes[scaff.keys.index(half)]
            lam = _lambda_for_key(td, half)
            jumps = ValuationSet.from_components(
                [(lam + Fraction(1, e_mult), Fraction(2, e_mult))]
            )
        out.append(
            RestrictedRoot(
                key=key,
                fiber=fiber,
                orbit_size=e,
                cls=cls,
                jump_set=jumps,
                positive=positive,
            )
        )
    return tuple(out)


def restricted_by_key(td: TwistedDatum) -> dict:
    return {rr.key: rr for rr in restrict(td)}


def restricted_coroot(td: TwistedDatum, rr: RestrictedRoot) -> Vec:
    """Coroot of a restricted root: the fiber coroot sum, doubled in the
    multipliable case so that the pairing with the key is 2."""
    n = td.base.rank
    acc = [Fraction(0)] * n
    for alpha in rr.fiber:
        cr = td.base.coroot_of(alpha)
        for i in range(n):
            acc[i] += cr[i]
    if rr.cls == "multipliable":
        acc = [2 * x for x in acc]
    out = tuple(acc)
    if pair(rr.key, out) != 2:
        raise EchelonnageError("restricted coroot does not pair to 2")
    return out


def simple_restricted_keys(td: TwistedDatum) -> tuple[Vec, ...]:
    """Restrictions of the simple roots, one per twist orbit of nodes."""
    scaff = _scaffold(td.base, td.twist)
    keys = []
    for idx in td.base.simple_indices:
        root = td.base.roots[idx]
        for key, fiber in zip(scaff.keys, scaff.fibers):
            if root in fiber and key not in keys:
                keys.append(key)
    return tuple(sorted(keys))


@dataclass(frozen=True)
class ApartmentPoint:
    """Displacement x - x0, a rational vector fixed by the twist."""

    coords: Vec


def apartment_point(td: TwistedDatum, coords) -> ApartmentPoint:
    v = _frac_vec(coords)
    if len(v) != td.base.rank:
        raise EchelonnageError("apartment point has the wrong dimension")
    if tuple(mat_vec(td.twist.matrix, v)) != v:
        raise EchelonnageError("apartment point is not fixed by the twist")
    return ApartmentPoint(v)


def origin(td: TwistedDatum) -> ApartmentPoint:
    return ApartmentPoint(tuple(Fraction(0) for _ in range(td.base.rank)))


def point_from_simple_coroots(td: TwistedDatum, coefficients) -> ApartmentPoint:
    by_key = restricted_by_key(td)
    simples = simple_restricted_keys(td)
    coeffs = [Fraction(c) for c in coefficients]
    if len(coeffs) != len(simples):
        raise EchelonnageError(
            f"expected {len(simples)} coordinates (one per restricted simple coroot)"
        )
    acc = tuple(Fraction(0) for _ in range(td.base.rank))
    for c, key in zip(coeffs, simples):
        acc = _vec_add(acc, _vec_scale(c, restricted_coroot(td, by_key[key])))
    return apartment_point(td, acc)


def fixed_space_basis(td: TwistedDatum) -> tuple[Vec, ...]:
    """Rational basis of the twist-fixed subspace of the cocharacter space."""
    n = td.base.rank
    p = td.twist.matrix
    rows = [
        [Fraction(p[i][j] - (1 if i == j else 0)) for j in range(n)]
        for i in range(n)
    ]
    return tuple(kernel_basis(rows))


def evaluate(key: Vec, point: ApartmentPoint) -> Fraction:
    return pair(key, point.coords)


def point_order(td: TwistedDatum, x: ApartmentPoint) -> int:
    """Least m with every affine-root value at x in (1/m)Z."""
    m = 1
    for rr in restrict(td):
        val = evaluate(rr.key, x)
        for off in rr.jump_set.offsets:
            m = lcm(m, (val + off).denominator)
        m = lcm(m, rr.jump_set.step.denominator)
    return m


# ---------------------------------------------------------------------------
# alcove reduction


@dataclass(frozen=True)
class _Wall:
    key: Vec
    coroot: Vec
    lo: Fraction
    hi: Fraction


@lru_cache(maxsize=None)
def _walls(td: TwistedDatum) -> tuple[_Wall, ...]:
    """For each positive restricted root, the pair of hyperplane levels that
    bound the alcove of the reference point."""
    positives = [rr for rr in restrict(td) if rr.positive]
    if not positives:
        raise EchelonnageError("restricted root system is empty")
    direction = tuple(Fraction(0) for _ in range(td.base.rank))
    for rr in positives:
        direction = _vec_add(direction, restricted_coroot(td, rr))
    delta = None
    heights = {}
    for rr in positives:
        h = pair(rr.key, direction)
        if h <= 0:
            raise EchelonnageError("reference direction is not regular")
        heights[rr.key] = h
        bound = rr.jump_set.min_above(0) / h
        if delta is None or bound < delta:
            delta = bound
    ref_scale = delta / 2
    walls = []
    for rr in positives:
        ref_val = ref_scale * heights[rr.key]
        walls.append(
            _Wall(
                key=rr.key,
                coroot=restricted_coroot(td, rr),
                lo=rr.jump_set.max_below(ref_val),
                hi=rr.jump_set.min_above(ref_val),
            )
        )
    return tuple(walls)


def in_base_alcove(td: TwistedDatum, x: ApartmentPoint) -> bool:
    return all(
        w.lo <= pair(w.key, x.coords) <= w.hi for w in _walls(td)
    )


def alcove_reduce(td: TwistedDatum, x: ApartmentPoint) -> ApartmentPoint:
    """The unique representative of the affine-Weyl orbit of x in the closed
    base alcove, found by folding across violated walls."""
    walls = _walls(td)
    v = x.coords
    for _ in range(ALCOVE_ITERATION_CAP):
        moved = False
        for w in walls:
            t = pair(w.key, v)
            if t < w.lo:
                v = _vec_sub(v, _vec_scale(t - w.lo, w.coroot))
                moved = True
            elif t > w.hi:
                v = _vec_sub(v, _vec_scale(t - w.hi, w.coroot))
                moved = True
        if not moved:
            return ApartmentPoint(v)
    raise EchelonnageError("alcove reduction did not terminate")


def affine_reflect(td: TwistedDatum, x: ApartmentPoint, rr: RestrictedRoot, level) -> ApartmentPoint:
    """Reflection of x across the hyperplane where the affine root
    a(.) + level vanishes (level must lie in the jump set of a)."""
    level = Fraction(level)
    if not rr.jump_set.member(level):
        raise EchelonnageError("level is not an affine-root level for this root")
    t = evaluate(rr.key, x) + level
    coroot = restricted_coroot(td, rr)
    return ApartmentPoint(_vec_sub(x.coords, _vec_scale(t, coroot)))


# ---------------------------------------------------------------------------
# companion shift


def companion_shift(td: TwistedDatum, x: ApartmentPoint):
    """Trade the lambda-valuations for a point displacement.

    Returns (td_tame, x_shifted) with all lambda-valuations zero and
    x_shifted - x0 = (x - x0) - (1/4) sum over positive multipliable b of
    v(lambda_b) * bcheck.  Membership of r - a(x - x0) in the valuation set
    of a is preserved for every restricted root a and rational r.
    """
    td_tame = TwistedDatum(
        td.base, td.twist, tuple(Fraction(0) for _ in td.lambda_valuations)
    )
    by_key = restricted_by_key(td)
    shift = tuple(Fraction(0) for _ in range(td.base.rank))
    scaff = _scaffold(td.base, td.twist)
    for idx, key in enumerate(scaff.positive_mult_keys):
        lam = td.lambda_valuations[idx]
        if lam == 0:
            continue
        coroot = restricted_coroot(td, by_key[key])
        shift = _vec_add(shift, _vec_scale(lam / 4, coroot))
    return td_tame, ApartmentPoint(_vec_sub(x.coords, shift))


def express_in_simple_coroots(td: TwistedDatum, x: ApartmentPoint):
    """Coordinates of x in the restricted simple coroot basis, or None."""
    by_key = restricted_by_key(td)
    simples = simple_restricted_keys(td)
    cols = [restricted_coroot(td, by_key[k]) for k in simples]
    rows = [[cols[j][i] for j in range(len(cols))] for i in range(td.base.rank)]
    return solve_linear(rows, list(x.coords))
