"""Batch interface: spec-file ingestion, subcommands, deterministic JSON
reports, and the built-in catalog.

Spec files are JSON with every rational written as a string "p/q".  Reports
are JSON with sorted keys; two runs on the same spec are byte-identical
except for the timing field.  Exit codes: 0 success, 1 input error,
2 property violation.
"""
from __future__ import annotations

import argparse
import json
import sys
import time
from fractions import Fraction
from pathlib import Path

from . import selftest as selftest_mod
from .catalog import CATALOG, catalog_ids, catalog_spec, named_point
from .echelonnage import (
    ApartmentPoint,
    EchelonnageError,
    TwistedDatum,
    companion_shift,
    point_from_simple_coroots,
    point_order,
    twisted,
)
from .exactmath import ExactMathError
from .mpquotient import (
    ReductiveQuotientDatum,
    algebra_dimension,
    first_jump,
    jump_values,
    mp_quotient,
    quotient_datum,
)
from .rootdata import (
    RootDatumError,
    WeylCapExceeded,
    build_automorphism,
    build_datum,
    cartan_matrix_component,
)
from .stability import StabilityError, stable_verdict
from .vinberg import GradingError, crosscheck
from .weylmod import WeylModuleError, decompose, split_span_check

SCHEMA_VERSION = 1
PACKAGE_VERSION = "0.1.0"


class InputError(ValueError):
    pass


class PropertyViolation(RuntimeError):
    pass


# ---------------------------------------------------------------------------
# rationals in JSON


def frac_str(x) -> str:
    return str(Fraction(x))


def parse_frac(text, field: str) -> Fraction:
    try:
        return Fraction(str(text))
    except (ValueError, ZeroDivisionError) as exc:
        raise InputError(f"field {field!r}: bad rational {text!r}") from exc


def vec_strs(coords) -> list[str]:
    return [frac_str(c) for c in coords]


# ---------------------------------------------------------------------------
# spec handling


DEFAULT_SPEC = {
    "dynkin": None,
    "isogeny": "adjoint",
    "automorphism": None,
    "lambda_valuations": {},
    "point": {"name": "origin"},
    "r": "0",
    "M": None,
}


def load_spec(source: str) -> dict:
    if source.startswith("catalog:"):
        parts = source.split(":")
        entry = parts[1]
        point = parts[2] if len(parts) > 2 else "origin"
        if entry not in CATALOG:
            raise InputError(
                f"field 'spec': unknown catalog id {entry!r} "
                f"(have {', '.join(catalog_ids())})"
            )
        try:
            return catalog_spec(entry, point)
        except KeyError as exc:
            raise InputError(f"field 'point': {exc.args[0]}") from exc
    path = Path(source)
    if not path.exists():
        raise InputError(f"field 'spec': no such file {source!r}")
    try:
        data = json.loads(path.read_text())
    except json.JSONDecodeError as exc:
        raise InputError(f"field 'spec': not valid JSON ({exc})") from exc
    if isinstance(data, dict) and "spec" in data and "schema" in data:
        data = data["spec"]  # accept a previously emitted report
    if not isinstance(data, dict):
        raise InputError("field 'spec': top level must be an object")
    return data


def normalize_spec(raw: dict) -> dict:
    spec = dict(DEFAULT_SPEC)
    unknown = set(raw) - set(DEFAULT_SPEC)
    if unknown:
        raise InputError(f"field {sorted(unknown)[0]!r}: unknown spec field")
    spec.update(raw)
    if not isinstance(spec["dynkin"], str) or not spec["dynkin"]:
        raise InputError("field 'dynkin': a Dynkin type string is required")
    if spec["isogeny"] not in ("adjoint", "simply_connected"):
        raise InputError(
            "field 'isogeny': must be 'adjoint' or 'simply_connected'"
        )
    if spec["automorphism"] is not None:
        if not isinstance(spec["automorphism"], (list, tuple)) or not all(
            isinstance(i, int) for i in spec["automorphism"]
        ):
            raise InputError("field 'automorphism': must be a list of node indices")
        spec["automorphism"] = list(spec["automorphism"])
    lam = spec["lambda_valuations"] or {}
    if not isinstance(lam, dict):
        raise InputError("field 'lambda_valuations': must be an object")
    spec["lambda_valuations"] = {
        str(int(k)): frac_str(parse_frac(v, "lambda_valuations")) for k, v in lam.items()
    }
    point = spec["point"]
    if not isinstance(point, dict) or not ({"name", "coords"} & set(point)):
        raise InputError("field 'point': need a name or explicit coords")
    if "coords" in point:
        spec["point"] = {"coords": [frac_str(parse_frac(c, "point")) for c in point["coords"]]}
    else:
        name = point.get("name")
        if name not in ("origin", "barycenter", "rho_over_m"):
            raise InputError(f"field 'point': unknown named point {name!r}")
        norm = {"name": name}
        if name == "rho_over_m":
            m = point.get("m")
            if not isinstance(m, int) or m <= 0:
                raise InputError("field 'point': rho_over_m needs a positive integer m")
            norm["m"] = m
        spec["point"] = norm
    spec["r"] = frac_str(parse_frac(spec["r"], "r"))
    if spec["M"] is not None and (not isinstance(spec["M"], int) or spec["M"] <= 0):
        raise InputError("field 'M': must be a positive integer")
    if spec["automorphism"] is None:
        try:
            spec["automorphism"] = list(range(build_datum(spec["dynkin"]).rank))
        except RootDatumError as exc:
            raise InputError(f"field 'dynkin': {exc}") from exc
    return spec


def realize(spec: dict, m_override: int | None = None):
    """Build the twisted datum and apartment point described by a spec."""
    try:
        datum = build_datum(spec["dynkin"], spec["isogeny"])
    except RootDatumError as exc:
        raise InputError(f"field 'dynkin': {exc}") from exc
    try:
        auto = build_automorphism(datum, spec["automorphism"])
    except RootDatumError as exc:
        raise InputError(f"field 'automorphism': {exc}") from exc
    lam = {int(k): Fraction(v) for k, v in spec["lambda_valuations"].items()}
    try:
        td = twisted(datum, auto, lam)
    except EchelonnageError as exc:
        raise InputError(f"field 'lambda_valuations': {exc}") from exc
    point = spec["point"]
    try:
        if "coords" in point:
            x = point_from_simple_coroots(
                td, [Fraction(c) for c in point["coords"]]
            )
        elif point["name"] == "rho_over_m":
            x = named_point(td, "rho_over_m", m_override or point["m"])
        else:
            x = named_point(td, point["name"])
    except EchelonnageError as exc:
        raise InputError(f"field 'point': {exc}") from exc
    return td, x


def default_modulus(td: TwistedDatum, x: ApartmentPoint, spec: dict) -> int:
    from math import lcm

    m = point_order(td, x)
    e = td.twist.order
    auto = lcm(m, e)
    if spec["M"] is not None:
        if spec["M"] % auto != 0:
            raise InputError(
                f"field 'M': {spec['M']} is not a multiple of lcm(point order "
                f"{m}, twist order {e}) = {auto}"
            )
        return spec["M"]
    return auto


# ---------------------------------------------------------------------------
# quotient type identification


def _component_blocks(cartan) -> list[list[int]]:
    n = len(cartan)
    seen = [False] * n
    blocks = []
    for i in range(n):
        if seen[i]:
            continue
        block = [i]
        seen[i] = True
        frontier = [i]
        while frontier:
            a = frontier.pop()
            for b in range(n):
                if not seen[b] and cartan[a][b] != 0:
                    seen[b] = True
                    block.append(b)
                    frontier.append(b)
        blocks.append(sorted(block))
    return blocks


def _match_component(block_cartan) -> str:
    import itertools

    n = len(block_cartan)
    for letter in "ABCDEFG":
        try:
            template = cartan_matrix_component(letter, n)
        except KeyError:
            continue
        ranks_ok = {
            "A": n >= 1, "B": n >= 2, "C": n >= 2, "D": n >= 3,
            "E": n in (6, 7, 8), "F": n == 4, "G": n == 2,
        }[letter]
        if not ranks_ok:
            continue
        for perm in itertools.permutations(range(n)):
            if all(
                template[perm[i]][perm[j]] == block_cartan[i][j]
                for i in range(n)
                for j in range(n)
            ):
                return f"{letter}{n}"
    return f"unknown{n}"


def identify_quotient(h: ReductiveQuotientDatum) -> dict:
    simples = h.simple_roots
    coroots = h.simple_coroots
    n = len(simples)
    cartan = [
        [int(sum(Fraction(a) * Fraction(b) for a, b in zip(simples[j], coroots[i])))
         for j in range(n)]
        for i in range(n)
    ]
    components = []
    for block in _component_blocks(cartan):
        sub = [[cartan[i][j] for j in block] for i in block]
        components.append(_match_component(sub))
    return {
        "components": sorted(components),
        "semisimple_rank": n,
        "torus_rank": h.rank - n,
    }


# ---------------------------------------------------------------------------
# report sections


def section_quotient(td: TwistedDatum, x: ApartmentPoint) -> dict:
    h = quotient_datum(td, x)
    return {
        "roots": [vec_strs(a) for a in h.roots],
        "type": identify_quotient(h),
        "root_count": len(h.roots),
        "rank": h.rank,
    }


def section_scan(td: TwistedDatum, x: ApartmentPoint) -> dict:
    jumps = []
    total = 0
    for r in jump_values(td, x):
        rep = mp_quotient(td, x, r)
        jumps.append(
            {
                "r": frac_str(r),
                "torus_dim": rep.torus_dim,
                "root_dim": len(rep.root_part),
                "total_dim": rep.total_dim,
            }
        )
        total += rep.total_dim
    expected = algebra_dimension(td)
    return {
        "jumps": jumps,
        "sum": total,
        "expected": expected,
        "sum_rule_holds": total == expected,
        "first_jump": frac_str(first_jump(td, x)),
    }


def section_grade(td: TwistedDatum, x: ApartmentPoint, modulus: int) -> dict:
    if not td.is_tame:
        return {
            "applicable": False,
            "reason": "nonzero lambda valuations; apply the companion shift first",
        }
    res = crosscheck(td, x, modulus)
    return {
        "applicable": True,
        "modulus": res.modulus,
        "dims": list(res.dims),
        "quotient_dims": list(res.quotient_dims),
        "crosscheck": res.ok,
        "first_mismatch": res.first_mismatch,
        "degree_zero_matches_quotient": res.roots_match,
        "negative_sign_orbit_count": len(res.negative_sign_orbits),
    }


def section_decompose(
    td: TwistedDatum, x: ApartmentPoint, r: Fraction, seed: int
) -> dict:
    dec = decompose(td, x, r)
    span = None
    if td.twist.is_identity and td.is_tame and Fraction(r).denominator != 1:
        span = split_span_check(td.base, x, r, seed=seed)
    return {
        "r": frac_str(r),
        "items": [
            {"weight": vec_strs(w), "multiplicity": m} for w, m in dec.items
        ],
        "total_dim": dec.total_dim,
        "quotient_dim": dec.quotient.total_dim,
        "dimensions_match": dec.dimensions_match(),
        "maximal_set": sorted(vec_strs(a) for a in dec.maximal_set),
        "nondominant_maximal": sorted(vec_strs(a) for a in dec.nondominant_maximal),
        "ambient_reading_differs": dec.ambient_reading_differs,
        "span_check": span,
    }


def section_stability(td: TwistedDatum, x: ApartmentPoint, cap: int | None = None) -> dict:
    verdict = stable_verdict(td, x, cap or 1_000_000)
    return {
        "m": verdict.m,
        "conjugacy_ok": verdict.conjugacy_ok,
        "depth_ok": verdict.depth_ok,
        "regular_ok": verdict.regular_ok,
        "verdict": verdict.verdict,
        "witness": [list(row) for row in verdict.witness] if verdict.witness else None,
        "reduced_point": vec_strs(verdict.reduced_point),
        "reduced_reference": vec_strs(verdict.reduced_reference),
        "first_jump": frac_str(verdict.first_jump),
    }


def build_report(command: str, spec: dict, td, x, sections: dict, started: float) -> dict:
    shifted = companion_shift(td, x)
    return {
        "schema": SCHEMA_VERSION,
        "package": f"parahoric {PACKAGE_VERSION}",
        "command": command,
        "spec": spec,
        "derived": {
            "point_coords": vec_strs(x.coords),
            "point_order": point_order(td, x),
            "twist_order": td.twist.order,
            "wild_lambda": not td.is_tame,
            "companion_point": vec_strs(shifted[1].coords),
            "algebra_dim": algebra_dimension(td),
        },
        **sections,
        "timing_seconds": round(time.time() - started, 6),
    }


def emit(report: dict, out: str | None) -> None:
    text = json.dumps(report, indent=2, sort_keys=True) + "\n"
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


# ---------------------------------------------------------------------------
# entry point


def _add_common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--spec", required=True, help="spec file path or catalog:<id>[:<point>]")
    p.add_argument("--out", default=None, help="write the report here instead of stdout")
    p.add_argument("--m", type=int, default=None, help="override m for rho_over_m points")
    p.add_argument("--M", type=int, default=None, help="override the grading modulus")
    p.add_argument("--cap", type=int, default=None, help="Weyl enumeration cap")
    p.add_argument("--jobs", type=int, default=1, help="worker threads for batch runs")
    p.add_argument("--seed", type=int, default=0, help="seed for sampled span checks")


def make_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="parahoric",
        description="exact filtration-quotient, grading, and stability reports",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    for name, help_text in (
        ("quotient", "reductive-quotient root datum at the point"),
        ("scan", "all jump dimensions in [0,1) and the sum rule"),
        ("grade", "graded dimensions and the quotient crosscheck"),
        ("decompose", "highest-weight decomposition at depth r"),
        ("stability", "stable-vector verdict at the first jump"),
    ):
        p = sub.add_parser(name, help=help_text)
        _add_common(p)
    p = sub.add_parser("selftest", help="run the built-in property suite")
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--seed", type=int, default=0)
    p = sub.add_parser("catalog", help="list or export built-in specs")
    p.add_argument("--id", default=None, help="catalog entry to export")
    p.add_argument("--point", default="origin")
    p.add_argument("--r", default="0")
    p.add_argument("--out", default=None)
    return parser


def _run_subcommand(args) -> int:
    started = time.time()
    raw = load_spec(args.spec)
    spec = normalize_spec(raw)
    if args.m is not None:
        if spec["point"].get("name") != "rho_over_m":
            raise InputError("field 'point': --m only applies to rho_over_m points")
        spec["point"]["m"] = args.m
    if args.M is not None:
        spec["M"] = args.M
    td, x = realize(spec)
    modulus = default_modulus(td, x, spec)
    sections: dict = {}
    violated = False
    if args.command == "quotient":
        sections["quotient"] = section_quotient(td, x)
    elif args.command == "scan":
        sections["scan"] = section_scan(td, x)
        violated = not sections["scan"]["sum_rule_holds"]
    elif args.command == "grade":
        sections["grading"] = section_grade(td, x, modulus)
        violated = sections["grading"].get("applicable") and not sections[
            "grading"
        ].get("crosscheck")
    elif args.command == "decompose":
        r = Fraction(spec["r"])
        sections["decomposition"] = section_decompose(td, x, r, args.seed)
        violated = not sections["decomposition"]["dimensions_match"] or (
            sections["decomposition"]["span_check"] is False
        )
    elif args.command == "stability":
        sections["stability"] = section_stability(td, x, args.cap)
    report = build_report(args.command, spec, td, x, sections, started)
    emit(report, args.out)
    return 2 if violated else 0


def main(argv=None) -> int:
    parser = make_parser()
    args = parser.parse_args(argv)
    try:
        if args.command == "selftest":
            ok = selftest_mod.run(jobs=args.jobs, seed=args.seed)
            return 0 if ok else 2
        if args.command == "catalog":
            if args.id is None:
                for cid in catalog_ids():
                    sys.stdout.write(cid + "\n")
                return 0
            if args.id not in CATALOG:
                raise InputError(f"field 'id': unknown catalog id {args.id!r}")
            try:
                spec = catalog_spec(args.id, args.point, args.r)
            except KeyError as exc:
                raise InputError(f"field 'point': {exc.args[0]}") from exc
            text = json.dumps(spec, indent=2, sort_keys=True) + "\n"
            if args.out:
                Path(args.out).write_text(text)
            else:
                sys.stdout.write(text)
            return 0
        return _run_subcommand(args)
    except InputError as exc:
        sys.stderr.write(f"input error: {exc}\n")
        return 1
    except (RootDatumError, EchelonnageError, ExactMathError, GradingError) as exc:
        sys.stderr.write(f"input error: {exc}\n")
        return 1
    except (WeylModuleError, StabilityError, WeylCapExceeded, PropertyViolation) as exc:
        sys.stderr.write(f"property violation: {exc}\n")
        return 2


if __name__ == "__main__":
    sys.exit(main())
