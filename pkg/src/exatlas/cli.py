"""Command-line interface: verification suites and atlas tables.

Exit codes: 0 all checks pass, 1 verification failure, 2 usage error.
Randomized checks draw from a seeded generator (--seed, or ATLAS_SEED);
the heavy J3(O) derivation computation honors --budget and reports
"skipped (budget)" instead of failing when the cap is hit.
"""

from __future__ import annotations

import argparse
import itertools
import json
import os
import random
import sys
import time
from dataclasses import dataclass

from . import algebras as alg
from . import catalog as cat
from . import jordan as jrd
from . import lie
from .linalg import ComputationCancelled, is_negative_definite

DEFAULT_SEED = alg.DEFAULT_SEED
DEFAULT_BUDGET = 300.0
DEFAULT_PAIRS = 1000
DEFAULT_JORDAN_PAIRS = 500

VERIFY_SCOPES = (
    "all", "algebras", "derivations", "magic-square", "atlas", "chains", "exponents",
)
TABLE_NAMES = ("magic-square", "exceptional-spaces", "chains", "families", "atlas")

_SKIPPED = "skipped (budget)"


@dataclass
class CheckResult:
    check_id: str
    status: str  # "pass" | "fail" | "skipped (budget)"
    expected: object
    computed: object
    elapsed_s: float


@dataclass
class VerificationReport:
    suite: str
    checks: list[CheckResult]

    @property
    def passed(self) -> bool:
        return all(c.status != "fail" for c in self.checks)


class Budget:
    """Wall-clock cap shared by the heavy checks of a run."""

    def __init__(self, seconds: float):
        self.deadline = time.monotonic() + seconds

    def cancel(self) -> bool:
        return time.monotonic() > self.deadline

    def require(self) -> None:
        if self.cancel():
            raise ComputationCancelled("budget exhausted")


class SuiteRunner:
    def __init__(self, suite: str):
        self.report = VerificationReport(suite, [])

    def check(self, check_id: str, expected, fn) -> None:
        start = time.perf_counter()
        try:
            computed = fn()
            status = "pass" if computed == expected else "fail"
        except ComputationCancelled:
            computed = None
            status = _SKIPPED
        self.report.checks.append(
            CheckResult(check_id, status, expected, computed, time.perf_counter() - start)
        )


def _heavy_lie(name: str, budget: Budget) -> lie.LieAlgebraBasis:
    """Fetch a named derivation algebra under the budget token."""
    if not lie.derivation_cached(name):
        budget.require()
    return lie.named_derivation_algebra(name, budget.cancel)


# ---------------------------------------------------------------------------
# verification suites
# ---------------------------------------------------------------------------

def _suite_algebras(seed: int, pairs: int, jordan_pairs: int, budget: Budget) -> VerificationReport:
    r = SuiteRunner("algebras")

    def composition_violations(dim: int) -> int:
        a = alg.cayley_dickson_algebra(dim)
        rng = random.Random(seed + dim)
        bad = 0
        for _ in range(pairs):
            x = alg.random_element(a, rng)
            y = alg.random_element(a, rng)
            if (x * y).norm() != x.norm() * y.norm():
                bad += 1
        return bad

    for dim in (1, 2, 4, 8):
        r.check(f"composition-law-dim{dim}", 0, lambda d=dim: composition_violations(d))

    def witness_violates() -> bool:
        x, y = alg.sedenion_composition_witness()
        return (x * y).norm() != x.norm() * y.norm()

    r.check("sedenion-composition-witness", True, witness_violates)

    def alternativity_violations() -> int:
        o = alg.octonions()
        rng = random.Random(seed + 31)
        bad = 0
        for _ in range(pairs):
            x = alg.random_element(o, rng)
            y = alg.random_element(o, rng)
            if not alg.associator(x, x, y).is_zero() or not alg.associator(x, y, y).is_zero():
                bad += 1
        return bad

    r.check("alternativity-octonions", 0, alternativity_violations)

    def antisymmetry_violations() -> int:
        o = alg.octonions()
        rng = random.Random(seed + 37)
        bad = 0
        for _ in range(max(pairs // 5, 20)):
            t = [alg.random_element(o, rng) for _ in range(3)]
            base = alg.associator(*t)
            for perm in itertools.permutations(range(3)):
                sign = _perm_sign(perm)
                got = alg.associator(t[perm[0]], t[perm[1]], t[perm[2]])
                if got != (sign * base if sign == 1 else -base):
                    bad += 1
        return bad

    r.check("associator-antisymmetry-octonions", 0, antisymmetry_violations)

    def associative_violations(dim: int) -> int:
        a = alg.cayley_dickson_algebra(dim)
        rng = random.Random(seed + 41 + dim)
        bad = 0
        for _ in range(max(pairs // 5, 20)):
            t = [alg.random_element(a, rng) for _ in range(3)]
            if not alg.associator(*t).is_zero():
                bad += 1
        return bad

    for dim in (1, 2, 4):
        r.check(f"associator-vanishes-dim{dim}", 0, lambda d=dim: associative_violations(d))

    def inverse_violations(dim: int) -> int:
        a = alg.cayley_dickson_algebra(dim)
        rng = random.Random(seed + 53 + dim)
        unit = a.unit()
        bad = 0
        for _ in range(max(pairs // 5, 20)):
            x = alg.random_element(a, rng)
            if x.is_zero():
                continue
            xi = x.inverse()
            if x * xi != unit or xi * x != unit:
                bad += 1
        return bad

    for dim in (2, 4, 8):
        r.check(f"inverse-law-dim{dim}", 0, lambda d=dim: inverse_violations(d))

    jordan_algebras = {
        "r": alg.real_algebra,
        "c": alg.complex_algebra,
        "h": alg.quaternions,
        "o": alg.octonions,
    }

    def jordan_violations(key: str) -> int:
        j = jrd.jordan_algebra(jordan_algebras[key]())
        rng = random.Random(seed + 101)
        bad = 0
        for _ in range(jordan_pairs):
            x = j.from_coords(tuple(rng.randint(-9, 9) for _ in range(j.dim)))
            y = j.from_coords(tuple(rng.randint(-9, 9) for _ in range(j.dim)))
            if not jrd.jordan_identity_defect(x, y).is_zero():
                bad += 1
        return bad

    for key in jordan_algebras:
        r.check(f"jordan-identity-{key}", 0, lambda k=key: jordan_violations(k))

    def jordan_witness_violates() -> bool:
        x, y = jrd.sedenion_jordan_witness()
        return not jrd.jordan_identity_defect(x, y).is_zero()

    r.check("jordan-identity-sedenion-witness", True, jordan_witness_violates)

    for key in jordan_algebras:
        r.check(
            f"jordan-trace-form-posdef-{key}",
            True,
            lambda k=key: jrd.trace_form_is_positive_definite(
                jrd.jordan_algebra(jordan_algebras[k]())
            ),
        )
    return r.report


def _perm_sign(perm) -> int:
    sign = 1
    for i in range(len(perm)):
        for j in range(i + 1, len(perm)):
            if perm[i] > perm[j]:
                sign = -sign
    return sign


_DER_EXPECTED = {
    "complex": 0,
    "quaternions": 3,
    "octonions": 14,
    "j3r": 3,
    "j3c": 8,
    "j3h": 21,
    "j3o": 52,
}


def _suite_derivations(seed: int, budget: Budget) -> VerificationReport:
    r = SuiteRunner("derivations")
    for name, expected in _DER_EXPECTED.items():
        r.check(f"der-dim-{name}", expected, lambda n=name: _heavy_lie(n, budget).dim)

    for name in ("complex", "quaternions", "octonions", "j3r", "j3c", "j3h", "j3o"):
        r.check(
            f"killing-negative-definite-{name}",
            True,
            lambda n=name: is_negative_definite(lie.killing_form(_heavy_lie(n, budget))),
        )

    rank_cases = {"quaternions": 1, "octonions": 2, "j3o": 4}
    for name, expected in rank_cases.items():
        r.check(
            f"generic-rank-{name}",
            expected,
            lambda n=name: lie.generic_rank(
                _heavy_lie(n, budget), trials=5, rng=random.Random(seed)
            ),
        )

    def g2_split():
        l = _heavy_lie("octonions", budget)
        sigma = lie.doubled_half_reflection(alg.octonions())
        theta = lie.induced_involution(alg.octonions(), sigma, l)
        pair = lie.cartan_split(l, theta)
        return (pair.dims, pair.pp_spans_k, pair.kp_spans_p)

    r.check("cartan-split-g2", ((6, 8), True, True), g2_split)

    def f4_split():
        l = _heavy_lie("j3o", budget)
        j = jrd.jordan_algebra(alg.octonions())
        sigma = lie.diagonal_sign_involution(j, (-1, 1, 1))
        theta = lie.induced_involution(j, sigma, l)
        pair = lie.cartan_split(l, theta)
        return (pair.dims, pair.pp_spans_k, pair.kp_spans_p)

    r.check("cartan-split-f4", ((36, 16), True, True), f4_split)

    def flat_ranks():
        lo = _heavy_lie("octonions", budget)
        so = lie.doubled_half_reflection(alg.octonions())
        po = lie.cartan_split(lo, lie.induced_involution(alg.octonions(), so, lo))
        lf = _heavy_lie("j3o", budget)
        j = jrd.jordan_algebra(alg.octonions())
        sf = lie.diagonal_sign_involution(j, (-1, 1, 1))
        pf = lie.cartan_split(lf, lie.induced_involution(j, sf, lf))
        rng = random.Random(seed)
        return (lie.flat_rank(po, rng=rng), lie.flat_rank(pf, rng=rng))

    r.check("flat-ranks-g2-f4-splits", (2, 1), flat_ranks)
    return r.report


def _suite_magic_square(budget: Budget) -> VerificationReport:
    r = SuiteRunner("magic-square")

    def live_dims():
        _heavy_lie("j3o", budget)  # the one expensive ingredient
        for name in ("quaternions", "octonions", "j3r", "j3c", "j3h"):
            _heavy_lie(name, budget)
        return tuple(tuple(row) for row in cat.magic_square_dims(3))

    r.check("level3-live-matches", cat.EXPECTED_LEVEL3_DIMS, live_dims)

    def level3_symmetric():
        dims = cat.magic_square_dims(3)
        return all(dims[i][j] == dims[j][i] for i in range(4) for j in range(4))

    r.check("level3-symmetric", True, level3_symmetric)
    r.check(
        "level3-bottom-row",
        (52, 78, 133, 248),
        lambda: tuple(cat.magic_square_dims(3)[3]),
    )
    r.check(
        "level3-e8-split",
        True,
        lambda: cat.magic_square_dims(3)[3][3]
        == cat.group_dim("SO(16)") + 128,
    )

    def level2_symmetric():
        dims = cat.magic_square_dims(2)
        return all(dims[i][j] == dims[j][i] for i in range(4) for j in range(4))

    r.check("level2-symmetric", True, level2_symmetric)
    r.check("level2-corner-spin16", 120, lambda: cat.magic_square_dims(2)[3][3])
    return r.report


def _suite_atlas(inject_corruption: bool) -> VerificationReport:
    r = SuiteRunner("atlas")
    records = cat.corrupted_atlas() if inject_corruption else cat.exceptional_atlas()

    r.check("exceptional-count", 12, lambda: len(records))
    r.check(
        "exceptional-partition",
        {"G2": 1, "F4": 2, "E6": 4, "E7": 3, "E8": 2},
        cat.exceptional_partition,
    )
    for rec in records:
        r.check(
            f"exceptional-{rec.cartan_label}",
            True,
            lambda rr=rec: cat.verify_record(rr).passed,
        )
    for i, rec in enumerate(cat.projective_spaces()):
        r.check(
            f"projective-{i}-{rec.cartan_label}",
            True,
            lambda rr=rec: cat.verify_record(rr).passed,
        )
    for rec in cat.classical_families():
        r.check(
            f"family-{rec.cartan_label}",
            True,
            lambda rr=rec: cat.verify_record(rr).passed,
        )

    def spheres_ok() -> bool:
        return all(
            cat.group_dim(g) - cat.group_dim(k) == expected
            for _, g, k, expected in cat.sphere_identities()
        )

    r.check("sphere-identities", True, spheres_ok)
    r.check(
        "exceptional-dims",
        (8, 28, 16, 42, 40, 32, 26, 70, 64, 54, 128, 112),
        lambda: tuple(rec.dim for rec in cat.exceptional_atlas()),
    )
    return r.report


def _suite_chains() -> VerificationReport:
    r = SuiteRunner("chains")
    chain = cat.supergravity_chain()
    r.check(
        "chain-scalars",
        cat.EXPECTED_CHAIN_SCALARS,
        lambda: tuple(c.scalar_count for c in chain),
    )
    for c, expected in zip(chain, cat.EXPECTED_CHAIN_SCALARS):
        r.check(
            f"chain-d{c.spacetime_dim}",
            expected,
            lambda cc=c: cc.split_group.dim - cc.compact_subgroup.dim,
        )
    r.check(
        "chain-compact-dims",
        True,
        lambda: all(
            c.compact_subgroup.dim == cat.group_dim(c.compact_subgroup.name)
            for c in chain
        ),
    )
    return r.report


def _suite_exponents() -> VerificationReport:
    r = SuiteRunner("exponents")
    for g in cat.standard_simple_groups():
        r.check(
            f"exponents-{g.name}",
            True,
            lambda gg=g: cat.exponents_check(gg) and cat.palindrome_check(gg.exponents),
        )
    r.check(
        "spin10-exponents",
        (1, 3, 4, 5, 7),
        lambda: cat.special_orthogonal(10).exponents,
    )
    r.check(
        "oct3-candidate-not-palindromic",
        False,
        lambda: cat.palindrome_check((1, 3, 5, 7, 11)),
    )
    r.check(
        "unimodular-restriction-palindromic",
        True,
        lambda: cat.palindrome_check((1, 5, 7, 11)),
    )
    return r.report


def run_verify(
    scope: str,
    seed: int,
    trials: int | None,
    budget_seconds: float,
    inject_corruption: bool = False,
) -> list[VerificationReport]:
    pairs = trials if trials is not None else DEFAULT_PAIRS
    jordan_pairs = trials if trials is not None else DEFAULT_JORDAN_PAIRS
    budget = Budget(budget_seconds)
    suites: list[VerificationReport] = []
    if scope in ("all", "algebras"):
        suites.append(_suite_algebras(seed, pairs, jordan_pairs, budget))
    if scope in ("all", "derivations"):
        suites.append(_suite_derivations(seed, budget))
    if scope in ("all", "magic-square"):
        suites.append(_suite_magic_square(budget))
    if scope in ("all", "atlas"):
        suites.append(_suite_atlas(inject_corruption))
    if scope in ("all", "chains"):
        suites.append(_suite_chains())
    if scope in ("all", "exponents"):
        suites.append(_suite_exponents())
    return suites


# ---------------------------------------------------------------------------
# rendering
# ---------------------------------------------------------------------------

def _fmt_value(v) -> str:
    if isinstance(v, tuple):
        return "(" + ", ".join(_fmt_value(x) for x in v) + ")"
    return str(v)


def _render_reports_text(reports: list[VerificationReport], out) -> None:
    total = passed = failed = skipped = 0
    for rep in reports:
        out.write(f"== {rep.suite} ==\n")
        for c in rep.checks:
            total += 1
            if c.status == "pass":
                passed += 1
                tag = "PASS"
            elif c.status == "fail":
                failed += 1
                tag = "FAIL"
            else:
                skipped += 1
                tag = "SKIP"
            line = f"{tag} {c.check_id}"
            if c.status == "fail":
                line += f" expected={_fmt_value(c.expected)} computed={_fmt_value(c.computed)}"
            elif c.status == "pass":
                line += f" = {_fmt_value(c.computed)}"
            else:
                line += f" [{c.status}]"
            out.write(f"  {line} ({c.elapsed_s:.2f}s)\n")
    out.write(
        f"== summary ==\n{len(reports)} suites, {total} checks: "
        f"{passed} pass, {failed} fail, {skipped} skipped\n"
    )
    out.write(f"overall: {'PASS' if failed == 0 else 'FAIL'}\n")


def _jsonable(v):
    if isinstance(v, tuple):
        return [_jsonable(x) for x in v]
    if isinstance(v, dict):
        return {k: _jsonable(x) for k, x in v.items()}
    if isinstance(v, (int, float, str, bool)) or v is None:
        return v
    return str(v)


def _render_reports_json(reports: list[VerificationReport], out) -> None:
    doc = {
        "pass": all(r.passed for r in reports),
        "suites": [
            {
                "suite": r.suite,
                "pass": r.passed,
                "checks": [
                    {
                        "id": c.check_id,
                        "status": c.status,
                        "expected": _jsonable(c.expected),
                        "computed": _jsonable(c.computed),
                        "elapsed_s": round(c.elapsed_s, 4),
                    }
                    for c in r.checks
                ],
            }
            for r in reports
        ],
    }
    out.write(json.dumps(doc, indent=2, sort_keys=True))
    out.write("\n")


def _markdown_table(headers: list[str], rows: list[list[str]]) -> str:
    lines = ["| " + " | ".join(headers) + " |"]
    lines.append("|" + "|".join(" --- " for _ in headers) + "|")
    for row in rows:
        lines.append("| " + " | ".join(row) + " |")
    return "\n".join(lines) + "\n"


def render_table(name: str, fmt: str, level: int = 3) -> str:
    if name == "magic-square":
        cells = cat.magic_square(level)
        dims = [[c.lie_dim for c in row] for row in cells]
        labels = [[c.group_label for c in row] for row in cells]
        if fmt == "json":
            return json.dumps(
                {"level": level, "algebras": ["R", "C", "H", "O"], "labels": labels, "dims": dims},
                indent=2,
                sort_keys=True,
            ) + "\n"
        headers = ["K"] + ["R", "C", "H", "O"]
        rows = [
            [a] + [f"{labels[i][j]} ({dims[i][j]})" for j in range(4)]
            for i, a in enumerate(["R", "C", "H", "O"])
        ]
        return _markdown_table(headers, rows)

    if name == "exceptional-spaces":
        records = cat.exceptional_atlas()
        if fmt == "json":
            return json.dumps(
                [cat._record_to_dict(r) for r in records], indent=2, sort_keys=True
            ) + "\n"
        headers = ["Cartan", "Space", "Dim", "Rank"]
        rows = [
            [r.cartan_label, f"{r.numerator} / {r.isotropy_display()}", str(r.dim), str(r.rank)]
            for r in records
        ]
        return _markdown_table(headers, rows)

    if name == "chains":
        chain = cat.supergravity_chain()
        if fmt == "json":
            return json.dumps(
                [
                    {
                        "spacetime_dim": c.spacetime_dim,
                        "split_group": c.split_group.name,
                        "split_dim": c.split_group.dim,
                        "compact_subgroup": c.compact_subgroup.name,
                        "compact_dim": c.compact_subgroup.dim,
                        "scalar_count": c.scalar_count,
                    }
                    for c in chain
                ],
                indent=2,
                sort_keys=True,
            ) + "\n"
        headers = ["d", "Split group", "Compact subgroup", "Scalars"]
        rows = [
            [
                str(c.spacetime_dim),
                f"{c.split_group.name} ({c.split_group.dim})",
                f"{c.compact_subgroup.name} ({c.compact_subgroup.dim})",
                str(c.scalar_count),
            ]
            for c in chain
        ]
        return _markdown_table(headers, rows)

    if name == "families":
        records = cat.classical_families()
        if fmt == "json":
            return json.dumps(
                [cat._record_to_dict(r) for r in records], indent=2, sort_keys=True
            ) + "\n"
        headers = ["Cartan", "Space", "Dim", "Rank"]
        rows = [
            [
                r.cartan_label,
                f"{r.numerator} / {r.isotropy_display()}",
                r.dim_formula,
                r.rank_formula or "",
            ]
            for r in records
        ]
        return _markdown_table(headers, rows)

    if name == "atlas":
        if fmt != "json":
            raise ValueError("the full atlas document is JSON-only")
        return cat.atlas_json() + "\n"

    raise ValueError(f"unknown table {name!r}")


# ---------------------------------------------------------------------------
# entry points
# ---------------------------------------------------------------------------

def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="exatlas",
        description="Exact verification engine and atlas for the exceptional symmetric spaces.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    v = sub.add_parser("verify", help="run verification suites")
    v.add_argument("scope", choices=VERIFY_SCOPES)
    v.add_argument("--format", choices=("text", "json"), default="text")
    v.add_argument("--seed", type=int, default=None)
    v.add_argument("--trials", type=int, default=None,
                   help="override the randomized-check sample counts")
    v.add_argument("--budget", type=float, default=DEFAULT_BUDGET,
                   help="wall-clock cap in seconds for the heavy derivation computations")
    v.add_argument("--inject-corruption", action="store_true",
                   help="test mode: corrupt one atlas record to exercise failure paths")

    t = sub.add_parser("table", help="emit an atlas table")
    t.add_argument("name", choices=TABLE_NAMES)
    t.add_argument("--format", choices=("markdown", "json"), default="markdown")
    t.add_argument("--level", type=int, choices=(2, 3), default=3,
                   help="magic square level (matrix size)")

    d = sub.add_parser("derive", help="compute a derivation-algebra dimension")
    d.add_argument("target", choices=lie.DERIVATION_TARGETS)
    d.add_argument("--emit-basis", action="store_true",
                   help="dump the canonical echelon basis matrices as JSON")
    return parser


def _resolve_seed(value: int | None) -> int:
    if value is not None:
        return value
    env = os.environ.get("ATLAS_SEED")
    if env is not None:
        try:
            return int(env)
        except ValueError:
            raise SystemExit(f"ATLAS_SEED must be an integer, got {env!r}")
    return DEFAULT_SEED


def main(argv: list[str] | None = None, out=None) -> int:
    out = out or sys.stdout
    args = _build_parser().parse_args(argv)

    if args.command == "verify":
        reports = run_verify(
            args.scope,
            seed=_resolve_seed(args.seed),
            trials=args.trials,
            budget_seconds=args.budget,
            inject_corruption=args.inject_corruption,
        )
        if args.format == "json":
            _render_reports_json(reports, out)
        else:
            _render_reports_text(reports, out)
        return 0 if all(r.passed for r in reports) else 1

    if args.command == "table":
        if args.name == "atlas" and args.format != "json":
            out.write("error: the full atlas document is JSON-only; pass --format json\n")
            return 2
        out.write(render_table(args.name, args.format, args.level))
        return 0

    if args.command == "derive":
        basis = lie.named_derivation_algebra(args.target)
        if args.emit_basis:
            doc = {
                "target": args.target,
                "dimension": basis.dim,
                "ambient_dim": basis.ambient_dim,
                "basis": [
                    [[str(m.entry(i, j)) for j in range(m.cols)] for i in range(m.rows)]
                    for m in basis.basis
                ],
            }
            out.write(json.dumps(doc, indent=2, sort_keys=True))
            out.write("\n")
        else:
            out.write(f"{basis.dim}\n")
        return 0

    raise AssertionError("unreachable")


def run() -> None:
    sys.exit(main())


if __name__ == "__main__":
    run()
