"""Command line front end: construct, verify, analyze.

Machine-readable reports go to stdout (JSON lines by default, one
indented document with --format pretty) and a short human summary goes
to stderr.  Exit status: 0 when every check passed, 1 when a check
failed, 2 when arguments or input files could not be interpreted.

Basis files use the JSON layout of basis_to_json.  Niceness and cocycle
analysis additionally require the labels to be (i, j) pairs indexing
Z_d x Z_d, which is what the construct command writes.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import os
import random
import sys
import time
from dataclasses import dataclass, field
from fractions import Fraction

from .combinat import (
    cyclic_latin,
    check_complex_hadamard,
    fourier_hadamard,
    h_alpha,
    hadamard_seq_from_json,
    latin_from_json,
    validate_latin,
)
from .counterexample165 import build_g165, export_bundle, verify_counterexample
from .cyclo import PhasedScalar
from .exactmat import matrix_from_json
from .groups import (
    CyclicGroup,
    DirectProduct,
    HeisenbergElement,
    HeisenbergGroup,
    SubgroupView,
)
from .induce import (
    character_rep,
    class_function,
    induce_character,
    induce_representation,
    sparsity_check,
)
from .nice import (
    CocycleError,
    ProjectiveRep,
    cocycle_table,
    heisenberg_rep,
    pauli_rep,
    verify_nice,
)
from .ueb import (
    UnitaryErrorBasis,
    basis_from_json,
    basis_from_rep,
    basis_to_json,
    pauli_basis,
    shift_and_multiply,
    verify_ueb,
    wickedness_witness,
)

DEFAULT_SEED = 1650


class InputError(Exception):
    """Arguments or input files could not be interpreted (exit 2)."""


def _jsonable(x):
    if isinstance(x, dict):
        return {str(k): _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    if isinstance(x, Fraction):
        return str(x)
    if x is None or isinstance(x, (bool, int, float, str)):
        return x
    return str(x)


@dataclass
class RunReport:
    """Echo of the invocation plus timed per-check results and the
    sha256 of every file read or written."""

    command: list
    seed: int
    jobs: int
    checks: list = field(default_factory=list)
    artifacts: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(c["ok"] for c in self.checks)

    def check(self, name: str, ok, started: float, witness=None,
              details=None) -> bool:
        entry = {"check": name, "ok": bool(ok),
                 "seconds": round(time.perf_counter() - started, 3)}
        if witness is not None:
            entry["witness"] = str(witness)
        if details:
            entry["details"] = _jsonable(details)
        self.checks.append(entry)
        return bool(ok)

    def document(self) -> dict:
        return {"command": list(self.command), "seed": self.seed,
                "jobs": self.jobs, "checks": self.checks,
                "artifacts": self.artifacts, "ok": self.ok}


def _emit(report: RunReport, fmt: str) -> None:
    if fmt == "pretty":
        print(json.dumps(report.document(), indent=2, sort_keys=True))
    else:
        def dump(obj):
            return json.dumps(obj, sort_keys=True, separators=(",", ":"))
        print(dump({"command": list(report.command), "seed": report.seed,
                    "jobs": report.jobs}))
        for c in report.checks:
            print(dump(c))
        print(dump({"ok": report.ok, "artifacts": report.artifacts}))
    for c in report.checks:
        line = f"  {c['check']}: {'pass' if c['ok'] else 'FAIL'}" \
               f" ({c['seconds']:.3f}s)"
        if not c["ok"] and "witness" in c:
            line += f"  [{c['witness']}]"
        print(line, file=sys.stderr)
    print(f"{'PASS' if report.ok else 'FAIL'} seed={report.seed} "
          f"checks={len(report.checks)}", file=sys.stderr)


def _emit_input_error(message: str, fmt: str) -> None:
    obj = {"error": message, "ok": False}
    if fmt == "pretty":
        print(json.dumps(obj, indent=2, sort_keys=True))
    else:
        print(json.dumps(obj, sort_keys=True, separators=(",", ":")))
    print(f"error: {message}", file=sys.stderr)


# ---------------------------------------------------------------------------
# file plumbing


def _read_json(path: str, report: RunReport, role: str = "in"):
    try:
        with open(path, "rb") as f:
            data = f.read()
    except OSError as e:
        raise InputError(f"cannot read {path}: {e}")
    try:
        obj = json.loads(data)
    except json.JSONDecodeError as e:
        raise InputError(f"{path} is not valid JSON: {e}")
    report.artifacts.append({"role": role, "path": path,
                             "sha256": hashlib.sha256(data).hexdigest()})
    return obj


def _write_json(path: str, obj, report: RunReport) -> None:
    data = json.dumps(obj, sort_keys=True, separators=(",", ":")) + "\n"
    try:
        with open(path, "w", encoding="utf-8") as f:
            f.write(data)
    except OSError as e:
        raise InputError(f"cannot write {path}: {e}")
    report.artifacts.append({"role": "out", "path": path,
                             "sha256": hashlib.sha256(data.encode()).hexdigest()})


def _parse(fn, obj, what: str):
    try:
        return fn(obj)
    except (KeyError, TypeError, ValueError) as e:
        raise InputError(f"cannot interpret {what}: {e}")


def _looks_like_path(target: str) -> bool:
    return (os.path.exists(target) or target.endswith(".json")
            or os.sep in target)


# ---------------------------------------------------------------------------
# spec strings


def _positive_int(text: str, what: str) -> int:
    try:
        n = int(text)
    except ValueError:
        raise InputError(f"{what} must be an integer, got {text!r}")
    if n < 1:
        raise InputError(f"{what} must be positive, got {n}")
    return n


def _latin_from_spec(spec: str, report: RunReport):
    if _looks_like_path(spec):
        return _parse(latin_from_json, _read_json(spec, report), "latin square")
    head, _, rest = spec.partition(":")
    if head == "cyclic":
        return cyclic_latin(_positive_int(rest, "latin order"))
    raise InputError(f"unknown latin spec {spec!r} (cyclic:<d> or a file)")


def _hadamard_from_spec(spec: str, report: RunReport):
    if _looks_like_path(spec):
        obj = _read_json(spec, report)
        if isinstance(obj, list):
            return _parse(hadamard_seq_from_json, obj, "hadamard sequence")
        return _parse(matrix_from_json, obj, "hadamard matrix")
    head, _, rest = spec.partition(":")
    if head == "fourier":
        return fourier_hadamard(_positive_int(rest, "fourier order"))
    if spec == "alpha":
        return h_alpha()
    raise InputError(
        f"unknown hadamard spec {spec!r} (fourier:<d>, alpha, or a file)")


def _rep_from_spec(spec: str) -> ProjectiveRep:
    head, _, rest = spec.partition(":")
    d = _positive_int(rest, f"{head or spec} dimension")
    if head == "pauli":
        return pauli_rep(d)
    if head == "heisenberg":
        if d < 2:
            raise InputError("heisenberg modulus must be at least 2")
        return heisenberg_rep(d)
    raise InputError(f"unknown representation spec {spec!r}")


def _section_basis(rep: ProjectiveRep) -> UnitaryErrorBasis:
    """One member per central coset: the z = 0 section of a Heisenberg
    representation, labelled by (x, y)."""
    d = rep.dim
    labels = [(x, y) for x in range(d) for y in range(d)]
    members = [rep.matrix(HeisenbergElement(d, x, y, 0)) for x, y in labels]
    return UnitaryErrorBasis(d, tuple(members), tuple(labels))


def _basis_from_spec(spec: str, report: RunReport) -> UnitaryErrorBasis:
    """Build a basis from an inline spec, appending construction checks."""
    head, _, rest = spec.partition(":")
    t0 = time.perf_counter()
    if head == "pauli":
        basis = pauli_basis(_positive_int(rest, "pauli dimension"))
    elif head == "nice":
        rep = _rep_from_spec(rest)
        if rep.group.order == rep.dim ** 2:
            basis = basis_from_rep(rep)
        else:
            basis = _section_basis(rep)
            rep = _pair_indexed_rep(basis, label=f"{rest}/center")
        nr = verify_nice(rep, pair_mode="all")
        report.check("niceness", nr.ok, t0, details=nr.summary())
        t0 = time.perf_counter()
    elif head == "sam":
        latin_spec, sep, had_spec = rest.partition(",")
        if not sep:
            raise InputError("sam spec needs <latin>,<hadamard>")
        latin = _latin_from_spec(latin_spec, report)
        had = _hadamard_from_spec(had_spec, report)
        try:
            basis = shift_and_multiply(latin, had)
        except ValueError as e:
            raise InputError(f"cannot build shift-and-multiply basis: {e}")
    else:
        raise InputError(f"unknown basis spec {spec!r}")
    report.check("construct", True, t0, details={
        "spec": spec, "d": basis.d, "members": len(basis.members)})
    return basis


def _load_basis(target: str, report: RunReport) -> UnitaryErrorBasis:
    if _looks_like_path(target):
        return _parse(basis_from_json, _read_json(target, report), "basis file")
    return _basis_from_spec(target, report)


def _pair_indexed_rep(basis: UnitaryErrorBasis, label: str) -> ProjectiveRep:
    """Reinterpret a basis whose labels are (i, j) pairs as a projective
    representation of Z_d x Z_d."""
    d = basis.d
    if len(basis.members) != d * d:
        raise InputError(f"need {d * d} members for a Z_{d} x Z_{d} index, "
                         f"got {len(basis.members)}")
    table = {}
    for lab, m in zip(basis.labels, basis.members):
        if not (isinstance(lab, tuple) and len(lab) == 2
                and all(isinstance(v, int) and 0 <= v < d for v in lab)):
            raise InputError(f"label {lab!r} does not index Z_{d} x Z_{d}")
        table[lab] = m
    if len(table) != d * d:
        raise InputError("duplicate labels in basis")
    group = DirectProduct(CyclicGroup(d), CyclicGroup(d))
    return ProjectiveRep(group, d, table.__getitem__, label=label)


# ---------------------------------------------------------------------------
# construct


def _construct_counterexample(args, report: RunReport) -> None:
    t0 = time.perf_counter()
    g = build_g165(seed=args.seed)
    report.check("build-g165", True, t0, details={
        "group_order": g.group.order, "center_order": len(g.center),
        "seed": args.seed, "checks": g.checks})
    t0 = time.perf_counter()
    rep = verify_counterexample(g, seed=args.seed)
    report.check("counterexample", rep.ok, t0,
                 details={"seed": args.seed, **rep.summary()})
    bundle = export_bundle(g, factors_only=args.factors_only)
    _write_json(args.out, bundle, report)


def cmd_construct(args, report: RunReport) -> None:
    if args.kind == "counterexample165":
        if args.params:
            raise InputError("counterexample165 takes no extra parameters")
        _construct_counterexample(args, report)
        return
    if args.factors_only:
        raise InputError("--factors-only only applies to counterexample165")
    if args.kind == "sam":
        if len(args.params) != 2:
            raise InputError("construct sam needs <latin> <hadamard>")
        spec = f"sam:{args.params[0]},{args.params[1]}"
    elif args.params:
        raise InputError(f"construct {args.kind} takes no extra parameters")
    else:
        spec = args.kind
    basis = _basis_from_spec(spec, report)
    t0 = time.perf_counter()
    ub = verify_ueb(basis)
    report.check("ueb-definition", ub.ok, t0, details=ub.summary())
    _write_json(args.out, basis_to_json(basis), report)


# ---------------------------------------------------------------------------
# verify


def _verify_counterexample_file(args, report: RunReport) -> None:
    obj = _read_json(args.path, report)
    if not isinstance(obj, dict):
        raise InputError("bundle file must hold a JSON object")
    for key in ("dim", "group_order", "conjugators", "factor_pools",
                "generators"):
        if key not in obj:
            raise InputError(f"bundle is missing key {key!r}")
    t0 = time.perf_counter()
    g = build_g165(seed=args.seed)
    report.check("build-g165", True, t0, details={
        "group_order": g.group.order, "center_order": len(g.center),
        "seed": args.seed, "checks": g.checks})
    t0 = time.perf_counter()
    fresh = export_bundle(g, factors_only="generators_full" not in obj)
    same = json.loads(json.dumps(fresh)) == obj
    report.check("bundle-matches-rebuild", same, t0,
                 witness=None if same else "file differs from rebuilt bundle")
    t0 = time.perf_counter()
    rep = verify_counterexample(g, seed=args.seed)
    report.check("counterexample", rep.ok, t0,
                 details={"seed": args.seed, **rep.summary()})


def cmd_verify(args, report: RunReport) -> None:
    if args.kind == "counterexample165":
        _verify_counterexample_file(args, report)
        return
    obj = _read_json(args.path, report)
    if args.kind == "ueb":
        basis = _parse(basis_from_json, obj, "basis file")
        t0 = time.perf_counter()
        ub = verify_ueb(basis)
        report.check("ueb-definition", ub.ok, t0, details=ub.summary())
    elif args.kind == "nice":
        basis = _parse(basis_from_json, obj, "basis file")
        rep = _pair_indexed_rep(basis, label=f"file:{os.path.basename(args.path)}")
        t0 = time.perf_counter()
        nr = verify_nice(rep, pair_mode="all")
        report.check("niceness", nr.ok, t0, details=nr.summary())
    elif args.kind == "hadamard":
        m = _parse(matrix_from_json, obj, "matrix file")
        t0 = time.perf_counter()
        hc = check_complex_hadamard(m)
        report.check("hadamard", hc.ok, t0, witness=hc.reason,
                     details={"rows": m.rows})
    elif args.kind == "latin":
        sq = _parse(latin_from_json, obj, "latin square file")
        t0 = time.perf_counter()
        lc = validate_latin(sq)
        report.check("latin", lc.ok, t0, witness=lc.witness,
                     details={"d": sq.d})


# ---------------------------------------------------------------------------
# analyze


def _analyze_induce(args, report: RunReport) -> None:
    target = args.target
    power = 1
    if _looks_like_path(target):
        obj = _read_json(target, report)
        if not isinstance(obj, dict) or "group" not in obj:
            raise InputError('induce file needs {"group": "heisenberg:<d>"}')
        spec = str(obj["group"])
        power = int(obj.get("power", 1))
    else:
        spec = target
    head, _, rest = spec.partition(":")
    if head != "heisenberg":
        raise InputError(f"unknown induce spec {spec!r} (heisenberg:<d>)")
    d = _positive_int(rest, "heisenberg modulus")
    if d < 2:
        raise InputError("heisenberg modulus must be at least 2")
    H = HeisenbergGroup(d)
    center = SubgroupView(H, [HeisenbergElement(d, 0, 0, z) for z in range(d)])
    zeta = PhasedScalar.zeta(d)
    psi = class_function(center, lambda k: zeta ** (power * k.z))
    ind = induce_representation(character_rep(psi, label=f"zeta^{power}z"), H)

    t0 = time.perf_counter()
    report.check("block-structure", ind.block_structure_ok(), t0, details={
        "index": ind.index, "dim": ind.dim, "degree": ind.degree})
    t0 = time.perf_counter()
    chi_matrix = ind.character()
    chi_formula = induce_character(psi, H)
    match = all(chi_matrix.value(h) == chi_formula.value(h)
                for h in H.elements())
    report.check("character-match", match, t0,
                 details={"elements": H.order})
    t0 = time.perf_counter()
    try:
        worst = sparsity_check(ind)
        report.check("sparsity", True, t0, details={
            "min_zero_fraction": worst,
            "block_bound": 1 - Fraction(1, ind.index)})
    except ArithmeticError as e:
        report.check("sparsity", False, t0, witness=e)
    if args.out:
        members = [ind.matrix(h) for h in H.elements()]
        labels = [(h.x, h.y, h.z) for h in H.elements()]
        basis = UnitaryErrorBasis(ind.dim, tuple(members), tuple(labels))
        _write_json(args.out, basis_to_json(basis), report)


def cmd_analyze(args, report: RunReport) -> None:
    if args.kind == "induce":
        _analyze_induce(args, report)
        return
    basis = _load_basis(args.target, report)
    if args.kind == "monomial":
        t0 = time.perf_counter()
        mr = basis.monomiality()
        report.check("monomial", True, t0, details={
            "is_monomial": mr.is_monomial,
            "zero_fraction": mr.zero_fraction,
            "per_matrix_nonzero": list(mr.per_matrix_nonzero)})
    elif args.kind == "sparsity":
        t0 = time.perf_counter()
        fractions = [m.zero_fraction() for m in basis.members]
        report.check("sparsity", True, t0, details={
            "min_zero_fraction": min(fractions),
            "max_zero_fraction": max(fractions),
            "per_member": [str(f) for f in fractions]})
    elif args.kind == "wickedness":
        t0 = time.perf_counter()
        ub = verify_ueb(basis)
        if not report.check("ueb-definition", ub.ok, t0, details=ub.summary()):
            return
        t0 = time.perf_counter()
        w = wickedness_witness(basis, assume_verified=True)
        details = {"witness_found": w is not None}
        if w is not None:
            details.update(w.summary())
        report.check("wickedness", True, t0, details=details)
    elif args.kind == "cocycle":
        rep = _pair_indexed_rep(basis, label="analyze:cocycle")
        t0 = time.perf_counter()
        try:
            table = cocycle_table(rep)
        except CocycleError as e:
            report.check("cocycle", False, t0, witness=e)
            return
        n = rep.group.order
        sampled = n ** 3 > 20_000
        rng = random.Random(args.seed) if sampled else None
        valid = table.validate(rng=rng, samples=2_000)
        details = {"pairs": len(table.values), "identity_holds": valid,
                   "sampled": sampled}
        if sampled:
            details["seed"] = args.seed
        if n * n <= 256:
            details["table"] = [
                {"g": list(g), "h": list(h), "omega": str(v)}
                for (g, h), v in sorted(table.values.items())]
        report.check("cocycle", valid, t0, details=details)


# ---------------------------------------------------------------------------
# entry point


def _u64(text: str) -> int:
    n = int(text)
    if not 0 <= n < 2 ** 64:
        raise argparse.ArgumentTypeError("seed must fit in 64 bits")
    return n


def _jobs(text: str) -> int:
    n = int(text)
    if n < 1:
        raise argparse.ArgumentTypeError("jobs must be at least 1")
    return n


def _build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=_u64, default=DEFAULT_SEED,
                        help="seed for every sampled check (default %(default)s)")
    common.add_argument("--jobs", type=_jobs, default=1,
                        help="worker count for sweeps; results do not depend on it")
    common.add_argument("--format", choices=("json", "pretty"), default="json",
                        help="stdout layout (default %(default)s)")

    p = argparse.ArgumentParser(
        prog="uebkit",
        description="Construct, verify and analyze unitary error bases "
                    "in exact arithmetic.")
    sub = p.add_subparsers(dest="command", required=True)

    c = sub.add_parser("construct", parents=[common],
                       help="build a basis or bundle and write it as JSON")
    c.add_argument("kind",
                   help="pauli:<d>, nice:pauli:<d>, nice:heisenberg:<d>, "
                        "sam <latin> <hadamard>, or counterexample165")
    c.add_argument("params", nargs="*",
                   help="extra parameters (sam only: latin and hadamard specs)")
    c.add_argument("--out", required=True, help="output file")
    c.add_argument("--factors-only", action="store_true",
                   help="counterexample165: omit the dense generator matrices")

    v = sub.add_parser("verify", parents=[common],
                       help="run a verifier against a file")
    v.add_argument("kind", choices=("ueb", "nice", "hadamard", "latin",
                                    "counterexample165"))
    v.add_argument("path", help="input file")

    a = sub.add_parser("analyze", parents=[common],
                       help="report structural properties")
    a.add_argument("kind", choices=("monomial", "sparsity", "wickedness",
                                    "cocycle", "induce"))
    a.add_argument("target", help="basis file or inline spec such as pauli:3, "
                                  "sam:cyclic:4,alpha, heisenberg:3")
    a.add_argument("--out", help="induce: write the induced matrices here")

    return p


_COMMANDS = {"construct": cmd_construct, "verify": cmd_verify,
             "analyze": cmd_analyze}


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)
    echo = list(argv) if argv is not None else sys.argv[1:]
    report = RunReport(command=["uebkit"] + echo, seed=args.seed,
                       jobs=args.jobs)
    try:
        _COMMANDS[args.command](args, report)
    except InputError as e:
        _emit_input_error(str(e), args.format)
        return 2
    _emit(report, args.format)
    return 0 if report.ok else 1


if __name__ == "__main__":
    sys.exit(main())
