"""Command-line interface: counting tables, basis export, certification.

Exit codes: 0 success, 1 verification failure, 2 usage error, 3 resource
bound exceeded.  All output is deterministic for a given invocation (and
seed), so identical runs are byte-identical.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass
from fractions import Fraction

from . import channel as channel_mod
from . import characters, counting, encoding
from .errors import PermChannelError, ResourceBoundError
from .perms import (
    PermutationGroup,
    load_group_file,
    make_named_group,
    orbits,
    square_root_count,
    stabilizer,
)

EXIT_OK = 0
EXIT_VERIFY = 1
EXIT_USAGE = 2
EXIT_BOUND = 3

DEFAULT_ENUM_BOUND = 1 << 20
DEFAULT_ORACLE_BOUND = 5040

NAMED_KINDS = ("cyclic", "dihedral", "symmetric")
QUANTITY_BY_MODE = {"classical": "N_c", "quantum": "N_q", "ancilla": "N_a"}


class UsageError(Exception):
    pass


@dataclass
class RunConfig:
    command: str
    group_kind: str | None
    group_file: str | None
    n: int | None
    d: int | None
    mode: str
    fmt: str
    seed: int
    out: str | None
    n_max: int | None
    enum_bound: int
    oracle_bound: int


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="permchannel",
        description="Zero-error message counting and encoding for permutation channels.",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    for name, text in (
        ("count", "exact message counts N_c / N_q / N_a"),
        ("representatives", "lexicographic orbit representatives (cyclic channels)"),
        ("encode", "construct and export the cyclic message basis"),
        ("simulate", "run the channel and certify decoding"),
        ("verify", "run the full cross-check suite for a group"),
        ("chartable", "character table and Frobenius-Schur indicators"),
        ("scaling", "exact versus asymptotic counts over a range of n"),
    ):
        sp = sub.add_parser(name, help=text)
        sp.add_argument("--group", choices=NAMED_KINDS, help="named group family")
        sp.add_argument("--group-file", help="custom group: one permutation per line, image notation")
        sp.add_argument("--n", type=int, help="number of positions")
        sp.add_argument("--d", type=int, help="alphabet size")
        sp.add_argument(
            "--mode",
            choices=("classical", "quantum", "ancilla", "all"),
            default="all",
            help="which protocol(s) to consider",
        )
        sp.add_argument("--format", choices=("json", "csv", "table"), default=None)
        sp.add_argument("--seed", type=int, default=0, help="seed for randomized channel draws")
        sp.add_argument("--out", help="output file (encode: basis JSON)")
        sp.add_argument("--unsafe-bounds", action="store_true", help="lift the default size bounds")
        if name == "scaling":
            sp.add_argument("--n-max", type=int, help="upper end of the n range (inclusive)")
    return parser


def _config(ns: argparse.Namespace) -> RunConfig:
    if ns.group and ns.group_file:
        raise UsageError("--group and --group-file are mutually exclusive")
    unsafe = ns.unsafe_bounds
    fmt = ns.format or ("csv" if ns.command == "scaling" else "table")
    return RunConfig(
        command=ns.command,
        group_kind=ns.group,
        group_file=ns.group_file,
        n=ns.n,
        d=ns.d,
        mode=ns.mode,
        fmt=fmt,
        seed=ns.seed,
        out=ns.out,
        n_max=getattr(ns, "n_max", None),
        enum_bound=sys.maxsize if unsafe else DEFAULT_ENUM_BOUND,
        oracle_bound=sys.maxsize if unsafe else DEFAULT_ORACLE_BOUND,
    )


def _require(cfg: RunConfig, *names: str) -> None:
    for name in names:
        if getattr(cfg, name) is None:
            raise UsageError(f"--{name.replace('_', '-')} is required for {cfg.command}")


def _resolve_group(cfg: RunConfig) -> PermutationGroup:
    if cfg.group_file:
        return load_group_file(cfg.group_file)
    if cfg.group_kind:
        _require(cfg, "n")
        return make_named_group(cfg.group_kind, cfg.n)
    raise UsageError("specify --group or --group-file")


def _fmt_value(value) -> str:
    if value is None:
        return "undefined"
    return str(value)


def _print_rows(cfg: RunConfig, header: list[str], rows: list[list], json_obj=None) -> None:
    if cfg.fmt == "json":
        payload = json_obj if json_obj is not None else [dict(zip(header, row)) for row in rows]
        print(json.dumps(payload, indent=1, default=str))
    elif cfg.fmt == "csv":
        print(",".join(header))
        for row in rows:
            print(",".join(str(c) for c in row))
    else:
        widths = [max(len(str(h)), *(len(str(r[i])) for r in rows)) if rows else len(h) for i, h in enumerate(header)]
        print("  ".join(h.ljust(w) for h, w in zip(header, widths)))
        for row in rows:
            print("  ".join(str(c).ljust(w) for c, w in zip(row, widths)))


def cmd_count(cfg: RunConfig) -> int:
    _require(cfg, "d")
    if cfg.group_kind == "cyclic":
        _require(cfg, "n")
        report = counting.count_cyclic(cfg.n, cfg.d)
    elif cfg.group_kind == "dihedral":
        _require(cfg, "n")
        report = counting.count_dihedral(cfg.n, cfg.d)
    elif cfg.group_kind == "symmetric":
        _require(cfg, "n")
        report = counting.count_symmetric(cfg.n, cfg.d)
    else:
        group = _resolve_group(cfg)
        report = counting.count_report(group, cfg.d, oracle_max_order=cfg.oracle_bound)
    rows = []
    values = {
        "N_c": (report.n_c, report.n_c_method),
        "N_q": (report.n_q, report.n_q_method or report.n_q_reason or "no applicable formula"),
        "N_a": (report.n_a, report.n_a_method),
    }
    wanted = ("N_c", "N_q", "N_a") if cfg.mode == "all" else (QUANTITY_BY_MODE[cfg.mode],)
    for name in wanted:
        value, method = values[name]
        rows.append([name, _fmt_value(value), method])
    json_obj = {"group": cfg.group_kind or cfg.group_file, "n": report.n, "d": report.d}
    for name in wanted:
        value, method = values[name]
        json_obj[name] = {"value": _fmt_value(value), "method": method}
    _print_rows(cfg, ["quantity", "value", "method"], rows, json_obj)
    return EXIT_OK


def cmd_representatives(cfg: RunConfig) -> int:
    _require(cfg, "n", "d")
    if cfg.group_kind != "cyclic":
        raise UsageError("representatives are generated for --group cyclic only")
    reps = encoding.fkm_representatives(cfg.n, cfg.d, max_count=cfg.enum_bound)
    strings = [str(r) for r in reps]
    if cfg.fmt == "json":
        print(json.dumps(strings))
    else:
        for s in strings:
            print(s)
    return EXIT_OK


def cmd_encode(cfg: RunConfig) -> int:
    _require(cfg, "n", "d")
    if cfg.group_kind != "cyclic":
        raise UsageError("encoding bases are constructed for --group cyclic only")
    basis = encoding.message_basis_cyclic(cfg.n, cfg.d, max_states=cfg.enum_bound)
    if cfg.out:
        encoding.write_basis_json(basis, cfg.out)
    else:
        print(json.dumps(encoding.basis_json(basis), indent=1))
    print(f"states: {len(basis)}")
    print(f"m: [{','.join(str(m) for m in basis.multiplicities)}]")
    return EXIT_OK


def cmd_simulate(cfg: RunConfig) -> int:
    _require(cfg, "d")
    group = _resolve_group(cfg)
    modes = ("classical", "quantum", "ancilla") if cfg.mode == "all" else (cfg.mode,)
    if group.kind != "cyclic" and ("quantum" in modes or "ancilla" in modes):
        raise UsageError("quantum/ancilla simulation requires a cyclic group")
    reports = {}
    failed = False
    if "classical" in modes:
        obs = orbits(group, cfg.d, max_states=cfg.enum_bound)
        mismatches = 0
        spec = channel_mod.ChannelSpec.exhaustive(group)
        for orbit in obs:
            x = orbit.representative
            want = channel_mod.decode_classical(group, x, max_states=cfg.enum_bound)
            for _sigma, y in channel_mod.apply_channel_classical(spec, x):
                if channel_mod.decode_classical(group, y, max_states=cfg.enum_bound) != want:
                    mismatches += 1
        reports["classical"] = {
            "messages": len(obs),
            "elements": len(group),
            "failures": mismatches,
        }
        failed |= mismatches > 0
    basis = None
    if "quantum" in modes or "ancilla" in modes:
        basis = encoding.message_basis_cyclic(group.degree, cfg.d, max_states=cfg.enum_bound)
    if "quantum" in modes:
        report = channel_mod.verify_zero_error(group, basis)
        reports["quantum"] = report.to_json()
        failed |= not report.zero_error
    if "ancilla" in modes:
        summary = channel_mod.dense_coding_certify(group.degree, cfg.d, basis=basis)
        expected = counting.count_ancilla_polya(group, cfg.d)
        summary["expected_triples"] = expected
        reports["ancilla"] = summary
        failed |= bool(summary["failures"]) or summary["triples"] != expected
    if cfg.fmt == "json":
        print(json.dumps(reports, indent=1, default=str))
    else:
        for mode, payload in reports.items():
            print(f"[{mode}] {json.dumps(payload, default=str)}")
    return EXIT_VERIFY if failed else EXIT_OK


def _verify_checks(cfg: RunConfig, group: PermutationGroup, d: int):
    """Yield (name, passed, detail) for the whole cross-check suite."""
    group.validate()
    yield "group axioms", True, f"order {len(group)}"

    n_c = counting.count_classical_burnside(group, d)
    if d**group.degree <= cfg.enum_bound:
        obs = orbits(group, d, max_states=cfg.enum_bound)
        yield "orbit count matches group average", n_c == len(obs), f"{n_c} == {len(obs)}"
        sample = obs if len(obs) <= 200 else obs[:200]
        ok = all(len(stabilizer(group, o.representative)) * o.size == len(group) for o in sample)
        yield "orbit-stabilizer product", ok, f"{len(sample)} representatives"
        spec = channel_mod.ChannelSpec.exhaustive(group)
        mism = sum(
            1
            for o in obs
            for _s, y in channel_mod.apply_channel_classical(spec, o.representative)
            if channel_mod.decode_classical(group, y, max_states=cfg.enum_bound) != o.index
        )
        yield "classical decoding is orbit-invariant", mism == 0, f"{mism} mismatches"
    n_a = counting.count_ancilla_polya(group, d)
    yield (
        "ancilla count equals squared-alphabet classical count",
        n_a == counting.count_classical_burnside(group, d * d),
        f"{n_a}",
    )

    if group.kind in NAMED_KINDS:
        closed = {
            "cyclic": counting.count_cyclic,
            "dihedral": counting.count_dihedral,
            "symmetric": counting.count_symmetric,
        }[group.kind](group.degree, d)
        ok = closed.n_c == n_c and closed.n_a == n_a
        yield "closed forms match group averages", ok, f"N_c {closed.n_c}, N_a {closed.n_a}"

    if len(group) <= cfg.oracle_bound:
        table = characters.character_table(group, max_order=cfg.oracle_bound)
        yield "character table invariants", True, f"{len(table.irreps)} irreps"
        fs = characters.frobenius_schur_indicators(group, table)
        mults = characters.ambient_multiplicities(group, d, table=table)
        nq_sum = sum(mults.values)
        na_sum = sum(m * m for m in mults.values)
        yield "squared multiplicities match ancilla count", na_sum == n_a, f"{na_sum} == {n_a}"
        if all(v == 1 for v in fs.values):
            formula = counting.count_quantum_totally_orthogonal(group, d, certify=False)
            yield (
                "real-irrep quantum formula matches multiplicity sum",
                formula == nq_sum,
                f"{formula} == {nq_sum}",
            )
            ok = all(
                abs(sum(ir.values[table.class_index_of(p)] for ir in table.irreps) - square_root_count(group, p)) < 1e-9
                for p in group.elements
            )
            yield "character sums count square roots", ok, f"{len(group)} elements"
        else:
            formula = counting.count_quantum_totally_orthogonal(group, d, certify=False)
            yield (
                "not totally orthogonal: squared-cycle formula inapplicable",
                True,
                f"FS = {list(fs.values)}; formula {formula} vs multiplicity sum {nq_sum}",
            )
        if group.kind == "cyclic":
            yield (
                "multiplicity sum equals full space dimension",
                nq_sum == d**group.degree,
                f"{nq_sum} == {d**group.degree}",
            )

    if group.kind == "cyclic" and d**group.degree <= cfg.enum_bound:
        obs = orbits(group, d, max_states=cfg.enum_bound)
        fkm = encoding.fkm_representatives(group.degree, d, max_count=cfg.enum_bound)
        ok = [r.symbols for r in fkm] == [o.representative.symbols for o in obs]
        yield "necklace generator matches orbit representatives", ok, f"{len(fkm)} representatives"
        basis = encoding.message_basis_cyclic(group.degree, d, max_states=cfg.enum_bound)
        report = channel_mod.verify_zero_error(group, basis)
        yield (
            "zero-error quantum decoding",
            report.zero_error,
            f"{report.messages_tested} messages x {report.group_elements_tested} elements, "
            f"max off-diagonal overlap {report.max_offdiag_overlap:.2e}",
        )


def cmd_verify(cfg: RunConfig) -> int:
    _require(cfg, "d")
    group = _resolve_group(cfg)
    failed = False
    rows = []
    for name, passed, detail in _verify_checks(cfg, group, cfg.d):
        failed |= not passed
        rows.append([("ok" if passed else "FAIL"), name, detail])
    _print_rows(cfg, ["status", "check", "detail"], rows)
    return EXIT_VERIFY if failed else EXIT_OK


def _format_complex(z: complex) -> str:
    re = round(z.real, 6)
    im = round(z.imag, 6)
    re = re + 0.0
    im = im + 0.0
    if im == 0:
        return f"{re:g}"
    if re == 0:
        return f"{im:g}i"
    return f"{re:g}{im:+g}i"


def cmd_chartable(cfg: RunConfig) -> int:
    group = _resolve_group(cfg)
    table = characters.character_table(group, max_order=cfg.oracle_bound)
    fs = characters.frobenius_schur_indicators(group, table)
    class_names = [
        "[" + " ".join(f"{part}^{mult}" if mult > 1 else str(part) for part, mult in c.partition) + "]"
        for c in table.classes
    ]
    if cfg.fmt == "json":
        payload = {
            "group_order": table.group_order,
            "classes": [
                {"cycle_type": name, "size": c.size, "representative": list(c.representative.images)}
                for name, c in zip(class_names, table.classes)
            ],
            "irreps": [
                {
                    "label": ir.label,
                    "dim": ir.dim,
                    "fs_indicator": fs.values[i],
                    "values": [{"re": v.real, "im": v.imag} for v in ir.values],
                }
                for i, ir in enumerate(table.irreps)
            ],
        }
        print(json.dumps(payload, indent=1))
        return EXIT_OK
    header = ["irrep", "dim", "FS"] + [f"{name}x{c.size}" for name, c in zip(class_names, table.classes)]
    rows = [
        [ir.label, ir.dim, f"{fs.values[i]:+d}"] + [_format_complex(v) for v in ir.values]
        for i, ir in enumerate(table.irreps)
    ]
    _print_rows(cfg, header, rows)
    return EXIT_OK


def cmd_scaling(cfg: RunConfig) -> int:
    _require(cfg, "d", "n")
    if cfg.mode == "all":
        raise UsageError("scaling requires a single --mode (classical, quantum or ancilla)")
    if not cfg.group_kind:
        raise UsageError("scaling requires a named --group")
    if cfg.group_kind == "cyclic" and cfg.mode == "quantum":
        raise UsageError("the cyclic quantum count is exact (d**n); no asymptotic law is tabulated")
    tag = {"classical": "Nc", "quantum": "Nq", "ancilla": "Na"}[cfg.mode]
    kind = f"{cfg.group_kind}_{tag}"
    n_lo = cfg.n
    n_hi = cfg.n_max if cfg.n_max is not None else cfg.n
    if n_hi < n_lo:
        raise UsageError("--n-max must be >= --n")
    counter = {
        "cyclic": counting.count_cyclic,
        "dihedral": counting.count_dihedral,
        "symmetric": counting.count_symmetric,
    }[cfg.group_kind]
    rows = []
    for n in range(n_lo, n_hi + 1):
        report = counter(n, cfg.d)
        exact = {"classical": report.n_c, "quantum": report.n_q, "ancilla": report.n_a}[cfg.mode]
        estimate = counting.asymptotic_estimate(kind, n, cfg.d)
        ratio = Fraction(exact) / estimate.leading_value
        rows.append([n, exact, float(estimate.leading_value), float(ratio)])
    _print_rows(cfg, ["n", "exact", "asymptotic", "ratio"], rows)
    return EXIT_OK


COMMANDS = {
    "count": cmd_count,
    "representatives": cmd_representatives,
    "encode": cmd_encode,
    "simulate": cmd_simulate,
    "verify": cmd_verify,
    "chartable": cmd_chartable,
    "scaling": cmd_scaling,
}


def main(argv=None) -> int:
    parser = build_parser()
    try:
        ns = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        cfg = _config(ns)
        return COMMANDS[cfg.command](cfg)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ResourceBoundError as exc:
        print(f"resource bound: {exc}", file=sys.stderr)
        return EXIT_BOUND
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except PermChannelError as exc:
        print(f"failure: {exc}", file=sys.stderr)
        return EXIT_VERIFY


def run() -> None:
    sys.exit(main())


if __name__ == "__main__":
    run()
