"""Command-line front end: ``hyperstate <subcommand> ...``.

Exit codes: 0 success, 2 inconclusive verdict, 1 error.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
import zlib
from dataclasses import dataclass

import numpy as np

from . import classify as C
from .entanglement import (
    GeoConfig,
    biseparable_overlap,
    bipartitions,
    genuine_negativity,
    geometric_measure,
    negativity,
    pair_max_eigs,
    single_qubit_max_eigs,
)
from .hypergraph import Hypergraph, HypergraphFormatError, load, loads, mask_to_vertices, to_text
from .luequiv import hypergraph_lu_decision, lu_equivalent_generic
from .nonclassical import (
    admissible,
    describe_terms,
    expansion_by_weight,
    local_hv_max,
    mermin_operator,
    z_expansion,
)
from .stabilizer import check_stabilized, lemma_table, projector_check
from .statevec import (
    DENSE_MAX,
    StateVector,
    build_state,
    dyadic_strings,
    state_from_json,
    state_to_json,
    support_stats,
)

EXIT_OK, EXIT_ERROR, EXIT_INCONCLUSIVE = 0, 1, 2


@dataclass(frozen=True)
class RunConfig:
    seed: int = 0
    restarts: int = 256
    threads: int = 0
    tolerance: float = 1e-9
    eg_tolerance: float = C.EG_TOL
    fmt: str = "text"

    def substream(self, name: str) -> int:
        """Independent 63-bit seed for a named consumer of randomness."""
        ss = np.random.SeedSequence([self.seed & (2**64 - 1), zlib.crc32(name.encode())])
        return int(ss.generate_state(1, dtype=np.uint64)[0] >> np.uint64(1))

    def geo(self, name: str = "geometric") -> GeoConfig:
        return GeoConfig(restarts=self.restarts, seed=self.substream(name))


def _config(args) -> RunConfig:
    return RunConfig(
        seed=args.seed,
        restarts=args.restarts,
        threads=C.resolve_threads(args.threads),
        tolerance=args.tol,
        eg_tolerance=args.eg_tol,
        fmt=args.format,
    )


def _emit(text: str, path: str | None = None) -> None:
    if path:
        with open(path, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _dump(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=False) + "\n"


def _read_inputs(path: str) -> list[Hypergraph | StateVector]:
    """A state dump (``{"n", "amps"}``) or a hypergraph file."""
    with open(path) as fh:
        content = fh.read()
    stripped = content.lstrip()
    if stripped.startswith(("{", "[")):
        try:
            obj = json.loads(content)
        except json.JSONDecodeError as exc:
            raise HypergraphFormatError(exc.msg, exc.lineno, exc.colno) from None
        items = obj if isinstance(obj, list) else [obj]
        if items and isinstance(items[0], dict) and "amps" in items[0]:
            return [state_from_json(it) for it in items]
    return loads(content, as_json=path.endswith(".json"))


def _single(path: str) -> Hypergraph | StateVector:
    items = _read_inputs(path)
    if len(items) != 1:
        raise ValueError(f"{path}: expected exactly one hypergraph or state, found {len(items)}")
    return items[0]


def _ket(index: int, n: int) -> str:
    return "|" + "".join(str((index >> q) & 1) for q in range(n)) + ">"


# -- subcommands ---------------------------------------------------------------


def cmd_build(args, cfg: RunConfig) -> int:
    graphs = load(args.input)
    for H in graphs:
        if H.n > DENSE_MAX:
            raise ValueError(f"dense output is limited to n <= {DENSE_MAX} (got n={H.n})")
    states = [build_state(H) for H in graphs]
    if args.out:
        dumps = [state_to_json(s) for s in states]
        _emit(_dump(dumps[0] if len(dumps) == 1 else dumps), args.out)
    if args.amplitudes or not args.out:
        lines = []
        for H, s in zip(graphs, states):
            lines.append(f"# {to_text(H)}")
            exact = dyadic_strings(s)
            for x in range(1 << s.n):
                value = exact[x] if exact else f"{s.amps[x].real:+.12f}"
                lines.append(f"{_ket(x, s.n)} {value}")
        _emit("\n".join(lines) + "\n")
    return EXIT_OK


def _measures(s: StateVector, cfg: RunConfig) -> dict:
    geo = geometric_measure(s, cfg.geo())
    cuts = {
        "".join(str(v + 1) for v in mask_to_vertices(m)): negativity(s, m) for m in bipartitions(s.n)
    }
    return {
        "n": s.n,
        "E_G": geo.value,
        "alpha_BS": biseparable_overlap(s),
        "N_gen": genuine_negativity(s),
        "negativity": cuts,
        "single_qubit_max_eigs": single_qubit_max_eigs(s),
        "two_qubit_max_eigs": {f"{a + 1}{b + 1}": v for (a, b), v in pair_max_eigs(s).items()},
    }


def cmd_measures(args, cfg: RunConfig) -> int:
    results = []
    for item in _read_inputs(args.input):
        if isinstance(item, Hypergraph):
            if item.n > DENSE_MAX:
                raise ValueError(f"dense measures are limited to n <= {DENSE_MAX}")
            rec = {"hypergraph": to_text(item), **_measures(build_state(item), cfg)}
            st = support_stats(item)
            rec["support"] = {"F": st.F, "d": st.d, "supp_fpm": st.supp_fpm, "F_i": list(st.F_i), "offdiag_i": list(st.offdiag_i)}
        else:
            rec = {"hypergraph": None, **_measures(item, cfg)}
        results.append(rec)
    if cfg.fmt == "json":
        _emit(_dump(results), args.out)
        return EXIT_OK
    lines = []
    for rec in results:
        lines.append(f"# {rec['hypergraph'] or 'state'}")
        lines.append(f"E_G      {rec['E_G']:.6f}")
        lines.append(f"alpha_BS {rec['alpha_BS']:.12f}")
        lines.append(f"N_gen    {rec['N_gen']:.12f}")
        lines.append("single   " + " ".join(f"{v:.12f}" for v in rec["single_qubit_max_eigs"]))
        for cut, v in rec["negativity"].items():
            lines.append(f"neg[{cut}] {v:.12f}")
    _emit("\n".join(lines) + "\n", args.out)
    return EXIT_OK


CSV_COLUMNS = ["class", "E_G", "rho_A", "rho_B", "rho_C", "rho_D", "rho_AB", "rho_AC", "rho_AD", "alpha_BS", "N_gen", "edges", "orbit_size"]


def _csv_rows(records, fps) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(CSV_COLUMNS)
    for i, (r, fp) in enumerate(zip(records, fps), start=1):
        s = build_state(r.representative)
        singles = single_qubit_max_eigs(s)
        pairs = pair_max_eigs(s)
        cols = singles + [pairs[(0, j)] for j in range(1, s.n)]
        if s.n != 4:
            cols = singles + list(fp.two_qubit_max_eigs)
        w.writerow(
            [i, f"{fp.E_G:.5f}"]
            + [f"{v:.12f}" for v in cols]
            + [f"{fp.alpha_BS:.12f}", f"{fp.genuine_neg:.12f}", to_text(r.representative), r.orbit_size]
        )
    return buf.getvalue()


def cmd_classify(args, cfg: RunConfig) -> int:
    geo = cfg.geo("classify")
    if args.uniform:
        try:
            n, k = (int(v) for v in args.uniform.split(":"))
        except ValueError:
            raise ValueError("--uniform expects N:K, e.g. 6:3") from None
        records = C.enumerate_uniform_classes(n, k, args.mixed, cfg.threads)
        title = f"{k}-uniform {n}-qubit classes" + (" with maximally mixed single-qubit reductions" if args.mixed else "")
        graph_classes = []
    else:
        if args.n is None:
            raise ValueError("give --n or --uniform")
        records = C.filtered_classes(C.enumerate_classes(args.n))
        graph_classes = C.graph_state_classes(args.n)
        title = f"{args.n}-qubit classes (connected, an edge of size >= 3)"
    fps = [] if args.no_fingerprints else [C.fingerprint(r.representative, geo) for r in records]
    lines = [f"{title}: {len(records)}"]
    for i, r in enumerate(records, start=1):
        extra = f"  E_G={fps[i - 1].E_G:.5f}" if fps else ""
        lines.append(f"{i:3d}  orbit={r.orbit_size:5d}  {to_text(r.representative)}{extra}")
    if not args.uniform:
        lines.append(f"connected graph-state classes: {len(graph_classes)}")
        for g in graph_classes:
            lines.append(f"     {to_text(g.representative)}")
    report = {
        "title": title,
        "count": len(records),
        "classes": [
            {
                "class": i,
                "edges": r.representative.edge_sets(),
                "orbit_size": r.orbit_size,
                "max_cardinality": r.max_cardinality,
                "connected": r.connected,
                **(
                    {
                        "E_G": fps[i - 1].E_G,
                        "single_qubit_max_eigs": list(fps[i - 1].single_qubit_max_eigs),
                        "two_qubit_max_eigs": list(fps[i - 1].two_qubit_max_eigs),
                        "alpha_BS": fps[i - 1].alpha_BS,
                        "N_gen": fps[i - 1].genuine_neg,
                    }
                    if fps
                    else {}
                ),
            }
            for i, r in enumerate(records, start=1)
        ],
        "graph_state_classes": [g.representative.edge_sets() for g in graph_classes],
    }
    if fps and not args.uniform and args.n == 4:
        match = C.match_rows(fps)
        report["table_rows"] = {str(i + 1): label for i, label in match.mapping.items()}
        report["unmatched"] = [i + 1 for i in match.unmatched]
        lines.append(f"reference rows matched: {len(match.mapping)}/{len(records)}")
    if args.out:
        _emit(_dump(report), args.out)
    if args.csv:
        if not fps:
            raise ValueError("--csv needs fingerprints")
        _emit(_csv_rows(records, fps), args.csv)
    if cfg.fmt == "json" and not args.out:
        _emit(_dump(report))
    else:
        _emit("\n".join(lines) + "\n")
    return EXIT_OK


def _fmt_unitary(u: np.ndarray) -> str:
    def c(z):
        return f"{z.real:+.12f}{z.imag:+.12f}j"

    return f"[[{c(u[0, 0])}, {c(u[0, 1])}], [{c(u[1, 0])}, {c(u[1, 1])}]]"


def cmd_lu_check(args, cfg: RunConfig) -> int:
    a, b = _single(args.a), _single(args.b)
    if isinstance(a, Hypergraph) and isinstance(b, Hypergraph):
        d = hypergraph_lu_decision(a, b, up_to_permutation=args.up_to_permutation)
        verdict, method, witnesses, detail = d.verdict, d.method, d.witnesses, d.detail
        if d.permutation is not None and args.up_to_permutation:
            detail = (detail + " " if detail else "") + "relabeling " + " ".join(str(v + 1) for v in d.permutation)
    else:
        sa = build_state(a) if isinstance(a, Hypergraph) else a
        sb = build_state(b) if isinstance(b, Hypergraph) else b
        r = lu_equivalent_generic(sa, sb, cfg.tolerance)
        verdict, method, witnesses, detail = r.verdict, "standard_form", r.witnesses, r.reason
    lines = [f"verdict: {verdict}", f"method: {method}"]
    if detail:
        lines.append(f"detail: {detail}")
    for i, u in enumerate(witnesses, start=1):
        lines.append(f"U{i} = {_fmt_unitary(u)}")
    if cfg.fmt == "json":
        _emit(
            _dump(
                {
                    "verdict": verdict,
                    "method": method,
                    "detail": detail,
                    "witnesses": [[[[z.real, z.imag] for z in row] for row in u] for u in witnesses],
                }
            )
        )
    else:
        _emit("\n".join(lines) + "\n")
    return EXIT_INCONCLUSIVE if verdict == "inconclusive" else EXIT_OK


def cmd_lp_check(args, cfg: RunConfig) -> int:
    a, b = _single(args.a), _single(args.b)
    if not (isinstance(a, Hypergraph) and isinstance(b, Hypergraph)):
        raise ValueError("lp-check needs two hypergraphs")
    same = C.pauli_equivalent_fixed_labels(a, b) if args.fixed_labels else C.lp_equivalent(a, b)
    verdict = "equivalent" if same else "inequivalent"
    if cfg.fmt == "json":
        _emit(_dump({"verdict": verdict, "orbit_size_a": len(C.pauli_orbit(a)), "orbit_size_b": len(C.pauli_orbit(b))}))
    else:
        _emit(f"verdict: {verdict}\n")
    return EXIT_OK


def cmd_inequality(args, cfg: RunConfig) -> int:
    cert = admissible(args.n, args.k)
    if not cert.admissible:
        raise ValueError(f"({args.n},{args.k}) is not admissible; failing (alpha, C, parity): {cert.failing()}")
    spec = mermin_operator(args.n, args.k)
    lhv = local_hv_max(spec) if 2 * spec.n <= 26 else None
    report = {
        "certificate": cert.to_json(),
        "terms": describe_terms(spec),
        "quantum_value": spec.quantum_value,
        "classical_bound": spec.classical_bound,
        "local_hv_max": lhv,
    }
    if spec.n <= DENSE_MAX:
        coeffs = z_expansion(spec.hypergraph, 0)
        report["z_expansion_qubit1"] = {
            str(w): sorted(str(c) for c in vals)
            for w, vals in sorted(expansion_by_weight(coeffs).items())
        }
    if args.certificate:
        _emit(_dump(report), args.certificate)
    if cfg.fmt == "json":
        _emit(_dump(report))
        return EXIT_OK
    lines = [f"(n,k) = ({spec.n},{spec.k}) admissible"]
    for a, v, p in cert.checks:
        lines.append(f"  C({spec.n - a},{spec.k - a}) = {v}  parity {p}")
    lines.append(f"terms ({len(spec.terms)}):")
    lines.extend(f"  {t}" for t in report["terms"])
    qv = "n/a (dense limit)" if spec.quantum_value is None else f"{spec.quantum_value:.6f}"
    lines.append(f"quantum value: {qv}")
    lines.append(f"classical bound: {spec.classical_bound:g}")
    lines.append(f"local hidden-variable max: {'n/a' if lhv is None else f'{lhv:g}'}")
    if "z_expansion_qubit1" in report:
        lines.append("z-expansion of qubit 1 diagonal, by Z weight:")
        for w, vals in report["z_expansion_qubit1"].items():
            lines.append(f"  weight {w}: {', '.join(vals)}")
    _emit("\n".join(lines) + "\n")
    return EXIT_OK


def cmd_verify_lemmas(args, cfg: RunConfig) -> int:
    failures = 0
    counts = {"rules": 0, "power-set": 0}
    for n in range(1, args.n + 1):
        for rule, e, mask, ok in lemma_table(n):
            counts[rule] += 1
            if not ok:
                failures += 1
                print(f"FAIL {rule} n={n} e={e:#b} mask={mask:#b}", file=sys.stderr)
    rng = np.random.default_rng(cfg.substream("verify-lemmas"))
    worst = 0.0
    for _ in range(args.random):
        n = int(rng.integers(1, args.n + 1))
        masks = [m for m in range(1, 1 << n) if rng.random() < 0.3]
        H = Hypergraph.from_masks(n, masks, int(rng.choice([1, -1])))
        if not check_stabilized(H):
            failures += 1
            print(f"FAIL stabilizer {to_text(H)}", file=sys.stderr)
        worst = max(worst, projector_check(H))
    if worst >= 1e-12:
        failures += 1
    _emit(
        f"commutation rules checked: {counts['rules']}\n"
        f"power-set rules checked: {counts['power-set']}\n"
        f"random hypergraphs: {args.random}, worst projector deviation {worst:.3g}\n"
        f"failures: {failures}\n"
    )
    return EXIT_OK if failures == 0 else EXIT_ERROR


# -- parser --------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=0, help="master seed (64-bit)")
    common.add_argument("--restarts", type=int, default=256, help="geometric-measure restarts")
    common.add_argument("--threads", type=int, default=0, help="worker count, 0 = HYPERSTATE_THREADS or all CPUs")
    common.add_argument("--tol", type=float, default=1e-9, help="equality tolerance")
    common.add_argument("--eg-tol", type=float, default=C.EG_TOL, help="E_G matching tolerance")
    common.add_argument("--format", choices=("text", "json", "csv"), default="text")

    p = argparse.ArgumentParser(prog="hyperstate", description="Hypergraph-state entanglement toolkit")
    sub = p.add_subparsers(dest="command", required=True)

    b = sub.add_parser("build", parents=[common], help="state vector of a hypergraph")
    b.add_argument("--in", dest="input", required=True)
    b.add_argument("--amplitudes", action="store_true")
    b.add_argument("--out")
    b.set_defaults(func=cmd_build)

    m = sub.add_parser("measures", parents=[common], help="entanglement measures")
    m.add_argument("--in", dest="input", required=True)
    m.add_argument("--out")
    m.set_defaults(func=cmd_measures)

    c = sub.add_parser("classify", parents=[common], help="local-Pauli + permutation classes")
    c.add_argument("--n", type=int)
    c.add_argument("--uniform", help="N:K for the k-uniform sweep")
    c.add_argument("--mixed", action="store_true", help="keep only maximally mixed single-qubit reductions")
    c.add_argument("--out", help="JSON report path")
    c.add_argument("--csv", help="CSV table path")
    c.add_argument("--no-fingerprints", action="store_true")
    c.set_defaults(func=cmd_classify)

    lu = sub.add_parser("lu-check", parents=[common], help="local-unitary equivalence")
    lu.add_argument("--a", required=True)
    lu.add_argument("--b", required=True)
    lu.add_argument("--up-to-permutation", action="store_true")
    lu.set_defaults(func=cmd_lu_check)

    lp = sub.add_parser("lp-check", parents=[common], help="local-Pauli equivalence of hypergraphs")
    lp.add_argument("--a", required=True)
    lp.add_argument("--b", required=True)
    lp.add_argument("--fixed-labels", action="store_true", help="disallow qubit relabeling")
    lp.set_defaults(func=cmd_lp_check)

    q = sub.add_parser("inequality", parents=[common], help="GHZ-type inequality for a complete k-uniform hypergraph")
    q.add_argument("--n", type=int, required=True)
    q.add_argument("--k", type=int, required=True)
    q.add_argument("--certificate")
    q.set_defaults(func=cmd_inequality)

    v = sub.add_parser("verify-lemmas", parents=[common], help="dense checks of the stabilizer identities")
    v.add_argument("--n", type=int, default=5)
    v.add_argument("--random", type=int, default=200)
    v.set_defaults(func=cmd_verify_lemmas)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        cfg = _config(args)
        return args.func(args, cfg)
    except (HypergraphFormatError, ValueError, OSError, KeyError) as exc:
        print(f"error: {args.command}: {exc}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
