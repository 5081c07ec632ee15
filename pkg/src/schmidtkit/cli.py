"""Command-line surface.

Exit codes follow grep conventions: 0 for a positive verdict, 1 for a
negative one, 2 for any error (reported as a machine-readable JSON record).
The environment variable ``SCHMIDTKIT_SEED`` overrides the default seed when
``--seed`` is not given.
"""

from __future__ import annotations

import argparse
import os
import sys

import numpy as np

from . import __version__
from .bell import BellSet, check_bell_set, enumerate_bell_sets, linear_family
from .documents import (
    bell_set_to_doc,
    dumps,
    load_protocol,
    load_states,
    matrix_to_doc,
    protocol_to_doc,
)
from .entropy import entanglement_report
from .errors import DocumentError, SchmidtkitError
from .locc import simulate, synthesize
from .ssd import (
    CommutationWitness,
    SpectrumWitness,
    decompose,
    to_maximally_correlated,
)
from .states import GramEnsemble, assemble_density


def _default_seed() -> int:
    raw = os.environ.get("SCHMIDTKIT_SEED", "0")
    try:
        return int(raw)
    except ValueError as exc:
        raise DocumentError(f"SCHMIDTKIT_SEED must be an integer, got {raw!r}") from exc


def _read(path: str) -> str:
    try:
        with open(path, "r", encoding="utf-8") as handle:
            return handle.read()
    except OSError as exc:
        raise DocumentError(f"cannot read {path}: {exc.strerror}") from exc


def _write(path: str, text: str) -> None:
    try:
        with open(path, "w", encoding="utf-8") as handle:
            handle.write(text)
    except OSError as exc:
        raise DocumentError(f"cannot write {path}: {exc.strerror}") from exc


def _parse_indices(raw: str) -> tuple[tuple[int, int], ...]:
    out = []
    for i, part in enumerate(p for p in raw.split(";") if p.strip()):
        pieces = part.split(",")
        if len(pieces) != 2:
            raise DocumentError(f"index {i}: expected 'n,m', got {part.strip()!r}")
        try:
            out.append((int(pieces[0]), int(pieces[1])))
        except ValueError as exc:
            raise DocumentError(f"index {i}: non-integer entry in {part.strip()!r}") from exc
    if not out:
        raise DocumentError("no indices given")
    return tuple(out)


def _witness_doc(witness) -> dict | None:
    if witness is None:
        return None
    if isinstance(witness, CommutationWitness):
        return {
            "check": "commutation",
            "products": [list(witness.first), list(witness.second)],
            "commutator_norm": witness.commutator_norm,
        }
    if isinstance(witness, SpectrumWitness):
        return {
            "check": "spectrum-factorization",
            "basis_index": witness.j,
            "pair": list(witness.pair),
            "lhs": witness.lhs,
            "rhs": witness.rhs,
        }
    raise TypeError(f"unknown witness type {type(witness)!r}")


def _vectors_rank_deficient(ensemble: GramEnsemble) -> bool:
    stack = np.stack([v.amps for v in ensemble.vectors], axis=1)
    gram = stack.conj().T @ stack
    eigs = np.linalg.eigvalsh(gram)
    rank = int(np.sum(eigs > 1e-10 * max(1.0, float(eigs.max()))))
    return rank < len(ensemble.vectors)


def _entanglement_doc(report, certified: bool) -> dict:
    return {
        "certified_mcs": certified,
        "entropy_bits": report.entropy,
        "entropy_a_bits": report.entropy_a,
        "entropy_b_bits": report.entropy_b,
        "coherent_info_a_bits": report.coherent_info_a,
        "coherent_info_b_bits": report.coherent_info_b,
        "distillable_bits": report.distillable,
        "hashing_lower_bound_bits": report.hashing_lower_bound,
    }


def _analyze(ensemble: GramEnsemble, tol: float, seed: int, with_matrices: bool) -> dict:
    result = decompose(list(ensemble.vectors), tol=tol, seed=seed)
    certified = result.verdict.decomposable
    doc = {
        "tool": "schmidtkit",
        "version": __version__,
        "input": {
            "dA": ensemble.dim_a,
            "dB": ensemble.dim_b,
            "num_vectors": len(ensemble.vectors),
            "vectors_rank_deficient": _vectors_rank_deficient(ensemble),
        },
        "params": {"tol": tol, "seed": seed},
        "verdict": {
            "decomposable": result.verdict.decomposable,
            "products_commute": result.verdict.products_commute,
            "spectra_factorize": result.verdict.spectra_factorize,
            "witness": _witness_doc(result.verdict.witness),
        },
    }
    if certified and with_matrices:
        mcs = to_maximally_correlated(ensemble, result)
        doc["decomposition"] = {
            "ua": matrix_to_doc(result.ua),
            "ub": matrix_to_doc(result.ub),
            "coeffs": matrix_to_doc(result.coeffs),
            "residual": result.residual,
        }
        doc["correlated_form"] = {"coeff_matrix": matrix_to_doc(mcs.coeff_matrix)}
    rho = assemble_density(ensemble)
    doc["entanglement"] = _entanglement_doc(
        entanglement_report(rho, mcs_certified=certified), certified
    )
    return doc


def _cmd_check(args) -> int:
    ensemble, _ = load_states(_read(args.input), where=args.input)
    doc = _analyze(ensemble, args.tol, args.seed, with_matrices=False)
    print(dumps(doc), end="")
    return 0 if doc["verdict"]["decomposable"] else 1


def _cmd_decompose(args) -> int:
    ensemble, _ = load_states(_read(args.input), where=args.input)
    doc = _analyze(ensemble, args.tol, args.seed, with_matrices=True)
    text = dumps(doc)
    if args.output:
        _write(args.output, text)
    print(text, end="")
    return 0 if doc["verdict"]["decomposable"] else 1


def _cmd_entropy(args) -> int:
    ensemble, _ = load_states(_read(args.input), where=args.input)
    result = decompose(list(ensemble.vectors), tol=args.tol, seed=args.seed)
    certified = result.verdict.decomposable
    rho = assemble_density(ensemble)
    doc = {
        "tool": "schmidtkit",
        "version": __version__,
        "params": {"tol": args.tol, "seed": args.seed},
        "entanglement": _entanglement_doc(
            entanglement_report(rho, mcs_certified=certified), certified
        ),
    }
    print(dumps(doc), end="")
    return 0


def _cmd_bell_check(args) -> int:
    s = BellSet(args.d, _parse_indices(args.indices))
    ok, witness = check_bell_set(s)
    doc = {
        "d": s.d,
        "indices": [[n, m] for n, m in s.indices],
        "decomposable": ok,
        "witness": list(witness) if witness is not None else None,
    }
    print(dumps(doc), end="")
    return 0 if ok else 1


def _cmd_bell_enumerate(args) -> int:
    tally = enumerate_bell_sets(args.d, args.size, include_sets=args.list, cap=args.cap)
    doc = {"d": tally.d, "size": tally.size, "count": tally.count}
    if tally.sets is not None:
        doc["sets"] = [bell_set_to_doc(s) for s in tally.sets]
    print(dumps(doc), end="")
    return 0


def _cmd_bell_family(args) -> int:
    family = linear_family(args.d, args.f, args.g, orientation=args.orient)
    print(dumps(bell_set_to_doc(family)), end="")
    return 0


def _cmd_locc_synth(args) -> int:
    s = BellSet(args.d, _parse_indices(args.indices))
    protocol = synthesize(s, tol=args.tol, seed=args.seed)
    text = dumps(protocol_to_doc(protocol, seed=args.seed, version=__version__))
    if args.output:
        _write(args.output, text)
    print(text, end="")
    return 0


def _cmd_locc_simulate(args) -> int:
    protocol = load_protocol(_read(args.protocol), where=args.protocol)
    s = BellSet(protocol.d, protocol.indices)
    report = simulate(protocol, s, trials=args.trials, seed=args.seed)
    doc = {
        "trials": report.trials,
        "per_state_successes": list(report.per_state_successes),
        "per_state_trials": list(report.per_state_trials),
        "success_rate": report.success_rate,
        "seed": report.seed,
    }
    print(dumps(doc), end="")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="schmidtkit",
        description="Simultaneous Schmidt decomposition toolkit for bipartite state families",
    )
    parser.add_argument("--version", action="version", version=f"schmidtkit {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p):
        p.add_argument("--tol", type=float, default=1e-10, help="relative tolerance")
        p.add_argument("--seed", type=int, default=None, help="seed (default: SCHMIDTKIT_SEED or 0)")

    p = sub.add_parser("check", help="decide simultaneous Schmidt decomposability")
    p.add_argument("--input", required=True, help="states document (JSON)")
    add_common(p)
    p.set_defaults(func=_cmd_check)

    p = sub.add_parser("decompose", help="construct bases, correlated form, and report")
    p.add_argument("--input", required=True)
    p.add_argument("--output", help="write the report document here as well")
    add_common(p)
    p.set_defaults(func=_cmd_decompose)

    p = sub.add_parser("entropy", help="entanglement report only")
    p.add_argument("--input", required=True)
    add_common(p)
    p.set_defaults(func=_cmd_entropy)

    bell = sub.add_parser("bell", help="Bell index set operations")
    bell_sub = bell.add_subparsers(dest="bell_command", required=True)

    p = bell_sub.add_parser("check", help="index-level decomposability criterion")
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--indices", required=True, help="semicolon-separated n,m pairs")
    p.set_defaults(func=_cmd_bell_check)

    p = bell_sub.add_parser("enumerate", help="count criterion-passing subsets")
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--size", type=int, required=True)
    p.add_argument("--list", action="store_true", help="also list the passing sets")
    p.add_argument("--cap", type=int, default=10_000_000)
    p.set_defaults(func=_cmd_bell_enumerate)

    p = bell_sub.add_parser("family", help="affine index family generator")
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--f", type=int, required=True)
    p.add_argument("--g", type=int, required=True)
    p.add_argument("--orient", choices=("n", "m"), default="n")
    p.set_defaults(func=_cmd_bell_family)

    locc = sub.add_parser("locc", help="discrimination protocol operations")
    locc_sub = locc.add_subparsers(dest="locc_command", required=True)

    p = locc_sub.add_parser("synth", help="synthesize a discrimination protocol")
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--indices", required=True)
    p.add_argument("--output", help="write the protocol document here as well")
    add_common(p)
    p.set_defaults(func=_cmd_locc_synth)

    p = locc_sub.add_parser("simulate", help="run a seeded measurement simulation")
    p.add_argument("--protocol", required=True, help="protocol document (JSON)")
    p.add_argument("--trials", type=int, required=True)
    p.add_argument("--seed", type=int, default=None)
    p.set_defaults(func=_cmd_locc_simulate)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if getattr(args, "seed", None) is None and hasattr(args, "seed"):
        try:
            args.seed = _default_seed()
        except SchmidtkitError as exc:
            print(dumps({"error": {"type": type(exc).__name__, "message": str(exc)}}), end="")
            return 2
    try:
        return args.func(args)
    except SchmidtkitError as exc:
        print(dumps({"error": {"type": type(exc).__name__, "message": str(exc)}}), end="")
        return 2
    except ValueError as exc:
        print(dumps({"error": {"type": "ValueError", "message": str(exc)}}), end="")
        return 2


def entry() -> None:
    sys.exit(main(sys.argv[1:]))
