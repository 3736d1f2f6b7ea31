"""Command-line interface.

Subcommands: ``minimize`` (best diagonal shift of a Hermitian input),
``certify`` (minimality verdict at a given shift), ``export-sdpa``
(SDPA sparse file of the equivalent real SDP) and ``rank1`` (closed-form
solution for a rank-one projector).  Inputs are JSON problem files with
fields ``n``, ``real``, optional ``imag`` and ``metadata``; reports are
deterministic for a fixed input and seed.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import sys

import numpy as np

from .certify import INCONCLUSIVE, MINIMAL, certify_minimality
from .hermitian_core import DEFAULT_CLUSTER_TOL, HermitianMatrix
from .moment_geometry import DEFAULT_GAP_TOL, DEFAULT_MAX_ITERS
from .optimize import OptimizeParams, dispatch
from .rank_one import minimizing_diagonal, nonunique_diagonals, orthogonal_partner
from .sdpa import write_sdpa

__all__ = ["main"]

EXIT_OK = 0
EXIT_NOT_MINIMAL = 1
EXIT_BAD_INPUT = 2
EXIT_INCONCLUSIVE = 3


class InputError(Exception):
    pass


def _load_problem(path):
    try:
        with open(path, "rb") as fh:
            raw = fh.read()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc}") from exc
    try:
        doc = json.loads(raw)
    except json.JSONDecodeError as exc:
        raise InputError(f"{path}: not valid JSON ({exc})") from exc
    if not isinstance(doc, dict):
        raise InputError(f"{path}: top level must be an object")
    if "n" not in doc or not isinstance(doc["n"], int):
        raise InputError(f"{path}: field 'n' must be an integer")
    n = doc["n"]
    if "real" not in doc:
        raise InputError(f"{path}: field 'real' is missing")
    try:
        re = np.asarray(doc["real"], dtype=float)
    except (TypeError, ValueError) as exc:
        raise InputError(f"{path}: field 'real' is not an n x n array: {exc}") from exc
    if re.shape != (n, n):
        raise InputError(f"{path}: field 'real' must be {n} x {n}, got {re.shape}")
    if "imag" in doc and doc["imag"] is not None:
        try:
            im = np.asarray(doc["imag"], dtype=float)
        except (TypeError, ValueError) as exc:
            raise InputError(f"{path}: field 'imag' is not an n x n array: {exc}") from exc
        if im.shape != (n, n):
            raise InputError(f"{path}: field 'imag' must be {n} x {n}, got {im.shape}")
        mat = re + 1j * im
    else:
        mat = re.astype(complex)
    try:
        a0 = HermitianMatrix(mat)
    except ValueError as exc:
        raise InputError(f"{path}: fields 'real'/'imag' do not form a Hermitian matrix: {exc}") from exc
    return a0, hashlib.sha256(raw).hexdigest()


def _jsonable(obj):
    if obj is None:
        return None
    if isinstance(obj, HermitianMatrix):
        obj = obj.mat
    if isinstance(obj, np.ndarray):
        if np.iscomplexobj(obj):
            return {"real": obj.real.tolist(), "imag": obj.imag.tolist()}
        return obj.tolist()
    if isinstance(obj, (np.floating, float)):
        return float(obj)
    return obj


def _emit(report, as_json, summary_lines):
    if as_json:
        print(json.dumps(report, indent=2))
    else:
        for line in summary_lines:
            print(line)


def _certificate_payload(cert):
    payload = {
        "verdict": cert.verdict,
        "phi": _jsonable(cert.phi),
        "gap": _jsonable(cert.gap),
        "fw_gap": None if np.isnan(cert.fw_gap) else float(cert.fw_gap),
        "intersection_point": None
        if cert.intersection_point is None
        else cert.intersection_point.v.tolist(),
        "u": _jsonable(cert.u),
        "v": _jsonable(cert.v),
        "witness_x": _jsonable(cert.witness_x),
        "descent_direction": _jsonable(cert.descent_direction),
    }
    return payload


def _tolerances(args):
    return {
        "gap_tol": args.gap_tol,
        "cluster_tol": args.cluster_tol,
        "max_iters": args.max_iters,
    }


def cmd_minimize(args) -> int:
    a0, digest = _load_problem(args.input)
    params = OptimizeParams(
        max_iters=args.max_iters,
        gap_tol=args.gap_tol,
        cluster_tol=args.cluster_tol,
    )
    res = dispatch(a0, params=params, starts=args.starts, seed=args.seed)
    report = {
        "command": "minimize",
        "input_digest": digest,
        "seed": args.seed,
        "starts": args.starts,
        "tolerances": _tolerances(args),
        "phi_star": res.phi_star,
        "x_star": res.x_star.tolist(),
        "verdict": res.certificate.verdict,
        "gap": _jsonable(res.certificate.gap),
        "iterations": res.iterations,
        "certificate": _certificate_payload(res.certificate),
        "trace": [[int(i), float(p)] for i, p in res.trace],
    }
    _emit(
        report,
        args.json,
        [
            f"phi_star = {res.phi_star:.12g}",
            f"x_star = {np.array2string(res.x_star, precision=10)}",
            f"verdict = {res.certificate.verdict}",
            f"iterations = {res.iterations}",
        ],
    )
    if res.certificate.verdict == INCONCLUSIVE:
        return EXIT_INCONCLUSIVE
    return EXIT_OK


def cmd_certify(args) -> int:
    a0, digest = _load_problem(args.input)
    if args.x is None:
        x = np.zeros(a0.n)
    else:
        try:
            x = np.array([float(t) for t in args.x.split(",")])
        except ValueError as exc:
            raise InputError(f"--x: {exc}") from exc
        if x.size != a0.n:
            raise InputError(f"--x must have {a0.n} entries, got {x.size}")
    try:
        cert = certify_minimality(
            a0,
            x,
            gap_tol=args.gap_tol,
            max_iters=args.max_iters,
            cluster_tol=args.cluster_tol,
        )
    except ValueError as exc:
        raise InputError(str(exc)) from exc
    report = {
        "command": "certify",
        "input_digest": digest,
        "x": x.tolist(),
        "tolerances": _tolerances(args),
        "verdict": cert.verdict,
        "phi": _jsonable(cert.phi),
        "gap": _jsonable(cert.gap),
        "certificate": _certificate_payload(cert),
    }
    summary = [
        f"phi = {cert.phi:.12g}",
        f"verdict = {cert.verdict}",
        f"gap = {cert.gap:.6g}",
    ]
    if cert.descent_direction is not None:
        summary.append(
            f"descent_direction = {np.array2string(cert.descent_direction, precision=10)}"
        )
    _emit(report, args.json, summary)
    if cert.verdict == MINIMAL:
        return EXIT_OK
    if cert.verdict == INCONCLUSIVE:
        return EXIT_INCONCLUSIVE
    return EXIT_NOT_MINIMAL


def cmd_export_sdpa(args) -> int:
    a0, _ = _load_problem(args.input)
    try:
        write_sdpa(a0, args.output)
    except OSError as exc:
        raise InputError(f"cannot write {args.output}: {exc}") from exc
    print(f"wrote {args.output}")
    return EXIT_OK


def _parse_h(spec):
    try:
        with open(spec, "rb") as fh:
            doc = json.loads(fh.read())
        re = np.asarray(doc["h_real"], dtype=float)
        im = np.asarray(doc.get("h_imag", np.zeros_like(re)), dtype=float)
        return re + 1j * im
    except OSError:
        pass
    except (json.JSONDecodeError, KeyError, TypeError, ValueError) as exc:
        raise InputError(f"{spec}: bad rank-one vector file: {exc}") from exc
    try:
        return np.array([complex(t) for t in spec.split(",")])
    except ValueError as exc:
        raise InputError(f"cannot parse h coordinates {spec!r}: {exc}") from exc


def cmd_rank1(args) -> int:
    h = _parse_h(args.h)
    nrm = float(np.linalg.norm(h))
    if abs(nrm - 1.0) > 1e-8:
        raise InputError(f"h must have unit norm (got {nrm:.12g})")
    h = h / nrm
    sol = minimizing_diagonal(h)
    digest = hashlib.sha256(args.h.encode()).hexdigest()
    report = {
        "command": "rank1",
        "input_digest": digest,
        "case": sol.case_tag,
        "diagonal": sol.diagonal.tolist(),
        "minimal_norm": sol.minimal_norm,
        "unique": sol.unique,
    }
    summary = [
        f"case = {sol.case_tag}",
        f"diagonal = {np.array2string(sol.diagonal, precision=10)}",
        f"minimal_norm = {sol.minimal_norm:.12g}",
        f"unique = {sol.unique}",
    ]
    if sol.case_tag != "big_coordinate":
        k = orthogonal_partner(h)
        theta = np.angle(k / np.where(np.abs(h) > 0, h, 1.0))
        report["partner_real"] = k.real.tolist()
        report["partner_imag"] = k.imag.tolist()
        report["polygon_angles"] = (-theta).tolist()
        summary.append(f"partner k = {np.array2string(k, precision=10)}")
        summary.append(f"polygon angles = {np.array2string(-theta, precision=10)}")
        if not sol.unique:
            j0 = int(np.argmin(np.abs(h)))
            plus, minus = nonunique_diagonals(h, j0)
            report["witness_plus"] = _jsonable(plus)
            report["witness_minus"] = _jsonable(minus)
            summary.append(f"non-unique at coordinate {j0}: the diagonal entry there can be +1/2 or -1/2")
    _emit(report, args.json, summary)
    return EXIT_OK


def _build_parser():
    parser = argparse.ArgumentParser(
        prog="mindiag",
        description="Best diagonal approximants of Hermitian matrices.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, with_starts=False):
        p.add_argument("--gap-tol", type=float, default=DEFAULT_GAP_TOL)
        p.add_argument("--cluster-tol", type=float, default=DEFAULT_CLUSTER_TOL)
        p.add_argument("--max-iters", type=int, default=DEFAULT_MAX_ITERS)
        p.add_argument("--json", action="store_true", help="emit a JSON report")
        if with_starts:
            p.add_argument("--seed", type=int, default=0)
            p.add_argument("--starts", type=int, default=4)

    p_min = sub.add_parser("minimize", help="minimize ||A0 + Diag(x)|| over x")
    p_min.add_argument("input", help="JSON problem file")
    common(p_min, with_starts=True)
    p_min.set_defaults(func=cmd_minimize)

    p_cert = sub.add_parser("certify", help="certify minimality of A0 + Diag(x)")
    p_cert.add_argument("input", help="JSON problem file")
    p_cert.add_argument("--x", default=None, help="comma-separated shift (default zeros)")
    common(p_cert)
    p_cert.set_defaults(func=cmd_certify)

    p_sdpa = sub.add_parser("export-sdpa", help="write the real SDP in SDPA sparse format")
    p_sdpa.add_argument("input", help="JSON problem file")
    p_sdpa.add_argument("output", help="output .dat-s path")
    p_sdpa.set_defaults(func=cmd_export_sdpa)

    p_r1 = sub.add_parser("rank1", help="closed-form solution for a unit vector h")
    p_r1.add_argument("h", help="comma-separated coordinates or a JSON file with h_real/h_imag")
    p_r1.add_argument("--json", action="store_true", help="emit a JSON report")
    p_r1.set_defaults(func=cmd_rank1)
    return parser


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BAD_INPUT


if __name__ == "__main__":
    sys.exit(main())
