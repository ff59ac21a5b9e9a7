"""Command-line front end.

Verbs: verify, catalog, cat-rank, harmonic-dim, harmonic-basis, ann-dims,
tight, cert-rank, gen, rank-bounds, export.  Exit codes: 0 success/verified,
1 verification failure or inconclusive certificate, 2 usage error.  All
exact values print as nested coefficient arrays plus a decimal preview;
``--json`` switches to structured JSON on stdout.  QW_NUM_THREADS caps the
parallelism of ``verify --all``.
"""

from __future__ import annotations

import argparse
import csv
import json
import os
import sys
from concurrent.futures import ThreadPoolExecutor

from .apolar import ann_component_dim, catalecticant, exact_rank
from .errors import QwaringError
from .exactfield import AlgNum, numeric_eval
from .harmonic import harmonic_basis, harmonic_dim
from .multipoly import poly_to_json
from .tightness import angle_certificate, tight_verdict
from .waring import (
    Decomposition,
    caliber,
    catalog,
    decomposition_from_json,
    decomposition_to_json,
    gen_binary,
    gen_q8,
    gen_stroud_q2,
    rank_bounds,
    verify,
)


def _preview(value, precision: int = 64) -> str:
    if isinstance(value, AlgNum):
        iv = numeric_eval(value, precision)
        z = complex(iv.center)
        if abs(z.imag) < 1e-12:
            return f"{z.real:.12g}"
        return f"{z.real:.12g}{z.imag:+.12g}i"
    return str(value)


def _value_json(value, precision: int = 64) -> dict:
    from .exactfield import algnum_to_json

    return {"exact": algnum_to_json(value), "approx": _preview(value, precision)}


def _emit(payload: dict, as_json: bool, lines: list[str]) -> None:
    if as_json:
        print(json.dumps(payload, indent=2, default=str))
    else:
        for line in lines:
            print(line)


def _all_decompositions() -> dict[str, Decomposition]:
    entries = dict(catalog())
    for n in list(range(3, 8)) + list(range(9, 13)):
        dec = gen_stroud_q2(n)
        entries[dec.name] = dec
    entries["gen_q8"] = gen_q8()
    for s in range(1, 9):
        dec = gen_binary(s)
        entries[dec.name] = dec
    return entries


def _resolve_decomposition(args) -> Decomposition:
    if args.file:
        with open(args.file, "r", encoding="utf-8") as fh:
            data = json.load(fh)
        if getattr(args, "tower", None):
            # external tower file; decomposition JSON may omit its own
            with open(args.tower, "r", encoding="utf-8") as fh:
                data["tower"] = json.load(fh)
        return decomposition_from_json(data)
    entries = _all_decompositions()
    if args.name not in entries:
        raise QwaringError(
            f"unknown decomposition {args.name!r}; see the `catalog` verb"
        )
    return entries[args.name]


def cmd_verify(args) -> int:
    if args.all:
        entries = _all_decompositions()
        workers = max(1, int(os.environ.get("QW_NUM_THREADS", "4")))
        results = {}
        with ThreadPoolExecutor(max_workers=workers) as pool:
            futures = {name: pool.submit(verify, dec) for name, dec in entries.items()}
            for name, fut in futures.items():
                ok, _ = fut.result()
                results[name] = ok
        payload = {"verified": results, "all_ok": all(results.values())}
        _emit(payload, args.json,
              [f"{name}: {'ok' if ok else 'FAILED'}" for name, ok in sorted(results.items())]
              + [f"all: {'ok' if payload['all_ok'] else 'FAILED'}"])
        return 0 if payload["all_ok"] else 1
    dec = _resolve_decomposition(args)
    ok, residual = verify(dec)
    rep = caliber(dec) if ok else None
    payload = {
        "name": dec.name,
        "n": dec.n,
        "s": dec.s,
        "size": dec.size,
        "verified": ok,
        "residual_terms": len(residual.terms),
    }
    lines = [
        f"{dec.name}: n={dec.n} s={dec.s} size={dec.size}",
        f"verified: {ok}",
        f"residual: {'0' if ok else repr(residual)[:200]}",
    ]
    if rep is not None:
        payload["caliber"] = {
            "distinct": rep.distinct_count,
            "first_caliber": rep.is_first_caliber,
            "tight_value": str(rep.expected_tight),
            "values": [_preview(v) for v in rep.values],
        }
        lines.append(
            f"caliber: {rep.distinct_count} distinct value(s); "
            f"B = {rep.expected_tight}"
        )
    _emit(payload, args.json, lines)
    return 0 if ok else 1


def cmd_catalog(args) -> int:
    entries = _all_decompositions()
    payload = {
        name: {"n": dec.n, "s": dec.s, "size": dec.size}
        for name, dec in entries.items()
    }
    _emit(payload, args.json,
          [f"{name}: n={info['n']} s={info['s']} size={info['size']}"
           for name, info in sorted(payload.items())])
    return 0


def cmd_cat_rank(args) -> int:
    from .multipoly import q_power

    mat = catalecticant(q_power(args.n, args.s), args.k)
    rank = exact_rank(mat)
    nullity = len(mat.cols) - rank
    payload = {"n": args.n, "s": args.s, "k": args.k,
               "shape": list(mat.shape), "rank": rank, "nullity": nullity}
    _emit(payload, args.json,
          [f"Cat(q_{args.n}^{args.s}, k={args.k}): shape {mat.shape}, "
           f"rank {rank}, nullity {nullity}"])
    return 0


def cmd_harmonic_dim(args) -> int:
    dim = harmonic_dim(args.n, args.d)
    _emit({"n": args.n, "d": args.d, "dim": dim}, args.json,
          [f"dim H({args.n},{args.d}) = {dim}"])
    return 0


def cmd_harmonic_basis(args) -> int:
    basis = harmonic_basis(args.n, args.d)
    payload = {
        "n": args.n,
        "d": args.d,
        "dim": len(basis.elements),
        "elements": [poly_to_json(h) for h in basis.elements],
    }
    _emit(payload, args.json,
          [f"dim H({args.n},{args.d}) = {len(basis.elements)}"]
          + [repr(h) for h in basis.elements])
    return 0


def cmd_ann_dims(args) -> int:
    dims = {}
    for deg in range(args.s + 1, 2 * args.s + 2):
        dims[deg] = ann_component_dim(args.n, args.s, deg)
    payload = {"n": args.n, "s": args.s, "nullities": dims}
    _emit(payload, args.json,
          [f"deg {deg}: nullity {v}" for deg, v in dims.items()])
    return 0


def cmd_tight(args) -> int:
    verdict = tight_verdict(args.n, args.s)
    payload = {
        "n": args.n,
        "s": args.s,
        "status": verdict.status.value,
        "witness": verdict.witness_name,
        "theorem": verdict.theorem_tag,
        "notes": verdict.notes,
    }
    _emit(payload, args.json,
          [f"tight({args.n},{args.s}): {verdict.status.value}"
           + (f" [{verdict.witness_name}]" if verdict.witness_name else "")
           + (f" ({verdict.notes})" if verdict.notes else "")])
    return 0


def cmd_cert_rank(args) -> int:
    bounds = rank_bounds(args.n, args.s)
    payload = {"n": args.n, "s": args.s, "lower": bounds.lower,
               "upper": bounds.upper, "exact": bounds.exact}
    lines = []
    code = 0
    if args.n == 3 and args.s in (3, 4):
        cert = angle_certificate(args.n, args.s)
        payload["certificate"] = {
            "conclusion": cert.conclusion,
            "admissible_squares": [_preview(v) for v in cert.admissible_squares],
            "evaluations": {
                "|".join(map(str, key)): _value_json(val)
                for key, val in cert.evaluations.items()
            },
        }
        lines.append(f"angle certificate: {cert.conclusion}")
        if not cert.no_tight:
            code = 1
    if bounds.exact:
        lines.append(f"rk(q_{args.n}^{args.s}) = {bounds.lower}")
    else:
        upper = "unknown" if bounds.upper is None else bounds.upper
        lines.append(f"{bounds.lower} <= rk(q_{args.n}^{args.s}) <= {upper}")
    _emit(payload, args.json, lines)
    return code


def cmd_gen(args) -> int:
    if args.family == "binary":
        dec = gen_binary(args.param)
    elif args.family == "stroud":
        dec = gen_stroud_q2(args.param)
    else:
        dec = gen_q8()
    ok, _ = verify(dec)
    payload = decomposition_to_json(dec)
    payload["verified"] = ok
    _emit(payload, args.json,
          [f"{dec.name}: n={dec.n} s={dec.s} size={dec.size} verified={ok}"])
    return 0 if ok else 1


def cmd_rank_bounds(args) -> int:
    bounds = rank_bounds(args.n, args.s)
    payload = {"n": args.n, "s": args.s, "lower": bounds.lower,
               "upper": bounds.upper, "exact": bounds.exact}
    upper = "unknown" if bounds.upper is None else str(bounds.upper)
    _emit(payload, args.json,
          [f"rk(q_{args.n}^{args.s}): lower {bounds.lower}, upper {upper}, "
           f"exact {bounds.exact}"])
    return 0


def export_points(dec: Decomposition, precision: int, fmt: str, out) -> None:
    """Numeric point coordinates with per-point caliber values, in term
    order; the decomposition must verify first."""
    if precision < 32:
        raise QwaringError("precision below 32 bits rejected")
    rows = []
    if dec.terms:
        ok, _ = verify(dec)
        if not ok:
            raise QwaringError(f"{dec.name}: decomposition does not verify")
        rep = caliber(dec)
    else:
        rep = None
    for (lam, point), cal in zip(dec.terms, rep.values if rep else []):
        coords = []
        for c in point:
            if isinstance(c, AlgNum):
                iv = numeric_eval(c, precision)
                z = complex(iv.center)
            else:
                z = complex(float(c))
            coords.append(z)
        if isinstance(cal, AlgNum):
            cal_z = complex(numeric_eval(cal, precision).center)
        else:
            cal_z = complex(float(cal))
        rows.append((coords, cal_z))
    if fmt == "csv":
        writer = csv.writer(out)
        header = []
        for i in range(dec.n):
            header += [f"re_x{i+1}", f"im_x{i+1}"]
        header.append("caliber_re")
        header.append("caliber_im")
        writer.writerow(header)
        for coords, cal_z in rows:
            row = []
            for z in coords:
                row += [repr(z.real), repr(z.imag)]
            row += [repr(cal_z.real), repr(cal_z.imag)]
            writer.writerow(row)
    else:
        json.dump(
            {
                "name": dec.name,
                "n": dec.n,
                "s": dec.s,
                "precision_bits": precision,
                "points": [
                    {
                        "coords": [[z.real, z.imag] for z in coords],
                        "caliber": [cal_z.real, cal_z.imag],
                    }
                    for coords, cal_z in rows
                ],
            },
            out,
            indent=2,
        )
        out.write("\n")


def cmd_export(args) -> int:
    if args.precision < 32:
        print("error: precision below 32 bits rejected", file=sys.stderr)
        return 2
    dec = _resolve_decomposition(args)
    if args.out:
        with open(args.out, "w", encoding="utf-8", newline="") as fh:
            export_points(dec, args.precision, args.format, fh)
        print(f"wrote {dec.size} points to {args.out}")
    else:
        export_points(dec, args.precision, args.format, sys.stdout)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="qwaring",
        description="Exact Waring decompositions of powers of quadratic forms.",
    )
    sub = parser.add_subparsers(dest="verb", required=True)

    def add_json(p):
        p.add_argument("--json", action="store_true", help="structured JSON output")

    p = sub.add_parser("verify", help="verify a decomposition exactly")
    group = p.add_mutually_exclusive_group(required=True)
    group.add_argument("--catalog", dest="name", help="catalog entry name")
    group.add_argument("--file", help="decomposition JSON file")
    group.add_argument("--all", action="store_true", help="verify everything")
    p.add_argument("--tower", help="tower JSON file (when the decomposition "
                                   "file omits its tower)")
    add_json(p)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("catalog", help="list catalog entries and sizes")
    add_json(p)
    p.set_defaults(func=cmd_catalog)

    p = sub.add_parser("cat-rank", help="exact rank of a catalecticant of q_n^s")
    p.add_argument("n", type=int)
    p.add_argument("s", type=int)
    p.add_argument("k", type=int)
    add_json(p)
    p.set_defaults(func=cmd_cat_rank)

    p = sub.add_parser("harmonic-dim", help="dimension of the harmonic space")
    p.add_argument("n", type=int)
    p.add_argument("d", type=int)
    add_json(p)
    p.set_defaults(func=cmd_harmonic_dim)

    p = sub.add_parser("harmonic-basis", help="exact basis of the harmonic space")
    p.add_argument("n", type=int)
    p.add_argument("d", type=int)
    add_json(p)
    p.set_defaults(func=cmd_harmonic_basis)

    p = sub.add_parser("ann-dims", help="apolar-ideal component dimensions")
    p.add_argument("n", type=int)
    p.add_argument("s", type=int)
    add_json(p)
    p.set_defaults(func=cmd_ann_dims)

    p = sub.add_parser("tight", help="tight-decomposition verdict")
    p.add_argument("n", type=int)
    p.add_argument("s", type=int)
    add_json(p)
    p.set_defaults(func=cmd_tight)

    p = sub.add_parser("cert-rank", help="rank bounds with angle certificates")
    p.add_argument("n", type=int)
    p.add_argument("s", type=int)
    add_json(p)
    p.set_defaults(func=cmd_cert_rank)

    p = sub.add_parser("gen", help="generate and verify a family member")
    gsub = p.add_subparsers(dest="family", required=True)
    gb = gsub.add_parser("binary", help="regular-polygon decomposition of q_2^s")
    gb.add_argument("param", type=int, metavar="s")
    add_json(gb)
    gb.set_defaults(func=cmd_gen)
    gs = gsub.add_parser("stroud", help="size T+1 family for q_n^2")
    gs.add_argument("param", type=int, metavar="n")
    add_json(gs)
    gs.set_defaults(func=cmd_gen)
    g8 = gsub.add_parser("q8", help="the 45-term rational identity for q_8^2")
    add_json(g8)
    g8.set_defaults(func=cmd_gen, param=None)

    p = sub.add_parser("rank-bounds", help="assembled Waring rank bounds")
    p.add_argument("n", type=int)
    p.add_argument("s", type=int)
    add_json(p)
    p.set_defaults(func=cmd_rank_bounds)

    p = sub.add_parser("export", help="export numeric decomposition points")
    group = p.add_mutually_exclusive_group(required=True)
    group.add_argument("--catalog", dest="name", help="catalog entry name")
    group.add_argument("--file", help="decomposition JSON file")
    p.add_argument("--tower", help="tower JSON file (when the decomposition "
                                   "file omits its tower)")
    p.add_argument("--precision", type=int, default=64, help="bits (>= 32)")
    p.add_argument("--format", choices=("json", "csv"), default="json")
    p.add_argument("--out", help="output path (default stdout)")
    p.set_defaults(func=cmd_export, json=False)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if not hasattr(args, "all"):
        args.all = False
    if not hasattr(args, "file"):
        args.file = None
    if not hasattr(args, "name"):
        args.name = None
    try:
        return args.func(args)
    except QwaringError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except FileNotFoundError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except json.JSONDecodeError as exc:
        print(f"error: malformed JSON: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
