"""Command line interface ``grt``.

Exit codes: 0 success or passing check, 1 failed check, 2 usage or input
error, 3 numerical non-convergence.
"""
from __future__ import annotations

import argparse
import hashlib
import json
import math
import os
import re
import sys
import time
from pathlib import Path

import numpy as np

from . import __version__
from .catalog import (
    A_MAX_TYPE1,
    A_RANGE_TYPE3,
    ame_6_2,
    ghz,
    hexagonal_p2,
    hexagonal_type1,
    hexagonal_type3,
    pentagonal_ame,
    pentagonal_isolated,
    wheel_graph_state,
)
from .constraints import (
    ConstraintGraph,
    ConstraintHypergraph,
    check_graph_constrained,
    check_hypergraph_constrained,
    faithful_hypergraph,
    graph_from_json,
)
from .entanglement import entropy_profile
from .errors import GrtError
from .haar import make_rng
from .holography import (
    brute_force_correlator,
    build_network,
    combined_pentagon_perfect,
    node_matrix,
    path_from_steps,
    paths_between,
    random_frame_gates,
    rotation_spectrum_scan,
    ROTATION_COLUMNS,
    scaling_dimension,
    tiling_spec,
    two_point_path,
    verify_frame,
    verify_wheel,
    violin_sample,
    write_violin_csv,
)
from .catalog.dualunitary import frame_tensor
from .solver import SolveOptions, scan_fig3, write_scan_csv
from .symmetry import expand, hexagon_full, hexagon_rotation, orbits, pentagon_rotation
from .tensor import load_tensor, save_tensor, tensor_to_json

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_NONCONVERGED = 0, 1, 2, 3

PAULI = {
    "I": np.eye(2),
    "X": np.array([[0, 1], [1, 0]], dtype=complex),
    "Y": np.array([[0, -1j], [1j, 0]]),
    "Z": np.diag([1.0, -1.0]),
}

FAMILY_TABLE = {
    "penta-ame": ("theta", "any real theta"),
    "penta-isolated": ("", "no parameters"),
    "hex-type1": ("a, j, k, branch", f"0 < a < {A_MAX_TYPE1!r}; j, k in {{0, 1}}; branch minus|plus"),
    "hex-type3": ("a", f"{A_RANGE_TYPE3[0]!r} < a < {A_RANGE_TYPE3[1]!r}"),
    "hex-p2a": ("", "no parameters"),
    "hex-p2b": ("", "no parameters"),
    "ame-6-2": ("", "six-qubit perfect tensor, leg 1 is the wheel hub"),
    "ghz": ("n, d", "n >= 1, d >= 1"),
    "wheel": ("n", "n >= 4 rim qubits; hub is leg 0"),
    "penta-perfect": ("", "pentagon joined to the perfect tensor with identity leg unitaries"),
}

SYMMETRY_TABLE = {
    "pentagon": (pentagon_rotation, "five qubits, cyclic rotation"),
    "hexagon-rotation": (hexagon_rotation, "bulk plus six bonds, bond rotation"),
    "hexagon": (hexagon_full, "bulk plus six bonds, full dihedral group with spin flip"),
}


class UsageError(Exception):
    """Bad command line input detected after argument parsing."""


def _num(x) -> str:
    """Shortest round-trip form; never fewer digits than the double holds."""
    return repr(float(x))


def _jsonable(obj):
    if isinstance(obj, dict):
        return {str(k): _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    if isinstance(obj, (np.floating, float)):
        x = float(obj)
        return x if math.isfinite(x) else str(x)
    if isinstance(obj, (np.integer,)):
        return int(obj)
    if isinstance(obj, (complex, np.complexfloating)):
        return [float(obj.real), float(obj.imag)]
    if isinstance(obj, np.ndarray):
        return _jsonable(obj.tolist())
    return obj


def _emit(doc) -> None:
    print(json.dumps(_jsonable(doc), indent=2, sort_keys=False))


def _sha256(path) -> str:
    h = hashlib.sha256()
    with open(path, "rb") as fh:
        for block in iter(lambda: fh.read(1 << 16), b""):
            h.update(block)
    return h.hexdigest()


def write_manifest(csv_path, argv, seed, inputs, wall_time, extra=None) -> Path:
    """Write ``<csv>.manifest.json`` recording how the CSV was produced."""
    path = Path(str(csv_path) + ".manifest.json")
    doc = {
        "command": ["grt"] + list(argv),
        "seed": seed,
        "version": __version__,
        "inputs": {str(p): _sha256(p) for p in inputs},
        "output": str(csv_path),
        "output_sha256": _sha256(csv_path),
        "wall_time_s": wall_time,
    }
    if extra:
        doc.update(extra)
    path.write_text(json.dumps(_jsonable(doc), indent=2) + "\n", encoding="utf-8")
    return path


def _threads() -> int:
    try:
        return max(1, int(os.environ.get("GRT_THREADS", "1")))
    except ValueError:
        return 1


# ---------------------------------------------------------------- named inputs

def builtin_graph(name: str):
    """Graphs addressed by name: ``k<n>``, ``c<n>``, ``empty<n>``, ``wheel<n>``.

    A trailing ``.json`` is ignored so fixture-style names work unchanged.
    """
    stem = name[:-5] if name.endswith(".json") else name
    m = re.fullmatch(r"(k|c|empty|wheel)(\d+)", stem)
    if not m:
        return None
    kind, n = m.group(1), int(m.group(2))
    if kind == "k":
        return ConstraintGraph.complete(n)
    if kind == "c":
        return ConstraintGraph.cycle(n)
    if kind == "empty":
        return ConstraintGraph.empty(n)
    return ConstraintGraph.wheel(n)


def _load_graph(spec: str):
    if os.path.exists(spec):
        with open(spec, encoding="utf-8") as fh:
            return graph_from_json(json.load(fh)), [spec]
    G = builtin_graph(spec)
    if G is None:
        raise UsageError(f"no graph file or built-in graph named {spec!r}")
    return G, []


def _load_tensor(path: str):
    if not os.path.exists(path):
        raise UsageError(f"tensor file {path!r} not found")
    return load_tensor(path)


def builtin_network(name: str):
    m = re.fullmatch(r"depth([0-2])-(\d+)-(\d+)", name)
    if not m:
        raise UsageError(f"unknown network {name!r}; use depth<0-2>-<n>-<k>")
    return build_network(int(m.group(2)), int(m.group(3)), int(m.group(1)))


def _parse_tiling(text: str):
    try:
        n, k = (int(v) for v in text.split(","))
    except ValueError:
        raise UsageError(f"tiling must look like 6,4, got {text!r}") from None
    return tiling_spec(n, k)


def _parse_operator(name: str):
    if name.upper() in PAULI:
        return PAULI[name.upper()]
    if os.path.exists(name):
        with open(name, encoding="utf-8") as fh:
            data = np.array(json.load(fh), dtype=float)
        return data[..., 0] + 1j * data[..., 1] if data.ndim == 3 else data
    raise UsageError(f"unknown operator {name!r}; use I, X, Y, Z or a JSON matrix file")


def _parse_probes(text: str):
    out = []
    for item in text.split(","):
        if "@" not in item:
            raise UsageError(f"probe {item!r} must look like Z@3")
        op, where = item.split("@", 1)
        out.append((_parse_operator(op), int(where)))
    return out


# ------------------------------------------------------------------- commands

def _catalog_record(args):
    fam = args.family
    if fam == "penta-ame":
        return pentagonal_ame(args.theta)
    if fam == "penta-isolated":
        return pentagonal_isolated()
    if fam == "hex-type1":
        return hexagonal_type1(args.a, args.j, args.k, args.branch)
    if fam == "hex-type3":
        return hexagonal_type3(args.a)
    if fam in ("hex-p2a", "hex-p2b"):
        return hexagonal_p2(fam[-1].upper())
    if fam == "ame-6-2":
        return ame_6_2()
    if fam == "ghz":
        return ghz(args.n, args.d)
    if fam == "wheel":
        return wheel_graph_state(args.n)
    if fam == "penta-perfect":
        return combined_pentagon_perfect()
    raise UsageError(f"unknown family {fam!r}; see grt catalog --list")


def cmd_catalog(args, argv):
    if args.list:
        _emit([{"family": f, "params": p, "range": r} for f, (p, r) in FAMILY_TABLE.items()])
        return EXIT_OK
    if not args.family:
        raise UsageError("give --family or --list")
    rec = _catalog_record(args)
    T = getattr(rec, "tensor", rec)
    if args.out:
        save_tensor(T, args.out)
    if T is rec:
        _emit({"family": args.family, "dims": T.local_dims, "labels": T.labels, "norm2": T.norm2()})
    else:
        _emit(
            {
                "family": rec.family,
                "params": rec.params,
                "components": np.real(rec.components),
                "entropy_profile": rec.entropy_profile.to_dict() if rec.entropy_profile else None,
            }
        )
    return EXIT_OK


def cmd_expand(args, argv):
    if args.family not in SYMMETRY_TABLE:
        raise UsageError(f"unknown symmetry family {args.family!r}; choose from {sorted(SYMMETRY_TABLE)}")
    table = orbits(SYMMETRY_TABLE[args.family][0](), 2)
    if args.list:
        _emit({"representatives": ["".join(map(str, r)) for r in table.representatives]})
        return EXIT_OK
    if args.params is None:
        raise UsageError("give --params with one value per representative, or --list")
    try:
        values = [float(v) for v in args.params.split(",")]
    except ValueError:
        raise UsageError("--params must be comma-separated numbers") from None
    T = expand(values, table)
    if args.out:
        save_tensor(T, args.out)
    else:
        print(json.dumps(tensor_to_json(T)))
    return EXIT_OK


def cmd_verify(args, argv):
    T = _load_tensor(args.tensor)
    G, _ = _load_graph(args.graph)
    if isinstance(G, ConstraintHypergraph):
        report = check_hypergraph_constrained(T, G, args.tol)
        H = G
    else:
        report = check_graph_constrained(T, G, args.tol)
        H = G.clique_hypergraph(T.order // 2)
    if args.faithful:
        found = faithful_hypergraph(T, args.tol)
        report.faithful = set(found.hyperedges) == set(
            e for e in H.hyperedges if len(e) <= T.order // 2
        )
    _emit(report.to_dict())
    ok = report.passed and (report.faithful is not False)
    return EXIT_OK if ok else EXIT_FAIL


def cmd_entropy(args, argv):
    T = _load_tensor(args.tensor)
    _emit(entropy_profile(T).to_dict())
    return EXIT_OK


def cmd_solve(args, argv):
    opts = SolveOptions(
        seed=args.seed,
        max_restarts=args.restarts,
        max_iterations=args.max_iterations,
        cost_threshold=args.threshold,
        workers=args.workers or _threads(),
    )
    t0 = time.perf_counter()
    rows = scan_fig3(opts)
    wall = time.perf_counter() - t0
    if args.out:
        write_scan_csv(rows, args.out)
        write_manifest(args.out, argv, args.seed, [], wall, {"accepted": len(rows)})
    counts = {}
    for r in rows:
        counts[r[8]] = counts.get(r[8], 0) + 1
    _emit({"restarts": args.restarts, "accepted": len(rows), "families": counts})
    return EXIT_OK if rows else EXIT_NONCONVERGED


def cmd_node(args, argv):
    T = _load_tensor(args.tensor)
    i, j = args.legs
    if args.scan_rotation:
        if not args.out:
            raise UsageError("--scan-rotation needs --out")
        phis = np.linspace(0, 2 * np.pi, args.scan_rotation, endpoint=False)
        t0 = time.perf_counter()
        rows = rotation_spectrum_scan(T, phis, tuple(args.rotate_legs))
        with open(args.out, "w", encoding="utf-8", newline="") as fh:
            fh.write(",".join(ROTATION_COLUMNS) + "\n")
            for row in rows:
                fh.write(",".join(_num(v) for v in row) + "\n")
        write_manifest(args.out, argv, None, [args.tensor], time.perf_counter() - t0)
    node = node_matrix(T, i, j)
    _emit(
        {
            "legs": [i, j],
            "scale": node.scale,
            "spectrum": node.spectrum,
            "abs_spectrum": np.abs(node.spectrum),
            "lambda2": abs(node.lambda2),
        }
    )
    return EXIT_OK


def cmd_dimension(args, argv):
    tiling = _parse_tiling(args.tiling)
    if args.lambda2 is not None:
        lam = args.lambda2
    elif args.tensor and args.legs:
        lam = node_matrix(_load_tensor(args.tensor), *args.legs).lambda2
    else:
        raise UsageError("give --lambda2, or --tensor with --legs")
    if not 0 <= abs(lam) <= 1:
        raise UsageError("|lambda2| must lie in [0, 1]")
    print(_num(scaling_dimension(lam, tiling)))
    return EXIT_OK


def cmd_correlate(args, argv):
    net = builtin_network(args.net)
    T = _load_tensor(args.tensor)
    probes = _parse_probes(args.probes)
    legs = []
    for _, idx in probes:
        if not 0 <= idx < len(net.boundary):
            raise UsageError(f"boundary index {idx} outside 0..{len(net.boundary) - 1}")
        legs.append(net.boundary[idx])
    O, O_tile = None, None
    if args.bulk:
        op, O_tile = args.bulk.split("@", 1) if "@" in args.bulk else (args.bulk, None)
        if O_tile is None:
            raise UsageError("--bulk must look like Z@4 (operator at tile)")
        O, O_tile = _parse_operator(op), int(O_tile)
    if args.method == "brute":
        res = brute_force_correlator(net, T, {leg: v for leg, (v, _) in zip(legs, probes)}, O, O_tile)
        doc = {"method": "brute", "value": res.value}
    else:
        if len(probes) != 2:
            raise UsageError("the path method takes exactly two probes")
        found = paths_between(net, legs[0], legs[1])
        if len(found) > 1:
            raise UsageError("more than one path joins these legs")
        if not found:
            # no connecting path: every such correlator vanishes
            doc = {"method": "path", "value": 0j, "path_tiles": []}
        else:
            path = path_from_steps(net, T, found[0], O_tile)
            res = two_point_path(T, path, probes[0][0], probes[1][0], O)
            doc = {"method": "path", "value": res.value, "path_tiles": [s.tile for s in found[0]]}
    doc["probes"] = [list(leg) for leg in legs]
    _emit(doc)
    return EXIT_OK


def cmd_violin(args, argv):
    t0 = time.perf_counter()
    rows = violin_sample(args.samples, args.seed, args.shared_unitary, args.workers or _threads())
    wall = time.perf_counter() - t0
    mode = "shared" if args.shared_unitary else "independent"
    if args.out:
        write_violin_csv(rows, args.out)
        write_manifest(args.out, argv, args.seed, [], wall, {"unitary_mode": mode})
    d2 = [r[1] for r in rows]
    d3 = [r[2] for r in rows]
    summary = {"samples": len(rows), "unitary_mode": mode}
    if rows:
        summary.update(
            {
                "delta2_min": min(d2),
                "delta2_median": float(np.median(d2)),
                "delta2_max": max(d2),
                "delta3_min": min(d3),
                "delta3_median": float(np.median(d3)),
                "delta3_max": max(d3),
            }
        )
    _emit(summary)
    return EXIT_OK


def cmd_frame(args, argv):
    rng = make_rng(args.seed, args.n)
    gates = random_frame_gates(args.n, args.coupling, rng)
    report = verify_frame(frame_tensor(args.n, gates), args.n, args.tol)
    doc = report.to_dict()
    doc["wheel_pass"] = verify_wheel(args.n, args.tol).passed
    _emit(doc)
    return EXIT_OK if report.passed and doc["wheel_pass"] else EXIT_FAIL


# --------------------------------------------------------------------- parser

def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="grt", description="Graph-constrained tensors and holographic transfer spectra.")
    p.add_argument("--version", action="version", version=f"grt {__version__}")
    sub = p.add_subparsers(dest="command", required=True, metavar="command")

    s = sub.add_parser("catalog", help="construct a catalog tensor")
    s.add_argument("--list", action="store_true", help="list families and parameter ranges")
    s.add_argument("--family")
    s.add_argument("--theta", type=float, default=0.0)
    s.add_argument("--a", type=float, default=0.05)
    s.add_argument("--j", type=int, choices=(0, 1), default=0)
    s.add_argument("--k", type=int, choices=(0, 1), default=0)
    s.add_argument("--branch", choices=("minus", "plus"), default="minus")
    s.add_argument("--n", type=int, default=5)
    s.add_argument("--d", type=int, default=2)
    s.add_argument("--out", help="write the tensor JSON here")
    s.set_defaults(func=cmd_catalog)

    s = sub.add_parser("expand", help="expand orbit values into a full symmetric tensor")
    s.add_argument("--family", required=True, help="pentagon, hexagon-rotation or hexagon")
    s.add_argument("--params", help="comma-separated values in representative order")
    s.add_argument("--list", action="store_true", help="print the representatives")
    s.add_argument("--out")
    s.set_defaults(func=cmd_expand)

    s = sub.add_parser("verify", help="check a tensor against a constraint graph or hypergraph")
    s.add_argument("--tensor", required=True)
    s.add_argument("--graph", required=True, help="JSON file or built-in name (k5, c5, wheel6, ...)")
    s.add_argument("--faithful", action="store_true", help="also require no extra identity reductions")
    s.add_argument("--tol", type=float, default=1e-10)
    s.set_defaults(func=cmd_verify)

    s = sub.add_parser("entropy", help="purity-delta profile of a hexagonal tensor")
    s.add_argument("--tensor", required=True)
    s.set_defaults(func=cmd_entropy)

    s = sub.add_parser("solve", help="random-restart search for hexagonal solutions")
    s.add_argument("--restarts", type=int, default=200)
    s.add_argument("--seed", type=int, default=1)
    s.add_argument("--max-iterations", type=int, default=2000)
    s.add_argument("--threshold", type=float, default=1e-18)
    s.add_argument("--workers", type=int, default=0, help="0 means GRT_THREADS or 1")
    s.add_argument("--out")
    s.set_defaults(func=cmd_solve)

    s = sub.add_parser("node", help="transfer node spectrum between two legs")
    s.add_argument("--tensor", required=True)
    s.add_argument("--legs", type=int, nargs=2, required=True, metavar=("I", "J"))
    s.add_argument("--scan-rotation", type=int, default=0, metavar="POINTS",
                   help="also write a rotation scan over this many angles")
    s.add_argument("--rotate-legs", type=int, nargs="+", default=[1])
    s.add_argument("--out")
    s.set_defaults(func=cmd_node)

    s = sub.add_parser("dimension", help="scaling dimension from a node eigenvalue")
    s.add_argument("--lambda2", type=float)
    s.add_argument("--tensor")
    s.add_argument("--legs", type=int, nargs=2, metavar=("I", "J"))
    s.add_argument("--tiling", required=True, help="n,k such as 6,4")
    s.set_defaults(func=cmd_dimension)

    s = sub.add_parser("correlate", help="boundary correlator on a built-in network")
    s.add_argument("--net", required=True, help="depth<0-2>-<n>-<k>, such as depth1-6-4")
    s.add_argument("--tensor", required=True)
    s.add_argument("--probes", required=True, help="OP@boundary_index list, such as Z@3,Z@17")
    s.add_argument("--bulk", help="bulk operator at a tile, such as Z@4")
    s.add_argument("--method", choices=("path", "brute"), default="path")
    s.set_defaults(func=cmd_correlate)

    s = sub.add_parser("violin", help="Haar samples of pentagon-plus-perfect node dimensions")
    s.add_argument("--samples", type=int, default=10000)
    s.add_argument("--seed", type=int, default=7)
    s.add_argument("--shared-unitary", action="store_true", help="one unitary shared by all legs")
    s.add_argument("--workers", type=int, default=0, help="0 means GRT_THREADS or 1")
    s.add_argument("--out")
    s.set_defaults(func=cmd_violin)

    s = sub.add_parser("frame", help="isometry checks for a random dual-unitary frame")
    s.add_argument("--n", type=int, default=5)
    s.add_argument("--coupling", type=float, default=0.3, help="ZZ coupling of the gates")
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--tol", type=float, default=1e-10)
    s.set_defaults(func=cmd_frame)
    return p


def main(argv=None) -> int:
    argv = sys.argv[1:] if argv is None else list(argv)
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args, argv)
    except (UsageError, GrtError, OSError, ValueError) as exc:
        print(f"grt {args.command}: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
