"""Command-line front end.

Exit status: 0 on success, 1 on usage or input errors, 2 when the requested
computation has no approximation guarantee. Errors go to stderr as a single
line starting with ``error:``.
"""

from __future__ import annotations

import argparse
import sys
from dataclasses import dataclass, field
from pathlib import Path

from . import geometry, synthetic
from .complexes import build_rips, verify_interleaving_chain
from .diagram_metric import bottleneck_distance
from .diagrams import PersistenceDiagram, read_diagram
from .geometry import LocalQuery, MalformedInput, read_points
from .local_homology import GuaranteeLapsed, alpha_pipeline, r_pipeline, translate_diagram
from .persistence import reduce

COMMANDS = ("gen", "rips", "local-alpha", "local-r", "bottleneck", "check-chain")


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


@dataclass
class RunConfig:
    command: str
    options: dict = field(default_factory=dict)


def _coords(text: str) -> tuple:
    try:
        return tuple(float(t) for t in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad coordinate list {text!r}") from None


def _positive(text: str) -> float:
    try:
        value = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a number: {text!r}") from None
    if not value > 0:
        raise argparse.ArgumentTypeError(f"must be positive: {text}")
    return value


def _nonneg_int(text: str) -> int:
    value = int(text)
    if value < 0:
        raise argparse.ArgumentTypeError(f"must be nonnegative: {text}")
    return value


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="localhom", description="Multi-scale local homology of point samples.")
    sub = parser.add_subparsers(dest="command", parser_class=_Parser)

    p = sub.add_parser("gen", help="write a synthetic net")
    p.add_argument("--kind", required=True, choices=synthetic.KINDS)
    p.add_argument("--density", "--eps", dest="density", type=_positive, required=True)
    p.add_argument("--size", type=_positive, default=1.0)
    p.add_argument("--arms", type=int, default=3)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out")

    p = sub.add_parser("rips", help="absolute Rips persistence diagram")
    p.add_argument("--in", dest="input", required=True)
    p.add_argument("--max-scale", type=_positive, required=True)
    p.add_argument("--max-dim", type=_nonneg_int, default=1)
    p.add_argument("--out")

    for name in ("local-alpha", "local-r"):
        p = sub.add_parser(name, help=f"{name[6:]}-filtration local homology at a basepoint")
        p.add_argument("--in", dest="input", required=True)
        p.add_argument("--x", type=_coords, required=True, help="basepoint, comma separated")
        p.add_argument("--eps", type=_positive, required=True)
        p.add_argument("--max-dim", type=_nonneg_int, default=1)
        p.add_argument("--out")
        if name == "local-alpha":
            p.add_argument("--r", type=_positive, required=True)
            p.add_argument("--max-scale", type=_positive, required=True)

    p = sub.add_parser("bottleneck", help="bottleneck distance between two diagram files")
    p.add_argument("first")
    p.add_argument("second")
    p.add_argument("--dim", type=_nonneg_int)

    p = sub.add_parser("check-chain", help="check the Cech/Rips inclusion chain")
    p.add_argument("--in", dest="input", required=True)
    p.add_argument("--alpha", type=_positive, required=True)
    p.add_argument("--max-dim", type=_nonneg_int, default=2)
    return parser


def parse(argv) -> RunConfig:
    args = build_parser().parse_args(argv)
    if args.command is None:
        raise UsageError(f"a command is required: one of {', '.join(COMMANDS)}")
    opts = vars(args)
    return RunConfig(opts.pop("command"), opts)


def _emit(text: str, out) -> None:
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def _meta_text(meta: dict) -> str:
    return "".join(f"{k}={v}\n" for k, v in meta.items())


def _suffixed(path: str, suffix: str) -> Path:
    p = Path(path)
    return p.with_name(p.name + suffix)


def _write_result(diagram: PersistenceDiagram, meta: dict, out, extra=None) -> None:
    if out:
        Path(out).write_text(diagram.to_text())
        _suffixed(out, ".meta").write_text(_meta_text(meta))
        if extra is not None:
            _suffixed(out, ".rel").write_text(extra.to_text())
        return
    text = "".join(f"# {k}={v}\n" for k, v in meta.items()) + diagram.to_text()
    if extra is not None:
        text += "# relative (r-filtration) diagram\n"
        text += "".join(f"# {line}\n" for line in extra.to_text().splitlines())
    sys.stdout.write(text)


def run(config: RunConfig) -> int:
    o = config.options
    cmd = config.command
    if cmd == "gen":
        spec = synthetic.SpaceSpec(o["kind"], o["density"], o["seed"], o["size"], o["arms"])
        _emit(geometry.format_points(synthetic.generate(spec)), o["out"])
    elif cmd == "rips":
        cloud = read_points(o["input"])
        diagram = reduce(build_rips(cloud, o["max_scale"], o["max_dim"]), o["max_dim"])
        _emit(diagram.to_text(), o["out"])
    elif cmd == "local-alpha":
        cloud = read_points(o["input"])
        query = LocalQuery(o["x"], o["r"], o["eps"], o["max_scale"], o["max_dim"])
        res = alpha_pipeline(cloud, query)
        _write_result(res.diagram, res.metadata(), o["out"])
    elif cmd == "local-r":
        cloud = read_points(o["input"])
        query = LocalQuery(o["x"], float("inf"), o["eps"], 2 * o["eps"], o["max_dim"])
        res = r_pipeline(cloud, query)
        _write_result(res.diagram, res.metadata(), o["out"], translate_diagram(res.diagram))
    elif cmd == "bottleneck":
        d = bottleneck_distance(read_diagram(o["first"]), read_diagram(o["second"]), o["dim"])
        print("inf" if d == float("inf") else (f"{d:g}" if d == int(d) else repr(d)))
    elif cmd == "check-chain":
        ok = verify_interleaving_chain(read_points(o["input"]), o["alpha"], o["max_dim"])
        print("PASS" if ok else "FAIL")
    return 0


def main(argv=None) -> int:
    try:
        return run(parse(sys.argv[1:] if argv is None else argv))
    except UsageError as exc:
        print(f"error: usage: {exc}", file=sys.stderr)
        return 1
    except GuaranteeLapsed as exc:
        print(f"error: guarantee-lapsed: {exc}", file=sys.stderr)
        return 2
    except (MalformedInput, ValueError, OSError) as exc:
        print(f"error: input: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
