"""Command line client for the partition sampler service.

Every subcommand uploads the graph to the service and runs the query there.
By default the service runs in-process (no network, no separate process);
``--server URL`` points the same client at a running instance instead, and
``treecut serve`` starts one.

Exit codes: 0 success, 2 usage, 3 parse (unreadable or malformed graph or
partition file), 4 precondition (disconnected graph, bad k, unknown graph
id), 5 enumeration budget exceeded, 6 statistical rejection by ``verify``.

JSON is the contract format: identical invocations with identical seeds
produce byte-identical output (keys sorted, one document per line for
``sample``).  ``tsv`` and ``human`` are lossy renderings of the same data.
If the environment variable TREECUT_REQUIRE_SEED is set to a truthy value,
randomized subcommands refuse to run without an explicit --seed; otherwise
a missing seed is drawn from the system entropy pool and echoed in the
output so the run stays reproducible after the fact.
"""

from __future__ import annotations

import argparse
import asyncio
import json
import os
import random
import sys
from typing import Optional

import httpx

from . import __version__
from .graphs import GRAPH_FORMATS
from .sampling import SAMPLER_MODES
from .service.app import create_app

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_PARSE = 3
EXIT_PRECONDITION = 4
EXIT_BUDGET = 5
EXIT_REJECTED = 6

REQUIRE_SEED_ENV = "TREECUT_REQUIRE_SEED"

_CODE_EXITS = {
    "usage": EXIT_USAGE,
    "parse": EXIT_PARSE,
    "precondition": EXIT_PRECONDITION,
    "not-found": EXIT_PRECONDITION,
    "budget": EXIT_BUDGET,
}


class ServiceError(Exception):
    """Error envelope returned by the service, carrying its code."""

    def __init__(self, code: str, message: str):
        super().__init__(message)
        self.code = code


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="treecut",
        description="Sample connected k-partitions of a graph and compute "
        "their exact probabilities.",
    )
    parser.add_argument(
        "--version", action="version", version=f"%(prog)s {__version__}"
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_graph_args(p: argparse.ArgumentParser) -> None:
        p.add_argument("--graph", required=True, help="path of the graph file")
        p.add_argument(
            "--format",
            choices=GRAPH_FORMATS,
            default="edge-list",
            help="graph file format (default: edge-list)",
        )
        p.add_argument(
            "--server",
            default=None,
            help="base URL of a running service; default runs in-process",
        )

    def add_output_args(p: argparse.ArgumentParser) -> None:
        p.add_argument(
            "--output", choices=("json", "tsv", "human"), default="json"
        )
        p.add_argument(
            "--digits",
            type=int,
            default=4,
            help="decimal digits for probability rendering (default: 4)",
        )

    def add_budget_args(p: argparse.ArgumentParser) -> None:
        p.add_argument("--max-nodes", type=int, default=None)
        p.add_argument("--max-trees", type=int, default=None)
        p.add_argument("--max-partitions", type=int, default=None)

    p = sub.add_parser("sample", help="sample connected k-partitions")
    add_graph_args(p)
    p.add_argument("--k", type=int, required=True, help="number of blocks")
    p.add_argument("--count", type=int, default=1, help="partitions to draw")
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--mode", choices=SAMPLER_MODES, default="uniform-tree")

    p = sub.add_parser("prob", help="exact probability of one partition")
    add_graph_args(p)
    add_output_args(p)
    p.add_argument(
        "--partition", required=True, help="path of the partition file"
    )
    p.add_argument(
        "--k", type=int, default=None, help="cross-check the block count"
    )

    p = sub.add_parser(
        "enumerate", help="list all connected k-partitions with probabilities"
    )
    add_graph_args(p)
    add_output_args(p)
    add_budget_args(p)
    p.add_argument("--k", type=int, required=True)

    p = sub.add_parser(
        "verify", help="Monte Carlo check of sampled frequencies vs exact law"
    )
    add_graph_args(p)
    add_output_args(p)
    add_budget_args(p)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--samples", type=int, default=20000)
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--mode", choices=SAMPLER_MODES, default="uniform-tree")
    p.add_argument(
        "--reference",
        choices=("closed-form", "randmst-exact"),
        default="closed-form",
        help="exact law to compare against",
    )
    p.add_argument("--significance", type=float, default=0.001)
    p.add_argument("--z-bound", type=float, default=6.0)
    p.add_argument("--min-samples", type=int, default=1000)
    p.add_argument("--streams", type=int, default=1)

    p = sub.add_parser("trees", help="count (and optionally list) spanning trees")
    add_graph_args(p)
    add_output_args(p)
    add_budget_args(p)
    p.add_argument(
        "--enumerate",
        action="store_true",
        help="list every spanning tree (within budget)",
    )

    p = sub.add_parser("serve", help="run the HTTP service")
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--port", type=int, default=8000)

    return parser


def _read_file(path: str) -> str:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise ServiceError("parse", f"cannot read {path}: {exc}") from None


def _resolve_seed(seed: Optional[int]) -> int:
    if seed is not None:
        return seed
    if os.environ.get(REQUIRE_SEED_ENV, "").strip().lower() in (
        "1",
        "true",
        "yes",
        "on",
    ):
        raise ServiceError(
            "usage", f"--seed is required while {REQUIRE_SEED_ENV} is set"
        )
    return random.SystemRandom().randrange(2**63)


def _budget_payload(args: argparse.Namespace) -> dict:
    return {
        "max_nodes": args.max_nodes,
        "max_trees": args.max_trees,
        "max_set_partitions": args.max_partitions,
    }


def _make_client(server: Optional[str]) -> httpx.AsyncClient:
    if server:
        return httpx.AsyncClient(base_url=server.rstrip("/"), timeout=600.0)
    transport = httpx.ASGITransport(app=create_app())
    return httpx.AsyncClient(
        transport=transport, base_url="http://treecut.local", timeout=None
    )


async def _call(
    client: httpx.AsyncClient, method: str, url: str, payload: Optional[dict] = None
) -> dict:
    resp = await client.request(method, url, json=payload)
    try:
        data = resp.json()
    except ValueError:
        raise ServiceError(
            "usage", f"non-JSON response ({resp.status_code}) from {url}"
        ) from None
    if resp.status_code >= 400:
        err = data.get("error", {}) if isinstance(data, dict) else {}
        raise ServiceError(err.get("code", "usage"), err.get("message", resp.text))
    return data


async def _upload_graph(client: httpx.AsyncClient, args: argparse.Namespace) -> dict:
    content = _read_file(args.graph)
    return await _call(
        client, "POST", "/graphs", {"content": content, "format": args.format}
    )


def _dump(data: dict) -> str:
    return json.dumps(data, sort_keys=True)


def _blocks_text(blocks: list[list[int]]) -> str:
    return " | ".join(" ".join(str(x) for x in block) for block in blocks)


async def cmd_sample(client: httpx.AsyncClient, args: argparse.Namespace) -> int:
    seed = _resolve_seed(args.seed)
    info = await _upload_graph(client, args)
    data = await _call(
        client,
        "POST",
        f"/graphs/{info['graph_id']}/sample",
        {"k": args.k, "count": args.count, "seed": seed, "mode": args.mode},
    )
    for item in data["items"]:
        line = {
            "blocks": item["blocks"],
            "index": item["index"],
            "schema_version": data["schema_version"],
            "seed": seed,
        }
        print(_dump(line))
    return EXIT_OK


async def cmd_prob(client: httpx.AsyncClient, args: argparse.Namespace) -> int:
    info = await _upload_graph(client, args)
    payload = {
        "partition_text": _read_file(args.partition),
        "digits": args.digits,
    }
    if args.k is not None:
        payload["k"] = args.k
    data = await _call(
        client, "POST", f"/graphs/{info['graph_id']}/probability", payload
    )
    if args.output == "json":
        print(_dump(data))
    elif args.output == "tsv":
        cols = ("rational", "float", "decimal", "t_G", "t_M", "binom")
        print("\t".join(cols + ("t_blocks", "blocks")))
        print(
            "\t".join(
                [str(data[c]) for c in cols]
                + [
                    ",".join(str(t) for t in data["t_blocks"]),
                    _blocks_text(data["blocks"]),
                ]
            )
        )
    else:
        print(f"partition: {_blocks_text(data['blocks'])}  (k={data['k']})")
        print(f"probability: {data['rational']} = {data['decimal']}")
        print(f"t(G) = {data['t_G']}")
        print(f"t(blocks) = {data['t_blocks']}")
        print(f"t(M) = {data['t_M']}")
        print(f"binom = {data['binom']}")
        print(f"compatible trees = {data['compatible_trees']}")
    return EXIT_OK


async def cmd_enumerate(client: httpx.AsyncClient, args: argparse.Namespace) -> int:
    info = await _upload_graph(client, args)
    data = await _call(
        client,
        "POST",
        f"/graphs/{info['graph_id']}/partitions",
        {"k": args.k, "digits": args.digits, "budget": _budget_payload(args)},
    )
    if args.output == "json":
        print(_dump(data))
        return EXIT_OK
    print("\t".join(("blocks", "rational", "float", "decimal")))
    for row in data["rows"]:
        print(
            "\t".join(
                (
                    _blocks_text(row["blocks"]),
                    row["rational"],
                    str(row["float"]),
                    row["decimal"],
                )
            )
        )
    print(f"sum\t{data['sum_rational']}")
    return EXIT_OK


async def cmd_verify(client: httpx.AsyncClient, args: argparse.Namespace) -> int:
    seed = _resolve_seed(args.seed)
    info = await _upload_graph(client, args)
    data = await _call(
        client,
        "POST",
        f"/graphs/{info['graph_id']}/verify",
        {
            "k": args.k,
            "samples": args.samples,
            "seed": seed,
            "mode": args.mode,
            "reference": args.reference,
            "significance": args.significance,
            "z_bound": args.z_bound,
            "min_samples": args.min_samples,
            "streams": args.streams,
            "digits": args.digits,
            "budget": _budget_payload(args),
        },
    )
    if args.output == "json":
        print(_dump(data))
    else:
        print(
            f"samples={data['samples']} mode={data['mode']} "
            f"reference={data['reference']} seed={data['seed']}"
        )
        print(
            f"chi_square={data['chi_square']:.4f} df={data['df']} "
            f"p_value={data['p_value']:.6g} max_abs_z={data['max_abs_z']:.3f}"
        )
        audit = data.get("randmst_audit")
        if audit:
            verdict = "equals" if audit["equals_uniform"] else "differs from"
            print(
                f"randmst tree law {verdict} uniform "
                f"{audit['uniform_rational']} over {audit['tree_count']} trees "
                f"(max deviation {audit['max_abs_deviation']})"
            )
        print("passed" if data["passed"] else "REJECTED")
    return EXIT_OK if data["passed"] else EXIT_REJECTED


async def cmd_trees(client: httpx.AsyncClient, args: argparse.Namespace) -> int:
    info = await _upload_graph(client, args)
    data = await _call(
        client,
        "POST",
        f"/graphs/{info['graph_id']}/trees",
        {"enumerate": args.enumerate, "budget": _budget_payload(args)},
    )
    if args.output == "json":
        print(_dump(data))
        return EXIT_OK
    print(data["t_G"])
    for tree in data["trees"] or ():
        print(" ".join(f"{u}-{v}" for u, v in tree))
    return EXIT_OK


_COMMANDS = {
    "sample": cmd_sample,
    "prob": cmd_prob,
    "enumerate": cmd_enumerate,
    "verify": cmd_verify,
    "trees": cmd_trees,
}


async def _dispatch(args: argparse.Namespace) -> int:
    async with _make_client(args.server) as client:
        return await _COMMANDS[args.command](client, args)


def cmd_serve(args: argparse.Namespace) -> int:
    import uvicorn

    uvicorn.run(create_app(), host=args.host, port=args.port)
    return EXIT_OK


def main(argv: Optional[list[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        # argparse exits 2 on usage errors and 0 for --help/--version
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE
    if args.command == "serve":
        return cmd_serve(args)
    try:
        return asyncio.run(_dispatch(args))
    except ServiceError as exc:
        print(f"error ({exc.code}): {exc}", file=sys.stderr)
        return _CODE_EXITS.get(exc.code, EXIT_USAGE)
    except httpx.HTTPError as exc:
        print(f"error (connection): {exc}", file=sys.stderr)
        return EXIT_USAGE


def entrypoint() -> None:
    sys.exit(main(sys.argv[1:]))


if __name__ == "__main__":
    entrypoint()
