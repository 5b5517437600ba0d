"""FastAPI application exposing the partition sampler.

A graph is uploaded once, parsed, and cached under a content-addressed id
(hash of its canonical edge-list serialization), so repeated queries reuse
the parsed object and its memoized spanning-tree count.  Library errors map
to a stable JSON envelope: ``{"error": {"code": ..., "message": ...}}`` with
codes usage, parse, precondition, budget, not-found.  The command line
client turns those codes into exit codes.
"""

from __future__ import annotations

import hashlib
from fractions import Fraction
from math import comb, prod

from fastapi import FastAPI, HTTPException, Request
from fastapi.exceptions import RequestValidationError
from fastapi.responses import JSONResponse
from starlette.exceptions import HTTPException as StarletteHTTPException

from .. import __version__
from ..errors import BudgetExceededError, GraphParseError, PreconditionError
from ..exhaustive import (
    enumerate_spanning_trees,
    exact_partition_distribution,
    exact_randmst_partition_distribution,
    exact_randmst_tree_distribution,
)
from ..graphs import (
    Graph,
    Partition,
    contract,
    is_connected,
    load_graph,
    parse_partition,
    serialize_edge_list,
)
from ..montecarlo import compare, run_trials
from ..probability import (
    block_tree_counts,
    partition_probability,
    render_decimal,
    render_rational,
)
from ..sampling import make_rng, sample_connected_partition
from ..treecount import count_spanning_trees
from .schemas import (
    EnumerateRequest,
    EnumerateResponse,
    EnumerateRow,
    GraphInfo,
    GraphUpload,
    Health,
    ProbabilityRequest,
    ProbabilityResponse,
    RandmstAudit,
    SampleItem,
    SampleRequest,
    SampleResponse,
    TreeLawRow,
    TreesRequest,
    TreesResponse,
    VerifyRequest,
    VerifyResponse,
    VerifyRow,
)


def graph_digest(g: Graph) -> str:
    """Content-addressed graph id: uploads of equal graphs share an id."""
    payload = serialize_edge_list(g).encode("ascii")
    return hashlib.sha256(payload).hexdigest()[:16]


def _external_blocks(c: Partition) -> list[list[int]]:
    return [[x + 1 for x in block] for block in c.blocks]


def _graph_info(gid: str, g: Graph) -> GraphInfo:
    return GraphInfo(
        graph_id=gid,
        n=g.n,
        edge_count=g.edge_count,
        connected=is_connected(g),
        edges=[(u + 1, v + 1) for u, v in g.edges],
    )


def _randmst_audit(g: Graph) -> RandmstAudit:
    """Compare the exact random-MST tree law against uniform 1/t(G)."""
    law = exact_randmst_tree_distribution(g)
    t = count_spanning_trees(g)
    uniform = Fraction(1, t)
    deviations = [abs(p - uniform) for p in law.values()]
    if len(law) != t:
        # some tree never produced by the greedy run; it deviates by 1/t
        deviations.append(uniform)
    return RandmstAudit(
        tree_count=t,
        uniform_rational=render_rational(uniform),
        equals_uniform=len(law) == t and all(p == uniform for p in law.values()),
        max_abs_deviation=render_rational(max(deviations, default=Fraction(0))),
        law=[
            TreeLawRow(
                edges=[(u + 1, v + 1) for u, v in tree.edges],
                rational=render_rational(p),
                float_value=float(p),
            )
            for tree, p in law.items()
        ],
    )


def create_app() -> FastAPI:
    app = FastAPI(title="treecut", version=__version__)
    app.state.graphs = {}

    def get_graph(graph_id: str) -> Graph:
        g = app.state.graphs.get(graph_id)
        if g is None:
            raise HTTPException(status_code=404, detail=f"unknown graph id {graph_id!r}")
        return g

    def envelope(status: int, code: str, message: str) -> JSONResponse:
        return JSONResponse(
            {"error": {"code": code, "message": message}}, status_code=status
        )

    @app.exception_handler(GraphParseError)
    async def on_parse_error(request: Request, exc: GraphParseError):
        return envelope(400, "parse", str(exc))

    @app.exception_handler(PreconditionError)
    async def on_precondition(request: Request, exc: PreconditionError):
        return envelope(422, "precondition", str(exc))

    @app.exception_handler(BudgetExceededError)
    async def on_budget(request: Request, exc: BudgetExceededError):
        return envelope(422, "budget", str(exc))

    @app.exception_handler(RequestValidationError)
    async def on_validation(request: Request, exc: RequestValidationError):
        return envelope(400, "usage", str(exc))

    @app.exception_handler(StarletteHTTPException)
    async def on_http(request: Request, exc: StarletteHTTPException):
        code = "not-found" if exc.status_code == 404 else "usage"
        return envelope(exc.status_code, code, str(exc.detail))

    @app.get("/health", response_model=Health)
    def health() -> Health:
        return Health(version=__version__)

    @app.post("/graphs", response_model=GraphInfo)
    def upload_graph(body: GraphUpload) -> GraphInfo:
        g = load_graph(body.content, body.format)
        gid = graph_digest(g)
        app.state.graphs[gid] = g
        return _graph_info(gid, g)

    @app.get("/graphs/{graph_id}", response_model=GraphInfo)
    def graph_info(graph_id: str) -> GraphInfo:
        return _graph_info(graph_id, get_graph(graph_id))

    @app.post("/graphs/{graph_id}/trees", response_model=TreesResponse)
    def trees(graph_id: str, body: TreesRequest) -> TreesResponse:
        g = get_graph(graph_id)
        listed = None
        if body.enumerate:
            listed = [
                [(u + 1, v + 1) for u, v in tree.edges]
                for tree in enumerate_spanning_trees(g, body.budget.resolve())
            ]
        return TreesResponse(
            graph_id=graph_id,
            n=g.n,
            edge_count=g.edge_count,
            t_G=count_spanning_trees(g),
            trees=listed,
        )

    @app.post("/graphs/{graph_id}/sample", response_model=SampleResponse)
    def sample(graph_id: str, body: SampleRequest) -> SampleResponse:
        g = get_graph(graph_id)
        rng = make_rng(body.seed)
        items = [
            SampleItem(
                index=i,
                blocks=_external_blocks(
                    sample_connected_partition(g, body.k, rng, body.mode)
                ),
            )
            for i in range(body.count)
        ]
        return SampleResponse(
            graph_id=graph_id, k=body.k, mode=body.mode, seed=body.seed, items=items
        )

    @app.post("/graphs/{graph_id}/probability", response_model=ProbabilityResponse)
    def probability(graph_id: str, body: ProbabilityRequest) -> ProbabilityResponse:
        g = get_graph(graph_id)
        if body.partition_text is not None:
            c = parse_partition(body.partition_text, g.n)
        else:
            for block in body.blocks:
                for x in block:
                    if not (1 <= x <= g.n):
                        raise PreconditionError(f"node id {x} out of range 1..{g.n}")
            c = Partition([[x - 1 for x in block] for block in body.blocks])
        if body.k is not None and body.k != c.k:
            raise PreconditionError(
                f"partition has {c.k} blocks but k={body.k} was requested"
            )
        p = partition_probability(g, c)
        t_blocks = block_tree_counts(g, c)
        t_m = count_spanning_trees(contract(g, c))
        return ProbabilityResponse(
            graph_id=graph_id,
            blocks=_external_blocks(c),
            k=c.k,
            rational=render_rational(p),
            float_value=float(p),
            decimal=render_decimal(p, body.digits),
            t_G=count_spanning_trees(g),
            t_blocks=t_blocks,
            t_M=t_m,
            binom=comb(g.n - 1, c.k - 1),
            compatible_trees=t_m * prod(t_blocks),
        )

    @app.post("/graphs/{graph_id}/partitions", response_model=EnumerateResponse)
    def partitions(graph_id: str, body: EnumerateRequest) -> EnumerateResponse:
        g = get_graph(graph_id)
        if not is_connected(g):
            raise PreconditionError("graph is disconnected")
        dist = exact_partition_distribution(g, body.k, body.budget.resolve())
        rows = [
            EnumerateRow(
                blocks=_external_blocks(c),
                rational=render_rational(p),
                float_value=float(p),
                decimal=render_decimal(p, body.digits),
            )
            for c, p in dist.items()
        ]
        total = sum(dist.values(), Fraction(0))
        return EnumerateResponse(
            graph_id=graph_id,
            k=body.k,
            t_G=count_spanning_trees(g),
            count=len(rows),
            rows=rows,
            sum_rational=render_rational(total),
        )

    @app.post("/graphs/{graph_id}/verify", response_model=VerifyResponse)
    def verify(graph_id: str, body: VerifyRequest) -> VerifyResponse:
        g = get_graph(graph_id)
        if body.samples < body.min_samples:
            raise PreconditionError(
                f"{body.samples} samples requested, configured minimum is "
                f"{body.min_samples}"
            )
        if body.reference == "randmst-exact" and body.mode != "randmst-tree":
            raise PreconditionError(
                "reference randmst-exact applies only to mode randmst-tree"
            )
        budget = body.budget.resolve()
        if body.reference == "randmst-exact":
            exact = exact_randmst_partition_distribution(g, body.k, budget)
        else:
            exact = exact_partition_distribution(g, body.k, budget)
        tally = run_trials(
            g, body.k, body.samples, body.seed, mode=body.mode, streams=body.streams
        )
        report = compare(
            tally,
            exact,
            body.samples,
            significance=body.significance,
            z_bound=body.z_bound,
            seed=body.seed,
            mode=body.mode,
            reference=body.reference,
        )
        audit = None
        if body.mode == "randmst-tree" and len(g.edges) <= 9:
            audit = _randmst_audit(g)
        return VerifyResponse(
            graph_id=graph_id,
            k=body.k,
            samples=report.samples,
            seed=body.seed,
            mode=body.mode,
            reference=body.reference,
            chi_square=report.chi_square,
            df=report.df,
            p_value=report.p_value,
            significance=report.significance,
            z_bound=report.z_bound,
            max_abs_z=report.max_abs_z,
            pooled_cells=report.pooled_cells,
            passed=report.passed,
            rows=[VerifyRow(**row.to_json_dict(body.digits)) for row in report.rows],
            randmst_audit=audit,
        )

    return app
