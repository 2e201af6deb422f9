"""Command-line client for the word-map service.

By default every command talks to an in-process instance of the service,
so no server needs to be running; ``--server URL`` points the same
commands at a remote instance instead.  Exit codes: 0 when the result was
computed (verdicts such as "fail" are data, not errors), 1 for usage
errors, 2 when a budget or cap was exceeded, 3 for internal failures.
"""

from __future__ import annotations

import argparse
import json
import sys

EPILOG = """\
group specs:
  C<n>, D<order>, Q8, S<n>, A<n> (n <= 6), Heis<p> (odd prime p),
  products like C2xQ8, perm:<cycles;cycles>, cayley:<path>.
  D<order> names the dihedral group BY ORDER: D8 has 8 elements.

words:
  juxtaposition is product, ^ is power, [u,v] = u^-1 v^-1 u v,
  x1 x2 ... are variables (x, y, z mean x1, x2, x3),
  g0 g1 ... are parameters bound with --params.

examples:
  wordmap dist "[x,y]" --group Q8
  wordmap distset --group S3 --vars 2
  wordmap check nilpotent --group S3 --method dist1
  wordmap sylow --group C6 --prime 2 --vars 1
  wordmap compare Q8 D8 --vars 2
  wordmap verify amit-vishne
"""


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        sys.exit(1)


def _int_list(text: str) -> list[int]:
    if not text.strip():
        return []
    try:
        return [int(tok) for tok in text.replace(",", " ").split()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a list of integers: {text!r}")


def build_parser() -> _Parser:
    parser = _Parser(
        prog="wordmap",
        description="Exact fiber distributions of word maps on finite groups.",
        epilog=EPILOG,
        formatter_class=argparse.RawDescriptionHelpFormatter,
    )
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument(
        "--server",
        default=None,
        help="base URL of a running service; defaults to an in-process instance",
    )
    common.add_argument(
        "--format",
        choices=("json", "tsv"),
        default="json",
        help="tsv prints one distribution per line as tab-separated counts",
    )
    common.add_argument("--size-limit", type=int, default=10_000)

    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("group", parents=[common], help="inspect a group spec")
    p.add_argument("spec")

    p = sub.add_parser("dist", parents=[common], help="fiber distribution of one word")
    p.add_argument("word")
    p.add_argument("--group", required=True)
    p.add_argument("--vars", type=int, default=None, help="pad the arity up to this")
    p.add_argument("--params", type=_int_list, default=[], help="g0,g1,... as element indices")
    p.add_argument("--tuple-budget", type=int, default=10**8)
    p.add_argument("--threads", type=int, default=0, help="0 means one per CPU")

    p = sub.add_parser(
        "distset", parents=[common], help="all distributions of n-variable word maps"
    )
    p.add_argument("--group", required=True)
    p.add_argument("--vars", type=int, default=2)
    p.add_argument("--map-cap", type=int, default=10**6)

    p = sub.add_parser(
        "witness", parents=[common], help="surjective non-uniform word, if one exists"
    )
    p.add_argument("--group", required=True)
    p.add_argument("--tuple-budget", type=int, default=10**8)

    p = sub.add_parser("check", parents=[common], help="decide a structural property")
    p.add_argument("property", choices=("nilpotent", "abelian"))
    p.add_argument("--group", required=True)
    p.add_argument(
        "--method",
        default="auto",
        help="oracle, dist1, dist2 or witness (nilpotent); oracle or dist2 (abelian)",
    )
    p.add_argument("--vars", type=int, default=2)
    p.add_argument("--map-cap", type=int, default=10**6)
    p.add_argument("--tuple-budget", type=int, default=10**8)

    p = sub.add_parser(
        "compare", parents=[common], help="match two distribution sets up to relabelling"
    )
    p.add_argument("group1")
    p.add_argument("group2")
    p.add_argument("--vars", type=int, default=1)
    p.add_argument("--map-cap", type=int, default=10**6)
    p.add_argument("--node-budget", type=int, default=10**6)

    p = sub.add_parser(
        "sylow", parents=[common], help="project a distribution set onto a Sylow part"
    )
    p.add_argument("--group", required=True)
    p.add_argument("--prime", type=int, required=True)
    p.add_argument("--vars", type=int, default=1)
    p.add_argument("--map-cap", type=int, default=10**6)

    p = sub.add_parser("verify", parents=[common], help="run a named claim check")
    p.add_argument("theorem", help="a claim id, or 'all' for the catalog sweep")
    p.add_argument("--group", default=None)
    p.add_argument("--catalog", action="store_true", help="alias for theorem 'all'")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--samples", type=int, default=10)
    p.add_argument("--vars", type=int, default=2)
    p.add_argument("--map-cap", type=int, default=10**6)
    p.add_argument("--tuple-budget", type=int, default=10**8)

    p = sub.add_parser("serve", help="run the HTTP service")
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--port", type=int, default=8000)

    return parser


def _request(args) -> tuple[str, dict]:
    c = args.command
    if c == "group":
        return "/group", {"spec": args.spec, "size_limit": args.size_limit}
    if c == "dist":
        import os

        threads = args.threads if args.threads > 0 else (os.cpu_count() or 1)
        return "/dist", {
            "group": args.group,
            "word": args.word,
            "vars": args.vars,
            "params": args.params,
            "size_limit": args.size_limit,
            "tuple_budget": args.tuple_budget,
            "threads": threads,
        }
    if c == "distset":
        return "/distset", {
            "group": args.group,
            "vars": args.vars,
            "size_limit": args.size_limit,
            "map_cap": args.map_cap,
        }
    if c == "witness":
        return "/witness", {
            "group": args.group,
            "size_limit": args.size_limit,
            "tuple_budget": args.tuple_budget,
        }
    if c == "check":
        return "/check", {
            "group": args.group,
            "property": args.property,
            "method": args.method,
            "vars": args.vars,
            "size_limit": args.size_limit,
            "map_cap": args.map_cap,
            "tuple_budget": args.tuple_budget,
        }
    if c == "compare":
        return "/compare", {
            "group1": args.group1,
            "group2": args.group2,
            "vars": args.vars,
            "size_limit": args.size_limit,
            "map_cap": args.map_cap,
            "node_budget": args.node_budget,
        }
    if c == "sylow":
        return "/sylow", {
            "group": args.group,
            "prime": args.prime,
            "vars": args.vars,
            "size_limit": args.size_limit,
            "map_cap": args.map_cap,
        }
    if c == "verify":
        theorem = "all" if args.catalog else args.theorem
        return "/verify", {
            "theorem": theorem,
            "group": args.group,
            "seed": args.seed,
            "samples": args.samples,
            "vars": args.vars,
            "size_limit": args.size_limit,
            "map_cap": args.map_cap,
            "tuple_budget": args.tuple_budget,
        }
    raise AssertionError(c)


def _post(args, path: str, payload: dict):
    import httpx

    if args.server:
        with httpx.Client(base_url=args.server, timeout=600.0) as client:
            response = client.post(path, json=payload)
            return response.status_code, response.json()

    import asyncio

    from .service import create_app

    async def _call():
        transport = httpx.ASGITransport(app=create_app())
        async with httpx.AsyncClient(
            transport=transport, base_url="http://wordmap.internal"
        ) as client:
            response = await client.post(path, json=payload)
            return response.status_code, response.json()

    return asyncio.run(_call())


def _render(args, body: dict) -> str:
    if args.format == "tsv":
        if "counts" in body:
            return "\t".join(str(c) for c in body["counts"])
        if "distributions" in body:
            return "\n".join(
                "\t".join(str(c) for c in v) for v in body["distributions"]
            )
    return json.dumps(body, indent=2, sort_keys=True)


def _exit_code(status: int, body) -> int:
    if status == 200:
        if isinstance(body, dict) and body.get("verdict") == "inconclusive":
            return 2
        return 0
    if status in (400, 422):
        return 1
    if status == 413:
        return 2
    return 3


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    if args.command == "serve":
        import uvicorn

        from .service import create_app

        uvicorn.run(create_app(), host=args.host, port=args.port)
        return 0
    path, payload = _request(args)
    status, body = _post(args, path, payload)
    if status == 200:
        print(_render(args, body))
    else:
        print(json.dumps(body, indent=2, sort_keys=True), file=sys.stderr)
    return _exit_code(status, body)


if __name__ == "__main__":
    sys.exit(main())
