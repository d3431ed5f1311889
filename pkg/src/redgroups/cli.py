"""Command-line front end.

The CLI is a thin client of the HTTP service: every subcommand builds one
request, posts it (by default against the in-process application, so no
server or network is needed) and renders the response.  ``--server URL``
points the same commands at a remote instance.

Exit codes: 0 success, 2 parse error, 3 semantic error, 4 resource bound
exceeded.  Output is deterministic: stable ordering and no timestamps, and
``--json`` emits exactly the service response documents.
"""

from __future__ import annotations

import argparse
import json
import sys


class ServiceClient:
    """Minimal POST client, in-process by default."""

    def __init__(self, server: str | None):
        if server:
            import httpx

            self._client = httpx.Client(base_url=server)
        else:
            import warnings

            with warnings.catch_warnings():
                # some starlette builds warn on the test-client import path
                warnings.simplefilter("ignore")
                from fastapi.testclient import TestClient

            from .service import app

            self._client = TestClient(app)

    def post(self, path: str, payload: dict):
        return self._client.post(path, json=payload)


class CliFailure(Exception):
    def __init__(self, exit_code: int, message: str):
        super().__init__(message)
        self.exit_code = exit_code


def _load_document(path: str) -> dict:
    try:
        with open(path, "r", encoding="utf-8") as handle:
            doc = json.load(handle)
    except OSError as exc:
        raise CliFailure(2, f"cannot read {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise CliFailure(2, f"{path} is not valid JSON: {exc}") from exc
    if not isinstance(doc, dict):
        raise CliFailure(2, f"{path}: expected a JSON object")
    return doc


def _request(client: ServiceClient, path: str, payload: dict) -> dict:
    try:
        response = client.post(path, payload)
    except Exception as exc:  # connection problems against --server
        raise CliFailure(3, f"service request failed: {exc}") from exc
    if response.status_code == 200:
        return response.json()
    code_map = {422: 2, 400: 3, 413: 4}
    exit_code = code_map.get(response.status_code, 3)
    try:
        body = response.json()
        detail = body.get("message") or body.get("detail") or str(body)
    except ValueError:
        detail = response.text
    raise CliFailure(exit_code, f"{detail}")


def _emit(args, document: dict, human: str) -> None:
    if args.json:
        print(json.dumps(document, indent=2, ensure_ascii=False))
    else:
        print(human)


def _matrix_lines(rows, indent="    ") -> str:
    if not rows:
        return f"{indent}(empty)"
    return "\n".join(f"{indent}{list(r)}" for r in rows)


def cmd_center(args, client):
    body = _request(client, "/v1/center", {"type": args.type})
    _emit(args, body, body["display"])


def cmd_quotients(args, client):
    body = _request(client, "/v1/quotients", {"type": args.type})
    lines = [f"center of {body['type']}: {body['center']['display']}"]
    width = max(len(e["name"]) for e in body["entries"])
    for e in body["entries"]:
        gens = "; ".join(str(list(r)) for r in e["generators"])
        lines.append(
            f"  {e['name']:<{width}}  order {e['order']}  orbit {e['orbit_class']}  H = {gens}"
        )
    _emit(args, body, "\n".join(lines))


def cmd_iso(args, client):
    left = _load_document(args.left)
    right = _load_document(args.right)
    body = _request(client, "/v1/iso", {"left": left, "right": right})
    if body["isomorphic"]:
        witness = body["witness"]
        text = "ISOMORPHIC"
        if witness:
            text += " (witness: " + " . ".join(witness) + ")"
        else:
            text += " (identical canonical data)"
    else:
        text = f"NOT ISOMORPHIC ({body['reason']})"
    _emit(args, body, text)


def cmd_invariants(args, client):
    doc = _load_document(args.datum)
    body = _request(client, "/v1/invariants", {"datum": doc})
    order = [
        "dim",
        "rank",
        "units",
        "mh",
        "dim_radical",
        "dim_unipotent_radical",
        "pi1_free_rank",
    ]
    lines = [f"group: {body['name']}"]
    for key in order:
        lines.append(f"  {key:<22} {body[key]}")
    torsion = body["pi1_torsion"]
    pi1 = " + ".join(["Z"] * body["pi1_free_rank"] + [f"Z/{d}" for d in torsion])
    lines.append(f"  {'pi1':<22} {pi1 if pi1 else 'trivial'}")
    _emit(args, body, "\n".join(lines))


def cmd_classify(args, client):
    doc = _load_document(args.datum)
    body = _request(client, "/v1/classify", {"datum": doc})
    flags = ["reductive", "semisimple", "solvable", "unipotent", "torus"]
    lines = [f"group: {body['name']}"]
    for f in flags:
        lines.append(f"  {f:<11} {'yes' if body[f] else 'no'}")
    if body["variety_signature"] is not None:
        t, r = body["variety_signature"]
        lines.append(f"  variety     A_*^{t} x A^{r}")
    _emit(args, body, "\n".join(lines))


def cmd_enumerate(args, client):
    payload = {"rank": args.rank, "characteristic": args.p}
    if args.bound is not None:
        payload["bound"] = args.bound
    body = _request(client, "/v1/enumerate", payload)
    lines = [f"{body['count']} connected reductive groups of rank {body['rank']}"]
    width = max((len(e["name"]) for e in body["entries"]), default=0)
    for e in body["entries"]:
        compact = json.dumps(e["datum"], separators=(",", ":"))
        lines.append(f"  {e['name']:<{width}}  {compact}")
    _emit(args, body, "\n".join(lines))


def cmd_twins(args, client):
    payload = {"base": args.base, "n": args.n}
    if args.bound is not None:
        payload["bound"] = args.bound
    body = _request(client, "/v1/twins", payload)
    certs = body["certificates"]
    if not certs:
        human = f"no twin pairs among central quotients of {body['base']}^{body['n']}"
        _emit(args, body, human)
        return
    lines = [f"{len(certs)} certified twin pair(s) for {body['base']}^{body['n']}:"]
    for i, cert in enumerate(certs, start=1):
        lines.append(f"pair {i}: {cert['names'][0]} vs {cert['names'][1]}")
        lines.append("  C1 generators:")
        lines.append(_matrix_lines(cert["C1"]))
        lines.append("  C2 generators:")
        lines.append(_matrix_lines(cert["C2"]))
        lines.append("  variety witness (maps C1 to C2):")
        lines.append(_matrix_lines(cert["witness"]))
        lines.append(
            f"  group classes separated by exhausted orbit search over {cert['out_orbit_size']} subgroups"
        )
    _emit(args, body, "\n".join(lines))


def cmd_split(args, client):
    doc = _load_document(args.datum)
    body = _request(client, "/v1/split", {"datum": doc})
    lines = [f"group: {body['group']}"]
    if body["splits"]:
        d1, d2 = body["factor_dims"]
        lines.append(f"  variety splits as D x Z with dims ({d1}, {d2})")
        lines.append(f"  torus factor: A_*^{body['torus_power']}")
        lines.append("  iota cocharacters (torus; coroot coordinates):")
        for row in body["iota_display"]:
            lines.append(f"    {row}")
    else:
        lines.append("  no torus factor (units = 0)")
    if body["obstructions"]:
        lines.append("  semisimple obstructions: no factor may")
        lines.append("    - carry a nonconstant invertible function")
        lines.append("    - be a curve")
        lines.append("    - be a surface")
        lines.append("    - be contractible of positive dimension")
    _emit(args, body, "\n".join(lines))


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="redgroups",
        description="Classify connected reductive algebraic groups given as gluing data.",
    )
    parser.add_argument("--json", action="store_true", help="emit machine-readable JSON")
    parser.add_argument("--server", default=None, help="URL of a running service (default: in-process)")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("center", help="center of a simply connected simple group")
    p.add_argument("type", help="simple type, e.g. D4")
    p.set_defaults(func=cmd_center)

    p = sub.add_parser("quotients", help="central quotients of a simple group")
    p.add_argument("type")
    p.set_defaults(func=cmd_quotients)

    p = sub.add_parser("iso", help="decide isomorphism of two gluing data")
    p.add_argument("left")
    p.add_argument("right")
    p.set_defaults(func=cmd_iso)

    p = sub.add_parser("invariants", help="variety invariants of a datum")
    p.add_argument("datum")
    p.set_defaults(func=cmd_invariants)

    p = sub.add_parser("classify", help="structural flags of a datum")
    p.add_argument("datum")
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("enumerate", help="all reductive groups of a rank")
    p.add_argument("rank", type=int)
    p.add_argument("--bound", type=int, default=None, help="raise the rank bound")
    p.add_argument("--p", type=int, default=0, help="working characteristic (default 0)")
    p.set_defaults(func=cmd_enumerate)

    p = sub.add_parser("twins", help="certified variety twins among power quotients")
    p.add_argument("base", help="simple type, e.g. A1")
    p.add_argument("n", type=int, help="number of factors")
    p.add_argument("--bound", type=int, default=None, help="raise the center-order bound")
    p.set_defaults(func=cmd_twins)

    p = sub.add_parser("split", help="variety factorization report of a datum")
    p.add_argument("datum")
    p.set_defaults(func=cmd_split)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        client = ServiceClient(args.server)
        args.func(args, client)
    except CliFailure as failure:
        print(f"error: {failure}", file=sys.stderr)
        return failure.exit_code
    return 0


if __name__ == "__main__":
    sys.exit(main())
