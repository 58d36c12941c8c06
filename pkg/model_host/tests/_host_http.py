"""In-thread host servers and raw HTTP helpers for the tests."""

from __future__ import annotations

import contextlib
import json
import threading
import urllib.error
import urllib.request

from model_host.config import HostConfig
from model_host.server import serve


@contextlib.contextmanager
def running_host(cfg: HostConfig):
    server = serve(cfg)
    thread = threading.Thread(target=server.serve_forever, daemon=True)
    thread.start()
    try:
        yield f"http://127.0.0.1:{server.server_address[1]}"
    finally:
        server.shutdown()
        server.server_close()
        thread.join(timeout=5)


def http_post(url: str, route: str, payload=None, token: str = "", raw: bytes | None = None):
    """POST and return (status, parsed body); HTTP errors are data here."""
    body = raw if raw is not None else json.dumps(payload).encode("utf-8")
    headers = {"content-type": "application/json"}
    if token:
        headers["authorization"] = f"Bearer {token}"
    request = urllib.request.Request(url + route, data=body, headers=headers, method="POST")
    try:
        with urllib.request.urlopen(request, timeout=10) as resp:
            return resp.status, json.loads(resp.read())
    except urllib.error.HTTPError as exc:
        return exc.code, json.loads(exc.read())


def http_get(url: str, route: str):
    try:
        with urllib.request.urlopen(url + route, timeout=10) as resp:
            return resp.status, json.loads(resp.read())
    except urllib.error.HTTPError as exc:
        return exc.code, json.loads(exc.read())
