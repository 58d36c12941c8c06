"""HTTP transport for the oracle wire protocol."""

from __future__ import annotations

import threading
import time
from typing import Callable

import requests

from .cache import canonical_payload
from .types import OracleConfig, OracleError, OracleUnavailable


class WireTransport:
    """POSTs canonical JSON to one endpoint, with retries and backoff.

    Transient failures (connection errors, timeouts, 5xx) are retried
    ``cfg.retries`` times with exponential backoff; anything 4xx is treated
    as a permanent request error and surfaces immediately. A per-endpoint
    semaphore caps in-flight requests.
    """

    def __init__(self, cfg: OracleConfig, sleep: Callable[[float], None] = time.sleep):
        self.cfg = cfg
        self.base_url = cfg.endpoint.rstrip("/")
        self._sleep = sleep
        self._session = requests.Session()
        self._gate = threading.BoundedSemaphore(cfg.max_inflight)

    def _headers(self) -> dict[str, str]:
        headers = {"content-type": "application/json"}
        if self.cfg.bearer_token:
            headers["authorization"] = f"Bearer {self.cfg.bearer_token}"
        return headers

    def request(self, route: str, payload: dict) -> bytes:
        url = self.base_url + route
        body = canonical_payload(payload)
        last_error: Exception | None = None
        for attempt in range(self.cfg.retries + 1):
            if attempt:
                self._sleep(self.cfg.backoff_base * self.cfg.backoff_factor ** (attempt - 1))
            try:
                with self._gate:
                    resp = self._session.post(
                        url, data=body, headers=self._headers(), timeout=self.cfg.timeout
                    )
            except requests.RequestException as exc:
                last_error = exc
                continue
            if resp.status_code == 200:
                return resp.content
            if resp.status_code >= 500:
                last_error = OracleError(f"{route} returned {resp.status_code}")
                continue
            raise OracleError(f"{route} returned {resp.status_code}: {resp.text[:200]}")
        raise OracleUnavailable(f"{url} unreachable after {self.cfg.retries + 1} attempts: {last_error}")

    def health(self) -> bool:
        try:
            resp = self._session.get(
                self.base_url + "/v1/health", headers=self._headers(), timeout=self.cfg.timeout
            )
        except requests.RequestException:
            return False
        return resp.status_code == 200
