"""Shared fixtures: cached catalog groups and an in-process service client."""

import asyncio

import pytest
from hypothesis import settings

from wordmap.groups import (
    DEFAULT_CATALOG,
    NILPOTENT_CATALOG,
    NON_NILPOTENT_CATALOG,
    builtin_group,
)

settings.register_profile("suite", derandomize=True, max_examples=60, deadline=None)
settings.load_profile("suite")

ALL_SPECS = list(DEFAULT_CATALOG)
NILPOTENT_SPECS = list(NILPOTENT_CATALOG)
NON_NILPOTENT_SPECS = list(NON_NILPOTENT_CATALOG)

_groups: dict[str, object] = {}


def get_group(spec):
    """Build a catalog group once per session; tables are immutable."""
    if spec not in _groups:
        _groups[spec] = builtin_group(spec)
    return _groups[spec]


@pytest.fixture
def group():
    return get_group


def service_call(method, path, payload=None):
    """Round-trip one request through the ASGI app without a socket."""
    import httpx

    from wordmap.service import create_app

    async def _run():
        transport = httpx.ASGITransport(app=create_app())
        async with httpx.AsyncClient(
            transport=transport, base_url="http://testserver"
        ) as client:
            if method == "GET":
                response = await client.get(path)
            else:
                response = await client.post(path, json=payload)
            return response.status_code, response.json()

    return asyncio.run(_run())


@pytest.fixture
def call():
    return service_call
