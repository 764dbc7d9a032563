"""
Shared pytest fixtures and configuration.
"""

from pathlib import Path

import pytest
import pytest_asyncio
from httpx import ASGITransport, AsyncClient

from multexact.api.app import create_app
from multexact.model import CrossTable, MarginVector

DATA = Path(__file__).parent.parent / "data"


@pytest.fixture()
def toy_margins() -> MarginVector:
    """Two endpoints, two subjects per group; small enough to enumerate by hand."""
    return MarginVector((2, 1, 1, 0), n_trt=2, n_ctr=2)


@pytest.fixture()
def example_table() -> CrossTable:
    """Urine/duct example: categories 11, 10, 01, 00."""
    return CrossTable(k=2, counts_trt=(80, 13, 1, 0), counts_ctr=(57, 12, 10, 2))


@pytest.fixture()
def example_margins() -> MarginVector:
    return MarginVector((137, 25, 11, 2), n_trt=94, n_ctr=81)


@pytest.fixture(scope="module")
def app():
    """Create a fresh app instance per test module."""
    return create_app()


@pytest_asyncio.fixture(scope="module")
async def client(app):
    """Async HTTP client wired directly to the ASGI app."""
    async with app.router.lifespan_context(app):
        async with AsyncClient(transport=ASGITransport(app=app), base_url="http://test") as ac:
            yield ac
