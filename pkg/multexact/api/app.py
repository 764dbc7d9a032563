"""
FastAPI application: exact multiple Fisher tests over HTTP.
Runs on http://127.0.0.1:8766 by default.

Shared state (the region cache) lives on app.state so that each call to
create_app() produces an independent instance; tests rely on this.
"""

from __future__ import annotations

import logging
from contextlib import asynccontextmanager

from fastapi import FastAPI

from .. import __version__
from ..closed import RegionCache
from ..config import config

logger = logging.getLogger(__name__)


@asynccontextmanager
async def lifespan(app: FastAPI):
    app.state.region_cache = RegionCache()
    yield
    logger.info(
        "region cache: %d rules, %d hits, %d misses",
        len(app.state.region_cache), app.state.region_cache.hits, app.state.region_cache.misses,
    )
    app.state.region_cache.clear()


def create_app() -> FastAPI:
    from fastapi.middleware.cors import CORSMiddleware

    app = FastAPI(
        title="multexact",
        description=(
            "Optimal exact rejection regions and closed tests for multiple Fisher's exact tests"
        ),
        version=__version__,
        lifespan=lifespan,
    )

    app.add_middleware(
        CORSMiddleware,
        allow_origins=[o.strip() for o in config.allowed_origins.split(",") if o.strip()],
        allow_methods=["*"],
        allow_headers=["*"],
    )

    from .routers import dist, power, region, test

    app.include_router(dist.router)
    app.include_router(region.router)
    app.include_router(test.router)
    app.include_router(power.router)

    @app.get("/health")
    def health():
        return {"status": "ok", "version": __version__}

    return app


app = create_app()
