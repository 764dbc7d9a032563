"""Map library errors onto HTTP status codes."""

from __future__ import annotations

from contextlib import contextmanager
from typing import Iterator

from fastapi import HTTPException

from ..exceptions import InputError, SupportTooLarge


@contextmanager
def http_errors() -> Iterator[None]:
    try:
        yield
    except SupportTooLarge as exc:
        raise HTTPException(status_code=413, detail=str(exc)) from exc
    except InputError as exc:
        raise HTTPException(status_code=422, detail=str(exc)) from exc
