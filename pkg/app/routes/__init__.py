"""Routes package for the OFDM code toolkit."""

from .codes import router as codes_router

__all__ = ["codes_router"]
