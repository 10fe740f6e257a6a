"""
Configuration settings for the OFDM code toolkit.

This module handles environment variables and application settings shared
by the CLI and the HTTP API. Defaults are sized for desk-scale runs.
"""

import os


class Settings:
    """Application settings with environment variable support."""

    # Application info
    APP_NAME: str = "Low-PMEPR OFDM Code Toolkit"
    APP_VERSION: str = "1.0.0"
    APP_DESCRIPTION: str = (
        "Construct, enumerate, encode and verify OFDM codes built from "
        "complementary sequence sets and generalized Reed-Muller codes."
    )

    # Logging
    LOG_LEVEL: str = os.getenv("LOG_LEVEL", "INFO")

    # Envelope sampling
    DEFAULT_OVERSAMPLE: int = int(os.getenv("DEFAULT_OVERSAMPLE", "64"))

    # Enumeration limits (log2 of the number of codewords)
    ENUMERATION_CAP_LOG2: int = int(os.getenv("ENUMERATION_CAP_LOG2", "24"))
    ENUMERATION_BATCH_SIZE: int = int(os.getenv("ENUMERATION_BATCH_SIZE", "4096"))

    # Seed for verification suites run without --seed
    DEFAULT_SEED: int = int(os.getenv("DEFAULT_SEED", "0"))

    # Algebra limits
    MAX_VARIABLES: int = 16
    MAX_MODULUS: int = 1 << 16

    # Upper bound on worker threads for batch PMEPR; the API uses all of them
    MAX_WORKERS: int = int(os.getenv("MAX_WORKERS", "4"))

    # API settings
    API_PREFIX: str = "/api/codes"
    SLOW_REQUEST_SECONDS: float = float(os.getenv("SLOW_REQUEST_SECONDS", "0.5"))

    # CORS settings
    CORS_ORIGINS: list[str] = ["*"]


settings = Settings()
