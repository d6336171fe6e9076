"""
Shared utility functions for the orbifold projective line toolkit
"""

import json
import logging
import os
from fractions import Fraction
from typing import Any

import pandas as pd

import config

# Set up logging (stderr only, stdout is reserved for command output)
logging.basicConfig(
    level=getattr(logging, config.LOG_LEVEL, logging.INFO),
    format='%(asctime)s - %(name)s - %(levelname)s - %(message)s'
)
logger = logging.getLogger(__name__)


def validate_dataframe(df: pd.DataFrame, required_columns: list[str]) -> None:
    """
    Validate that dataframe has required columns.
    Raises ValueError if columns are missing.
    """
    missing = set(required_columns) - set(df.columns)
    if missing:
        raise ValueError(f"Missing required columns: {missing}")
    logger.info(f"✓ Validated {len(df)} rows with required columns")


def format_rational(value: Fraction | int) -> str:
    """Render an exact rational as 'num/den', or 'n' for integers."""
    value = Fraction(value)
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


def to_jsonable(obj: Any) -> Any:
    """
    Convert nested results into plain JSON values.
    Fractions become 'num/den' strings; objects exposing to_json() are expanded.
    """
    if isinstance(obj, bool) or obj is None:
        return obj
    if isinstance(obj, Fraction):
        return format_rational(obj)
    if isinstance(obj, (int, float, str)):
        return obj
    if hasattr(obj, "to_json"):
        return to_jsonable(obj.to_json())
    if isinstance(obj, dict):
        return {str(k): to_jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [to_jsonable(v) for v in obj]
    return str(obj)


def dump_json(obj: Any) -> str:
    """Deterministic JSON rendering (sorted keys, fixed separators)."""
    return json.dumps(to_jsonable(obj), sort_keys=True, indent=2)


def save_checkpoint(df: pd.DataFrame, filepath: str, description: str = "") -> None:
    """Save intermediate checkpoint with logging."""
    os.makedirs(os.path.dirname(filepath) or ".", exist_ok=True)
    df.to_csv(filepath, index=False, float_format="%.15g")
    logger.info(f"✓ Saved checkpoint: {filepath} ({len(df)} rows) {description}")


def load_checkpoint(filepath: str) -> pd.DataFrame:
    """Load checkpoint with logging."""
    df = pd.read_csv(filepath, dtype=str, keep_default_na=False)
    logger.info(f"✓ Loaded checkpoint: {filepath} ({len(df)} rows)")
    return df
