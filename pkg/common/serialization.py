"""
JSON serialization helpers shared by the document writers.
"""

import json
import math
from enum import Enum
from typing import Any

import numpy as np


class JSONSanitizer:
    """Sanitizes data structures to ensure JSON serializability."""

    @staticmethod
    def sanitize(data: Any) -> Any:
        """
        Recursively convert numpy types to native Python types for JSON serialization.

        This handles:
        - numpy.bool_ -> bool
        - numpy integers -> int
        - numpy floats -> float, NaN -> None
        - numpy arrays -> nested lists
        - Enum members -> their value
        - Recursively processes dictionaries, lists and tuples

        Args:
            data: Data structure to sanitize (can be dict, list, or scalar)

        Returns:
            Sanitized data with all numpy types converted to native Python types
        """
        if data is None:
            return None

        if isinstance(data, (bool, np.bool_)):
            return bool(data)

        if isinstance(data, np.integer):
            return int(data)

        if isinstance(data, (float, np.floating)):
            value = float(data)
            return None if math.isnan(value) else value

        if isinstance(data, Enum):
            return data.value

        if isinstance(data, np.ndarray):
            return JSONSanitizer.sanitize(data.tolist())

        if isinstance(data, dict):
            return {str(key): JSONSanitizer.sanitize(value) for key, value in data.items()}

        if isinstance(data, (list, tuple)):
            return [JSONSanitizer.sanitize(item) for item in data]

        return data


def dumps(data: Any) -> str:
    """Deterministic JSON text: sanitized, fixed key order, trailing newline"""
    return json.dumps(JSONSanitizer.sanitize(data), indent=2, allow_nan=False) + "\n"
