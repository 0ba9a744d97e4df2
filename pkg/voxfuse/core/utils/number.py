from typing import Union

PRECISION = 6


def fixed(value: Union[str, float] = None, precision: int = PRECISION) -> str:
    """stable fixed-precision rendering for reports and golden files."""
    if value is None:
        return "nan"
    return f"{float(value):.{precision}f}"
