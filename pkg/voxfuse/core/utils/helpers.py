import attr
import json
import logging
import numpy as np
from enum import Enum
from typing import List, TypeVar, Callable, Any, Union
from concurrent.futures import ThreadPoolExecutor

logger = logging.getLogger(__name__)
T = TypeVar("T")
S = TypeVar("S")


@attr.s(auto_attribs=True)
class JWrapper:
    value: Any


def _default(o: Any):
    if isinstance(o, np.ndarray):
        return o.tolist()
    if isinstance(o, np.generic):
        return o.item()
    if isinstance(o, Enum):
        return o.value
    return o.__dict__ if hasattr(o, "__dict__") else str(o)


def jsonify(entity: Union[dict, T]) -> str:
    """Return a JSON.

    recursively parse a data type using __dict__ into a JSON
    """
    return json.dumps(
        attr.asdict(JWrapper(value=entity), retain_collection_types=False).get("value"),
        default=_default,
        sort_keys=True,
        indent=4,
    )


def exec_parrallel(
    function: Callable[[S], T], sequence: List[S], max_workers: int = None
) -> List[T]:
    """Return a list of result for function execution on each element of the sequence.

    Results keep the order of `sequence` whatever the completion order.
    """
    if len(sequence) == 0:
        return []
    if max_workers == 1:
        return [function(item) for item in sequence]

    with ThreadPoolExecutor(max_workers=max_workers or len(sequence)) as executor:
        return list(executor.map(function, sequence))
