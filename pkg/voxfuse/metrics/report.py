"""Table and key=value renderings of evaluation reports."""
from jinja2 import Environment
from typing import List, Optional, Tuple
from voxfuse.core.utils import fixed
from voxfuse.core.models import DepthEvalReport, GeomEvalReport

COLUMNS = ["AbsRel", "AbsDiff", "SqRel", "RMSE", "L1", "Acc", "Comp", "F-score"]

environment = Environment(trim_blocks=True, lstrip_blocks=True, keep_trailing_newline=True)


def _format(value) -> str:
    return str(value) if isinstance(value, int) else fixed(value)


environment.filters["fixed"] = _format

TABLE_TEMPLATE = environment.from_string('''
| Method | {{ columns | join(" | ") }} |
| --- |{% for _ in columns %} --- |{% endfor %}

{% for name, values in rows %}
| {{ name }} |{% for value in values %} {{ value | fixed }} |{% endfor %}

{% endfor %}
'''.lstrip())

KEYVALUE_TEMPLATE = environment.from_string('''
{% for key, value in values %}
{{ key }}={{ value | fixed }}
{% endfor %}
'''.lstrip())

Row = Tuple[str, Optional[DepthEvalReport], Optional[GeomEvalReport]]


def _values(depth: DepthEvalReport = None, geometry: GeomEvalReport = None) -> list:
    depth_values = (
        [depth.abs_rel, depth.abs_diff, depth.sq_rel, depth.rmse] if depth else [None] * 4
    )
    geometry_values = (
        [geometry.l1, geometry.acc, geometry.comp, geometry.f_score]
        if geometry else [None] * 4
    )
    return depth_values + geometry_values


def render_table(rows: List[Row]) -> str:
    return TABLE_TEMPLATE.render(
        columns=COLUMNS, rows=[(name, _values(d, g)) for name, d, g in rows]
    )


def render_keyvalues(depth: DepthEvalReport = None, geometry: GeomEvalReport = None) -> str:
    values = []
    if depth is not None:
        values += [
            ("abs_rel", depth.abs_rel),
            ("abs_diff", depth.abs_diff),
            ("sq_rel", depth.sq_rel),
            ("rmse", depth.rmse),
            ("n", depth.n),
        ]
    if geometry is not None:
        values += [
            ("l1", geometry.l1),
            ("acc", geometry.acc),
            ("comp", geometry.comp),
            ("precision", geometry.precision),
            ("recall", geometry.recall),
            ("f_score", geometry.f_score),
        ]
    return KEYVALUE_TEMPLATE.render(values=values)
