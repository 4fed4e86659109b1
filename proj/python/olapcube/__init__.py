"""In-memory OLAP cube engine.

Build a cube from a schema document and fact CSV, then navigate it::

    cube = olapcube.Cube.build(schema_json, facts_csv)
    by_country = cube.roll_up("geo", "country")
    q1 = cube.slice("quarter", "Q1")

Errors raise OlapError with ``(code, message)`` as args.
"""

import json

from ._olapcube import (
    Cube,
    OlapError,
    Session,
    quicksort_par,
    quicksort_seq,
    run_query,
    sort_experiment,
    validate,
)

__all__ = [
    "Cube",
    "OlapError",
    "Session",
    "query",
    "quicksort_par",
    "quicksort_seq",
    "run_query",
    "sort_experiment",
    "validate",
    "validation_report",
]


def query(schema_json, facts_csv, query_doc, workers=None):
    """Evaluate a query document (dict, list or JSON text); returns the parsed
    result document or raises OlapError with the error document's code."""
    if not isinstance(query_doc, str):
        query_doc = json.dumps(query_doc)
    ok, document = run_query(schema_json, facts_csv, query_doc, workers)
    doc = json.loads(document)
    if not ok:
        raise OlapError(doc["error"]["code"], doc["error"]["message"])
    return doc


def validation_report(schema_json, facts_csv):
    """Validation report as a dict with ok, orphan_references and
    granularity_violations."""
    return json.loads(validate(schema_json, facts_csv))
