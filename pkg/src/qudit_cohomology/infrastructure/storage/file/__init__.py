"""File storage package."""

from .file_loader import JsonGaugeLoader, JsonCircuitLoader, StateLoader, read_json
from .report_writer import NdjsonReportWriter
from .json_codec import (
    to_jsonable, point_from_json, chain_to_json, chain_from_json,
    cochain_to_json, cochain_from_json, certificate_to_json, certificate_from_json,
    obstruction_to_json, obstruction_from_json, witness_to_json,
    gauge_to_json, gauge_from_json, matrix_from_json
)

__all__ = [
    # Loaders
    'JsonGaugeLoader',
    'JsonCircuitLoader',
    'StateLoader',
    'read_json',

    # Writers
    'NdjsonReportWriter',

    # JSON codec
    'to_jsonable',
    'point_from_json',
    'chain_to_json',
    'chain_from_json',
    'cochain_to_json',
    'cochain_from_json',
    'certificate_to_json',
    'certificate_from_json',
    'obstruction_to_json',
    'obstruction_from_json',
    'witness_to_json',
    'gauge_to_json',
    'gauge_from_json',
    'matrix_from_json',
]
