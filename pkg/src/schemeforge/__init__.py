"""Compile developed process-automation schemes to drawings and specifications."""

from .catalog import Catalog, CatalogEntry, CatalogSet, apply_entry, filter_catalogs, load_catalogs
from .dsl import load_scheme, parse_scheme, serialize_scheme
from .geometry import Circle, Dot, DrawingModel, GeometrySet, Rect, Segment, Text
from .model import (
    Actuator,
    AnchorRef,
    ConnectionLine,
    Diagnostic,
    Instrument,
    LineStyle,
    LocationTable,
    NormalPosition,
    Panel,
    Point,
    Scheme,
    Severity,
    SpecProps,
    TableSection,
    validate,
)
from .render import to_svg
from .routing import anchor_points, junctions, orthogonalize, route_all, snap
from .specgen import GroupBy, SpecRow, SpecTable, generate, render_spec_csv
from .symgen import actuator_symbol, instrument_symbol, panel_geometry, regenerate, table_geometry
from .tagcodes import (
    FunctionalCode,
    MeasuredVariable,
    PositionalDesignation,
    TagError,
    display_code,
    measured_variable,
    parse_code,
    parse_designation,
)

__version__ = "0.1.0"
