"""Drawing constants, all in millimetres.

Symbol sizes follow common GOST 21.404 drafting practice; tolerances and
snapping radius are tool defaults.
"""

TEXT_HEIGHT = 2.5
CHAR_WIDTH_FACTOR = 0.6  # nominal glyph advance as a fraction of text height

INSTRUMENT_DIAMETER = 10.0
CODE_BASELINE_DY = 1.5
INDEX_DY = 0.8
POS_BASELINE_DY = -3.5

ACTUATOR_DIAMETER = 5.0
ACTUATOR_STEM = 5.0
ACTUATOR_CENTER_DY = 7.5
HANDLE_STEM = 2.0
HANDLE_WIDTH = 3.0
MARKER_DX = 4.0
ACTUATOR_POS_DY = -4.0
MARKER_OPEN = "НО"
MARKER_CLOSED = "НЗ"

NAME_COLUMN_WIDTH = 20.0
PANEL_LABEL_INSET = 2.0

SNAP_RADIUS = 2.5
EPSILON = 0.01
DOT_DIAMETER = 1.5

THIN_STROKE = 0.35
THICK_STROKE = 0.7
DASH_ARRAY = "2,1"
DEFAULT_MARGIN = 10.0

ROUTING_SET_ID = "~routing"
