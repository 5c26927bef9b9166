# %% [markdown]
# # From text to drawing
#
# A scheme is written in a small text language, validated, turned into
# geometry and written out as SVG in millimetres.

# %%
from pathlib import Path

from schemeforge.dsl import parse_scheme, serialize_scheme
from schemeforge.render import shape_count, to_svg
from schemeforge.symgen import regenerate

SOURCE = """
scheme v1
instrument te  { at 0 40; code TE; pos 1а }
instrument tir { at 0 0;  code TIR; pos 1б; panel }
actuator  yv   { at 40 -5; pos 1в; manual_control; normal_position closed }
line l1 { path @te.s, @tir.n }
line l2 { path @tir.e, 40 0, @yv.s }
"""

scheme, diags = parse_scheme(SOURCE)
for d in diags:
    print(d.format("demo.scm"))

# %% [markdown]
# Each element becomes one geometry set; the connection lines share a final
# routing set that also holds junction dots.

# %%
model = regenerate(scheme)
for g in model.sets:
    kinds = sorted({type(p).__name__ for p in g.primitives})
    print(f"{g.source_id:10} {len(g.primitives):2} primitives: {', '.join(kinds)}")

svg = to_svg(model)
assert shape_count(svg) == model.primitive_count()
Path("demo.svg").write_bytes(svg)
print(f"wrote demo.svg ({len(svg)} bytes)")

# %% [markdown]
# The canonical text form sorts elements by kind and id and always spells out
# the line style.

# %%
print(serialize_scheme(scheme))
