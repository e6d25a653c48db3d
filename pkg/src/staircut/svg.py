"""SVG rendering of floorplans with staircase overlays."""
from __future__ import annotations

import xml.etree.ElementTree as ET

from .bag import MIS, StairDirection
from .cut import Polyline
from .floorplan import Floorplan
from .tree import MscNode

DEFAULTS = {
    "width": 800,            # pixels; height follows the aspect ratio
    "margin": 10,
    "show_names": True,
    "mark_bends": True,
    "font_size": 10,
    "mis_style": "stroke:#d62728;stroke-width:2.5;fill:none",
    "mds_style": "stroke:#1f77b4;stroke-width:2.5;fill:none;stroke-dasharray:6,3",
}


def _overlays(cuts):
    """Normalise the overlay argument to ``[(polyline, direction, label)]``."""
    if cuts is None:
        return []
    if isinstance(cuts, MscNode):
        return [(nd.polyline, nd.stype, nd.path or "root") for nd in cuts.walk()]
    out = []
    for i, item in enumerate(cuts):
        if isinstance(item, Polyline):
            out.append((item, MIS, str(i)))
        else:
            poly, direction = item[0], item[1]
            out.append((poly, StairDirection(direction), str(i)))
    return out


def render_svg(fp: Floorplan, cuts=None, options: dict | None = None) -> str:
    """Blocks as labelled rectangles, staircases as polylines with bend markers.

    ``cuts`` may be an :class:`MscNode` (every node's staircase is drawn), or
    a list of polylines / ``(polyline, direction)`` pairs.
    """
    opt = {**DEFAULTS, **(options or {})}
    bb = fp.bbox
    scale = (opt["width"] - 2 * opt["margin"]) / bb.w
    height = bb.h * scale + 2 * opt["margin"]

    def X(x):
        return round(opt["margin"] + (x - bb.x0) * scale, 3)

    def Y(y):
        return round(opt["margin"] + (bb.y1 - y) * scale, 3)

    svg = ET.Element("svg", xmlns="http://www.w3.org/2000/svg",
                     width=str(opt["width"]), height=str(round(height, 3)),
                     viewBox=f"0 0 {opt['width']} {round(height, 3)}")
    blocks = ET.SubElement(svg, "g", {"class": "blocks"})
    for b in fp.blocks:
        ET.SubElement(blocks, "rect", x=str(X(b.x)), y=str(Y(b.top)),
                      width=str(round(b.w * scale, 3)), height=str(round(b.h * scale, 3)),
                      style="fill:#f3f3e8;stroke:#444;stroke-width:1")
        if opt["show_names"]:
            cx, cy = b.center()
            t = ET.SubElement(blocks, "text", x=str(X(cx)), y=str(Y(cy)),
                              style=f"font-size:{opt['font_size']}px;text-anchor:middle;"
                                    "dominant-baseline:middle;font-family:sans-serif")
            t.text = b.name

    stairs = ET.SubElement(svg, "g", {"class": "staircases"})
    half = 3
    for poly, direction, label in _overlays(cuts):
        style = opt["mis_style"] if direction is MIS else opt["mds_style"]
        g = ET.SubElement(stairs, "g", {"class": f"staircase {direction.value}", "data-node": label})
        for pts in poly.points():
            ET.SubElement(g, "polyline", style=style,
                          points=" ".join(f"{X(x)},{Y(y)}" for x, y in pts))
            if opt["mark_bends"]:
                for x, y in pts[1:-1]:
                    px, py = X(x), Y(y)
                    ET.SubElement(g, "polygon", {"class": "bend"}, style="fill:#000",
                                  points=f"{px - half},{py - half} {px + half},{py - half} "
                                         f"{px + half},{py + half} {px - half},{py + half}")
    ET.indent(svg)
    return ET.tostring(svg, encoding="unicode") + "\n"
