"""SVG figures of the two calculators.

Geometry is emitted in model coordinates inside a group flipped with
``scale(1,-1)``, so a consumer can read positions straight from the element
attributes.  Labels live outside the flipped group to stay upright.
"""

from __future__ import annotations

import math
import xml.etree.ElementTree as ET

from .mechcalc import Linkage, TreeCalc, linkage_pose, tree_multiply

SVG_NS = "http://www.w3.org/2000/svg"


def _num(v: float) -> str:
    return repr(float(v))


def _root(xmin, ymin, width, height):
    ET.register_namespace("", SVG_NS)
    # viewBox is in screen space, i.e. with y already flipped.
    svg = ET.Element(
        f"{{{SVG_NS}}}svg",
        {
            "version": "1.1",
            "viewBox": f"{_num(xmin)} {_num(-(ymin + height))} {_num(width)} {_num(height)}",
            "width": "600",
            "height": str(round(600 * height / width)),
        },
    )
    model = ET.SubElement(
        svg, f"{{{SVG_NS}}}g", {"id": "model", "transform": "scale(1,-1)"}
    )
    return svg, model


def _el(parent, tag, **attrs):
    clean = {k.rstrip("_").replace("_", "-"): v for k, v in attrs.items()}
    return ET.SubElement(parent, f"{{{SVG_NS}}}{tag}", clean)


def _line(parent, p, q, **attrs):
    return _el(
        parent, "line",
        x1=_num(p[0]), y1=_num(p[1]), x2=_num(q[0]), y2=_num(q[1]),
        vector_effect="non-scaling-stroke", **attrs,
    )


def _text(svg, x, y, s, size):
    # Screen coordinates: flip y by hand.
    t = _el(svg, "text", x=_num(x), y=_num(-y), font_size=_num(size), text_anchor="middle")
    t.text = s
    return t


def _serialize(svg) -> str:
    return '<?xml version="1.0" encoding="UTF-8"?>\n' + ET.tostring(svg, encoding="unicode") + "\n"


def tree_svg(t: TreeCalc, a: float | None = None, b: float | None = None) -> str:
    n = t.max_scale
    top = n * n
    margin = max(1.0, top * 0.05)
    svg, g = _root(-n - margin, -margin, 2 * (n + margin), top + 2 * margin)
    label = top / 40

    steps = 200
    pts = " ".join(
        f"{_num(x)},{_num(x * x)}"
        for x in (-n + 2 * n * k / steps for k in range(steps + 1))
    )
    _el(g, "polyline", id="hull", points=pts, fill="none", stroke="red",
        stroke_width="2", vector_effect="non-scaling-stroke")
    _line(g, (0, 0), (0, top), id="trunk", stroke="saddlebrown", stroke_width="3")

    ticks = _el(g, "g", id="trunk-scale", stroke="saddlebrown", stroke_width="1")
    tick = n / 60
    step = 1 if top <= 100 else 10 ** int(math.log10(top) - 1)
    k = 0
    while k <= top:
        w = 3 * tick if k % (10 * step) == 0 else tick
        _line(ticks, (-w, k), (w, k))
        if k % (10 * step) == 0:
            _text(svg, -5 * tick - label, k - label / 3, str(int(k)), label)
        k += step

    balls = _el(g, "g", id="balls", fill="red")
    r = n / 50
    for v in range(1, int(n) + 1):
        for side, (x, y) in (("l", t.left_ball(v)), ("r", t.right_ball(v))):
            _el(balls, "circle", id=f"ball-{side}{v}", cx=_num(x), cy=_num(y), r=_num(r))
        _text(svg, -v, -2 * label, str(v), label)
        _text(svg, v, -2 * label, str(v), label)

    if a is not None and b is not None:
        p, q = t.left_ball(a), t.right_ball(b)
        _line(g, p, q, id="lametta", stroke="goldenrod", stroke_width="2",
              **{"data-a": _num(a), "data-b": _num(b)})
        product = tree_multiply(a, b, t)
        _el(g, "circle", id="product", cx="0.0", cy=_num(product), r=_num(1.5 * r),
            fill="gold", stroke="black", vector_effect="non-scaling-stroke")
        _text(svg, 8 * tick + 2 * label, product, f"{a:g} x {b:g} = {product:g}", label)
    return _serialize(svg)


def linkage_svg(L: Linkage, x: float = 0.0) -> str:
    pose = linkage_pose(x, L)
    span = L.b + L.c
    svg, g = _root(-span, -span, 2 * span, 2 * span)

    def pt(z):
        return (z.real, z.imag)

    _line(g, (-span, 0), (span, 0), id="baseline", stroke="black", stroke_width="1")
    _line(g, pt(pose.left_foot), pt(pose.hip), id="leg-left", stroke="red", stroke_width="3")
    _line(g, pt(pose.right_foot), pt(pose.hip), id="leg-right", stroke="red", stroke_width="3")
    _line(g, pt(pose.hip), pt(pose.left_hand), id="arm-left", stroke="green", stroke_width="3")
    _line(g, pt(pose.hip), pt(pose.right_hand), id="arm-right", stroke="green", stroke_width="3")
    _line(g, pt(pose.left_hand), pt(pose.right_hand), id="hands", stroke="gray",
          stroke_width="1", stroke_dasharray="4 2")
    _el(g, "circle", id="indicator", cx=_num(pose.indicator.real),
        cy=_num(pose.indicator.imag), r=_num(span / 60), fill="red")
    return _serialize(svg)


def render_svg(model, *args) -> str:
    """Dispatch on the model: ``TreeCalc`` with optional (a, b), ``Linkage`` with x."""
    if isinstance(model, TreeCalc):
        return tree_svg(model, *args)
    if isinstance(model, Linkage):
        return linkage_svg(model, *args)
    raise TypeError(f"cannot render {type(model).__name__}")
