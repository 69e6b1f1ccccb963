import xml.etree.ElementTree as ET

import pytest

from hohoho.mechcalc import Linkage, TreeCalc, calibrated_linkage
from hohoho.svg import SVG_NS, linkage_svg, render_svg, tree_svg

NS = {"s": SVG_NS}


def parse(text):
    assert text.startswith("<?xml")
    return ET.fromstring(text)


def by_id(root, ident):
    found = [e for e in root.iter() if e.get("id") == ident]
    assert len(found) == 1, ident
    return found[0]


def test_tree_chord_hits_trunk_at_product():
    root = parse(tree_svg(TreeCalc(10), 5, 3))
    line = by_id(root, "lametta")
    x1, y1, x2, y2 = (float(line.get(k)) for k in ("x1", "y1", "x2", "y2"))
    assert (x1, y1, x2, y2) == (-5, 25, 3, 9)
    trunk = by_id(root, "trunk")
    assert float(trunk.get("x1")) == float(trunk.get("x2")) == 0
    crossing = y1 + (0 - x1) / (x2 - x1) * (y2 - y1)
    assert crossing == pytest.approx(15, abs=1e-9)
    assert float(by_id(root, "product").get("cy")) == pytest.approx(15, abs=1e-9)
    assert line.get("data-a") == "5.0" and line.get("data-b") == "3.0"


def test_tree_balls_lie_on_hull():
    root = parse(tree_svg(TreeCalc(6)))
    for v in range(1, 7):
        for side, sign in (("l", -1), ("r", 1)):
            c = by_id(root, f"ball-{side}{v}")
            assert float(c.get("cx")) == sign * v
            assert float(c.get("cy")) == v * v


def test_tree_without_chord():
    root = parse(tree_svg(TreeCalc(10)))
    ids = {e.get("id") for e in root.iter()}
    assert "lametta" not in ids and "product" not in ids
    assert {"hull", "trunk", "trunk-scale"} <= ids


def test_model_group_is_flipped():
    root = parse(tree_svg(TreeCalc(4), 1, 2))
    assert by_id(root, "model").get("transform") == "scale(1,-1)"


def test_linkage_rest_pose_indicator_at_origin():
    root = parse(linkage_svg(calibrated_linkage(), 0.0))
    ind = by_id(root, "indicator")
    assert float(ind.get("cx")) == pytest.approx(0, abs=1e-12)
    assert float(ind.get("cy")) == pytest.approx(0, abs=1e-12)


def test_linkage_indicator_follows_x():
    L = calibrated_linkage()
    root = parse(linkage_svg(L, 0.7))
    assert float(by_id(root, "indicator").get("cy")) == pytest.approx(0.7, abs=1e-9)
    for ident in ("baseline", "leg-left", "leg-right", "arm-left", "arm-right", "hands"):
        by_id(root, ident)


def test_render_dispatch():
    assert render_svg(TreeCalc(3)) == tree_svg(TreeCalc(3))
    L = Linkage(2, 1, 0.5)
    assert render_svg(L, 0.2) == linkage_svg(L, 0.2)
    with pytest.raises(TypeError):
        render_svg(42)
