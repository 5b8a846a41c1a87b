"""
Static SVG figures of closed-loop runs and of training progress.

One polyline per vessel track, dashed lines for the waypoint legs, squares
for waypoints, circles for obstacles and, for moving obstacles, a line from
the start position to where the obstacle was when the run ended. The global
Y axis points up in the figure.
"""

import math
from pathlib import Path
from typing import Dict, Iterable, List, Sequence, Tuple, Union

from lxml import etree

from ..env.episodes import EpisodeSpec
from ..utils.logger import get_cli_logger

logger = get_cli_logger()

SVG_NS = "http://www.w3.org/2000/svg"
PX_PER_L = 20.0
MARGIN = 2.0
WAYPOINT_SIZE = 0.4
TRACK_COLORS = ("#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e")

Track = Sequence[Tuple[float, float]]


def _num(value: float) -> str:
    return f"{value:.4f}"


def _bounds(tracks: Iterable[Track], spec: EpisodeSpec, t_end: float) -> Tuple[float, float, float, float]:
    xs: List[float] = []
    ys: List[float] = []
    for track in tracks:
        xs.extend(p[0] for p in track)
        ys.extend(p[1] for p in track)
    for x, y in spec.waypoints:
        xs.append(x)
        ys.append(y)
    for o in spec.obstacles:
        for t in (0.0, t_end):
            x, y = o.position_at(t)
            xs.extend((x - o.radius, x + o.radius))
            ys.extend((y - o.radius, y + o.radius))
    return min(xs) - MARGIN, min(ys) - MARGIN, max(xs) + MARGIN, max(ys) + MARGIN


def trajectory_svg(tracks: Sequence[Track], spec: EpisodeSpec, t_end: float = 0.0,
                   title: str = "") -> etree._Element:
    """
    Build the SVG tree for one scenario.

    Args:
        tracks: Vessel tracks as (x, y) sequences in units of L
        spec: Scenario drawn underneath the tracks
        t_end: Time at which moving obstacles are drawn a second time
        title: Optional figure title
    """
    x0, y0, x1, y1 = _bounds(tracks, spec, t_end)
    width, height = x1 - x0, y1 - y0

    root = etree.Element(f"{{{SVG_NS}}}svg", nsmap={None: SVG_NS})
    root.set("version", "1.1")
    root.set("width", _num(width * PX_PER_L))
    root.set("height", _num(height * PX_PER_L))
    # flip y so that +Y (port of the initial heading) is up
    root.set("viewBox", f"{_num(x0)} {_num(-y1)} {_num(width)} {_num(height)}")
    if title:
        etree.SubElement(root, f"{{{SVG_NS}}}title").text = title

    legs = etree.SubElement(root, f"{{{SVG_NS}}}g", {"class": "legs", "stroke": "#888888",
                                                     "stroke-width": "0.05", "stroke-dasharray": "0.3 0.2"})
    for i in range(spec.n_legs):
        (ax, ay), (bx, by) = spec.leg(i)
        etree.SubElement(legs, f"{{{SVG_NS}}}line", {"x1": _num(ax), "y1": _num(-ay),
                                                      "x2": _num(bx), "y2": _num(-by)})

    waypoints = etree.SubElement(root, f"{{{SVG_NS}}}g", {"class": "waypoints", "fill": "#333333"})
    for x, y in spec.waypoints:
        half = WAYPOINT_SIZE / 2
        etree.SubElement(waypoints, f"{{{SVG_NS}}}rect", {
            "x": _num(x - half), "y": _num(-y - half),
            "width": _num(WAYPOINT_SIZE), "height": _num(WAYPOINT_SIZE),
        })

    obstacles = etree.SubElement(root, f"{{{SVG_NS}}}g", {"class": "obstacles", "fill": "#bbbbbb",
                                                          "fill-opacity": "0.6", "stroke": "#444444",
                                                          "stroke-width": "0.04"})
    for o in spec.obstacles:
        etree.SubElement(obstacles, f"{{{SVG_NS}}}circle", {
            "cx": _num(o.x), "cy": _num(-o.y), "r": _num(o.radius), "data-id": str(o.id),
        })
        if not o.is_static and t_end > 0.0:
            ex, ey = o.position_at(t_end)
            etree.SubElement(obstacles, f"{{{SVG_NS}}}line", {
                "class": "obstacle-path", "x1": _num(o.x), "y1": _num(-o.y),
                "x2": _num(ex), "y2": _num(-ey), "stroke-dasharray": "0.1 0.1",
            })
            etree.SubElement(obstacles, f"{{{SVG_NS}}}circle", {
                "cx": _num(ex), "cy": _num(-ey), "r": _num(o.radius), "data-id": str(o.id),
                "fill-opacity": "0.3",
            })

    for i, track in enumerate(tracks):
        etree.SubElement(root, f"{{{SVG_NS}}}polyline", {
            "class": "track",
            "fill": "none",
            "stroke": TRACK_COLORS[i % len(TRACK_COLORS)],
            "stroke-width": "0.08",
            "points": " ".join(f"{_num(x)},{_num(-y)}" for x, y in track),
        })
    return root


def write_trajectory_svg(path: Union[str, Path], tracks: Sequence[Track], spec: EpisodeSpec,
                         t_end: float = 0.0, title: str = "") -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    tree = etree.ElementTree(trajectory_svg(tracks, spec, t_end, title))
    tree.write(str(path), xml_declaration=True, encoding="utf-8", pretty_print=True)
    logger.info(f"Wrote plot to {path}")
    return path


def tracks_from_rows(rows_per_episode: Iterable[Sequence[Dict[str, float]]]) -> List[Track]:
    return [[(row["x"], row["y"]) for row in rows] for rows in rows_per_episode]


CURVE_WIDTH = 600.0
PANEL_HEIGHT = 200.0
PANEL_GAP = 40.0
LABEL_SIZE = "12"


def _series(records: Sequence[Dict], key: str) -> List[Tuple[int, float]]:
    points = [(i, r.get(key)) for i, r in enumerate(records)]
    return [(i, float(v)) for i, v in points if v is not None and math.isfinite(v)]


def _curve_panel(root: etree._Element, top: float, label: str, n_episodes: int,
                 series: Sequence[Tuple[str, List[Tuple[int, float]], str]]) -> None:
    panel = etree.SubElement(root, f"{{{SVG_NS}}}g", {"class": f"panel {label}",
                                                      "transform": f"translate(0,{_num(top)})"})
    etree.SubElement(panel, f"{{{SVG_NS}}}rect", {"x": "0", "y": "0", "width": _num(CURVE_WIDTH),
                                                  "height": _num(PANEL_HEIGHT), "fill": "none",
                                                  "stroke": "#888888"})
    etree.SubElement(panel, f"{{{SVG_NS}}}text", {"x": "4", "y": "14", "font-size": LABEL_SIZE}).text = label

    values = [v for _, points, _ in series for _, v in points]
    lo, hi = (min(values), max(values)) if values else (0.0, 1.0)
    if hi == lo:
        hi = lo + 1.0
    span = max(n_episodes - 1, 1)
    for value, y in ((hi, 12.0), (lo, PANEL_HEIGHT - 2.0)):
        etree.SubElement(panel, f"{{{SVG_NS}}}text", {
            "x": _num(CURVE_WIDTH + 4.0), "y": _num(y), "font-size": LABEL_SIZE, "class": "tick",
        }).text = f"{value:.3g}"

    for cls, points, color in series:
        etree.SubElement(panel, f"{{{SVG_NS}}}polyline", {
            "class": cls,
            "fill": "none",
            "stroke": color,
            "stroke-width": "1",
            "points": " ".join(f"{_num(CURVE_WIDTH * i / span)},{_num(PANEL_HEIGHT * (hi - v) / (hi - lo))}"
                               for i, v in points),
        })


def training_curve_svg(records: Sequence[Dict], title: str = "") -> etree._Element:
    """
    Returns and loss per training episode.

    The upper panel shows every episode return and the moving average logged with
    it, the lower panel the mean TD loss of the episode (episodes without an update
    are left out).
    """
    root = etree.Element(f"{{{SVG_NS}}}svg", nsmap={None: SVG_NS})
    width = CURVE_WIDTH + 60.0
    height = 2 * PANEL_HEIGHT + 2 * PANEL_GAP
    root.set("version", "1.1")
    root.set("width", _num(width))
    root.set("height", _num(height))
    root.set("viewBox", f"-10 {_num(-PANEL_GAP)} {_num(width)} {_num(height)}")
    if title:
        etree.SubElement(root, f"{{{SVG_NS}}}title").text = title

    n = len(records)
    _curve_panel(root, 0.0, "return", n, [
        ("return", _series(records, "return"), "#9ecae1"),
        ("moving-average", _series(records, "moving_average"), TRACK_COLORS[0]),
    ])
    _curve_panel(root, PANEL_HEIGHT + PANEL_GAP, "loss", n, [
        ("loss", _series(records, "loss"), TRACK_COLORS[1]),
    ])
    return root


def write_training_curve_svg(path: Union[str, Path], records: Sequence[Dict], title: str = "") -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    etree.ElementTree(training_curve_svg(records, title)).write(
        str(path), xml_declaration=True, encoding="utf-8", pretty_print=True)
    logger.info(f"Wrote training curves to {path}")
    return path
