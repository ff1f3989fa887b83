"""SVG drawings of polygon orbits in an affine chart."""
import io
from typing import List, Optional, Sequence, Tuple

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402
import numpy as np  # noqa: E402

from .errors import BadArguments, ChartFailure  # noqa: E402
from .maps import MapSpec, iterate_map  # noqa: E402
from .polygon import TwistedPolygon  # noqa: E402

# (h, x, y): point (v_x / v_h, v_y / v_h)
DEFAULT_CHARTS = {2: (2, 0, 1), 3: (3, 0, 1)}

matplotlib.rcParams["svg.hashsalt"] = "pentagram"


def parse_chart(text: Optional[str], d: int) -> Tuple[int, int, int]:
    if d not in DEFAULT_CHARTS:
        raise BadArguments(f"plots need d in {{2, 3}}, got d={d}")
    if not text:
        return DEFAULT_CHARTS[d]
    try:
        chart = tuple(int(x) for x in text.split(","))
    except ValueError:
        raise BadArguments(f"chart must be 'h,x,y', got {text!r}")
    if len(chart) != 3 or len(set(chart)) != 3 or not all(0 <= i <= d for i in chart):
        raise BadArguments(f"chart needs three distinct coordinate indices in 0..{d}, got {text!r}")
    return chart


def chart_points(poly: TwistedPolygon, chart: Sequence[int]) -> np.ndarray:
    """One period of vertices as float (x, y) rows; rationals are exact up to this point."""
    h, x, y = chart
    rows = []
    for j, v in enumerate(poly.vertices):
        if v[h] == 0:
            raise ChartFailure(f"vertex {j} lies on the hyperplane at infinity of the chart", index=j)
        rows.append((float(v[x] / v[h]), float(v[y] / v[h])))
    return np.array(rows)


def orbit_points(
    poly: TwistedPolygon,
    spec: Optional[MapSpec],
    iterations: int,
    chart: Sequence[int],
    progress: bool = False,
) -> List[np.ndarray]:
    steps = [poly]
    if spec is not None and iterations > 0:
        _, steps = iterate_map(poly, spec, iterations, trace=True, progress=progress)
    points = []
    for step, p in enumerate(steps):
        try:
            points.append(chart_points(p, chart))
        except ChartFailure as exc:
            raise ChartFailure(f"iteration {step}: {exc.message}", index=exc.index, detail={"step": step})
    return points


def render_svg(points: List[np.ndarray], title: str = "") -> bytes:
    fig, ax = plt.subplots(figsize=(6, 6))
    cmap = plt.get_cmap("viridis")
    for i, xy in enumerate(points):
        closed = np.vstack([xy, xy[:1]])
        color = cmap(i / max(len(points) - 1, 1))
        ax.plot(closed[:, 0], closed[:, 1], "-o", color=color, markersize=3, label=f"T^{i}")
    ax.set_aspect("equal", adjustable="datalim")
    if title:
        ax.set_title(title)
    ax.legend(loc="best", fontsize="small")
    buffer = io.BytesIO()
    fig.savefig(buffer, format="svg", metadata={"Date": None})
    plt.close(fig)
    return buffer.getvalue()


def plot_orbit(
    poly: TwistedPolygon,
    spec: Optional[MapSpec] = None,
    iterations: int = 0,
    chart: Optional[str] = None,
    progress: bool = False,
) -> Tuple[bytes, List[int]]:
    """SVG bytes and the number of vertices drawn per iteration."""
    indices = parse_chart(chart, poly.d)
    points = orbit_points(poly, spec, iterations, indices, progress)
    title = f"d={poly.d}, n={poly.n}" + (f", {spec.variant}" if spec is not None else "")
    return render_svg(points, title), [len(xy) for xy in points]
