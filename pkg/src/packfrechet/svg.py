"""SVG picture of an exploration: explored cells and the reachable frontier."""

from __future__ import annotations

_MAX_BUCKETS = 400


def render_exploration(result, n_cells, m_cells, title=""):
    """Render ``result.cells`` (from ``keep_cells=True``) on an ``n_cells x m_cells`` grid.

    Large grids are bucketed so the picture stays at most 400 boxes wide.
    A cell belongs to the frontier when its right or top neighbour was not
    explored.
    """
    cells = result.cells or {}
    scale = max(1, -(-max(n_cells, m_cells) // _MAX_BUCKETS))
    bw = -(-n_cells // scale)
    bh = -(-m_cells // scale)
    size = 4 if max(bw, bh) > 100 else 12
    explored = set()
    frontier = set()
    for i, j in cells:
        b = (i // scale, j // scale)
        explored.add(b)
        if (i + 1, j) not in cells or (i, j + 1) not in cells:
            frontier.add(b)

    width, height = bw * size, bh * size
    out = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width + 2}" '
        f'height="{height + 22}" viewBox="-1 -21 {width + 2} {height + 22}">',
        f'<text x="0" y="-6" font-size="12" font-family="monospace">{_escape(title)} '
        f"explored={result.cells_explored} goal={result.goal_reached} "
        f"timeout={result.budget_exceeded}</text>",
        f'<rect x="0" y="0" width="{width}" height="{height}" fill="white" stroke="black"/>',
    ]
    for bx, by in sorted(explored):
        color = "#e67e22" if (bx, by) in frontier else "#5dade2"
        # y grows upwards in parameter space
        y = height - (by + 1) * size
        out.append(f'<rect x="{bx * size}" y="{y}" width="{size}" height="{size}" fill="{color}"/>')
    out.append("</svg>")
    return "\n".join(out) + "\n"


def _escape(s):
    return s.replace("&", "&amp;").replace("<", "&lt;").replace(">", "&gt;")
