"""
atlas_plot.py — Plotly pictures of a chamber atlas

Draws the dominant lattice points of a z-grid coloured by chamber, with wall
and boundary points in grey and chamber witnesses as stars. Rank 2 gives a
flat scatter, rank 3 a 3D scatter.

Usage (as library):
    from atlas_plot import atlas_figure
    atlas_figure(atlas, radius=10).write_html("a3.html")

Created: 2026-10-11
"""

import logging
from itertools import product
from pathlib import Path

import plotly.graph_objects as go

from chambers import ChamberAtlas
from errors import ChamberError
from exact import primitive, rational_str
from multiplicity import zero_weight_dim

log = logging.getLogger(__name__)

WALL_COLOUR = "#9e9e9e"
PALETTE = [
    "#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd",
    "#8c564b", "#e377c2", "#17becf", "#bcbd22", "#7f7f7f",
]


def _point_groups(atlas: ChamberAtlas, radius: int, with_mu0: bool):
    rs = atlas.root_system
    groups: dict[str, dict[str, list]] = {}
    for z in product(range(radius + 1), repeat=rs.rank):
        signs = atlas.signs_at(z)
        interior = all(s != 0 for s in signs) and all(x > 0 for x in z)
        label = "".join("+" if s > 0 else "-" for s in signs) or "*"
        key = label if interior else "wall"
        text = f"z={z}<br>signs={''.join({1: '+', -1: '-', 0: '0'}[s] for s in signs)}"
        weight = rs.from_fundamental(z)
        if with_mu0 and weight.in_root_lattice():
            text += f"<br>mu0={zero_weight_dim(rs, weight)}"
        group = groups.setdefault(key, {"z": [], "text": []})
        group["z"].append(z)
        group["text"].append(text)
    return groups


def atlas_figure(atlas: ChamberAtlas, radius: int = 12, with_mu0: bool = False) -> go.Figure:
    """Figure of the atlas on the grid 0 <= z_i <= radius."""
    rank = atlas.root_system.rank
    if rank not in (2, 3):
        raise ChamberError(f"can only draw rank 2 or 3 atlases, {atlas.root_system.type} has rank {rank}")
    groups = _point_groups(atlas, radius, with_mu0)
    colours = {c.id: PALETTE[i % len(PALETTE)] for i, c in enumerate(atlas.chambers)}
    colours["wall"] = WALL_COLOUR

    fig = go.Figure()
    for key in [c.id for c in atlas.chambers] + ["wall"]:
        group = groups.get(key)
        if not group:
            continue
        coords = list(zip(*group["z"]))
        marker = dict(size=6 if rank == 2 else 3, color=colours[key])
        name = f"chamber {key}" if key != "wall" else "walls / boundary"
        if rank == 2:
            fig.add_trace(go.Scatter(
                x=coords[0], y=coords[1], mode="markers", marker=marker,
                name=name, text=group["text"], hoverinfo="text",
            ))
        else:
            fig.add_trace(go.Scatter3d(
                x=coords[0], y=coords[1], z=coords[2], mode="markers", marker=marker,
                name=name, text=group["text"], hoverinfo="text",
            ))

    witnesses = [primitive(c.witness) for c in atlas.chambers]
    labels = [
        f"witness {c.id}: ({', '.join(rational_str(x) for x in c.witness)})"
        for c in atlas.chambers
    ]
    star = dict(size=14 if rank == 2 else 6, symbol="star" if rank == 2 else "diamond", color="black")
    if rank == 2:
        fig.add_trace(go.Scatter(
            x=[w[0] for w in witnesses], y=[w[1] for w in witnesses], mode="markers",
            marker=star, name="witnesses", text=labels, hoverinfo="text",
        ))
        fig.update_layout(xaxis_title="z1", yaxis_title="z2")
    else:
        fig.add_trace(go.Scatter3d(
            x=[w[0] for w in witnesses], y=[w[1] for w in witnesses], z=[w[2] for w in witnesses],
            mode="markers", marker=star, name="witnesses", text=labels, hoverinfo="text",
        ))
        fig.update_layout(scene=dict(xaxis_title="z1", yaxis_title="z2", zaxis_title="z3"))

    fig.update_layout(
        title=f"{atlas.root_system.type}: {len(atlas.walls)} walls, {len(atlas.chambers)} chambers",
        plot_bgcolor="white",
        showlegend=True,
    )
    return fig


def write_atlas_html(atlas: ChamberAtlas, path: Path, radius: int = 12, with_mu0: bool = False) -> Path:
    fig = atlas_figure(atlas, radius=radius, with_mu0=with_mu0)
    fig.write_html(str(path))
    log.info("write_atlas_html: %s -> %s", atlas.root_system.type, path)
    return Path(path)
