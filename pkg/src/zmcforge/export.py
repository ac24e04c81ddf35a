"""File exports: surface meshes (OBJ + sidecar CSV) and convergence sweeps.

Meshes triangulate the height graph over a rectangular grid; vertices whose
(x, y) fall outside the field's domain are omitted and the touching quads
dropped.  The sidecar CSV carries, per surviving vertex, the height, the
residual of the field's tagged equation, and the causal character of the
graph (spacelike-plane rule for Euclidean/spacelike tags, timelike-plane
rule for soliton tags).

Sweeps tabulate (N, value, gap, tail_bound) rows for the arctangent-lattice
identity and the two infinite decompositions.
"""

from __future__ import annotations

import csv
from typing import Optional, Sequence

from . import decompositions as dec, series
from .catalog import get_field
from .errors import ConfigError, DomainError, ZmcForgeError
from .residuals import RESIDUAL_OF, causal_character_graph
from .suites import GridSpec

__all__ = ["sample_mesh", "sweep_convergence", "SWEEP_TARGETS"]

_GRAPH_KIND = {"MSE": "xy-graph", "ZMC": "xy-graph", "BIE": "yz-graph"}


def sample_mesh(surface_id: str, theta: Optional[float], grid: GridSpec,
                out_path: str, csv_path: Optional[str] = None,
                causal_tol: float = 1e-9) -> dict:
    """Write an OBJ mesh and a CSV of per-vertex diagnostics.

    Returns a small summary dict (vertex/face counts, worst residual).
    Raises DomainError when the whole grid misses the surface's domain.
    """
    hf = get_field(surface_id, theta=theta)
    residual = RESIDUAL_OF.get(hf.expected_pde)
    kind = _GRAPH_KIND.get(hf.expected_pde, "xy-graph")

    points = list(grid.points())
    index = {}
    vertices = []
    rows = []
    for (x, y) in points:
        if not hf.domain(x, y):
            continue
        try:
            j = hf.jet(x, y)
        except ZmcForgeError:
            continue
        res = residual(j) if residual else 0.0
        character = causal_character_graph(j, kind, tol=causal_tol).kind
        index[(x, y)] = len(vertices) + 1  # OBJ is 1-based
        vertices.append((x, y, j.v))
        rows.append((x, y, j.v, res, character))
    if not vertices:
        raise DomainError(f"grid lies entirely outside the domain of "
                          f"{surface_id!r}")

    faces = []
    for i in range(grid.nx - 1):
        for k in range(grid.ny - 1):
            quad = [points[i * grid.ny + k], points[i * grid.ny + k + 1],
                    points[(i + 1) * grid.ny + k + 1], points[(i + 1) * grid.ny + k]]
            if any(q not in index for q in quad):
                continue
            a, b, c, d = (index[q] for q in quad)
            faces.append((a, b, c))
            faces.append((a, c, d))

    with open(out_path, "w", encoding="utf-8") as fh:
        fh.write(f"# {surface_id} height graph\n")
        for (x, y, h) in vertices:
            fh.write(f"v {x:.17g} {y:.17g} {h:.17g}\n")
        for (a, b, c) in faces:
            fh.write(f"f {a} {b} {c}\n")

    csv_path = csv_path or (out_path.rsplit(".", 1)[0] + ".csv")
    with open(csv_path, "w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["x", "y", "height", "residual", "causal_character"])
        for row in rows:
            writer.writerow([f"{row[0]:.17g}", f"{row[1]:.17g}",
                             f"{row[2]:.17g}", f"{row[3]:.17g}", row[4]])

    worst = max(abs(r[3]) for r in rows)
    return {"surface": surface_id, "vertices": len(vertices),
            "faces": len(faces), "max_residual": worst,
            "obj": out_path, "csv": csv_path}


SWEEP_TARGETS = ("er", "thm3.1", "thm3.2")


def sweep_convergence(target: str, point: Sequence[float],
                      theta: Optional[float], n_list: Sequence[int],
                      out_path: str) -> list:
    """Write CSV rows (N, value, gap, tail_bound) for increasing N.

    ``point`` is (a, b) for the arctangent lattice, (x, y) for the
    spacelike decomposition, (y, z) for the soliton decomposition.
    """
    if not n_list:
        raise ConfigError("empty n_list")
    n_list = sorted(int(n) for n in n_list)
    if n_list[0] < 1:
        raise ConfigError("sweep needs N >= 1")
    a, b = point
    rows = []
    if target == "er":
        closed = series.er_closed(a, b)
        for n in n_list:
            ev = series.er_partial(a, b, n)
            rows.append((n, ev.value, abs(ev.value - closed), ev.tail_bound))
    elif target == "thm3.1":
        if theta is None:
            raise ConfigError("thm3.1 sweep needs --theta")
        closed = get_field("psi", theta=theta).value(a, b)
        for n in n_list:
            ev = dec.psi_infinite_rhs(a, b, theta, n)
            rows.append((n, ev.value, abs(ev.value - closed), ev.tail_bound))
    elif target == "thm3.2":
        if theta is None:
            raise ConfigError("thm3.2 sweep needs --theta")
        closed = get_field("chi", theta=theta).value(a, b)
        for n in n_list:
            ev = dec.chi_infinite_rhs(a, b, theta, n)
            rows.append((n, ev.value.real, abs(ev.value.real - closed),
                         ev.tail_bound))
    else:
        raise ConfigError(f"unknown sweep target {target!r}; "
                          f"known: {SWEEP_TARGETS}")

    with open(out_path, "w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["N", "value", "gap", "tail_bound"])
        for (n, value, gap, tail) in rows:
            writer.writerow([n, f"{value:.17g}", f"{gap:.17g}", f"{tail:.17g}"])
    return rows
