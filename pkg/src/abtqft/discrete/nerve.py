"""Cech-Deligne 1-cocycle data on finite covers of a cell complex.

Local data for a circle bundle with connection: transition values on
double-overlap vertices and real 1-cochains per chart.  The validator
reports every violated triple condition (cocycle identity on triple
overlaps) and every violated overlap edge condition (the local forms
must differ by the discrete log-derivative of the transition), with the
violation magnitudes.
"""

from __future__ import annotations

from ..analytic import wrap_unit, wrap_half, circle_distance


class NerveCocycle:
    """Finite-cover local data on a base complex.

    charts: {name: {"vertices": [...], "edges": [...]}} subcomplex index
    sets; transitions: {(alpha, beta): {vertex: turn}} circle values per
    double-overlap vertex (antisymmetric pairs are filled in); forms:
    {alpha: {edge: real}} local connection 1-cochains.
    """

    def __init__(self, complex, charts, transitions, forms=None):
        self.complex = complex
        self.charts = {
            name: {"vertices": sorted(set(spec.get("vertices", []))),
                   "edges": sorted(set(spec.get("edges", [])))}
            for name, spec in charts.items()}
        for name, spec in self.charts.items():
            for v in spec["vertices"]:
                if not (0 <= v < complex.n_cells[0]):
                    raise ValueError(f"chart {name}: no vertex {v}")
            for e in spec["edges"]:
                if not (0 <= e < complex.n_cells[1]):
                    raise ValueError(f"chart {name}: no edge {e}")
                t, h = complex.edge_endpoints(e)
                if t not in spec["vertices"] or h not in spec["vertices"]:
                    raise ValueError(
                        f"chart {name}: edge {e} leaves the chart")
        self.transitions = {}
        for (a, b), values in transitions.items():
            vals = {int(v): wrap_unit(t) for v, t in values.items()}
            self.transitions[(a, b)] = vals
            other = transitions.get((b, a))
            if other is None:
                self.transitions[(b, a)] = {
                    v: wrap_unit(-t) for v, t in vals.items()}
        self.forms = {a: {int(e): float(x) for e, x in f.items()}
                      for a, f in (forms or {}).items()}

    def overlap_vertices(self, a, b):
        return [v for v in self.charts[a]["vertices"]
                if v in set(self.charts[b]["vertices"])]

    def overlap_edges(self, a, b):
        eb = set(self.charts[b]["edges"])
        return [e for e in self.charts[a]["edges"] if e in eb]

    def transition_at(self, a, b, v):
        table = self.transitions.get((a, b))
        if table is None or v not in table:
            raise KeyError(f"transition ({a},{b}) undefined at vertex {v}")
        return table[v]

    def form_at(self, a, e):
        return self.forms.get(a, {}).get(e, 0.0)


def validate_nerve_cocycle(cocycle, tol=1e-9):
    """Check all antisymmetry, triple-overlap and overlap-form conditions.

    Returns a report object; an empty report is valid Deligne 1-cocycle
    data.  Violations carry their locus and magnitude.
    """
    report = NerveReport()
    names = sorted(cocycle.charts)

    for (a, b) in sorted(cocycle.transitions):
        for v, t in sorted(cocycle.transitions[(a, b)].items()):
            back = cocycle.transitions.get((b, a), {}).get(v)
            if back is None:
                report.add("antisymmetry", (a, b, v), float("inf"))
                continue
            gap = circle_distance(t, -back)
            if gap > tol:
                report.add("antisymmetry", (a, b, v), gap)

    for i, a in enumerate(names):
        for b in names[i + 1:]:
            if (a, b) not in cocycle.transitions:
                continue
            for c in names:
                if c in (a, b):
                    continue
                if (b, c) not in cocycle.transitions:
                    continue
                if (c, a) not in cocycle.transitions:
                    continue
                common = (set(cocycle.overlap_vertices(a, b))
                          & set(cocycle.charts[c]["vertices"]))
                for v in sorted(common):
                    total = (cocycle.transition_at(a, b, v)
                             + cocycle.transition_at(b, c, v)
                             + cocycle.transition_at(c, a, v))
                    gap = circle_distance(total, 0.0)
                    if gap > tol:
                        report.add("triple", (a, b, c, v), gap)

    for (a, b) in sorted(cocycle.transitions):
        table = cocycle.transitions[(a, b)]
        for e in cocycle.overlap_edges(a, b):
            tail, head = cocycle.complex.edge_endpoints(e)
            if tail not in table or head not in table:
                continue
            dlog = wrap_half(table[head] - table[tail])
            gap = circle_distance(
                cocycle.form_at(b, e) - cocycle.form_at(a, e), dlog)
            if gap > tol:
                report.add("overlap-form", (a, b, e), gap)

    return report


class NerveReport:
    def __init__(self):
        self.violations = []

    def add(self, kind, where, magnitude):
        self.violations.append((kind, where, magnitude))

    @property
    def valid(self):
        return not self.violations

    def of_kind(self, kind):
        return [v for v in self.violations if v[0] == kind]

    def __repr__(self):
        if self.valid:
            return "NerveReport(valid)"
        return f"NerveReport({len(self.violations)} violations)"


def transition_winding(cocycle, a, b, loop):
    """Winding number of the (a, b) transition around an edge loop.

    Sums principal increments along the loop; the loop must stay inside
    the double overlap.  For a two-chart circle this is the degree of the
    glued bundle (the first Chern number of the clutching construction).
    """
    table = cocycle.transitions.get((a, b))
    if table is None:
        raise KeyError(f"no transition ({a}, {b})")
    total = 0.0
    cx = cocycle.complex
    vec = cx.chain_vector(1, loop)
    if any(cx.boundary_of(1, vec)):
        raise ValueError("winding needs a closed loop")
    for e, sign in loop:
        tail, head = cx.edge_endpoints(e)
        if sign == -1:
            tail, head = head, tail
        if tail not in table or head not in table:
            raise KeyError(f"loop edge {e} leaves the ({a},{b}) overlap")
        total += wrap_half(table[head] - table[tail])
    winding = round(total)
    if abs(total - winding) > 1e-9:
        raise ValueError(f"non-integral winding {total}")
    return int(winding)
