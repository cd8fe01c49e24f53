"""Simplicial mapping cylinders of vertex maps, as models of regular neighbourhoods."""

from __future__ import annotations

from dataclasses import dataclass

from .collapse import CollapseSequence, greedy_collapse
from .complex import SimplicialComplex, SimplicialMap, is_closed_pseudomanifold


class NotSimplicial(ValueError):
    pass


class SourceNotClosed(ValueError):
    pass


@dataclass
class MappingCylinder:
    total: SimplicialComplex
    base_inclusion: SimplicialMap
    top_inclusion: SimplicialMap
    projection: SimplicialMap
    collapse: CollapseSequence
    f: SimplicialMap

    @property
    def base(self) -> SimplicialComplex:
        """The copy of the target inside the total complex."""
        return self.total.subcomplex(
            [self.base_inclusion.image(s) for s in self.base_inclusion.source.facets])


def mapping_cylinder(f: SimplicialMap, seed: int = 0) -> MappingCylinder:
    """Triangulate (source x [0,1] ⊔ target) / (x,1) ~ f(x).

    Source vertices come first in the vertex order and target vertices last;
    each ordered source simplex v0<...<vk contributes the simplices
    {v0..vi} ∪ {f(vi)..f(vk)}.  The collapse onto the base is found by
    greedy collapsing with the base held fixed.
    """
    bad = f.check_simplicial()
    if bad is not None:
        raise NotSimplicial(f"image of {bad} is not a simplex of the target")
    src, tgt = f.source, f.target
    src_ids = {v: i for i, v in enumerate(src.vertices)}
    off = len(src_ids)
    tgt_ids = {v: off + i for i, v in enumerate(tgt.vertices)}
    tops = [[tgt_ids[v] for v in s] for s in tgt.facets]
    for s in src.facets:
        for i in range(len(s)):
            simplex = [src_ids[v] for v in s[:i + 1]]
            simplex += sorted({tgt_ids[f(v)] for v in s[i:]})
            tops.append(simplex)
    tags = {src_ids[v]: "top" for v in src.vertices}
    tags.update({tgt_ids[v]: "base" for v in tgt.vertices})
    total = SimplicialComplex.from_facets(tops, tags=tags)
    base_inc = SimplicialMap(tgt, total, tgt_ids)
    top_inc = SimplicialMap(src, total, src_ids)
    inv_src = {i: v for v, i in src_ids.items()}
    inv_tgt = {i: v for v, i in tgt_ids.items()}
    proj = {i: f(v) for i, v in inv_src.items()}
    proj.update(inv_tgt)
    projection = SimplicialMap(total, tgt, proj)
    base = total.subcomplex([base_inc.image(s) for s in tgt.facets])
    seq = greedy_collapse(total, seed=seed, stop_at=base)
    return MappingCylinder(total, base_inc, top_inc, projection, seq, f)


def boundary_of_cylinder(C: MappingCylinder, require_closed: bool = True) -> SimplicialComplex:
    """The top copy of the source, tagged as the neighbourhood boundary.

    The top copy is the whole boundary only when the source is closed, so by
    default a source with boundary is refused; pass ``require_closed=False``
    to get the top copy anyway.
    """
    src = C.f.source
    if require_closed:
        report = is_closed_pseudomanifold(src, src.dim, check_links=False)
        if not report:
            raise SourceNotClosed(f"source is not a closed pseudomanifold: {report.reason} at {report.witness}")
    facets = [C.top_inclusion.image(s) for s in src.facets]
    top = SimplicialComplex.from_facets(facets)
    return SimplicialComplex(top.all_simplices(), tags={v: "∂N" for v in top.vertices})
