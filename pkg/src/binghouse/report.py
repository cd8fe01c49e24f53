"""Gate suites for the two houses and the JSON verification report."""

from __future__ import annotations

import json
import multiprocessing
import time
from dataclasses import dataclass, field
from functools import cached_property

from . import __version__
from .collapse import free_faces, replay
from .complex import (coherent_orientation, euler_characteristic, is_closed_pseudomanifold,
                      is_isomorphism, SimplicialMap, validate)
from .constructions import boundary_census, checksums, load_house2d, load_y3, subassembly
from .cylinder import boundary_of_cylinder, mapping_cylinder
from .homology import Z2, homology
from .immersion import (DegenerateMap, QUADRUPLE, SheetChain, TRIPLE, additivity_check, cycle_witness,
                        is_pl_immersion, local_model_census, multiplicity, pushforward_mod2,
                        semicontinuity_violations, z2_cycle_test)
from .presentation import edge_path_presentation, is_certified_trivial, tietze_simplify

PASS, FAIL, INCONCLUSIVE, ERROR = "pass", "fail", "inconclusive", "error"


@dataclass
class CheckResult:
    id: str
    verdict: str
    witness: object = None
    timing: float | None = None

    def as_dict(self, timings: bool) -> dict:
        d = {"id": self.id, "verdict": self.verdict}
        if self.witness is not None:
            d["witness"] = self.witness
        if timings and self.timing is not None:
            d["timing_s"] = round(self.timing, 3)
        return d


@dataclass
class VerificationReport:
    target: str
    checks: list = field(default_factory=list)
    data_checksums: dict = field(default_factory=dict)
    seed: int = 0

    @property
    def ok(self) -> bool:
        return all(c.verdict == PASS for c in self.checks)

    def to_json(self, timings: bool = False) -> str:
        data = {"target": self.target, "version": __version__, "seed": self.seed,
                "data_checksums": self.data_checksums,
                "checks": [c.as_dict(timings) for c in self.checks],
                "summary": {v: sum(c.verdict == v for c in self.checks)
                            for v in (PASS, FAIL, INCONCLUSIVE, ERROR)}}
        return json.dumps(data, indent=2, sort_keys=True, default=_jsonable) + "\n"


def _jsonable(x):
    if isinstance(x, (set, frozenset, tuple)):
        return sorted(x) if isinstance(x, (set, frozenset)) else list(x)
    return str(x)


def _verdict(ok, witness=None):
    return (PASS if ok else FAIL), witness


# -- shared check bodies -------------------------------------------------------------

def _contractible(K, coeffs="Z"):
    h = homology(K, coeffs)
    return _verdict(h.reduced_is_zero(), h.as_dict())


def _pi1_trivial(K, budget):
    P = tietze_simplify(edge_path_presentation(K), budget=budget)
    witness = {"status": P.status, "steps": P.steps, "budget": budget,
               "generators_left": len(P.generators), "relators_left": len(P.relators)}
    if is_certified_trivial(P):
        return PASS, witness
    return (INCONCLUSIVE if P.status != "trivial" else FAIL), witness


def _immersion(f):
    try:
        r = is_pl_immersion(f)
    except DegenerateMap as e:
        return ERROR, str(e)
    return _verdict(r.ok, r.witness)


def _multiplicity_two(f):
    m = multiplicity(f)
    covered = set(m.m) == set(f.target.top_simplices)
    return _verdict(covered and m.is_constant(2), {"histogram": m.histogram()})


def _ones_not_cycle(f):
    c = SheetChain.ones(f.target)
    is_cycle = z2_cycle_test(f.target, c)
    face = cycle_witness(c)
    sheets = len(f.target.cofaces(len(face)).get(face, ())) if face else 0
    return _verdict(not is_cycle, {"boundary_face": face, "sheets_at_face": sheets})


def _m_chain_cycle(f):
    m = multiplicity(f)
    ok, bad = additivity_check(f, m)
    cyc = z2_cycle_test(f.target, SheetChain.from_multiplicity(m))
    empty = not pushforward_mod2(f)
    return _verdict(ok and cyc and empty, {"additivity": ok, "z2_cycle": cyc, "pushforward_zero": empty})


class _Cylinder:
    """Lazily built mapping cylinder with its checks."""

    def __init__(self, f, seed, budget):
        self.f, self.seed, self.budget = f, seed, budget

    @cached_property
    def C(self):
        return mapping_cylinder(self.f, seed=self.seed)

    def homology(self):
        return _contractible(self.C.total)

    def pi1(self):
        return _pi1_trivial(self.C.total, self.budget)

    def collapse(self):
        C = self.C
        residue = replay(C.total, C.collapse.steps)
        ok = set(residue.all_simplices()) == set(C.base.all_simplices())
        return _verdict(ok, {"moves": len(C.collapse), "residue_f": residue.f_vector(),
                             "base_f": C.base.f_vector()})

    def top(self):
        C = self.C
        top = boundary_of_cylinder(C)
        inc = SimplicialMap(self.f.source, top, C.top_inclusion.vertex_map)
        return _verdict(is_isomorphism(inc), {"top_f": top.f_vector()})


# -- suites ----------------------------------------------------------------------------

class House2DSuite:
    target = "house2d"
    data_files = ["house2d.json"]

    def __init__(self, data_dir=None, seed=0):
        self.data_dir, self.seed = data_dir, seed

    @cached_property
    def h(self):
        return load_house2d(self.data_dir)

    @cached_property
    def cyl(self):
        return _Cylinder(self.h.f, self.seed, 100_000)

    def checks(self):
        X = lambda: self.h.X
        f = lambda: self.h.f
        S = lambda: self.h.f.source
        return [
            ("house2d.X.valid", lambda: _verdict(validate(X()).ok)),
            ("house2d.X.homology_Z", lambda: _contractible(X())),
            ("house2d.X.homology_Z2", lambda: _contractible(X(), Z2)),
            ("house2d.X.pi1_trivial", lambda: _pi1_trivial(X(), 10_000)),
            ("house2d.X.no_free_faces", lambda: _verdict(not free_faces(X()), {"free_faces": len(free_faces(X()))})),
            ("house2d.sphere.is_S2", lambda: self._sphere(S())),
            ("house2d.f.simplicial", lambda: _verdict(f().is_simplicial() and f().is_nondegenerate())),
            ("house2d.f.immersion", lambda: _immersion(f())),
            ("house2d.f.multiplicity_2", lambda: _multiplicity_two(f())),
            ("house2d.f.semicontinuity", lambda: _verdict(not semicontinuity_violations(f()))),
            ("house2d.sheets.ones_not_cycle", lambda: _ones_not_cycle(f())),
            ("house2d.sheets.m_chain_cycle", lambda: _m_chain_cycle(f())),
            ("house2d.census", lambda: self._census()),
            ("house2d.cylinder.homology", lambda: self.cyl.homology()),
            ("house2d.cylinder.pi1_trivial", lambda: self.cyl.pi1()),
            ("house2d.cylinder.collapse_to_base", lambda: self.cyl.collapse()),
            ("house2d.cylinder.top_is_source", lambda: self.cyl.top()),
        ]

    @staticmethod
    def _sphere(S):
        rep = is_closed_pseudomanifold(S, 2)
        chi = euler_characteristic(S)
        orientable = coherent_orientation(S) is not None
        return _verdict(bool(rep) and S.is_connected() and orientable and chi == 2,
                        {"euler": chi, "orientable": orientable, "closed": bool(rep)})

    def _census(self):
        c = local_model_census(self.h.X)
        return _verdict(c.counts[TRIPLE] > 0, c.as_dict())


# regression values for the shipped Y3 data
Y3_CENSUS = {"sheet": 3013, "triple": 622, "quadruple": 32}


class Y3Suite:
    target = "y3"
    data_files = ["y3.json"]

    def __init__(self, data_dir=None, seed=0):
        self.data_dir, self.seed = data_dir, seed

    @cached_property
    def y(self):
        return load_y3(self.data_dir)

    @cached_property
    def cyl(self):
        return _Cylinder(self.y.f, self.seed, self.y.budgets["pi1_cylinder"])

    def checks(self):
        y = lambda: self.y
        out = [("y3.build", lambda: _verdict(True, {"Y_f": y().Y.f_vector(), "M_f": y().M.f_vector()}))]
        for label in ["1", "2", "3", "4", "5", "6-", "6+", "7", "8"]:
            out.append((f"y3.piece.{label}", lambda l=label: self._piece(l)))
        for a, b in [("1", "2"), ("4", "5"), ("7", "8"), ("6+", "6-")]:
            out.append((f"y3.mirror.{a}~{b}", lambda a=a, b=b: _verdict(y().inventory.mirror_isomorphic(a, b))))
        out += [
            ("y3.plan.copies", lambda: self._copies()),
            ("y3.Y.homology_Z", lambda: _contractible(y().Y)),
            ("y3.Y.homology_Z2", lambda: _contractible(y().Y, Z2)),
            ("y3.Y.pi1_trivial", lambda: _pi1_trivial(y().Y, y().budgets["pi1_Y"])),
            ("y3.Y.no_free_faces", lambda: _verdict(not free_faces(y().Y))),
            ("y3.M.closed_manifold", lambda: self._closed(y().M)),
            ("y3.M.homology_Z", lambda: self._sphere_homology(y().M)),
            ("y3.M.pi1_trivial", lambda: _pi1_trivial(y().M, y().budgets["pi1_M"])),
            ("y3.f.simplicial", lambda: _verdict(y().f.is_simplicial() and y().f.is_nondegenerate())),
            ("y3.f.immersion", lambda: _immersion(y().f)),
            ("y3.f.multiplicity_2", lambda: _multiplicity_two(y().f)),
            ("y3.f.semicontinuity", lambda: _verdict(not semicontinuity_violations(y().f))),
            ("y3.sheets.ones_not_cycle", lambda: _ones_not_cycle(y().f)),
            ("y3.sheets.m_chain_cycle", lambda: _m_chain_cycle(y().f)),
            ("y3.census", lambda: self._census()),
            ("y3.chamber.L_solid_torus", lambda: self._solid_torus("L")),
            ("y3.chamber.U_solid_torus", lambda: self._solid_torus("U")),
            ("y3.central.boundary_S1xS2_sum", lambda: self._central()),
            ("y3.cylinder.homology", lambda: self.cyl.homology()),
            ("y3.cylinder.pi1_trivial", lambda: self.cyl.pi1()),
            ("y3.cylinder.collapse_to_base", lambda: self.cyl.collapse()),
            ("y3.cylinder.top_is_source", lambda: self.cyl.top()),
        ]
        return out

    def _piece(self, label):
        r = self.y.inventory.check(label)
        return _verdict(r["ok"], {k: r[k] for k in ("betti", "boundary_genera")})

    def _copies(self):
        plan = self.y.plan
        bad = []
        for c in plan.copy_order:
            g = plan.copy_map(c)
            tops = [g.image(s) for s in g.source.top_simplices]
            if not g.is_nondegenerate() or sorted(tops) != g.target.top_simplices:
                bad.append(c)
        return _verdict(not bad, {"copies": len(plan.copy_order), "failing": bad})

    @staticmethod
    def _closed(M):
        rep = is_closed_pseudomanifold(M, 3, check_links=True)
        return _verdict(bool(rep), None if rep else {"reason": rep.reason, "at": rep.witness})

    @staticmethod
    def _sphere_homology(M):
        h = homology(M)
        return _verdict(h.betti == [1, 0, 0, 1] and not any(h.torsion), h.as_dict())

    def _census(self):
        c = local_model_census(self.y.Y).as_dict()
        ok = c[TRIPLE] > 0 and c[QUADRUPLE] > 0 and c == Y3_CENSUS
        return _verdict(ok, c)

    def _solid_torus(self, name):
        K = subassembly(self.y.plan.chambers[name], self.y.plan)
        h = homology(K)
        census = boundary_census(K)
        ok = h.betti == [1, 1, 0, 0] and not any(h.torsion) and census == [1]
        return _verdict(ok, {"betti": h.betti, "boundary_genera": census})

    def _central(self):
        K = subassembly(["1", "2", "6-", "6+"], self.y.plan, fill=["a", "b"])
        closed = bool(is_closed_pseudomanifold(K, 3))
        h = homology(K)
        return _verdict(closed and h.betti == [1, 2, 2, 1] and not any(h.torsion),
                        {"betti": h.betti, "closed": closed})


SUITES = {"house2d": House2DSuite, "y3": Y3Suite}

_ACTIVE = None  # suite shared with forked workers


def _run_one(item):
    cid, fn = item
    t = time.perf_counter()
    try:
        verdict, witness = fn()
    except Exception as e:  # a crashing check is an error verdict, not a crash
        verdict, witness = ERROR, f"{type(e).__name__}: {e}"
    return CheckResult(cid, verdict, witness, time.perf_counter() - t)


def _run_index(i):
    return _run_one(_ACTIVE.checks()[i])


def run_suite(target: str, data_dir=None, seed: int = 0, jobs: int = 1, only=None) -> VerificationReport:
    """Run every gate of a suite; ordering of results is the suite's order."""
    global _ACTIVE
    suite = SUITES[target](data_dir, seed)
    sums = checksums(data_dir)
    report = VerificationReport(target, data_checksums={k: sums.get(k) for k in suite.data_files}, seed=seed)
    # load (and checksum) the data before any gate runs, so corrupt data is a
    # hard error rather than a column of failed checks
    suite.h if target == "house2d" else suite.y
    items = suite.checks()
    idx = [i for i, (cid, _) in enumerate(items) if not only or any(cid.startswith(p) for p in only)]
    if jobs > 1 and len(idx) > 1:
        _ACTIVE = suite
        ctx = multiprocessing.get_context("fork")
        with ctx.Pool(jobs) as pool:
            results = pool.map(_run_index, idx, chunksize=1)
        _ACTIVE = None
    else:
        results = [_run_one(items[i]) for i in idx]
    report.checks = results
    return report
