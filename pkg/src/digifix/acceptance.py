"""Acceptance suite: the computations the package must reproduce exactly.

Each criterion is a function that raises AssertionError on failure and
returns a one-line detail on success.  `digifix verify` prints the table;
tests/test_acceptance.py runs the same checks under pytest.  Runtime limits
are part of the criteria and are enforced.
"""

from __future__ import annotations

import io
import itertools
import random
import tempfile
import time
from dataclasses import dataclass
from pathlib import Path

from .generators import box, cube, cycle, fig_sexample, fig_xexample, interval, wedge_cycles_8
from .geometry import forced_fixed_points, fix_structure
from .homotopy import homotopy_class, homotopy_classes, is_rigid_image, is_rigid_map, one_step_homotopic
from .image import (DigitalImage, build_image, connected_components,
                    disjoint_union, explicit, is_connected, product, wedge)
from .lasso import lasso_rigidity_certificate, verify_lasso
from .search import context_for, exists_fix_count
from .selfmap import (SelfMap, box_fold_map, constant_map, cycle_map,
                      identity_map, rotation_180, vertical_reflection)
from .spectrum import (Spectrum, combine_spectra, enumerate_continuous_selfmaps,
                       fixed_point_spectrum, nminus1_criterion, pull_index)


def _expected_cycle_spectrum(n: int) -> set[int]:
    if n == 1:
        return {1}
    if n <= 4:
        return set(range(n + 1))
    return set(range(n // 2 + 2)) | {n}


def check_1_cycle_spectra():
    for n in range(1, 10):
        got = fixed_point_spectrum(cycle(n)).as_set()
        want = _expected_cycle_spectrum(n)
        assert got == want, f"F(C_{n}) = {sorted(got)}, expected {sorted(want)}"
    return "F(C_n) for n=1..9 matches the cycle spectrum formula"


def check_2_cycle_homotopy_spectra():
    # For odd n every map r_d o l has exactly one fixed point (2 is
    # invertible mod n), so S(l) = {1}; the stated {0,1} is an erratum.
    for n in range(5, 9):
        c = cycle(n)
        s_id = homotopy_class(identity_map(c)).fix_counts.as_set()
        assert s_id == {0, n}, f"S(id) on C_{n} = {sorted(s_id)}"
        s_c = homotopy_class(constant_map(c)).fix_counts.as_set()
        want_c = set(range(n // 2 + 2))
        assert s_c == want_c, f"S(c) on C_{n} = {sorted(s_c)}, expected {sorted(want_c)}"
        s_l = homotopy_class(cycle_map(n, "flip", 0, image=c)).fix_counts.as_set()
        want_l = {0, 2} if n % 2 == 0 else {1}
        assert s_l == want_l, f"S(l) on C_{n} = {sorted(s_l)}, expected {sorted(want_l)}"
    return ("S(id)={0,n}, S(c)={0..floor(n/2)+1}, S(l)={0,2} for even n; "
            "S(l)={1} for odd n (paper's {0,1} is an erratum, see ledger)")


def check_3_cycle_classes():
    for n in range(5, 8):
        c = cycle(n)
        classes = homotopy_classes(c)
        assert len(classes) == 3, f"C_{n}: {len(classes)} classes"
        rotations = {tuple((i + d) % n for i in range(n)) for d in range(n)}
        id_class = next(cl for cl in classes
                        if tuple(range(n)) in cl.members)
        assert id_class.members == rotations, f"class(id) on C_{n} is not the rotations"
    return "C_5..C_7 have exactly 3 classes; class(id) is exactly the rotations"


def check_4_interval_spectra():
    for k in range(1, 6):
        got = fixed_point_spectrum(interval(0, k)).as_set()
        assert got == set(range(k + 2)), f"F(interval(0,{k})) = {sorted(got)}"
    got = fixed_point_spectrum(interval(1, 3)).as_set()
    assert got == {0, 1, 2, 3}
    return "F([a,b]) = {0..b-a+1} for lengths 1..5"


def check_5_box_spectra():
    for a in (1, 2, 3):
        for b in (1, 2, 3):
            for u in (1, 2):
                img = box(a, b, u)
                got = fixed_point_spectrum(img).as_set()
                if a == b == 1:
                    # A 1x1 box is a single point: F = {1} (the one image
                    # with the fixed point property), not {0,1}.
                    assert got == {1}
                    continue
                assert got == set(range(a * b + 1)), \
                    f"F(box({a},{b},{u})) = {sorted(got)}"
                for t in range(b):
                    if t > 0 and a < 2:
                        continue  # the diagonal fold needs a second column
                    f_t = box_fold_map(img, t)
                    assert f_t.fix_count() == a * b - t
                    if u == 1:
                        assert f_t.is_continuous(), f"f_{t} not c_1-continuous ({a},{b})"
                    elif t <= 1:
                        assert f_t.is_continuous(), f"f_{t} not c_2-continuous ({a},{b})"
                    else:
                        # Paper erratum: the diagonal fold breaks c_2
                        # continuity once two points move (see ledger).
                        assert not f_t.is_continuous(), \
                            f"f_{t} unexpectedly c_2-continuous ({a},{b})"
    return ("F(box(a,b,u)) = {0..ab} for a,b<=3, u in {1,2}; fold family "
            "verified (c_1 all t; c_2 only t<=1, a paper erratum)")


def check_6_cube():
    got = fixed_point_spectrum(cube()).as_set()
    assert got == {0, 1, 2, 3, 4, 5, 6, 8}, f"F(cube) = {sorted(got)}"
    assert nminus1_criterion(cube()) is None, "cube has an (n-1) witness pair"
    return "F(cube) = {0,1,2,3,4,5,6,8} and 7 is excluded by the (n-1) criterion"


def check_7_rigidity():
    for img in (wedge_cycles_8(), fig_xexample(), fig_sexample()):
        assert is_rigid_image(img), f"{img.name} should be rigid"
    for a, b in ((0, 1), (0, 4), (2, 7)):
        assert not is_rigid_image(interval(a, b)), f"interval({a},{b}) rigid?"
    for n in range(2, 10):
        assert not is_rigid_image(cycle(n)), f"C_{n} rigid?"
    # Single points are vacuously rigid; the paper's non-rigidity
    # proposition assumes #X > 1 (criterion scoped accordingly, see ledger).
    assert is_rigid_image(cycle(1)) and is_rigid_image(interval(3, 3))
    rot = rotation_180(fig_xexample())
    assert rot.is_continuous() and rot.fix_count() == 0
    assert is_rigid_map(rot), "180-degree rotation should be a rigid map"
    s_rot = homotopy_class(rot).fix_counts.as_set()
    assert s_rot == {0}, f"S(rot180) = {sorted(s_rot)}"
    refl = vertical_reflection(fig_sexample())
    assert is_rigid_map(refl) and refl.fix_count() == 3
    return ("wedge_cycles_8 / fig_xexample / fig_sexample rigid; intervals and "
            "C_n (n>=2) non-rigid; rot180 rigid with S = {0}")


def check_8_lasso_certificates():
    for img in (fig_xexample(), fig_sexample()):
        cert = lasso_rigidity_certificate(img)
        assert cert.certified, f"{img.name} not certified: missing {cert.missing}"
        assert all(verify_lasso(img, l) for l in cert.lassos.values())
        assert is_rigid_image(img), f"certified but not rigid: {img.name}"
    # Sufficiency direction on non-rigid presets: never certified.
    for img in (interval(0, 3), cycle(8), box(3, 3, 1), box(2, 2, 2)):
        assert not lasso_rigidity_certificate(img).certified, img.name
    return "fig_xexample and fig_sexample certified; every lasso re-validates"


def check_9_sexample_spectrum():
    img = fig_sexample()
    got = fixed_point_spectrum(img).as_set()
    want = set(range(13)) | {15}
    assert got == want, f"F(fig_sexample) = {sorted(got)}"
    pulls = [pull_index(img, x) for x in range(img.n)]
    assert all(p >= 3 for p in pulls), f"pull indices {pulls}"
    # Prop: min P(x) >= 3 forces F(X) disjoint from {n-2, n-1} = {13, 14}.
    assert not (got & {13, 14})
    return f"F = {{0..12,15}}; pull indices {pulls} all >= 3"


def check_10_interval_pull():
    img = interval(1, 3)
    pulls = [pull_index(img, x) for x in range(3)]
    assert pulls == [1, 2, 1], f"P on [1,3] = {pulls}"
    return "P(1)=1, P(2)=2, P(3)=1 on the interval [1,3]"


# -- property suites (criterion 11) ----------------------------------------


def _small_pool(max_n: int) -> list[DigitalImage]:
    pool = [interval(0, k) for k in range(0, min(max_n, 7))]
    pool += [cycle(n) for n in range(1, max_n + 1)]
    pool += [box(2, 2, 1), box(2, 2, 2)]
    if max_n >= 6:
        pool += [box(2, 3, 1), box(3, 2, 2)]
    pool += [
        build_image(5, explicit([(0, 1), (0, 2), (0, 3), (0, 4)]), "star4"),
        build_image(5, explicit([(0, 1), (1, 2), (1, 3), (3, 4)]), "tree5"),
        build_image(4, explicit([(0, 1), (1, 2), (0, 2), (2, 3)]), "triangle_tail"),
        disjoint_union(interval(0, 1), interval(0, 1)),
        wedge(cycle(3), cycle(3), 0, 0),
    ]
    if max_n >= 7:
        pool += [wedge(cycle(4), interval(0, 3), 0, 0),
                 disjoint_union(cycle(3), interval(0, 2))]
    return [img for img in pool if img.n <= max_n]


def _connected_subset_masks(image: DigitalImage):
    """Connectivity of every nonempty vertex subset, as a lookup list."""
    n = image.n
    adj = image.adj
    connected = [False] * (1 << n)
    for s in range(1, 1 << n):
        low = s & -s
        seen = low
        frontier = low
        while frontier:
            grow = 0
            m = frontier
            while m:
                b = m & -m
                m ^= b
                grow |= adj[b.bit_length() - 1] & s & ~seen
            seen |= grow
            frontier = grow
        connected[s] = seen == s
    return connected


def check_11a_continuity_differential():
    checked = 0
    for image in _small_pool(6):
        n = image.n
        if n == 0:
            continue
        connected = _connected_subset_masks(image)
        subsets = [s for s in range(1, 1 << n) if connected[s] and s & (s - 1)]
        members = {s: [i for i in range(n) if (s >> i) & 1] for s in subsets}
        edges = image.edge_list()
        adj = image.adj
        for f in itertools.product(range(n), repeat=n):
            by_edges = all(f[i] == f[j] or (adj[f[i]] >> f[j]) & 1
                           for i, j in edges)
            by_subsets = True
            for s in subsets:
                img_mask = 0
                for i in members[s]:
                    img_mask |= 1 << f[i]
                if not connected[img_mask]:
                    by_subsets = False
                    break
            assert by_edges == by_subsets, (image.name, f)
            checked += 1
    return f"edge vs subset-connectedness continuity agreed on {checked} functions"


def _random_connected(rng, max_n=7):
    while True:
        n = rng.randint(2, max_n)
        p = rng.uniform(0.25, 0.7)
        edges = [(i, j) for i in range(n) for j in range(i + 1, n)
                 if rng.random() < p]
        img = build_image(n, explicit(edges), name=f"rand{n}")
        if is_connected(img):
            return img


def check_11b_nminus1_threeway():
    rng = random.Random(20260810)
    for trial in range(200):
        img = _random_connected(rng)
        n = img.n
        witness = nminus1_criterion(img)
        has_witness = witness is not None
        in_spectrum = exists_fix_count(context_for(img), n - 1)[0] is not None
        min_pull_one = any(pull_index(img, x) == 1 for x in range(n))
        assert has_witness == in_spectrum == min_pull_one, \
            (trial, img.edge_list(), has_witness, in_spectrum, min_pull_one)
    return "(n-1) in F(X) <=> witness pair <=> some P(x)=1, on 200 random graphs"


def check_11c_union_and_product():
    rng = random.Random(99173)
    pairs = [(cycle(3), cycle(3)), (cycle(5), interval(0, 2))]
    for _ in range(8):
        pairs.append((_random_connected(rng, 5), _random_connected(rng, 4)))
    for a, b in pairs:
        if a.n < 2 or b.n < 2:
            continue
        lhs = fixed_point_spectrum(disjoint_union(a, b))
        rhs = combine_spectra(fixed_point_spectrum(a), fixed_point_spectrum(b),
                              "oplus")
        assert lhs.values == rhs.values, (a.name, b.name, lhs, rhs)
    factor_sets = [
        [interval(0, 1), interval(0, 2)],
        [cycle(4), interval(0, 1)],
        [cycle(3), cycle(3)],
        [interval(0, 1), interval(0, 1), interval(0, 1)],
    ]
    for factors in factor_sets:
        prod = product(factors, len(factors))
        big = fixed_point_spectrum(prod).as_set()
        tensored = factors[0] and fixed_point_spectrum(factors[0])
        for extra in factors[1:]:
            tensored = combine_spectra(tensored, fixed_point_spectrum(extra),
                                       "otimes")
        assert tensored.as_set() <= big, (prod.name, tensored, sorted(big))
    return "F(A|_|B) = F(A)(+)F(B) and (x)F(X_i) inside F(NP_v product)"


def check_11d_cycle_fix_structure():
    total = 0
    for n in range(3, 10):
        c = cycle(n)
        seen = []
        enumerate_continuous_selfmaps(c, lambda m: seen.append(m) and None)
        for m in seen:
            st = fix_structure(m)  # raises on a refinement violation
            if st.kind == "disconnected":
                assert n % 2 == 0 and len(st.fixed) == 2
        total += len(seen)
    return f"Fix(f) connected or an even antipodal pair, over {total} cycle maps"


def check_11e_forced_fixed_points():
    from .geometry import _on_all_geodesics
    total = 0
    for image in _small_pool(7):
        if image.n == 0:
            continue
        memo = {}
        comp_of = {}
        for ci, comp in enumerate(connected_components(image)):
            for v in comp:
                comp_of[v] = ci
        maps = []
        enumerate_continuous_selfmaps(image, lambda m: maps.append(m.targets) and None)
        for idx, targets in enumerate(maps):
            fix = {i for i, t in enumerate(targets) if i == t}
            forced = set(fix)
            changed = True
            while changed:
                changed = False
                for p, q in itertools.combinations(sorted(forced), 2):
                    if comp_of[p] != comp_of[q]:
                        continue
                    if (p, q) not in memo:
                        memo[(p, q)] = _on_all_geodesics(image, p, q)
                    extra = memo[(p, q)]
                    if not extra <= forced:
                        forced |= extra
                        changed = True
            assert forced <= fix, (image.name, targets, sorted(forced - fix))
            if idx % 97 == 0:  # exercise the public operation too
                got, confirmed = forced_fixed_points(SelfMap(image, targets))
                assert confirmed and got == frozenset(forced)
            total += 1
    return f"geodesic-forced points are fixed for all {total} maps on the pool"


def check_11f_one_step_reduction():
    for image in _small_pool(5):
        if image.n == 0:
            continue
        maps = []
        enumerate_continuous_selfmaps(image, lambda m: maps.append(m) and None)
        index = {m.targets: i for i, m in enumerate(maps)}
        # Independent oracle: pairwise pointwise checks, no generation.
        neighbors = [[] for _ in maps]
        for i, f in enumerate(maps):
            for j in range(i + 1, len(maps)):
                if one_step_homotopic(f, maps[j]):
                    neighbors[i].append(j)
                    neighbors[j].append(i)
        comp = [-1] * len(maps)
        labels = 0
        for i in range(len(maps)):
            if comp[i] != -1:
                continue
            stack = [i]
            comp[i] = labels
            while stack:
                v = stack.pop()
                for w in neighbors[v]:
                    if comp[w] == -1:
                        comp[w] = labels
                        stack.append(w)
            labels += 1
        oracle = {}
        for i, m in enumerate(maps):
            oracle.setdefault(comp[i], set()).add(m.targets)
        oracle_parts = sorted(frozenset(v) for v in oracle.values())
        got_parts = sorted(frozenset(c.members) for c in homotopy_classes(image))
        assert oracle_parts == got_parts, image.name
    return "BFS classes equal the pairwise one-step components on all pool images"


def check_12_determinism():
    from .cli import run_command
    with tempfile.TemporaryDirectory() as tmp:
        tmp = Path(tmp)
        outputs = {}
        assert run_command(["gen", "cycle", "7", "-o", str(tmp / "c7.json")],
                           stdout=io.BytesIO()) == 0
        assert run_command(["gen", "fig_sexample", "-o", str(tmp / "fs.json")],
                           stdout=io.BytesIO()) == 0
        for name, argv in {
            "spectrum-c7": ["spectrum", str(tmp / "c7.json")],
            "spectrum-fs": ["spectrum", str(tmp / "fs.json")],
            "lasso-fs": ["lasso", str(tmp / "fs.json")],
        }.items():
            runs = []
            for threads in ("1", "4", "1"):
                buf = io.BytesIO()
                code = run_command(argv + ["--threads", threads], stdout=buf)
                assert code == 0
                runs.append(buf.getvalue())
            assert runs[0] == runs[1] == runs[2], f"{name} output varies"
            outputs[name] = runs[0]
    return "reports byte-identical across repeated runs and --threads {1,4}"


@dataclass
class CheckResult:
    cid: str
    title: str
    ok: bool
    seconds: float
    detail: str


CHECKS = [
    ("1", "cycle spectra F(C_n), n=1..9", 10.0, check_1_cycle_spectra),
    ("2", "S(id), S(c), S(l) on C_5..C_8", 30.0, check_2_cycle_homotopy_spectra),
    ("3", "homotopy class census of C_5..C_7", 60.0, check_3_cycle_classes),
    ("4", "interval spectra", 5.0, check_4_interval_spectra),
    ("5", "box spectra and the fold family", 120.0, check_5_box_spectra),
    ("6", "cube spectrum and (n-1) criterion", 60.0, check_6_cube),
    ("7", "rigidity of the named images", 30.0, check_7_rigidity),
    ("8", "lasso rigidity certificates", 60.0, check_8_lasso_certificates),
    ("9", "fig_sexample spectrum and pull bound", 600.0, check_9_sexample_spectrum),
    ("10", "pull indices on [1,3]", 1.0, check_10_interval_pull),
    ("11a", "continuity definitions agree (<=6 vertices)", 600.0,
     check_11a_continuity_differential),
    ("11b", "(n-1) three-way equivalence, 200 random graphs", 600.0,
     check_11b_nminus1_threeway),
    ("11c", "disjoint-union equality and product inclusion", 600.0,
     check_11c_union_and_product),
    ("11d", "cycle fixed-set dichotomy, n<=9", 600.0, check_11d_cycle_fix_structure),
    ("11e", "geodesic-forced fixed points (<=7 vertices)", 600.0,
     check_11e_forced_fixed_points),
    ("11f", "one-step reduction vs pairwise oracle (<=5 vertices)", 600.0,
     check_11f_one_step_reduction),
    ("12", "byte-identical reports across runs and threads", 120.0,
     check_12_determinism),
]

_PROPERTY_SUITE_TOTAL = 600.0


def run_check(cid: str) -> CheckResult:
    for known, title, limit, fn in CHECKS:
        if known == cid:
            start = time.perf_counter()
            try:
                detail = fn()
                seconds = time.perf_counter() - start
                if seconds > limit:
                    return CheckResult(cid, title, False, seconds,
                                       f"runtime {seconds:.1f}s over the "
                                       f"{limit:.0f}s budget")
                return CheckResult(cid, title, True, seconds, detail)
            except AssertionError as exc:
                return CheckResult(cid, title, False,
                                   time.perf_counter() - start, str(exc))
    raise ValueError(f"unknown criterion {cid!r}")


def run_all(only: str | None = None) -> list[CheckResult]:
    results = []
    for cid, _title, _limit, _fn in CHECKS:
        if only is not None and cid != only:
            continue
        results.append(run_check(cid))
    if only is None:
        prop = [r for r in results if r.cid.startswith("11")]
        total = sum(r.seconds for r in prop)
        results.append(CheckResult(
            "11*", "property suites total runtime", total <= _PROPERTY_SUITE_TOTAL,
            total, f"{total:.1f}s of {_PROPERTY_SUITE_TOTAL:.0f}s allowed"))
    return results
