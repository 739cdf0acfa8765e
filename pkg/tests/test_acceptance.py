"""Acceptance criteria, one test per criterion.

Each test records a single PASS/FAIL line (shown in the terminal summary
under "acceptance criteria") before asserting, so a failing criterion is
still reported with its numbers.
"""

import json
import math
import shutil
import subprocess

import numpy as np
import pytest
from helpers import INSTANCES, R2, criteria, random_space, random_unit, random_vector

from gruss import Box, WeightedSpace, sample_admissible
from gruss.bounds import (
    bound_corollary3,
    bound_corollary4,
    bound_theorem1,
    bound_theorem2,
    bound_theorem3,
    gruss_functional,
    lemma_schwartz_refinement,
    m_factor,
    schwartz_gap,
)
from gruss.cli import main
from gruss.conditions import slack_ball, slack_re
from gruss.measures import (
    MeasureSample,
    check_cor5,
    check_cor6,
    check_prop1,
    check_prop2,
    integrated_slack,
    pointwise_sufficient,
    ratio_remark5,
)
from gruss.sharpness import (
    SearchConfig,
    extremal_corollary3,
    random_search,
    sweep_lambda,
)
from gruss.space import norm_sq

MODES = (False, True)
DIMS = (2, 4, 8, 16)
SOUND = 1 + 1e-9


def record(number, title, ok, detail):
    line = f"[{'PASS' if ok else 'FAIL'}] {number:>2}. {title}: {detail}"
    criteria.append(line)
    print(line)
    assert ok, line


def random_box(rng, complex_mode, positive=False):
    if positive:
        lo = rng.uniform(0.1, 2.0)
        return Box(lo, lo + rng.uniform(1e-3, 3.0))
    k = 2 if complex_mode else 1
    lo = complex(*rng.uniform(-2, 2, k)) if complex_mode else rng.uniform(-2, 2)
    hi = complex(*rng.uniform(-2, 2, k)) if complex_mode else rng.uniform(-2, 2)
    return Box(lo, hi)


def setups(rng, count, per_setup, complex_mode, dim, **box_kw):
    """``count`` instances drawn in groups that share a space, e and boxes."""
    for _ in range(count // per_setup):
        sp = random_space(rng, dim)
        e = random_unit(rng, sp, complex_mode)
        yield sp, e, random_box(rng, complex_mode, **box_kw), random_box(rng, complex_mode, **box_kw)


# 1 -------------------------------------------------------------------------------


def test_c01_slack_identity():
    rng = np.random.default_rng(101)
    worst, n = 0.0, 0
    for cm in MODES:
        for dim in DIMS:
            for sp, e, box, _ in setups(rng, 10_000, 50, cm, dim):
                for _ in range(50):
                    # mix interior, boundary-ish and far points
                    x = box.center * e + random_vector(rng, dim, cm, scale=box.radius * rng.uniform(0, 2))
                    s1, s2 = slack_re(sp, x, e, box), slack_ball(sp, x, e, box)
                    d = x - box.center * e
                    # relative to the size of the two terms the slack is a difference of
                    scale = max(box.width**2 / 4, norm_sq(sp, d), 1e-300)
                    worst = max(worst, abs(s1 - s2) / scale)
                    n += 1
    record(1, "slack identity", worst <= 1e-12 and n == 80_000, f"{n} triples, max rel diff {worst:.2e} (tol 1e-12)")


# 2 -------------------------------------------------------------------------------


def test_c02_width_bound_soundness_and_equality():
    rng = np.random.default_rng(102)
    worst, n, na = 0.0, 0, 0
    for cm in MODES:
        for dim in DIMS:
            for sp, e, bx, by in setups(rng, 10_000, 100, cm, dim):
                xs = sample_admissible(sp, e, bx, rng, 100, cm)
                ys = sample_admissible(sp, e, by, rng, 100, cm)
                for x, y in zip(xs, ys):
                    rep = bound_theorem1(sp, x, y, e, bx, by)
                    n += 1
                    if not rep.applicable:
                        na += 1
                    elif rep.ratio is not None:
                        worst = max(worst, rep.ratio)
    sp = WeightedSpace([0.5, 0.5])
    x = sp.vector([0, 1])
    eq = bound_theorem1(sp, x, x, sp.vector([1, 1]), Box(0, 1), Box(0, 1))
    ok = worst <= SOUND and na == 0 and n == 80_000 and abs(eq.ratio - 1) <= 1e-12
    record(
        2,
        "T1 soundness + equality",
        ok,
        f"{n} pairs, max ratio {worst:.12f}, inadmissible {na}; two-point ratio {eq.ratio!r}",
    )


# 3 -------------------------------------------------------------------------------


def _mfactor_box(rng, complex_mode):
    # Re(conj(lo) hi) > 0: hi is lo stretched and, in complex mode, rotated by
    # less than 90 degrees; real boxes may sit on either side of 0
    if not complex_mode:
        lo = rng.choice([-1, 1]) * rng.uniform(0.1, 2)
        return Box(lo, lo * rng.uniform(0.3, 3))
    lo = complex(*rng.uniform(-2, 2, 2))
    while abs(lo) < 0.1:
        lo = complex(*rng.uniform(-2, 2, 2))
    return Box(lo, lo * rng.uniform(0.3, 3) * np.exp(1j * rng.uniform(-1.4, 1.4)))


def test_c03_m_factor_bound_and_chain():
    rng = np.random.default_rng(103)
    worst_ratio, worst_cs, worst_ref, n = 0.0, 0.0, 0.0, 0
    for i in range(100):
        cm, dim = MODES[i % 2], DIMS[(i // 2) % 4]
        sp = random_space(rng, dim)
        e = random_unit(rng, sp, cm)
        bx, by = _mfactor_box(rng, cm), _mfactor_box(rng, cm)
        xs = sample_admissible(sp, e, bx, rng, 100, cm)
        ys = sample_admissible(sp, e, by, rng, 100, cm)
        for x, y in zip(xs, ys):
            rep = bound_theorem2(sp, x, y, e, bx, by)
            assert rep.applicable
            worst_ratio = max(worst_ratio, rep.ratio)
            # link 1: |G|^2 <= gap_x gap_y
            gap = schwartz_gap(sp, x, y, e)
            g2 = abs(gruss_functional(sp, x, y, e)) ** 2
            worst_cs = max(worst_cs, (g2 - gap.product) / max(gap.product, 1e-300))
            # link 2: gap <= M^2/4 |<x,e>|^2 for each factor
            for v, box in ((x, bx), (y, by)):
                ref = lemma_schwartz_refinement(sp, v, e, box)
                worst_ref = max(worst_ref, (ref.gap - ref.bound) / max(ref.bound, 1e-300))
            n += 1
    ok = worst_ratio <= SOUND and worst_cs <= 1e-9 and worst_ref <= 1e-9 and n == 10_000
    record(
        3,
        "T2 soundness + lemma chain",
        ok,
        f"{n} pairs, max ratio {worst_ratio:.12f}, chain excess {worst_cs:.1e} / {worst_ref:.1e} (tol 1e-9)",
    )


# 4 -------------------------------------------------------------------------------


def test_c04_real_reduction():
    rng = np.random.default_rng(104)
    worst_m, worst_b = 0.0, 0.0
    for _ in range(1000):
        a = 10 ** rng.uniform(-3, 2)
        big_a = a * (1 + 10 ** rng.uniform(-6, 2))
        m = m_factor(Box(a, big_a))
        worst_m = max(worst_m, abs(m - (big_a - a) / math.sqrt(a * big_a)) / m)
    for _ in range(1000):
        cm, dim = bool(rng.integers(2)), int(rng.choice(DIMS))
        sp = random_space(rng, dim)
        e = random_unit(rng, sp, cm)
        bx, by = random_box(rng, cm, positive=True), random_box(rng, cm, positive=True)
        x = sample_admissible(sp, e, bx, rng, 1, cm)[0]
        y = sample_admissible(sp, e, by, rng, 1, cm)[0]
        t2 = bound_theorem2(sp, x, y, e, bx, by).bound_value
        c3 = bound_corollary3(sp, x, y, e, bx, by).bound_value
        worst_b = max(worst_b, abs(t2 - c3) / max(abs(t2), abs(c3)))
    ok = worst_m <= 1e-12 and worst_b <= 1e-12
    record(4, "real reduction", ok, f"1000 boxes, max rel |M - (A-a)/sqrt(aA)| {worst_m:.1e}; T2 vs C3 {worst_b:.1e}")


# 5 -------------------------------------------------------------------------------


def test_c05_q_family():
    rows = []
    for q in (0.5, 0.1, 0.01, 0.001):
        _, r = extremal_corollary3(1 - q, 1 + q)
        rows.append((q, r.slack, r.implied_constant, abs(r.implied_constant - (1 - q * q) / 4)))
    ok = all(abs(s) <= 1e-12 and err <= 1e-12 and k <= 0.25 for _, s, k, err in rows)
    detail = "; ".join(f"q={q}: k={k!r} err={err:.1e} slack={s:.1e}" for q, s, k, err in rows)
    record(5, "C3 q-family", ok, detail)


# 6 -------------------------------------------------------------------------------


def test_c06_convex_bound_soundness_equality_and_constant():
    rng = np.random.default_rng(106)
    worst, n = -math.inf, 0
    for i in range(200):
        cm, dim = MODES[i % 2], DIMS[(i // 2) % 4]
        sp = random_space(rng, dim)
        e = random_unit(rng, sp, cm)
        box = random_box(rng, cm)
        lam = float(rng.uniform(0.02, 0.98))
        ps = sample_admissible(sp, e, box, rng, 50, cm)
        for p in ps:
            x = random_vector(rng, dim, cm, scale=rng.uniform(0, 3))
            y = (p - lam * x) / (1 - lam)
            rep = bound_theorem3(sp, x, y, e, box, lam)
            assert rep.applicable
            worst = max(worst, rep.measured - rep.bound_value)
            n += 1
    sp = WeightedSpace.euclidean(2)
    x = sp.vector([0, math.sqrt(2)])
    eq = bound_theorem3(sp, x, x, sp.vector([R2, R2]), Box(0, 2), 0.5)
    eq_ok = abs(eq.measured - 1) <= 1e-12 and abs(eq.bound_value - 1) <= 1e-12
    lams = (0.1, 0.25, 0.5, 0.75, 0.9)
    sweep = sweep_lambda(lams)
    c_err = max(r.abs_error for r in sweep)
    peak = max(sweep, key=lambda r: r.implied_constant)
    peak_ok = peak.parameter == 0.5 and abs(peak.implied_constant - 1 / 16) <= 1e-12
    ok = worst <= 1e-9 and n == 10_000 and eq_ok and c_err <= 1e-12 and peak_ok
    record(
        6,
        "T3 soundness + equality + implied C",
        ok,
        f"{n} triples, max (measured - bound) {worst:.1e}; equality measured={eq.measured!r} "
        f"bound={eq.bound_value!r}; implied C max err {c_err:.1e}, peak {peak.implied_constant!r} at 0.5",
    )


# 7 -------------------------------------------------------------------------------


def test_c07_two_sided():
    rng = np.random.default_rng(107)
    worst, n, negative = -math.inf, 0, 0
    for i in range(100):
        cm, dim = MODES[i % 2], DIMS[(i // 2) % 4]
        sp = random_space(rng, dim)
        e = random_unit(rng, sp, cm)
        box = random_box(rng, cm)
        lam = float(rng.uniform(0.02, 0.98))
        ps = sample_admissible(sp, e, box, rng, 10, cm)
        ms = sample_admissible(sp, e, box, rng, 10, cm)
        for p, m in zip(ps, ms):
            # lam x + (1-lam) y = p and lam x - (1-lam) y = m
            x, y = (p + m) / (2 * lam), (p - m) / (2 * (1 - lam))
            rep = bound_corollary4(sp, x, y, e, box, lam)
            assert rep.applicable
            worst = max(worst, rep.measured - rep.bound_value)
            negative += rep.functional.real < 0
            n += 1
    record(
        7,
        "C4 two-sided",
        worst <= 1e-9 and n == 1000,
        f"{n} instances ({negative} with Re G < 0), max (|Re G| - bound) {worst:.1e}",
    )


# 8 -------------------------------------------------------------------------------


def _random_h(rng, w, cm):
    h = random_vector(rng, w.size, cm)
    return h / math.sqrt(np.sum(w * np.abs(h) ** 2))


def test_c08_measure_layer_fidelity():
    rng = np.random.default_rng(108)
    worst = 0.0

    def same(a, b, terms=0.0):
        # differences are judged against the terms that cancel in them
        nonlocal worst
        worst = max(worst, abs(a - b) / max(abs(a), abs(b), terms, 1e-300))

    for i in range(1000):
        cm = bool(i % 2)
        n = int(rng.integers(1, 12))
        w = rng.uniform(0.05, 3, n)
        sp = WeightedSpace(w)
        h = _random_h(rng, w, cm)
        bf, bg = random_box(rng, cm, positive=True), random_box(rng, cm, positive=True)
        f = sample_admissible(sp, h, bf, rng, 1, cm)[0]
        g = sample_admissible(sp, h, bg, rng, 1, cm)[0]
        s = MeasureSample(w, f, g, h)
        p1, t2 = check_prop1(s, bf, bg), bound_theorem2(sp, f, g, h, bf, bg)
        same(p1.measured, t2.measured)
        same(p1.bound_value, t2.bound_value)
        lam = float(rng.uniform(0.05, 0.95))
        box = random_box(rng, cm)
        p2, t3 = check_prop2(s, box, lam), bound_theorem3(sp, f, g, h, box, lam)
        same(p2.measured, t3.measured)
        same(p2.bound_value, t3.bound_value)

        # mean forms against plain numpy means over pointwise-admissible data
        mu = w.sum()
        u = rng.uniform(0, 1, n) * (np.exp(2j * np.pi * rng.uniform(size=n)) if cm else rng.choice([-1, 1], n))
        v = rng.uniform(0, 1, n) * (np.exp(2j * np.pi * rng.uniform(size=n)) if cm else rng.choice([-1, 1], n))
        f = bf.center + bf.radius * u
        g = bg.center + bg.radius * v
        mean = lambda z: np.sum(w * z) / mu  # noqa: E731
        c5 = check_cor5(MeasureSample(w, f, g), bf, bg)
        assert c5.applicable, c5.reason
        fg, f_g = mean(f * g.conj()), mean(f) * mean(g.conj())
        same(c5.measured, abs(fg - f_g), abs(fg) + abs(f_g))
        same(c5.bound_value, m_factor(bf) * m_factor(bg) * abs(mean(f) * mean(g.conj())) / 4)
        f2 = box.center + box.radius * u
        g2 = (f2 - lam * f) / (1 - lam)  # lam f + (1-lam) g2 = f2 pointwise
        c6 = check_cor6(MeasureSample(w, f, g2), box, lam)
        assert c6.applicable, c6.reason
        fg, f_g = mean((f * g2.conj()).real), (mean(f) * mean(g2.conj())).real
        same(c6.measured, fg - f_g, abs(fg) + abs(f_g))
        same(c6.bound_value, box.width**2 / (16 * lam * (1 - lam)))

    r5 = ratio_remark5(MeasureSample([1, 1], [1, 3], [1, 3]), Box(1, 3), Box(1, 3))
    r5_ok = abs(r5.left - 0.25) <= 1e-12 and abs(r5.right - 1 / 3) <= 1e-12 and r5.left <= r5.right
    c6 = check_cor6(MeasureSample([1, 1], [0, 2], [0, 2]), Box(0, 2), 0.5)
    c6_ok = abs(c6.measured - 1) <= 1e-12 and abs(c6.bound_value - 1) <= 1e-12
    record(
        8,
        "measure-layer fidelity",
        worst <= 1e-12 and r5_ok and c6_ok,
        f"1000 samples, max rel diff {worst:.1e}; two-point ratio left={r5.left!r} right={r5.right!r}; "
        f"mean-form equality J={c6.measured!r} bound={c6.bound_value!r}",
    )


# 9 -------------------------------------------------------------------------------


def test_c09_pointwise_implies_integrated():
    rng = np.random.default_rng(109)
    worst, n = math.inf, 0
    for i in range(1000):
        cm = bool(i % 2)
        k = int(rng.integers(1, 12))
        w = rng.uniform(0.05, 3, k)
        h = _random_h(rng, w, True)
        box = random_box(rng, True)
        t = rng.uniform(0, 1, k) * np.exp(2j * np.pi * rng.uniform(size=k))
        target = box.center * h + box.radius * np.abs(h) * t
        if i % 3 == 0:
            # condition on the combination lam f + (1-lam) g
            lam = float(rng.uniform(0.05, 0.95))
            f = random_vector(rng, k, cm)
            g = (target - lam * f) / (1 - lam)
            s = MeasureSample(w, f, g, h)
            assert pointwise_sufficient(s, box, lam=lam).ok
            slack = integrated_slack(s, box, lam=lam)
        else:
            s = MeasureSample(w, target, np.zeros(k), h)
            assert pointwise_sufficient(s, box).ok
            slack = integrated_slack(s, box)
        worst = min(worst, slack)
        n += 1
    record(9, "pointwise implies integrated", worst >= -1e-12, f"{n} samples, min integrated slack {worst:.2e}")


# 10 ------------------------------------------------------------------------------


def _cli_bytes(tmp_path, capsys, tag, argv):
    out = tmp_path / f"{tag}.json"
    code = main([*argv, "--out", str(out)])
    stdout = capsys.readouterr().out
    return code, stdout.encode() + b"\0" + out.read_bytes()


def test_c10_determinism_and_search_soundness(tmp_path, capsys):
    runs = [
        ["sharpness", "--family", "search", "--seed", "42", "--trials", "500", "--dim", "4", "--mode", "complex"],
        ["sharpness", "--family", "search", "--seed", "7", "--trials", "500", "--bound", "t3", "--box-x", "0,2"],
        ["sharpness", "--family", "c3-q"],
        ["sharpness", "--family", "t3-lambda"],
    ]
    identical = True
    for i, argv in enumerate(runs):
        a = _cli_bytes(tmp_path, capsys, f"a{i}", argv)
        b = _cli_bytes(tmp_path, capsys, f"b{i}", argv)
        identical &= a == b and a[0] == 0

    configs = [SearchConfig(2003, 100_000, 2, "T1", Box(0, 1))]
    q = 0.01
    configs.append(SearchConfig(11, 200, 3, "C3", Box(1 - q, 1 + q)))
    for bound, box in (("T1", Box(-1 + 1j, 2)), ("T2", Box(1 + 1j, 2 - 1j)), ("C3", Box(0.5, 4)),
                       ("T3", Box(-1, 3)), ("C4", Box(-2, 2)), ("C4", Box(0.5, 1.5))):
        for cm in MODES:
            configs.append(SearchConfig(5, 500, 5, bound, box, complex_mode=cm))
    results = [random_search(cfg) for cfg in configs]
    violations = sum(r.violations for r in results)

    big, c3 = results[0], results[1]
    unseeded = float(np.nanmax(big.ratios[1:]))
    floor = 4 * (1 - q) * (1 + q) / 4 * (1 - 1e-6)  # implied k over 1/4, i.e. 1 - q^2
    ok = identical and violations == 0 and big.max_ratio >= 0.99 and c3.max_ratio >= floor
    record(
        10,
        "determinism + search soundness",
        ok,
        f"byte-identical reruns: {identical}; {len(results)} searches, {violations} violations; "
        f"T1 dim 2 x 1e5 max ratio {big.max_ratio!r} (best unseeded {unseeded:.6f}); "
        f"C3 q=0.01 max {c3.max_ratio!r} >= {floor!r}",
    )


# 11 ------------------------------------------------------------------------------


def test_c11_cli_contract(tmp_path, capsys):
    codes = {}
    for path in sorted(INSTANCES.glob("*.json")):
        doc = json.loads(path.read_text())
        if "e" in doc:
            argvs = [["check", path], ["bound", path]]
        else:
            boxes = doc.get("boxes", {})
            if "combination" in boxes:
                props = ["p2"] if "h" in doc else ["c6"]
            else:
                props = ["p1"] if "h" in doc else ["c5", "r5"]
            argvs = [["check", path]] + [["integral", path, "--prop", p] for p in props]
        for argv in argvs:
            codes[" ".join([argv[0], path.name, *argv[2:]])] = main([str(a) for a in argv])
    codes["sharpness c3-q"] = main(["sharpness", "--family", "c3-q"])
    capsys.readouterr()

    bad = tmp_path / "corrupted.json"
    bad.write_text((INSTANCES / "extremal_c3.json").read_text().replace(",", "", 1), encoding="utf-8")
    proc = subprocess.run([shutil.which("gruss"), "bound", str(bad)], capture_output=True, text=True)
    diag = proc.stderr.strip()
    used = {k.split()[0] for k in codes}
    nonzero = [k for k, c in codes.items() if c != 0]
    ok = not nonzero and used == {"check", "bound", "integral", "sharpness"} and proc.returncode == 2 and "line" in diag
    record(
        11,
        "CLI contract",
        ok,
        f"{len(codes)} runs over bundled files, nonzero exits {nonzero}; corrupted file exit {proc.returncode}: {diag}",
    )


@pytest.fixture(autouse=True, scope="module")
def _header():
    criteria.clear()
    yield
