"""Theorem-level checks over sample sets, returned as pass/fail records.

Used by the ``theorem-check`` command; sizes are parameters so the same
checks run quickly from the CLI or exhaustively from a test suite.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .graph import adjacency_matrix, build_graph
from .meshsim import run_mesh, tree_expand_levels
from .orbit import (
    compute_orbit,
    h_map,
    is_terminal,
    quadruple_radii,
    small_orbit_class,
    terminal_quadruples,
    zeta_over_pow2,
)
from .sampling import (
    DEFAULT_SEED,
    _fractions_between,
    grid_points,
    in_regions,
    points_abs_minus1_root2,
    points_abs_root2,
    points_mid_circle,
    points_re_half,
    random_points,
)
from .shapespace import (
    HALF,
    ZETA,
    ExactComplex,
    Region,
    ShapePoint,
    apply_L,
    apply_R,
    classify,
    h_formula,
    in_v_tilde,
)
from .spectral import (
    collapse_counts,
    counts_sequence,
    exact_eigenspace_dim,
    spectral_radius,
    spectrum,
)


@dataclass
class CheckResult:
    name: str
    passed: bool
    checked: int
    failures: list[str] = field(default_factory=list)

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        extra = f"; first failure: {self.failures[0]}" if self.failures else ""
        return f"[{status}] {self.name} ({self.checked} cases{extra})"

    def to_json(self) -> dict:
        return {
            "name": self.name,
            "passed": self.passed,
            "checked": self.checked,
            "failures": self.failures[:20],
        }


def _result(name: str, checked: int, failures: list[str]) -> CheckResult:
    return CheckResult(name, not failures and checked > 0, checked, failures)


def check_small_orbits(per_curve: int = 10) -> CheckResult:
    """Orbit sizes 1, 2, 3 on the exceptional curves of the terminal region."""
    fails: list[str] = []
    cases = [(ZETA, 1)]
    two = points_abs_root2(_fractions_between(Fraction(1, 4), HALF, per_curve))
    two += points_abs_minus1_root2(_fractions_between(Fraction(3, 8), HALF, per_curve))
    three = points_mid_circle(_fractions_between(Fraction(1, 4), HALF, per_curve))
    three += points_re_half(_fractions_between(Fraction(3, 10), Fraction(17, 20), per_curve + 1))
    cases += [(z, 2) for z in two if z != ZETA] + [(z, 3) for z in three if z != ZETA]
    for z, want in cases:
        if not is_terminal(z):
            fails.append(f"{z} not in terminal region")
            continue
        got = len(compute_orbit(z))
        if got != want or small_orbit_class(z) != want:
            fails.append(f"l({z}) = {got}, expected {want}")
    return _result("orbits of size 1/2/3 on the exceptional curves", len(cases), fails)


def check_single_quadruple(step: Fraction = Fraction(1, 48)) -> CheckResult:
    fails = []
    n = 0
    for z in grid_points(step):
        if classify(z) in (Region.I, Region.II, Region.III, Region.IV):
            n += 1
            q = len(terminal_quadruples(compute_orbit(z)))
            if q != 1:
                fails.append(f"q({z}) = {q}")
    return _result("q = 1 on regions I-IV (grid)", n, fails)


def check_unbounded_quadruples(m_max: int = 4) -> CheckResult:
    fails = []
    for m in range(1, m_max + 1):
        q = len(terminal_quadruples(compute_orbit(zeta_over_pow2(m + 2))))
        if not q > 2**m:
            fails.append(f"q(zeta/2^{m + 2}) = {q} <= {2**m}")
    for m in range(2, m_max + 1):
        w = apply_R(zeta_over_pow2(m))
        q = len(terminal_quadruples(compute_orbit(w)))
        if classify(w) is not Region.VI or not q > 2 ** (m - 2):
            fails.append(f"R(zeta/2^{m}) = {w}: region {classify(w)}, q = {q}")
    return _result("q grows without bound in V and VI", 2 * m_max - 1, fails)


def _reflect_mid(z: ExactComplex) -> ExactComplex:
    zc = z.conj()
    return zc / (2 * zc - 1)


def check_composition_identities(count: int = 200, seed: int = DEFAULT_SEED) -> CheckResult:
    fails: list[str] = []
    n = 0
    for z in random_points(count, in_regions(Region.I, Region.II, Region.III), seed):
        n += 1
        if apply_L(apply_R(z)) != z or apply_R(apply_R(z)) != _reflect_mid(z):
            fails.append(f"LR/RR identity at {z}")
    for z in random_points(count, in_regions(Region.II, Region.III), seed + 1):
        n += 1
        if apply_L(z) != apply_L(apply_R(apply_R(z))):
            fails.append(f"L = LRR at {z}")
    for z in random_points(count, in_regions(Region.IV), seed + 2):
        n += 1
        if apply_L(apply_L(z)) != apply_L(apply_R(z)):
            fails.append(f"LL = LR at {z}")

    def lens_ok(z):
        return in_v_tilde(z) and in_v_tilde(apply_L(z)) and in_v_tilde(h_map(z))

    box = (Fraction(0), Fraction(1, 6), Fraction(0), Fraction(1, 6))
    for z in random_points(count, lens_ok, seed + 3, box=box):
        n += 1
        if apply_L(h_map(h_map(z))) != h_map(apply_L(z)) or h_map(z) != h_formula(z):
            fails.append(f"L h^2 = h L at {z}")
    return _result("composition identities of L, R and h", n, fails)


def check_quadruple_circles(points) -> CheckResult:
    fails, n = [], 0
    for z in points:
        orb = compute_orbit(z)
        for k, r in enumerate(quadruple_radii(orb)):
            n += 1
            if r is None:
                fails.append(f"quadruple {k} of {z} not on one circle about zeta")
    return _result("terminal quadruples lie on circles about zeta", n, fails)


def check_spectral_identities(points, steps: int = 20, tol: float = 1e-9) -> CheckResult:
    fails = []
    for z in points:
        orb = compute_orbit(z)
        g = build_graph(orb)
        A = adjacency_matrix(g)
        q = len(terminal_quadruples(orb))
        if any(c != 2 for c in A.column_sums()):
            fails.append(f"{z}: column sums")
        rho = spectral_radius(spectrum(A))
        if abs(rho - 2) > tol:
            fails.append(f"{z}: rho = {rho}")
        d2, dm2 = exact_eigenspace_dim(A, 2), exact_eigenspace_dim(A, -2)
        if d2 != q or dm2 != q:
            fails.append(f"{z}: dims {d2}, {dm2} vs q = {q}")
        if any(cv.total() != 2**cv.step for cv in counts_sequence(A, steps)):
            fails.append(f"{z}: probability not conserved")
    return _result("spectral identities of the bisection graph", len(points), fails)


def check_mesh_agreement(points, steps: int = 8) -> CheckResult:
    fails = []
    for z in points:
        run = run_mesh(z, steps, check=False)
        tree = tree_expand_levels(z, steps, orbit=run.orbit)
        g = build_graph(run.orbit)
        mat = [collapse_counts(cv, g) for cv in counts_sequence(adjacency_matrix(g), steps)]
        if not (run.levels == tree == mat):
            fails.append(f"{z}: counts disagree")
        if run.min_angle < run.seed_min_angle / 2 - 1e-9:
            fails.append(f"{z}: angle bound violated")
    return _result("planar mesh = word tree = matrix counts", len(points), fails)


def default_suite(quick: bool = True, seed: int = DEFAULT_SEED) -> list[CheckResult]:
    mixed = random_points(12 if quick else 60, seed=seed + 7, max_den=40)
    base = [
        ExactComplex(Fraction(1, 9), Fraction(1, 7)),
        ExactComplex(Fraction(1, 100), Fraction(1, 1700), 3399),
    ]
    anchors = [ShapePoint.of(p) for p in base] + [ZETA]
    return [
        check_small_orbits(5 if quick else 20),
        check_single_quadruple(Fraction(1, 32) if quick else Fraction(1, 64)),
        check_unbounded_quadruples(3 if quick else 5),
        check_composition_identities(50 if quick else 1000, seed),
        check_quadruple_circles(anchors + mixed),
        check_spectral_identities(anchors + mixed),
        check_mesh_agreement(anchors + mixed[:4], 6 if quick else 10),
    ]
