"""Classic and bipartite Menelaus theorems over Z_p, in exact arithmetic.

A seven-line grid (three "letter" lines crossed by four "numbered" lines)
has twelve intersection points; their x-axis projections satisfy a single
vanishing 4x4 determinant.  This module verifies that identity, its 12x12
linear-system form, the signed six-product form, the classic four-line
Menelaus theorem, and completes a twelfth abscissa from eleven free values
together with a realizing line configuration.
"""

from dataclasses import dataclass

from .errors import (
    AtInfinityError,
    DegenerateError,
    NoIntersectionError,
    PreconditionFailedError,
    SamplingFailedError,
    WitnessSearchFailedError,
)
from .fields import det_mod, seeded_rng, validate_prime_modulus


@dataclass(frozen=True)
class ProjectiveLine:
    """The line u*x + v*y + w = 0 over Z_p, as a normalized triple (u:v:w).

    Normalization scales so the first nonzero coordinate is 1, making the
    representation canonical.
    """

    p: int
    u: int
    v: int
    w: int

    def __post_init__(self):
        validate_prime_modulus(self.p)
        p = self.p
        u, v, w = self.u % p, self.v % p, self.w % p
        if u == v == w == 0:
            raise ValueError("projective line must have a nonzero coordinate")
        lead = u if u else (v if v else w)
        inv = pow(lead, -1, p)
        object.__setattr__(self, "u", u * inv % p)
        object.__setattr__(self, "v", v * inv % p)
        object.__setattr__(self, "w", w * inv % p)

    @classmethod
    def from_slope_intercept(cls, p: int, a: int, b: int) -> "ProjectiveLine":
        """The affine line y = a*x + b."""
        return cls(p, a, -1, b)

    @classmethod
    def vertical(cls, p: int, c: int) -> "ProjectiveLine":
        """The vertical line x = c."""
        return cls(p, 1, 0, -c)

    def triple(self):
        return (self.u, self.v, self.w)

    def is_vertical(self) -> bool:
        return self.v == 0 and self.u != 0

    def to_json(self):
        return [self.u, self.v, self.w]


def _cross(t1, t2, p):
    u1, v1, w1 = t1
    u2, v2, w2 = t2
    return (
        (v1 * w2 - v2 * w1) % p,
        (w1 * u2 - w2 * u1) % p,
        (u1 * v2 - u2 * v1) % p,
    )


def line_intersection(l1: ProjectiveLine, l2: ProjectiveLine):
    """Homogeneous intersection point of two lines (their cross product)."""
    if l1.p != l2.p:
        raise ValueError("lines over different moduli")
    return _cross(l1.triple(), l2.triple(), l1.p)


def project_intersection(l1: ProjectiveLine, l2: ProjectiveLine) -> int:
    """x-coordinate of l1 ∩ l2; parallel or equal lines have none."""
    p = l1.p
    X, Y, Z = line_intersection(l1, l2)
    if X == Y == Z == 0:
        raise NoIntersectionError("lines are equal")
    if Z == 0:
        if (l1.u, l1.v) != (0, 0) and (l2.u, l2.v) != (0, 0):
            raise NoIntersectionError("lines are parallel")
        raise AtInfinityError("intersection lies at infinity")
    return X * pow(Z, -1, p) % p


@dataclass(frozen=True)
class Grid7:
    """Three letter lines and four numbered lines in grid position.

    Every numbered line must meet every letter line in exactly one finite
    point (pairs are neither parallel nor equal), so all twelve abscissas
    exist.
    """

    letters: tuple  # (l_x, l_y, l_z)
    numbered: tuple  # (l_1, l_2, l_3, l_4)

    def __post_init__(self):
        if len(self.letters) != 3 or len(self.numbered) != 4:
            raise ValueError("need exactly 3 letter lines and 4 numbered lines")
        p = self.letters[0].p
        for ln in (*self.letters, *self.numbered):
            if ln.p != p:
                raise ValueError("all grid lines must share the modulus")
        for i, num in enumerate(self.numbered, start=1):
            for name, letter in zip("xyz", self.letters):
                Z = _cross(num.triple(), letter.triple(), p)[2]
                if Z == 0:
                    raise ValueError(
                        f"line {i} and letter line {name} do not cross at a finite point"
                    )

    @property
    def p(self) -> int:
        return self.letters[0].p

    def to_json(self):
        return {
            "p": self.p,
            "letters": [ln.to_json() for ln in self.letters],
            "numbered": [ln.to_json() for ln in self.numbered],
        }

    @classmethod
    def from_json(cls, record):
        p = record["p"]
        return cls(
            letters=tuple(ProjectiveLine(p, *t) for t in record["letters"]),
            numbered=tuple(ProjectiveLine(p, *t) for t in record["numbered"]),
        )


@dataclass(frozen=True)
class TwelvePoints:
    """Abscissas x_i, y_i, z_i of a grid's twelve intersection points."""

    p: int
    xs: tuple
    ys: tuple
    zs: tuple

    def __post_init__(self):
        validate_prime_modulus(self.p)
        for name in ("xs", "ys", "zs"):
            vals = getattr(self, name)
            if len(vals) != 4:
                raise ValueError(f"{name} must hold 4 values")
            object.__setattr__(self, name, tuple(v % self.p for v in vals))

    def to_json(self):
        return {"p": self.p, "x": list(self.xs), "y": list(self.ys), "z": list(self.zs)}

    @classmethod
    def from_json(cls, record):
        return cls(record["p"], tuple(record["x"]), tuple(record["y"]), tuple(record["z"]))


def grid_points(g: Grid7) -> TwelvePoints:
    """Project the twelve grid intersections onto the x axis."""
    cols = []
    for name, letter in zip("xyz", g.letters):
        col = []
        for i, num in enumerate(g.numbered, start=1):
            try:
                col.append(project_intersection(num, letter))
            except (NoIntersectionError, AtInfinityError) as exc:
                raise type(exc)(f"line {i} vs letter {name}: {exc}") from exc
        cols.append(tuple(col))
    return TwelvePoints(g.p, *cols)


def _det_rows(pts: TwelvePoints):
    p = pts.p
    rows = []
    for x, y, z in zip(pts.xs, pts.ys, pts.zs):
        rows.append([(x - y) % p, (x - z) % p, z * (x - y) % p, y * (x - z) % p])
    return rows


def twelve_det(pts: TwelvePoints) -> int:
    """The 4x4 determinant with rows (x-y, x-z, z(x-y), y(x-z)), mod p.

    Vanishes exactly when the twelve values arise as the projected
    intersections of a seven-line grid.
    """
    return det_mod(_det_rows(pts), pts.p)


def _twelve_matrix_12x12(pts: TwelvePoints):
    # Columns: (c2,d2, c3,d3, c4,d4, ax,bx, ay,by, az,bz), coefficients taken
    # relative to line 1; rows list each line/letter incidence.
    p = pts.p
    rows = []
    for i in range(4):
        for lcol, val in ((6, pts.xs[i]), (8, pts.ys[i]), (10, pts.zs[i])):
            row = [0] * 12
            if i > 0:
                row[2 * (i - 1)] = val % p
                row[2 * (i - 1) + 1] = 1
            row[lcol] = -val % p
            row[lcol + 1] = p - 1
            rows.append(row)
    return rows


def twelve_det_cross_check(pts: TwelvePoints) -> bool:
    """Check the 4x4 determinant against the 12x12 incidence system.

    With the printed variable ordering the 12x12 determinant equals the
    negated 4x4 one, so the two vanish together; this asserts that exact
    relation.
    """
    p = pts.p
    d4 = twelve_det(pts)
    d12 = det_mod(_twelve_matrix_12x12(pts), p)
    return d12 == (-d4) % p


def bipartite_product_identity(pts: TwelvePoints):
    """Both sides of the signed six-product identity, in abscissas.

    For grid-generated points the two sides agree; in general lhs - rhs
    equals the 4x4 determinant exactly (coefficient one).
    """
    p = pts.p
    x1, x2, x3, x4 = pts.xs
    y1, y2, y3, y4 = pts.ys
    z1, z2, z3, z4 = pts.zs
    lhs = (
        (x1 - x3) * (x2 - z2) * (x4 - z4) * (y1 - z1) * (y2 - y4) * (y3 - z3)
        + (x2 - x4) * (x1 - z1) * (x3 - z3) * (y1 - y3) * (y2 - z2) * (y4 - z4)
    ) % p
    rhs = (
        (x3 - x4) * (x1 - z1) * (x2 - z2) * (y1 - y2) * (y3 - z3) * (y4 - z4)
        + (x2 - x3) * (x1 - z1) * (x4 - z4) * (y1 - y4) * (y2 - z2) * (y3 - z3)
        + (x1 - x2) * (x3 - z3) * (x4 - z4) * (y1 - z1) * (y2 - z2) * (y3 - y4)
        + (x1 - x4) * (x2 - z2) * (x3 - z3) * (y1 - z1) * (y2 - y3) * (y4 - z4)
    ) % p
    return lhs, rhs


def classic_menelaus_check(lines) -> bool:
    """Verify the four-line Menelaus identity in product and det form.

    The four lines must be pairwise non-parallel.  With A = l1∩l2, B = l2∩l3,
    C = l3∩l1 and the transversal points D = l2∩l4, E = l1∩l4, F = l3∩l4,
    the abscissas satisfy
        (xA-xD)(xB-xF)(xC-xE) = (xB-xD)(xC-xF)(xA-xE)
    and the equivalent 3x3 determinant vanishes.  Returns True when both
    forms hold; raises if the two forms ever disagree.
    """
    if len(lines) != 4:
        raise ValueError("need exactly four lines")
    l1, l2, l3, l4 = lines
    p = l1.p
    xA = project_intersection(l1, l2)
    xB = project_intersection(l2, l3)
    xC = project_intersection(l3, l1)
    xD = project_intersection(l2, l4)
    xE = project_intersection(l1, l4)
    xF = project_intersection(l3, l4)
    product_holds = (
        (xA - xD) * (xB - xF) * (xC - xE) - (xB - xD) * (xC - xF) * (xA - xE)
    ) % p == 0
    det = det_mod(
        [
            [xB - xD, xD - xA, xB - xA],
            [xC - xB, xC - xF, xF - xB],
            [xD - xE, xF - xD, xE - xF],
        ],
        p,
    )
    det_holds = det == 0
    if product_holds != det_holds:
        raise AssertionError("product and determinant forms disagree")
    return product_holds


def complete_configuration(p: int, eleven, seed: int = 0):
    """Solve for z_4 making the twelve-point determinant vanish, and realize it.

    eleven = (x1..x4, y1..y4, z1..z3).  The determinant is linear in z_4;
    a vanishing leading coefficient raises DegenerateError.  The witness
    grid sets the first letter line to {x = y}, places A_i = (x_i:x_i:1)
    and B_i on a candidate second letter line, spans the numbered lines
    through them, and reads the third letter line off the collinear C_i.
    Candidates are tried from a seeded sequence, capped at 1000.
    """
    validate_prime_modulus(p)
    if len(eleven) != 11:
        raise ValueError("need exactly eleven values (x1..x4, y1..y4, z1..z3)")
    xs = tuple(v % p for v in eleven[0:4])
    ys = tuple(v % p for v in eleven[4:8])
    zs3 = tuple(v % p for v in eleven[8:11])

    # det = A*z4 + B: row 4 is (x4-y4, x4-z4, z4(x4-y4), y4(x4-z4)); its
    # derivative in z4 is (0, -1, x4-y4, -y4).
    rows = _det_rows(TwelvePoints(p, xs, ys, zs3 + (0,)))
    base = det_mod(rows, p)
    rows_deriv = [rows[0], rows[1], rows[2], [0, -1 % p, (xs[3] - ys[3]) % p, -ys[3] % p]]
    coeff = det_mod(rows_deriv, p)
    if coeff == 0:
        raise DegenerateError("determinant does not depend on z_4")
    z4 = -base * pow(coeff, -1, p) % p
    pts = TwelvePoints(p, xs, ys, zs3 + (z4,))
    assert twelve_det(pts) == 0

    witness = _realize_grid(pts, seed)
    return z4, witness


def _collinearity_directions(avals, bvals, cvals, p):
    """Parameter directions (s, r) = (gamma, alpha+beta) making the C_i collinear.

    With the first letter line fixed to {x = y} carrying avals and the
    second letter line (alpha:beta:gamma) carrying bvals, rank-preserving
    reduction turns row i of the incidence matrix into
    (c_i(a_i-b_i), (c_i-a_i)(s + r*b_i), a_i-b_i), so each 3-row minor is
    a linear form A*s + B*r.  When the twelve-point determinant vanishes
    the forms share a nontrivial root, which this computes.
    """
    u = [c * (a - b) % p for a, b, c in zip(avals, bvals, cvals)]
    v = [(c - a) % p for a, c in zip(avals, cvals)]
    w = [(a - b) % p for a, b in zip(avals, bvals)]
    forms = []
    for rows in ((0, 1, 2), (0, 1, 3), (0, 2, 3), (1, 2, 3)):
        A = det_mod([[u[i], v[i], w[i]] for i in rows], p)
        B = det_mod([[u[i], v[i] * bvals[i] % p, w[i]] for i in rows], p)
        forms.append((A, B))
    for A, B in forms:
        if A or B:
            s, r = B % p, (-A) % p
            if all((Af * s + Bf * r) % p == 0 for Af, Bf in forms):
                return [(s, r)]
            return []  # forms not proportional: determinant must be nonzero
    # every minor vanishes identically: any direction works
    return [(1, 0), (0, 1), (1, 1)]


def _realize_with_roles(pts, roles, directions, betas, budget):
    """Try to realize pts with letter roles (a, b, deduced c); None on failure."""
    p = pts.p
    cols = (pts.xs, pts.ys, pts.zs)
    ia, ib, ic = roles
    avals, bvals, cvals = cols[ia], cols[ib], cols[ic]
    la = ProjectiveLine(p, 1, -1, 0)  # the line y = x
    for s, r in directions:
        if s == 0 and r == 0:
            continue
        if r != 0:
            # any abscissa at -s/r would sit on both base lines, collapsing
            # its numbered line; no choice of beta can fix that
            pinch = (-s) * pow(r, -1, p) % p
            if pinch in avals or pinch in bvals:
                continue
        for beta in betas:
            if budget[0] <= 0:
                return None
            budget[0] -= 1
            alpha, gamma = (r - beta) % p, s
            lb = ProjectiveLine(p, alpha, beta, gamma)
            if lb.triple() == la.triple():
                continue
            numbered = []
            c_points = []
            ok = True
            for a, b, c in zip(avals, bvals, cvals):
                A = (a, a, 1)
                B = (beta * b % p, (-gamma - alpha * b) % p, beta % p)
                li_triple = _cross(A, B, p)
                if all(val == 0 for val in li_triple):  # A_i = B_i, no unique line
                    ok = False
                    break
                Ci = _cross(li_triple, (1, 0, -c % p), p)
                if Ci[2] == 0:
                    ok = False
                    break
                c_points.append(Ci)
                numbered.append(ProjectiveLine(p, *li_triple))
            if not ok:
                continue
            lc_triple = next(
                (
                    _cross(c_points[i], c_points[j], p)
                    for i in range(4)
                    for j in range(i + 1, 4)
                    if any(_cross(c_points[i], c_points[j], p))
                ),
                None,
            )
            if lc_triple is None:
                continue
            lc = ProjectiveLine(p, *lc_triple)
            if any((lc.u * X + lc.v * Y + lc.w * Z) % p for X, Y, Z in c_points):
                continue
            letters = [None, None, None]
            letters[ia], letters[ib], letters[ic] = la, lb, lc
            try:
                grid = Grid7(letters=tuple(letters), numbered=tuple(numbered))
            except ValueError:
                continue
            if grid_points(grid) == pts:
                return grid
    return None


def _realize_grid(pts: TwelvePoints, seed: int) -> Grid7:
    p = pts.p
    rng = seeded_rng("grid-witness", seed)
    betas = list(range(1, p))
    rng.shuffle(betas)
    budget = [1000]
    cols = (pts.xs, pts.ys, pts.zs)
    # the determinant is invariant under letter-role permutations, so any
    # pair with rowwise-distinct abscissas can serve as the two base lines
    for roles in ((0, 1, 2), (0, 2, 1), (1, 2, 0)):
        ia, ib, ic = roles
        avals, bvals, cvals = cols[ia], cols[ib], cols[ic]
        if any(a == b for a, b in zip(avals, bvals)):
            continue  # connecting line would be vertical; try another pair
        directions = _collinearity_directions(avals, bvals, cvals, p)
        grid = _realize_with_roles(pts, roles, directions, betas, budget)
        if grid is not None:
            return grid
    raise WitnessSearchFailedError("no realizing configuration within 1000 candidates")


def _points_equal(pt1, pt2, p) -> bool:
    # projective equality via vanishing cross product
    return all(v == 0 for v in _cross(pt1, pt2, p))


def case2_reduction_check(g: Grid7) -> bool:
    """Check the degenerate-grid reduction to classic Menelaus.

    Requires A_1 = C_1, B_2 = C_2 and A_3 = B_3 (numbered lines passing
    through the pairwise intersections of the letter lines).  Asserts the
    reduced three-segment identity on the abscissas and that the full
    twelve-point determinant still vanishes.
    """
    p = g.p
    lx, ly, lz = g.letters
    l1, l2, l3, l4 = g.numbered
    A1 = line_intersection(l1, lx)
    C1 = line_intersection(l1, lz)
    B2 = line_intersection(l2, ly)
    C2 = line_intersection(l2, lz)
    A3 = line_intersection(l3, lx)
    B3 = line_intersection(l3, ly)
    if not (
        _points_equal(A1, C1, p)
        and _points_equal(B2, C2, p)
        and _points_equal(A3, B3, p)
    ):
        raise PreconditionFailedError("grid lacks the A1=C1, B2=C2, A3=B3 coincidences")
    pts = grid_points(g)
    x1, _, x3, x4 = pts.xs
    _, y2, y3, y4 = pts.ys
    z4 = pts.zs[3]
    reduced = (
        (x3 - x1) * (y4 - y2) * (z4 - x4) - (y3 - y2) * (z4 - y4) * (x4 - x1)
    ) % p == 0
    return reduced and twelve_det(pts) == 0


def sample_grid(p: int, seed: int = 0, allow_vertical: bool = False, max_tries: int = 10000) -> Grid7:
    """Rejection-sample a valid seven-line grid.

    Letter lines are non-vertical; numbered lines may be vertical when
    allow_vertical is set (roughly one in five draws), exercising the
    all-zero-row branch of the determinant identity.
    """
    validate_prime_modulus(p)
    if p < 13:
        raise ValueError("need p >= 13 to sample grids comfortably")
    rng = seeded_rng("grid-sample", seed)
    for _ in range(max_tries):
        letters = tuple(
            ProjectiveLine.from_slope_intercept(p, rng.randrange(p), rng.randrange(p))
            for _ in range(3)
        )
        numbered = []
        for _ in range(4):
            if allow_vertical and rng.random() < 0.2:
                numbered.append(ProjectiveLine.vertical(p, rng.randrange(p)))
            else:
                numbered.append(
                    ProjectiveLine.from_slope_intercept(p, rng.randrange(p), rng.randrange(p))
                )
        try:
            return Grid7(letters=letters, numbered=tuple(numbered))
        except ValueError:
            continue
    raise SamplingFailedError(f"no valid grid after {max_tries} draws")


def sample_degenerate_grid(p: int, seed: int = 0, max_tries: int = 10000) -> Grid7:
    """Sample a grid with A_1 = C_1, B_2 = C_2, A_3 = B_3.

    Numbered lines 1-3 pass through the pairwise intersections of the
    letter lines; line 4 is free.  Used to exercise the classic-Menelaus
    reduction of the degenerate case.
    """
    validate_prime_modulus(p)
    rng = seeded_rng("degenerate-grid", seed)
    for _ in range(max_tries):
        letters = tuple(
            ProjectiveLine.from_slope_intercept(p, rng.randrange(p), rng.randrange(p))
            for _ in range(3)
        )
        lx, ly, lz = letters
        try:
            p_xz = line_intersection(lx, lz)
            p_yz = line_intersection(ly, lz)
            p_xy = line_intersection(lx, ly)
        except ValueError:
            continue
        if any(pt[2] == 0 for pt in (p_xz, p_yz, p_xy)):
            continue
        numbered = []
        ok = True
        for through in (p_xz, p_yz, p_xy):
            # a line through the pinned point with a random second point
            other = (rng.randrange(p), rng.randrange(p), 1)
            triple = _cross(through, other, p)
            if all(v == 0 for v in triple):
                ok = False
                break
            numbered.append(ProjectiveLine(p, *triple))
        if not ok:
            continue
        numbered.append(
            ProjectiveLine.from_slope_intercept(p, rng.randrange(p), rng.randrange(p))
        )
        try:
            return Grid7(letters=letters, numbered=tuple(numbered))
        except ValueError:
            continue
    raise SamplingFailedError(f"no degenerate grid after {max_tries} draws")
