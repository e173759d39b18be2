"""Canonical geometric representative of a closed braid in the solid torus.

Strands sit at fixed slot points on the unit circle, placed at angles
2^(1-j)*pi so that no two chords are parallel; each letter exchanges two
adjacent slots inside the middle third of its own z-slab along a pair of
sinusoidally bumped arcs.  The key property of the bump: the moving chord
between the two exchanging strands keeps its midpoint fixed and its
direction sweeps monotonically through exactly pi, so each spectator slot
is crossed by the moving line exactly once per half-turn.  That yields one
meridional trisecant per letter per spectator, i.e. 2*l*(n-2) triple
vertices after taking both time lifts.

All geometry is double precision; event coordinates are asserted to be
separated by EVENT_SEP and failures raise GenericityError instead of
perturbing anything silently.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

from scipy.optimize import brentq

from .words import BraidWord, strand_positions

TWO_PI = 2.0 * math.pi
ROOT_TOL = 1e-10       # z-root tolerance for event solving
EVENT_SEP = 1e-6       # minimum separation of distinct events
GENERICITY_MARGIN = 1e-8  # >= 10x the 1e-9 comparison tolerance


class GenericityError(RuntimeError):
    """A degeneracy was detected; the construction refuses to guess."""


def wrap_2pi(t: float) -> float:
    return t % TWO_PI


def wrap_pi(t: float) -> float:
    return t % math.pi


def wrap_pm_pi(t: float) -> float:
    """Wrap into (-pi, pi]."""
    t = (t + math.pi) % TWO_PI
    return t - math.pi if t != 0.0 else math.pi


def crossing_time(p: tuple[float, float], q: tuple[float, float]) -> tuple[float, float]:
    """The two rotation angles in [0, 2pi) at which p and q align vertically
    under the projection that forgets y.  The first lift lies in [0, pi)."""
    dx, dy = p[0] - q[0], p[1] - q[1]
    if dx * dx + dy * dy < 1e-18:
        raise ValueError("coincident points have no crossing time")
    t0 = wrap_pi(math.pi / 2 - math.atan2(dy, dx))
    return t0, t0 + math.pi


def t_over(p: tuple[float, float], q: tuple[float, float]) -> float:
    """The unique t in [0, 2pi) aligning p, q vertically with p on top."""
    return wrap_2pi(math.pi / 2 - math.atan2(p[1] - q[1], p[0] - q[0]))


def rot_x(p: tuple[float, float], t: float) -> float:
    return p[0] * math.cos(t) - p[1] * math.sin(t)


def rot_y(p: tuple[float, float], t: float) -> float:
    return p[0] * math.sin(t) + p[1] * math.cos(t)


@dataclass(frozen=True)
class GenericityReport:
    min_chord_direction_gap: float
    min_midpoint_collinearity: float
    min_trisecant_separation: float
    min_x_gap: float

    def worst(self) -> float:
        return min(
            self.min_chord_direction_gap,
            self.min_midpoint_collinearity,
            self.min_trisecant_separation,
            self.min_x_gap,
        )


@dataclass(frozen=True)
class SlotPlacement:
    """The n slot points on the unit circle and their genericity margins."""

    n: int
    angles: tuple[float, ...]
    points: tuple[tuple[float, float], ...]
    report: GenericityReport


@lru_cache(maxsize=None)
def slot_angles(n: int) -> SlotPlacement:
    if not 2 <= n <= 12:
        raise ValueError(f"supported strand range is 2..12, got {n}")
    angles = tuple(2.0 ** (1 - j) * math.pi for j in range(1, n)) + (0.0,)
    pts = tuple((math.cos(a), math.sin(a)) for a in angles)
    xs = [p[0] for p in pts]
    assert all(xs[i] < xs[i + 1] for i in range(n - 1)), "slot x order broken"

    dirs = sorted(
        math.atan2(pts[j][1] - pts[i][1], pts[j][0] - pts[i][0]) % math.pi
        for i in range(n)
        for j in range(i + 1, n)
    )
    if len(dirs) > 1:
        gaps = [dirs[k + 1] - dirs[k] for k in range(len(dirs) - 1)]
        gaps.append(dirs[0] + math.pi - dirs[-1])
    else:
        gaps = [math.pi]

    mid_margin = math.inf
    tri_margin = math.inf
    for i in range(n - 1):
        mx = (pts[i][0] + pts[i + 1][0]) / 2
        my = (pts[i][1] + pts[i + 1][1]) / 2
        chord_dir = math.atan2(pts[i + 1][1] - pts[i][1], pts[i + 1][0] - pts[i][0]) % math.pi
        spec_dirs = []
        for a in range(n):
            for b in range(a + 1, n):
                if a in (i, i + 1) and b in (i, i + 1):
                    continue
                cross = (pts[b][0] - pts[a][0]) * (my - pts[a][1]) - (
                    pts[b][1] - pts[a][1]
                ) * (mx - pts[a][0])
                mid_margin = min(mid_margin, abs(cross))
        for j in range(n):
            if j in (i, i + 1):
                continue
            d = math.atan2(pts[j][1] - my, pts[j][0] - mx) % math.pi
            spec_dirs.append(d)
            tri_margin = min(tri_margin, abs(wrap_pm_pi(2 * (d - chord_dir))) / 2)
        spec_dirs.sort()
        for k in range(len(spec_dirs) - 1):
            tri_margin = min(tri_margin, spec_dirs[k + 1] - spec_dirs[k])
        if len(spec_dirs) > 1:
            tri_margin = min(tri_margin, spec_dirs[0] + math.pi - spec_dirs[-1])

    x_gap = min(xs[i + 1] - xs[i] for i in range(n - 1)) if n >= 2 else math.inf
    report = GenericityReport(min(gaps), mid_margin, tri_margin, x_gap)
    if report.worst() < GENERICITY_MARGIN:
        raise GenericityError(f"slot placement for n={n} has margin {report.worst():.3e}")
    return SlotPlacement(n, angles, pts, report)


def _dist_point_segment(p, a, b) -> float:
    ax, ay = a
    bx, by = b
    px, py = p
    vx, vy = bx - ax, by - ay
    L2 = vx * vx + vy * vy
    s = max(0.0, min(1.0, ((px - ax) * vx + (py - ay) * vy) / L2))
    cx, cy = ax + s * vx, ay + s * vy
    return math.hypot(px - cx, py - cy)


def _dist_segment_line(a, b, p, q) -> float:
    """Distance from segment [a,b] to the full line through p, q; the segment
    is assumed not to cross the line (convex position of slots)."""
    ux, uy = q[0] - p[0], q[1] - p[1]
    L = math.hypot(ux, uy)

    def d(pt):
        return abs(ux * (pt[1] - p[1]) - uy * (pt[0] - p[0])) / L

    return min(d(a), d(b))


@lru_cache(maxsize=None)
def bump_amplitude(n: int) -> float:
    """delta: 0.1x the clearance between each exchange chord and everything it
    must not touch (other slots, lines through other slot pairs, and the
    x-gaps that keep the time-zero diagram clean)."""
    placement = slot_angles(n)
    pts = placement.points
    clearance = placement.report.min_x_gap
    for i in range(n - 1):
        a, b = pts[i], pts[i + 1]
        for k in range(n):
            if k in (i, i + 1):
                continue
            clearance = min(clearance, _dist_point_segment(pts[k], a, b))
        for p in range(n):
            for q in range(p + 1, n):
                if p in (i, i + 1) or q in (i, i + 1):
                    continue
                clearance = min(clearance, _dist_segment_line(a, b, pts[p], pts[q]))
    delta = 0.1 * clearance
    if delta <= 0:
        raise GenericityError(f"no positive bump amplitude for n={n}")
    return delta


# ---------------------------------------------------------------------------
# Per-letter geometry, independent of the word (cache key: n, slot, sign)


@dataclass(frozen=True)
class TrisecantEvent:
    spectator_slot: int   # 1-based slot position
    s: float              # window parameter in (0, 1)
    line_angle: float     # world direction of the trisecant line
    t0: float             # lift in [0, pi); the other lift is t0 + pi
    y_order_t0: tuple[str, str, str]  # symbols 'u', 'v', 'spec' by decreasing rotated y at t0
    slopes: dict          # unordered symbol pair -> dt/ds at the event


@dataclass(frozen=True)
class ExtremumEvent:
    mover: str            # 'u' or 'v'
    spectator_slot: int
    s: float
    t0: float             # t value mod pi


@dataclass(frozen=True)
class LetterGeometry:
    n: int
    slot: int             # i: exchanges slots i, i+1
    sign: int
    delta: float
    chord: tuple[float, float]
    chord_len: float
    normal: tuple[float, float]
    chord_angle: float
    trisecants: tuple[TrisecantEvent, ...]
    extrema: tuple[ExtremumEvent, ...]

    def u(self, s: float) -> tuple[float, float]:
        pts = slot_angles(self.n).points
        qi = pts[self.slot - 1]
        bump = self.sign * self.delta * math.sin(math.pi * s)
        return (
            qi[0] + s * self.chord[0] + bump * self.normal[0],
            qi[1] + s * self.chord[1] + bump * self.normal[1],
        )

    def v(self, s: float) -> tuple[float, float]:
        pts = slot_angles(self.n).points
        qi1 = pts[self.slot]
        bump = self.sign * self.delta * math.sin(math.pi * s)
        return (
            qi1[0] - s * self.chord[0] - bump * self.normal[0],
            qi1[1] - s * self.chord[1] - bump * self.normal[1],
        )

    def u_velocity(self, s: float) -> tuple[float, float]:
        k = self.sign * self.delta * math.pi * math.cos(math.pi * s)
        return (self.chord[0] + k * self.normal[0], self.chord[1] + k * self.normal[1])

    def v_velocity(self, s: float) -> tuple[float, float]:
        ux, uy = self.u_velocity(s)
        return (-ux, -uy)

    def eta(self, s: float) -> float:
        """Chord-frame direction of v-u; monotone, runs from 0 to -sign*pi."""
        return math.atan2(
            -2.0 * self.sign * self.delta * math.sin(math.pi * s),
            (1.0 - 2.0 * s) * self.chord_len,
        )

    def moving_pair_delta_t(self, s1: float, s2: float) -> float:
        """Exact t-displacement of the moving-pair curve over [s1, s2]."""
        if s1 == 0.0 and s2 == 1.0:
            return self.sign * math.pi
        e1 = self.eta(s1) if s1 > 0.0 else 0.0
        e2 = self.eta(s2) if s2 < 1.0 else -self.sign * math.pi
        return -(e2 - e1)

    def mover_spectator_delta_t(self, mover: str, slot_pt, s1: float, s2: float) -> float:
        """t-displacement of (mover, stationary point) over [s1, s2]; the
        sight-line cone is narrower than pi, so the principal wrap is exact."""
        f = self.u if mover == "u" else self.v
        p1, p2 = f(s1), f(s2)
        th1 = math.atan2(p1[1] - slot_pt[1], p1[0] - slot_pt[0])
        th2 = math.atan2(p2[1] - slot_pt[1], p2[0] - slot_pt[0])
        return -wrap_pm_pi(th2 - th1)


def _slope_mover_spectator(geom: LetterGeometry, mover: str, slot_pt, s: float) -> float:
    f, fv = (geom.u, geom.u_velocity) if mover == "u" else (geom.v, geom.v_velocity)
    p = f(s)
    vel = fv(s)
    gx, gy = p[0] - slot_pt[0], p[1] - slot_pt[1]
    return -(gx * vel[1] - gy * vel[0]) / (gx * gx + gy * gy)


def _slope_moving_pair(geom: LetterGeometry, s: float) -> float:
    h = (1 - 2 * s) * math.pi * math.cos(math.pi * s) + 2 * math.sin(math.pi * s)
    wx = (1 - 2 * s) * geom.chord_len
    wy = -2 * geom.sign * geom.delta * math.sin(math.pi * s)
    return 2 * geom.sign * geom.delta * geom.chord_len * h / (wx * wx + wy * wy)


@lru_cache(maxsize=None)
def letter_geometry(n: int, slot: int, sign: int) -> LetterGeometry:
    placement = slot_angles(n)
    pts = placement.points
    qi, qi1 = pts[slot - 1], pts[slot]
    chord = (qi1[0] - qi[0], qi1[1] - qi[1])
    clen = math.hypot(*chord)
    normal = (-chord[1] / clen, chord[0] / clen)
    chord_angle = math.atan2(chord[1], chord[0])
    delta = bump_amplitude(n)
    mid = ((qi[0] + qi1[0]) / 2, (qi[1] + qi1[1]) / 2)

    geom = LetterGeometry(
        n, slot, sign, delta, chord, clen, normal, chord_angle, (), ()
    )

    # trisecants: the moving line through the fixed midpoint sweeps every
    # direction mod pi exactly once; solve eta(s) = spectator direction
    events = []
    for j in range(1, n + 1):
        if j in (slot, slot + 1):
            continue
        beta = math.atan2(pts[j - 1][1] - mid[1], pts[j - 1][0] - mid[0])
        tau = (beta - chord_angle) % math.pi
        if sign > 0:
            tau -= math.pi  # eta runs (0, -pi)
        f = lambda s, tau=tau: geom.eta(s) - tau
        lo, hi = 1e-15, 1.0 - 1e-15
        if f(lo) * f(hi) > 0:
            raise GenericityError(
                f"trisecant bracket failed for n={n} slot={slot} spectator={j}"
            )
        s_star = brentq(f, lo, hi, xtol=ROOT_TOL)
        line_angle = beta
        t0 = wrap_pi(math.pi / 2 - line_angle)
        u_pt, v_pt, s_pt = geom.u(s_star), geom.v(s_star), pts[j - 1]
        ys = sorted(
            (("u", rot_y(u_pt, t0)), ("v", rot_y(v_pt, t0)), ("spec", rot_y(s_pt, t0))),
            key=lambda kv: -kv[1],
        )
        order = tuple(k for k, _ in ys)
        yvals = [y for _, y in ys]
        if yvals[0] - yvals[1] < EVENT_SEP or yvals[1] - yvals[2] < EVENT_SEP:
            raise GenericityError(f"trisecant y-order degenerate, n={n} slot={slot}")
        slopes = {
            frozenset(("u", "v")): _slope_moving_pair(geom, s_star),
            frozenset(("u", "spec")): _slope_mover_spectator(geom, "u", s_pt, s_star),
            frozenset(("v", "spec")): _slope_mover_spectator(geom, "v", s_pt, s_star),
        }
        vals = sorted(slopes.values())
        if vals[1] - vals[0] < EVENT_SEP or vals[2] - vals[1] < EVENT_SEP:
            raise GenericityError(f"trisecant slopes degenerate, n={n} slot={slot}")
        events.append(TrisecantEvent(j, s_star, line_angle, t0, order, slopes))
    events.sort(key=lambda e: e.s)
    for a, b in zip(events, events[1:]):
        if b.s - a.s < EVENT_SEP:
            raise GenericityError(f"two trisecants too close in one window, n={n}")

    # tangency extrema of mover-spectator curves (Reidemeister II events)
    extrema = []
    for mover in ("u", "v"):
        f, fv = (geom.u, geom.u_velocity) if mover == "u" else (geom.v, geom.v_velocity)
        for j in range(1, n + 1):
            if j in (slot, slot + 1):
                continue
            spt = pts[j - 1]

            def g(s):
                p = f(s)
                vel = fv(s)
                return (p[0] - spt[0]) * vel[1] - (p[1] - spt[1]) * vel[0]

            samples = [k / 32 for k in range(33)]
            vals = [g(s) for s in samples]
            for k in range(32):
                if vals[k] == 0.0 or vals[k] * vals[k + 1] < 0:
                    s_ext = brentq(g, samples[k], samples[k + 1], xtol=ROOT_TOL)
                    p = f(s_ext)
                    t0 = wrap_pi(math.pi / 2 - math.atan2(p[1] - spt[1], p[0] - spt[0]))
                    extrema.append(ExtremumEvent(mover, j, s_ext, t0))

    return LetterGeometry(
        n, slot, sign, delta, chord, clen, normal, chord_angle,
        tuple(events), tuple(extrema),
    )


# ---------------------------------------------------------------------------
# Strand paths of a whole word


@dataclass
class StrandPathSet:
    """Piecewise strand paths z -> disk point for the canonical embedding.

    Letter m (0-based) occupies the slab [m/l, (m+1)/l); its exchange is
    confined to the middle third of the slab.
    """

    word: BraidWord
    placement: SlotPlacement
    delta: float
    occ: tuple[tuple[int, ...], ...]       # occupancy before each letter, plus top
    pos_of: tuple[tuple[int, ...], ...]    # pos_of[m][track-1] = slot position
    geoms: tuple[LetterGeometry, ...]

    @property
    def n(self) -> int:
        return self.word.n

    @property
    def length(self) -> int:
        return len(self.word)

    def window(self, m: int) -> tuple[float, float]:
        l = self.length
        return (m / l + 1 / (3 * l), m / l + 2 / (3 * l))

    def locate(self, z: float) -> tuple[int, float]:
        """Map z in [0,1) to (letter index, window parameter s); s is None-ish
        (-1) outside the exchange window."""
        l = self.length
        if l == 0:
            return 0, -1.0
        z = z % 1.0
        m = min(int(z * l), l - 1)
        frac = z * l - m
        if frac < 1 / 3 or frac >= 2 / 3:
            return m, -1.0
        return m, 3 * frac - 1

    def movers(self, m: int) -> tuple[int, int]:
        i = self.word.letters[m][0]
        return self.occ[m][i - 1], self.occ[m][i]

    def track_position(self, track: int, z: float) -> tuple[float, float]:
        l = self.length
        pts = self.placement.points
        if l == 0:
            return pts[track - 1]
        z = z % 1.0
        m = min(int(z * l), l - 1)
        frac = z * l - m
        pos = self.pos_of[m][track - 1]
        i = self.word.letters[m][0]
        if frac < 1 / 3:
            return pts[pos - 1]
        if frac >= 2 / 3:
            return pts[self.pos_of[m + 1][track - 1] - 1]
        if pos == i:
            return self.geoms[m].u(3 * frac - 1)
        if pos == i + 1:
            return self.geoms[m].v(3 * frac - 1)
        return pts[pos - 1]

    def track_velocity(self, track: int, z: float) -> tuple[float, float]:
        """d(position)/dz; scaled by 3l inside exchange windows."""
        l = self.length
        if l == 0:
            return (0.0, 0.0)
        z = z % 1.0
        m = min(int(z * l), l - 1)
        frac = z * l - m
        if frac < 1 / 3 or frac >= 2 / 3:
            return (0.0, 0.0)
        pos = self.pos_of[m][track - 1]
        i = self.word.letters[m][0]
        s = 3 * frac - 1
        scale = 3 * l
        if pos == i:
            vx, vy = self.geoms[m].u_velocity(s)
        elif pos == i + 1:
            vx, vy = self.geoms[m].v_velocity(s)
        else:
            return (0.0, 0.0)
        return (vx * scale, vy * scale)

    def positions_at(self, z: float) -> list[tuple[float, float]]:
        return [self.track_position(tr, z) for tr in range(1, self.n + 1)]


def strand_paths(w: BraidWord) -> StrandPathSet:
    """Build the canonical strand paths for a word (empty words allowed)."""
    placement = slot_angles(w.n)
    occ = tuple(strand_positions(w))
    pos_of = []
    for vec in occ:
        inv = [0] * w.n
        for p, tr in enumerate(vec, start=1):
            inv[tr - 1] = p
        pos_of.append(tuple(inv))
    geoms = tuple(letter_geometry(w.n, i, s) for i, s in w.letters)
    return StrandPathSet(w, placement, bump_amplitude(w.n), occ, tuple(pos_of), geoms)
