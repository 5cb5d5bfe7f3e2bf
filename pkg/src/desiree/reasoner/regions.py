"""Region comparison: proven inclusion, proven emptiness, witnesses.

All checks are conservative: a False from region_subset means "not
proven", not "disproved". Disproof comes from region_gap_point, which
returns a concrete value inside r1 but outside r2 when one is certain.
Named regions are compared through the declared edges only.
"""
from __future__ import annotations

from fractions import Fraction

from desiree.syntax import ast


def _unit(r: ast.Interval) -> str:
    return r.unit or ""


def _numeric_members(vs: ast.ValueSet) -> list[Fraction]:
    out = []
    for v in vs.values:
        try:
            out.append(Fraction(v))
        except ValueError:
            pass
    return out


def named_closure(name: str, edges: list[tuple[str, str]]) -> frozenset[str]:
    """All names reachable from name over sub-to-super edges."""
    seen = {name}
    frontier = [name]
    while frontier:
        cur = frontier.pop()
        for sub, sup in edges:
            if sub == cur and sup not in seen:
                seen.add(sup)
                frontier.append(sup)
    return frozenset(seen)


def region_subset(
    r1: ast.RegionExpr,
    r2: ast.RegionExpr,
    region_edges: list[tuple[str, str]] | None = None,
) -> bool:
    """Whether r1 is provably contained in r2."""
    if r1 == r2:
        return True
    if isinstance(r1, ast.Named) or isinstance(r2, ast.Named):
        if isinstance(r1, ast.Named) and isinstance(r2, ast.Named):
            return r2.name in named_closure(r1.name, region_edges or [])
        return False
    if isinstance(r1, ast.Interval) and isinstance(r2, ast.Interval):
        if _unit(r1) != _unit(r2):
            return False
        lo_ok = r2.lo <= r1.lo
        hi_ok = r2.hi is None or (r1.hi is not None and r1.hi <= r2.hi)
        return lo_ok and hi_ok
    if isinstance(r1, ast.ValueSet) and isinstance(r2, ast.ValueSet):
        return set(r1.values) <= set(r2.values)
    if isinstance(r1, ast.ValueSet) and isinstance(r2, ast.Interval):
        nums = _numeric_members(r1)
        if len(nums) != len(r1.values):
            return False  # literal members cannot sit in an interval
        return all(
            r2.lo <= v and (r2.hi is None or v <= r2.hi) for v in nums)
    if isinstance(r1, ast.Percent) and isinstance(r2, ast.Percent):
        return r2.lo <= r1.lo and r1.hi <= r2.hi
    return False


def region_gap_point(r1: ast.RegionExpr, r2: ast.RegionExpr):
    """A concrete point certainly in r1 and not in r2, or None.

    Only concrete regions of matching unit families yield witnesses;
    anything involving a named region stays inconclusive.
    """
    if isinstance(r1, ast.Named) or isinstance(r2, ast.Named):
        return None
    if isinstance(r1, ast.Interval) and isinstance(r2, ast.Interval):
        if _unit(r1) != _unit(r2):
            return None
        if r1.lo < r2.lo:
            return r1.lo
        if r2.hi is not None:
            if r1.hi is None:
                return r2.hi + 1
            if r1.hi > r2.hi:
                return r1.hi
        return None
    if isinstance(r1, ast.ValueSet):
        for v in r1.values:
            try:
                num = Fraction(v)
            except ValueError:
                num = None
            if isinstance(r2, ast.ValueSet):
                if v not in r2.values:
                    return v if num is None else num
            elif isinstance(r2, ast.Interval) and num is not None:
                if num < r2.lo or (r2.hi is not None and num > r2.hi):
                    return num
            elif isinstance(r2, ast.Interval):
                return v  # a literal is never inside an interval
        return None
    if isinstance(r1, ast.Percent) and isinstance(r2, ast.Percent):
        if r1.lo < r2.lo:
            return r1.lo
        if r1.hi > r2.hi:
            return r1.hi
        return None
    if isinstance(r1, ast.Interval) and isinstance(r2, ast.ValueSet):
        nums = set(_numeric_members(r2))
        if r1.lo not in nums:
            return r1.lo
        if r1.hi is None:
            probe = r1.lo + 1
            while probe in nums:
                probe += 1
            return probe
        if r1.lo == r1.hi:
            return None  # the single point is enumerated
        # |nums| steps of this size stay strictly inside the interval
        step = (r1.hi - r1.lo) / (2 * len(nums) + 2)
        probe = r1.lo + step
        while probe in nums:
            probe += step
        return probe
    return None


def regions_certainly_disjoint(r1: ast.RegionExpr, r2: ast.RegionExpr) -> bool:
    """Whether two concrete regions provably share no point."""
    if isinstance(r1, ast.ValueSet) and not isinstance(r2, ast.ValueSet):
        return regions_certainly_disjoint(r2, r1)
    if isinstance(r1, ast.Interval) and isinstance(r2, ast.Interval):
        if _unit(r1) != _unit(r2):
            return False
        if r1.hi is not None and r1.hi < r2.lo:
            return True
        if r2.hi is not None and r2.hi < r1.lo:
            return True
        return False
    if isinstance(r1, ast.Interval) and isinstance(r2, ast.ValueSet):
        # literal members never sit in an interval, so only numbers matter
        return not any(
            r1.lo <= v and (r1.hi is None or v <= r1.hi)
            for v in _numeric_members(r2))
    if isinstance(r1, ast.ValueSet) and isinstance(r2, ast.ValueSet):
        return not set(r1.values) & set(r2.values)
    if isinstance(r1, ast.Percent) and isinstance(r2, ast.Percent):
        return r1.hi < r2.lo or r2.hi < r1.lo
    return False
