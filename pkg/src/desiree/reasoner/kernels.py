"""Interpretation-enumeration kernels: a jit path and a numpy path.

Both walk interpretation indices in ascending order and return the
smallest index whose interpretation satisfies every axiom yet puts some
element in d1 outside d2 (-1 when the range is clean). Setting
DESIREE_PURE_NUMPY=1 forces the vectorized numpy path; otherwise the
numba path is used when numba imports.

Index layout, least significant first: individual assignments (radix k),
named-region bits (gamma per region), slot bits (k+gamma per source, per
slot), atom bits (k per atom). The decoder in oracle.py mirrors this.
"""
from __future__ import annotations

import os

import numpy as np

from desiree.reasoner.compile import (
    OP_AND,
    OP_DIFF,
    OP_OR,
    OP_PROJ,
    OP_PUSH_ALL,
    OP_PUSH_ATOM,
    OP_PUSH_ENUM,
    OP_PUSH_FIXED,
    OP_PUSH_NAMED,
    OP_PUSH_NONE,
    OP_SLOT_COUNT,
    OP_SLOT_ONLY,
)

POPCNT = np.array([bin(i).count("1") for i in range(1 << 16)], dtype=np.uint8)

try:
    from numba import njit

    HAVE_NUMBA = True
except ImportError:  # pragma: no cover - numba is normally installed
    HAVE_NUMBA = False


def backend_name() -> str:
    if os.environ.get("DESIREE_PURE_NUMPY") == "1" or not HAVE_NUMBA:
        return "numpy"
    return "numba"


def find_violation(
    total: int,
    k: int,
    gamma: int,
    n_atoms: int,
    n_slots: int,
    n_named: int,
    n_inds: int,
    n_axioms: int,
    progs: np.ndarray,
    bounds: np.ndarray,
    enum_table: np.ndarray,
) -> int:
    args = (k, gamma, n_atoms, n_slots, n_named, n_inds, n_axioms,
            progs, bounds, enum_table)
    if backend_name() == "numba":
        return int(_search_jit(0, total, *args, POPCNT))
    return _search_numpy(total, *args)


# ---------------------------------------------------------------- numpy

def _decode_chunk(idx, k, gamma, n_atoms, n_slots, n_named, n_inds):
    u = k + gamma
    n = idx.shape[0]
    rest = idx.astype(np.int64)
    assign = np.zeros((max(n_inds, 1), n), np.int64)
    for i in range(n_inds):
        assign[i] = rest % k
        rest = rest // k
    named = np.zeros((max(n_named, 1), n), np.int64)
    gbits = (1 << gamma) - 1
    for j in range(n_named):
        named[j] = (rest & gbits) << k
        rest = rest >> gamma
    slot_rel = np.zeros((max(n_slots, 1), k, n), np.int64)
    ubits = (1 << u) - 1
    for s in range(n_slots):
        for x in range(k):
            slot_rel[s, x] = rest & ubits
            rest = rest >> u
    atoms = np.zeros((max(n_atoms, 1), n), np.int64)
    kbits = (1 << k) - 1
    for a in range(n_atoms):
        atoms[a] = rest & kbits
        rest = rest >> k
    return atoms, slot_rel, named, assign


def _eval_numpy(row, progs, bounds, enum_table, atoms, slot_rel, named,
                assign, k, full, grid_mask, n):
    stack = []
    for pi in range(bounds[row, 0], bounds[row, 1]):
        op, a, b, c = progs[pi]
        if op == OP_PUSH_ATOM:
            stack.append(atoms[a])
        elif op == OP_PUSH_FIXED:
            stack.append(np.full(n, a, np.int64))
        elif op == OP_PUSH_NAMED:
            stack.append(named[a])
        elif op == OP_PUSH_ENUM:
            res = np.zeros(n, np.int64)
            for j in range(a, a + b):
                res |= np.int64(1) << assign[enum_table[j]]
            stack.append(res)
        elif op == OP_PUSH_ALL:
            stack.append(np.full(n, full, np.int64))
        elif op == OP_PUSH_NONE:
            stack.append(np.zeros(n, np.int64))
        elif op == OP_AND:
            y = stack.pop()
            stack.append(stack.pop() & y)
        elif op == OP_OR:
            y = stack.pop()
            stack.append(stack.pop() | y)
        elif op == OP_DIFF:
            y = stack.pop()
            stack.append(stack.pop() & ~y & full)
        elif op == OP_SLOT_COUNT:
            filler = stack.pop()
            res = np.zeros(n, np.int64)
            for x in range(k):
                cnt = POPCNT[slot_rel[a, x] & filler].astype(np.int64)
                ok = cnt >= b
                if c >= 0:
                    ok = ok & (cnt <= c)
                res |= ok.astype(np.int64) << x
            if b == 0:
                res |= grid_mask
            stack.append(res)
        elif op == OP_SLOT_ONLY:
            filler = stack.pop()
            res = np.full(n, grid_mask, np.int64)
            for x in range(k):
                ok = (slot_rel[a, x] & ~filler & full) == 0
                res |= ok.astype(np.int64) << x
            stack.append(res)
        else:  # OP_PROJ
            base = stack.pop()
            res = np.zeros(n, np.int64)
            for x in range(k):
                has = ((base >> x) & 1).astype(bool)
                res |= np.where(has, slot_rel[a, x], 0)
            stack.append(res & full)
    return stack[0]


def _search_numpy(total, k, gamma, n_atoms, n_slots, n_named, n_inds,
                  n_axioms, progs, bounds, enum_table):
    full = (1 << (k + gamma)) - 1
    grid_mask = full & ~((1 << k) - 1)
    chunk = 1 << 15
    start = 0
    while start < total:
        stop = min(start + chunk, total)
        idx = np.arange(start, stop, dtype=np.int64)
        atoms, slot_rel, named, assign = _decode_chunk(
            idx, k, gamma, n_atoms, n_slots, n_named, n_inds)
        n = idx.shape[0]

        def ev(row):
            return _eval_numpy(row, progs, bounds, enum_table, atoms,
                               slot_rel, named, assign, k, full, grid_mask, n)

        ok = np.ones(n, bool)
        for ai in range(n_axioms):
            ok &= (ev(2 + 2 * ai) & ~ev(3 + 2 * ai) & full) == 0
            if not ok.any():
                break
        if ok.any():
            viol = ok & ((ev(0) & ~ev(1) & full) != 0)
            if viol.any():
                return int(start + np.argmax(viol))
        start = stop
    return -1


# ----------------------------------------------------------------- jit

if HAVE_NUMBA:

    @njit(cache=True)
    def _eval_jit(row, progs, bounds, enum_table, atoms, slot_rel, named,
                  assign, k, full, grid_mask, popcnt, stack):
        sp = 0
        for pi in range(bounds[row, 0], bounds[row, 1]):
            op = progs[pi, 0]
            a = progs[pi, 1]
            b = progs[pi, 2]
            c = progs[pi, 3]
            if op == OP_PUSH_ATOM:
                stack[sp] = atoms[a]
                sp += 1
            elif op == OP_PUSH_FIXED:
                stack[sp] = a
                sp += 1
            elif op == OP_PUSH_NAMED:
                stack[sp] = named[a]
                sp += 1
            elif op == OP_PUSH_ENUM:
                m = 0
                for j in range(a, a + b):
                    m |= 1 << assign[enum_table[j]]
                stack[sp] = m
                sp += 1
            elif op == OP_PUSH_ALL:
                stack[sp] = full
                sp += 1
            elif op == OP_PUSH_NONE:
                stack[sp] = 0
                sp += 1
            elif op == OP_AND:
                sp -= 1
                stack[sp - 1] = stack[sp - 1] & stack[sp]
            elif op == OP_OR:
                sp -= 1
                stack[sp - 1] = stack[sp - 1] | stack[sp]
            elif op == OP_DIFF:
                sp -= 1
                stack[sp - 1] = stack[sp - 1] & ~stack[sp] & full
            elif op == OP_SLOT_COUNT:
                filler = stack[sp - 1]
                res = 0
                for x in range(k):
                    cnt = popcnt[slot_rel[a, x] & filler]
                    if cnt >= b and (c < 0 or cnt <= c):
                        res |= 1 << x
                if b == 0:
                    res |= grid_mask
                stack[sp - 1] = res
            elif op == OP_SLOT_ONLY:
                filler = stack[sp - 1]
                res = grid_mask
                for x in range(k):
                    if slot_rel[a, x] & ~filler & full == 0:
                        res |= 1 << x
                stack[sp - 1] = res
            else:  # OP_PROJ
                base = stack[sp - 1]
                res = 0
                for x in range(k):
                    if base & (1 << x):
                        res |= slot_rel[a, x]
                stack[sp - 1] = res & full
        return stack[0]

    @njit(cache=True)
    def _search_jit(start, stop, k, gamma, n_atoms, n_slots, n_named,
                    n_inds, n_axioms, progs, bounds, enum_table, popcnt):
        u = k + gamma
        full = (1 << u) - 1
        grid_mask = full & ~((1 << k) - 1)
        kbits = (1 << k) - 1
        gbits = (1 << gamma) - 1
        atoms = np.zeros(max(n_atoms, 1), np.int64)
        slot_rel = np.zeros((max(n_slots, 1), k), np.int64)
        named = np.zeros(max(n_named, 1), np.int64)
        assign = np.zeros(max(n_inds, 1), np.int64)
        stack = np.zeros(64, np.int64)
        for idx in range(start, stop):
            rest = idx
            for i in range(n_inds):
                assign[i] = rest % k
                rest //= k
            for j in range(n_named):
                named[j] = (rest & gbits) << k
                rest >>= gamma
            for s in range(n_slots):
                for x in range(k):
                    slot_rel[s, x] = rest & full
                    rest >>= u
            for a in range(n_atoms):
                atoms[a] = rest & kbits
                rest >>= k
            ok = True
            for ai in range(n_axioms):
                lhs = _eval_jit(2 + 2 * ai, progs, bounds, enum_table,
                                atoms, slot_rel, named, assign, k, full,
                                grid_mask, popcnt, stack)
                rhs = _eval_jit(3 + 2 * ai, progs, bounds, enum_table,
                                atoms, slot_rel, named, assign, k, full,
                                grid_mask, popcnt, stack)
                if lhs & ~rhs & full != 0:
                    ok = False
                    break
            if not ok:
                continue
            m1 = _eval_jit(0, progs, bounds, enum_table, atoms, slot_rel,
                           named, assign, k, full, grid_mask, popcnt, stack)
            m2 = _eval_jit(1, progs, bounds, enum_table, atoms, slot_rel,
                           named, assign, k, full, grid_mask, popcnt, stack)
            if m1 & ~m2 & full != 0:
                return idx
        return -1
