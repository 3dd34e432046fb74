"""Faithful port of the published reference enumeration code.

This module reproduces, as closely as possible, the floating-point
enumeration routines that produced the published counting tables.  It is
deliberately slow and un-idiomatic: walks live in float hexagon
coordinates and points are compared with a tolerance, exactly as in the
original.  It exists so the fast integer enumerators elsewhere in this
package can be cross-checked against an independent computation.

A few lines of the original listing do not run as printed; the minimal
corrections are marked with "fix:" comments and recorded in the project
notes.  Everything else is verbatim up to formatting.
"""

from __future__ import annotations

import numpy as np

TOL = 1e-6

SQRT3 = 3 ** 0.5


def is_close(p1, p2, tol=TOL):
    return abs(p1[0] - p2[0]) < tol and abs(p1[1] - p2[1]) < tol


def in_path_with_tol(p, path, tol=TOL):
    return any(is_close(p, q, tol) for q in path)


def hits(a, b):
    return any(in_path_with_tol(p, b) for p in a)


def firsts(paths):
    return [p[0] for p in paths]


def lasts(paths):
    return [p[-1] for p in paths]


# ---------------------------------------------------------------------------
# hexagonal lattice, float coordinates

def starts2(n):
    s = []
    for i in range(0, n + 1):
        s.append([[-0.5 - i * 1.5, SQRT3 / 2 * (1 - i)],
                  [-1 - i * 1.5, SQRT3 / 2 * (2 - i)]])
    return s


def ends2(n, o):
    e = []
    for i in range(0, n + 1):
        if o == 1:
            e.append([[0.5 + i * 1.5, SQRT3 / 2 * (1 - i)],
                      [1 + i * 1.5, SQRT3 / 2 * (2 - i)]])
        elif o == 0:
            val = 2 * (i + 1.5) * SQRT3 / 2
            e.append([[0.5, val], [-0.5, val]])
    return e


def alls(length, o):
    return starts2(length) + ends2(length, o)


def _hex_steps(path):
    last = path[-1]
    second_last = path[-2]
    dx = last[0] - second_last[0]
    dy = last[1] - second_last[1]
    left = [last[0] + dx / 2 - (SQRT3 / 2) * dy,
            last[1] + (SQRT3 / 2) * dx + dy / 2]
    right = [last[0] + dx / 2 + (SQRT3 / 2) * dy,
             last[1] - (SQRT3 / 2) * dx + dy / 2]
    return [left, right]


def generate_saws(length, start_paths, end_paths, intersect_path):
    results = []
    end_firsts = firsts(end_paths)
    start_firsts = firsts(start_paths)
    all_end_start = start_firsts + end_firsts

    def recurse(path):
        if len(path) == length + 1:
            if in_path_with_tol(path[-1], end_firsts):
                if hits(path, intersect_path):
                    if not hits(path[1:-1], all_end_start):
                        if not any(all(is_close(p1, p2) for p1, p2
                                       in zip(path[::-1], r)) for r in results):
                            results.append(path.copy())
            return
        for next_point in _hex_steps(path):
            if not in_path_with_tol(next_point, path):
                if in_path_with_tol(path[-1], end_firsts) and len(path) != length:
                    continue
                path.append(next_point)
                recurse(path)
                path.pop()

    for sp in start_paths:
        recurse(sp[:])
    return results


def generate_loops(length, start_paths, end_paths, intersect_path):
    results = []
    end_firsts = firsts(end_paths)
    start_firsts = firsts(start_paths)
    all_end_start = start_firsts + end_firsts

    def recurse(path):
        if len(path) == length + 1:
            if in_path_with_tol(path[-1], end_firsts):
                if hits(path, intersect_path):
                    if not hits(path[1:-1], all_end_start):
                        if not any(all(is_close(p1, p2) for p1, p2
                                       in zip(path[::-1], r)) for r in results):
                            results.append(path.copy())
            return
        for next_point in _hex_steps(path):
            if not in_path_with_tol(next_point, path[1:]):
                if in_path_with_tol(path[-1], end_firsts) and len(path) != length:
                    continue
                path.append(next_point)
                recurse(path)
                path.pop()

    for sp in start_paths:
        recurse(sp[:])
    return results


def saw_with_avoidance(length, start_paths, end_paths, intersect_path, avoid_path):
    results = []
    end_firsts = firsts(end_paths)

    def recurse(path):
        if len(path) == length + 1:
            if in_path_with_tol(path[-1], end_firsts):
                if hits(path, intersect_path):
                    if not hits(path[1:-1], avoid_path):
                        if not any(all(is_close(p1, p2) for p1, p2
                                       in zip(path[::-1], r)) for r in results):
                            results.append(path.copy())
            return
        for next_point in _hex_steps(path):
            if not in_path_with_tol(next_point, path):
                if in_path_with_tol(path[-1], end_firsts) and len(path) != length:
                    continue
                path.append(next_point)
                recurse(path)
                path.pop()

    for sp in start_paths:
        recurse(sp[:])
    return results


def N(length):
    a = []
    for i in range(6, length + 2, 2):
        a.append(len(generate_loops(i, starts2(0), starts2(0), starts2(0)[0])))
    return a


def sww(length_gamma, upper_bound):
    a = [[] for _ in range(upper_bound - 2)]
    gammas_outer = generate_saws(length_gamma, alls(upper_bound, 0),
                                 alls(upper_bound, 0), lasts(alls(upper_bound, 1)))
    gammas_inner = generate_saws(length_gamma, alls(upper_bound, 1),
                                 alls(upper_bound, 1), lasts(alls(upper_bound, 0)))
    for self_avoiding_walk_inner in gammas_inner:
        for length_gamma_prime in range(3, upper_bound + 1):
            # fix: the original refers to an undefined "u" here
            a[length_gamma_prime - 3].append(len(generate_saws(
                length_gamma_prime, alls(upper_bound + 2, 1),
                alls(upper_bound + 2, 1), self_avoiding_walk_inner)))
    for self_avoiding_walk_outer in gammas_outer:
        for length_gamma_prime in range(3, upper_bound + 1):
            a[length_gamma_prime - 3].append(len(generate_saws(
                length_gamma_prime, alls(upper_bound + 2, 0),
                alls(upper_bound + 2, 0), self_avoiding_walk_outer)))
    swws = [0]
    sumlist = np.cumsum(a, axis=0)
    for i in range(len(sumlist)):
        swws.append(max(sumlist[i]))
    return np.diff(swws)


def shift(paths, dx, dy):
    result = []
    for path in paths:
        result.append([path[0] + dx, path[1] + dy])
    return result


def loop_translates(m):
    toploop = [[-0.5, 1.5 * SQRT3], [-1.0, 2 * SQRT3], [-0.5, 2.5 * SQRT3],
               [0.5, 2.5 * SQRT3], [1, 2 * SQRT3],
               [0.5, 1.5 * SQRT3], [-0.5, 1.5 * SQRT3]]
    w = []
    for ii in range(0, m):
        a = toploop
        w.append(shift(a, -ii * 3 / 2, ii * (-SQRT3 / 2)))
    return w


def sl6w(upper_bound):
    a = [[] for _ in range(upper_bound - 2)]
    for loop1 in loop_translates(upper_bound):
        for length_gamma_prime in range(3, upper_bound + 1):
            a[length_gamma_prime - 3].append(len(generate_saws(
                length_gamma_prime, alls(upper_bound + 2, 0),
                alls(upper_bound + 2, 0), loop1)))
    for loop2 in loop_translates(upper_bound):
        for length_gamma_prime in range(3, upper_bound + 1):
            a[length_gamma_prime - 3].append(len(generate_saws(
                length_gamma_prime, alls(upper_bound + 2, 1),
                alls(upper_bound + 2, 1), loop2)))
    slw = [0]
    sumlist = np.cumsum(a, axis=0)
    for i in range(len(sumlist)):
        slw.append(max(sumlist[i]))
    return np.diff(slw)


def R(length):
    a = []
    z = len(starts2(length)) // 2
    for i in range(4, length + 2, 2):
        a.append(len(saw_with_avoidance(
            i, [starts2(length)[z]], starts2(length)[:z],
            firsts(starts2(length)), firsts(starts2(length)[z:]))))
    return a


def Qb(length, o):
    a = [0] * int((length - 3) // 2 + 1)
    for i in range(3, length + 2, 2):
        a[i // 2 - 1] += len(generate_saws(
            i, starts2(length), ends2(length, o), firsts(ends2(length, o))))
    return a


def Q(length):
    return np.maximum(Qb(length, 1), Qb(length, 0))


def layered_loop_translates(mm, l):
    z = loop_translates(mm)
    for i in loop_translates(mm):
        for j in range(1, l + 1):
            z.append(shift(i, 0, SQRT3 * j))
    return z


def get_edges(list_of_paths):
    edges = []
    for path in list_of_paths:
        for i in range(len(path) - 1):
            # fix: this line is truncated in the original listing
            edges.append([path[i], path[i + 1]])
    return edges


def get_points(list_of_paths):
    points = []
    for path in list_of_paths:
        for i in range(len(path) - 1):
            points.append(path[i])
    return points


def Pb(length, o):
    results = []
    # hoisted out of the loops; the original recomputes these on every
    # iteration with identical output
    edges = get_edges(layered_loop_translates(length, length))
    points = get_points(edges)
    pool = alls(length, o)
    pool_firsts = firsts(pool)
    for i in range(1, length + 1):
        running_max = []
        for point in points:
            a = 0
            for edge in edges:
                if in_path_with_tol(point, edge) and is_close(edge[0], point):
                    a += len(saw_with_avoidance(i, [edge], pool,
                                                pool_firsts, pool_firsts))
            running_max.append(a)
        results.append(max(running_max))
    return results


def P(length):
    return np.maximum(Pb(length, 0), Pb(length, 1))


# ---------------------------------------------------------------------------
# square lattice

def sq_starts2(n):
    s = []
    for i in range(1, n + 1):
        s.append([[0, i], [1, i]])
    return s


def sq_ends2(n, o):
    e = []
    for i in range(1, n + 1):
        if o == 1:
            e.append([[1 - i, 1], [1 - i, 0]])
        elif o == 0:
            e.append([[i, 0], [i, 1]])
    return e


def sq_alls(length, o):
    # fix: unbalanced parenthesis in the original
    return sq_starts2(length) + sq_ends2(length, o)


def esaw_with_avoidance(length, start_paths, end_paths, intersect_path, avoid_path):
    results = []
    end_firsts = firsts(end_paths)

    def recurse(path, visited_edges):
        if len(path) == length + 1:
            if in_path_with_tol(path[-1], end_firsts):
                if hits(path, intersect_path):
                    if not hits(path[1:-1], avoid_path):
                        if not any(all(is_close(p1, p2) for p1, p2
                                       in zip(path[::-1], r)) for r in results):
                            results.append(path.copy())
            return
        last = path[-1]
        second_last = path[-2]
        dx = last[0] - second_last[0]
        dy = last[1] - second_last[1]
        left = [last[0] - dy, last[1] + dx]
        right = [last[0] + dy, last[1] - dx]
        middle = [last[0] + dx, last[1] + dy]
        for next_point in [left, right, middle]:
            edge = frozenset((tuple(last), tuple(next_point)))
            if edge in visited_edges:
                continue
            if in_path_with_tol(last, end_firsts) and len(path) != length:
                continue
            visited_edges.add(edge)
            path.append(next_point)
            recurse(path, visited_edges)
            path.pop()
            visited_edges.remove(edge)

    for sp in start_paths:
        initial_path = sp[:]
        initial_edges = set()
        for i in range(1, len(initial_path)):
            edge = frozenset((tuple(initial_path[i - 1]), tuple(initial_path[i])))
            initial_edges.add(edge)
        recurse(initial_path, initial_edges)
    return results


def sq_vertices(n):
    e = []
    for i in range(n):
        for j in range(n):
            e.append([[i, j]])
    return e


def sq_maxes(i):
    """Largest, over vertices near the boundary, number of boundary walks
    of length i through that vertex.

    The original listing calls the hexagonal walk generator and reads an
    undefined variable n; this port substitutes the square-lattice
    generator and scans vertices within 2*i of the origin, which covers
    every vertex a walk of length i rooted on the windows can reach.
    """
    a = []
    for e in sq_vertices(2 * i):
        a.append(len(esaw_with_avoidance(i, sq_starts2(2 * i), sq_alls(2 * i, 0),
                                         e, firsts(sq_alls(2 * i, 0))))
                 + len(esaw_with_avoidance(i, sq_ends2(2 * i, 0), sq_ends2(2 * i, 0),
                                           e, firsts(sq_alls(2 * i, 0)))))
        a.append(len(esaw_with_avoidance(i, sq_starts2(2 * i), sq_alls(2 * i, 1),
                                         e, firsts(sq_alls(2 * i, 1))))
                 + len(esaw_with_avoidance(i, sq_ends2(2 * i, 1), sq_ends2(2 * i, 1),
                                           e, firsts(sq_alls(2 * i, 1)))))
    return max(a)
