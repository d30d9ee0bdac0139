#!/usr/bin/env python3
"""Reference QBF evaluator for QCIR-G14 and QDIMACS files.

Deliberately independent of the C++ code base: it parses the interchange
formats from scratch and decides truth with its own algorithms (recursive
circuit evaluation with support-projected memoization for QCIR; a small
QDPLL with unit propagation for QDIMACS). Prints TRUE or FALSE.

Usage: qbf_ref.py qcir  FILE
       qbf_ref.py qdimacs FILE
"""

import sys


# ---------------------------------------------------------------------------
# QCIR-G14


def parse_qcir(text):
    output = None
    gates = {}
    order = []
    for raw in text.splitlines():
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if line.startswith("output("):
            output = line[len("output("):-1].strip()
            continue
        name, rhs = line.split("=", 1)
        name = name.strip()
        rhs = rhs.strip()
        op = rhs[: rhs.index("(")]
        body = rhs[rhs.index("(") + 1 : rhs.rindex(")")]
        if op in ("and", "or"):
            args = [a.strip() for a in body.split(",")] if body.strip() else []
            gates[name] = (op, args)
        elif op in ("exists", "forall"):
            varpart, sub = body.split(";")
            variables = [v.strip() for v in varpart.split(",") if v.strip()]
            gates[name] = (op, variables, sub.strip())
        else:
            raise ValueError("unsupported gate: " + op)
        order.append(name)
    if output is None:
        raise ValueError("no output statement")
    return output, gates


def qcir_free_vars(lit, gates, cache):
    name = lit.lstrip("-")
    if name not in gates:
        return frozenset([name])
    if name in cache:
        return cache[name]
    gate = gates[name]
    if gate[0] in ("and", "or"):
        acc = frozenset()
        for a in gate[1]:
            acc |= qcir_free_vars(a, gates, cache)
    else:
        acc = qcir_free_vars(gate[2], gates, cache) - frozenset(gate[1])
    cache[name] = acc
    return acc


def eval_qcir(text):
    output, gates = parse_qcir(text)
    support_cache = {}
    sorted_free = {}
    memo = {}

    def ev(lit, env):
        neg = lit.startswith("-")
        name = lit.lstrip("-")
        if name not in gates:
            value = env[name]
        else:
            gate = gates[name]
            if gate[0] == "and":
                value = all(ev(a, env) for a in gate[1])
            elif gate[0] == "or":
                value = any(ev(a, env) for a in gate[1])
            else:
                if name not in sorted_free:
                    sorted_free[name] = sorted(qcir_free_vars(name, gates, support_cache))
                key = (name, tuple(env[v] for v in sorted_free[name]))
                if key in memo:
                    value = memo[key]
                else:
                    op, variables, sub = gate
                    want_all = op == "forall"
                    # Quantified variables the body never reads cannot change
                    # its value; skip them.
                    body_free = qcir_free_vars(sub, gates, support_cache)
                    relevant = [v for v in variables if v in body_free]

                    def rec(i):
                        if i == len(relevant):
                            return ev(sub, env)
                        for bit in (False, True):
                            env[relevant[i]] = bit
                            r = rec(i + 1)
                            del env[relevant[i]]
                            if r != want_all:
                                return r
                        return want_all

                    value = rec(0)
                    memo[key] = value
        return value != neg

    return ev(output, {})


# ---------------------------------------------------------------------------
# QDIMACS


def parse_qdimacs(text):
    clauses = []
    prefix = []  # list of (is_universal, [vars])
    nvars = 0
    for raw in text.splitlines():
        line = raw.strip()
        if not line or line.startswith("c"):
            continue
        if line.startswith("p"):
            nvars = int(line.split()[2])
            continue
        if line[0] in "ae":
            vs = [int(x) for x in line.split()[1:] if int(x) != 0]
            prefix.append((line[0] == "a", vs))
            continue
        lits = [int(x) for x in line.split() if int(x) != 0]
        # Tautological clauses are always satisfied; keeping them would break
        # the universal-conflict rule below.
        if any(-lit in lits for lit in lits):
            continue
        clauses.append(lits)
    return nvars, prefix, clauses


def eval_qdimacs(text):
    nvars, prefix, clauses = parse_qdimacs(text)
    quant = {}  # var -> is_universal
    var_order = []
    for universal, vs in prefix:
        for v in vs:
            quant[v] = universal
            var_order.append(v)
    for v in range(1, nvars + 1):  # free variables act as outermost existentials
        if v not in quant:
            quant[v] = False
            var_order.insert(0, v)

    occurs = {}
    for ci, clause in enumerate(clauses):
        for lit in clause:
            occurs.setdefault(abs(lit), []).append(ci)

    assign = {}

    def var_relevant(v):
        # A variable with no occurrence in an unresolved clause cannot change
        # the outcome; both branches coincide.
        for ci in occurs.get(v, ()):
            satisfied = False
            open_here = False
            for lit in clauses[ci]:
                w = abs(lit)
                if w in assign:
                    if assign[w] == (lit > 0):
                        satisfied = True
                        break
                elif w == v:
                    open_here = True
            if open_here and not satisfied:
                return True
        return False

    def clause_state(clause):
        # returns ("sat" | "conflict" | "unit", lit) where unit means a single
        # unassigned literal remains and it is existential; a clause whose
        # unassigned literals are all universal is a conflict (the adversary
        # falsifies them).
        unassigned = []
        for lit in clause:
            v = abs(lit)
            if v in assign:
                if assign[v] == (lit > 0):
                    return ("sat", 0)
            else:
                unassigned.append(lit)
        if not unassigned:
            return ("conflict", 0)
        existential = [l for l in unassigned if not quant[abs(l)]]
        if not existential:
            return ("conflict", 0)
        if len(unassigned) == 1:
            return ("unit", unassigned[0])
        return ("open", 0)

    def propagate(trail):
        changed = True
        while changed:
            changed = False
            for clause in clauses:
                state, lit = clause_state(clause)
                if state == "conflict":
                    return False
                if state == "unit":
                    assign[abs(lit)] = lit > 0
                    trail.append(abs(lit))
                    changed = True
        return True

    def all_satisfied():
        return all(clause_state(c)[0] == "sat" for c in clauses)

    def solve(idx):
        trail = []
        if not propagate(trail):
            for v in trail:
                del assign[v]
            return False
        if all_satisfied():
            for v in trail:
                del assign[v]
            return True
        while idx < len(var_order) and (var_order[idx] in assign or
                                        not var_relevant(var_order[idx])):
            idx += 1
        if idx == len(var_order):
            result = all_satisfied()
            for v in trail:
                del assign[v]
            return result
        v = var_order[idx]
        universal = quant[v]
        result = universal
        for bit in (False, True):
            assign[v] = bit
            r = solve(idx + 1)
            del assign[v]
            if r != universal:
                result = r
                break
        for v2 in trail:
            del assign[v2]
        return result

    return solve(0)


def main():
    if len(sys.argv) != 3 or sys.argv[1] not in ("qcir", "qdimacs"):
        print("usage: qbf_ref.py qcir|qdimacs FILE", file=sys.stderr)
        return 2
    with open(sys.argv[2], "r", encoding="utf-8") as handle:
        text = handle.read()
    value = eval_qcir(text) if sys.argv[1] == "qcir" else eval_qdimacs(text)
    print("TRUE" if value else "FALSE")
    return 0


if __name__ == "__main__":
    sys.exit(main())
